"""First-order and higher differential calculus on a bi-quadratic algebra.

One-forms are the free right module on dx_1..dx_n.  The left action is
twisted: ``p dx_k = dx_k rho_k(p)`` for affine automorphisms rho_k.  Forms of
higher degree carry right coefficients as well, ``sum_S dx_S a_S`` with
``dx_S = dx_s1 ^ ... ^ dx_sk`` and s1 < ... < sk.

All relation data is read in descending orientation.
"""

from __future__ import annotations

import itertools
import random
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Dict, Iterable, List, Mapping, Optional, Sequence, Tuple, Union

from .freealg import (
    LEFTMOST,
    RIGHTMOST,
    AffineEndo,
    ExponentVector,
    NormalPoly,
    apply_endo,
    multiply,
)
from .scalar import ONE, ZERO, PoleAtPoint, Scalar

__all__ = [
    "DegreeOverflow",
    "Obstruction",
    "TwistFamily",
    "KForm",
    "VolumeData",
    "find_obstruction",
    "derive_forced_twists",
    "differential",
    "partial_closed_form",
    "sort_dx",
    "wedge",
    "d_on_forms",
    "left_multiply_form",
    "volume_data",
    "integral_form_generators",
    "verify_integral_identity",
    "kernel_of_d",
    "monomials_up_to",
]

Subset = Tuple[int, ...]


class DegreeOverflow(ValueError):
    pass


@dataclass(frozen=True)
class Obstruction:
    """a_ij,k != 0 with k outside {i, j}: dx_k would depend on dx_i, dx_j."""

    i: int
    j: int
    k: int

    @property
    def triple(self) -> Tuple[int, int, int]:
        return (self.i, self.j, self.k)


@dataclass(frozen=True, eq=False)
class TwistFamily:
    """rho[k-1] is the twist of dx_k: p dx_k = dx_k rho_k(p)."""

    rho: Tuple[AffineEndo, ...]
    _cache: dict = field(default_factory=dict, repr=False)

    @property
    def n(self) -> int:
        return len(self.rho)

    def __getitem__(self, k: int) -> AffineEndo:
        return self.rho[k - 1]

    def through(self, seq: Sequence[int]) -> AffineEndo:
        """Map sending p to the coefficient after pushing p right through dx_seq.

        p dx_s1 dx_s2 ... = dx_s1 dx_s2 ... (rho_sk o ... o rho_s1)(p).
        """
        key = ("through", tuple(seq))
        hit = self._cache.get(key)
        if hit is None:
            hit = AffineEndo.identity(self.n)
            for s in seq:
                hit = self[s].compose(hit)
            self._cache[key] = hit
        return hit

    def render(self) -> Dict[str, Dict[str, str]]:
        return {f"rho{k}": self[k].render() for k in range(1, self.n + 1)}

    def _memo(self, pres, name: str) -> dict:
        slot = self._cache.setdefault((name, id(pres)), (pres, {}))
        return slot[1]


def find_obstruction(pres) -> Optional[Obstruction]:
    """First triple (i, j, k) in lexicographic order with a_ij,k != 0, k not in {i, j}."""
    d = pres.descending()
    for i, j in d.pairs():
        for k in range(1, d.n + 1):
            if k not in (i, j) and not d.get_a(i, j, k).is_zero():
                return Obstruction(i, j, k)
    return None


def derive_forced_twists(pres) -> Union[TwistFamily, Obstruction]:
    """The unique twists compatible with d applied to every relation.

    Differentiating x_j x_i = q x_i x_j + a_i x_i + a_j x_j + b and comparing
    dx_i and dx_j coefficients forces rho_i(x_j) = q x_j + a_i and
    rho_j(x_i) = (x_i - a_j)/q.
    """
    obs = find_obstruction(pres)
    if obs is not None:
        return obs
    d = pres.descending()
    n = d.n
    images = [[(ONE, ZERO)] * n for _ in range(n)]
    for i, j in d.pairs():
        q = d.get_q(i, j)
        images[i - 1][j - 1] = (q, d.get_a(i, j, i))
        images[j - 1][i - 1] = (1 / q, -d.get_a(i, j, j) / q)
    return TwistFamily(tuple(AffineEndo(tuple(row)) for row in images))


# ---------------------------------------------------------------------------
# forms
# ---------------------------------------------------------------------------

class KForm:
    """sum_S dx_S a_S with right coefficients a_S."""

    __slots__ = ("n", "degree", "_coeffs")

    def __init__(self, n: int, degree: int, coeffs: Mapping[Subset, NormalPoly] = ()):
        self.n = n
        self.degree = degree
        out = {}
        for S, a in dict(coeffs).items():
            S = tuple(S)
            if len(S) != degree or any(x >= y for x, y in zip(S, S[1:])):
                raise ValueError(f"index set {S} is not an increasing {degree}-subset")
            if not a.is_zero():
                out[S] = a
        self._coeffs = out

    @classmethod
    def basis(cls, S: Iterable[int], n: int, coeff: Optional[NormalPoly] = None) -> "KForm":
        S = tuple(S)
        if coeff is None:
            coeff = NormalPoly.constant(ONE, n)
        return cls(n, len(S), {S: coeff})

    @classmethod
    def zero(cls, n: int, degree: int) -> "KForm":
        return cls(n, degree)

    def coeff(self, S: Iterable[int]) -> NormalPoly:
        return self._coeffs.get(tuple(S), NormalPoly())

    def items(self):
        return self._coeffs.items()

    def is_zero(self) -> bool:
        return not self._coeffs

    def _check(self, other: "KForm"):
        if (self.n, self.degree) != (other.n, other.degree):
            raise ValueError("forms of different shape")

    def __add__(self, other: "KForm") -> "KForm":
        self._check(other)
        out = dict(self._coeffs)
        for S, a in other._coeffs.items():
            out[S] = out[S] + a if S in out else a
        return KForm(self.n, self.degree, out)

    def __neg__(self) -> "KForm":
        return KForm(self.n, self.degree, {S: -a for S, a in self._coeffs.items()})

    def __sub__(self, other: "KForm") -> "KForm":
        return self + (-other)

    def scale(self, c) -> "KForm":
        return KForm(self.n, self.degree, {S: a.scale(c) for S, a in self._coeffs.items()})

    def right_multiply(self, p: NormalPoly, pres) -> "KForm":
        return KForm(self.n, self.degree, {S: multiply(a, p, pres) for S, a in self._coeffs.items()})

    def __eq__(self, other) -> bool:
        if not isinstance(other, KForm):
            return NotImplemented
        return (self.n, self.degree) == (other.n, other.degree) and (self - other).is_zero()

    __hash__ = None

    def render(self) -> str:
        if not self._coeffs:
            return "0"
        parts = []
        for S in sorted(self._coeffs):
            dx = " ^ ".join(f"dx{s}" for s in S) or "1"
            parts.append(f"{dx} ({self._coeffs[S].render()})")
        return " + ".join(parts)

    def __repr__(self) -> str:
        return f"KForm(degree={self.degree}, {self.render()})"


def monomials_up_to(n: int, D: int) -> List[ExponentVector]:
    """All exponent vectors of total degree <= D, by degree then lexicographically."""
    out = []
    for deg in range(D + 1):
        for combo in itertools.combinations_with_replacement(range(n), deg):
            alpha = [0] * n
            for t in combo:
                alpha[t] += 1
            out.append(tuple(alpha))
    return out


# ---------------------------------------------------------------------------
# d on functions
# ---------------------------------------------------------------------------

def _d_monomial(alpha: ExponentVector, pres, tw: TwistFamily) -> Dict[int, NormalPoly]:
    memo = tw._memo(pres, "d")
    hit = memo.get(alpha)
    if hit is not None:
        return hit
    n = pres.n
    if not any(alpha):
        memo[alpha] = {}
        return memo[alpha]
    # x^alpha = x_s * x^rest with s the first letter, so
    # d(x^alpha) = dx_s x^rest + x_s d(x^rest) and x_s dx_k = dx_k rho_k(x_s)
    s = next(t for t in range(n) if alpha[t]) + 1
    rest = list(alpha)
    rest[s - 1] -= 1
    rest = tuple(rest)
    out: Dict[int, NormalPoly] = {s: NormalPoly.monomial(rest)}
    for k, c in _d_monomial(rest, pres, tw).items():
        term = multiply(tw[k].image_of_generator(s), c, pres)
        out[k] = out[k] + term if k in out else term
    out = {k: v for k, v in out.items() if not v.is_zero()}
    memo[alpha] = out
    return out


def differential(a: NormalPoly, pres, tw: TwistFamily) -> KForm:
    """d(a) as sum_k dx_k * partial_k(a)."""
    pres = pres.descending()
    acc: Dict[int, NormalPoly] = {}
    for alpha, c in a.items():
        for k, v in _d_monomial(alpha, pres, tw).items():
            v = v.scale(c)
            acc[k] = acc[k] + v if k in acc else v
    return KForm(pres.n, 1, {(k,): v for k, v in acc.items()})


def partial_closed_form(k: int, alpha: Sequence[int], pres, tw: TwistFamily) -> NormalPoly:
    """Closed form of the k-th skew partial of x^alpha.

    l_k * rho_k(x_1)^l_1 ... rho_k(x_{k-1})^l_{k-1} * x_k^(l_k - 1) x_{k+1}^l_{k+1} ... x_n^l_n
    """
    pres = pres.descending()
    n = pres.n
    alpha = tuple(alpha)
    lk = alpha[k - 1]
    if lk == 0:
        return NormalPoly()
    result = NormalPoly.constant(Scalar.const(lk), n)
    for r in range(1, k):
        base = tw[k].image_of_generator(r)
        for _ in range(alpha[r - 1]):
            result = multiply(result, base, pres)
    tail = [0] * n
    tail[k - 1] = lk - 1
    for r in range(k + 1, n + 1):
        tail[r - 1] = alpha[r - 1]
    return multiply(result, NormalPoly.monomial(tail), pres)


# ---------------------------------------------------------------------------
# wedge products
# ---------------------------------------------------------------------------

def sort_dx(seq: Sequence[int], pres, strategy: str = LEFTMOST) -> Tuple[Scalar, Optional[Subset]]:
    """Bring dx_seq into increasing order by adjacent swaps.

    Each swap dx_j ^ dx_i -> -q_ij dx_i ^ dx_j (i < j).  Returns the scalar
    factor and the sorted subset, or (0, None) when an index repeats.
    """
    seq = list(seq)
    if len(set(seq)) != len(seq):
        return ZERO, None
    d = pres.descending()
    factor = ONE
    while True:
        ds = [p for p in range(len(seq) - 1) if seq[p] > seq[p + 1]]
        if not ds:
            return factor, tuple(seq)
        p = ds[0] if strategy == LEFTMOST else ds[-1]
        j, i = seq[p], seq[p + 1]
        factor = factor * -d.get_q(i, j)
        seq[p], seq[p + 1] = i, j


def wedge(f: KForm, g: KForm, pres, tw: TwistFamily) -> KForm:
    """(dx_S a) ^ (dx_T b) = dx_S ^ dx_T sigma_T(a) b, then reorder."""
    pres = pres.descending()
    n = pres.n
    deg = f.degree + g.degree
    if deg > n:
        raise DegreeOverflow(f"degree {f.degree} + {g.degree} exceeds {n}")
    acc = KForm.zero(n, deg)
    for S, a in f.items():
        for T, b in g.items():
            factor, U = sort_dx(S + T, pres)
            if U is None:
                continue
            moved = apply_endo(tw.through(T), a, pres)
            coeff = multiply(moved, b, pres).scale(factor)
            acc = acc + KForm(n, deg, {U: coeff})
    return acc


def d_on_forms(f: KForm, pres, tw: TwistFamily) -> KForm:
    """d(dx_S a) = (-1)^|S| dx_S ^ d(a)."""
    pres = pres.descending()
    n = pres.n
    if f.degree >= n:
        raise DegreeOverflow(f"d of a degree-{n} form")
    sign = -1 if f.degree % 2 else 1
    acc = KForm.zero(n, f.degree + 1)
    for S, a in f.items():
        da = differential(a, pres, tw)
        for (k,), c in da.items():
            factor, U = sort_dx(S + (k,), pres)
            if U is not None:
                acc = acc + KForm(n, f.degree + 1, {U: c.scale(factor * sign)})
    return acc


def left_multiply_form(p: NormalPoly, f: KForm, pres, tw: TwistFamily) -> KForm:
    """p (dx_S a) = dx_S sigma_S(p) a."""
    pres = pres.descending()
    out = {}
    for S, a in f.items():
        out[S] = multiply(apply_endo(tw.through(S), p, pres), a, pres)
    return KForm(pres.n, f.degree, out)


# ---------------------------------------------------------------------------
# volume and integral forms
# ---------------------------------------------------------------------------

@dataclass(frozen=True, eq=False)
class VolumeData:
    """omega = dx_1 ^ ... ^ dx_n with a omega = omega nu_omega(a)."""

    n: int
    nu_omega: AffineEndo

    @property
    def omega(self) -> KForm:
        return KForm.basis(range(1, self.n + 1), self.n)

    def pi_omega(self, f: KForm) -> NormalPoly:
        if f.degree != self.n:
            raise ValueError(f"pi_omega needs a degree-{self.n} form, got degree {f.degree}")
        return f.coeff(tuple(range(1, self.n + 1)))


def volume_data(pres, tw: TwistFamily) -> VolumeData:
    n = pres.n
    nu = AffineEndo.identity(n)
    for k in range(1, n + 1):
        nu = nu.compose(tw[k])
    return VolumeData(n, nu)


def integral_form_generators(j: int, pres, tw: TwistFamily) -> List[Tuple[KForm, KForm]]:
    """Pairs (omega_S, bar omega_S) over all j-subsets S with bar omega_S ^ omega_S = omega.

    bar omega_S = c dx_{S^c}, where c inverts the reordering factor of
    dx_{S^c} ^ dx_S.
    """
    n = pres.n
    if not (0 <= j <= n):
        raise ValueError(f"j must lie in 0..{n}")
    full = tuple(range(1, n + 1))
    out = []
    for S in itertools.combinations(full, j):
        Sc = tuple(x for x in full if x not in S)
        factor, _ = sort_dx(Sc + S, pres)
        coeff = NormalPoly.constant(1 / factor, n)
        out.append((KForm.basis(S, n), KForm.basis(Sc, n, coeff)))
    return out


def verify_integral_identity(j: int, pres, tw: TwistFamily, max_degree: int = 2) -> bool:
    """Both pairing identities on every basis form dx_S m, deg m <= max_degree.

    w' = sum_i w_i pi(bar w_i ^ w')  with pairs at level j, and
    w' = sum_i nu^-1(pi(w' ^ w_i)) bar w_i  with pairs at level n - j.
    """
    pres = pres.descending()
    n = pres.n
    vol = volume_data(pres, tw)
    nu_inv = vol.nu_omega.inverse()
    level_j = integral_form_generators(j, pres, tw)
    level_nj = integral_form_generators(n - j, pres, tw)
    for S in itertools.combinations(range(1, n + 1), j):
        for alpha in monomials_up_to(n, max_degree):
            w = KForm.basis(S, n, NormalPoly.monomial(alpha))
            first = KForm.zero(n, j)
            for wi, bar in level_j:
                first = first + wi.right_multiply(vol.pi_omega(wedge(bar, w, pres, tw)), pres)
            if first != w:
                return False
            second = KForm.zero(n, j)
            for wi, bar in level_nj:
                c = apply_endo(nu_inv, vol.pi_omega(wedge(w, wi, pres, tw)), pres)
                second = second + left_multiply_form(c, bar, pres, tw)
            if second != w:
                return False
    return True


# ---------------------------------------------------------------------------
# connectedness
# ---------------------------------------------------------------------------

def _is_zero(x) -> bool:
    return x.is_zero() if isinstance(x, Scalar) else x == 0


def _nullspace(rows: List[List], ncols: int, zero, one) -> List[List]:
    """Basis of {v : rows . v = 0} by Gauss-Jordan elimination over any field."""
    rows = [list(r) for r in rows]
    pivots = []
    r = 0
    for c in range(ncols):
        p = next((t for t in range(r, len(rows)) if not _is_zero(rows[t][c])), None)
        if p is None:
            continue
        rows[r], rows[p] = rows[p], rows[r]
        inv = one / rows[r][c]
        rows[r] = [x * inv for x in rows[r]]
        for t in range(len(rows)):
            if t != r and not _is_zero(rows[t][c]):
                f = rows[t][c]
                rows[t] = [x - f * y for x, y in zip(rows[t], rows[r])]
        pivots.append(c)
        r += 1
        if r == len(rows):
            break
    free = [c for c in range(ncols) if c not in pivots]
    basis = []
    for fc in free:
        v = [zero] * ncols
        v[fc] = one
        for row, pc in zip(rows, pivots):
            v[pc] = zero - row[fc]
        basis.append(v)
    return basis


def _rank(rows: List[List[Fraction]], ncols: int) -> int:
    return ncols - len(_nullspace(rows, ncols, Fraction(0), Fraction(1)))


def kernel_of_d(pres, tw: TwistFamily, D: int, *, seed: int = 0) -> List[NormalPoly]:
    """Basis of {a : deg a <= D, d(a) = 0}.

    Constants always lie in the kernel.  If the coefficient matrix evaluated
    at a random rational parameter point already has rank N - 1 the kernel
    is exactly the constants; otherwise the elimination is redone over the
    parameter field.
    """
    pres = pres.descending()
    n = pres.n
    monos = monomials_up_to(n, D)
    N = len(monos)
    images = [differential(NormalPoly.monomial(m), pres, tw) for m in monos]
    row_keys = sorted({(S, beta) for f in images for S, c in f.items() for beta in c})
    row_index = {key: r for r, key in enumerate(row_keys)}
    sym = [[ZERO] * N for _ in row_keys]
    for col, f in enumerate(images):
        for S, c in f.items():
            for beta, s in c.items():
                sym[row_index[(S, beta)]][col] = s
    params = sorted(set(pres.params))
    rng = random.Random(seed)
    for _ in range(3):
        point = {p: Fraction(rng.randint(2, 97), rng.randint(1, 13)) for p in params}
        try:
            num = [[s.eval_at(point) for s in row] for row in sym]
        except PoleAtPoint:
            continue
        if _rank(num, N) == N - 1:
            return [NormalPoly.constant(ONE, n)]
        break
    basis = _nullspace(sym, N, ZERO, ONE)
    return [NormalPoly({monos[c]: v[c] for c in range(N)}) for v in basis]
