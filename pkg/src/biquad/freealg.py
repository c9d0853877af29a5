"""Words, normal forms and the PBW rewriting engine.

Relations are stored in descending orientation: for i < j the rule is

    x_j x_i  ->  q_ij x_i x_j + sum_k a_ij,k x_k + b_ij

so a word is in normal form exactly when its letters are non-decreasing.
Generators are numbered from 1, matching the usual x_1, ..., x_n notation.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Callable, Dict, Hashable, Iterable, Iterator, Mapping, Sequence, Tuple
from weakref import WeakKeyDictionary

from .scalar import ONE, ZERO, Scalar

__all__ = [
    "Word",
    "ExponentVector",
    "FreePoly",
    "NormalPoly",
    "AffineEndo",
    "NoDescent",
    "LEFTMOST",
    "RIGHTMOST",
    "word_to_exponents",
    "exponents_to_word",
    "descents",
    "reduce_once",
    "normalize",
    "normalize_word",
    "multiply",
    "apply_endo",
    "relation_defects",
    "is_relation_preserving",
    "commute_on_generators",
]

Word = Tuple[int, ...]
ExponentVector = Tuple[int, ...]

LEFTMOST = "leftmost"
RIGHTMOST = "rightmost"
STRATEGIES = (LEFTMOST, RIGHTMOST)


class NoDescent(ValueError):
    """The word is already ascending; no rule applies."""


# ---------------------------------------------------------------------------
# term maps
# ---------------------------------------------------------------------------

class _TermMap(Mapping):
    """Immutable finite map key -> Scalar with no zero coefficients."""

    __slots__ = ("_terms",)

    def __init__(self, terms: Mapping | Iterable = ()):
        items = terms.items() if isinstance(terms, Mapping) else terms
        clean: Dict[Hashable, Scalar] = {}
        for key, c in items:
            c = Scalar.coerce(c)
            prev = clean.get(key)
            c = c if prev is None else prev + c
            if c.is_zero():
                clean.pop(key, None)
            else:
                clean[key] = c
        self._terms = clean

    @classmethod
    def _wrap(cls, terms: Dict):
        obj = cls.__new__(cls)
        obj._terms = terms
        return obj

    def __getitem__(self, key):
        return self._terms[key]

    def coeff(self, key) -> Scalar:
        return self._terms.get(key, ZERO)

    def __iter__(self) -> Iterator:
        return iter(self._terms)

    def __len__(self) -> int:
        return len(self._terms)

    def is_zero(self) -> bool:
        return not self._terms

    def __add__(self, other):
        if type(other) is not type(self):
            return NotImplemented
        out = dict(self._terms)
        for k, c in other._terms.items():
            prev = out.get(k)
            if prev is None:
                out[k] = c
            else:
                s = prev + c
                if s.is_zero():
                    del out[k]
                else:
                    out[k] = s
        return self._wrap(out)

    def __neg__(self):
        return self._wrap({k: -c for k, c in self._terms.items()})

    def __sub__(self, other):
        if type(other) is not type(self):
            return NotImplemented
        return self + (-other)

    def scale(self, c) -> "_TermMap":
        c = Scalar.coerce(c)
        if c.is_zero():
            return self._wrap({})
        if c == ONE:
            return self
        return self._wrap({k: v * c for k, v in self._terms.items()})

    def __eq__(self, other) -> bool:
        if type(other) is not type(self):
            return NotImplemented
        if self._terms.keys() != other._terms.keys():
            return False
        return all(c == other._terms[k] for k, c in self._terms.items())

    __hash__ = None

    def __repr__(self) -> str:
        return f"{type(self).__name__}({self.render()!r})"

    def __str__(self) -> str:
        return self.render()


def _coeff_prefix(c: Scalar) -> tuple[bool, str]:
    """Split a coefficient into (negative, text) for term rendering."""
    if c.is_constant():
        v = c.constant_value()
        neg = v < 0
        v = -v if neg else v
        return neg, str(v)
    if len(c.num) == 1 and len(c.den) == 1 and next(iter(c.den.values())) == 1:
        (coef,) = c.num.values()
        if coef < 0:
            return True, (-c).render()
        return False, c.render() if "/" not in c.render() else f"({c.render()})"
    return False, f"({c.render()})"


def _render_terms(terms: Sequence[tuple[str, Scalar]]) -> str:
    if not terms:
        return "0"
    if len(terms) == 1 and not terms[0][0]:
        return terms[0][1].render()
    out = []
    for idx, (mono, c) in enumerate(terms):
        neg, coef = _coeff_prefix(c)
        if mono and coef == "1":
            body = mono
        elif mono:
            body = f"{coef} {mono}"
        else:
            body = coef
        if idx == 0:
            out.append(f"-{body}" if neg else body)
        else:
            out.append(f" - {body}" if neg else f" + {body}")
    return "".join(out)


class FreePoly(_TermMap):
    """Element of the free algebra: Word -> Scalar."""

    __slots__ = ()

    @classmethod
    def word(cls, w: Iterable[int], c=ONE) -> "FreePoly":
        return cls({tuple(w): c})

    def render(self) -> str:
        keys = sorted(self._terms, key=lambda w: (-len(w), tuple(-x for x in w)))
        return _render_terms([(" ".join(f"x{i}" for i in w), self._terms[w]) for w in keys])


def word_to_exponents(w: Word, n: int) -> ExponentVector:
    alpha = [0] * n
    for i in w:
        alpha[i - 1] += 1
    return tuple(alpha)


def exponents_to_word(alpha: ExponentVector) -> Word:
    return tuple(i + 1 for i, e in enumerate(alpha) for _ in range(e))


def render_monomial(alpha: ExponentVector) -> str:
    return " ".join(f"x{i + 1}" if e == 1 else f"x{i + 1}^{e}" for i, e in enumerate(alpha) if e)


def deglex_key(alpha: ExponentVector):
    """Sort key: larger total degree first, then larger word lexicographically."""
    return (-sum(alpha), tuple(-x for x in exponents_to_word(alpha)))


class NormalPoly(_TermMap):
    """Element of the algebra in PBW normal form: ExponentVector -> Scalar."""

    __slots__ = ()

    @classmethod
    def monomial(cls, alpha: Iterable[int], c=ONE) -> "NormalPoly":
        return cls({tuple(alpha): c})

    @classmethod
    def constant(cls, c, n: int) -> "NormalPoly":
        return cls({(0,) * n: c})

    @classmethod
    def generator(cls, j: int, n: int) -> "NormalPoly":
        alpha = [0] * n
        alpha[j - 1] = 1
        return cls({tuple(alpha): ONE})

    def degree(self) -> int:
        return max((sum(a) for a in self._terms), default=-1)

    def terms_deglex(self) -> list[tuple[ExponentVector, Scalar]]:
        return [(a, self._terms[a]) for a in sorted(self._terms, key=deglex_key)]

    def render(self) -> str:
        return _render_terms([(render_monomial(a), c) for a, c in self.terms_deglex()])


# ---------------------------------------------------------------------------
# rewriting
# ---------------------------------------------------------------------------

def descents(w: Word) -> list[int]:
    """Positions p with w[p] > w[p+1]."""
    return [p for p in range(len(w) - 1) if w[p] > w[p + 1]]


class _Rewriter:
    """Per-presentation rule table and normal-form memo."""

    def __init__(self, pres):
        desc = pres.descending()
        self.n = desc.n
        self.rules: Dict[tuple[int, int], list[tuple[Word, Scalar]]] = {}
        for i in range(1, self.n + 1):
            for j in range(i + 1, self.n + 1):
                rhs: list[tuple[Word, Scalar]] = [((i, j), desc.get_q(i, j))]
                for k in range(1, self.n + 1):
                    a = desc.get_a(i, j, k)
                    if not a.is_zero():
                        rhs.append(((k,), a))
                b = desc.get_b(i, j)
                if not b.is_zero():
                    rhs.append(((), b))
                self.rules[(i, j)] = rhs
        self.memo: Dict[str, Dict[Word, Dict[ExponentVector, Scalar]]] = {s: {} for s in STRATEGIES}

    def step(self, w: Word, strategy: str) -> list[tuple[Word, Scalar]]:
        ds = descents(w)
        if not ds:
            raise NoDescent(f"word {w} has no descent")
        if strategy == LEFTMOST:
            p = ds[0]
        elif strategy == RIGHTMOST:
            p = ds[-1]
        else:
            raise ValueError(f"unknown strategy {strategy!r}")
        j, i = w[p], w[p + 1]
        head, tail = w[:p], w[p + 2:]
        return [(head + mid + tail, c) for mid, c in self.rules[(i, j)]]

    def normal_form(self, w: Word, strategy: str) -> Dict[ExponentVector, Scalar]:
        memo = self.memo[strategy]
        hit = memo.get(w)
        if hit is not None:
            return hit
        if not descents(w):
            result = {word_to_exponents(w, self.n): ONE}
        else:
            acc: Dict[ExponentVector, Scalar] = {}
            for w2, c in self.step(w, strategy):
                for alpha, c2 in self.normal_form(w2, strategy).items():
                    v = acc.get(alpha, ZERO) + c * c2
                    if v.is_zero():
                        acc.pop(alpha, None)
                    else:
                        acc[alpha] = v
            result = acc
        memo[w] = result
        return result


_REWRITERS: "WeakKeyDictionary" = WeakKeyDictionary()


def _rewriter(pres) -> _Rewriter:
    rw = _REWRITERS.get(pres)
    if rw is None:
        rw = _REWRITERS[pres] = _Rewriter(pres)
    return rw


def _check_word(w: Word, n: int) -> Word:
    w = tuple(w)
    if any(not (1 <= i <= n) for i in w):
        raise ValueError(f"word {w} has letters outside 1..{n}")
    return w


def reduce_once(w: Word, pres, strategy: str = LEFTMOST) -> FreePoly:
    """Apply one rule at the leftmost or rightmost descent of ``w``."""
    w = _check_word(w, pres.n)
    return FreePoly(_rewriter(pres).step(w, strategy))


def normalize_word(w: Word, pres, strategy: str = LEFTMOST) -> NormalPoly:
    w = _check_word(w, pres.n)
    return NormalPoly._wrap(dict(_rewriter(pres).normal_form(w, strategy)))


def normalize(p: FreePoly, pres, strategy: str = LEFTMOST) -> NormalPoly:
    """Reduce every word of ``p`` to PBW normal form and collect."""
    rw = _rewriter(pres)
    acc: Dict[ExponentVector, Scalar] = {}
    for w, c in p.items():
        for alpha, c2 in rw.normal_form(_check_word(w, pres.n), strategy).items():
            v = acc.get(alpha, ZERO) + c * c2
            if v.is_zero():
                acc.pop(alpha, None)
            else:
                acc[alpha] = v
    return NormalPoly._wrap(acc)


def multiply(a: NormalPoly, b: NormalPoly, pres, strategy: str = LEFTMOST) -> NormalPoly:
    rw = _rewriter(pres)
    acc: Dict[ExponentVector, Scalar] = {}
    for alpha, ca in a.items():
        wa = exponents_to_word(alpha)
        for beta, cb in b.items():
            c = ca * cb
            for gamma, c2 in rw.normal_form(wa + exponents_to_word(beta), strategy).items():
                v = acc.get(gamma, ZERO) + c * c2
                if v.is_zero():
                    acc.pop(gamma, None)
                else:
                    acc[gamma] = v
    return NormalPoly._wrap(acc)


def product(factors: Sequence[NormalPoly], pres) -> NormalPoly:
    result = NormalPoly.constant(ONE, pres.n)
    for f in factors:
        result = multiply(result, f, pres)
    return result


# ---------------------------------------------------------------------------
# affine endomorphisms
# ---------------------------------------------------------------------------

@dataclass(frozen=True, eq=False)
class AffineEndo:
    """Substitution x_j -> lam[j] x_j + mu[j] for every generator j.

    ``images[j-1] == (lam_j, mu_j)``.
    """

    images: Tuple[Tuple[Scalar, Scalar], ...]
    _cache: dict = field(default_factory=dict, repr=False, compare=False)

    @classmethod
    def identity(cls, n: int) -> "AffineEndo":
        return cls(tuple((ONE, ZERO) for _ in range(n)))

    @classmethod
    def from_map(cls, n: int, images: Mapping[int, tuple]) -> "AffineEndo":
        """Build from {j: (lam, mu)}; generators not listed are fixed."""
        out = []
        for j in range(1, n + 1):
            lam, mu = images.get(j, (ONE, ZERO))
            out.append((Scalar.coerce(lam), Scalar.coerce(mu)))
        return cls(tuple(out))

    @property
    def n(self) -> int:
        return len(self.images)

    def lam(self, j: int) -> Scalar:
        return self.images[j - 1][0]

    def mu(self, j: int) -> Scalar:
        return self.images[j - 1][1]

    def is_bijective(self) -> bool:
        return all(not lam.is_zero() for lam, _ in self.images)

    def image_of_generator(self, j: int) -> NormalPoly:
        lam, mu = self.images[j - 1]
        n = self.n
        return NormalPoly({tuple(1 if t == j - 1 else 0 for t in range(n)): lam, (0,) * n: mu})

    def compose(self, other: "AffineEndo") -> "AffineEndo":
        """self o other: apply ``other`` first."""
        out = []
        for (l1, m1), (l2, m2) in zip(self.images, other.images):
            out.append((l1 * l2, l2 * m1 + m2))
        return AffineEndo(tuple(out))

    def inverse(self) -> "AffineEndo":
        if not self.is_bijective():
            raise ValueError("affine map is not bijective")
        return AffineEndo(tuple((1 / lam, -mu / lam) for lam, mu in self.images))

    def equals(self, other: "AffineEndo") -> bool:
        return all(l1 == l2 and m1 == m2 for (l1, m1), (l2, m2) in zip(self.images, other.images))

    def is_identity(self) -> bool:
        return self.equals(AffineEndo.identity(self.n))

    def render(self) -> dict[str, str]:
        """Generator images as strings, e.g. {"x1": "q x1 + 1"}."""
        out = {}
        for j, (lam, mu) in enumerate(self.images, start=1):
            terms = [(f"x{j}", c) for c in (lam,) if not c.is_zero()]
            terms += [("", c) for c in (mu,) if not c.is_zero()]
            out[f"x{j}"] = _render_terms(terms)
        return out


def _endo_monomial(e: AffineEndo, alpha: ExponentVector, pres) -> NormalPoly:
    cache = e._cache.setdefault(id(pres), (pres, {}))[1]
    hit = cache.get(alpha)
    if hit is not None:
        return hit
    if not any(alpha):
        result = NormalPoly.constant(ONE, pres.n)
    else:
        # peel the last letter: e(x^alpha) = e(x^alpha') * e(x_j)
        j = max(t for t in range(pres.n) if alpha[t]) + 1
        prev = list(alpha)
        prev[j - 1] -= 1
        result = multiply(_endo_monomial(e, tuple(prev), pres), e.image_of_generator(j), pres)
    cache[alpha] = result
    return result


def apply_endo(e: AffineEndo, p: NormalPoly, pres) -> NormalPoly:
    """Image of ``p`` under the multiplicative extension of ``e``."""
    acc = NormalPoly()
    for alpha, c in p.items():
        acc = acc + _endo_monomial(e, alpha, pres).scale(c)
    return acc


def relation_defects(e: AffineEndo, pres) -> Dict[tuple[int, int], NormalPoly]:
    """Normal form of e(x_j)e(x_i) - q e(x_i)e(x_j) - sum a e(x_k) - b for each i<j.

    Only nonzero defects are returned.
    """
    desc = pres.descending()
    n = desc.n
    imgs = [e.image_of_generator(j) for j in range(1, n + 1)]
    out = {}
    for i in range(1, n + 1):
        for j in range(i + 1, n + 1):
            lhs = multiply(imgs[j - 1], imgs[i - 1], desc)
            rhs = multiply(imgs[i - 1], imgs[j - 1], desc).scale(desc.get_q(i, j))
            for k in range(1, n + 1):
                a = desc.get_a(i, j, k)
                if not a.is_zero():
                    rhs = rhs + imgs[k - 1].scale(a)
            rhs = rhs + NormalPoly.constant(desc.get_b(i, j), n)
            diff = lhs - rhs
            if not diff.is_zero():
                out[(i, j)] = diff
    return out


def is_relation_preserving(e: AffineEndo, pres) -> bool:
    return not relation_defects(e, pres)


def commute_on_generators(e1: AffineEndo, e2: AffineEndo) -> bool:
    return e1.compose(e2).equals(e2.compose(e1))
