"""Bi-quadratic presentations, orientation handling and PBW consistency.

A presentation on generators x_1..x_n stores, for every pair i < j, a
commutation constant q_ij, linear coefficients a_ij,k and a constant b_ij.
In *descending* orientation the relation reads

    x_j x_i = q_ij x_i x_j + sum_k a_ij,k x_k + b_ij,

in *ascending* orientation

    x_i x_j = q_ij x_j x_i + sum_k a_ij,k x_k + b_ij.

Everything downstream works on the descending form; :meth:`descending`
converts on demand.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import cached_property
from typing import Dict, List, Mapping, Optional, Tuple

from .freealg import LEFTMOST, RIGHTMOST, NormalPoly, _render_terms, normalize_word
from .scalar import IDENTIFIER, ONE, ZERO, Scalar

__all__ = [
    "DESCENDING",
    "ASCENDING",
    "AlgebraPresentation",
    "Condition",
    "PBWReport",
    "WrongArity",
    "validate",
    "translate_orientation",
    "same_presentation",
    "check_pbw_by_overlaps",
    "check_pbw3_closed",
    "pbw3_coefficients",
]

DESCENDING = "descending"
ASCENDING = "ascending"


class WrongArity(ValueError):
    pass


@dataclass(frozen=True, eq=False)
class AlgebraPresentation:
    """Immutable presentation data.

    ``q``, ``a`` and ``b`` hold only the explicitly given entries; absent q
    entries mean 1, absent a and b entries mean 0.
    """

    n: int
    q: Mapping[Tuple[int, int], Scalar] = field(default_factory=dict)
    a: Mapping[Tuple[int, int, int], Scalar] = field(default_factory=dict)
    b: Mapping[Tuple[int, int], Scalar] = field(default_factory=dict)
    params: Tuple[str, ...] = ()
    orientation: str = DESCENDING
    name: Optional[str] = None

    def get_q(self, i: int, j: int) -> Scalar:
        return self.q.get((i, j), ONE)

    def get_a(self, i: int, j: int, k: int) -> Scalar:
        return self.a.get((i, j, k), ZERO)

    def get_b(self, i: int, j: int) -> Scalar:
        return self.b.get((i, j), ZERO)

    def pairs(self):
        return [(i, j) for i in range(1, self.n + 1) for j in range(i + 1, self.n + 1)]

    def descending(self) -> "AlgebraPresentation":
        return self if self.orientation == DESCENDING else self._flipped

    def ascending(self) -> "AlgebraPresentation":
        return self if self.orientation == ASCENDING else self._flipped

    @cached_property
    def _flipped(self) -> "AlgebraPresentation":
        return translate_orientation(self)

    def relation_text(self, i: int, j: int) -> str:
        """Human-readable relation for the pair i < j in this orientation."""
        lhs, rhs_mono = (f"x{j} x{i}", f"x{i} x{j}") if self.orientation == DESCENDING else (
            f"x{i} x{j}", f"x{j} x{i}")
        terms = [(rhs_mono, self.get_q(i, j))]
        terms += [(f"x{k}", self.get_a(i, j, k)) for k in range(1, self.n + 1)]
        terms.append(("", self.get_b(i, j)))
        return f"{lhs} = " + _render_terms([t for t in terms if not t[1].is_zero()])

    def __repr__(self) -> str:
        return (f"AlgebraPresentation(name={self.name!r}, n={self.n}, "
                f"orientation={self.orientation!r}, params={self.params!r})")


def validate(pres: AlgebraPresentation) -> List[str]:
    """List of violations; empty means valid."""
    out: List[str] = []
    if not isinstance(pres.n, int) or pres.n < 1:
        out.append(f"generator count must be a positive integer, got {pres.n!r}")
        return out
    if pres.orientation not in (DESCENDING, ASCENDING):
        out.append(f"unknown orientation {pres.orientation!r}")
    seen = set()
    for p in pres.params:
        if not IDENTIFIER.match(p):
            out.append(f"invalid parameter name {p!r}")
        if p in seen:
            out.append(f"duplicate parameter {p!r}")
        seen.add(p)
    n = pres.n
    declared = set(pres.params)

    def check_pair(kind, i, j):
        if not (1 <= i < j <= n):
            out.append(f"{kind} {i} {j}: indices must satisfy 1 <= i < j <= {n}")

    def check_params(kind, key, s):
        extra = s.parameters() - declared
        if extra:
            out.append(f"{kind} {' '.join(map(str, key))}: undeclared parameter "
                       + ", ".join(sorted(extra)))

    for (i, j), s in pres.q.items():
        check_pair("q", i, j)
        if s.is_zero():
            out.append(f"q {i} {j}: q must be nonzero")
        check_params("q", (i, j), s)
    for (i, j, k), s in pres.a.items():
        check_pair("a", i, j)
        if not (1 <= k <= n):
            out.append(f"a {i} {j} {k}: index k must satisfy 1 <= k <= {n}")
        check_params("a", (i, j, k), s)
    for (i, j), s in pres.b.items():
        check_pair("b", i, j)
        check_params("b", (i, j), s)
    return out


def translate_orientation(pres: AlgebraPresentation) -> AlgebraPresentation:
    """Same algebra, opposite orientation.

    Solving x_j x_i = q x_i x_j + L for x_i x_j gives
    q' = 1/q, a' = -a/q, b' = -b/q; the map is an involution.
    """
    inv = {key: 1 / pres.get_q(*key) for key in pres.pairs()}
    q = {key: v for key, v in inv.items() if v != ONE}
    a = {}
    for (i, j, k), s in pres.a.items():
        if not s.is_zero():
            a[(i, j, k)] = -s * inv[(i, j)]
    b = {}
    for (i, j), s in pres.b.items():
        if not s.is_zero():
            b[(i, j)] = -s * inv[(i, j)]
    flipped = ASCENDING if pres.orientation == DESCENDING else DESCENDING
    return AlgebraPresentation(pres.n, q, a, b, pres.params, flipped, pres.name)


def same_presentation(p1: AlgebraPresentation, p2: AlgebraPresentation) -> bool:
    """Field-wise equality after bringing both to descending orientation."""
    d1, d2 = p1.descending(), p2.descending()
    if d1.n != d2.n or set(d1.params) != set(d2.params) or d1.name != d2.name:
        return False
    n = d1.n
    for i, j in d1.pairs():
        if d1.get_q(i, j) != d2.get_q(i, j) or d1.get_b(i, j) != d2.get_b(i, j):
            return False
        if any(d1.get_a(i, j, k) != d2.get_a(i, j, k) for k in range(1, n + 1)):
            return False
    return True


# ---------------------------------------------------------------------------
# reports
# ---------------------------------------------------------------------------

@dataclass
class Condition:
    """One instantiated identity ``lhs = rhs``."""

    id: str
    lhs: Scalar
    rhs: Scalar = ZERO
    triple: Optional[Tuple[int, ...]] = None
    text: str = ""

    @property
    def difference(self) -> Scalar:
        return self.lhs - self.rhs

    @property
    def holds(self) -> bool:
        return self.lhs == self.rhs


@dataclass
class PBWReport:
    consistent: bool
    failures: List[Tuple[Tuple[int, int, int], NormalPoly]] = field(default_factory=list)
    closed_conditions: Optional[List[Condition]] = None


def check_pbw_by_overlaps(pres: AlgebraPresentation) -> PBWReport:
    """Resolve every overlap x_k x_j x_i (i < j < k) both ways and compare."""
    failures = []
    n = pres.n
    for i in range(1, n + 1):
        for j in range(i + 1, n + 1):
            for k in range(j + 1, n + 1):
                w = (k, j, i)
                diff = normalize_word(w, pres, LEFTMOST) - normalize_word(w, pres, RIGHTMOST)
                if not diff.is_zero():
                    failures.append(((i, j, k), diff))
    return PBWReport(not failures, failures)


def pbw3_coefficients(pres: AlgebraPresentation) -> Dict[str, Scalar]:
    """Named coefficients of a 3-generator presentation in descending form."""
    if pres.n != 3:
        raise WrongArity(f"closed PBW conditions need n = 3, got n = {pres.n}")
    d = pres.descending()
    names = {
        "q1": d.get_q(1, 2), "q2": d.get_q(1, 3), "q3": d.get_q(2, 3),
        "b1": d.get_b(1, 2), "b2": d.get_b(1, 3), "b3": d.get_b(2, 3),
    }
    for (i, j), row in (((1, 2), ("a", "b", "c")), ((1, 3), ("alpha", "beta", "gamma")),
                        ((2, 3), ("lambda", "mu", "nu"))):
        for k, nm in enumerate(row, start=1):
            names[nm] = d.get_a(i, j, k)
    return names


def check_pbw3_closed(pres: AlgebraPresentation) -> List[Condition]:
    """The ten closed-form PBW conditions for three generators."""
    c = pbw3_coefficients(pres)
    q1, q2, q3 = c["q1"], c["q2"], c["q3"]
    a, b, cc = c["a"], c["b"], c["c"]
    al, be, ga = c["alpha"], c["beta"], c["gamma"]
    la, mu, nu = c["lambda"], c["mu"], c["nu"]
    b1, b2, b3 = c["b1"], c["b2"], c["b3"]
    return [
        Condition("11", (1 - q3) * al, (1 - q2) * mu, text="(1 - q3) alpha = (1 - q2) mu"),
        Condition("12", (1 - q3) * a, (1 - q1) * nu, text="(1 - q3) a = (1 - q1) nu"),
        Condition("13", (1 - q2) * b, (1 - q1) * ga, text="(1 - q2) b = (1 - q1) gamma"),
        Condition("14", (1 - q1 * q2) * la, text="(1 - q1 q2) lambda = 0"),
        Condition("15", (q1 - q3) * be, text="(q1 - q3) beta = 0"),
        Condition("16", (1 - q2 * q3) * cc, text="(1 - q2 q3) c = 0"),
        Condition("17", ((1 - q3) * al - mu) * a + (b + q1 * ga) * la - nu * al + (q1 * q2 - 1) * b3,
                  text="((1 - q3) alpha - mu) a + (b + q1 gamma) lambda - nu alpha + (q1 q2 - 1) b3 = 0"),
        Condition("18", (a - nu) * be + q1 * ga * mu - q3 * al * b + (q1 - q3) * b2,
                  text="(a - nu) beta + q1 gamma mu - q3 alpha b + (q1 - q3) b2 = 0"),
        Condition("19", (a + (q1 - 1) * nu) * ga + b * nu - (mu + q3 * al) * cc + (1 - q2 * q3) * b1,
                  text="(a + (q1 - 1) nu) gamma + b nu - (mu + q3 alpha) c + (1 - q2 q3) b1 = 0"),
        Condition("20", -(mu + q3 * al) * b1 + (a - nu) * b2 + (b + q1 * ga) * b3,
                  text="-(mu + q3 alpha) b1 + (a - nu) b2 + (b + q1 gamma) b3 = 0"),
    ]
