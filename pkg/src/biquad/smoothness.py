"""Differential smoothness: sufficient conditions, obstruction and verdict.

The sufficient condition list is stated for relations written
x_i x_j = q_ij x_j x_i + ... (i < j), so it is evaluated on the ascending
form of a presentation.  The constructive path (forced twists plus
verification) works on the descending form.
"""

from __future__ import annotations

import itertools
import time
from dataclasses import dataclass, field
from typing import Callable, Dict, List, Optional, Tuple

from .calculus import (
    KForm,
    Obstruction,
    TwistFamily,
    d_on_forms,
    derive_forced_twists,
    differential,
    find_obstruction,
    kernel_of_d,
    left_multiply_form,
    monomials_up_to,
    verify_integral_identity,
    volume_data,
)
from .freealg import NormalPoly, apply_endo, commute_on_generators, multiply, relation_defects
from .presentation import PBWReport, check_pbw_by_overlaps
from .scalar import ONE, Scalar

__all__ = [
    "SMOOTH",
    "NOT_SMOOTH",
    "UNDETERMINED",
    "DEFAULT_DEPTH",
    "InconsistentPresentation",
    "ConditionEntry",
    "WitnessReport",
    "SmoothnessVerdict",
    "theorem31_conditions",
    "theorem32_obstruction",
    "verify_witness",
    "analyze",
]

SMOOTH = "smooth"
NOT_SMOOTH = "not-smooth"
UNDETERMINED = "undetermined"

DEFAULT_DEPTH = 4


class InconsistentPresentation(ValueError):
    def __init__(self, report: PBWReport):
        self.report = report
        triples = ", ".join(str(t) for t, _ in report.failures)
        super().__init__(f"relations have no PBW basis; overlap failures at {triples}")


@dataclass
class ConditionEntry:
    id: str
    label: str
    lhs: Scalar
    indices: Tuple[int, ...]

    @property
    def holds(self) -> bool:
        return self.lhs.is_zero()


# Each condition is (id, label, index family, lhs as a function of (q, a, b, i, j, k)).
# Families: "ijk" means k ranges over k != i, j; the others fix the order of
# k relative to i < j.  Equalities "L = R" are stored as L - R.
_Cond = Tuple[str, str, str, Callable]

_CONDITIONS: List[_Cond] = [
    ("1", "a_ij,k", "ijk", lambda q, a, b, i, j, k: a(i, j, k)),
    ("2", "b(q-1) - a_i a_j", "ij",
     lambda q, a, b, i, j, k: b(i, j) * (q(i, j) - 1) - a(i, j, i) * a(i, j, j)),
    ("3", "a_ij,j(1-q_ik) - a_ik,k(1-q_ij)", "ikj",
     lambda q, a, b, i, j, k: a(i, j, j) * (1 - q(i, k)) - a(i, k, k) * (1 - q(i, j))),
    ("4", "a_kj,j(1-q_ik) - a_ik,i(1-q_kj)", "ikj",
     lambda q, a, b, i, j, k: a(k, j, j) * (1 - q(i, k)) - a(i, k, i) * (1 - q(k, j))),
    ("5", "a_ij,j a_kj,j + b_kj(q_kj-q_ij)", "ikj",
     lambda q, a, b, i, j, k: a(i, j, j) * a(k, j, j) + b(k, j) * (q(k, j) - q(i, j))),
    ("6", "b_ij(q_ik-q_kj) + a_kj,k a_ij,j q_ik - q_kj a_ik,k a_ij,i", "ikj",
     lambda q, a, b, i, j, k: b(i, j) * (q(i, k) - q(k, j)) + a(k, j, k) * a(i, j, j) * q(i, k)
     - q(k, j) * a(i, k, k) * a(i, j, i)),
    ("7", "a_ij,i(1-q_kj) - a_kj,k(1-q_ij)", "kij",
     lambda q, a, b, i, j, k: a(i, j, i) * (1 - q(k, j)) - a(k, j, k) * (1 - q(i, j))),
    ("8", "a_ki,i(1-q_kj) - a_kj,j(1-q_ki)", "kij",
     lambda q, a, b, i, j, k: a(k, i, i) * (1 - q(k, j)) - a(k, j, j) * (1 - q(k, i))),
    ("9", "a_ij,j(1-q_ki) - a_ki,k(1-q_ij)", "kij",
     lambda q, a, b, i, j, k: a(i, j, j) * (1 - q(k, i)) - a(k, i, k) * (1 - q(i, j))),
    ("10", "b_ij(1-q_ki q_kj) + a_ki,k a_ij,i + q_ki a_ij,j a_kj,k", "kij",
     lambda q, a, b, i, j, k: b(i, j) * (1 - q(k, i) * q(k, j)) + a(k, i, k) * a(i, j, i)
     + q(k, i) * a(i, j, j) * a(k, j, k)),
    ("11", "a_jk,k(1-q_ij) - a_ij,i(1-q_jk)", "ijk<",
     lambda q, a, b, i, j, k: a(j, k, k) * (1 - q(i, j)) - a(i, j, i) * (1 - q(j, k))),
    ("12", "a_ik,i(1-q_jk) - a_jk,j(1-q_ik)", "ijk<",
     lambda q, a, b, i, j, k: a(i, k, i) * (1 - q(j, k)) - a(j, k, j) * (1 - q(i, k))),
    ("13", "a_ik,k(1-q_ij) - a_ij,j(1-q_ik)", "ijk<",
     lambda q, a, b, i, j, k: a(i, k, k) * (1 - q(i, j)) - a(i, j, j) * (1 - q(i, k))),
    ("14", "b_ij(1-q_ik q_jk) + a_ik,k a_ij,i + q_ik a_ij,j a_jk,k", "ijk<",
     lambda q, a, b, i, j, k: b(i, j) * (1 - q(i, k) * q(j, k)) + a(i, k, k) * a(i, j, i)
     + q(i, k) * a(i, j, j) * a(j, k, k)),
]


def _index_sets(family: str, n: int):
    for i in range(1, n + 1):
        for j in range(i + 1, n + 1):
            if family == "ij":
                yield (i, j, None)
                continue
            for k in range(1, n + 1):
                if family == "ijk" and k not in (i, j):
                    yield (i, j, k)
                elif family == "ikj" and i < k < j:
                    yield (i, j, k)
                elif family == "kij" and k < i:
                    yield (i, j, k)
                elif family == "ijk<" and k > j:
                    yield (i, j, k)


def theorem31_conditions(pres) -> List[ConditionEntry]:
    """Every sufficient condition instantiated on every applicable index set."""
    asc = pres.ascending()
    q, a, b = asc.get_q, asc.get_a, asc.get_b
    out = []
    for cid, label, family, fn in _CONDITIONS:
        for i, j, k in _index_sets(family, asc.n):
            idx = (i, j) if k is None else (i, j, k)
            out.append(ConditionEntry(cid, label, Scalar.coerce(fn(q, a, b, i, j, k)), idx))
    return out


def theorem32_obstruction(pres) -> Optional[Tuple[int, int, int]]:
    obs = find_obstruction(pres)
    return None if obs is None else obs.triple


# ---------------------------------------------------------------------------
# witness verification
# ---------------------------------------------------------------------------

@dataclass
class WitnessReport:
    """Outcome of each verification obligation for a twist family."""

    depth: int
    endomorphism: bool
    defects: Dict[int, Dict[Tuple[int, int], NormalPoly]]
    commute: bool
    dd_zero: bool
    leibniz: bool
    connected: bool
    volume: bool
    integral: Dict[int, bool]

    @property
    def passed(self) -> bool:
        return (self.endomorphism and self.commute and self.dd_zero and self.leibniz
                and self.connected and self.volume and all(self.integral.values()))


def _check_dd(pres, tw, D) -> bool:
    if pres.n < 2:
        return True
    return all(d_on_forms(differential(NormalPoly.monomial(m), pres, tw), pres, tw).is_zero()
               for m in monomials_up_to(pres.n, D))


def _check_leibniz(pres, tw, D) -> bool:
    monos = monomials_up_to(pres.n, D)
    for ma in monos:
        a = NormalPoly.monomial(ma)
        da = differential(a, pres, tw)
        for mb in monos:
            if sum(ma) + sum(mb) > D:
                continue
            b = NormalPoly.monomial(mb)
            lhs = differential(multiply(a, b, pres), pres, tw)
            rhs = da.right_multiply(b, pres) + left_multiply_form(a, differential(b, pres, tw), pres, tw)
            if lhs != rhs:
                return False
    return True


def _check_volume(pres, tw, D) -> bool:
    vol = volume_data(pres, tw)
    omega = vol.omega
    for m in monomials_up_to(pres.n, min(D, 3)):
        p = NormalPoly.monomial(m)
        if left_multiply_form(p, omega, pres, tw) != omega.right_multiply(apply_endo(vol.nu_omega, p, pres), pres):
            return False
    return True


def verify_witness(pres, tw: TwistFamily, depth: int = DEFAULT_DEPTH) -> WitnessReport:
    pres = pres.descending()
    n = pres.n
    defects = {}
    for k in range(1, n + 1):
        dk = relation_defects(tw[k], pres)
        if dk:
            defects[k] = dk
    endo = not defects and all(tw[k].is_bijective() for k in range(1, n + 1))
    commute = all(commute_on_generators(tw[k], tw[l]) for k, l in itertools.combinations(range(1, n + 1), 2))
    kernel = kernel_of_d(pres, tw, depth)
    connected = len(kernel) == 1 and kernel[0] == NormalPoly.constant(ONE, n)
    return WitnessReport(
        depth=depth,
        endomorphism=endo,
        defects=defects,
        commute=commute,
        dd_zero=_check_dd(pres, tw, depth),
        leibniz=_check_leibniz(pres, tw, depth),
        connected=connected,
        volume=_check_volume(pres, tw, depth),
        integral={j: verify_integral_identity(j, pres, tw) for j in range(1, n)},
    )


# ---------------------------------------------------------------------------
# verdict
# ---------------------------------------------------------------------------

@dataclass
class SmoothnessVerdict:
    status: str
    n: int
    pbw: PBWReport
    conditions: List[ConditionEntry]
    witness: Optional[TwistFamily] = None
    obstruction: Optional[Tuple[int, int, int]] = None
    checks: Optional[WitnessReport] = None
    timings: Dict[str, float] = field(default_factory=dict)

    @property
    def gkdim(self) -> int:
        return self.n

    @property
    def failed_conditions(self) -> List[ConditionEntry]:
        return [c for c in self.conditions if not c.holds]


def analyze(pres, depth: int = DEFAULT_DEPTH) -> SmoothnessVerdict:
    """Smooth, not smooth, or undetermined, with the evidence for it.

    Raises :class:`InconsistentPresentation` if the relations admit no PBW basis.
    """
    timings = {}
    t0 = time.perf_counter()
    pbw = check_pbw_by_overlaps(pres)
    timings["pbw"] = time.perf_counter() - t0
    if not pbw.consistent:
        raise InconsistentPresentation(pbw)
    t0 = time.perf_counter()
    conditions = theorem31_conditions(pres)
    timings["conditions"] = time.perf_counter() - t0
    n = pres.n
    twists = derive_forced_twists(pres)
    if isinstance(twists, Obstruction):
        return SmoothnessVerdict(NOT_SMOOTH, n, pbw, conditions, obstruction=twists.triple, timings=timings)
    t0 = time.perf_counter()
    report = verify_witness(pres, twists, depth)
    timings["witness"] = time.perf_counter() - t0
    if report.passed:
        return SmoothnessVerdict(SMOOTH, n, pbw, conditions, witness=twists, checks=report, timings=timings)
    return SmoothnessVerdict(UNDETERMINED, n, pbw, conditions, checks=report, timings=timings)
