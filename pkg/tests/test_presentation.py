import random

import pytest

from biquad.catalog import DEFAULT_ENTRIES, catalog_get
from biquad.presentation import (
    ASCENDING,
    DESCENDING,
    AlgebraPresentation,
    WrongArity,
    check_pbw3_closed,
    check_pbw_by_overlaps,
    same_presentation,
    translate_orientation,
    validate,
)
from biquad.freealg import NormalPoly
from biquad.scalar import ONE, ZERO, Scalar

from helpers import random_instances

q = Scalar.param("q")
s = Scalar.param("s")


def test_validate():
    assert validate(catalog_get("quantum-plane")) == []
    bad = AlgebraPresentation(2, {(1, 2): ZERO})
    assert any("q must be nonzero" in v for v in validate(bad))
    undeclared = AlgebraPresentation(2, {(1, 2): Scalar.param("t")}, params=("q",))
    assert any("undeclared parameter" in v for v in validate(undeclared))
    assert validate(AlgebraPresentation(3, a={(2, 1, 3): ONE}))


def test_translate():
    asc = AlgebraPresentation(2, {(1, 2): q}, orientation=ASCENDING, params=("q",))
    desc = translate_orientation(asc)
    assert desc.orientation == DESCENDING and desc.get_q(1, 2) == 1 / q
    poly = catalog_get("polynomial-3")
    assert same_presentation(translate_orientation(poly).descending(), poly)
    sl2 = catalog_get("u-sl2")
    twice = translate_orientation(translate_orientation(sl2))
    assert twice.orientation == sl2.orientation
    for i, j in sl2.pairs():
        assert twice.get_q(i, j) == sl2.get_q(i, j) and twice.get_b(i, j) == sl2.get_b(i, j)
        assert all(twice.get_a(i, j, k) == sl2.get_a(i, j, k) for k in (1, 2, 3))


def test_heisenberg_type_consistent():
    # x2 x1 = x1 x2 + x3, x3 central: both reductions of x3 x2 x1 agree
    pres = AlgebraPresentation(3, a={(1, 2, 3): ONE})
    assert check_pbw_by_overlaps(pres).consistent


def test_two_generators_trivially_consistent():
    assert check_pbw_by_overlaps(AlgebraPresentation(2, {(1, 2): q}, {(1, 2, 1): q}, {(1, 2): 3})).consistent


def test_condition_14_violation():
    pres = AlgebraPresentation(3, {(1, 2): q}, {(2, 3, 1): ONE}, params=("q",))
    r = check_pbw_by_overlaps(pres)
    assert not r.consistent and r.failures[0][0] == (1, 2, 3)
    conds = {c.id: c for c in check_pbw3_closed(pres)}
    assert not conds["14"].holds
    assert all(c.holds for cid, c in conds.items() if cid != "14")
    # the overlap difference carries the factor (1 - q): it vanishes at q = 1
    diff = r.failures[0][1]
    assert all(c.eval_at({"q": 1}) == 0 for c in diff.values())


def test_uqso3_closed_conditions():
    pres = catalog_get("uq-so3")
    assert all(c.holds for c in check_pbw3_closed(pres))
    assert check_pbw_by_overlaps(pres).consistent


def test_closed_needs_three():
    with pytest.raises(WrongArity):
        check_pbw3_closed(catalog_get("weyl-2"))


@pytest.mark.parametrize("name", DEFAULT_ENTRIES)
def test_catalog_valid_and_consistent(name):
    pres = catalog_get(name)
    assert validate(pres) == []
    assert check_pbw_by_overlaps(pres).consistent
    if pres.n == 3:
        assert all(c.holds for c in check_pbw3_closed(pres))


def test_dispin_as_printed_is_inconsistent():
    # x1 x2 - x2 x1 = 1 together with the other two dispin relations
    asc = AlgebraPresentation(3, {(1, 3): -ONE}, {(1, 3, 2): ONE, (2, 3, 3): ONE}, {(1, 2): ONE},
                              orientation=ASCENDING)
    assert not check_pbw_by_overlaps(asc).consistent


def test_translation_preserves_consistency():
    for pres in random_instances(60, seed=9):
        assert check_pbw_by_overlaps(pres).consistent == check_pbw_by_overlaps(translate_orientation(pres)).consistent


def test_relation_text():
    assert catalog_get("weyl-1").relation_text(1, 2) == "x2 x1 = x1 x2 - 1"
    asc = catalog_get("u-sl2").ascending()
    assert asc.relation_text(1, 2) == "x1 x2 = x2 x1 + x3"
