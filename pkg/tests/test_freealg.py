import random

import pytest
import sympy
from hypothesis import given, settings, strategies as st

from biquad.catalog import catalog_get
from biquad.freealg import (
    LEFTMOST,
    RIGHTMOST,
    AffineEndo,
    FreePoly,
    NoDescent,
    NormalPoly,
    apply_endo,
    commute_on_generators,
    exponents_to_word,
    is_relation_preserving,
    multiply,
    normalize,
    normalize_word,
    reduce_once,
)
from biquad.presentation import check_pbw_by_overlaps
from biquad.scalar import ONE, Scalar

q = Scalar.param("q")
WEYL = catalog_get("weyl-1")
QPLANE = catalog_get("quantum-plane")
QWEYL = catalog_get("quantum-weyl")


def mono(*alpha, c=ONE):
    return NormalPoly.monomial(alpha, c)


def test_reduce_once():
    assert reduce_once((2, 1), WEYL) == FreePoly({(1, 2): ONE, (): -ONE})
    with pytest.raises(NoDescent):
        reduce_once((1, 2), WEYL)
    assert reduce_once((2, 2, 1), QPLANE, RIGHTMOST) == FreePoly({(2, 1, 2): q})
    assert reduce_once((2, 2, 1), QPLANE, LEFTMOST) == FreePoly({(2, 1, 2): q})


def test_normalize_examples():
    got = normalize(FreePoly.word((2, 1, 1)), WEYL)
    assert got == NormalPoly({(2, 1): ONE, (1, 0): Scalar.const(-2)})
    assert got.render() == "x1^2 x2 - 2 x1"
    assert normalize_word((2, 1), QPLANE) == mono(1, 1, c=q)
    p = catalog_get("polynomial-4")
    assert normalize_word((1, 2, 3, 4), p) == mono(1, 1, 1, 1)


def test_multiply_examples():
    assert multiply(mono(0, 1), mono(1, 0), WEYL) == NormalPoly({(1, 1): ONE, (0, 0): -ONE})
    b = NormalPoly({(2, 1): q, (0, 0): ONE})
    assert multiply(NormalPoly.constant(ONE, 2), b, WEYL) == b
    assert multiply(mono(1, 0), mono(0, 1), QPLANE) == mono(1, 1)


def test_apply_endo_examples():
    e = AffineEndo.from_map(2, {1: (q, 0)})
    assert apply_endo(e, mono(2, 0), QPLANE) == mono(2, 0, c=q ** 2)
    p = NormalPoly({(3, 1): q, (0, 2): ONE})
    assert apply_endo(AffineEndo.identity(2), p, QPLANE) == p
    rho2 = AffineEndo.from_map(2, {1: (1 / q, 0)})
    assert apply_endo(rho2, mono(1, 1), QPLANE) == mono(1, 1, c=1 / q)


def test_relation_preserving_examples():
    rho1 = AffineEndo.from_map(2, {2: (q, 0)})
    assert is_relation_preserving(rho1, QPLANE)
    assert is_relation_preserving(AffineEndo.identity(2), WEYL)
    assert not is_relation_preserving(rho1, QWEYL)


def test_commute_examples():
    d1 = AffineEndo.from_map(2, {1: (q, 0), 2: (2, 0)})
    d2 = AffineEndo.from_map(2, {1: (3, 0), 2: (1 / q, 0)})
    assert commute_on_generators(d1, d2)
    e1 = AffineEndo.from_map(2, {2: (q, 1)})
    e2 = AffineEndo.from_map(2, {2: (1, 1)})
    assert not commute_on_generators(e1, e2)
    rho1 = AffineEndo.from_map(2, {2: (q, 0)})
    rho2 = AffineEndo.from_map(2, {1: (1 / q, 0)})
    assert commute_on_generators(rho1, rho2)


def test_affine_inverse():
    e = AffineEndo.from_map(3, {1: (q, 2), 3: (-1, q)})
    assert e.compose(e.inverse()).is_identity()
    assert AffineEndo.from_map(1, {1: (q, 1)}).render() == {"x1": "q x1 + 1"}


# --- oracles -----------------------------------------------------------------

t = sympy.Symbol("t")
F = sympy.Function("f")(t)


def weyl_operator(word):
    """x1 = multiplication by t, x2 = -d/dt; then x2 x1 = x1 x2 - 1."""
    expr = F
    for letter in reversed(word):
        expr = t * expr if letter == 1 else -sympy.diff(expr, t)
    return sympy.expand(expr)


def normal_poly_operator(p: NormalPoly):
    total = 0
    for (a1, a2), c in p.items():
        total += sympy.Rational(str(c.constant_value())) * weyl_operator((1,) * a1 + (2,) * a2)
    return sympy.expand(total)


@settings(max_examples=40, deadline=None)
@given(st.lists(st.sampled_from([1, 2]), max_size=6))
def test_weyl_against_differential_operators(word):
    nf = normalize_word(tuple(word), WEYL)
    assert sympy.simplify(normal_poly_operator(nf) - weyl_operator(word)) == 0


@settings(max_examples=60, deadline=None)
@given(st.lists(st.sampled_from([1, 2, 3]), max_size=7))
def test_multiplicative_weyl_inversion_count(word):
    # x_j x_i = l_ij x_i x_j: the normal form picks up one l_ij per inversion
    pres = catalog_get("multiplicative-weyl-3")
    coeff = ONE
    for a in range(len(word)):
        for b in range(a + 1, len(word)):
            if word[a] > word[b]:
                coeff = coeff * Scalar.param(f"l{word[b]}{word[a]}")
    alpha = tuple(word.count(k) for k in (1, 2, 3))
    assert normalize_word(tuple(word), pres) == NormalPoly.monomial(alpha, coeff)


CONSISTENT = ["weyl-2", "u-n2", "quantum-weyl", "u-sl2", "aw3", "uq-so3", "dispin", "wq-sl2", "q-heisenberg-1",
              "cyclic-quantum-weyl-3", "difference-ops-1-1"]


@pytest.mark.parametrize("name", CONSISTENT)
def test_strategy_independence_and_associativity(name):
    pres = catalog_get(name)
    assert check_pbw_by_overlaps(pres).consistent
    rng = random.Random(name)
    n = pres.n
    for _ in range(40):
        w = tuple(rng.randint(1, n) for _ in range(rng.randint(0, 6)))
        assert normalize_word(w, pres, LEFTMOST) == normalize_word(w, pres, RIGHTMOST)
    for _ in range(15):
        a, b, c = (NormalPoly.monomial([rng.randint(0, 1) for _ in range(n)]) for _ in range(3))
        assert multiply(multiply(a, b, pres), c, pres) == multiply(a, multiply(b, c, pres), pres)


def test_endo_multiplicative_when_relation_preserving():
    pres = catalog_get("u-n2")
    e = AffineEndo.from_map(2, {2: (1, 1)})
    assert is_relation_preserving(e, pres)
    rng = random.Random(3)
    for _ in range(20):
        a = NormalPoly.monomial([rng.randint(0, 2), rng.randint(0, 2)])
        b = NormalPoly.monomial([rng.randint(0, 2), rng.randint(0, 2)])
        assert apply_endo(e, multiply(a, b, pres), pres) == multiply(apply_endo(e, a, pres), apply_endo(e, b, pres), pres)


def test_termination_measure():
    # every rule output has lower degree or fewer inversions
    pres = catalog_get("aw3")

    def measure(w):
        inv = sum(1 for a in range(len(w)) for b in range(a + 1, len(w)) if w[a] > w[b])
        return (len(w), inv)

    rng = random.Random(0)
    for _ in range(100):
        w = tuple(rng.randint(1, 3) for _ in range(rng.randint(2, 6)))
        for strat in (LEFTMOST, RIGHTMOST):
            try:
                out = reduce_once(w, pres, strat)
            except NoDescent:
                continue
            assert all(measure(w2) < measure(w) for w2 in out)


def test_render_deglex():
    p = NormalPoly({(0, 1): ONE, (2, 0): ONE, (1, 0): Scalar.const(-3), (0, 0): q})
    # degree first, then x2 > x1
    assert p.render() == "x1^2 + x2 - 3 x1 + q"
    assert exponents_to_word((2, 0, 1)) == (1, 1, 3)
