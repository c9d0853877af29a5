"""Shared generators for the test suite."""

import random

from biquad.presentation import AlgebraPresentation
from biquad.scalar import ONE, ZERO, Scalar

q = Scalar.param("q")
# the coefficient pool {0, +-1, +-2, q, 1/q}
POOL = [ZERO, ONE, -ONE, Scalar.const(2), Scalar.const(-2), q, 1 / q]
NONZERO = [c for c in POOL if not c.is_zero()]

PAIRS3 = [(1, 2), (1, 3), (2, 3)]


def random_presentation(rng: random.Random, n: int = 3, sparsity: float = 0.75) -> AlgebraPresentation:
    """Random descending presentation with coefficients from POOL.

    ``sparsity`` is the chance that each a or b entry is left at zero; uniform
    draws are almost never PBW-consistent, so the default leans to zero.
    """
    Q, A, B = {}, {}, {}
    for i in range(1, n + 1):
        for j in range(i + 1, n + 1):
            Q[(i, j)] = rng.choice(NONZERO) if rng.random() < 0.7 else ONE
            for k in range(1, n + 1):
                if rng.random() > sparsity:
                    A[(i, j, k)] = rng.choice(POOL)
            if rng.random() > sparsity:
                B[(i, j)] = rng.choice(POOL)
    return AlgebraPresentation(n, Q, A, B, ("q",))


def random_instances(count: int, seed: int = 2024):
    rng = random.Random(seed)
    out = []
    for _ in range(count):
        out.append(random_presentation(rng, 3, rng.choice([0.5, 0.7, 0.85])))
    return out


SMOOTH_ENTRIES = [
    "polynomial-1", "polynomial-2", "polynomial-3", "polynomial-4", "quantum-plane",
    "weyl-1", "weyl-2", "u-n2", "multiplicative-weyl-3", "shift-ops-1-1",
    "difference-ops-1-1",
]
NOT_SMOOTH_ENTRIES = ["q-heisenberg-1", "uq-so3", "aw3", "dispin", "u-sl2", "u-so3", "wq-sl2"]
