"""
Checking for a PBW basis
========================

Two independent tests: resolving every overlap x_k x_j x_i both ways, and
the closed-form conditions for three generators.  They have to agree.
"""

from biquad import AlgebraPresentation, check_pbw_by_overlaps
from biquad.presentation import check_pbw3_closed
from biquad.scalar import ONE, Scalar

q = Scalar.param("q")

# x2 x1 = q x1 x2 and x3 x2 = x2 x3 + x1
pres = AlgebraPresentation(3, {(1, 2): q}, {(2, 3, 1): ONE}, params=("q",))
report = check_pbw_by_overlaps(pres)
print("consistent:", report.consistent)
for triple, diff in report.failures:
    print(triple, diff.render())

# the closed conditions point at the same defect
for c in check_pbw3_closed(pres):
    if not c.holds:
        print(c.id, c.text)
