"""
Exact scalars in Q(q)
=====================

Every coefficient in the package is an exact rational function in the
declared parameters.  Equality is exact, so the tests never need a tolerance.
"""

from biquad.scalar import Scalar, parse_scalar

q = Scalar.param("q")

# arithmetic cancels common factors
x = (q ** 2 - 1) / (q + 1)
print(x.render())  # q - 1

# the text grammar is the same one reports are written in
y = parse_scalar("-(1+q^2)/q^4")
print(y.render(), parse_scalar(y.render()) == y)

# substitution at a rational point
print(y.eval_at({"q": 2}))
