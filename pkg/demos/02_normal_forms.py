"""
Normal forms in a bi-quadratic algebra
======================================

Words in the generators are rewritten to ordered monomials
x1^a1 ... xn^an using the pairwise relations.
"""

from biquad import LEFTMOST, RIGHTMOST, catalog_get
from biquad.freealg import normalize_word

weyl = catalog_get("weyl-1")
print(weyl.relation_text(1, 2))

# x2 x1^2 in the first Weyl algebra
print(normalize_word((2, 1, 1), weyl).render())

# on a PBW-consistent algebra the order of rewriting does not matter
sl2 = catalog_get("u-sl2")
word = (3, 2, 1, 3, 2)
left = normalize_word(word, sl2, LEFTMOST)
right = normalize_word(word, sl2, RIGHTMOST)
print(left.render())
print(left == right)
