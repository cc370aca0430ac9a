"""
Symplectic products are not unique
==================================

On the even plane with omega = e1* ^ e2* every bracket vanishes and so does
the natural product.  A graded-symmetric trilinear form T shifts it to another
product that is still symplectic.
"""

from flatsuper.catalog import entry
from flatsuper.products import natural_symplectic, perturb_symplectic, verify_symplectic

g = entry("abelian2").algebra
base = natural_symplectic(g)
print("natural product is zero:", base.is_zero())

# T(e2, e2, e2) = 1 and nothing else
other = perturb_symplectic(g, base, {(1, 1, 1): 1})
for line in other.format_lines("*"):
    print("  ", line)
print("still symplectic:", verify_symplectic(g, other) == [], " different:", other != base)
