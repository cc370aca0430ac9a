"""
Products on a four-dimensional quasi-Frobenius algebra
======================================================

The algebra K + h3 has basis x1..x4, one bracket [x1,x2] = x3 and the form
omega(x1,x4) = omega(x2,x3) = 1.  This walk-through computes its Levi-Civita
product, its natural symplectic product and the curvature of the latter.
"""

from flatsuper.algebra import series
from flatsuper.catalog import entry
from flatsuper.products import (
    curvature,
    is_left_symmetric,
    levi_civita,
    lr_identity_violations,
    natural_ansatz_coefficients,
    natural_symplectic,
    verify_symplectic,
)

g = entry("kh3").algebra

# the Levi-Civita product is torsion free with omega-antisymmetric L_u
lc = levi_civita(g)
print("Levi-Civita product:")
for line in lc.format_lines("."):
    if not line.endswith("= 0"):
        print("  ", line)

# the natural symplectic product, solved pair by pair against the form
nat = natural_symplectic(g)
print("natural product:")
for line in nat.format_lines("*"):
    if not line.endswith("= 0"):
        print("  ", line)
print("symplectic:", verify_symplectic(g, nat) == [])

# the general ansatz a X + b Y + c Z lands on (1/3, 1/3, 0)
print("ansatz coefficients:", [str(x) for x in natural_ansatz_coefficients(g)])

# L and R are fixed by ad and its adjoint
print("L/R identities hold:", lr_identity_violations(g) == [])

# flat means zero curvature, and then the product is left-symmetric
R = curvature(g, nat)
print("flat:", R.is_zero(), " left-symmetric:", is_left_symmetric(nat))

rep = series(g)
print("lower central series dims:", rep.lcs_dims, " center degenerate:", rep.center_degenerate)
