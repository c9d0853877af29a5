"""
A differential calculus on the quantum plane
============================================

One-forms are free right modules on dx1, dx2, and moving a coefficient past
dx_k applies a twist rho_k.  The twists here are forced by the relations.
"""

from biquad import catalog_get
from biquad.calculus import (
    KForm,
    d_on_forms,
    derive_forced_twists,
    differential,
    kernel_of_d,
    volume_data,
    wedge,
)
from biquad.freealg import NormalPoly

pres = catalog_get("quantum-plane")
tw = derive_forced_twists(pres)
print(tw.render())

# d(x1^2 x2^3): the dx2 coefficient picks up q^-2
a = NormalPoly.monomial((2, 3))
da = differential(a, pres, tw)
print(da.render())
print("dd = 0:", d_on_forms(da, pres, tw).is_zero())

# dx2 ^ dx1 = -q dx1 ^ dx2
dx1, dx2 = KForm.basis((1,), 2), KForm.basis((2,), 2)
print(wedge(dx2, dx1, pres, tw).render())

# only constants are closed, up to degree 5
print([p.render() for p in kernel_of_d(pres, tw, 5)])

# the volume form twists by nu = rho1 rho2
print(volume_data(pres, tw).nu_omega.render())
