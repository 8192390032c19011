"""
Tropical (co)homology of a real torus
=====================================

A class on a rank-g torus is a sparse sum of basis elements
``lambda*_I (x) eta*_J``; the first slot lives in the exterior algebra of the
dual lattice of Lambda, the second in that of the dual of N. Bidegree
``(p, q)`` is ``(|J|, |I|)``.
"""

from tropfm import (
    CohClass,
    cap,
    cup,
    degree,
    delta_top,
    fundamental_class,
    pd_to_coh,
    pd_to_hom,
    pontryagin_hom,
    standard_torus,
)

X = standard_torus(2)
a = CohClass.basis_element(X, (1,), (1,))
b = CohClass.basis_element(X, (2,), (2,))
print("a =", a)
print("a cup b =", cup(a, b))

# Odd classes anticommute, (1,1)-classes commute.
odd1 = CohClass.basis_element(X, (), (1,))
odd2 = CohClass.basis_element(X, (), (2,))
print("eta1* eta2* =", cup(odd1, odd2), " eta2* eta1* =", cup(odd2, odd1))

# Poincare duality is capping with the fundamental class.
F = fundamental_class(X)
print("[X] =", F)
print("a cap [X] =", cap(a, F), "=", pd_to_hom(a))
assert pd_to_coh(pd_to_hom(a)) == a

# The Pontryagin product puts complementary cycles back together.
print("PD(a) * PD(b) =", pontryagin_hom(pd_to_hom(a), pd_to_hom(b)))

top = cup(a, b)
print("integral of the top class:", delta_top(top), "=", degree(cap(top, F)))
