"""
Line bundles from Appell-Humbert data
=====================================

A tropical line bundle is a symmetric integral form E and a linear form l.
The form decides ampleness and the number of sections; l only moves the
bundle around inside its algebraic equivalence class.
"""

from fractions import Fraction

from tropfm import (
    AppellHumbertData,
    chern,
    deg_phi,
    factor_of_automorphy,
    h0,
    is_ample,
    is_isomorphic,
    kernel_invariants,
    tensor,
    theorem_of_square_check,
    translate_pullback,
)

L = AppellHumbertData.from_E([[2, 1], [1, 3]], [Fraction(1, 2), 0])
print("ample:", is_ample(L))
print("h0 =", h0(L), " deg phi_L =", deg_phi(L), " K(L) type:", kernel_invariants(L).invariant_factors)
print("c1(L) =", chern(L))

# The factor of automorphy on a lattice vector and a point.
print("a((1,0), (1/3, 0)) =", factor_of_automorphy(L, [1, 0], [Fraction(1, 3), 0]))

# Translating changes l, never E.
t = translate_pullback(L, [Fraction(1, 4), 0])
print("after translation l =", [str(x) for x in t.l], " same E:", t.E == L.E)

# Shifting l by an integral form gives an isomorphic bundle.
M = AppellHumbertData.from_E(L.E, [Fraction(1, 2) + 3, -1])
print("isomorphic to the shifted bundle:", is_isomorphic(L, M))

# Theorem of the square, exactly.
x, y = [Fraction(1, 3), Fraction(-2, 5)], [Fraction(7, 2), 1]
print("theorem of the square:", theorem_of_square_check(L, x, y))

# Chern classes add under tensor product.
N = AppellHumbertData.from_E([[1, 0], [0, -1]])
assert chern(tensor(L, N)) == chern(L) + chern(N)
print("c1 is additive: yes")
