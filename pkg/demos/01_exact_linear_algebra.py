"""
Exact linear algebra
====================

Everything in tropfm runs on ``fractions.Fraction``; no floating point value
ever reaches a comparison. This walk-through covers the matrix layer.
"""

from fractions import Fraction

from tropfm import (
    IntMatrix,
    RatMatrix,
    check_cauchy_binet,
    check_jacobi_identity,
    det_exact,
    inverse,
    minor,
    smith_normal_form,
)

# A polarization type (1, 6): the Smith form exposes the invariant factors.
E = IntMatrix.from_rows([[2, 0], [0, 3]])
print("det E =", det_exact(E))
print("invariant factors:", smith_normal_form(E).invariant_factors)

# Minors use 1-based row and column index sets.
A = RatMatrix.from_rows([[2, 1], [1, 3]])
print("minor_{1},{2} =", minor(A, (1,), (2,)))

# Inverses stay exact.
Ainv = inverse(A)
print("A^-1 =", [[str(x) for x in row] for row in Ainv.to_rows()])
assert A @ Ainv == RatMatrix.identity(2)

# Two classical identities used by the main theorem's proof, checked exactly.
M = RatMatrix.from_rows([[Fraction(1, 2), 2, 0], [1, -1, 3], [0, 4, Fraction(5, 3)]])
print("Jacobi holds:", check_jacobi_identity(M, (1, 3), (2, 3)))
print("Cauchy-Binet holds:", check_cauchy_binet(M, inverse(M), (1, 2), (2, 3)))

# Floats are refused outright.
try:
    RatMatrix.from_rows([[0.5]])
except TypeError as exc:
    print("refused:", exc)
