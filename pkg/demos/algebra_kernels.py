"""
Exact kernels: Smith form, characteristic polynomials and Jordan data
=====================================================================

Everything runs over exact rationals or simple number fields.  This tour
shows the building blocks the analysis relies on.
"""

from fractions import Fraction

from massey_torus.jordan import jordan_profile, nu
from massey_torus.lmodules import snf
from massey_torus.polyalg import Matrix, Poly, PolyRing, charpoly, rational_irreducible_factors
from massey_torus.scalars import verify_extension

# %%
# Smith normal form over Q[u] of the presentation uI - A.

R = PolyRing()
u = R.gen()
A = Matrix([[2, 1, 0], [0, 2, 0], [0, 0, Fraction(1, 2)]])
P = Matrix.identity(3, R) * u - A.change_ring(R)
U, D, V = snf(P)
print("diagonal:", [str(D[k, k]) for k in range(3)])
print("U P V == D:", U @ P @ V == D)

# %%
# Characteristic polynomial, its factors, and Jordan blocks per factor.

p = charpoly(A)
print("charpoly:", p)
for f, mult, _ in rational_irreducible_factors(p):
    print(f"  {f}: multiplicity {mult}, blocks {jordan_profile(A, f).block_sizes}")

# %%
# Eigenvalues outside Q: a primitive cube root of unity in Q(w).

K = verify_extension([1, 1, 1])
w = K.generator()
C = Matrix([[0, -1, 1, 0], [1, -1, 0, 1], [0, 0, 0, -1], [0, 0, 1, -1]])
print("w^3 == 1:", w ** 3 == 1)
print("largest block of C at w:", nu(C, w))
