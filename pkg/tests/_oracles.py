"""Independent reference computations built on sympy."""

import sympy
from sympy.matrices.normalforms import invariant_factors

from massey_torus.polyalg import Poly

U = sympy.symbols("u")


def to_sympy(M):
    return sympy.Matrix(M.rows, M.cols, lambda i, j: sum(c * U ** k for k, c in enumerate(M[i, j].coeffs)))


def from_sympy(expr):
    p = sympy.Poly(expr, U, domain="QQ")
    coeffs = [sympy.Rational(c) for c in reversed(p.all_coeffs())]
    from fractions import Fraction
    return Poly([Fraction(int(c.p), int(c.q)) for c in coeffs])


def invariant_factor_list(M):
    """Non-zero invariant factors of a polynomial matrix, monic."""
    if M.rows == 0 or M.cols == 0:
        return []
    out = []
    for f in invariant_factors(to_sympy(M), domain=sympy.QQ[U]):
        f = sympy.sympify(f)
        if f != 0:
            out.append(from_sympy(f).monic())
    return out
