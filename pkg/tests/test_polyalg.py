from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from massey_torus.polyalg import (
    Matrix,
    Poly,
    charpoly,
    poly_at_matrix,
    rank_kernel,
    rational_irreducible_factors,
    squarefree_factors,
)
from massey_torus.lmodules import companion

from conftest import random_matrix

x = Poly.x()


def test_identity_rank():
    r, ker = rank_kernel(Matrix.identity(3))
    assert r == 3 and ker == []


def test_zero_rank():
    r, ker = rank_kernel(Matrix.zeros(2, 3))
    assert r == 0 and len(ker) == 3


def test_nilpotent_rank():
    A = Matrix([[1, 1], [0, 1]]) - Matrix.identity(2)
    r, ker = rank_kernel(A)
    assert r == 1 and len(ker) == 1


def test_kernel_vectors_are_independent_null_vectors(rng):
    for _ in range(30):
        n, m = rng.randint(1, 5), rng.randint(1, 6)
        A = random_matrix(rng, n, m)
        # force rank deficiency by duplicating a column
        if m > 1:
            rows = [r[:-1] + [r[0] * 2] for r in A.tolist()]
            A = Matrix(rows)
        r, ker = rank_kernel(A)
        assert r + len(ker) == m
        for v in ker:
            assert not any(A.apply(v))
        if ker:
            assert Matrix.from_columns(ker, m).rank() == len(ker)


def test_charpoly_examples():
    assert charpoly(Matrix([[1, 1], [0, 1]])) == (x - 1) ** 2
    assert charpoly(Matrix.identity(4)) == (x - 1) ** 4
    assert charpoly(companion(x ** 2 + x + 1)) == x ** 2 + x + 1


def test_charpoly_non_square():
    with pytest.raises(ValueError):
        charpoly(Matrix.zeros(2, 3))


def test_cayley_hamilton(rng):
    for n in range(1, 7):
        for _ in range(5):
            A = random_matrix(rng, n)
            p = charpoly(A)
            assert p.degree == n and p.lc == 1
            assert poly_at_matrix(p, A).is_zero()
            assert p.coeffs[0] == (-1) ** n * A.det()


def test_rank_transpose(rng):
    for _ in range(40):
        A = random_matrix(rng, rng.randint(1, 6), rng.randint(1, 6), bound=2)
        assert A.rank() == A.T.rank()


def test_squarefree_examples():
    assert squarefree_factors((x - 1) ** 2 * (x + 1)) == [(x + 1, 1), (x - 1, 2)]
    assert squarefree_factors(x ** 3) == [(x, 3)]
    assert squarefree_factors(x ** 2 - 2) == [(x ** 2 - 2, 1)]


coeff_lists = st.lists(st.integers(-4, 4), min_size=1, max_size=4)


@settings(max_examples=60)
@given(st.lists(st.tuples(coeff_lists, st.integers(1, 3)), min_size=1, max_size=3), st.integers(1, 5))
def test_squarefree_composes_back(parts, lead):
    p = Poly([lead])
    for c, k in parts:
        f = Poly(c)
        if f.is_zero():
            continue
        p = p * f ** k
    fac = squarefree_factors(p)
    prod = Poly([1])
    for f, k in fac:
        prod = prod * f ** k
        assert f.degree > 0
        # square-free: coprime to its derivative
        from massey_torus.polyalg import poly_gcd
        assert poly_gcd(f, f.derivative()).degree == 0
    assert prod == p.monic()
    for i, (f, _) in enumerate(fac):
        for g, _ in fac[i + 1:]:
            from massey_torus.polyalg import poly_gcd
            assert poly_gcd(f, g).degree == 0


def test_rational_factors_examples():
    assert rational_irreducible_factors(x ** 2 - 1) == [(x - 1, 1, True), (x + 1, 1, True)]
    assert rational_irreducible_factors((x - 1) ** 2 * (x + 1)) == [(x - 1, 2, True), (x + 1, 1, True)]
    # oracle: no rational root among the divisors of the constant term
    assert all((x ** 2 + x + 1)(c) for c in (1, -1))
    assert rational_irreducible_factors(x ** 2 + x + 1) == [(x ** 2 + x + 1, 1, True)]


def test_rational_factors_multiply_back(rng):
    for _ in range(20):
        A = random_matrix(rng, rng.randint(1, 6), bound=3)
        p = charpoly(A)
        prod = Poly([1])
        for f, k, proven in rational_irreducible_factors(p):
            assert proven
            prod = prod * f ** k
        assert prod == p


def test_poly_arithmetic():
    q, r = divmod(x ** 3 + 2, x - 1)
    assert q * (x - 1) + r == x ** 3 + 2
    assert ((x - 1) ** 3 * (x + 2)).valuation(x - 1) == 3
    assert Poly([Fraction(1, 2), 2]).monic() == Poly([Fraction(1, 4), 1])


def test_inverse_and_solve(rng):
    A = random_matrix(rng, 4)
    while A.det() == 0:
        A = random_matrix(rng, 4)
    assert A @ A.inverse() == Matrix.identity(4)
    b = [Fraction(1), Fraction(2), Fraction(0), Fraction(-1)]
    assert A.apply(A.solve(b)) == b
