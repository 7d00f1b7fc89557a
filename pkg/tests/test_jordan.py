import pytest

from massey_torus.jordan import jordan_profile, kernel_dims, nu
from massey_torus.lmodules import companion
from massey_torus.polyalg import Matrix, Poly, charpoly, rational_irreducible_factors
from massey_torus.random_instances import random_invertible
from massey_torus.scalars import verify_extension

from conftest import random_matrix

x = Poly.x()


def test_identity_blocks():
    prof = jordan_profile(Matrix.identity(2), x - 1)
    assert prof.block_sizes == (1, 1) and prof.nu == 1 and prof.invariant_dim == 2


def test_absent_eigenvalue_convention():
    prof = jordan_profile(Matrix.identity(2), x - 2)
    assert prof.block_sizes == () and prof.nu == 0


def test_surface_block():
    A = Matrix([[-1, 1], [0, -1]])
    # oracle: (A + I)^2 = 0 while A + I != 0
    N = A + Matrix.identity(2)
    assert (N @ N).is_zero() and not N.is_zero()
    assert jordan_profile(A, x + 1).block_sizes == (2,)


@pytest.mark.parametrize("n", [1, 2, 3, 4])
def test_surface_block_copies(n):
    block = Matrix([[-1, 1], [0, -1]])
    A = Matrix.block_diag([block] * n)
    N = A + Matrix.identity(2 * n)
    assert (N @ N).is_zero() and not N.is_zero()
    prof = jordan_profile(A, x + 1)
    assert prof.nu == 2 and prof.block_sizes == (2,) * n


def test_nu_examples():
    assert nu(Matrix([[1, 1], [0, 1]]), 1) == 2
    assert nu(Matrix([[1, 1], [0, 1]]), 5) == 0
    J3 = Matrix([[0, 1, 0], [0, 0, 1], [0, 0, 0]])
    assert nu(J3, 0) == 3


def test_reducible_factor_rejected():
    with pytest.raises(ValueError):
        jordan_profile(Matrix.identity(2), x ** 2 - 1)


def test_irreducible_quadratic_factor():
    C = companion((x ** 2 + x + 1) ** 2)
    prof = jordan_profile(C, x ** 2 + x + 1)
    assert prof.block_sizes == (2,) and prof.invariant_dim == 4


def test_extension_eigenvalue_matches_factor():
    K = verify_extension([1, 1, 1])
    w = K.generator()
    C = Matrix.block_diag([companion((x ** 2 + x + 1) ** 2), companion(x ** 2 + x + 1)])
    assert nu(C, w) == jordan_profile(C, x ** 2 + x + 1).nu == 2
    assert nu(C, w * w) == 2  # the conjugate root


def test_transpose_and_conjugation_invariance(rng):
    for _ in range(40):
        n = rng.randint(1, 6)
        A = random_invertible(n, rng)
        S = random_invertible(n, rng, structured=False)
        B = S @ A @ S.inverse()
        total = 0
        for p, _, _ in rational_irreducible_factors(charpoly(A)):
            prof = jordan_profile(A, p)
            assert jordan_profile(A.T, p) == prof
            assert jordan_profile(B, p) == prof
            dims = kernel_dims(A, p)
            incs = [b - a for a, b in zip(dims, dims[1:])]
            assert all(a >= b for a, b in zip(incs, incs[1:]))
            total += prof.invariant_dim
        assert total == n


def test_profile_serialization():
    prof = jordan_profile(Matrix([[1, 1], [0, 1]]), x - 1)
    assert prof.to_json() == {"factor": ["-1", "1"], "blocks": [2], "nu": 2, "dim": 2}
