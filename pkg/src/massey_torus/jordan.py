"""Jordan block structure of a square matrix at an eigenvalue or irreducible factor.

Only the block-size profile is computed, never a Jordan basis.  For an
irreducible ``p`` of degree ``d`` the kernels of ``p(A)**j`` are F[x]/(p)
vector spaces, so every kernel dimension is divided by ``d``.
"""

from __future__ import annotations

from dataclasses import dataclass

from .polyalg import Matrix, Poly, is_irreducible, poly_at_matrix
from .scalars import ExtElement


@dataclass(frozen=True)
class JordanProfile:
    eigen_factor: Poly
    block_sizes: tuple
    nu: int
    invariant_dim: int

    def to_json(self):
        return {
            "factor": self.eigen_factor.to_json(),
            "blocks": list(self.block_sizes),
            "nu": self.nu,
            "dim": self.invariant_dim,
        }


def kernel_dims(A: Matrix, p: Poly):
    """``[dim ker p(A)**j for j = 0, 1, ...]`` until the sequence stabilises."""
    n = A.rows
    P = poly_at_matrix(p, A)
    dims = [0]
    power = Matrix.identity(n, A.ring)
    while True:
        power = power @ P
        k = n - power.rank()
        if k == dims[-1]:
            return dims
        dims.append(k)


def _partition_from_counts(counts):
    # counts[j] = number of blocks of size >= j + 1
    blocks = []
    for j, c in enumerate(counts):
        nxt = counts[j + 1] if j + 1 < len(counts) else 0
        blocks.extend([j + 1] * (c - nxt))
    return tuple(sorted(blocks, reverse=True))


def jordan_profile(A: Matrix, p: Poly) -> JordanProfile:
    """Jordan blocks of ``A`` belonging to the irreducible factor ``p``."""
    if not A.is_square():
        raise ValueError("Jordan profile of a non-square matrix")
    if not is_irreducible(p):
        raise ValueError(f"{p} is not irreducible")
    if p.field != A.ring:
        if A.ring.is_rationals:
            A = A.change_ring(p.field)
        elif p.field.is_rationals:
            p = p.base_change(A.ring)
        else:
            raise ValueError("matrix and factor live over different fields")
    d = p.degree
    dims = kernel_dims(A, p)
    incs = [b - a for a, b in zip(dims, dims[1:])]
    if any(i % d for i in incs):
        raise ArithmeticError("kernel dimensions are not multiples of the factor degree")
    counts = [i // d for i in incs]
    if any(b > a for a, b in zip(counts, counts[1:])):
        raise ArithmeticError("kernel-dimension increments must be non-increasing")
    blocks = _partition_from_counts(counts)
    return JordanProfile(p.monic(), blocks, max(blocks, default=0), sum(blocks) * d)


def nu(A: Matrix, lam) -> int:
    """Largest Jordan block of ``A`` at eigenvalue ``lam`` (0 if not an eigenvalue)."""
    field = lam.field if isinstance(lam, ExtElement) else A.ring
    return jordan_profile(A, Poly.linear(lam, field)).nu
