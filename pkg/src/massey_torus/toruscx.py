"""Algebraic mapping torus of a fiber chain complex over L = F[u, 1/u].

Given ``(C_*, d)`` and a chain map ``f``, the free L-complex of the infinite
cyclic cover is ``T_n = C_n + C_{n-1}`` with

    D(a, b) = (d a + (u - f) b, -d b),

so that ``u`` acts on ``H_n`` as ``f_*`` does on ``H_n(C)``.  Matrices act on
column vectors; ``boundaries[k]`` maps ``C_k`` to ``C_{k-1}``.
"""

from __future__ import annotations

from dataclasses import dataclass

from .lmodules import FPModule, normalize, smith_form
from .polyalg import Matrix, PolyRing
from .scalars import QQ, ExtElement


class ChainMapError(ValueError):
    """The supplied monodromy is not a chain map (or the complex is not a complex)."""


def _rank(ranks, k):
    return ranks[k] if 0 <= k < len(ranks) else 0


@dataclass(frozen=True)
class FiberComplex:
    ranks: tuple
    boundaries: tuple
    monodromy: tuple
    field: object = QQ

    @property
    def top_degree(self) -> int:
        return len(self.ranks) - 1

    def boundary(self, k) -> Matrix:
        if 0 <= k < len(self.ranks):
            return self.boundaries[k]
        return Matrix.zeros(_rank(self.ranks, k - 1), _rank(self.ranks, k), self.field)

    def map(self, k) -> Matrix:
        if 0 <= k < len(self.ranks):
            return self.monodromy[k]
        return Matrix.zeros(0, 0, self.field)

    @classmethod
    def from_monodromy(cls, cohomology_maps, field=QQ) -> "FiberComplex":
        """Minimal model: ``C_k = H^k(M)``, zero differentials, ``f_k`` the transpose of ``phi^*_k``."""
        maps = [m.change_ring(field) if m.ring != field else m for m in cohomology_maps]
        ranks = tuple(m.rows for m in maps)
        bds = tuple(Matrix.zeros(_rank(ranks, k - 1), ranks[k], field) for k in range(len(ranks)))
        fiber = cls(ranks, bds, tuple(m.T for m in maps), field)
        validate_fiber(fiber)
        return fiber


def validate_fiber(fiber: FiberComplex) -> None:
    r = fiber.ranks
    if len(fiber.boundaries) != len(r) or len(fiber.monodromy) != len(r):
        raise ChainMapError("need one boundary and one monodromy matrix per degree")
    for k in range(len(r)):
        d, f = fiber.boundaries[k], fiber.monodromy[k]
        if d.shape != (_rank(r, k - 1), r[k]):
            raise ChainMapError(f"boundary in degree {k} has shape {d.shape}, expected {(_rank(r, k - 1), r[k])}")
        if f.shape != (r[k], r[k]):
            raise ChainMapError(f"monodromy in degree {k} must be {r[k]}x{r[k]}")
    for k in range(1, len(r)):
        if not (fiber.boundary(k - 1) @ fiber.boundary(k)).is_zero():
            raise ChainMapError(f"boundary squares to a non-zero map in degree {k}")
        if fiber.boundary(k) @ fiber.map(k) != fiber.map(k - 1) @ fiber.boundary(k):
            raise ChainMapError(f"monodromy is not a chain map in degree {k}")
    for k, (_, phi) in enumerate(fiber_homology(fiber)):
        if phi.rows and phi.det() == 0:
            raise ChainMapError(f"monodromy is not invertible on homology in degree {k}")


def fiber_homology(fiber: FiberComplex):
    """Per degree: ``(representative cycles, matrix of f_* on H_k)``."""
    K = fiber.field
    out = []
    for k in range(len(fiber.ranks)):
        n = fiber.ranks[k]
        Z = fiber.boundary(k).kernel() if n else []
        nxt = fiber.boundary(k + 1)
        _, piv = nxt.rref()
        B = [nxt.col(j) for j in piv]
        basis = list(B)
        reps = []
        for z in Z:
            trial = basis + [z]
            if Matrix.from_columns(trial, n, K).rank() == len(trial):
                basis.append(z)
                reps.append(z)
        W = Matrix.from_columns(basis, n, K) if basis else Matrix.zeros(n, 0, K)
        f = fiber.map(k)
        cols = []
        for h in reps:
            x = W.solve(f.apply(h))
            if x is None:
                raise ChainMapError(f"monodromy does not preserve cycles in degree {k}")
            cols.append(x[len(B):])
        phi = Matrix.from_columns(cols, len(reps), K) if reps else Matrix.zeros(0, 0, K)
        out.append((reps, phi))
    return out


@dataclass(frozen=True)
class TorusComplex:
    fiber: FiberComplex
    ranks: tuple
    differentials: tuple  # differentials[n]: T_n -> T_{n-1}

    @property
    def ring(self) -> PolyRing:
        return PolyRing(self.fiber.field)

    def differential(self, n) -> Matrix:
        if 0 <= n < len(self.ranks):
            return self.differentials[n]
        return Matrix.zeros(_rank(self.ranks, n - 1), _rank(self.ranks, n), self.ring)


def build_torus_complex(fiber: FiberComplex) -> TorusComplex:
    validate_fiber(fiber)
    R = PolyRing(fiber.field)
    u = R.gen()
    top = fiber.top_degree + 1
    c = lambda k: _rank(fiber.ranks, k)
    ranks = tuple(c(n) + c(n - 1) for n in range(top + 1))
    diffs = []
    for n in range(top + 1):
        d_n = fiber.boundary(n).change_ring(R)
        d_n1 = fiber.boundary(n - 1).change_ring(R)
        shift = Matrix.identity(c(n - 1), R) * u - fiber.map(n - 1).change_ring(R)
        D = Matrix.blocks([
            [d_n, shift],
            [Matrix.zeros(c(n - 2), c(n), R), -d_n1],
        ], R)
        diffs.append(D)
    tc = TorusComplex(fiber, ranks, tuple(diffs))
    for n in range(1, top + 1):
        if not (tc.differential(n - 1) @ tc.differential(n)).is_zero():
            raise ChainMapError(f"assembled differential does not square to zero in degree {n}")
    return tc


def l_homology(torus: TorusComplex):
    """``H_n`` of the cover as normalized L-modules, one per degree."""
    R = torus.ring
    out = []
    for n in range(len(torus.ranks)):
        Dn = torus.differential(n)
        Dn1 = torus.differential(n + 1)
        _, S, _, Vi = smith_form(Dn)
        s = sum(1 for k in range(min(S.rows, S.cols)) if S[k, k])
        coords = Vi @ Dn1
        if any(coords[i, j] for i in range(s) for j in range(coords.cols)):
            raise ArithmeticError("image of the next differential leaves the cycles")
        rel = coords.submatrix(range(s, coords.rows), range(coords.cols))
        if rel.rows and not rel.cols:
            rel = Matrix.zeros(rel.rows, 0, R)
        out.append(normalize(FPModule(rel)))
    return out


def specialize(M: Matrix, lam) -> Matrix:
    """Substitute ``u := lam`` in a polynomial matrix."""
    K = lam.field if isinstance(lam, ExtElement) else M.ring.field
    return Matrix._raw([[K(p(lam)) for p in r] for r in M.data], K, M.rows, M.cols)


def twisted_cohomology_dims(torus: TorusComplex, lam):
    """Dimensions of ``H^k(X, rho_lam)`` from the transposed specialised complex."""
    if not lam:
        raise ValueError("lambda must be non-zero (u is a unit of L)")
    n = len(torus.ranks)
    ranks = [specialize(torus.differential(k), lam).T.rank() for k in range(n + 1)]
    # coboundary T^{k-1} -> T^k is the transpose of D_k
    return [torus.ranks[k] - ranks[k + 1] - ranks[k] for k in range(n)]


def eigenspace_dim(A: Matrix, lam) -> int:
    if isinstance(lam, ExtElement) and A.ring != lam.field:
        A = A.change_ring(lam.field)
    return A.rows - (A - Matrix.identity(A.rows, A.ring) * lam).rank() if A.rows else 0


def wang_dims(fiber: FiberComplex, lam):
    """``dim ker(phi^*_k - lam) + dim coker(phi^*_{k-1} - lam)`` for each degree of X."""
    maps = [phi.T for _, phi in fiber_homology(fiber)]
    d = [eigenspace_dim(m, lam) for m in maps]
    get = lambda k: d[k] if 0 <= k < len(d) else 0
    return [get(k) + get(k - 1) for k in range(len(d) + 1)]


def milnor_betti(fiber: FiberComplex):
    """Betti numbers of the mapping torus from fiber homology and ``f_* - 1``."""
    phis = [phi for _, phi in fiber_homology(fiber)]
    one = fiber.field.one
    # f_* - 1 is square, so its cokernel and kernel have equal dimension
    ker = [eigenspace_dim(p, one) for p in phis]
    get = lambda k: ker[k] if 0 <= k < len(ker) else 0
    return [get(i) + get(i - 1) for i in range(len(phis) + 1)]
