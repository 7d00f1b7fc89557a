"""Finitely presented modules over L = F[u, 1/u] through Smith normal form over F[u].

A module is the cokernel of its presentation matrix ``P``: generators index
the rows and relations are the columns, so the module is ``F[u]^rows / P F[u]^cols``.
Inverting ``u`` only removes u-primary torsion, which is why all the heavy
lifting runs over the Euclidean ring F[u].
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Optional

from .polyalg import Matrix, Poly, PolyRing
from .scalars import QQ, FieldDescriptor


def _min_degree_entry(M, rows, cols):
    best = None
    for i in rows:
        for j in cols:
            e = M[i][j]
            if e and (best is None or e.degree < M[best[0]][best[1]].degree):
                best = (i, j)
                if e.degree == 0:
                    return best
    return best


def smith_form(M: Matrix):
    """Return ``(U, D, V, V_inv)`` with ``U @ M @ V == D`` in Smith normal form.

    ``U`` and ``V`` are invertible over F[u]; the diagonal of ``D`` is monic
    with each entry dividing the next, zeros last.
    """
    ring = M.ring
    m, n = M.rows, M.cols
    A = [list(r) for r in M.data]
    U = [list(r) for r in Matrix.identity(m, ring).data]
    V = [list(r) for r in Matrix.identity(n, ring).data]
    Vi = [list(r) for r in Matrix.identity(n, ring).data]

    def swap_rows(i, j):
        A[i], A[j] = A[j], A[i]
        U[i], U[j] = U[j], U[i]

    def swap_cols(i, j):
        for r in A:
            r[i], r[j] = r[j], r[i]
        for r in V:
            r[i], r[j] = r[j], r[i]
        Vi[i], Vi[j] = Vi[j], Vi[i]

    def add_row(dst, src, c):
        # row_dst += c * row_src
        A[dst] = [a + c * b for a, b in zip(A[dst], A[src])]
        U[dst] = [a + c * b for a, b in zip(U[dst], U[src])]

    def add_col(dst, src, c):
        # col_dst += c * col_src
        for r in A:
            r[dst] = r[dst] + c * r[src]
        for r in V:
            r[dst] = r[dst] + c * r[src]
        Vi[src] = [a - c * b for a, b in zip(Vi[src], Vi[dst])]

    for t in range(min(m, n)):
        piv = _min_degree_entry(A, range(t, m), range(t, n))
        if piv is None:
            break
        swap_rows(t, piv[0])
        swap_cols(t, piv[1])
        while True:
            changed = False
            for i in range(t + 1, m):
                if A[i][t]:
                    q, r = divmod(A[i][t], A[t][t])
                    add_row(i, t, -q)
                    if r:
                        changed = True
            for j in range(t + 1, n):
                if A[t][j]:
                    q, r = divmod(A[t][j], A[t][t])
                    add_col(j, t, -q)
                    if r:
                        changed = True
            if changed:
                cand = [(i, t) for i in range(t + 1, m) if A[i][t]] + [(t, j) for j in range(t + 1, n) if A[t][j]]
                best = min(cand, key=lambda ij: A[ij[0]][ij[1]].degree)
                if best[1] == t:
                    swap_rows(t, best[0])
                else:
                    swap_cols(t, best[1])
                continue
            bad = next(((i, j) for i in range(t + 1, m) for j in range(t + 1, n)
                        if A[i][j] and (A[i][j] % A[t][t])), None)
            if bad is None:
                break
            add_row(t, bad[0], ring.one)
        lc = A[t][t].lc
        if lc != 1:
            inv = 1 / lc
            A[t] = [a * inv for a in A[t]]
            U[t] = [a * inv for a in U[t]]
    mk = Matrix._raw
    return mk(U, ring, m, m), mk(A, ring, m, n), mk(V, ring, n, n), mk(Vi, ring, n, n)


def snf(M: Matrix):
    """Smith normal form ``(U, D, V)`` with ``U @ M @ V == D``."""
    U, D, V, _ = smith_form(M)
    return U, D, V


def strip_u(f: Poly) -> Poly:
    """Divide out every power of ``u``, which is a unit of L."""
    c = f.coeffs
    k = 0
    while k < len(c) and not c[k]:
        k += 1
    return Poly._raw(list(c[k:]), f.field)


def companion(f: Poly) -> Matrix:
    """Matrix of multiplication by ``u`` on F[u]/(f) in the basis 1, u, ..., u^(d-1)."""
    f = f.monic()
    d = f.degree
    K = f.field
    C = [[K.zero] * d for _ in range(d)]
    for i in range(d - 1):
        C[i + 1][i] = K.one
    for i in range(d):
        C[i][d - 1] = -f.coeffs[i]
    return Matrix._raw(C, K, d, d)


@dataclass(frozen=True)
class FPModule:
    presentation: Matrix
    free_rank: Optional[int] = None
    invariant_factors: Optional[tuple] = None

    @property
    def field(self) -> FieldDescriptor:
        return self.presentation.ring.field

    @property
    def is_normalized(self) -> bool:
        return self.invariant_factors is not None

    @classmethod
    def from_factors(cls, factors, free_rank=0, field=QQ) -> "FPModule":
        """Direct sum of ``L/(f)`` over ``factors`` plus ``free_rank`` copies of L."""
        ring = PolyRing(field)
        factors = [ring(f) for f in factors]
        n = len(factors) + free_rank
        P = Matrix.diag(factors, ring, shape=(n, len(factors)))
        return cls(P)

    @classmethod
    def from_action(cls, A: Matrix) -> "FPModule":
        """F^n with ``u`` acting through the invertible matrix ``A``."""
        ring = PolyRing(A.ring)
        n = A.rows
        u = ring.gen()
        P = Matrix.identity(n, ring) * u - A.change_ring(ring)
        return cls(P)

    def base_change(self, field: FieldDescriptor) -> "FPModule":
        ring = PolyRing(field)
        inv = None if self.invariant_factors is None else tuple(ring(f) for f in self.invariant_factors)
        return FPModule(self.presentation.change_ring(ring), self.free_rank, inv)

    @property
    def torsion_dim(self) -> int:
        return sum(f.degree for f in normalize(self).invariant_factors)

    def to_json(self):
        out = {"presentation": self.presentation.to_json()}
        if self.is_normalized:
            out["free_rank"] = self.free_rank
            out["invariant_factors"] = [f.to_json() for f in self.invariant_factors]
        return out


def normalize(module: FPModule) -> FPModule:
    """Free rank and u-stripped invariant factors of ``module`` over L."""
    if module.is_normalized:
        return module
    P = module.presentation
    if P.cols == 0:
        return FPModule(P, P.rows, ())
    _, D, _, _ = smith_form(P)
    diag = [D[k, k] for k in range(min(D.rows, D.cols))]
    nonzero = [d for d in diag if not d.is_zero()]
    free_rank = P.rows - len(nonzero)
    factors = []
    for d in nonzero:
        s = strip_u(d).monic()
        if s.degree > 0:
            factors.append(s)
    return FPModule(P, free_rank, tuple(factors))


def primary_exponents(module: FPModule, p: Poly) -> tuple:
    """Exponents ``r`` of the cyclic summands ``L/p^r`` (sorted, descending)."""
    module = normalize(module)
    if p.field != module.field:
        p = p.base_change(module.field)
    exps = [f.valuation(p) for f in module.invariant_factors]
    return tuple(sorted((e for e in exps if e > 0), reverse=True))


@dataclass(frozen=True)
class TorsionAction:
    dim: int
    action: Matrix


def torsion_action(module: FPModule) -> TorsionAction:
    """Multiplication by ``u`` on the torsion submodule, as companion blocks."""
    module = normalize(module)
    blocks = [companion(f) for f in module.invariant_factors]
    K = module.field
    if not blocks:
        return TorsionAction(0, Matrix.zeros(0, 0, K))
    A = Matrix.block_diag(blocks, K)
    return TorsionAction(A.rows, A)
