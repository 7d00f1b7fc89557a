"""Random inputs for the property suites and ``massey-torus selfcheck``.

All generators take a :class:`random.Random` so runs are reproducible.
Monodromy entries stay within numerator/denominator bound 5.
"""

from __future__ import annotations

import random
from fractions import Fraction

from .lmodules import FPModule, companion
from .polyalg import Matrix, Poly, PolyRing
from .scalars import QQ

BOUND = 5

_x = Poly.x(QQ)
# irreducible factors whose companion matrices have small entries
_SMALL_FACTORS = [_x - 1, _x + 1, _x - 2, _x + 2, _x ** 2 + _x + 1, _x ** 2 + 1, _x ** 2 - _x + 1, _x ** 2 - 2]


def random_rational(rng: random.Random, bound=BOUND) -> Fraction:
    return Fraction(rng.randint(-bound, bound), rng.randint(1, bound))


def within_bound(A: Matrix, bound=BOUND) -> bool:
    return all(abs(x.numerator) <= bound and x.denominator <= bound for r in A.data for x in r)


def _perm_conjugate(A: Matrix, rng) -> Matrix:
    n = A.rows
    perm = list(range(n))
    rng.shuffle(perm)
    return A.submatrix(perm, perm)


def _elementary_conjugate(A: Matrix, rng, tries=4) -> Matrix:
    n = A.rows
    if n < 2:
        return A
    for _ in range(tries):
        i, j = rng.sample(range(n), 2)
        c = rng.choice([-1, 1])
        E = [[Fraction(int(a == b)) for b in range(n)] for a in range(n)]
        E[i][j] = Fraction(c)
        Einv = [row[:] for row in E]
        Einv[i][j] = Fraction(-c)
        B = Matrix(E) @ A @ Matrix(Einv)
        if within_bound(B):
            A = B
    return A


def _structured(n: int, rng) -> Matrix:
    """Block-diagonal sum of Jordan-like and companion blocks, lightly conjugated."""
    blocks = []
    left = n
    while left:
        kind = rng.random()
        if kind < 0.6:
            size = rng.randint(1, min(left, 4))
            ev = rng.choice([1, -1, 2, -2, Fraction(1, 2), 3])
            rows = [[Fraction(0)] * size for _ in range(size)]
            for a in range(size):
                rows[a][a] = Fraction(ev)
                if a + 1 < size:
                    rows[a][a + 1] = Fraction(rng.choice([1, 1, -1, 2]))
            blocks.append(Matrix(rows))
            left -= size
        else:
            f = rng.choice([f for f in _SMALL_FACTORS if f.degree <= left])
            e = rng.randint(1, max(1, min(3, left // f.degree)))
            C = companion(f ** e)
            if within_bound(C):
                blocks.append(C)
                left -= C.rows
    A = Matrix.block_diag(blocks)
    A = _perm_conjugate(A, rng)
    return _elementary_conjugate(A, rng)


def random_invertible(n: int, rng: random.Random, structured=None) -> Matrix:
    if n == 0:
        return Matrix.zeros(0, 0, QQ)
    if structured is None:
        structured = rng.random() < 0.7
    while True:
        if structured:
            A = _structured(n, rng)
        else:
            A = Matrix([[random_rational(rng) for _ in range(n)] for _ in range(n)])
        if A.det() != 0:
            return A


def random_monodromy(rng: random.Random, max_dim=6, max_degree=3):
    """Cohomology maps ``phi^*_k`` for degrees ``0..top`` (dims at most ``max_dim``)."""
    top = rng.randint(0, max_degree)
    return [random_invertible(rng.randint(1 if k == 0 else 0, max_dim), rng) for k in range(top + 1)]


def random_unimodular(n: int, rng: random.Random, steps=3, ring=PolyRing(QQ)) -> Matrix:
    """Product of a few elementary matrices over F[u] with low-degree multipliers."""
    M = Matrix.identity(n, ring)
    if n < 2:
        return M * ring(rng.choice([1, -1, 2]))
    u = ring.gen()
    for _ in range(steps):
        i, j = rng.sample(range(n), 2)
        c = ring(rng.randint(-2, 2)) + u * rng.randint(-1, 1)
        E = [list(r) for r in Matrix.identity(n, ring).data]
        E[i][j] = c
        M = Matrix(E, ring) @ M
    return M


def scramble(module: FPModule, rng: random.Random) -> FPModule:
    P = module.presentation
    S = random_unimodular(P.rows, rng)
    T = random_unimodular(P.cols, rng) if P.cols else Matrix.identity(0, P.ring)
    return FPModule(S @ P @ T)


def random_factor_module(rng: random.Random, max_summands=3, max_free=2) -> FPModule:
    """Sum of cyclic modules with small prime-power factors, some u-torsion, and free copies."""
    factors = []
    for _ in range(rng.randint(0, max_summands)):
        f = Poly.const(1)
        for _ in range(rng.randint(1, 2)):
            p = rng.choice(_SMALL_FACTORS)
            f = f * p ** rng.randint(1, 3 if p.degree == 1 else 2)
        if rng.random() < 0.2:
            f = f * _x ** rng.randint(1, 2)
        factors.append(f)
    free = rng.randint(0, max_free)
    return FPModule.from_factors(factors, free)


def random_l_presentation(rng: random.Random, max_degree=2):
    """Graded list of scrambled finitely presented L-modules (slot k = index)."""
    return [scramble(random_factor_module(rng), rng) for _ in range(rng.randint(1, max_degree + 1))]


def nilpotent_with_index(m: int, extra: int, rng: random.Random) -> Matrix:
    """Nilpotent matrix whose largest Jordan block is exactly ``m``."""
    parts = [m]
    left = extra
    while left:
        s = rng.randint(1, min(m, left))
        parts.append(s)
        left -= s
    blocks = []
    for s in parts:
        rows = [[Fraction(int(b == a + 1)) for b in range(s)] for a in range(s)]
        blocks.append(Matrix(rows, QQ, shape=(s, s)))
    return Matrix.block_diag(blocks, QQ)


def lemma_couple_slot(m: int, lam, rng: random.Random) -> FPModule:
    """Module on which ``u - lam`` splits as (nilpotent of index m) + (injective)."""
    delta = nilpotent_with_index(m, rng.randint(0, 3), rng)
    n_b = rng.randint(0, 3)
    while True:
        tau = random_invertible(n_b, rng, structured=False)
        shifted = tau + Matrix.identity(n_b) * lam
        if n_b == 0 or shifted.det() != 0:
            break
    A = Matrix.block_diag([delta + Matrix.identity(delta.rows) * lam, shifted], QQ)
    tors = FPModule.from_action(A)
    free = rng.randint(0, 2)
    P = tors.presentation
    ring = P.ring
    if free:
        P = Matrix.blocks([[P], [Matrix.zeros(free, P.cols, ring)]], ring)
    return scramble(FPModule(P), rng)
