"""Univariate polynomials and dense matrices over an exact field.

Matrices are generic over their entry ring, so the same :class:`Matrix`
holds scalar matrices (ring = a :class:`FieldDescriptor`) and polynomial
matrices (ring = :class:`PolyRing`).  Field-only operations (rank, kernel,
inverse, characteristic polynomial) live here too.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

import sympy

from . import _polylist as pl
from .scalars import QQ, ExtElement, FieldDescriptor, format_scalar


class Poly:
    """Immutable polynomial over ``field``; coefficients constant term first."""

    __slots__ = ("coeffs", "field")

    def __init__(self, coeffs=(), field: FieldDescriptor = QQ):
        self.field = field
        self.coeffs = tuple(pl.trim([field(c) for c in coeffs]))

    @classmethod
    def _raw(cls, coeffs, field):
        p = cls.__new__(cls)
        p.field = field
        p.coeffs = tuple(pl.trim(coeffs))
        return p

    @classmethod
    def x(cls, field=QQ) -> Poly:
        return cls._raw([field.zero, field.one], field)

    @classmethod
    def const(cls, c, field=QQ) -> Poly:
        return cls._raw([field(c)], field)

    @classmethod
    def linear(cls, root, field=None) -> Poly:
        """The monic polynomial ``x - root``."""
        if field is None:
            field = root.field if isinstance(root, ExtElement) else QQ
        return cls._raw([-field(root), field.one], field)

    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1

    @property
    def lc(self):
        return self.coeffs[-1] if self.coeffs else self.field.zero

    def is_zero(self) -> bool:
        return not self.coeffs

    def __bool__(self):
        return bool(self.coeffs)

    def _coerce(self, other):
        if isinstance(other, Poly):
            if other.field != self.field:
                if other.field.is_rationals:
                    return other.base_change(self.field)
                if self.field.is_rationals:
                    return NotImplemented
                raise ValueError("polynomials over different fields")
            return other
        try:
            return Poly._raw([self.field(other)], self.field)
        except (TypeError, ValueError):
            return NotImplemented

    def __add__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return Poly._raw(pl.add(list(self.coeffs), list(other.coeffs)), self.field)

    __radd__ = __add__

    def __neg__(self):
        return Poly._raw([-c for c in self.coeffs], self.field)

    def __sub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return Poly._raw(pl.sub(list(self.coeffs), list(other.coeffs)), self.field)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return Poly._raw(pl.mul(list(self.coeffs), list(other.coeffs)), self.field)

    __rmul__ = __mul__

    def __pow__(self, n: int):
        out = Poly._raw([self.field.one], self.field)
        base = self
        while n:
            if n & 1:
                out = out * base
            base = base * base
            n >>= 1
        return out

    def __divmod__(self, other):
        other = self._coerce(other)
        q, r = pl.divmod_(list(self.coeffs), list(other.coeffs))
        return Poly._raw(q, self.field), Poly._raw(r, self.field)

    def __floordiv__(self, other):
        return divmod(self, other)[0]

    def __mod__(self, other):
        return divmod(self, other)[1]

    def __truediv__(self, c):
        """Division by a non-zero scalar."""
        inv = 1 / self.field(c)
        return Poly._raw([a * inv for a in self.coeffs], self.field)

    def divides(self, other: Poly) -> bool:
        return (other % self).is_zero()

    def __eq__(self, other):
        if isinstance(other, Poly):
            return self.coeffs == other.coeffs
        if isinstance(other, (int, Fraction, ExtElement)):
            return self.coeffs == tuple(pl.trim([other]))
        return NotImplemented

    def __hash__(self):
        return hash(self.coeffs)

    def __call__(self, x):
        if not self.coeffs:
            return self.field.zero
        acc = self.coeffs[-1]
        for c in reversed(self.coeffs[:-1]):
            acc = acc * x + c
        return acc

    def monic(self) -> Poly:
        if not self.coeffs:
            return self
        return self / self.coeffs[-1]

    def derivative(self) -> Poly:
        return Poly._raw([k * c for k, c in enumerate(self.coeffs)][1:], self.field)

    def base_change(self, field: FieldDescriptor) -> Poly:
        return Poly._raw([field(c) for c in self.coeffs], field)

    def valuation(self, p: Poly) -> int:
        """Largest ``r`` with ``p**r`` dividing this non-zero polynomial."""
        if self.is_zero():
            raise ValueError("valuation of the zero polynomial")
        r, q = 0, self
        while True:
            quo, rem = divmod(q, p)
            if not rem.is_zero():
                return r
            r, q = r + 1, quo

    def to_json(self):
        return [format_scalar(c) for c in self.coeffs]

    def __repr__(self):
        if not self.coeffs:
            return "0"
        terms = []
        for k in range(len(self.coeffs) - 1, -1, -1):
            c = self.coeffs[k]
            if not c:
                continue
            cs = format_scalar(c)
            cs = f"({cs})" if isinstance(cs, list) or "/" in cs or k and cs.startswith("-") else cs
            if k == 0:
                terms.append(cs)
            else:
                mono = "u" if k == 1 else f"u^{k}"
                terms.append(mono if c == 1 else f"{cs}*{mono}")
        return " + ".join(terms)


def poly_gcd(a: Poly, b: Poly) -> Poly:
    g, _, _ = pl.gcdex(list(a.coeffs), list(b.coeffs), a.field.one)
    return Poly._raw(g, a.field)


def poly_gcdex(a: Poly, b: Poly):
    g, s, t = pl.gcdex(list(a.coeffs), list(b.coeffs), a.field.one)
    f = a.field
    return Poly._raw(g, f), Poly._raw(s, f), Poly._raw(t, f)


@dataclass(frozen=True)
class PolyRing:
    """The ring F[u] as a matrix entry ring."""

    field: FieldDescriptor = QQ

    @property
    def zero(self) -> Poly:
        return Poly._raw([], self.field)

    @property
    def one(self) -> Poly:
        return Poly._raw([self.field.one], self.field)

    def gen(self) -> Poly:
        return Poly.x(self.field)

    def __call__(self, x) -> Poly:
        if isinstance(x, Poly):
            return x if x.field == self.field else x.base_change(self.field)
        if isinstance(x, (list, tuple)):
            return Poly(x, self.field)
        return Poly._raw([self.field(x)], self.field)


def _infer_ring(rows):
    for row in rows:
        for x in row:
            if isinstance(x, Poly):
                return PolyRing(x.field)
            if isinstance(x, ExtElement):
                return x.field
    return QQ


class Matrix:
    """Dense immutable matrix; ``ring`` supplies zero, one and coercion."""

    __slots__ = ("rows", "cols", "data", "ring")

    def __init__(self, rows, ring=None, shape=None):
        rows = [list(r) for r in rows]
        if ring is None:
            ring = _infer_ring(rows)
        if shape is not None:
            nr, nc = shape
        else:
            nr = len(rows)
            nc = len(rows[0]) if rows else 0
        if any(len(r) != nc for r in rows) or len(rows) != nr:
            raise ValueError("ragged matrix rows")
        self.rows, self.cols, self.ring = nr, nc, ring
        self.data = tuple(tuple(ring(x) for x in r) for r in rows)

    @classmethod
    def _raw(cls, data, ring, rows, cols):
        m = cls.__new__(cls)
        m.data, m.ring, m.rows, m.cols = tuple(tuple(r) for r in data), ring, rows, cols
        return m

    @classmethod
    def zeros(cls, rows, cols, ring=QQ) -> Matrix:
        z = ring.zero
        return cls._raw([[z] * cols for _ in range(rows)], ring, rows, cols)

    @classmethod
    def identity(cls, n, ring=QQ) -> Matrix:
        z, o = ring.zero, ring.one
        return cls._raw([[o if i == j else z for j in range(n)] for i in range(n)], ring, n, n)

    @classmethod
    def diag(cls, entries, ring=QQ, shape=None) -> Matrix:
        entries = list(entries)
        nr, nc = shape or (len(entries), len(entries))
        m = [[ring.zero] * nc for _ in range(nr)]
        for k, e in enumerate(entries):
            m[k][k] = ring(e)
        return cls._raw(m, ring, nr, nc)

    @classmethod
    def from_columns(cls, columns, nrows, ring=QQ) -> Matrix:
        columns = list(columns)
        data = [[ring(columns[j][i]) for j in range(len(columns))] for i in range(nrows)]
        return cls._raw(data, ring, nrows, len(columns))

    @classmethod
    def block_diag(cls, blocks, ring=None) -> Matrix:
        blocks = list(blocks)
        if ring is None:
            ring = blocks[0].ring if blocks else QQ
        n = sum(b.rows for b in blocks)
        m = sum(b.cols for b in blocks)
        out = [[ring.zero] * m for _ in range(n)]
        r0 = c0 = 0
        for b in blocks:
            for i in range(b.rows):
                for j in range(b.cols):
                    out[r0 + i][c0 + j] = b.data[i][j]
            r0 += b.rows
            c0 += b.cols
        return cls._raw(out, ring, n, m)

    @classmethod
    def blocks(cls, grid, ring) -> Matrix:
        """Assemble from a 2-D grid of blocks with consistent shapes."""
        out = []
        for brow in grid:
            h = brow[0].rows
            for i in range(h):
                row = []
                for b in brow:
                    row.extend(b.data[i])
                out.append(row)
        nr = len(out)
        nc = sum(b.cols for b in grid[0]) if grid else 0
        return cls._raw(out, ring, nr, nc)

    @property
    def shape(self):
        return (self.rows, self.cols)

    def __getitem__(self, ij):
        i, j = ij
        return self.data[i][j]

    def row(self, i):
        return list(self.data[i])

    def col(self, j):
        return [r[j] for r in self.data]

    def columns(self):
        return [self.col(j) for j in range(self.cols)]

    def tolist(self):
        return [list(r) for r in self.data]

    def map(self, f, ring) -> Matrix:
        return Matrix._raw([[f(x) for x in r] for r in self.data], ring, self.rows, self.cols)

    def change_ring(self, ring) -> Matrix:
        return self.map(ring, ring)

    @property
    def T(self) -> Matrix:
        if not (self.rows and self.cols):
            return Matrix.zeros(self.cols, self.rows, self.ring)
        return Matrix._raw(list(zip(*self.data)), self.ring, self.cols, self.rows)

    def _check_same(self, other):
        if self.shape != other.shape:
            raise ValueError(f"shape mismatch {self.shape} vs {other.shape}")

    def __add__(self, other):
        self._check_same(other)
        return Matrix._raw([[a + b for a, b in zip(r, s)] for r, s in zip(self.data, other.data)],
                           self.ring, self.rows, self.cols)

    def __sub__(self, other):
        self._check_same(other)
        return Matrix._raw([[a - b for a, b in zip(r, s)] for r, s in zip(self.data, other.data)],
                           self.ring, self.rows, self.cols)

    def __neg__(self):
        return Matrix._raw([[-a for a in r] for r in self.data], self.ring, self.rows, self.cols)

    def __mul__(self, c):
        """Scalar multiple."""
        c = self.ring(c)
        return Matrix._raw([[a * c for a in r] for r in self.data], self.ring, self.rows, self.cols)

    __rmul__ = __mul__

    def __matmul__(self, other):
        if self.cols != other.rows:
            raise ValueError(f"cannot multiply {self.shape} by {other.shape}")
        z = self.ring.zero
        cols = list(zip(*other.data)) if other.rows else [()] * other.cols
        out = []
        for r in self.data:
            row = []
            for c in cols:
                acc = z
                for a, b in zip(r, c):
                    if a and b:
                        acc = acc + a * b
                row.append(acc)
            out.append(row)
        return Matrix._raw(out, self.ring, self.rows, other.cols)

    def apply(self, v):
        """Matrix-vector product for a plain list ``v``."""
        z = self.ring.zero
        out = []
        for r in self.data:
            acc = z
            for a, b in zip(r, v):
                if a and b:
                    acc = acc + a * b
            out.append(acc)
        return out

    def __pow__(self, n: int):
        out, base = Matrix.identity(self.rows, self.ring), self
        while n:
            if n & 1:
                out = out @ base
            base = base @ base
            n >>= 1
        return out

    def __eq__(self, other):
        if not isinstance(other, Matrix):
            return NotImplemented
        return self.shape == other.shape and self.data == other.data

    def __hash__(self):
        return hash(self.data)

    def is_zero(self) -> bool:
        return not any(x for r in self.data for x in r)

    def is_square(self) -> bool:
        return self.rows == self.cols

    def submatrix(self, rows, cols) -> Matrix:
        rows, cols = list(rows), list(cols)
        return Matrix._raw([[self.data[i][j] for j in cols] for i in rows], self.ring, len(rows), len(cols))

    def to_json(self):
        return [[x.to_json() if isinstance(x, Poly) else format_scalar(x) for x in r] for r in self.data]

    def __repr__(self):
        return f"Matrix({self.tolist()!r})"

    # field-only linear algebra

    def rref(self):
        """Reduced row echelon form and pivot columns.  First non-zero pivot."""
        m = [list(r) for r in self.data]
        pivots = []
        pr = 0
        for c in range(self.cols):
            piv = next((i for i in range(pr, self.rows) if m[i][c]), None)
            if piv is None:
                continue
            m[pr], m[piv] = m[piv], m[pr]
            inv = 1 / m[pr][c]
            prow = [x * inv if x else x for x in m[pr]]
            m[pr] = prow
            nz = [j for j in range(c, self.cols) if prow[j]]
            for i in range(self.rows):
                if i != pr and m[i][c]:
                    f = m[i][c]
                    row = m[i]
                    for j in nz:
                        row[j] = row[j] - f * prow[j]
            pivots.append(c)
            pr += 1
            if pr == self.rows:
                break
        return Matrix._raw(m, self.ring, self.rows, self.cols), pivots

    def rank(self) -> int:
        return len(self.rref()[1])

    def kernel(self):
        """Basis of the right null space as a list of column vectors."""
        r, pivots = self.rref()
        free = [c for c in range(self.cols) if c not in set(pivots)]
        basis = []
        for f in free:
            v = [self.ring.zero] * self.cols
            v[f] = self.ring.one
            for k, pc in enumerate(pivots):
                v[pc] = -r.data[k][f]
            basis.append(v)
        return basis

    def inverse(self) -> Matrix:
        if not self.is_square():
            raise ValueError("inverse of a non-square matrix")
        n = self.rows
        aug = Matrix.blocks([[self, Matrix.identity(n, self.ring)]], self.ring)
        r, pivots = aug.rref()
        if pivots[:n] != list(range(n)):
            raise ZeroDivisionError("matrix is singular")
        return r.submatrix(range(n), range(n, 2 * n))

    def solve(self, b):
        """One solution ``x`` of ``self @ x = b`` or ``None``."""
        aug = Matrix.blocks([[self, Matrix.from_columns([b], self.rows, self.ring)]], self.ring)
        r, pivots = aug.rref()
        if pivots and pivots[-1] == self.cols:
            return None
        x = [self.ring.zero] * self.cols
        for k, pc in enumerate(pivots):
            x[pc] = r.data[k][self.cols]
        return x

    def det(self):
        """Determinant; fraction-free (Bareiss) over polynomial rings."""
        if not self.is_square():
            raise ValueError("determinant of a non-square matrix")
        m = [list(r) for r in self.data]
        n = self.rows
        if isinstance(self.ring, PolyRing):
            sign, prev = 1, self.ring.one
            for c in range(n):
                piv = next((i for i in range(c, n) if m[i][c]), None)
                if piv is None:
                    return self.ring.zero
                if piv != c:
                    m[c], m[piv] = m[piv], m[c]
                    sign = -sign
                for i in range(c + 1, n):
                    m[i] = [None] * (c + 1) + [(m[c][c] * m[i][j] - m[i][c] * m[c][j]) // prev
                                               for j in range(c + 1, n)]
                prev = m[c][c]
            return prev * sign if n else self.ring.one
        d = self.ring.one
        for c in range(n):
            piv = next((i for i in range(c, n) if m[i][c]), None)
            if piv is None:
                return self.ring.zero
            if piv != c:
                m[c], m[piv] = m[piv], m[c]
                d = -d
            d = d * m[c][c]
            inv = 1 / m[c][c]
            for i in range(c + 1, n):
                if m[i][c]:
                    f = m[i][c] * inv
                    m[i] = [a - f * b for a, b in zip(m[i], m[c])]
        return d


def as_matrix(rows, field: FieldDescriptor = QQ) -> Matrix:
    """Parse nested lists of scalar strings/numbers into a matrix over ``field``."""
    rows = list(rows)
    return Matrix(rows, field, shape=(len(rows), len(rows[0]) if rows else 0))


def rank_kernel(A: Matrix):
    return A.rank(), A.kernel()


def _hessenberg(A: Matrix):
    h = [list(r) for r in A.data]
    n = A.rows
    for m in range(1, n - 1):
        i = next((i for i in range(m, n) if h[i][m - 1]), None)
        if i is None:
            continue
        t = h[i][m - 1]
        if i != m:
            h[i], h[m] = h[m], h[i]
            for r in h:
                r[i], r[m] = r[m], r[i]
        for j in range(m + 1, n):
            u = h[j][m - 1] / t
            if u:
                h[j] = [a - u * b for a, b in zip(h[j], h[m])]
                for r in h:
                    r[m] = r[m] + u * r[j]
    return h


def charpoly(A: Matrix) -> Poly:
    """Characteristic polynomial ``det(x I - A)`` via Hessenberg reduction."""
    if not A.is_square():
        raise ValueError("characteristic polynomial of a non-square matrix")
    field = A.ring
    h = _hessenberg(A)
    x = Poly.x(field)
    p = [Poly.const(1, field)]
    for m in range(A.rows):
        pm = (x - h[m][m]) * p[m]
        t = field.one
        for i in range(1, m + 1):
            t = t * h[m - i + 1][m - i]
            pm = pm - p[m - i] * (t * h[m - i][m])
        p.append(pm)
    return p[-1]


def poly_at_matrix(p: Poly, A: Matrix) -> Matrix:
    n = A.rows
    out = Matrix.zeros(n, n, A.ring)
    eye = Matrix.identity(n, A.ring)
    for c in reversed(p.coeffs):
        out = out @ A + eye * c
    return out


def squarefree_factors(p: Poly):
    """Yun's square-free decomposition: monic ``(factor, multiplicity)`` pairs."""
    if p.is_zero():
        raise ValueError("square-free factorization of zero")
    p = p.monic()
    out = []
    if p.degree == 0:
        return out
    dp = p.derivative()
    a = poly_gcd(p, dp)
    b = p // a
    c = dp // a - b.derivative()
    k = 1
    while b.degree > 0:
        d = poly_gcd(b, c)
        b2 = b // d
        c = c // d - b2.derivative()
        if d.degree > 0:
            out.append((d.monic(), k))
        b = b2
        k += 1
    return out


def _to_sympy(p: Poly):
    x = sympy.Symbol("x")
    return sympy.Poly([sympy.Rational(c.numerator, c.denominator) for c in reversed(p.coeffs)], x, domain="QQ")


def rational_irreducible_factors(p: Poly):
    """Monic irreducible factors over Q as ``(factor, multiplicity, proven)``."""
    if p.is_zero():
        raise ValueError("factorization of zero")
    if not p.field.is_rationals:
        raise ValueError("rational factorization needs a polynomial over Q")
    if p.degree == 0:
        return []
    _, facs = _to_sympy(p).factor_list()
    out = []
    for f, k in facs:
        cs = [Fraction(int(c.p), int(c.q)) for c in reversed(f.monic().all_coeffs())]
        out.append((Poly(cs, QQ), int(k), True))
    out.sort(key=lambda t: (t[0].degree, [(c.numerator, c.denominator) for c in t[0].coeffs]))
    return out


def is_irreducible(p: Poly) -> bool:
    """Irreducibility over the coefficient field.

    Over Q this is decided exactly; over a proper extension only linear
    polynomials are accepted.
    """
    if p.degree < 1:
        return False
    if p.degree == 1:
        return True
    if p.field.is_rationals:
        f = rational_irreducible_factors(p)
        return len(f) == 1 and f[0][1] == 1
    raise ValueError("irreducibility over an extension field is only decided for linear factors")
