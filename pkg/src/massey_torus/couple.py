"""The exact couple of multiplication by ``p(u)`` on a graded L-module and its pages.

Grading.  ``modules[k]`` is the L-module in D-slot ``k``; for a mapping torus
this is ``H_k(M)`` with ``u`` acting as the monodromy (equivalently the twisted
group ``H^{k+1}(X, beta)``).  The couple is

    i = p(u): D_k -> D_k,   j: D_k -> E^{k+1},   l: E^k -> D_k,

so ``E^k`` is an extension of ``ker(i | D_k)`` by ``coker(i | D_{k-1})``
and ``d_r`` maps ``E^k`` to ``E^{k+1}`` through slot ``k``.  With this
grading ``E^k`` is ``H^k(X, rho_lambda)`` and the length of the longest
non-zero product ``<xi, ..., xi, a>`` with ``a`` in degree ``k`` is read from
the differentials leaving ``E^k`` (see :data:`DEGREE_OFFSET`).

Two independent routes produce page tables: :func:`pages` iterates derived
couples on explicit elements, and :func:`closed_form_pages` counts primary
exponents.  They must agree.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Optional

from .lmodules import FPModule, companion, normalize, primary_exponents
from .polyalg import Matrix, Poly, poly_at_matrix

#: Offset between the E-degree ``k`` of ``a`` and the D-slot whose
#: differentials define the Massey length: ``mu_k`` is read from slot
#: ``k + DEGREE_OFFSET - 1``.  Offset 1 means "differentials leaving E^k";
#: offset 0 means "differentials entering E^k".  Only offset 1 satisfies
#: J_k = mu_k on the fixtures and random instances (see tests).
DEGREE_OFFSET = 1


class UnstableSigma(Exception):
    """Raised when a degeneration sheet is requested but was not certified."""


class _Slot:
    """Explicit model of one D-slot: cyclic summands F[u]/(q) plus free copies of F[u].

    Elements are lists of polynomials, one per summand (torsion first).
    """

    def __init__(self, module: FPModule, p: Poly):
        module = normalize(module)
        self.p = p
        self.field = p.field
        self.moduli = list(module.invariant_factors)
        self.free = module.free_rank
        self.mult = [poly_at_matrix(p, companion(q)) for q in self.moduli]
        # cokernel of i on each summand: basis = image basis + complement
        self.coker = []
        for P, q in zip(self.mult, self.moduli):
            _, piv = P.rref()
            img = [P.col(j) for j in piv]
            basis = list(img)
            comp = []
            for e in range(q.degree):
                v = [self.field.one if t == e else self.field.zero for t in range(q.degree)]
                trial = basis + [v]
                if Matrix.from_columns(trial, q.degree, self.field).rank() == len(trial):
                    basis.append(v)
                    comp.append(v)
            W = Matrix.from_columns(basis, q.degree, self.field) if basis else Matrix.zeros(0, 0, self.field)
            self.coker.append((W, len(img), len(comp)))
        self.kernel = [P.kernel() for P in self.mult]

    @property
    def n_summands(self):
        return len(self.moduli) + self.free

    def coker_dim(self) -> int:
        return sum(c[2] for c in self.coker) + self.free * self.p.degree

    def kernel_basis(self):
        """Kernel of ``i`` as elements (lists of coefficient vectors / polys)."""
        out = []
        for a, K in enumerate(self.kernel):
            for v in K:
                elt = [None] * self.n_summands
                elt[a] = v
                out.append(elt)
        return out

    def zero_component(self, a):
        if a < len(self.moduli):
            return [self.field.zero] * self.moduli[a].degree
        return Poly((), self.field)

    def fill(self, elt):
        return [self.zero_component(a) if c is None else c for a, c in enumerate(elt)]

    def coker_coords(self, elt):
        """Coordinates of the class of ``elt`` in ``D / iD``."""
        elt = self.fill(elt)
        out = []
        for a, (W, n_img, n_comp) in enumerate(self.coker):
            if n_comp == 0:
                continue
            x = W.solve(elt[a])
            out.extend(x[n_img:])
        for a in range(len(self.moduli), self.n_summands):
            r = elt[a] % self.p
            c = list(r.coeffs) + [self.field.zero] * (self.p.degree - len(r.coeffs))
            out.extend(c)
        return out

    def divide(self, elt, s):
        """Some ``y`` with ``p**s * y == elt``; ``None`` if ``elt`` is not in ``i^s D``."""
        elt = self.fill(elt)
        out = []
        for a in range(self.n_summands):
            if a < len(self.moduli):
                y = (self.mult[a] ** s).solve(elt[a]) if s else list(elt[a])
                if y is None:
                    return None
                out.append(y)
            else:
                q, r = divmod(elt[a], self.p ** s)
                if r:
                    return None
                out.append(q)
        return out


@dataclass
class GradedCouple:
    """Exact couple with ``D`` the given graded module and ``i`` multiplication by ``p``."""

    modules: dict
    p: Poly
    slots: dict = field(repr=False, default_factory=dict)

    @property
    def slot_degrees(self):
        return sorted(self.modules)

    @property
    def e_degrees(self):
        ks = self.slot_degrees
        if not ks:
            return []
        return list(range(ks[0], ks[-1] + 2))

    def slot(self, k) -> Optional[_Slot]:
        return self.slots.get(k)

    def e_parts(self, k):
        """``(coker part dim, kernel basis)`` of ``E^k`` over F."""
        lo = self.slot(k - 1)
        hi = self.slot(k)
        c = lo.coker_dim() if lo else 0
        kb = hi.kernel_basis() if hi else []
        return c, kb

    def e_dim(self, k) -> int:
        c, kb = self.e_parts(k)
        return c + len(kb)

    def l_map(self, k, vec):
        """``l: E^k -> D_k`` on a coordinate vector."""
        c, kb = self.e_parts(k)
        hi = self.slot(k)
        out = [None] * (hi.n_summands if hi else 0)
        out = hi.fill(out) if hi else out
        for t, b in zip(vec[c:], kb):
            if not t:
                continue
            b = hi.fill(b)
            out = [_axpy(o, t, x) for o, x in zip(out, b)]
        return out

    def j_map(self, k, elt):
        """``j: D_k -> E^{k+1}`` as coordinates (kernel part zero)."""
        coords = self.slot(k).coker_coords(elt)
        _, kb = self.e_parts(k + 1)
        return coords + [self.p.field.zero] * len(kb)


def _axpy(acc, t, x):
    if isinstance(acc, Poly):
        return acc + x * t
    return [a + t * b for a, b in zip(acc, x)]


def build_couple(homology, p_lambda: Poly) -> GradedCouple:
    """Couple of ``i = p_lambda(u)`` on the graded module ``homology``.

    ``homology`` is a list (slot k = index) or a mapping slot -> FPModule.
    """
    if p_lambda.degree < 1:
        raise ValueError("eigen-factor must have positive degree")
    if not p_lambda.coeffs[0]:
        raise ValueError("lambda = 0 is not allowed: u is a unit of L")
    mods = dict(enumerate(homology)) if isinstance(homology, (list, tuple)) else dict(homology)
    p = p_lambda.monic()
    norm = {}
    for k, m in mods.items():
        m = normalize(m)
        if m.field != p.field:
            if m.field.is_rationals:
                m = m.base_change(p.field)
            elif p.field.is_rationals:
                p = p.base_change(m.field)
            else:
                raise ValueError("module and eigen-factor live over different fields")
        norm[k] = m
    couple = GradedCouple(norm, p)
    couple.slots = {k: _Slot(m, p) for k, m in norm.items()}
    return couple


def check_exactness(couple: GradedCouple) -> bool:
    """Verify ``j i = 0``, ``l j = 0``, ``i l = 0`` and the rank counts on every node."""
    K = couple.p.field
    for k in couple.slot_degrees:
        s = couple.slot(k)
        # j(i x) = 0 on a spanning set of each summand
        for a in range(s.n_summands):
            gens = [s.zero_component(a)]
            if a < len(s.moduli):
                gens = [[K.one if t == e else K.zero for t in range(s.moduli[a].degree)]
                        for e in range(s.moduli[a].degree)]
                images = [s.mult[a].apply(g) for g in gens]
            else:
                images = [s.p * Poly.x(K) ** e for e in range(s.p.degree + 1)]
            for img in images:
                elt = [None] * s.n_summands
                elt[a] = img
                if any(s.coker_coords(elt)):
                    return False
        # i(l e) = 0
        for b in s.kernel_basis():
            b = s.fill(b)
            for a, comp in enumerate(b[:len(s.moduli)]):
                if any(s.mult[a].apply(comp)):
                    return False
    for k in couple.e_degrees:
        c, kb = couple.e_parts(k)
        # l vanishes exactly on the image of j (the coker block), is injective on the rest
        lo = couple.slot(k - 1)
        if lo is not None and lo.coker_dim() != c:
            return False
        vecs = [[K.one if t == e else K.zero for t in range(c + len(kb))] for e in range(c)]
        for v in vecs:
            if couple.slot(k) and any(_nonzero(x) for x in couple.l_map(k, v)):
                return False
    return True


def _nonzero(x):
    return bool(x) if isinstance(x, Poly) else any(x)


@dataclass
class PageTable:
    """Page dimensions over F(lambda) and degeneration sheets.

    ``dims[r-1][k]`` is ``dim E_r^k``.  ``active[r-1][k]`` records whether
    ``d_r`` through slot ``k`` (leaving ``E^k``) is non-zero; for the closed
    form it is derived from exponent counts.  ``sigma[k]`` is ``None`` when the
    page budget is too small to certify it.
    """

    degrees: list
    dims: list
    active: list
    sigma: dict
    certified: bool

    def sigma_with_offset(self, offset: int) -> dict:
        """Degeneration sheets when ``mu_k`` is read from slot ``k + offset - 1``."""
        out = {}
        for k in self.degrees:
            slot = k + offset - 1
            last = 0
            for r, row in enumerate(self.active, start=1):
                if row.get(slot):
                    last = r
            out[k] = last + 1
        return out

    def stable_from(self, k):
        """First page from which ``dim E_r^k`` stays constant; ``None`` if not certified.

        Incoming differentials count here, so this is ``max(sigma[k], sigma[k-1])``
        rather than ``sigma[k]``.
        """
        if self.sigma[k] is None or self.sigma.get(k - 1, 1) is None:
            return None
        col = [row[k] for row in self.dims]
        m = len(col)
        while m > 1 and col[m - 2] == col[-1]:
            m -= 1
        return m

    def to_json(self):
        stable = [self.stable_from(k) for k in self.degrees]
        return {
            "degrees": list(self.degrees),
            "pages": [[row[k] for k in self.degrees] for row in self.dims],
            "sigma": [self.sigma[k] if self.sigma[k] is not None else "unstable" for k in self.degrees],
            "stable_from": [s if s is not None else "unstable" for s in stable],
            "certified": self.certified,
        }


def _lemma_bounds(couple: GradedCouple):
    return {k: 1 + max(primary_exponents(m, couple.p), default=0) for k, m in couple.modules.items()}


def _span_rank(vectors, n, K):
    if not vectors:
        return 0
    return Matrix.from_columns(vectors, n, K).rank()


def _complement(basis, within, n, K):
    """Vectors of ``within`` extending ``basis`` to a basis of ``span(basis + within)``."""
    cur = list(basis)
    out = []
    r = _span_rank(cur, n, K)
    for v in within:
        r2 = _span_rank(cur + [v], n, K)
        if r2 > r:
            cur.append(v)
            out.append(v)
            r = r2
    return out


def derive(couple: GradedCouple, state=None):
    """One derived-couple step on explicit representatives.

    ``state`` maps each E-degree to ``(Z, B, r)``: cycles and boundaries in
    ``E_1`` coordinates defining ``E_r = Z / B``.  Returns the next state and
    a dict slot -> whether ``d_r`` through that slot is non-zero.
    """
    K = couple.p.field
    if state is None:
        state = {}
        for k in couple.e_degrees:
            n = couple.e_dim(k)
            Z = [[K.one if t == e else K.zero for t in range(n)] for e in range(n)]
            state[k] = (Z, [], 1)
    new = {k: (list(Z), list(B), r + 1) for k, (Z, B, r) in state.items()}
    active = {}
    for k in couple.e_degrees:
        Z, B, r = state[k]
        n = couple.e_dim(k)
        if k not in couple.slots or k + 1 not in state:
            active[k] = False
            continue
        reps = _complement(B, Z, n, K)
        Z1, B1, _ = state[k + 1]
        n1 = couple.e_dim(k + 1)
        images = []
        for z in reps:
            x = couple.l_map(k, z)
            y = couple.slot(k).divide(x, r - 1)
            if y is None:
                raise ArithmeticError(f"l(E_{r}^{k}) is not inside i^{r - 1}D: couple is not exact")
            w = couple.j_map(k, y)
            if _span_rank(Z1 + [w], n1, K) != _span_rank(Z1, n1, K):
                raise ArithmeticError(f"d_{r} leaves the cycles of E^{k + 1}")
            images.append(w)
        # d_r is non-zero iff some image is outside B_r^{k+1}
        base = _span_rank(B1, n1, K)
        active[k] = _span_rank(B1 + images, n1, K) > base
        # new cycles in degree k: combinations whose image lies in B^{k+1}
        if reps:
            M = Matrix.from_columns(images + B1, n1, K) if (images or B1) else Matrix.zeros(n1, 0, K)
            keep = []
            for v in M.kernel():
                coeff = v[:len(reps)]
                if any(coeff):
                    keep.append([sum((c * z[t] for c, z in zip(coeff, reps)), K.zero) for t in range(n)])
            Zk = B + keep
            nB1 = new[k + 1][1] + images
            new[k] = (Zk, new[k][1], r + 1)
            Zn, _, rn = new[k + 1]
            new[k + 1] = (Zn, nB1, rn)
    return new, active


def pages(couple: GradedCouple, r_max: int) -> PageTable:
    """Page table by literal iteration of derived couples, pages ``1..r_max``."""
    if r_max < 1:
        raise ValueError("r_max must be at least 1")
    K = couple.p.field
    d = couple.p.degree
    degs = couple.e_degrees
    state = None
    dims, active = [], []
    for r in range(1, r_max + 1):
        if state is None:
            cur = {k: couple.e_dim(k) for k in degs}
        else:
            cur = {k: _span_rank(Z, couple.e_dim(k), K) - _span_rank(B, couple.e_dim(k), K)
                   for k, (Z, B, _) in state.items()}
        if any(v % d for v in cur.values()):
            raise ArithmeticError("page dimension is not a multiple of the factor degree")
        dims.append({k: v // d for k, v in cur.items()})
        if r < r_max:
            state, act = derive(couple, state)
            active.append(act)
    bounds = _lemma_bounds(couple)
    sigma = {}
    certified = True
    for k in degs:
        ok = r_max >= bounds.get(k, 1)
        certified &= ok
        if not ok:
            sigma[k] = None
            continue
        last = max((r for r, row in enumerate(active, start=1) if row.get(k)), default=0)
        sigma[k] = last + 1
    return PageTable(degs, dims, active, sigma, certified)


def closed_form_pages(exponents_per_degree, free_ranks, r_max: int) -> PageTable:
    """Page table from primary exponents and free ranks alone."""
    if r_max < 1:
        raise ValueError("r_max must be at least 1")
    slots = sorted(set(exponents_per_degree) | set(free_ranks))
    if not slots:
        return PageTable([], [{} for _ in range(r_max)], [{} for _ in range(r_max - 1)], {}, True)
    degs = list(range(slots[0], slots[-1] + 2))
    ex = lambda k: exponents_per_degree.get(k, ())
    fr = lambda k: free_ranks.get(k, 0)
    dims = []
    for r in range(1, r_max + 1):
        dims.append({k: fr(k - 1) + sum(1 for e in ex(k - 1) if e >= r) + sum(1 for e in ex(k) if e >= r)
                     for k in degs})
    active = [{k: any(e == r for e in ex(k)) for k in degs} for r in range(1, r_max)]
    sigma = {}
    certified = True
    for k in degs:
        bound = 1 + max(ex(k), default=0)
        if r_max < bound:
            sigma[k] = None
            certified = False
        else:
            sigma[k] = bound
    return PageTable(degs, dims, active, sigma, certified)


def couple_closed_form(couple: GradedCouple, r_max: int) -> PageTable:
    exps = {k: primary_exponents(m, couple.p) for k, m in couple.modules.items()}
    free = {k: m.free_rank for k, m in couple.modules.items()}
    return closed_form_pages(exps, free, r_max)


def mu(table: PageTable) -> dict:
    """Massey lengths ``mu_k = sigma_k - 1`` per E-degree."""
    out = {}
    for k in table.degrees:
        s = table.sigma[k]
        if s is None:
            raise UnstableSigma(f"sigma in degree {k} is not certified; raise r_max")
        out[k] = s - 1
    return out
