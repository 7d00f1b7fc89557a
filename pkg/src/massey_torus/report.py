"""Analysis pipeline: Jordan data, L-homology, couple pages and formality obstructions.

The three input modes share one back end.  Each produces a graded L-module
(D-slot ``k`` = index) and, per slot, the matrix whose Jordan blocks are
compared with the Massey lengths: ``phi^*_k`` for mapping tori, the torsion
automorphism ``f_k`` for bare L-presentations.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from typing import Optional, Union

from . import couple as cp
from .jordan import jordan_profile
from .lmodules import FPModule, normalize, primary_exponents, torsion_action
from .polyalg import Matrix, Poly, PolyRing, as_matrix, charpoly, is_irreducible, rational_irreducible_factors
from .scalars import QQ, ExtElement, format_rational, to_rational, verify_extension
from .toruscx import (
    FiberComplex,
    build_torus_complex,
    fiber_homology,
    l_homology,
    milnor_betti,
    twisted_cohomology_dims,
    validate_fiber,
    wang_dims,
)

MODES = ("monodromy", "fiber_complex", "l_presentation")


class InputError(ValueError):
    """Malformed or unsupported analysis input (CLI exit code 2)."""


class IntegrityError(AssertionError):
    """An identity that must hold failed, e.g. J != mu (CLI exit code 3)."""


@dataclass
class AnalysisInput:
    mode: str
    payload: object
    eigenvalues: Union[str, list] = "all"
    max_page: Optional[int] = None
    notes: list = field(default_factory=list)
    fixture: Optional[dict] = None

    def __post_init__(self):
        if self.mode not in MODES:
            raise InputError(f"unknown mode {self.mode!r}")
        if self.eigenvalues != "all":
            for lam in self.eigenvalues:
                if isinstance(lam, Poly):
                    if lam.degree < 1 or not lam.coeffs[0]:
                        raise InputError("eigen-factor must be non-constant and not divisible by u")
                elif not lam:
                    raise InputError("eigenvalue 0 is not allowed")
        if self.max_page is not None and self.max_page < 1:
            raise InputError("max_page must be positive")


@dataclass
class Report:
    rows: list
    betti: list
    verdicts: dict
    metadata: dict
    twisted: list = field(default_factory=list)

    def to_json(self):
        return {
            "rows": self.rows,
            "betti": self.betti,
            "verdicts": self.verdicts,
            "metadata": self.metadata,
            "twisted": self.twisted,
        }

    def dumps(self) -> str:
        return json.dumps(self.to_json(), sort_keys=True, indent=2, ensure_ascii=False)

    @classmethod
    def from_json(cls, data) -> "Report":
        if isinstance(data, str):
            data = json.loads(data)
        return cls(data["rows"], data["betti"], data["verdicts"], data["metadata"], data.get("twisted", []))

    def __eq__(self, other):
        return isinstance(other, Report) and self.to_json() == other.to_json()

    def row(self, degree, factor):
        """Row for ``degree`` and a factor given as Poly or coefficient list."""
        key = factor.to_json() if isinstance(factor, Poly) else [format_rational(to_rational(c)) for c in factor]
        for r in self.rows:
            if r["degree"] == degree and r["factor"] == key:
                return r
        raise KeyError((degree, key))

    def to_table(self) -> str:
        lines = [f"{'k':>3} {'factor':<28} {'J':>3} {'sigma':>6} {'mu':>4} cert"]
        for r in self.rows:
            s = r["sigma"] if r["sigma"] is not None else "?"
            m = r["mu"] if r["mu"] is not None else "?"
            lines.append(f"{r['degree']:>3} {r['factor_str']:<28} {r['J']:>3} {s!s:>6} {m!s:>4} {'yes' if r['certified'] else 'no'}")
        lines.append(f"betti: {tuple(self.betti)}")
        v = self.verdicts
        lines.append(f"not_formal: {v['not_formal']['value']}   not_strongly_formal: {v['not_strongly_formal']['value']}")
        for note in self.metadata.get("notes", []):
            lines.append(f"note: {note}")
        return "\n".join(lines)


# parsing ------------------------------------------------------------------

def _matrix(rows) -> Matrix:
    if not isinstance(rows, list) or any(not isinstance(r, list) for r in rows):
        raise InputError("matrices must be nested JSON arrays")
    try:
        if not rows:
            return Matrix.zeros(0, 0, QQ)
        return as_matrix(rows, QQ)
    except (ValueError, TypeError, ZeroDivisionError) as exc:
        raise InputError(f"bad matrix: {exc}") from exc


def _poly_matrix(rows, ring) -> Matrix:
    try:
        nr = len(rows)
        nc = len(rows[0]) if nr else 0
        return Matrix([[ring([to_rational(c) for c in e]) for e in r] for r in rows], ring, shape=(nr, nc))
    except (ValueError, TypeError, IndexError, ZeroDivisionError) as exc:
        raise InputError(f"bad F[u]-matrix: {exc}") from exc


def _graded(obj, name):
    if isinstance(obj, list):
        return obj
    if not isinstance(obj, dict):
        raise InputError(f"{name} must be an object keyed by degree or a list")
    try:
        keys = sorted(int(k) for k in obj)
    except ValueError as exc:
        raise InputError(f"{name} keys must be integer degrees") from exc
    if keys != list(range(len(keys))):
        raise InputError(f"{name} degrees must be 0..n without gaps")
    return [obj[str(k)] if str(k) in obj else obj[k] for k in keys]


def parse_eigenvalue(obj):
    """A rational string/number, ``{"min_poly", "element"}``, or ``{"factor"}``."""
    if isinstance(obj, (str, int)):
        try:
            return to_rational(obj)
        except (ValueError, ZeroDivisionError) as exc:
            raise InputError(f"bad eigenvalue {obj!r}") from exc
    if isinstance(obj, dict) and "factor" in obj:
        return Poly([to_rational(c) for c in obj["factor"]], QQ).monic()
    if isinstance(obj, dict) and "min_poly" in obj:
        try:
            K = verify_extension([to_rational(c) for c in obj["min_poly"]])
        except ValueError as exc:
            raise InputError(f"bad extension field: {exc}") from exc
        return K(obj.get("element", [0, 1]))
    raise InputError(f"cannot parse eigenvalue {obj!r}")


def parse_input(data, eigenvalues="all", max_page=None) -> AnalysisInput:
    """Build an :class:`AnalysisInput` from decoded JSON."""
    if not isinstance(data, dict):
        raise InputError("input must be a JSON object")
    if "eigenvalues" in data and eigenvalues == "all":
        eigenvalues = data["eigenvalues"]
    if eigenvalues != "all":
        if not isinstance(eigenvalues, list):
            raise InputError("eigenvalues must be 'all' or a list")
        eigenvalues = [parse_eigenvalue(e) for e in eigenvalues]
    if max_page is None:
        max_page = data.get("max_page")
    if "monodromy_on_cohomology" in data:
        mats = [_matrix(m) for m in _graded(data["monodromy_on_cohomology"], "monodromy_on_cohomology")]
        for k, m in enumerate(mats):
            if not m.is_square():
                raise InputError(f"monodromy in degree {k} is not square")
        return AnalysisInput("monodromy", mats, eigenvalues, max_page, list(data.get("notes", [])))
    if "ranks" in data:
        try:
            ranks = tuple(int(r) for r in data["ranks"])
            bds = []
            for k, b in enumerate(_graded(data["boundaries"], "boundaries")):
                prev = ranks[k - 1] if k > 0 else 0
                bds.append(Matrix(b, QQ, shape=(prev, ranks[k])) if b else Matrix.zeros(prev, ranks[k], QQ))
            mons = [_matrix(m) if m else Matrix.zeros(0, 0, QQ) for m in _graded(data["monodromy"], "monodromy")]
            fiber = FiberComplex(ranks, tuple(bds), tuple(mons), QQ)
            validate_fiber(fiber)
        except (KeyError, ValueError, TypeError) as exc:
            raise InputError(f"bad fiber complex: {exc}") from exc
        return AnalysisInput("fiber_complex", fiber, eigenvalues, max_page)
    if "l_presentation" in data:
        R = PolyRing(QQ)
        mods = [FPModule(_poly_matrix(m, R)) for m in _graded(data["l_presentation"], "l_presentation")]
        return AnalysisInput("l_presentation", mods, eigenvalues, max_page)
    raise InputError("input needs 'monodromy_on_cohomology', 'ranks'/'boundaries'/'monodromy', or 'l_presentation'")


def input_to_json(inp: AnalysisInput):
    """Serialise an input back to the file schema."""
    out = {}
    if inp.mode == "monodromy":
        out["monodromy_on_cohomology"] = {str(k): m.to_json() for k, m in enumerate(inp.payload)}
    elif inp.mode == "fiber_complex":
        f = inp.payload
        out["ranks"] = list(f.ranks)
        out["boundaries"] = [b.to_json() for b in f.boundaries]
        out["monodromy"] = [m.to_json() for m in f.monodromy]
    else:
        out["l_presentation"] = {str(k): m.presentation.to_json() for k, m in enumerate(inp.payload)}
    if inp.eigenvalues != "all":
        out["eigenvalues"] = [_eigen_json(e) for e in inp.eigenvalues]
    if inp.max_page is not None:
        out["max_page"] = inp.max_page
    if inp.notes:
        out["notes"] = list(inp.notes)
    return out


def _eigen_json(e):
    if isinstance(e, Poly):
        return {"factor": e.to_json()}
    if isinstance(e, ExtElement):
        return {"min_poly": [format_rational(c) for c in e.field.min_poly], "element": e.to_json()}
    return format_rational(e)


# fixtures -----------------------------------------------------------------

def builtin_fixture(name: str, n: int = 1) -> AnalysisInput:
    """``heisenberg`` or ``surface`` (genus-``n`` fiber) as monodromy-mode input."""
    one = Matrix([[1]])
    if name == "heisenberg":
        mats = [one, Matrix([[1, 1], [0, 1]]), one]
        if milnor_betti(FiberComplex.from_monodromy(mats)) != [1, 2, 2, 1]:
            raise IntegrityError("Heisenberg fixture does not reproduce b1 = b2 = 2")
        return AnalysisInput("monodromy", mats)
    if name == "surface":
        if n < 1:
            raise InputError("surface fixture needs n >= 1")
        I = Matrix.identity(n)
        Z = Matrix.zeros(n, n)
        # A(x, y) = (-x + y, -y) on H_1; cohomology sees the transpose
        A = Matrix.blocks([[-I, I], [Z, -I]], QQ)
        _check_symplectic(A, n)
        # A preserves the intersection form, so it fixes the orientation class in degree 2
        mats = [one, A.T, one]
        return AnalysisInput("monodromy", mats, fixture={"name": "surface", "n": n})
    raise InputError(f"unknown fixture {name!r}")


def _check_symplectic(A: Matrix, n: int):
    I = Matrix.identity(n)
    Z = Matrix.zeros(n, n)
    J = Matrix.blocks([[Z, I], [-I, Z]], QQ)
    if A.T @ J @ A != J:
        raise IntegrityError("surface monodromy does not preserve the symplectic pairing")


# pipeline -----------------------------------------------------------------

def _factor_str(p: Poly) -> str:
    return repr(p)


def _prepare(inp: AnalysisInput):
    """Return ``(modules per slot, Jordan matrices per slot, fiber or None)``."""
    if inp.mode == "monodromy":
        fiber = FiberComplex.from_monodromy(inp.payload)
        return l_homology(build_torus_complex(fiber)), list(inp.payload), fiber
    if inp.mode == "fiber_complex":
        fiber = inp.payload
        mats = [phi.T for _, phi in fiber_homology(fiber)]
        return l_homology(build_torus_complex(fiber)), mats, fiber
    mods = [normalize(m) for m in inp.payload]
    return mods, [torsion_action(m).action for m in mods], None


def _candidates(inp: AnalysisInput, mats):
    """Eigen-factors to scan, with a flag for unresolved factorizations."""
    if inp.eigenvalues != "all":
        out = []
        for e in inp.eigenvalues:
            p = e if isinstance(e, Poly) else Poly.linear(e)
            if not is_irreducible(p):
                raise InputError(f"eigen-factor {p} is reducible")
            out.append(p)
        return out, []
    seen = {}
    unresolved = []
    for A in mats:
        if not A.rows:
            continue
        for f, _, proven in rational_irreducible_factors(charpoly(A)):
            if not proven:
                unresolved.append(f)
                continue
            seen[f.coeffs] = f
    cands = sorted(seen.values(), key=lambda f: (f.degree, [(c.numerator, c.denominator) for c in f.coeffs]))
    return cands, unresolved


def _eigen_point(p: Poly):
    """An element ``lam`` with ``p(lam) = 0`` (in Q or in Q[x]/(p))."""
    if p.degree == 1:
        return -p.coeffs[0] / p.coeffs[1]
    K = verify_extension(list(p.monic().coeffs))
    return K.generator()


def _auto_pages(modules, p) -> int:
    exps = [e for m in modules for e in primary_exponents(m, p)]
    return 2 + max(exps, default=0)


def analyze(inp: AnalysisInput) -> Report:
    modules, mats, fiber = _prepare(inp)
    cands, unresolved = _candidates(inp, mats)
    rows = []
    twisted = []
    notes = list(inp.notes)
    for p in cands:
        c = cp.build_couple(modules, p)
        r_max = inp.max_page or _auto_pages(c.modules.values(), c.p)
        literal = cp.pages(c, r_max)
        closed = cp.couple_closed_form(c, r_max)
        if literal.dims != closed.dims or literal.sigma != closed.sigma:
            raise IntegrityError(f"literal and closed-form pages disagree at {p}")
        sig = literal.sigma
        for k in literal.degrees:
            A = mats[k] if 0 <= k < len(mats) else None
            J = jordan_profile(A, c.p).nu if A is not None and A.rows else 0
            s = sig[k]
            m = s - 1 if s is not None else None
            if m is not None and J != m:
                raise IntegrityError(f"J_{k} = {J} but mu_{k} = {m} at factor {p}")
            rows.append({
                "degree": k,
                "factor": c.p.to_json(),
                "factor_str": _factor_str(c.p),
                "J": J,
                "sigma": s,
                "mu": m,
                "certified": s is not None,
                "stable_from": literal.stable_from(k),
                "pages": [row[k] for row in literal.dims],
            })
        if fiber is not None:
            lam = _eigen_point(c.p) if p.field.is_rationals else -c.p.coeffs[0]
            torus = build_torus_complex(fiber)
            dims = twisted_cohomology_dims(torus, lam)
            wang = wang_dims(fiber, lam)
            if dims != wang:
                raise IntegrityError(f"Wang relation fails at {p}: {dims} vs {wang}")
            if sum((-1) ** k * d for k, d in enumerate(dims)) != 0:
                raise IntegrityError(f"twisted Euler characteristic is non-zero at {p}")
            e1 = [literal.dims[0].get(k, 0) for k in range(len(dims))]
            if dims != e1:
                raise IntegrityError(f"E_1 does not match twisted cohomology at {p}")
            twisted.append({"factor": c.p.to_json(), "dims": dims})
    betti = _betti(modules, fiber)
    rows.sort(key=lambda r: (r["degree"], len(r["factor"]), json.dumps(r["factor"])))
    verdicts = verdicts_for(rows)
    if inp.fixture and inp.fixture.get("name") == "surface":
        n = inp.fixture["n"]
        got = max((r["J"] for r in rows if r["factor"] == ["1", "1"]), default=0)
        if got != n:
            notes.append(f"largest Jordan block at -1 across all degrees is {got}; "
                         f"the construction this fixture follows states n = {n}")
    meta = {
        "mode": inp.mode,
        "degree_offset": cp.DEGREE_OFFSET,
        "degree_convention": "E^k = H^k(X, rho_lambda); D-slot k carries H_k(M) "
                             "(= H^{k+1}(X, beta)); mu_k is read from differentials leaving E^k",
        "unresolved_factors": [f.to_json() for f in unresolved],
        "factorization_proven": not unresolved,
        "notes": notes,
    }
    return Report(rows, betti, verdicts, meta, twisted)


def _betti(modules, fiber):
    if fiber is not None:
        return milnor_betti(fiber)
    c = cp.build_couple(modules, Poly.x(QQ) - 1)
    dims = c.e_degrees
    return [c.e_dim(k) for k in dims]


def verdicts_for(rows) -> dict:
    """Obstruction certificates: only a ``True`` value carries information."""
    nf, nsf = [], []
    for r in rows:
        if r["J"] >= 2:
            w = {"degree": r["degree"], "factor": r["factor"], "block_size": r["J"]}
            nsf.append(w)
            if r["factor"] == ["-1", "1"]:
                nf.append(w)
    return {
        "not_formal": {"value": bool(nf), "witnesses": nf},
        "not_strongly_formal": {"value": bool(nsf), "witnesses": nsf},
    }


def verdicts(report: Report) -> dict:
    return verdicts_for(report.rows)
