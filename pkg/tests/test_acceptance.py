"""Acceptance gate: one PASS/FAIL line per criterion, exact equality throughout.

Run ``pytest tests/test_acceptance.py -s`` (lines are also repeated in the
terminal summary) or ``python tests/test_acceptance.py``.
"""

import functools
import random
import sys
import time
from fractions import Fraction

import pytest

from massey_torus import couple as cp
from massey_torus.jordan import jordan_profile
from massey_torus.lmodules import snf
from massey_torus.polyalg import Matrix, Poly, PolyRing, charpoly, poly_at_matrix, rational_irreducible_factors
from massey_torus.random_instances import random_invertible, random_monodromy, within_bound
from massey_torus.report import analyze, builtin_fixture
from massey_torus.suites import (
    check_conservation,
    check_generalization_instance,
    check_lemma_instance,
    check_mapping_torus,
    generalization_instance,
    lemma_instance,
    torsion_monodromy,
)

SEED = 2024
RESULTS = {}

# pinned limits (seconds) and instance counts
LIMIT_HEISENBERG = 1.0
LIMIT_SURFACE = 2.0
LIMIT_MAIN, N_MAIN = 60.0, 200
LIMIT_LEMMA, N_LEMMA_PER_M = 10.0, 20
LIMIT_GENERAL, N_GENERAL = 30.0, 100
LIMIT_KERNELS, N_SNF, N_MATRICES = 60.0, 500, 200


def record(key, name, ok, detail):
    line = f"{'PASS' if ok else 'FAIL'}  [{key}] {name}: {detail}"
    RESULTS[key] = line
    print(line)
    return ok


def timed(fn):
    t = time.perf_counter()
    out = fn()
    return out, time.perf_counter() - t


@functools.lru_cache(maxsize=None)
def main_instances():
    rng = random.Random(SEED)
    return [random_monodromy(rng) for _ in range(N_MAIN)]


@functools.lru_cache(maxsize=None)
def lemma_instances():
    rng = random.Random(SEED + 1)
    return [(m, *lemma_instance(rng, m)) for m in range(1, 6) for _ in range(N_LEMMA_PER_M)]


@functools.lru_cache(maxsize=None)
def generalization_instances():
    rng = random.Random(SEED + 2)
    return [generalization_instance(rng) for _ in range(N_GENERAL)]


def test_c1_heisenberg():
    def run():
        return analyze(builtin_fixture("heisenberg"))

    r, dt = timed(run)
    row = r.row(1, Poly.x() - 1)
    checks = {
        "b1 = b2 = 2": r.betti[1] == 2 and r.betti[2] == 2,
        "J1(1) = 2": row["J"] == 2,
        "mu1(1) = 2 = sigma - 1": row["mu"] == 2 and row["sigma"] - 1 == 2,
        "not_formal": r.verdicts["not_formal"]["value"] is True,
        f"time < {LIMIT_HEISENBERG}s": dt < LIMIT_HEISENBERG,
    }
    bad = [k for k, v in checks.items() if not v]
    assert record("1", "Heisenberg reproduction", not bad, f"{dt:.3f}s" + (f" failed {bad}" if bad else ""))


def test_c2_surface():
    def run():
        return {n: analyze(builtin_fixture("surface", n)) for n in (1, 2, 3)}

    reports, dt = timed(run)
    bad = []
    for n, r in reports.items():
        if r.betti != [1, 1, 1, 1]:
            bad.append(f"n={n} betti {r.betti}")
        nsf = r.verdicts["not_strongly_formal"]
        if not (nsf["value"] is True and any(w["factor"] == ["1", "1"] for w in nsf["witnesses"])):
            bad.append(f"n={n} no strong-formality witness at -1")
        if r.verdicts["not_formal"]["value"] is not False:
            bad.append(f"n={n} not_formal is true")
    if dt >= LIMIT_SURFACE:
        bad.append(f"time {dt:.3f}s")
    assert record("2", "surface fixtures n=1,2,3", not bad, f"{dt:.3f}s" + (f" failed {bad}" if bad else ""))


def test_c3_main_theorem():
    insts = main_instances()
    for mats in insts:
        assert all(within_bound(A) and A.det() != 0 for A in mats if A.rows)
        assert all(A.rows <= 6 for A in mats)

    def run():
        return [f for mats in insts for f in check_mapping_torus(mats, conservation=False)]

    fails, dt = timed(run)
    ok = not fails and dt < LIMIT_MAIN
    assert record("3", f"main theorem, {len(insts)} monodromy instances, offset {cp.DEGREE_OFFSET}", ok,
                  f"{dt:.2f}s, {len(fails)} failures" + (f": {fails[:3]}" if fails else ""))


def test_c4_lemma():
    insts = lemma_instances()

    def run():
        return [f for m, mods, lam in insts for f in check_lemma_instance(mods, lam, m)]

    fails, dt = timed(run)
    ok = not fails and dt < LIMIT_LEMMA and len(insts) == 100
    assert record("4", f"lemma couples, {len(insts)} instances, m = 1..5", ok,
                  f"{dt:.2f}s, {len(fails)} failures" + (f": {fails[:3]}" if fails else ""))


def test_c5_generalization():
    insts = generalization_instances()
    with_free = sum(1 for mods in insts if any(m.free_rank for m in mods))

    def run():
        return [f for mods in insts for f in check_generalization_instance(mods)]

    fails, dt = timed(run)
    ok = not fails and dt < LIMIT_GENERAL and with_free > 0
    assert record("5", f"generalization, {len(insts)} presentations ({with_free} with free part)", ok,
                  f"{dt:.2f}s, {len(fails)} failures" + (f": {fails[:3]}" if fails else ""))


def _random_poly(rng):
    return Poly([Fraction(rng.randint(-5, 5), rng.randint(1, 5)) for _ in range(rng.randint(0, 3) + 1)])


def _snf_failures(rng):
    R = PolyRing()
    fails = []
    for i in range(N_SNF):
        m, n = rng.randint(1, 5), rng.randint(1, 5)
        M = Matrix([[_random_poly(rng) for _ in range(n)] for _ in range(m)], R, shape=(m, n))
        U, D, V = snf(M)
        diag = [D[k, k] for k in range(min(m, n))]
        off = any(D[a, b] for a in range(m) for b in range(n) if a != b)
        chain = all(a.divides(b) for a, b in zip(diag, diag[1:]))
        units = all(not d.is_zero() and d.degree == 0 for d in (U.det(), V.det()))
        if U @ M @ V != D or off or not chain or not units:
            fails.append(f"snf instance {i}")
    return fails


def _matrix_failures(rng):
    fails = []
    for i in range(N_MATRICES):
        n = rng.randint(1, 6)
        A = random_invertible(n, rng) if i % 2 else Matrix(
            [[Fraction(rng.randint(-5, 5), rng.randint(1, 5)) for _ in range(n)] for _ in range(n)])
        p = charpoly(A)
        if not poly_at_matrix(p, A).is_zero():
            fails.append(f"Cayley-Hamilton {i}")
        for f, _, _ in rational_irreducible_factors(p):
            if jordan_profile(A, f) != jordan_profile(A.T, f):
                fails.append(f"transpose {i}")
    return fails


def test_c6_kernels():
    rng = random.Random(SEED + 3)
    fails, dt = timed(lambda: _snf_failures(rng) + _matrix_failures(rng))
    ok = not fails and dt < LIMIT_KERNELS
    assert record("6", f"algebra kernels, {N_SNF} SNF + {N_MATRICES} matrices", ok,
                  f"{dt:.2f}s, {len(fails)} failures" + (f": {fails[:3]}" if fails else ""))


def test_c7_conservation():
    tori = list(main_instances())
    tori += [torsion_monodromy(mods) for _, mods, _ in lemma_instances()]
    tori += [torsion_monodromy(mods) for mods in generalization_instances()]
    fails, dt = timed(lambda: [f for mats in tori for f in check_conservation(mats)])
    assert record("7", f"Euler characteristic and Wang relation on {len(tori)} mapping tori", not fails,
                  f"{dt:.2f}s, {len(fails)} failures" + (f": {fails[:3]}" if fails else ""))


if __name__ == "__main__":
    sys.exit(pytest.main([__file__, "-q", "-s"]))
