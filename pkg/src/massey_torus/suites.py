"""Randomised property checks shared by ``massey-torus selfcheck`` and the test suite.

Each ``check_*`` function runs one random instance and returns a list of
failure messages (empty on success).
"""

from __future__ import annotations

import random

from . import couple as cp
from .jordan import jordan_profile
from .lmodules import normalize, primary_exponents, torsion_action
from .polyalg import Matrix, Poly, charpoly, rational_irreducible_factors
from .random_instances import lemma_couple_slot, random_l_presentation, random_monodromy
from .report import _eigen_point
from .toruscx import FiberComplex, build_torus_complex, l_homology, twisted_cohomology_dims, wang_dims


def _factors(mats):
    seen = {}
    for A in mats:
        if A.rows:
            for f, _, proven in rational_irreducible_factors(charpoly(A)):
                if proven:
                    seen[f.coeffs] = f
    return list(seen.values())


def _compare_routes(c, r_max, tag):
    lit = cp.pages(c, r_max)
    closed = cp.couple_closed_form(c, r_max)
    fails = []
    if lit.dims != closed.dims:
        fails.append(f"{tag}: literal pages {lit.dims} != closed form {closed.dims}")
    if lit.sigma != closed.sigma:
        fails.append(f"{tag}: literal sigma {lit.sigma} != closed form {closed.sigma}")
    return lit, fails


def check_mapping_torus(mats, offset=cp.DEGREE_OFFSET, generic=(7, -3), conservation=True):
    """J = mu for every factor, dual-route pages, Euler characteristic and Wang relation."""
    fails = []
    fiber = FiberComplex.from_monodromy(mats)
    torus = build_torus_complex(fiber)
    mods = l_homology(torus)
    for k, A in enumerate(mats):
        if mods[k].free_rank != 0:
            fails.append(f"degree {k}: mapping-torus homology has free part")
    for p in _factors(mats):
        c = cp.build_couple(mods, p)
        r_max = 2 + max((e for m in c.modules.values() for e in primary_exponents(m, c.p)), default=0)
        lit, f = _compare_routes(c, r_max, f"factor {p}")
        fails += f
        sig = lit.sigma_with_offset(offset)
        for k in lit.degrees:
            J = jordan_profile(mats[k], p).nu if 0 <= k < len(mats) and mats[k].rows else 0
            if J != sig[k] - 1:
                fails.append(f"factor {p}, degree {k}: J={J} mu={sig[k] - 1}")
    if conservation:
        fails += check_conservation(mats, generic)
    return fails


def check_conservation(mats, generic=(7, -3)):
    """Twisted Euler characteristic and Wang count at every eigen-factor and at generic points."""
    fiber = FiberComplex.from_monodromy(mats)
    torus = build_torus_complex(fiber)
    fails = []
    for p in _factors(mats):
        fails += _conservation(torus, fiber, _eigen_point(p), f"factor {p}")
    for lam in generic:
        fails += _conservation(torus, fiber, lam, f"lambda {lam}")
    return fails


def _conservation(torus, fiber, lam, tag):
    fails = []
    dims = twisted_cohomology_dims(torus, lam)
    if sum((-1) ** k * d for k, d in enumerate(dims)):
        fails.append(f"{tag}: Euler characteristic of {dims} is non-zero")
    wang = wang_dims(fiber, lam)
    if dims != wang:
        fails.append(f"{tag}: twisted dims {dims} != Wang count {wang}")
    return fails


def check_main_theorem(rng: random.Random):
    return check_mapping_torus(random_monodromy(rng))


def lemma_instance(rng: random.Random, m: int):
    """Slot 0 splits as nilpotent(index m) + injective; returns ``(modules, lam)``."""
    lam = rng.choice([1, -1, 2, 3])
    slot = lemma_couple_slot(m, lam, rng)
    others = [lemma_couple_slot(rng.randint(1, 3), lam, rng) for _ in range(rng.randint(0, 1))]
    return [slot] + others, lam


def check_lemma_instance(modules, lam, m):
    c = cp.build_couple(modules, Poly.linear(lam))
    lit, fails = _compare_routes(c, m + 2, f"lemma m={m}")
    if lit.sigma[0] != m + 1:
        fails.append(f"lemma m={m}: sigma={lit.sigma[0]}")
    return fails


def check_lemma(rng: random.Random, m: int):
    return check_lemma_instance(*lemma_instance(rng, m), m)


def generalization_instance(rng: random.Random):
    return [normalize(m) for m in random_l_presentation(rng)]


def check_generalization_instance(mods):
    """nu(f_k, lambda) = mu_k(lambda) for every factor of every torsion automorphism."""
    acts = [torsion_action(m).action for m in mods]
    fails = []
    for p in _factors(acts):
        c = cp.build_couple(mods, p)
        r_max = 2 + max((e for m in c.modules.values() for e in primary_exponents(m, c.p)), default=0)
        lit, f = _compare_routes(c, r_max, f"factor {p}")
        fails += f
        mu = cp.mu(lit)
        for k in lit.degrees:
            nu = jordan_profile(acts[k], p).nu if 0 <= k < len(acts) and acts[k].rows else 0
            if nu != mu[k]:
                fails.append(f"factor {p}, degree {k}: nu={nu} mu={mu[k]}")
    return fails


def check_generalization(rng: random.Random):
    return check_generalization_instance(generalization_instance(rng))


def torsion_monodromy(modules):
    """Mapping-torus monodromy built from the torsion automorphisms of a graded module.

    Degree 0 always gets at least the identity on Q so the fiber is non-empty.
    """
    acts = [torsion_action(normalize(m)).action for m in modules]
    if not acts or not acts[0].rows:
        acts = [Matrix.identity(1)] + acts[1:]
    return acts


def run_selfcheck(seed=0, count=50, log=print):
    rng = random.Random(seed)
    failures = 0
    suites = [
        ("main theorem", lambda: check_main_theorem(rng)),
        ("lemma", lambda: check_lemma(rng, rng.randint(1, 5))),
        ("generalization", lambda: check_generalization(rng)),
    ]
    for name, fn in suites:
        bad = 0
        for _ in range(count):
            f = fn()
            if f:
                bad += 1
                for msg in f:
                    log(f"  {name}: {msg}")
        failures += bad
        log(f"{name}: {count - bad}/{count} instances passed")
    return failures
