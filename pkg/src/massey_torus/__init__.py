"""Exact Jordan/Massey analysis of mapping tori and infinite cyclic covers."""

from .couple import (
    DEGREE_OFFSET,
    GradedCouple,
    PageTable,
    build_couple,
    closed_form_pages,
    couple_closed_form,
    derive,
    mu,
    pages,
)
from .jordan import JordanProfile, jordan_profile, nu
from .lmodules import FPModule, TorsionAction, normalize, primary_exponents, snf, torsion_action
from .polyalg import Matrix, Poly, PolyRing, charpoly, rank_kernel, rational_irreducible_factors, squarefree_factors
from .report import AnalysisInput, Report, analyze, builtin_fixture, parse_input, verdicts
from .scalars import QQ, ExtElement, FieldDescriptor, field_arith, verify_extension
from .toruscx import (
    FiberComplex,
    TorusComplex,
    build_torus_complex,
    l_homology,
    milnor_betti,
    twisted_cohomology_dims,
)

__version__ = "0.1.0"
