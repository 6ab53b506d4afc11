"""Rigid unit mode analysis for periodic bar-joint frameworks."""

from .framework import (
    CrystalFramework,
    EdgeSpec,
    FrameworkError,
    Motif,
    TranslationGroup,
    edge_vector,
    maxwell_equilibrium,
    new_framework,
    place_vertex,
    supercell,
)
from .generators import GENERATORS, generator
from .io import ParseError, load_framework, parse_framework, save_framework, serialize_framework
from .laurent import LaurentPoly
from .polynomial import crystal_polynomial, determinant, is_identically_zero, proportional_to
from .rigidity import (
    FixedBoundary,
    Free,
    Periodic,
    PhasePeriodic,
    fourier_block_check,
    is_infinitesimal_flex,
    local_flex_search,
    patch_rigidity_matrix,
    wave_motion_defect,
)
from .scalar import ExactScalar, parse_scalar
from .semi_infinite import root_analysis, rooted_rigidity_verdict, rooted_symbol
from .spectrum import (
    rum_dimension_estimate,
    rum_points,
    sigma_min_field,
    square_summable_flex_exists,
    supercell_spectrum_check,
    wave_flex_at,
)
from .symbol import SymbolMatrix, build_symbol, evaluate_symbol

__version__ = "0.1.0"
