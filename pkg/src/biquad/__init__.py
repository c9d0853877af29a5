"""Exact computations with bi-quadratic algebras.

Presentations over the rational function field Q(params), PBW normal forms,
PBW consistency, the twisted differential calculus on generators and a
differential smoothness verdict.

    >>> from biquad import catalog_get, analyze
    >>> analyze(catalog_get("quantum-plane")).status
    'smooth'
"""

from .scalar import Scalar, parse_scalar, ONE, ZERO
from .freealg import (
    LEFTMOST,
    RIGHTMOST,
    AffineEndo,
    FreePoly,
    NormalPoly,
    apply_endo,
    multiply,
    normalize,
    normalize_word,
)
from .presentation import (
    ASCENDING,
    DESCENDING,
    AlgebraPresentation,
    check_pbw3_closed,
    check_pbw_by_overlaps,
    translate_orientation,
    validate,
)
from .formats import ParseError, ValidationError, dump_presentation, load_presentation, parse_presentation_file, parse_word
from .catalog import UnknownName, catalog_get, catalog_names
from .calculus import (
    KForm,
    Obstruction,
    TwistFamily,
    d_on_forms,
    derive_forced_twists,
    differential,
    integral_form_generators,
    kernel_of_d,
    left_multiply_form,
    partial_closed_form,
    verify_integral_identity,
    volume_data,
    wedge,
)
from .smoothness import (
    NOT_SMOOTH,
    SMOOTH,
    UNDETERMINED,
    InconsistentPresentation,
    SmoothnessVerdict,
    analyze,
    theorem31_conditions,
    theorem32_obstruction,
    verify_witness,
)

__version__ = "0.1.0"
