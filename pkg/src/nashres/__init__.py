"""Exact arc-based resolution invariants for algebraic varieties.

Computes, in exact rational arithmetic: Tschirnhausen normal forms and
elimination algebras of local presentations, orders of contact of arcs with
the top multiplicity stratum, Nash multiplicity sequences by directed blow-up
simulation, and diagonal-generic arcs realizing the minimal normalized
contact order.  The `verify` harness machine-checks the identities tying
these quantities together.
"""

from .arcs import (
    Arc,
    ContactResult,
    ValidatedArc,
    arc_order,
    contact_order,
    contact_order_without_x,
    image_of_algebra,
    project_arc,
    reparametrize_arc,
    validate_arc,
)
from .errors import (
    ExtensionRequiredError,
    IdentityViolationError,
    InsufficientPrecisionError,
    MaxMultArcError,
    NashresError,
    NotCenteredError,
    NotOnVarietyError,
    NotPermissibleError,
    ParseError,
    ValidationError,
)
from .extorder import INFINITE, ExtOrder, ext_min
from .generic import (
    DiagonalArc,
    GenericArcResult,
    PuiseuxLift,
    build_diagonal_arc,
    construct_generic_arc,
    find_generic_units,
    is_diagonal_generic,
    lift_monomial_base,
    lift_to_presentation,
    puiseux_lift,
    verify_genericity,
)
from .nash import (
    NashSequence,
    NashState,
    nash_sequence_equation,
    nash_sequence_hypersurface,
    nash_sequence_presentation,
    nash_step,
)
from .parsing import (
    arc_to_document,
    load_presentation,
    parse_arc,
    parse_poly,
    presentation_to_document,
)
from .poly import MultiPoly, poly_derive, poly_order_at, poly_translate
from .presentation import (
    EliminationAlgebra,
    LocalPresentation,
    TschirnhausenHypersurface,
    ambient_algebra,
    elimination_algebra,
    elimination_order,
    hypersurface_multiplicity_at,
    max_mult_contains,
    presentation_elimination_order,
    tschirnhausen_normalize,
)
from .rees import (
    OneDimAlgebra,
    OneDimGenerator,
    ReesAlgebra,
    ReesGenerator,
    algebra_order_at,
    diff_closure,
    odot,
    onedim_order,
    onedim_resolution_steps,
    onedim_transform,
    sing_contains,
)
from .series import (
    PowerSeries,
    poly_compose_series,
    series_order,
    series_reparametrize,
)

__version__ = "0.1.0"
