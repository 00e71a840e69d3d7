"""Exact Puiseux branches, contact profiles and Lipschitz saturation
membership for reduced plane curve germs, with a numeric cross-checking
harness and a family equisaturation checker."""

__version__ = "0.1.0"

from .algebra import (
    BiPoly,
    NewtonEdge,
    NewtonPolygon,
    Rat,
    discriminant_order,
    make_y_regular,
    newton_polygon,
    parse_curve,
    parse_family,
    resultant_y,
    squarefree_part,
)
from .errors import (
    DenominatorVanishesOnBranch,
    EmptyIdealError,
    FiberNotReduced,
    InsufficientTruncation,
    NotAGerm,
    NotYRegular,
    PolynomialSyntaxError,
    PrecisionOverflow,
    RadiusTooLarge,
    SatcurveError,
    UnknownVariableError,
)
from .family import EquisatReport, FamilyCurve, equisaturation_check, family_discriminant
from .mpoly import MPoly, parse_polynomial
from .numfield import QQ, AlgNum, NumberField, alg_equal
from .puiseux import (
    CharacteristicData,
    CurveContext,
    PuiseuxBranch,
    branch_multiplicity,
    characteristic_exponents,
    evaluate_branch,
    puiseux_expand,
    restrict_fraction,
    tangent_slope,
)
from .saturation import (
    ContactType,
    DeterminationClass,
    LipschitzReport,
    SaturationProfile,
    contact_exponents,
    determination_classes,
    integral_closure_member,
    is_bounded_fraction,
    is_lipschitz_fraction,
    profile_shear_stability,
    prop_4_5_expected,
    saturation_profile,
)
from .series import FractionSeries, PSeries
from .verify import (
    ConsistencyReport,
    SamplePlan,
    branch_residual_check,
    crosscheck,
    empirical_lipschitz_slope,
    verify_contact_exponent,
)

__all__ = [name for name in dir() if not name.startswith("_")]
