"""Levels, p^e-th root ideals and differential operators over prime fields."""

from .diffop import (
    AssociatedOperator,
    DiffOperator,
    Term,
    apply,
    construct_operator,
    dual_basis_operator,
    fraction_operator,
    linear_forms_operator,
    monomial_operator,
    parse_operator,
    same_action,
    serialize,
)
from .ec import (
    CurveClassification,
    WeierstrassCoefficients,
    classify,
    cubic_of,
    hasse_ordinary,
    is_smooth,
    point_count_trace,
    scan_field,
)
from .errors import (
    ConsistencyError,
    LevelBoundExceeded,
    NotInBracketPowerError,
    ParseError,
    RingMismatchError,
    SingularCurveError,
    UnsupportedLevelError,
    VerificationError,
)
from .ff import FpElement, Prime, binom_mod_p, factorial_p_valuation, lucas_binom
from .froots import (
    RootIdeal,
    bracket_member,
    express_in_bracket_power,
    ideal_of_roots,
    non_f_pure_ideal,
)
from .ideal import (
    GREVLEX,
    LEX,
    GroebnerBasis,
    IdealBasis,
    MonomialOrder,
    contains,
    frobenius_power,
    groebner,
    ideal_equal,
    is_subideal,
    normal_form,
)
from .level import (
    CertificateKind,
    LevelOneCertificate,
    LevelResult,
    check_certificate,
    is_regular,
    level_of,
    level_one_certificate,
    monomial_level,
)
from .parsing import parse_polynomial
from .poly import MultiPoly, Ring, divided_derivative, frobenius_decompose, power_q_minus_one

__version__ = "0.1.0"
