"""Explicit non-singular plane curves of odd degree violating the Hasse principle.

Curves of the shape

    (X^3 + P^iota*Y^3) * prod_j (b_j^2 X^2 + b_j c_j XY + c_j^2 Y^2) = l^m * Z^n

built from the fundamental unit of the pure cubic field Q(P^(1/3)),
primes represented by binary cubic forms, and a quadratic-residue descent.
Every generated curve ships with independently re-checkable certificates:
local solubility at every place, the global-unsolubility preconditions,
non-singularity, and an empirical bounded-height point search.
"""

from .cubicring import FieldParams, RingElement, make_field_params, mul, norm, power, real_value
from .descent import (
    DescentCertificate,
    certify_descent,
    ck_sequence,
    delta,
    find_even_exponent,
    legendre,
    rho,
)
from .errors import (
    ArityMismatch,
    BudgetExhausted,
    ConditionFailed,
    DegreeIncompatible,
    HasseCurvesError,
    NoExponent,
    NonInvertible,
    OracleMismatch,
    SearchExhausted,
    VerificationFailed,
)
from .forms import TernaryForm, build_curve, check_nonsingular, eval_with_gradient, to_latex
from .pipeline import Counterexample, VerificationReport, emit, generate, generate_many, load, verify
from .primesearch import (
    DescentCandidate,
    FormPrime,
    is_prime,
    search_coefficient_pairs,
    search_descent_primes,
)
from .solubility import (
    LocalCertificate,
    check_global_conditions,
    check_local_conditions,
    local_certificate,
    point_search,
    real_witness,
    structural_coverage,
    validate_certificate,
)
from .units import (
    AacmResult,
    FundamentalUnit,
    UnitCache,
    aacm_scan,
    check_aacm,
    classify_iota,
    density_report,
    fundamental_unit,
)

__version__ = "1.0.0"

__all__ = [
    "AacmResult", "ArityMismatch", "BudgetExhausted", "ConditionFailed",
    "Counterexample", "DegreeIncompatible", "DescentCandidate",
    "DescentCertificate", "FieldParams", "FormPrime", "FundamentalUnit",
    "HasseCurvesError", "LocalCertificate", "NoExponent", "NonInvertible",
    "OracleMismatch", "RingElement", "SearchExhausted", "TernaryForm",
    "UnitCache", "VerificationFailed", "VerificationReport", "aacm_scan",
    "build_curve", "certify_descent", "check_aacm", "check_global_conditions",
    "check_local_conditions", "check_nonsingular", "ck_sequence",
    "classify_iota", "delta", "density_report", "emit", "eval_with_gradient",
    "find_even_exponent", "fundamental_unit", "generate", "generate_many",
    "is_prime", "legendre", "load", "local_certificate", "make_field_params",
    "mul", "norm", "point_search", "power", "real_value", "real_witness",
    "rho", "search_coefficient_pairs", "search_descent_primes",
    "structural_coverage", "to_latex", "validate_certificate", "verify",
]
