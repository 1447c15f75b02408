"""Gamma-product Stieltjes moment problems.

Construct principal weight functions for moment sequences built from
products of gamma factors, attach vanishing-moment perturbations to form
explicit non-unique solution families, and decide uniqueness numerically
via the Carleman, Krein, and converse-Carleman criteria.
"""

from .backend import BACKEND
from .classes import (Perturbation, StieltjesClassMember, certify_nonnegative,
                      class_member_tm1, class_member_tm2, class_member_tm3,
                      find_gamma_max, omega1, omega2, omega2_v,
                      omega2_via_convolution, omega3, perturbation_tm1,
                      perturbation_tm2, perturbation_tm3)
from .criteria import (CarlemanResult, ConverseCarlemanResult, CriterionReport,
                       KreinResult, carleman, converse_carleman, full_report,
                       krein)
from .errors import (ConsistencyError, ConstraintError, ConvergenceError,
                     DomainError, GammomentsError, InconclusiveError,
                     PoleError, RefusesError, SearchError, TruncationError,
                     UndecidedError)
from .mellin import (ContourSpec, adapted_contour, contour_density,
                     contour_log_density, default_contour, inverse_mellin,
                     inverse_mellin_log, mellin_convolve,
                     mellin_convolve_many, saddle_abscissa)
from .moments import (MomentSequence, gamma_product, log_moment,
                      mellin_symbol, parse_descriptor, tm1, tm2, tm3, tm4)
from .special import (bessel_k0, bessel_k0_complex, bessel_k1, ln_gamma,
                      log_bessel_k0)
from .verify import MomentCheckResult, check_moment, check_vanishing
from .weights import (WeightFunction, principal_solution, w1, w2, w3, w4,
                      w4_via_convolution, weight_tm1, weight_tm2, weight_tm3,
                      weight_tm4, weight_w1)

__version__ = "0.1.0"

__all__ = [
    "BACKEND", "__version__",
    # errors
    "GammomentsError", "DomainError", "PoleError", "ConstraintError",
    "TruncationError", "ConvergenceError", "SearchError", "UndecidedError",
    "InconclusiveError", "RefusesError", "ConsistencyError",
    # special functions
    "ln_gamma", "bessel_k0", "bessel_k1", "log_bessel_k0", "bessel_k0_complex",
    # moment sequences
    "MomentSequence", "tm1", "tm2", "tm3", "tm4", "gamma_product",
    "log_moment", "mellin_symbol", "parse_descriptor",
    # mellin machinery
    "ContourSpec", "default_contour", "adapted_contour", "saddle_abscissa",
    "inverse_mellin", "inverse_mellin_log", "contour_density",
    "contour_log_density", "mellin_convolve", "mellin_convolve_many",
    # weights
    "WeightFunction", "w1", "w2", "w3", "w4", "w4_via_convolution",
    "weight_w1", "weight_tm1", "weight_tm2", "weight_tm3", "weight_tm4",
    "principal_solution",
    # classes
    "Perturbation", "StieltjesClassMember", "omega1", "omega2", "omega2_v",
    "omega2_via_convolution", "omega3", "perturbation_tm1",
    "perturbation_tm2", "perturbation_tm3", "class_member_tm1",
    "class_member_tm2", "class_member_tm3", "find_gamma_max",
    "certify_nonnegative",
    # verification
    "MomentCheckResult", "check_moment", "check_vanishing",
    # criteria
    "CarlemanResult", "KreinResult", "ConverseCarlemanResult",
    "CriterionReport", "carleman", "krein", "converse_carleman",
    "full_report",
]
