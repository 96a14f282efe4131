"""Completed special values of self-dual motivic L-functions and the
polynomials built from them.

The library computes the completed values Lambda(s) = N^{s/2} L_inf(s) L(s)
at the integers s = 1..w inside the critical strip, assembles the
special-value polynomial p(z) and its companions P(z), Q(z), locates their
zeros relative to the unit circle, counts disc zeros of the limiting entire
series F_{d,N}, evaluates the sufficient-condition gates that force all
zeros onto |z| = 1, and converts deflated polynomials to zeta-polynomials
satisfying Z(1-s) = +/- Z(s).
"""

__version__ = "0.1.0"

from .errors import (
    InputError,
    PoleError,
    InsufficientCoefficients,
    QuadratureError,
    CertificationError,
    VerificationError,
    ConventionError,
)
from .lfunc import (
    LFunctionData,
    SpecialValues,
    Precision,
    gamma_completed,
    dirichlet_l,
    completed_lambda,
    special_values,
    zeta_ratio_bound,
    verify_hypothesis,
)
from .sympow import (
    CurveSpec,
    SatakePair,
    ap_count,
    satake_pair,
    sym_local_factor,
    sym_dirichlet_coeffs,
    sym_hodge,
    sym_lfunction_data,
    determine_root_number,
)
from .polys import (
    RealPolynomial,
    ApproximantSeries,
    LValueRatios,
    SBoundParts,
    binomial_weight,
    build_p_poly,
    build_P_poly,
    build_Q_poly,
    l_value_ratios,
    eval_F,
    partial_sum_T,
    s_tail_bound,
    s_tail_parts,
    q_decomposition_residual,
)
from .zeros import (
    UnitCircleReport,
    DiscCount,
    TrigScan,
    poly_roots,
    circle_report,
    deflate_unit_pair,
    count_disc_zeros,
    disc_transition_table,
    trig_sign_changes,
    star_discrepancy,
)
from .gates import (
    GateReport,
    RoucheTransfer,
    SYM_POWER_GAPS,
    COROLLARY_LEVEL_FLOORS,
    compute_A_m,
    hodge_condition,
    coefficient_inequalities,
    theorem_gate,
    rouche_transfer,
)
from .rv import (
    ZetaPolynomial,
    ZetaCheck,
    stirling_first,
    rv_transform,
    maclaurin_coefficients,
    zeta_polynomial,
    zeta_poly_closed_form,
    check_zeta_properties,
    deflate_at_one,
)
from .files import (
    SpecialValuesCache,
    parse_coefficient_file,
    parse_coefficient_text,
    coefficient_file_text,
    write_coefficient_file,
    parse_curve_file,
    parse_curve_text,
    parse_eps_overrides,
    parse_eps_overrides_text,
    mpf_to_obj,
    mpf_from_obj,
    canonical_report_text,
    write_report,
    sha256_file,
)

__all__ = [
    "__version__",
    "InputError", "PoleError", "InsufficientCoefficients", "QuadratureError",
    "CertificationError", "VerificationError", "ConventionError",
    "LFunctionData", "SpecialValues", "Precision",
    "gamma_completed", "dirichlet_l", "completed_lambda", "special_values",
    "zeta_ratio_bound", "verify_hypothesis",
    "CurveSpec", "SatakePair", "ap_count", "satake_pair", "sym_local_factor",
    "sym_dirichlet_coeffs", "sym_hodge", "sym_lfunction_data",
    "determine_root_number",
    "RealPolynomial", "ApproximantSeries", "LValueRatios", "SBoundParts",
    "binomial_weight", "build_p_poly", "build_P_poly", "build_Q_poly",
    "l_value_ratios", "eval_F", "partial_sum_T", "s_tail_bound",
    "s_tail_parts", "q_decomposition_residual",
    "UnitCircleReport", "DiscCount", "TrigScan", "poly_roots",
    "circle_report", "deflate_unit_pair", "count_disc_zeros",
    "disc_transition_table", "trig_sign_changes", "star_discrepancy",
    "GateReport", "RoucheTransfer", "SYM_POWER_GAPS",
    "COROLLARY_LEVEL_FLOORS", "compute_A_m", "hodge_condition",
    "coefficient_inequalities", "theorem_gate", "rouche_transfer",
    "ZetaPolynomial", "ZetaCheck", "stirling_first", "rv_transform",
    "maclaurin_coefficients", "zeta_polynomial", "zeta_poly_closed_form",
    "check_zeta_properties", "deflate_at_one",
    "SpecialValuesCache", "parse_coefficient_file", "parse_coefficient_text",
    "coefficient_file_text", "write_coefficient_file", "parse_curve_file",
    "parse_curve_text", "parse_eps_overrides", "parse_eps_overrides_text",
    "mpf_to_obj", "mpf_from_obj", "canonical_report_text", "write_report",
    "sha256_file",
]
