from .theta import (LpSeries, ThetaLevel, apriori_cert, exact_riemann_sum, level_for, lp_for_curve, lp_series,
                    measure, riemann_sums, theta_level)
from .interp import InterpolationReport, algebraic_value, ep_multiplier, interpolation_check, log_index
from .oracle import (ComplexLValue, complex_L_value, neron_periods, root_number, twist_root_number,
                     twisted_period_ratio)

__all__ = [
    "LpSeries", "ThetaLevel", "apriori_cert", "exact_riemann_sum", "level_for", "lp_for_curve", "lp_series",
    "measure", "riemann_sums", "theta_level", "InterpolationReport", "algebraic_value", "ep_multiplier",
    "interpolation_check", "log_index", "ComplexLValue", "complex_L_value", "neron_periods", "root_number",
    "twist_root_number", "twisted_period_ratio",
]
