from .fit import FitReport, exact_report, fit_rational, fractional_response_of
from .rational import RationalTf, augment

__all__ = [
    "FitReport",
    "RationalTf",
    "augment",
    "exact_report",
    "fit_rational",
    "fractional_response_of",
]
