from .canceller import (
    CancellerSpec,
    cancel_zero,
    fractional_zero_factor,
    make_canceller,
    make_multi_canceller,
    make_ratio_canceller,
)
from .poly import FractionalPoly
from .roots import wplane_roots
from .transfer import (
    CombineMode,
    CommensurateTf,
    combine,
    evaluate,
    evaluate_many,
    from_rational,
)

__all__ = [
    "CancellerSpec",
    "CombineMode",
    "CommensurateTf",
    "FractionalPoly",
    "cancel_zero",
    "combine",
    "evaluate",
    "evaluate_many",
    "fractional_zero_factor",
    "from_rational",
    "make_canceller",
    "make_multi_canceller",
    "make_ratio_canceller",
    "wplane_roots",
]
