from .margins import MarginReport, margins
from .response import FrequencyGrid, FrequencyResponse, frequency_response
from .stability import (
    InternalStabilityReport,
    RootVerdict,
    StabilityReport,
    Verdict,
    internal_stability,
    matignon_stable,
)

__all__ = [
    "FrequencyGrid",
    "FrequencyResponse",
    "InternalStabilityReport",
    "MarginReport",
    "RootVerdict",
    "StabilityReport",
    "Verdict",
    "frequency_response",
    "internal_stability",
    "margins",
    "matignon_stable",
]
