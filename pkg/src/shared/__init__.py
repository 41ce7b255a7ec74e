from .config import (
    Config,
    ConfigAlgebra,
    ConfigGrid,
    ConfigLog,
    ConfigMargins,
    ConfigSimulation,
    FitConfig,
    load_validated_config,
)
from .errors import (
    BranchCutError,
    DegreeOverflowError,
    DomainError,
    ErrorKind,
    FotfError,
    GridTooSparseError,
    PayloadError,
    PoleEvaluationError,
    RankDeficientError,
)

__all__ = [
    "BranchCutError",
    "Config",
    "ConfigAlgebra",
    "ConfigGrid",
    "ConfigLog",
    "ConfigMargins",
    "ConfigSimulation",
    "DegreeOverflowError",
    "DomainError",
    "ErrorKind",
    "FitConfig",
    "FotfError",
    "GridTooSparseError",
    "PayloadError",
    "PoleEvaluationError",
    "RankDeficientError",
    "load_validated_config",
]
