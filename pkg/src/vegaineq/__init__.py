"""Inequality measurement with angular-scaled pairwise differences.

Provides the classical Gini coefficient, an index that scales each pairwise
Gini contribution by the angular difference between the two values (more
sensitive to inequality among the poor), the mean angular difference,
subgroup decomposition, a deterministic O(n^2) evaluation engine with
quantile compression, and a CSV command-line interface.
"""

__version__ = "0.1.0"

from .core import (
    angular_difference,
    compute,
    gini,
    mean_angular_difference,
    pair_contribution,
    vega,
)
from .decomposition import DecompositionReport, decompose
from .engine import ComputePlan, QuantileSummary, compress, evaluate
from .harness import (
    GeneratorSpec,
    Transfer,
    angular_mean_witness,
    apply_transfer,
    diminishing_transfer_check,
    generate,
    oracle,
)
from .sample import (
    GroupedSample,
    IndexReport,
    Sample,
    ValidationVerdict,
    validate,
)

__all__ = [
    "Sample",
    "GroupedSample",
    "IndexReport",
    "ValidationVerdict",
    "validate",
    "angular_difference",
    "pair_contribution",
    "gini",
    "vega",
    "mean_angular_difference",
    "compute",
    "decompose",
    "DecompositionReport",
    "ComputePlan",
    "QuantileSummary",
    "compress",
    "evaluate",
    "GeneratorSpec",
    "generate",
    "Transfer",
    "apply_transfer",
    "oracle",
    "diminishing_transfer_check",
    "angular_mean_witness",
    "__version__",
]
