"""Lifted bounds and desk-scale solvers for Hopfield-form ground-state energies.

The positive form is ``max ||H x||_2`` and the negative form ``min ||H x||_2``
over ``x in {-1/sqrt(n), +1/sqrt(n)}^n`` for an ``m x n`` matrix ``H``.
"""

from ._backend import BACKEND
from .bounds import (
    BoundResult,
    baseline_bounds,
    gamma_hat,
    lifted_lower_bound,
    lifted_upper_bound,
    minimize_scalar,
    negative_objective,
    positive_objective,
)
from .ensemble import (
    ComparisonSample,
    EnsembleConfig,
    EnsembleSummary,
    comparison_smoke_test,
    concentration_report,
    run_ensemble,
)
from .errors import CapacityError, DomainError, EvaluationError
from .exact import (
    HopfieldInstance,
    evaluate,
    exact_ground_state,
    exact_ground_state_naive,
    read_matrix,
    sample_instance,
    write_matrix,
)
from .model import Ensemble, Form, GroundStateResult, Method
from .search import SearchConfig, Strategy, bit_flip_search
from .special import erfc

__version__ = "0.1.0"
