"""regkit: matrix-based OLS and dense neural-network regression.

The package exposes two solver families behind one data model: an
analytic and an iterative (Barzilai-Borwein) least-squares solver, and a
batch-trained dense feedforward network, plus CSV loading, z-score
normalization, seeded splitting, JSON model files, and a CLI.
"""

from .activations import ActivationKind, parse_activation
from .data import ColumnSchema, NormalizationStats, denormalize, load_csv, normalize, split
from .errors import (
    DataError,
    DegenerateStepError,
    DivergenceError,
    DomainError,
    ModelFormatError,
    ShapeError,
    SingularMatrixError,
    UsageError,
)
from .initializers import InitializerKind, init_biases, init_weights, make_rng, parse_initializer
from .losses import LossKind, loss, loss_gradient, parse_loss
from .model_io import LoadedModel, load_model, predict_rows, save_model
from .network import (
    ForwardCache,
    LayerSpec,
    NetworkConfig,
    NetworkState,
    TrainReport,
    forward,
    gradient_check,
    init_network,
    train,
)
from .ols import (
    GdConfig,
    GdTrace,
    OlsModel,
    OlsProblem,
    bb_learning_rate,
    build_problem,
    default_guesses,
    solve_analytic,
    solve_gd,
)
from .optimizers import OptimizerKind, OptimizerState, optimizer_step, parse_optimizer

__version__ = "0.1.0"

__all__ = [
    "ActivationKind",
    "ColumnSchema",
    "DataError",
    "DegenerateStepError",
    "DivergenceError",
    "DomainError",
    "ForwardCache",
    "GdConfig",
    "GdTrace",
    "InitializerKind",
    "LayerSpec",
    "LoadedModel",
    "LossKind",
    "ModelFormatError",
    "NetworkConfig",
    "NetworkState",
    "NormalizationStats",
    "OlsModel",
    "OlsProblem",
    "OptimizerKind",
    "OptimizerState",
    "ShapeError",
    "SingularMatrixError",
    "TrainReport",
    "UsageError",
    "bb_learning_rate",
    "build_problem",
    "default_guesses",
    "denormalize",
    "forward",
    "gradient_check",
    "init_biases",
    "init_network",
    "init_weights",
    "load_csv",
    "load_model",
    "loss",
    "loss_gradient",
    "make_rng",
    "normalize",
    "optimizer_step",
    "parse_activation",
    "parse_initializer",
    "parse_loss",
    "parse_optimizer",
    "predict_rows",
    "save_model",
    "solve_analytic",
    "solve_gd",
    "split",
    "train",
]
