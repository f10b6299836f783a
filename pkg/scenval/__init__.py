"""Nearest-neighbour validation of machine-learning scenario generators.

Two model-agnostic statistics are provided: nearest neighbour coincidence (does the generator reproduce the
dependence structure of the empirical data?) and the memorizing ratio (does it copy its training data?), together
with their asymptotic reference values and Monte-Carlo tooling to study both.
"""
import logging
from logging.config import dictConfig

from . import loggingconfig

dictConfig(loggingconfig.logging_configuration)
log_name = ""
logger = logging.getLogger("scenval")

from ._version import __version__
from . import exceptions
from .core import Label, MeasureParams, PointSet, ValidationReport, make_point_set
from .nn_engine import NeighborTable, knn_pooled, min_cross_distance, within_set_nn_distance
from .measures import ExpectationMode, MrResult, NncResult, memorizing_ratio, nnc, validate
from .theory import mr_limit, q_closed_form, q_quadrature
from .sampling import CorrelatedLine, Density, DensityKind, Role, SeedPath, pdf, sample
from .experiments import ExperimentResult, ExperimentSpec, run_mr_convergence, run_nnc_null
from .harness import GeneratorKind, GeneratorSpec, Trajectory, generate, run_harness
from .valparams import ValParams

_scenval_provenance_stamp = {
    "creator": "scenval",
    "routine": None,
    "version": __version__,
}
