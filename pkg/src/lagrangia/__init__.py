"""Hypergraph Lagrangians: evaluation, optimization, extremal constructions and checks."""

__version__ = "0.1.0"

from .hypergraph import Hypergraph, HypergraphError, build  # noqa: E402
from .lagrangian import LagrangianResult, OptimizerConfig, maximize, maximize_bounded  # noqa: E402

__all__ = ["Hypergraph", "HypergraphError", "LagrangianResult", "OptimizerConfig", "build", "maximize",
           "maximize_bounded", "__version__"]
