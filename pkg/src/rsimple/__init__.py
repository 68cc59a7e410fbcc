"""Exact solvers for r-simple k-paths and p-set (r,q)-packing, with brute-force oracles."""

from .directed import SolverParams, solve_directed
from .errors import (BudgetExceeded, FieldTooSmall, InvalidKind, ParseError,
                     PreconditionViolated, RSimpleError, ValidationError)
from .graph import Digraph, MultiDigraph, MultiUGraph, UGraph
from .oracle import brute_packing, brute_rsimple_max, verify_walk
from .packing import PackingInstance, kernelize, solve_packing
from .undirected import UndirSolverParams, solve_undirected

__version__ = "0.1.0"

__all__ = [
    "BudgetExceeded", "Digraph", "FieldTooSmall", "InvalidKind", "MultiDigraph", "MultiUGraph",
    "PackingInstance", "ParseError", "PreconditionViolated", "RSimpleError", "SolverParams",
    "UGraph", "UndirSolverParams", "ValidationError", "brute_packing", "brute_rsimple_max",
    "kernelize", "solve_directed", "solve_packing", "solve_undirected", "verify_walk",
]
