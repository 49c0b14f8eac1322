"""Point visibility graphs: construction, necessary conditions, planar
recognition, embedding audits and hardness reductions."""

from __future__ import annotations

from .budget import Budget
from .errors import BudgetExceeded, FormatError, InvalidInput
from .geometry import Point, PointSet, orientation
from .graph import Graph
from .visibility import BlockerMap, Embedding, build_pvg, build_pvg_naive, maximal_gsps

__all__ = [
    "BlockerMap",
    "Budget",
    "BudgetExceeded",
    "Embedding",
    "FormatError",
    "Graph",
    "InvalidInput",
    "Point",
    "PointSet",
    "build_pvg",
    "build_pvg_naive",
    "maximal_gsps",
    "orientation",
]

__version__ = "0.1.0"
