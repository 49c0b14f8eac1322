from __future__ import annotations

import time
from dataclasses import dataclass, field

from .errors import BudgetExceeded

DEFAULT_TIME_LIMIT = 10.0
DEFAULT_NODE_LIMIT = 10_000_000


@dataclass
class Budget:
    """Node and wall-clock allowance shared by the exhaustive searches.

    ``tick`` is called once per search node and raises :class:`BudgetExceeded`
    when either limit is hit. ``None`` disables a limit.
    """

    time_limit: float | None = DEFAULT_TIME_LIMIT
    node_limit: int | None = DEFAULT_NODE_LIMIT
    nodes: int = 0
    started: float = field(default_factory=time.perf_counter)

    def __post_init__(self) -> None:
        if self.time_limit is not None and self.time_limit <= 0:
            raise ValueError("time_limit must be positive")
        if self.node_limit is not None and self.node_limit <= 0:
            raise ValueError("node_limit must be positive")

    @classmethod
    def unlimited(cls) -> Budget:
        return cls(time_limit=None, node_limit=None)

    @property
    def elapsed(self) -> float:
        return time.perf_counter() - self.started

    def tick(self, count: int = 1) -> None:
        self.nodes += count
        if self.node_limit is not None and self.nodes > self.node_limit:
            raise BudgetExceeded(f"node limit {self.node_limit} reached")
        # checking the clock every node is measurably slow
        if self.time_limit is not None and (self.nodes & 0x3FF) == 0:
            if self.elapsed > self.time_limit:
                raise BudgetExceeded(f"time limit {self.time_limit}s reached")

    def stats(self) -> dict[str, float | int]:
        return {"nodes": self.nodes, "elapsed": round(self.elapsed, 6)}
