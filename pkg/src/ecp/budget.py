from __future__ import annotations

from dataclasses import dataclass

from .errors import BudgetExceeded

DEFAULT_NODES = 10_000_000
EXTENDED_NODES = 200_000_000


@dataclass
class Budget:
    """Counts search nodes and raises once ``limit`` is exceeded.

    One instance may be shared by several searches; ``nodes`` keeps the
    running total so a caller can report it afterwards.
    """

    limit: int = DEFAULT_NODES
    nodes: int = 0

    def tick(self, n: int = 1) -> None:
        self.nodes += n
        if self.nodes > self.limit:
            raise BudgetExceeded(self.limit, self.nodes)


def resolve(budget: Budget | int | None) -> Budget:
    if budget is None:
        return Budget()
    if isinstance(budget, Budget):
        return budget
    return Budget(limit=int(budget))
