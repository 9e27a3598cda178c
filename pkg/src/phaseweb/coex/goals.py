"""Goals trickling down the hierarchy.

A goal asks a node to reach an orientation. Under symmetric propagation a
meta-sensor flips when one of its constituents flips, so a goal on it becomes
a subgoal on exactly one constituent, picked at random. If that does not work
out (the environment refused, or the cascade undid it) the other constituent
is tried, alternating until the goal is met or the budget runs out. Each
subgoal issued costs one unit of budget. Outstanding subgoals are retracted
as soon as the root goal is met or the budget reaches zero. Nothing is
guaranteed: a goal is best effort.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field
from typing import Iterable

from ..errors import PhaseWebError
from .registry import Registry, Sensor, propagate

PENDING, SATISFIED, ABANDONED = "pending", "satisfied", "abandoned"


@dataclass
class Goal:
    target: str
    desired_orientation: int
    budget: int = 16
    status: str = PENDING

    def __post_init__(self):
        if self.desired_orientation not in (1, -1):
            raise PhaseWebError("desired orientation must be +1 or -1")


@dataclass
class TrickleResult:
    status: str
    trace: list = field(default_factory=list)
    budget_left: int = 0

    def to_json(self) -> dict:
        return {"status": self.status, "budget_left": self.budget_left, "trace": self.trace}


def trickle(goal: Goal, registry: Registry, seed: int = 0, frozen: Iterable[str] = ()) -> TrickleResult:
    """Pursue ``goal``; sensors in ``frozen`` refuse to flip."""
    registry[goal.target]  # raises for unknown targets
    rng = random.Random(seed)
    frozen = frozenset(frozen)
    trace: list = []

    def done() -> bool:
        return registry.orientation(goal.target) == goal.desired_orientation

    def log(event, key, depth):
        trace.append({"step": len(trace), "event": event, "node": key, "depth": depth})

    def pursue(key: str, depth: int) -> bool:
        node = registry[key]
        start = node.orientation
        if isinstance(node, Sensor):
            if key in frozen or node.index is None:
                log("refused", key, depth)
                return False
            propagate(registry, {key})
            log("flip", key, depth)
            return True
        parts = node.constituent_keys()
        first = rng.randrange(len(parts))
        tries = 0
        while node.orientation == start:
            if done() and depth > 0:
                log("retract", key, depth)
                return False
            if goal.budget <= 0:
                if depth > 0:
                    log("retract", key, depth)
                return False
            child = parts[(first + tries) % len(parts)]
            tries += 1
            goal.budget -= 1
            log("subgoal", child, depth + 1)
            pursue(child, depth + 1)
        return True

    if done():
        goal.status = SATISFIED
    elif goal.budget <= 0:
        goal.status = ABANDONED
    else:
        pursue(goal.target, 0)
        goal.status = SATISFIED if done() else ABANDONED
    return TrickleResult(goal.status, trace, goal.budget)
