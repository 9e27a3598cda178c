"""Event traces and the sliding-window event buffer.

The buffer holds at most one resident per sensor: the most recent flip of
that sensor, provided it happened no more than ``window`` time units before
the newest event. When an event arrives, every (arity-1)-subset of the other
residents forms a co-exclusion with it. Both members of such a set just
flipped, so the opposite co-occurrence held before they entered the buffer;
that pair of co-occurrences is exactly the co-exclusion.

Work per event is bounded by the buffer size, and the buffer never holds more
than one entry per distinct sensor, so a trace is processed in time linear in
its length.
"""

from __future__ import annotations

import json
from collections import OrderedDict
from dataclasses import dataclass
from itertools import combinations
from math import comb
from typing import IO, Iterable, Optional

from ..errors import TraceError
from .registry import MetaSensor, Registry, _register

DEFAULT_COMBINATION_CAP = 4096


def _by_sensor(ev):
    return ev.sensor


@dataclass(frozen=True)
class Event:
    sensor: str
    value: int
    t: float

    def __post_init__(self):
        if self.value not in (1, -1):
            raise TraceError(f"event value must be 1 or -1, got {self.value!r}")
        if self.t < 0:
            raise TraceError(f"negative timestamp {self.t}")

    @classmethod
    def from_json(cls, rec: dict) -> "Event":
        try:
            return cls(str(rec["sensor"]), int(rec["value"]), float(rec["t"]))
        except (KeyError, TypeError, ValueError) as exc:
            raise TraceError(f"bad event record {rec!r}: {exc}") from None

    def to_json(self) -> dict:
        return {"t": self.t, "sensor": self.sensor, "value": self.value}


def read_trace(lines: Iterable[str]) -> list:
    """Parse line-delimited JSON events; blank lines are skipped."""
    events = []
    last = None
    for lineno, line in enumerate(lines, 1):
        line = line.strip()
        if not line:
            continue
        try:
            rec = json.loads(line)
        except json.JSONDecodeError as exc:
            raise TraceError(f"line {lineno}: {exc}") from None
        e = Event.from_json(rec)
        if last is not None and e.t < last:
            raise TraceError(f"line {lineno}: timestamp {e.t} precedes {last}")
        last = e.t
        events.append(e)
    return events


def load_trace(path) -> list:
    with open(path, encoding="utf-8") as fh:
        return read_trace(fh)


def write_trace(events: Iterable[Event], fh: IO[str]) -> None:
    for e in events:
        fh.write(json.dumps(e.to_json(), sort_keys=True) + "\n")


class EventBuffer:
    """Sliding ``window`` over sensor flips.

    ``arity`` is the size of the co-exclusions discovered. ``arity=None``
    instantiates co-exclusions of every size over the buffer contents, refusing
    any single event that would need more than ``combination_cap`` subsets.
    """

    def __init__(self, window: float, arity: Optional[int] = 2, combination_cap: int = DEFAULT_COMBINATION_CAP):
        if window < 0:
            raise TraceError(f"window must be non-negative, got {window}")
        if arity is not None and arity < 2:
            raise TraceError(f"arity must be at least 2, got {arity}")
        self.window = window
        self.arity = arity
        self.combination_cap = combination_cap
        self.residents: OrderedDict = OrderedDict()  # sensor -> Event, oldest first
        self.last_value: dict = {}
        self.last_t: Optional[float] = None
        self.count = 0

    def __len__(self) -> int:
        return len(self.residents)

    def _evict(self, now: float) -> None:
        res = self.residents
        while res:
            oldest = next(iter(res.values()))
            if now - oldest.t > self.window:
                res.popitem(last=False)
            else:
                break

    def _subset_sizes(self, others: int) -> list:
        if self.arity is not None:
            return [self.arity - 1] if self.arity - 1 <= others else []
        total = sum(comb(others, k) for k in range(1, others + 1))
        if total > self.combination_cap:
            raise TraceError(f"{total} co-exclusions for one event exceeds cap {self.combination_cap}")
        return list(range(1, others + 1))

    def ingest(self, e: Event, registry: Registry) -> list:
        return ingest(self, e, registry)


def ingest(buffer: EventBuffer, e: Event, registry: Registry) -> list:
    """Push ``e`` through the buffer; return the meta-sensors it newly registers."""
    if buffer.last_t is not None and e.t < buffer.last_t:
        raise TraceError(f"timestamp {e.t} precedes {buffer.last_t}")
    if buffer.last_value.get(e.sensor) == e.value:
        raise TraceError(f"{e.sensor} is already {e.value:+d}; events must be flips")

    buffer._evict(e.t)
    buffer.residents.pop(e.sensor, None)
    registry.add_sensor(e.sensor).orientation = e.value

    new = []
    others = list(buffer.residents.values())
    index = registry._index
    nodes = registry.nodes
    if buffer.arity == 2:
        # pairs: the normalized dual of (a, b) is (+1, a.value * b.value)
        name = e.sensor
        for o in others:
            a, b = (o, e) if o.sensor < name else (e, o)
            skeys = (a.sensor, b.sensor)
            dual = (1, a.value * b.value)
            if (skeys, dual) not in index:
                new.append(_register(registry, skeys, dual, [nodes[skeys[0]], nodes[skeys[1]]], (a, b)))
        others = ()
    for size in buffer._subset_sizes(len(others)) if others else ():
        for combo in combinations(others, size):
            group = sorted(combo + (e,), key=_by_sensor)
            skeys = tuple(ev.sensor for ev in group)
            flip = -1 if group[0].value == -1 else 1
            dual = tuple(ev.value * flip for ev in group)
            if (skeys, dual) not in index:
                new.append(_register(registry, skeys, dual, [nodes[k] for k in skeys], tuple(group)))

    buffer.residents[e.sensor] = e
    buffer.last_value[e.sensor] = e.value
    buffer.last_t = e.t
    buffer.count += 1
    return new


def discover(events: Iterable[Event], window: float, arity: Optional[int] = 2,
             registry: Optional[Registry] = None) -> Registry:
    """Run a whole trace through a fresh buffer."""
    registry = Registry() if registry is None else registry
    buf = EventBuffer(window, arity)
    for e in events:
        ingest(buf, e, registry)
    return registry


def discovered_keys(registry: Registry) -> set:
    return {(m.action_id, m.dual_id) for m in registry.metas if isinstance(m, MetaSensor)}
