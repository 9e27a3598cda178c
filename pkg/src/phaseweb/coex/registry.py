"""Meta-sensor registry, co-exclusion and symmetric propagation.

State propagates up the hierarchy with the *symmetric* rule: an arity-2
meta-sensor flips when exactly one of its two constituents flips, and stays
put when both (or neither) flip. One orientation of ``s1s2`` then stands for
the dual ``s1 + ~s2 <-> ~s1 + s2`` and the other for ``s1 + s2 <-> ~s1 + ~s2``.
For other arities the same rule is applied as parity (odd number of flipped
constituents), which coincides with "exactly one of two" at arity 2.

Two other propagation models are conceivable and deliberately not offered:
flipping the meta-sensor only when *both* constituents flip (which leaves the
dual states undefined), and slaving it to one chosen constituent (which makes
every abstraction ape a primitive sensor and needs an arbitrary choice).
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from typing import Iterable, Optional, Sequence

from ..algebra import Multivector
from ..errors import LevelError, PhaseWebError, RegistryError
from .ids import combine_digests, dual_id, dual_text, meta_key

KINDS = ("pancake", "ortho", "icarian", "morphic")
ROLES = ("sensor", "goal")


@dataclass(eq=False, slots=True)
class Sensor:
    """A level-0 node. ``index`` is its basis vector; ``None`` for a scalar node."""

    name: str
    orientation: int = 1
    role: str = "sensor"
    index: Optional[int] = None
    level: int = 0
    support: frozenset = field(init=False, repr=False)

    def __post_init__(self):
        self.support = frozenset() if self.index is None else frozenset((self.index,))

    @property
    def key(self) -> str:
        return self.name

    def to_json(self) -> dict:
        return {"name": self.name, "orientation": self.orientation, "role": self.role, "index": self.index}


@dataclass(eq=False, slots=True)
class MetaSensor:
    action_id: str
    dual_id: tuple
    constituents: tuple  # ((key, level), ...) in sorted-key order
    level: int
    kind: str
    support: frozenset
    orientation: int = 1
    role: str = "sensor"
    evidence: tuple = ()
    key: str = field(init=False)

    def __post_init__(self):
        self.key = meta_key(self.action_id, self.dual_id)

    @property
    def arity(self) -> int:
        return len(self.constituents)

    def constituent_keys(self) -> list:
        return [k for k, _ in self.constituents]

    def to_json(self) -> dict:
        return {
            "key": self.key,
            "action_id": self.action_id,
            "dual_id": dual_text(self.dual_id),
            "level": self.level,
            "kind": self.kind,
            "role": self.role,
            "orientation": self.orientation,
            "constituents": [{"ref": k, "level": lv} for k, lv in self.constituents],
        }


@dataclass(frozen=True)
class LevelDescriptor:
    level: int
    kind: str
    sources: tuple  # (("S" | "G", level), ...)

    def to_json(self) -> dict:
        return {"level": self.level, "kind": self.kind, "sources": [list(s) for s in self.sources]}


class Registry:
    """Mutable store of sensors and meta-sensors. Single writer."""

    def __init__(self):
        self.nodes: dict = {}
        self.levels: list = []
        self._next_index = 1
        # (sorted constituent keys, dual) -> meta key; avoids rehashing on lookups
        self._index: dict = {}

    def __contains__(self, key) -> bool:
        return key in self.nodes

    def __getitem__(self, key):
        try:
            return self.nodes[key]
        except KeyError:
            raise RegistryError(f"unknown node {key!r}") from None

    def __len__(self) -> int:
        return len(self.nodes)

    @property
    def sensors(self) -> list:
        return [v for v in self.nodes.values() if isinstance(v, Sensor)]

    @property
    def metas(self) -> list:
        return [v for v in self.nodes.values() if isinstance(v, MetaSensor)]

    @property
    def n(self) -> int:
        """Number of basis vectors handed out so far."""
        return self._next_index - 1

    def add_sensor(self, name: str, orientation: int = 1, role: str = "sensor") -> Sensor:
        if name in self.nodes:
            node = self.nodes[name]
            if not isinstance(node, Sensor):
                raise RegistryError(f"{name!r} names a meta-sensor")
            return node
        if role not in ROLES:
            raise PhaseWebError(f"unknown role {role!r}")
        s = Sensor(name, orientation, role, self._allocate_index())
        self.nodes[name] = s
        return s

    def add_scalar(self, name: str, orientation: int = 1) -> Sensor:
        """A level-0 node with no basis vector (its shadow is the scalar 1)."""
        if name in self.nodes:
            return self.nodes[name]
        s = Sensor(name, orientation, "sensor", None)
        self.nodes[name] = s
        return s

    def _allocate_index(self) -> int:
        i = self._next_index
        self._next_index += 1
        return i

    def lookup(self, keys: Sequence[str], polarities: Optional[Sequence[int]] = None) -> Optional[MetaSensor]:
        order = sorted(range(len(keys)), key=lambda i: keys[i])
        skeys = tuple(keys[i] for i in order)
        pols = (1,) * len(keys) if polarities is None else tuple(polarities[i] for i in order)
        key = self._index.get((skeys, dual_id(pols)))
        return None if key is None else self.nodes[key]

    def orientation(self, key: str) -> int:
        return self[key].orientation

    def shadow(self, key: str, n: Optional[int] = None) -> Multivector:
        """Algebra image of a node: the blade on the union of its base sensors."""
        node = self[key]
        n = self.n if n is None else n
        return Multivector(n, {tuple(sorted(node.support)): 1})

    def coexclude(
        self,
        constituents: Sequence[str],
        polarities: Optional[Sequence[int]] = None,
        *,
        allow_unary: bool = False,
        evidence: Iterable = (),
    ) -> MetaSensor:
        return coexclude(self, constituents, polarities, allow_unary=allow_unary, evidence=evidence)

    def to_json(self) -> dict:
        return {
            "sensors": [s.to_json() for s in self.sensors],
            "metas": [m.to_json() for m in self.metas],
            "levels": [lv.to_json() for lv in self.levels],
        }

    def to_dot(self) -> str:
        q = json.dumps
        lines = ["digraph registry {", "  rankdir=BT;"]
        for s in self.sensors:
            lines.append(f"  {q(s.key)} [shape=circle];")
        for m in self.metas:
            label = f"{m.action_id[:8]}:{dual_text(m.dual_id)}\\nL{m.level} {m.kind}"
            lines.append(f'  {q(m.key)} [shape=box, label="{label}"];')
        for m in self.metas:
            for k, _ in m.constituents:
                lines.append(f"  {q(k)} -> {q(m.key)};")
        lines.append("}")
        return "\n".join(lines) + "\n"


def _kind_for(nodes: list, level: int) -> str:
    goals = sum(n.role == "goal" for n in nodes)
    if goals == len(nodes):
        return "icarian"
    if goals:
        return "morphic"
    if all(n.level == level - 1 for n in nodes):
        return "pancake"
    return "ortho"


def coexclude(
    registry: Registry,
    constituents: Sequence[str],
    polarities: Optional[Sequence[int]] = None,
    *,
    allow_unary: bool = False,
    evidence: Iterable = (),
) -> MetaSensor:
    """Register the co-exclusion of ``constituents`` and return its meta-sensor.

    Registering an already-known (action, dual) returns the existing node.
    Arity 1 is accepted only with ``allow_unary``; applied to a scalar node it
    mints a fresh basis vector, which is how a sensor first arises from the
    scalar level.
    """
    keys = list(constituents)
    if len(keys) < 1 or (len(keys) == 1 and not allow_unary):
        raise PhaseWebError(f"co-exclusion needs at least 2 constituents, got {len(keys)}")
    if len(set(keys)) != len(keys):
        raise PhaseWebError(f"repeated constituent in {keys}")
    if polarities is None:
        polarities = (1,) * len(keys)
    if len(polarities) != len(keys):
        raise PhaseWebError("one polarity per constituent")
    nodes = [registry[k] for k in keys]
    order = sorted(range(len(keys)), key=lambda i: keys[i])
    skeys = tuple(keys[i] for i in order)
    dual = dual_id(tuple(polarities[i] for i in order))
    existing = registry._index.get((skeys, dual))
    if existing is not None:
        return registry.nodes[existing]
    return _register(registry, skeys, dual, [nodes[i] for i in order], tuple(evidence))


def _register(registry: Registry, skeys: tuple, dual: tuple, nodes: list, evidence: tuple) -> MetaSensor:
    """Store a new meta-sensor; ``skeys`` sorted, ``dual`` normalized, not yet registered."""
    levels = [n.level for n in nodes]
    level = max(levels) + 1
    kind = _kind_for(nodes, level)
    support = nodes[0].support.union(*[n.support for n in nodes[1:]])
    if len(nodes) == 1 and not support:
        support = frozenset((registry._allocate_index(),))
    meta = MetaSensor(
        combine_digests(skeys), dual, tuple(zip(skeys, levels)), level, kind, support,
        1, "goal" if kind == "icarian" else "sensor", evidence,
    )
    if meta.key in registry.nodes:
        raise RegistryError(f"digest collision on {meta.key}")
    registry.nodes[meta.key] = meta
    registry._index[(skeys, dual)] = meta.key
    return meta


def propagate(registry: Registry, flipped: Iterable[str]) -> set:
    """Flip the given base sensors and cascade through the meta-sensors.

    Returns the keys of the meta-sensors that flipped.
    """
    changed = set(flipped)
    for key in changed:
        node = registry[key]
        if not isinstance(node, Sensor):
            raise RegistryError(f"{key!r} is not a base sensor")
        node.orientation = -node.orientation
    out = set()
    for meta in sorted(registry.metas, key=lambda m: m.level):
        hits = sum(1 for k, _ in meta.constituents if k in changed)
        if hits % 2 == 1:
            meta.orientation = -meta.orientation
            changed.add(meta.key)
            out.add(meta.key)
    return out


def register_level(
    registry: Registry, kind: str, sources: Sequence, level: Optional[int] = None
) -> LevelDescriptor:
    """Record how hierarchy level ``level`` is built from lower levels.

    ``sources`` is a sequence of ``(space, level)`` with space ``"S"`` for
    sensor nodes or ``"G"`` for goal nodes.
    """
    if kind not in KINDS:
        raise LevelError(f"unknown hierarchy kind {kind!r}")
    srcs = tuple((str(sp).upper(), int(lv)) for sp, lv in sources)
    if not srcs:
        raise LevelError("a level needs at least one source")
    if any(sp not in ("S", "G") for sp, _ in srcs):
        raise LevelError(f"source spaces must be 'S' or 'G', got {srcs}")
    if level is None:
        level = max(lv for _, lv in srcs) + 1
    if any(lv < 0 or lv >= level for _, lv in srcs):
        raise LevelError(f"every source level must lie below level {level}: {srcs}")
    spaces = {sp for sp, _ in srcs}
    if kind == "pancake" and (spaces != {"S"} or any(lv != level - 1 for _, lv in srcs) or len(srcs) < 2):
        raise LevelError("pancake levels are S(i-1) x S(i-1)")
    if kind == "ortho" and spaces != {"S"}:
        raise LevelError("ortho levels combine sensor spaces only")
    if kind == "icarian" and spaces != {"G"}:
        raise LevelError("icarian levels combine goal spaces only")
    if kind == "morphic" and spaces != {"S", "G"}:
        raise LevelError("morphic levels mix sensor and goal spaces")
    desc = LevelDescriptor(level, kind, srcs)
    registry.levels.append(desc)
    return desc
