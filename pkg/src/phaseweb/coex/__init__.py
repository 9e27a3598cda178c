from .events import Event, EventBuffer, discover, discovered_keys, ingest, load_trace, read_trace, write_trace
from .goals import Goal, TrickleResult, trickle
from .ids import action_id, dual_id, dual_text, meta_key, parse_dual
from .registry import (
    KINDS,
    LevelDescriptor,
    MetaSensor,
    Registry,
    Sensor,
    coexclude,
    propagate,
    register_level,
)

__all__ = [
    "Event",
    "EventBuffer",
    "Goal",
    "KINDS",
    "LevelDescriptor",
    "MetaSensor",
    "Registry",
    "Sensor",
    "TrickleResult",
    "action_id",
    "coexclude",
    "discover",
    "discovered_keys",
    "dual_id",
    "dual_text",
    "ingest",
    "load_trace",
    "meta_key",
    "parse_dual",
    "propagate",
    "read_trace",
    "register_level",
    "trickle",
    "write_trace",
]
