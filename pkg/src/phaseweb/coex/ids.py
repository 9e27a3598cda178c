"""Names for discovered actions.

An action's dual is named by the pair ``(action_id, dual_id)``. ``action_id``
digests the multiset of constituent names and ignores their order: each name
is hashed with SHA-256, truncated to 128 bits, and the digests are summed
modulo 2**128. Addition is commutative and associative, so any ordering or
grouping of the constituents gives the same value, and the value is stable
across runs and platforms.

``dual_id`` is the polarity pattern of the constituents (in sorted-name order)
normalized so the first entry is +1; globally negated patterns describe the
same co-exclusion seen from the other side.
"""

from __future__ import annotations

import hashlib
from functools import lru_cache
from typing import Iterable, Sequence

from ..errors import PhaseWebError

DIGEST_BITS = 128
_MOD = 1 << DIGEST_BITS


@lru_cache(maxsize=None)
def name_digest(name: str) -> int:
    return int.from_bytes(hashlib.sha256(name.encode("utf-8")).digest()[: DIGEST_BITS // 8], "big")


def combine_digests(names: Iterable[str]) -> str:
    total = 0
    for name in names:
        total = (total + name_digest(name)) % _MOD
    return f"{total:0{DIGEST_BITS // 4}x}"


def action_id(names: Sequence[str]) -> str:
    names = list(names)
    if len(names) < 2:
        raise PhaseWebError(f"an action needs at least 2 constituents, got {len(names)}")
    return combine_digests(names)


def dual_id(polarities: Sequence[int]) -> tuple:
    pols = tuple(int(p) for p in polarities)
    if not pols:
        raise PhaseWebError("dual_id of an empty polarity list")
    if any(p not in (1, -1) for p in pols):
        raise PhaseWebError(f"polarities must be +1 or -1, got {pols}")
    if pols[0] == -1:
        pols = tuple(-p for p in pols)
    return pols


def dual_text(dual: Sequence[int]) -> str:
    return "".join("+" if p > 0 else "-" for p in dual)


def parse_dual(text: str) -> tuple:
    if not text or any(ch not in "+-" for ch in text):
        raise PhaseWebError(f"bad dual pattern {text!r}")
    return tuple(1 if ch == "+" else -1 for ch in text)


def meta_key(aid: str, dual: Sequence[int]) -> str:
    return f"{aid}:{dual_text(dual)}"
