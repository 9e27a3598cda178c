"""Discriminately closed subsets and the Combinatorial Hierarchy counts.

For counting, discrimination is exclusive-or on bit vectors over the level's
basis symbols. For the Z3 listing, discrimination of two distinct blades is
their geometric product with the sign dropped; the two views are kept apart.
All counts are exact Python integers.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations
from math import comb
from typing import Optional

from .algebra import Multivector, blade_text, geometric_product
from .errors import PhaseWebError

MAX_DCS_GENERATORS = 7
MAX_CH_LEVEL = 4

NOT_REPRODUCED = (
    "137.0359674 (corrected inverse fine-structure constant) needs combinatorial corrections not modelled here",
    "1.69358e38 (electromagnetic/gravitational force ratio) needs the same corrections",
)


def discriminate(a: int, b: int) -> int:
    return a ^ b


def closure(generators) -> frozenset:
    """Smallest set containing ``generators`` closed under discrimination of distinct pairs.

    Zero (the discrimination of an element with itself) is never included.
    """
    elems = {g for g in generators if g}
    while True:
        new = {discriminate(a, b) for a, b in combinations(elems, 2)} - elems - {0}
        if not new:
            return frozenset(elems)
        elems |= new


def is_closed(elements) -> bool:
    s = set(elements)
    return 0 not in s and all((a ^ b) in s for a, b in combinations(s, 2))


@dataclass(frozen=True)
class DcsSet:
    elements: frozenset
    generators: tuple

    def __len__(self):
        return len(self.elements)

    def to_json(self) -> dict:
        return {"generators": list(self.generators), "elements": sorted(self.elements)}


def enumerate_dcs(n: int) -> list:
    """Distinct closures of all non-empty subsets of ``n`` basis symbols."""
    if not 1 <= n <= MAX_DCS_GENERATORS:
        raise PhaseWebError(f"dcs enumeration supports 1..{MAX_DCS_GENERATORS} generators, got {n}")
    basis = [1 << i for i in range(n)]
    seen: dict = {}
    for k in range(1, n + 1):
        for gens in combinations(basis, k):
            c = closure(gens)
            if c not in seen:
                seen[c] = DcsSet(c, gens)
    return list(seen.values())


@dataclass(frozen=True)
class ChTableRow:
    level: int
    symbols_b: int
    cumulative_c: int
    map_dim_d: int
    map_elements_e: Optional[int]
    comment: str
    cutoff: bool

    def to_json(self) -> dict:
        def dec(x):
            return None if x is None else str(x)

        return {
            "level": self.level,
            "symbols_b": dec(self.symbols_b),
            "cumulative_c": dec(self.cumulative_c),
            "map_dim_d": dec(self.map_dim_d),
            "map_elements_e": dec(self.map_elements_e),
            "cumulative_c_sci": sci(self.cumulative_c),
            "comment": self.comment,
            "cutoff": self.cutoff,
        }


def sci(x: int, digits: int = 6) -> str:
    """Scientific notation with ``digits`` significant figures, exact for big ints."""
    s = str(abs(x))
    if len(s) <= digits:
        return str(x)
    head = int(s[:digits + 1])
    rounded = (head + 5) // 10
    exp = len(s) - 1
    rs = str(rounded)
    if len(rs) > digits:
        rs, exp = rs[:digits], exp + 1
    return f"{'-' if x < 0 else ''}{rs[0]}.{rs[1:]}e{exp}"


def _pow_text(b: int) -> str:
    if b > 10**6 and (b + 1) & b == 0:
        return f"2^{(b + 1).bit_length() - 1} - 1"
    return str(b)


def ch_table(levels: int = MAX_CH_LEVEL) -> list:
    """Rows 1..``levels`` of the hierarchy table.

    Symbols per level follow b(1) = 3, b(l+1) = 2**b(l) - 1; map dimensions
    square each level starting from 4. The comment compares a level's map
    elements with the next level's symbol count; the hierarchy cannot continue
    past the level where the map is too small.
    """
    if not 1 <= levels <= MAX_CH_LEVEL:
        raise PhaseWebError(f"the hierarchy has levels 1..{MAX_CH_LEVEL}, got {levels}")
    bs = [3]
    for _ in range(MAX_CH_LEVEL - 1):
        bs.append(2 ** bs[-1] - 1)
    rows = []
    total, d = 0, 4
    for lv in range(1, levels + 1):
        b = bs[lv - 1]
        total += b
        if lv < MAX_CH_LEVEL:
            e = d * d
            nxt = bs[lv]
            op = ">" if e > nxt else "<"
            comment, cutoff = f"{e} {op} {_pow_text(nxt)}", False
        else:
            e, comment, cutoff = None, "cut-off reached", True
        rows.append(ChTableRow(lv, b, total, d, e, comment, cutoff))
        d = d * d
    return rows


def ch_table_json(levels: int = MAX_CH_LEVEL) -> dict:
    return {"rows": [r.to_json() for r in ch_table(levels)], "not_reproduced": list(NOT_REPRODUCED)}


def count_identity(n: int) -> bool:
    return 2**n - 1 == sum(comb(n, p) for p in range(1, n + 1))


# --- the Z3 listing -------------------------------------------------------------


def blade_discriminate(a: tuple, b: tuple, n: int) -> tuple:
    """Blade of the product ``ab`` with its sign discarded."""
    prod = geometric_product(Multivector(n, {a: 1}), Multivector(n, {b: 1}), 1)
    blade, _ = prod.single_term()
    return blade


def blade_set_closed(blades, n: int) -> bool:
    s = set(blades)
    for a, b in combinations(s, 2):
        d = blade_discriminate(a, b, n)
        if d and d not in s:
            return False
    return True


def z3_dcs_listing() -> list:
    """The displayed categories per level: singletons, pair closures, and the volume.

    Each entry is ``{"level", "sets": [[blade text, ...], ...], "closed": bool}``.
    """
    out = []
    for n in (1, 2, 3):
        sets = []
        for k in range(1, n + 1):
            for gens in combinations(range(1, n + 1), k):
                blades = {(i,) for i in gens}
                while True:
                    new = {blade_discriminate(a, b, n) for a, b in combinations(blades, 2)} - blades - {()}
                    if not new:
                        break
                    blades |= new
                sets.append(sorted(blades, key=lambda b: (len(b), b)))
        closed = all(blade_set_closed(s, n) for s in sets)
        out.append({
            "level": n,
            "sets": [[blade_text(b) if len(b) > 1 else f"s{b[0]}" if n > 1 else "s" for b in s] for s in sets],
            "closed": closed,
        })
    return out
