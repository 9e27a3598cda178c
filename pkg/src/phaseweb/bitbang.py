"""Replay of the Bit Bang derivation and the three-sensor analysis that follows it.

Each derivation step carries a check that is evaluated through the algebra
(Z3 arithmetic, the registry's co-exclusion, geometric products) rather than
stored as a constant. Level subscripts map to algebra shadows: ``1_0`` is the
scalar 1, ``1_1`` a sensor ``s``, ``1_2`` the bivector ``s1s2``.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from itertools import combinations
from typing import Callable, Sequence

from .algebra import Multivector, SigLike, Z3, as_signature, geometric_product, z3_signed
from .coex.registry import Registry, coexclude, propagate
from .errors import NotABlade, PhaseWebError

RULES = ("void-split", "mod3-sum", "arity1-coex", "true-coex")


@dataclass
class DerivationStep:
    index: int
    symbol: str
    rule: str
    justification: str
    check: Callable[[], bool] = field(repr=False, compare=False)
    commentary: str = ""

    def verify(self) -> bool:
        return bool(self.check())

    def to_json(self) -> dict:
        return {
            "index": self.index,
            "symbol": self.symbol,
            "rule": self.rule,
            "justification": self.justification,
            "holds": self.verify(),
            "commentary": self.commentary,
        }


def derive(branch: str = "main", sig: SigLike = -1) -> list:
    """The five steps from Void to the first spinor.

    ``branch="tilde"`` takes the alternative first step ``0 = ~0``, which
    produces ``~1_0`` first and ``1_0`` at step 2, rejoining the main branch.
    ``sig`` only affects the step-4 square, which is -1 under either sign.
    """
    if branch not in ("main", "tilde"):
        raise PhaseWebError(f"unknown branch {branch!r}")
    zero, one = Z3(0), Z3(1)
    first = one if branch == "main" else -one
    name = {1: "1_0", 2: "~1_0"}

    reg = Registry()
    sig2 = as_signature(sig, 2)

    def step3():
        # 1_0 + ~1_0 exhausts Void, then the arity-1 co-exclusion mints a sensor
        if one + (-one) != zero:
            return False
        reg.add_scalar("1_0")
        node = coexclude(reg, ["1_0"], allow_unary=True)
        shadow = reg.shadow(node.key)
        return node.level == 1 and shadow.grades() == {1}

    def step4():
        # two step-1 instances, 1_1 and ~1_1, co-excluded into 1_2
        reg.add_scalar("1_0")
        a = coexclude(reg, ["1_0"], allow_unary=True)
        reg.add_scalar("1_0'")
        b = coexclude(reg, ["1_0'"], allow_unary=True)
        top = coexclude(reg, [a.key, b.key])
        spinor = reg.shadow(top.key, n=2)
        return top.level == 2 and geometric_product(spinor, spinor, sig2) == Multivector.scalar(2, -1)

    steps = [
        DerivationStep(
            0, "Void", "void-split", "0 = 0 + 0 = ~0 = ~0 + ~0 = 0 + ~0",
            lambda: zero == zero + zero == -zero == (-zero) + (-zero) == zero + (-zero),
            "Void = 0; the first step splits it as "
            + ("0 = 0 + 0 (parts as the whole)" if branch == "main" else "0 = ~0"),
        ),
        DerivationStep(
            1, name[first.value], "void-split",
            f"{first} != 0",
            lambda: first != zero,
            "the first distinction; asking 1 + 0 instead gives no new identity beyond 1 + 0 = 1",
        ),
        DerivationStep(
            2, name[(first + first).value], "mod3-sum",
            f"{first} + {first} = {first + first}",
            lambda: first + first == -first,
            "in Z3 a thing is not the same as its parts; both 1_0 and ~1_0 now exist",
        ),
        DerivationStep(
            3, "1_1", "arity1-coex",
            "1 + ~1 = 0; arity-1 co-exclusion of 1_0 yields a sensor s",
            step3,
            "1_0 + ~1_0 -> 1_1",
        ),
        DerivationStep(
            4, "1_2", "true-coex",
            "co-exclusion of 1_1 with ~1_1 gives s1s2 and (s1s2)^2 = -1",
            step4,
            "1_1 + ~1_1 -> 1_2, the basic spinor",
        ),
    ]
    return steps


def symbols_after(steps: Sequence[DerivationStep], index: int) -> set:
    return {s.symbol for s in steps if s.index <= index and s.index >= 1}


# --- quaternions --------------------------------------------------------------

PAPER_MAPPING = ((1, 2), (2, 3), (3, 1))
CORRECTED_MAPPING = ((1, 2), (2, 3), (1, 3))


def mapping_for(sig: int) -> tuple:
    """Default (e1, e2, e3) index pairs: the printed one under -1, the corrected one under +1."""
    return PAPER_MAPPING if sig in (-1, 2) else CORRECTED_MAPPING


@dataclass
class QuaternionReport:
    signature: str
    mapping: list
    relations: list  # [{"relation": str, "holds": bool, "lhs": str, "rhs": str}]

    @property
    def all_hold(self) -> bool:
        return all(r["holds"] for r in self.relations)

    def to_json(self) -> dict:
        return {
            "signature": self.signature,
            "mapping": self.mapping,
            "all_hold": self.all_hold,
            "relations": self.relations,
        }


def _units(mapping, sig: SigLike) -> list:
    n = 3
    for m in mapping:
        n = max(n, m.n if isinstance(m, Multivector) else max(m))
    s = as_signature(sig, n)
    units = [m.with_universe(n) if isinstance(m, Multivector) else Multivector.blade(n, m, s) for m in mapping]
    if len(units) != 3:
        raise NotABlade(f"need three quaternion units, got {len(units)}")
    for u in units:
        if not u.is_blade() or u.grades() != {2}:
            raise NotABlade(f"quaternion unit {u} is not a single bivector")
    if len({u.single_term()[0] for u in units}) != 3:
        raise NotABlade("quaternion units must be distinct bivectors")
    return units


def quaternion_check(sig: SigLike = -1, mapping=None) -> QuaternionReport:
    """Evaluate the nine defining quaternion relations under ``sig``.

    ``mapping`` gives e1, e2, e3 either as index pairs (ordered products, so
    ``(3, 1)`` is ``s3s1 = -s1s3``) or as multivectors.
    """
    if mapping is None:
        mapping = mapping_for(sig if isinstance(sig, int) else z3_signed(sig.squares[0]))
    e = _units(mapping, sig)
    n = e[0].n
    s = as_signature(sig, n)
    minus_one = Multivector.scalar(n, -1)
    rel = []

    def add(text, lhs, rhs):
        rel.append({"relation": text, "holds": lhs == rhs, "lhs": str(lhs), "rhs": str(rhs)})

    def mul(a, b):
        return geometric_product(a, b, s)

    for i in range(3):
        add(f"e{i + 1}^2 = -1", mul(e[i], e[i]), minus_one)
    for i, j in combinations(range(3), 2):
        add(f"e{i + 1}e{j + 1} = -e{j + 1}e{i + 1}", mul(e[i], e[j]), -mul(e[j], e[i]))
    for i, j, k in ((0, 1, 2), (1, 2, 0), (2, 0, 1)):
        add(f"e{i + 1}e{j + 1} = e{k + 1}", mul(e[i], e[j]), e[k])
    return QuaternionReport(s.label(), [str(u) for u in e], rel)


# --- the eight spinor states ---------------------------------------------------

SPINOR_COLUMNS = ("s1s2", "s2s3", "s3s1")


@dataclass(frozen=True)
class SpinorState:
    bits: tuple  # orientations of (s1s2, s2s3, s3s1)

    @property
    def index(self) -> int:
        return sum((1 if b == 1 else 0) << (2 - k) for k, b in enumerate(self.bits))

    @property
    def parity(self) -> int:
        p = 1
        for b in self.bits:
            p *= b
        return p

    @classmethod
    def from_index(cls, i: int) -> "SpinorState":
        if not 0 <= i <= 7:
            raise PhaseWebError(f"state index {i} outside 0..7")
        return cls(tuple(1 if (i >> (2 - k)) & 1 else -1 for k in range(3)))

    def distance(self, other: "SpinorState") -> int:
        return sum(a != b for a, b in zip(self.bits, other.bits))

    def to_json(self) -> dict:
        return {"index": self.index, "bits": list(self.bits), "parity": self.parity}


def spinor_states() -> list:
    """Rows 7 down to 0."""
    return [SpinorState.from_index(i) for i in range(7, -1, -1)]


def coexclusion_pairs() -> list:
    """State pairs differing in all three bits: (7,0), (6,1), (5,2), (4,3)."""
    return [(i, 7 - i) for i in range(7, 3, -1)]


def transition_edges(flips: int) -> list:
    """Edges between states whose bit patterns differ in exactly ``flips`` places."""
    states = [SpinorState.from_index(i) for i in range(8)]
    return [(a.index, b.index) for a, b in combinations(states, 2) if a.distance(b) == flips]


def _components(vertices, edges) -> list:
    adj = {v: set() for v in vertices}
    for a, b in edges:
        adj[a].add(b)
        adj[b].add(a)
    seen, comps = set(), []
    for v in sorted(vertices):
        if v in seen:
            continue
        stack, comp = [v], set()
        while stack:
            x = stack.pop()
            if x in comp:
                continue
            comp.add(x)
            stack.extend(adj[x] - comp)
        seen |= comp
        comps.append(comp)
    return comps


def tetrahedra() -> list:
    """The two families of states connected by two-flip transitions."""
    comps = _components(range(8), transition_edges(2))
    return [sorted(c) for c in sorted(comps, key=min)]


def one_flip_connected() -> bool:
    return len(_components(range(8), transition_edges(1))) == 1


def tetrahedra_json() -> dict:
    fams = tetrahedra()
    return {
        "families": [
            {"states": f, "parity": SpinorState.from_index(f[0]).parity} for f in fams
        ],
        "coexclusion_pairs": [list(p) for p in coexclusion_pairs()],
        "two_flip_edges": [list(e) for e in transition_edges(2)],
        "one_flip_connected": one_flip_connected(),
    }


def tetrahedra_dot() -> str:
    lines = ["graph tetrahedra {"]
    for k, fam in enumerate(tetrahedra()):
        parity = SpinorState.from_index(fam[0]).parity
        lines.append(f'  subgraph cluster_{k} {{ label="parity {parity:+d}"; {" ".join(str(v) for v in fam)}; }}')
    for a, b in transition_edges(2):
        lines.append(f"  {a} -- {b};")
    for a, b in coexclusion_pairs():
        lines.append(f"  {a} -- {b} [style=dashed];")
    lines.append("}")
    return "\n".join(lines) + "\n"


# --- PCI meta-sensors ---------------------------------------------------------

PCI_COLUMNS = ("sisj", "sk", "sjsk", "si", "sksi", "sj")
PCI_NAMES = {"P": ("sisj", "sk"), "C": ("sjsk", "si"), "I": ("sksi", "sj")}
PCI_ROWS = (("si",), ("si", "sj"), ("si", "sj", "sk"))


@dataclass
class PciRow:
    flipped: tuple
    cells: dict  # column -> bool
    pci: dict  # "P"/"C"/"I" -> bool
    transformation: str

    @property
    def total(self) -> int:
        return sum(self.pci.values())

    def to_json(self) -> dict:
        return {
            "flipped": list(self.flipped),
            "cells": {c: ("x" if self.cells[c] else "-") for c in PCI_COLUMNS},
            "pci": self.pci,
            "total": self.total,
            "transformation": self.transformation,
        }


def pci_registry() -> tuple:
    """Base sensors si, sj, sk, their three pair meta-sensors, and P, C, I."""
    reg = Registry()
    for name in ("si", "sj", "sk"):
        reg.add_sensor(name)
    pairs = {
        "sisj": coexclude(reg, ["si", "sj"]).key,
        "sjsk": coexclude(reg, ["sj", "sk"]).key,
        "sksi": coexclude(reg, ["sk", "si"]).key,
    }
    cols = {**pairs, "si": "si", "sj": "sj", "sk": "sk"}
    metas = {p: coexclude(reg, [cols[a], cols[b]]).key for p, (a, b) in PCI_NAMES.items()}
    return reg, cols, metas


def pci_row(flipped: Sequence[str]) -> PciRow:
    reg, cols, metas = pci_registry()
    changed = propagate(reg, set(flipped)) | set(flipped)
    cells = {c: cols[c] in changed for c in PCI_COLUMNS}
    pci = {p: metas[p] in changed for p in PCI_NAMES}
    return PciRow(tuple(flipped), cells, pci, classify_transformation(flipped))


def pci_table() -> list:
    return [pci_row(r) for r in PCI_ROWS]


def classify_transformation(flipped: Sequence[str]) -> str:
    flipped = set(flipped)
    if not flipped:
        raise PhaseWebError("no sensors flipped")
    if not flipped <= {"si", "sj", "sk"}:
        raise PhaseWebError(f"unknown sensors {sorted(flipped - {'si', 'sj', 'sk'})}")
    return "reflection" if len(flipped) % 2 else "rotation"
