"""Boundary and coboundary operators on the graded blade space.

``boundary`` drops one index at a time with alternating sign and sends each
basis vector to the scalar 1 (the augmentation), so the complex is the
augmented simplicial chain complex of the full simplex on ``n`` vertices.
``coboundary`` is its transpose under the pairing in which distinct blades are
orthogonal and each blade pairs to 1 with itself.

Neither operator looks at the signature; the ``sig`` arguments are accepted so
that call sites read uniformly with the product-based identities.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from itertools import combinations
from math import comb
from typing import Optional

import numpy as np

from . import gf3
from .algebra import Multivector, SigLike, as_signature, blade_text, geometric_product
from .errors import GradeError

MAX_LADDER_SENSORS = 8


def blades_of_grade(n: int, g: int) -> list:
    """Canonical blades of grade ``g`` in lexicographic order."""
    return list(combinations(range(1, n + 1), g))


def boundary(a: Multivector, sig: Optional[SigLike] = None) -> Multivector:
    out: dict = {}
    for blade, c in a.items():
        for k in range(len(blade)):
            face = blade[:k] + blade[k + 1:]
            v = (out.get(face, 0) + (c if k % 2 == 0 else -c)) % 3
            if v:
                out[face] = v
            else:
                out.pop(face, None)
    return Multivector(a.n, out)


def coboundary(a: Multivector, n: Optional[int] = None) -> Multivector:
    n = a.n if n is None else n
    if n != a.n:
        a = a.with_universe(n)
    out: dict = {}
    for blade, c in a.items():
        if len(blade) >= n:
            raise GradeError(f"cannot raise grade of {blade_text(blade)} in a universe of {n} sensors")
        present = set(blade)
        for i in range(1, n + 1):
            if i in present:
                continue
            cof = tuple(sorted(present | {i}))
            k = cof.index(i)
            v = (out.get(cof, 0) + (c if k % 2 == 0 else -c)) % 3
            if v:
                out[cof] = v
            else:
                out.pop(cof, None)
    return Multivector(n, out)


@dataclass(frozen=True)
class BoundaryMatrix:
    grade_from: int
    grade_to: int
    n: int
    rows: list
    cols: list
    entries: np.ndarray = field(repr=False, compare=False)

    @property
    def shape(self):
        return self.entries.shape

    def apply(self, a: Multivector) -> Multivector:
        """Act on the grade-``grade_from`` part of ``a`` through coordinates."""
        x = np.array([a.coeff(b) for b in self.cols], dtype=np.int64)
        y = self.entries @ x % 3 if self.cols else np.zeros(len(self.rows), dtype=np.int64)
        return Multivector(self.n, {b: int(v) for b, v in zip(self.rows, y) if v})

    def to_json(self) -> dict:
        return {
            "grade_from": self.grade_from,
            "grade_to": self.grade_to,
            "n": self.n,
            "rows": [blade_text(b) for b in self.rows],
            "cols": [blade_text(b) for b in self.cols],
            "entries": self.entries.astype(int).tolist(),
        }


def boundary_matrix(g: int, n: int, pairwise: bool = False) -> BoundaryMatrix:
    """Coefficient matrix of the boundary from grade ``g`` to grade ``g - 1``.

    Columns are the grade-``g`` blades, rows the grade-``g - 1`` blades, both
    in lexicographic order. With ``pairwise=True`` the variant that removes
    two indices at a time with no sign alternation is built instead
    (target grade ``g - 2``); that variant is not a differential.
    """
    if not 1 <= g <= n:
        raise GradeError(f"grade {g} outside 1..{n}")
    step = 2 if pairwise else 1
    if g - step < 0:
        raise GradeError(f"pairwise boundary needs grade >= 2, got {g}")
    cols = blades_of_grade(n, g)
    rows = blades_of_grade(n, g - step)
    row_of = {b: r for r, b in enumerate(rows)}
    M = np.zeros((len(rows), len(cols)), dtype=np.int64)
    for j, blade in enumerate(cols):
        if pairwise:
            for drop in combinations(range(g), 2):
                face = tuple(x for k, x in enumerate(blade) if k not in drop)
                M[row_of[face], j] = (M[row_of[face], j] + 1) % 3
        else:
            for k in range(g):
                face = blade[:k] + blade[k + 1:]
                M[row_of[face], j] = 1 if k % 2 == 0 else 2
    return BoundaryMatrix(g, g - step, n, rows, cols, M)


def _boundary_entries(g: int, n: int) -> np.ndarray:
    """Boundary matrix at any grade 0..n+1, empty where the map is trivial."""
    if 1 <= g <= n:
        return boundary_matrix(g, n).entries
    if g == 0:
        return np.zeros((0, 1), dtype=np.int64)
    return np.zeros((comb(n, n), 0), dtype=np.int64)


def coboundary_matrix(g: int, n: int) -> np.ndarray:
    """Matrix of the coboundary from grade ``g`` to ``g + 1``."""
    if not 0 <= g < n:
        raise GradeError(f"grade {g} outside 0..{n - 1}")
    return boundary_matrix(g + 1, n).entries.T.copy()


@dataclass(frozen=True)
class LadderGrade:
    grade: int
    dim: int
    boundary_rank: int
    boundary_kernel: int
    coboundary_rank: int
    coboundary_kernel: int
    reduced_homology: int
    reduced_cohomology: int
    kernel_overlap: int


@dataclass(frozen=True)
class LadderReport:
    n: int
    signature: str
    grades: list
    boundary_squares_zero: bool

    def to_json(self) -> dict:
        return {
            "n": self.n,
            "signature": self.signature,
            "boundary_squares_zero": self.boundary_squares_zero,
            "grades": [vars(g) for g in self.grades],
        }

    def to_dot(self) -> str:
        lines = [f'digraph ladder_{self.n} {{', "  rankdir=TB;", "  node [shape=box];"]
        for g in self.grades:
            lines.append(
                f'  H{g.grade} [label="chains grade {g.grade}\\ndim {g.dim}, ker d {g.boundary_kernel}"];'
            )
            lines.append(
                f'  C{g.grade} [label="cochains grade {g.grade}\\ndim {g.dim}, ker delta {g.coboundary_kernel}"];'
            )
            lines.append(f'  H{g.grade} -> C{g.grade} [dir=both, style=dashed, label="overlap {g.kernel_overlap}"];')
        for g in self.grades[1:]:
            lines.append(f'  H{g.grade} -> H{g.grade - 1} [label="d"];')
            lines.append(f'  C{g.grade - 1} -> C{g.grade} [label="delta"];')
        lines.append("}")
        return "\n".join(lines) + "\n"


def ladder_report(n: int, sig: SigLike = 1) -> LadderReport:
    """Ranks, kernels and (co)homology of the augmented complex on ``n`` sensors.

    ``kernel_overlap`` is ``dim(ker d_g ∩ ker delta_g)``; it is reported
    without any expected value.
    """
    if not 1 <= n <= MAX_LADDER_SENSORS:
        raise GradeError(f"ladder supports 1..{MAX_LADDER_SENSORS} sensors, got {n}")
    sig = as_signature(sig, n)
    d = {g: _boundary_entries(g, n) for g in range(0, n + 2)}
    ranks = {g: gf3.rank(d[g]) for g in d}
    squares_zero = all(
        not gf3.matmul(boundary_matrix(g - 1, n).entries, boundary_matrix(g, n).entries).any()
        for g in range(2, n + 1)
    )
    rows = []
    for g in range(0, n + 1):
        dim = comb(n, g)
        r_down = ranks[g]
        r_up = ranks[g + 1]  # rank of delta_g equals rank of d_{g+1}
        ker_d = dim - r_down
        ker_delta = dim - r_up
        stacked = np.vstack([d[g].reshape(-1, dim), d[g + 1].T.reshape(-1, dim)])
        overlap = dim - gf3.rank(stacked)
        rows.append(
            LadderGrade(
                grade=g,
                dim=dim,
                boundary_rank=r_down,
                boundary_kernel=ker_d,
                coboundary_rank=r_up,
                coboundary_kernel=ker_delta,
                reduced_homology=ker_d - r_up,
                reduced_cohomology=ker_delta - r_down,
                kernel_overlap=overlap,
            )
        )
    return LadderReport(n, sig.label(), rows, squares_zero)


def coex_identity_sides(sig: SigLike = 1, indices=(1, 2, 3), n: Optional[int] = None) -> tuple:
    """Both sides of d(s_i s_j s_k) = -[d(s_i s_j) s_k + d(s_j s_k) s_i + d(s_k s_i) s_j]."""
    if n is None:
        n = sig.n if hasattr(sig, "n") else max(indices)
    if n < 3:
        raise GradeError(f"the decomposition identity needs at least 3 sensors, got {n}")
    if len(set(indices)) != 3:
        raise GradeError(f"need three distinct sensors, got {indices}")
    sig = as_signature(sig, n)
    i, j, k = indices

    def blade(*idx):
        return Multivector.blade(n, idx, sig)

    lhs = boundary(blade(i, j, k))
    rhs = -(
        geometric_product(boundary(blade(i, j)), blade(k), sig)
        + geometric_product(boundary(blade(j, k)), blade(i), sig)
        + geometric_product(boundary(blade(k, i)), blade(j), sig)
    )
    return lhs, rhs


def coex_identity_check(sig: SigLike = 1, indices=(1, 2, 3), n: Optional[int] = None) -> bool:
    lhs, rhs = coex_identity_sides(sig, indices, n)
    return lhs == rhs
