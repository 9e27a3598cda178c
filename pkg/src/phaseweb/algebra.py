"""Clifford algebra over Z3 on a fixed, finite set of sensors.

Sensors are basis vectors ``s1 .. sn`` (1-based). A blade is a sorted tuple of
distinct sensor indices; ``()`` is the scalar blade. Coefficients are residues
mod 3 stored as ``1`` or ``2``, where ``2`` is displayed as ``-1`` (or as a
tilde on a sensor: ``~s1`` is ``2*s1``).

The square of each basis vector is set by a :class:`Signature`; both uniform
``+1`` and uniform ``-1`` are in use, so every product takes one explicitly.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import reduce
from typing import Iterable, Mapping, Union

from .errors import GradeError, NotABlade, UniverseMismatch

Blade = tuple  # tuple[int, ...], strictly increasing


def z3(x: int) -> int:
    return x % 3


def z3_signed(x: int) -> int:
    """Map a residue to its balanced representative in {-1, 0, 1}."""
    x %= 3
    return -1 if x == 2 else x


class Z3:
    """An element of the field {0, 1, -1}."""

    __slots__ = ("value",)

    def __init__(self, value: int):
        object.__setattr__(self, "value", value % 3)

    def __setattr__(self, name, value):
        raise AttributeError("Z3 is immutable")

    def _coerce(self, other):
        if isinstance(other, Z3):
            return other.value
        if isinstance(other, int):
            return other % 3
        return NotImplemented

    def __add__(self, other):
        o = self._coerce(other)
        return NotImplemented if o is NotImplemented else Z3(self.value + o)

    __radd__ = __add__

    def __sub__(self, other):
        o = self._coerce(other)
        return NotImplemented if o is NotImplemented else Z3(self.value - o)

    def __rsub__(self, other):
        o = self._coerce(other)
        return NotImplemented if o is NotImplemented else Z3(o - self.value)

    def __mul__(self, other):
        o = self._coerce(other)
        return NotImplemented if o is NotImplemented else Z3(self.value * o)

    __rmul__ = __mul__

    def __neg__(self):
        return Z3(-self.value)

    def __eq__(self, other):
        o = self._coerce(other)
        return NotImplemented if o is NotImplemented else self.value == o

    def __hash__(self):
        return hash(("Z3", self.value))

    def __int__(self):
        return z3_signed(self.value)

    def __bool__(self):
        return self.value != 0

    def __repr__(self):
        return f"Z3({z3_signed(self.value)})"

    def __str__(self):
        return str(z3_signed(self.value))


@dataclass(frozen=True)
class Signature:
    """Square of each basis vector, as residues (1 for +1, 2 for -1)."""

    squares: tuple

    def __post_init__(self):
        sq = tuple(z3(int(v)) for v in self.squares)
        if any(v == 0 for v in sq):
            raise ValueError("basis vectors must square to +1 or -1")
        object.__setattr__(self, "squares", sq)

    @classmethod
    def uniform(cls, n: int, square: int = 1) -> "Signature":
        return cls((square,) * n)

    @property
    def n(self) -> int:
        return len(self.squares)

    def square(self, i: int) -> int:
        return self.squares[i - 1]

    def label(self) -> str:
        vals = {z3_signed(v) for v in self.squares}
        if len(vals) == 1:
            return "+1" if vals == {1} else "-1"
        return ",".join("+1" if v == 1 else "-1" for v in self.squares)


SigLike = Union[Signature, int]


def as_signature(sig: SigLike, n: int) -> Signature:
    if isinstance(sig, Signature):
        if sig.n < n:
            raise UniverseMismatch(f"signature covers {sig.n} sensors, need {n}")
        return sig
    if sig not in (1, -1, 2):
        raise ValueError(f"signature must be +1 or -1, got {sig!r}")
    return Signature.uniform(n, sig)


def blade_product(a: Blade, b: Blade, sig: Signature) -> tuple:
    """Product of two canonical blades: ``(blade, coefficient)``.

    The sign is the parity of interleaving ``b`` into ``a`` (one transposition
    per pair ``i in a, j in b`` with ``i > j``), times the square of each
    index the two have in common.
    """
    swaps = 0
    for j in b:
        for i in a:
            if i > j:
                swaps += 1
    coeff = 2 if swaps & 1 else 1
    common = set(a).intersection(b)
    for i in common:
        coeff = coeff * sig.square(i) % 3
    result = tuple(sorted(set(a).symmetric_difference(b)))
    return result, coeff


def _check_blade(blade, n):
    if any(i < 1 or i > n for i in blade):
        raise UniverseMismatch(f"blade {blade} outside universe of {n} sensors")
    if any(blade[k] >= blade[k + 1] for k in range(len(blade) - 1)):
        raise ValueError(f"blade {blade} is not in canonical order")


class Multivector:
    """Immutable map from canonical blades to nonzero Z3 coefficients."""

    __slots__ = ("n", "_terms", "_hash")

    def __init__(self, n: int, terms: Mapping | Iterable = (), *, _trusted=False):
        if _trusted:
            clean = terms
        else:
            clean = {}
            items = terms.items() if isinstance(terms, Mapping) else terms
            for blade, c in items:
                blade = tuple(blade)
                _check_blade(blade, n)
                c = z3(int(c))
                acc = (clean.get(blade, 0) + c) % 3
                if acc:
                    clean[blade] = acc
                else:
                    clean.pop(blade, None)
        object.__setattr__(self, "n", n)
        object.__setattr__(self, "_terms", clean)
        object.__setattr__(self, "_hash", None)

    def __setattr__(self, name, value):
        raise AttributeError("Multivector is immutable")

    # construction helpers

    @classmethod
    def zero(cls, n: int) -> "Multivector":
        return cls(n, {}, _trusted=True)

    @classmethod
    def scalar(cls, n: int, c: int = 1) -> "Multivector":
        c = z3(c)
        return cls(n, {(): c} if c else {}, _trusted=True)

    @classmethod
    def basis(cls, n: int, i: int) -> "Multivector":
        if not 1 <= i <= n:
            raise UniverseMismatch(f"s{i} is not one of s1..s{n}")
        return cls(n, {(i,): 1}, _trusted=True)

    @classmethod
    def blade(cls, n: int, indices: Iterable[int], sig: SigLike = 1, coeff: int = 1) -> "Multivector":
        """Ordered product ``s_i s_j ...`` of the given sensors."""
        sig = as_signature(sig, n)
        acc, c = (), z3(coeff)
        for i in indices:
            if not 1 <= i <= n:
                raise UniverseMismatch(f"s{i} is not one of s1..s{n}")
            acc, k = blade_product(acc, (i,), sig)
            c = c * k % 3
        return cls(n, {acc: c} if c else {}, _trusted=True)

    # mapping-ish access

    @property
    def terms(self) -> dict:
        return dict(self._terms)

    def items(self):
        return self._terms.items()

    def __iter__(self):
        return iter(self._terms)

    def __len__(self):
        return len(self._terms)

    def __bool__(self):
        return bool(self._terms)

    def coeff(self, blade: Iterable[int]) -> int:
        return self._terms.get(tuple(blade), 0)

    def grades(self) -> set:
        return {len(b) for b in self._terms}

    def is_blade(self) -> bool:
        return len(self._terms) == 1

    def single_term(self) -> tuple:
        if len(self._terms) != 1:
            raise NotABlade(f"{self} is not a single blade")
        return next(iter(self._terms.items()))

    def with_universe(self, n: int) -> "Multivector":
        return Multivector(n, self._terms)

    # arithmetic

    def _same(self, other):
        if not isinstance(other, Multivector):
            raise TypeError(f"expected Multivector, got {type(other).__name__}")
        if other.n != self.n:
            raise UniverseMismatch(f"universes differ: {self.n} vs {other.n} sensors")

    def __add__(self, other):
        if isinstance(other, int):
            other = Multivector.scalar(self.n, other)
        self._same(other)
        out = dict(self._terms)
        for b, c in other._terms.items():
            v = (out.get(b, 0) + c) % 3
            if v:
                out[b] = v
            else:
                del out[b]
        return Multivector(self.n, out, _trusted=True)

    __radd__ = __add__

    def __neg__(self):
        return Multivector(self.n, {b: 3 - c for b, c in self._terms.items()}, _trusted=True)

    def __sub__(self, other):
        return self + (-other)

    def scale(self, k: int) -> "Multivector":
        k = z3(k)
        if not k:
            return Multivector.zero(self.n)
        return Multivector(self.n, {b: c * k % 3 for b, c in self._terms.items()}, _trusted=True)

    def __rmul__(self, k):
        if isinstance(k, (int, Z3)):
            return self.scale(int(k) if isinstance(k, int) else k.value)
        return NotImplemented

    def __eq__(self, other):
        if isinstance(other, int):
            other = Multivector.scalar(self.n, other)
        if not isinstance(other, Multivector):
            return NotImplemented
        return self.n == other.n and self._terms == other._terms

    def __hash__(self):
        h = self._hash
        if h is None:
            h = hash((self.n, frozenset(self._terms.items())))
            object.__setattr__(self, "_hash", h)
        return h

    def sorted_terms(self) -> list:
        return sorted(self._terms.items(), key=lambda bc: (len(bc[0]), bc[0]))

    def __str__(self):
        return format_multivector(self)

    def __repr__(self):
        return f"Multivector(n={self.n}, {format_multivector(self)!r})"

    def to_json(self) -> dict:
        return {
            "n": self.n,
            "text": format_multivector(self),
            "terms": [{"blade": list(b), "coeff": z3_signed(c)} for b, c in self.sorted_terms()],
        }


def blade_text(blade: Blade) -> str:
    return "".join(f"s{i}" for i in blade) if blade else "1"


def format_multivector(a: Multivector) -> str:
    """Render in the expression grammar so that parsing gives ``a`` back."""
    if not a:
        return "0"
    parts = []
    for blade, c in a.sorted_terms():
        if not blade:
            parts.append("1" if c == 1 else "-1")
        else:
            parts.append(("~" if c == 2 else "") + blade_text(blade))
    return " + ".join(parts)


def basis(n: int) -> list:
    """``[s1, ..., sn]`` as multivectors."""
    return [Multivector.basis(n, i) for i in range(1, n + 1)]


def mv_add(a: Multivector, b: Multivector) -> Multivector:
    return a + b


def geometric_product(a: Multivector, b: Multivector, sig: SigLike) -> Multivector:
    a._same(b)
    sig = as_signature(sig, a.n)
    out: dict = {}
    for ba, ca in a._terms.items():
        for bb, cb in b._terms.items():
            blade, k = blade_product(ba, bb, sig)
            v = (out.get(blade, 0) + ca * cb * k) % 3
            if v:
                out[blade] = v
            else:
                out.pop(blade, None)
    return Multivector(a.n, out, _trusted=True)


def gp(*factors: Multivector, sig: SigLike) -> Multivector:
    """Left-to-right geometric product of any number of factors."""
    if not factors:
        raise TypeError("gp needs at least one factor")
    return reduce(lambda x, y: geometric_product(x, y, sig), factors)


def grade_project(a: Multivector, g: int) -> Multivector:
    if not 0 <= g <= a.n:
        raise GradeError(f"grade {g} outside 0..{a.n}")
    return Multivector(a.n, {b: c for b, c in a._terms.items() if len(b) == g}, _trusted=True)


def inner_outer(a: Multivector, b: Multivector, sig: SigLike) -> tuple:
    """Split the product into its lowest- and highest-grade parts.

    For blades of grades r and s these are the grade ``|r - s|`` and grade
    ``r + s`` components of ``ab``; general arguments are handled blade pair
    by blade pair.
    """
    a._same(b)
    sig = as_signature(sig, a.n)
    inner = Multivector.zero(a.n)
    outer = Multivector.zero(a.n)
    for ba, ca in a._terms.items():
        for bb, cb in b._terms.items():
            blade, k = blade_product(ba, bb, sig)
            term = Multivector(a.n, {blade: ca * cb * k % 3}, _trusted=True)
            # a scalar operand puts the term in both grade slots; count it once
            if len(blade) == len(ba) + len(bb):
                outer = outer + term
            elif len(blade) == abs(len(ba) - len(bb)):
                inner = inner + term
    return inner, outer


def reverse(a: Multivector) -> Multivector:
    out = {}
    for blade, c in a._terms.items():
        m = len(blade)
        out[blade] = c if (m * (m - 1) // 2) % 2 == 0 else 3 - c
    return Multivector(a.n, out, _trusted=True)


def apply_action(spinor: Multivector, state: Multivector, sig: SigLike) -> Multivector:
    """Sandwich ``spinor * state * reverse(spinor)``."""
    blade, _ = spinor.single_term()
    if len(blade) < 2:
        raise NotABlade(f"spinor must be a blade of grade >= 2, got {spinor}")
    return gp(spinor, state, reverse(spinor), sig=sig)


class Algebra:
    """Convenience bundle of a universe size and a signature."""

    def __init__(self, n: int, sig: SigLike = 1):
        self.n = n
        self.sig = as_signature(sig, n)

    def s(self, *indices: int) -> Multivector:
        if len(indices) == 1:
            return Multivector.basis(self.n, indices[0])
        return Multivector.blade(self.n, indices, self.sig)

    def scalar(self, c: int = 1) -> Multivector:
        return Multivector.scalar(self.n, c)

    @property
    def zero(self) -> Multivector:
        return Multivector.zero(self.n)

    def basis(self) -> list:
        return basis(self.n)

    def gp(self, *factors: Multivector) -> Multivector:
        return gp(*factors, sig=self.sig)

    def act(self, spinor: Multivector, state: Multivector) -> Multivector:
        return apply_action(spinor, state, self.sig)

    def inner_outer(self, a, b):
        return inner_outer(a, b, self.sig)

    def parse(self, text: str) -> Multivector:
        from .parsing import parse_expression

        return parse_expression(text, sig=self.sig, n=self.n)
