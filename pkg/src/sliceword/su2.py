"""SU(2) arithmetic, word evaluation and the slice families.

An element is stored by its first row ``(a11, a12)``; the matrix is
``[[a11, a12], [-conj(a12), conj(a11)]]``.  Products and inverses stay in
this form exactly, so no re-orthogonalization is ever applied.
"""
from __future__ import annotations

import cmath
import math
from dataclasses import dataclass
from typing import Iterable, Sequence

import numpy as np

from .errors import BadParameter, NotFiniteWithinCap, NotInCommutatorSubgroup
from .fox import metabelian_poly, p_at_minus_one, p_r_poly
from .words import GroupWord, PositiveWord, abelianization, commutator, delta0, signed_a_count

UNIT_TOL = 1e-12
WITNESS_TOL = 1e-9
DEDUP_TOL = 1e-9


class SU2Matrix:
    __slots__ = ("a11", "a12")

    def __init__(self, a11: complex, a12: complex, *, check: bool = True):
        a11, a12 = complex(a11), complex(a12)
        if check:
            norm = abs(a11) ** 2 + abs(a12) ** 2
            if abs(norm - 1.0) > UNIT_TOL:
                raise ValueError(f"|a11|^2 + |a12|^2 = {norm!r}, not 1")
        self.a11 = a11
        self.a12 = a12

    @classmethod
    def from_array(cls, m) -> SU2Matrix:
        m = np.asarray(m, dtype=complex)
        if np.abs(m[1, 0] + np.conj(m[0, 1])) > UNIT_TOL or np.abs(m[1, 1] - np.conj(m[0, 0])) > UNIT_TOL:
            raise ValueError("matrix is not of SU(2) form")
        return cls(m[0, 0], m[0, 1])

    def __mul__(self, other: SU2Matrix) -> SU2Matrix:
        a, b = self.a11, self.a12
        c, d = other.a11, other.a12
        return SU2Matrix(a * c - b * d.conjugate(), a * d + b * c.conjugate(), check=False)

    def inverse(self) -> SU2Matrix:
        return SU2Matrix(self.a11.conjugate(), -self.a12, check=False)

    def __neg__(self) -> SU2Matrix:
        return SU2Matrix(-self.a11, -self.a12, check=False)

    def __pow__(self, k: int) -> SU2Matrix:
        if k < 0:
            return self.inverse() ** (-k)
        result, base = IDENTITY, self
        while k:
            if k & 1:
                result = result * base
            base = base * base
            k >>= 1
        return result

    def trace(self) -> float:
        return 2.0 * self.a11.real

    def deficit(self) -> float:
        """``2 - tr`` computed as ``|a11 - 1|^2 + |a12|^2`` (no cancellation near the identity)."""
        return abs(self.a11 - 1.0) ** 2 + abs(self.a12) ** 2

    def det(self) -> float:
        return abs(self.a11) ** 2 + abs(self.a12) ** 2

    def to_array(self) -> np.ndarray:
        return np.array([[self.a11, self.a12], [-self.a12.conjugate(), self.a11.conjugate()]])

    def distance(self, other: SU2Matrix) -> float:
        """Frobenius distance."""
        return math.sqrt(2.0) * math.hypot(abs(self.a11 - other.a11), abs(self.a12 - other.a12))

    def is_close(self, other: SU2Matrix, tol: float = DEDUP_TOL) -> bool:
        return self.distance(other) <= tol

    def to_json(self) -> list[list[float]]:
        return [[self.a11.real, self.a11.imag], [self.a12.real, self.a12.imag]]

    @classmethod
    def from_json(cls, data) -> SU2Matrix:
        (r1, i1), (r2, i2) = data
        return cls(complex(r1, i1), complex(r2, i2))

    def __repr__(self) -> str:
        return f"SU2Matrix({self.a11!r}, {self.a12!r})"


IDENTITY = SU2Matrix(1, 0)
J0 = SU2Matrix(0, 1)
K_MATRIX = SU2Matrix(1j, 0)


def diag(phase: float) -> SU2Matrix:
    """``diag(e^(i phase), e^(-i phase))``."""
    return SU2Matrix(cmath.exp(1j * phase), 0, check=False)


def rotation(t: float) -> SU2Matrix:
    """``R(t) = [[cos t, sin t], [-sin t, cos t]] = exp(t J0)``."""
    return SU2Matrix(math.cos(t), math.sin(t), check=False)


def binary_dihedral_b(theta: float) -> SU2Matrix:
    """``[[0, e^(i theta)], [-e^(-i theta), 0]]``; squares to ``-I``."""
    return SU2Matrix(0, cmath.exp(1j * theta), check=False)


def word_eval(w: GroupWord | PositiveWord | str, A: SU2Matrix, B: SU2Matrix) -> SU2Matrix:
    letters = w if isinstance(w, str) else w.letters
    images = {"a": A, "b": B, "A": A.inverse(), "B": B.inverse()}
    out = IDENTITY
    for ch in letters:
        out = out * images[ch]
    return out


@dataclass(frozen=True)
class SlicePoint:
    theta: float
    r: int
    t: float

    @property
    def T(self) -> complex:
        return cmath.exp(2j * self.theta)

    @property
    def S(self) -> complex:
        return self.T ** self.r


def slice_pair(p: SlicePoint) -> tuple[SU2Matrix, SU2Matrix]:
    """``(A(theta), D_r(theta) R(t))``."""
    return diag(p.theta), diag(p.r * p.theta) * rotation(p.t)


def _require_commutator(w: GroupWord) -> None:
    if not abelianization(w).is_zero():
        raise NotInCommutatorSubgroup(f"ab({w}) = {abelianization(w).as_list()}")


def slice_trace(w: GroupWord, p: SlicePoint) -> float:
    _require_commutator(w)
    return word_eval(w, *slice_pair(p)).trace()


def slice_deficit(w: GroupWord, p: SlicePoint) -> float:
    """``2 - slice_trace`` evaluated without cancellation."""
    _require_commutator(w)
    return word_eval(w, *slice_pair(p)).deficit()


def quadratic_coefficient(w: GroupWord, r: int, theta: float) -> float:
    """Leading trace deficit ``|(T - 1) M_w(T, T^r)|^2`` at ``T = e^(2 i theta)``."""
    P = p_r_poly(metabelian_poly(w), r)
    return abs(P(cmath.exp(2j * theta))) ** 2


def quadratic_coefficient_fd(w: GroupWord, r: int, theta: float, t0: float) -> float:
    """Finite-difference estimate ``(2 - f(T, t0)) / t0^2``."""
    if t0 <= 0:
        raise BadParameter("t0 must be positive")
    return slice_deficit(w, SlicePoint(theta, r, t0)) / t0**2


def dihedral_point_trace(u: PositiveWord, v: PositiveWord, theta: float) -> float:
    return 2.0 * math.cos(2.0 * theta * delta0(u, v))


def dihedral_point_pair(theta: float, r: int = 0) -> tuple[SU2Matrix, SU2Matrix]:
    """``(A(theta), D_r(theta) J0)``, the slice point ``t = pi/2``."""
    return diag(theta), diag(r * theta) * J0


def quaternionic_trace(w: GroupWord, r: int, t: float) -> float:
    """Closed form ``2 cos(t P_r(-1))`` at ``T = -1``."""
    _require_commutator(w)
    return 2.0 * math.cos(t * p_at_minus_one(metabelian_poly(w), r))


def mixed_slice_eval(x: PositiveWord, theta: float) -> SU2Matrix:
    """Normal form ``A(theta)^mu(x) J0^(#b)`` of ``x(A(theta), J0)``."""
    return diag(theta * signed_a_count(x)) * J0 ** x.count_b


def binary_dihedral_trace(w: GroupWord, theta: float) -> float:
    _require_commutator(w)
    return word_eval(w, J0, binary_dihedral_b(theta)).trace()


def commutator_power_word(m: int, n: int, k: int) -> GroupWord:
    return commutator(GroupWord("a" * m), GroupWord("b" * n)) ** k


@dataclass(frozen=True)
class Witness:
    A: SU2Matrix
    B: SU2Matrix
    trace: complex
    provenance: str
    residual_tol: float = WITNESS_TOL

    def revalidate(self, w: GroupWord) -> float:
        """Re-evaluate ``tr w(A, B)``; return the discrepancy from the stored trace."""
        return abs(self.trace - word_eval(w, self.A, self.B).trace())

    @property
    def is_zero(self) -> bool:
        return abs(self.trace) <= self.residual_tol

    def to_json(self) -> dict:
        raw = self.trace.real
        return {
            "provenance": self.provenance,
            "A": self.A.to_json(),
            "B": self.B.to_json(),
            "trace": [0.0, 0.0] if self.is_zero else [raw, 0.0],
            "raw_trace": [raw, 0.0],
            "residual": abs(raw),
        }


def make_witness(w: GroupWord, A: SU2Matrix, B: SU2Matrix, provenance: str) -> Witness:
    return Witness(A, B, complex(word_eval(w, A, B).trace()), provenance)


def commutator_power_witness(m: int, n: int, k: int) -> Witness:
    """Trace-zero pair for ``[a^m, b^n]^k``.

    ``[J0, D(theta/2)] = D(theta)`` with ``theta = pi/(2k)``; then take an
    m-th root of ``J0`` and an n-th root of ``D(theta/2)``.
    """
    if min(m, n, k) < 1:
        raise BadParameter("m, n, k must be positive")
    theta = math.pi / (2 * k)
    A = rotation(math.pi / (2 * m))
    B = diag(theta / 2 / n)
    base = (A**m).inverse() * (B**n).inverse() * A**m * B**n
    trace = (base**k).trace()
    return Witness(A, B, complex(trace), f"commutator_power(m={m},n={n},k={k})")


# --- finite subgroups -------------------------------------------------------

FINITE_KINDS = ("cyclic", "binary_dihedral", "2T", "2O", "2I")


def quaternion(a: float, b: float, c: float, d: float) -> SU2Matrix:
    """Unit quaternion ``a + b i + c j + d k`` as ``[[a + b i, c + d i], ...]``."""
    return SU2Matrix(complex(a, b), complex(c, d))


def finite_subgroup(kind: str, n: int = 1) -> list[SU2Matrix]:
    """Standard generators of a finite subgroup of SU(2)."""
    if kind == "cyclic":
        if n < 1:
            raise BadParameter("cyclic order must be >= 1")
        return [diag(2 * math.pi / n)]
    if kind == "binary_dihedral":
        if n < 1:
            raise BadParameter("binary dihedral parameter must be >= 1")
        return [diag(math.pi / n), J0]
    half = 0.5
    if kind == "2T":
        return [quaternion(0, 1, 0, 0), quaternion(0, 0, 1, 0), quaternion(half, half, half, half)]
    if kind == "2O":
        s = 1 / math.sqrt(2)
        return [quaternion(half, half, half, half), quaternion(s, s, 0, 0)]
    if kind == "2I":
        phi = (1 + math.sqrt(5)) / 2
        return [quaternion(half, half, half, half), quaternion(phi / 2, 1 / (2 * phi), half, 0)]
    raise BadParameter(f"unknown subgroup kind {kind!r}")


def _key(g: SU2Matrix) -> tuple[int, int, int, int]:
    scale = 1e6
    return (round(g.a11.real * scale), round(g.a11.imag * scale), round(g.a12.real * scale), round(g.a12.imag * scale))


class _Index:
    """Tolerance-based lookup of SU(2) elements."""

    def __init__(self, tol: float = DEDUP_TOL):
        self.tol = tol
        self.items: list[SU2Matrix] = []
        self._buckets: dict[tuple[int, int, int, int], list[int]] = {}

    def find(self, g: SU2Matrix) -> int | None:
        k = _key(g)
        for d0 in (-1, 0, 1):
            for d1 in (-1, 0, 1):
                for d2 in (-1, 0, 1):
                    for d3 in (-1, 0, 1):
                        for idx in self._buckets.get((k[0] + d0, k[1] + d1, k[2] + d2, k[3] + d3), ()):
                            if self.items[idx].is_close(g, self.tol):
                                return idx
        return None

    def add(self, g: SU2Matrix) -> int:
        self.items.append(g)
        self._buckets.setdefault(_key(g), []).append(len(self.items) - 1)
        return len(self.items) - 1


def group_closure(generators: Sequence[SU2Matrix], cap: int = 10_000) -> list[SU2Matrix]:
    """Breadth-first closure under right multiplication by the generators."""
    if cap < 1:
        raise BadParameter("cap must be >= 1")
    index = _Index()
    index.add(IDENTITY)
    frontier = [IDENTITY]
    while frontier:
        nxt = []
        for g in frontier:
            for h in generators:
                prod = g * h
                if index.find(prod) is None:
                    index.add(prod)
                    if len(index.items) > cap:
                        raise NotFiniteWithinCap(f"closure exceeds {cap} elements")
                    nxt.append(prod)
        frontier = nxt
    return index.items


def multiplication_table(elements: Sequence[SU2Matrix], generators: Iterable[SU2Matrix]) -> list[list[int]]:
    """``table[g][e]`` is the index of ``elements[e] * generators[g]``."""
    index = _Index()
    for e in elements:
        index.add(e)
    table = []
    for h in generators:
        row = []
        for e in elements:
            idx = index.find(e * h)
            if idx is None:
                raise NotFiniteWithinCap("element set is not closed under the generators")
            row.append(idx)
        table.append(row)
    return table
