"""Trace coordinates ``(tr A, tr B, tr AB)`` on SU(2)^2.

The trace polynomial of a word is never expanded symbolically: it is
evaluated by realizing the trace point as an explicit matrix pair.
"""
from __future__ import annotations

import math
from dataclasses import dataclass

from .errors import (
    DegenerateAxis,
    NotInCommutatorSubgroup,
    OutsideRegionD,
    PathExitsRegion,
    PreconditionError,
)
from .su2 import SU2Matrix, Witness, diag, make_witness, word_eval
from .words import GroupWord, abelianization

REGION_SLACK = 1e-12
VALUE_TOL = 1e-9
PARAM_TOL = 1e-12
MAX_BISECTIONS = 200


@dataclass(frozen=True)
class TracePoint:
    x: float
    y: float
    z: float

    def fricke(self) -> float:
        x, y, z = self.x, self.y, self.z
        return x * x + y * y + z * z - x * y * z

    def lerp(self, other: TracePoint, s: float) -> TracePoint:
        return TracePoint(
            self.x + s * (other.x - self.x),
            self.y + s * (other.y - self.y),
            self.z + s * (other.z - self.z),
        )

    def as_list(self) -> list[float]:
        return [self.x, self.y, self.z]


IDENTITY_POINT = TracePoint(2.0, 2.0, 2.0)
ORIGIN = TracePoint(0.0, 0.0, 0.0)
INTERIOR_POINTS = (TracePoint(0.0, 1.0, -1.0), TracePoint(0.0, 1.0, 0.0))


def in_region_D(p: TracePoint, slack: float = REGION_SLACK) -> bool:
    box = all(-2.0 - slack <= c <= 2.0 + slack for c in (p.x, p.y, p.z))
    return box and -slack <= p.fricke() <= 4.0 + slack


def _clamp(c: float) -> float:
    return max(-1.0, min(1.0, c))


def realize_traces(p: TracePoint) -> tuple[SU2Matrix, SU2Matrix]:
    """A pair ``(A, B)`` with ``tr A = x``, ``tr B = y``, ``tr AB = z``.

    ``A`` is diagonal; ``B`` has a real nonnegative off-diagonal entry.
    """
    if not in_region_D(p):
        raise OutsideRegionD(f"{p.as_list()} is outside D (Fricke value {p.fricke()!r})")
    alpha = math.acos(_clamp(p.x / 2))
    sin_a = math.sin(alpha)
    p1 = _clamp(p.y / 2)
    if sin_a < 1e-15:
        # A = +-I forces tr AB = +-tr B
        sign = 1.0 if p.x > 0 else -1.0
        if abs(p.z - sign * p.y) > 1e-10:
            raise DegenerateAxis(f"x = {p.x!r} requires z = {sign * p.y!r}, got {p.z!r}")
        A = SU2Matrix(sign, 0)
        B = SU2Matrix(complex(p1, math.sqrt(max(0.0, 1 - p1 * p1))), 0, check=False)
        return A, B
    q1 = (p1 * math.cos(alpha) - p.z / 2) / sin_a
    radicand = 1.0 - p1 * p1 - q1 * q1
    if radicand < -1e-9:
        raise OutsideRegionD(f"negative radicand {radicand!r} at {p.as_list()}")
    c = math.sqrt(max(0.0, radicand))
    return diag(alpha), SU2Matrix(complex(p1, q1), c, check=False)


def trace_poly_eval(w: GroupWord, p: TracePoint) -> float:
    A, B = realize_traces(p)
    return word_eval(w, A, B).trace()


@dataclass(frozen=True)
class InteriorTest:
    v1: float
    v2: float
    fired: bool

    @property
    def negative_point(self) -> TracePoint | None:
        if not self.fired:
            return None
        return INTERIOR_POINTS[0] if self.v1 <= self.v2 else INTERIOR_POINTS[1]


def interior_point_test(w: GroupWord) -> InteriorTest:
    if not abelianization(w).is_zero():
        raise NotInCommutatorSubgroup(f"ab({w}) = {abelianization(w).as_list()}")
    v1, v2 = (trace_poly_eval(w, p) for p in INTERIOR_POINTS)
    return InteriorTest(v1, v2, min(v1, v2) <= 1e-12)


@dataclass(frozen=True)
class SignChangeResult:
    point: TracePoint
    value: float
    path: str  # "segment" or "polyline"
    iterations: int


def _bisect(f, lo: float, hi: float) -> tuple[float, float, int]:
    """Zero of ``f`` on ``[lo, hi]`` given ``f(lo) > 0 >= f(hi)``."""
    f_hi = f(hi)
    if abs(f_hi) <= VALUE_TOL:
        return hi, f_hi, 0
    best = (hi, f_hi)
    for it in range(1, MAX_BISECTIONS + 1):
        mid = 0.5 * (lo + hi)
        val = f(mid)
        if abs(val) < abs(best[1]):
            best = (mid, val)
        if abs(val) <= VALUE_TOL:
            return mid, val, it
        if val > 0:
            lo = mid
        else:
            hi = mid
        if hi - lo <= PARAM_TOL:
            break
    return best[0], best[1], it


def sign_change_witness(w: GroupWord, p_neg: TracePoint, samples: int = 64) -> SignChangeResult:
    """Zero of the trace function between ``(2, 2, 2)`` and a point where it is ``<= 0``.

    Tries the straight segment first; if a sample leaves D, falls back to the
    polyline through the origin, which always stays in D.
    """
    if not abelianization(w).is_zero():
        raise NotInCommutatorSubgroup(f"ab({w}) = {abelianization(w).as_list()}")
    end_value = trace_poly_eval(w, p_neg)
    if end_value > 1e-12:
        raise PreconditionError(f"trace at {p_neg.as_list()} is {end_value!r} > 0")
    if abs(end_value) <= VALUE_TOL:
        return SignChangeResult(p_neg, end_value, "segment", 0)

    def segment(s: float) -> TracePoint:
        return IDENTITY_POINT.lerp(p_neg, s)

    def polyline(s: float) -> TracePoint:
        if s <= 0.5:
            return IDENTITY_POINT.lerp(ORIGIN, 2 * s)
        return ORIGIN.lerp(p_neg, 2 * s - 1)

    segment_ok = all(in_region_D(segment(k / samples)) for k in range(samples + 1))
    paths = [("segment", segment), ("polyline", polyline)] if segment_ok else [("polyline", polyline)]
    failure = None
    for name, point in paths:

        def f(s: float, point=point, name=name) -> float:
            q = point(s)
            if not in_region_D(q):
                raise PathExitsRegion(f"{name} left D at {q.as_list()}")
            return trace_poly_eval(w, q)

        try:
            s, val, its = _bisect(f, 0.0, 1.0)
        except PathExitsRegion as exc:
            failure = exc
            continue
        if abs(val) <= VALUE_TOL:
            return SignChangeResult(point(s), val, name, its)
        failure = PathExitsRegion(f"bisection on {name} stalled at |value| = {abs(val)!r}")
    raise failure


def interior_witness(w: GroupWord, test: InteriorTest | None = None) -> tuple[Witness, SignChangeResult]:
    test = test or interior_point_test(w)
    if not test.fired:
        raise PreconditionError("no interior point with nonpositive trace")
    result = sign_change_witness(w, test.negative_point)
    A, B = realize_traces(result.point)
    return make_witness(w, A, B, f"F_interior:{result.path}"), result
