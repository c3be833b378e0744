"""Exact integer Laurent polynomials in ``T`` and in ``(T, S)``.

Coefficients live in a dict keyed by exponent (an int for one variable, an
``(i, j)`` tuple for two); zero coefficients are never stored, so equality
is dict equality.
"""
from __future__ import annotations

from fractions import Fraction
from typing import Generic, Iterable, Mapping, TypeVar

from .errors import NotDivisible

K = TypeVar("K")


def _clean(coeffs: Mapping) -> dict:
    return {k: c for k, c in coeffs.items() if c}


class _Laurent(Generic[K]):
    __slots__ = ("coeffs",)

    def __init__(self, coeffs: Mapping[K, int] | None = None):
        self.coeffs: dict[K, int] = _clean(coeffs or {})

    @classmethod
    def _from_terms(cls, terms: Iterable[tuple[K, int]]):
        acc: dict[K, int] = {}
        for k, c in terms:
            acc[k] = acc.get(k, 0) + c
        return cls(acc)

    def __eq__(self, other) -> bool:
        if isinstance(other, int):
            other = self.constant(other)
        return type(self) is type(other) and self.coeffs == other.coeffs

    def __hash__(self) -> int:
        return hash((type(self).__name__, frozenset(self.coeffs.items())))

    def __bool__(self) -> bool:
        return bool(self.coeffs)

    def is_zero(self) -> bool:
        return not self.coeffs

    def _coerce(self, other):
        if isinstance(other, int):
            return self.constant(other)
        if type(other) is not type(self):
            return NotImplemented
        return other

    def __add__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        out = dict(self.coeffs)
        for k, c in other.coeffs.items():
            out[k] = out.get(k, 0) + c
        return type(self)(out)

    __radd__ = __add__

    def __neg__(self):
        return type(self)({k: -c for k, c in self.coeffs.items()})

    def __sub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        out: dict = {}
        for k1, c1 in self.coeffs.items():
            for k2, c2 in other.coeffs.items():
                k = self._add_exp(k1, k2)
                out[k] = out.get(k, 0) + c1 * c2
        return type(self)(out)

    __rmul__ = __mul__

    def __pow__(self, e: int):
        if e < 0:
            raise ValueError("negative powers only exist for monomials")
        result = self.constant(1)
        base = self
        while e:
            if e & 1:
                result = result * base
            base = base * base
            e >>= 1
        return result

    def __repr__(self) -> str:
        return f"{type(self).__name__}({self.render()!r})"

    def __str__(self) -> str:
        return self.render()


class LaurentPoly1(_Laurent[int]):
    """Element of ``Z[T, T^-1]``."""

    @staticmethod
    def _add_exp(i: int, j: int) -> int:
        return i + j

    @classmethod
    def constant(cls, c: int) -> LaurentPoly1:
        return cls({0: c})

    @classmethod
    def monomial(cls, i: int, c: int = 1) -> LaurentPoly1:
        return cls({i: c})

    @classmethod
    def geometric(cls, length: int, start: int = 0) -> LaurentPoly1:
        """``T^start (1 + T + ... + T^(length-1))``."""
        return cls({start + k: 1 for k in range(length)})

    def conj(self) -> LaurentPoly1:
        """The involution ``T -> T^-1``."""
        return LaurentPoly1({-i: c for i, c in self.coeffs.items()})

    def __call__(self, T: complex) -> complex:
        return sum(c * T**i for i, c in self.coeffs.items())

    def eval_int(self, T: int):
        """Exact value at an integer point (a Fraction if T is not a unit and exponents are negative)."""
        total = Fraction(0)
        for i, c in self.coeffs.items():
            total += c * Fraction(T) ** i
        return int(total) if total.denominator == 1 else total

    def div_t_minus_1(self) -> LaurentPoly1:
        """Exact quotient by ``T - 1``; raises :class:`NotDivisible` unless ``f(1) = 0``."""
        if not self.coeffs:
            return LaurentPoly1()
        if sum(self.coeffs.values()) != 0:
            raise NotDivisible(f"{self.render()} is not divisible by (T-1)")
        lo, hi = min(self.coeffs), max(self.coeffs)
        out = {}
        running = 0
        # quotient coefficient at k is the sum of coefficients above k
        for k in range(hi - 1, lo - 1, -1):
            running += self.coeffs.get(k + 1, 0)
            out[k] = running
        return LaurentPoly1(out)

    def div_1_minus_t(self) -> LaurentPoly1:
        return -self.div_t_minus_1()

    def render(self) -> str:
        if not self.coeffs:
            return "0"
        return _join([(c, f"{c}*T^{i}") for i, c in sorted(self.coeffs.items())])


class LaurentPoly2(_Laurent[tuple[int, int]]):
    """Element of ``Z[T^(+-1), S^(+-1)]``."""

    @staticmethod
    def _add_exp(a: tuple[int, int], b: tuple[int, int]) -> tuple[int, int]:
        return (a[0] + b[0], a[1] + b[1])

    @classmethod
    def constant(cls, c: int) -> LaurentPoly2:
        return cls({(0, 0): c})

    @classmethod
    def monomial(cls, i: int, j: int, c: int = 1) -> LaurentPoly2:
        return cls({(i, j): c})

    @classmethod
    def from_poly1(cls, f: LaurentPoly1) -> LaurentPoly2:
        return cls({(i, 0): c for i, c in f.coeffs.items()})

    def __call__(self, T: complex, S: complex) -> complex:
        return sum(c * T**i * S**j for (i, j), c in self.coeffs.items())

    def eval_int(self, T: int, S: int) -> int:
        """Exact value at a point whose coordinates are units (``+-1``)."""
        if abs(T) != 1 or abs(S) != 1:
            raise ValueError("integer evaluation requires unit coordinates")
        return sum(c * T ** (i % 2) * S ** (j % 2) for (i, j), c in self.coeffs.items())

    def support(self) -> list[tuple[int, int]]:
        return sorted(self.coeffs)

    def div_t_minus_1(self) -> LaurentPoly2:
        by_row: dict[int, dict[int, int]] = {}
        for (i, j), c in self.coeffs.items():
            by_row.setdefault(j, {})[i] = c
        out = {}
        for j, row in by_row.items():
            q = LaurentPoly1(row).div_t_minus_1()
            for i, c in q.coeffs.items():
                out[(i, j)] = c
        return LaurentPoly2(out)

    def specialize(self, r: int) -> LaurentPoly1:
        """Substitute ``S = T^r``."""
        return LaurentPoly1._from_terms((i + r * j, c) for (i, j), c in self.coeffs.items())

    def render(self) -> str:
        if not self.coeffs:
            return "0"
        return _join([(c, f"{c}*T^{i}*S^{j}") for (i, j), c in sorted(self.coeffs.items())])


def _join(terms: list[tuple[int, str]]) -> str:
    out = terms[0][1]
    for c, text in terms[1:]:
        out += f" - {text[1:]}" if c < 0 else f" + {text}"
    return out


T_MINUS_1 = LaurentPoly1({1: 1, 0: -1})
