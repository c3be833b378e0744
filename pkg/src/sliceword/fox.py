"""Fox derivative in ``b``, the metabelian polynomial and its slope specializations.

The metabelian polynomial is computed two ways: by exact division of the
abelianized Fox derivative, and from prefix-count rows of a positive pair.
The two routes share no code beyond the polynomial type.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations, count

import numpy as np

from .errors import NotDivisible, NotInCommutatorSubgroup, ZeroPolynomial
from .laurent import T_MINUS_1, LaurentPoly1, LaurentPoly2
from .words import GroupWord, PositiveWord, abelianization, row_data


def fox_derivative_b(w: GroupWord) -> LaurentPoly2:
    """Abelianized ``dw/db`` as a Laurent polynomial in ``T`` (for a) and ``S`` (for b)."""
    terms = []
    m = n = 0
    for ch in w.letters:
        if ch == "b":
            terms.append(((m, n), 1))
            n += 1
        elif ch == "B":
            terms.append(((m, n - 1), -1))
            n -= 1
        elif ch == "a":
            m += 1
        else:
            m -= 1
    return LaurentPoly2._from_terms(terms)


def metabelian_poly(w: GroupWord) -> LaurentPoly2:
    """``M_w`` with ``B_w = -(T - 1) M_w``; zero exactly on the second derived subgroup."""
    if not abelianization(w).is_zero():
        raise NotInCommutatorSubgroup(f"ab({w}) = {abelianization(w).as_list()}")
    return -fox_derivative_b(w).div_t_minus_1()


def metabelian_poly_rowwise(u: PositiveWord, v: PositiveWord) -> LaurentPoly2:
    """Interval-block formula from the prefix-count rows of ``u`` and ``v``."""
    rows = row_data(u, v)
    m, n = u.count_a, u.count_b
    terms = []
    for j in rows.active_sorted:
        sign = -rows.eta[j - 1]
        base = rows.alpha[j - 1] - m
        for k in range(abs(rows.delta[j - 1])):
            terms.append(((base + k, j - 1 - n), sign))
    return LaurentPoly2._from_terms(terms)


def specialize_slope(M: LaurentPoly2, r: int) -> LaurentPoly1:
    return M.specialize(r)


def bad_slopes(M: LaurentPoly2) -> set[Fraction]:
    """Every slope at which two support monomials collide under ``S = T^r``."""
    if M.is_zero():
        raise ZeroPolynomial("bad slopes of the zero polynomial are undefined")
    out = set()
    for (i, j), (i2, j2) in combinations(M.support(), 2):
        if j != j2:
            out.add(Fraction(i - i2, j2 - j))
    return out


def slope_search_order():
    yield 0
    for k in count(1):
        yield k
        yield -k


def find_good_slope(M: LaurentPoly2) -> int:
    bad = bad_slopes(M)
    for r in slope_search_order():
        if r not in bad:
            return r
    raise AssertionError("unreachable")


def p_r_poly(M: LaurentPoly2, r: int) -> LaurentPoly1:
    """``P_r(T) = (T - 1) M(T, T^r)``."""
    return T_MINUS_1 * M.specialize(r)


def p_at_minus_one(M: LaurentPoly2, parity: int) -> int:
    """Exact ``P_r(-1)`` for any ``r`` of the given parity (0 even, 1 odd)."""
    return -2 * M.eval_int(-1, -1 if parity % 2 else 1)


@dataclass(frozen=True)
class LaurentPair:
    """The matrix ``[[alpha, beta], [-beta#, alpha#]]`` over ``Z[T^(+-1)]``."""

    alpha: LaurentPoly1
    beta: LaurentPoly1

    def __mul__(self, other: LaurentPair) -> LaurentPair:
        a, b, c, d = self.alpha, self.beta, other.alpha, other.beta
        return LaurentPair(a * c - b * d.conj(), a * d + b * c.conj())

    def inverse(self) -> LaurentPair:
        # valid for determinant one
        return LaurentPair(self.alpha.conj(), -self.beta)

    def det(self) -> LaurentPoly1:
        return self.alpha * self.alpha.conj() + self.beta * self.beta.conj()

    def trace(self) -> LaurentPoly1:
        return self.alpha + self.alpha.conj()

    def __call__(self, T: complex):
        a, b = self.alpha(T), self.beta(T)
        bc = self.beta.conj()(T)
        ac = self.alpha.conj()(T)
        return np.array([[a, b], [-bc, ac]])


LAURENT_IDENTITY = LaurentPair(LaurentPoly1.constant(1), LaurentPoly1())
LAURENT_J = LaurentPair(LaurentPoly1(), LaurentPoly1.constant(1))


def laurent_b(r: int) -> LaurentPair:
    return LaurentPair(LaurentPoly1(), LaurentPoly1.monomial(r))


def laurent_matrix_eval(w: GroupWord, r: int) -> LaurentPair:
    """Evaluate ``w`` at ``a -> J``, ``b -> [[0, T^r], [-T^-r, 0]]`` exactly."""
    B = laurent_b(r)
    images = {"a": LAURENT_J, "A": LAURENT_J.inverse(), "b": B, "B": B.inverse()}
    out = LAURENT_IDENTITY
    for ch in w.letters:
        out = out * images[ch]
    return out


@dataclass(frozen=True)
class SquareSumDecomposition:
    """``alpha - 1 = (1 - T) F`` and ``beta = (1 - T) G``."""

    F: LaurentPoly1
    G: LaurentPoly1

    def weighted_deficit(self, T: complex) -> float:
        return abs(1 - T) ** 2 * (abs(self.F(T)) ** 2 + abs(self.G(T)) ** 2)


def square_sum_decomposition(w: GroupWord, r: int) -> SquareSumDecomposition:
    pair = laurent_matrix_eval(w, r)
    try:
        F = (pair.alpha - 1).div_1_minus_t()
        G = pair.beta.div_1_minus_t()
    except NotDivisible as exc:
        raise NotDivisible(f"{w} at slope {r}: {exc}") from None
    return SquareSumDecomposition(F, G)


def square_sum_identity_holds(pair: LaurentPair) -> bool:
    """``(alpha - 1)(alpha# - 1) + beta beta# == 2 - (alpha + alpha#)`` exactly."""
    a, b = pair.alpha, pair.beta
    lhs = (a - 1) * (a.conj() - 1) + b * b.conj()
    return lhs == 2 - pair.trace()
