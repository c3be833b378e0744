import cmath
import math
import random
from fractions import Fraction

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from sliceword.errors import NotDivisible, NotInCommutatorSubgroup, ZeroPolynomial
from sliceword.fox import (
    bad_slopes,
    find_good_slope,
    fox_derivative_b,
    laurent_matrix_eval,
    metabelian_poly,
    metabelian_poly_rowwise,
    p_at_minus_one,
    p_r_poly,
    specialize_slope,
    square_sum_decomposition,
    square_sum_identity_holds,
)
from sliceword.laurent import T_MINUS_1, LaurentPoly1, LaurentPoly2
from sliceword.words import GroupWord, PositiveWord, abelianization, difference_word, hard_pairs

from conftest import random_group_word, random_hard_pair

L1, L2 = LaurentPoly1, LaurentPoly2

poly1 = st.dictionaries(st.integers(-6, 6), st.integers(-5, 5), max_size=6).map(L1)


def mono(i, j, c=1):
    return L2.monomial(i, j, c)


def fox_oracle(text: str) -> LaurentPoly2:
    """Product rule applied letter by letter to the unreduced string."""
    total = L2()
    m = n = 0
    for ch in text:
        prefix = mono(m, n)
        if ch == "b":
            total = total + prefix
            n += 1
        elif ch == "B":
            total = total + prefix * mono(0, -1, -1)
            n -= 1
        elif ch == "a":
            m += 1
        else:
            m -= 1
    return total


def commutator_word(rng, length):
    w = GroupWord(random_group_word(rng, length))
    m, n = abelianization(w).m, abelianization(w).n
    return w * GroupWord("A" * m if m > 0 else "a" * -m) * GroupWord("B" * n if n > 0 else "b" * -n)


class TestPolyOps:
    def test_ring(self):
        assert (L1({1: 1, 0: -1}) * L1({1: 1, 0: 1})) == L1({2: 1, 0: -1})

    def test_involution(self):
        assert L1.monomial(2).conj() == L1.monomial(-2)

    def test_eval(self):
        assert T_MINUS_1(-1) == -2
        assert T_MINUS_1.eval_int(-1) == -2
        assert L1.monomial(-2).eval_int(2) == Fraction(1, 4)

    def test_canonical(self):
        assert L1({0: 1, 1: 0}).coeffs == {0: 1}
        assert (L1.monomial(1) - L1.monomial(1)).is_zero()

    @given(poly1, poly1)
    def test_involution_multiplicative(self, f, g):
        assert (f * g).conj() == f.conj() * g.conj()

    @given(poly1)
    def test_division_roundtrip(self, f):
        g = f * T_MINUS_1
        assert g.div_t_minus_1() == f
        assert (f * L1({0: 1, 1: -1})).div_1_minus_t() == f

    def test_not_divisible(self):
        with pytest.raises(NotDivisible):
            L1({0: 1}).div_t_minus_1()

    def test_render(self):
        assert L2().render() == "0"
        assert (mono(-2, -2) - mono(-1, -1)).render() == "1*T^-2*S^-2 - 1*T^-1*S^-1"
        assert (T_MINUS_1).render() == "-1*T^0 + 1*T^1"


class TestFox:
    @pytest.mark.parametrize("w,expected", [("b", mono(0, 0)), ("", L2()), ("BAba", mono(-1, -1) - mono(0, -1))])
    def test_examples(self, w, expected):
        assert fox_derivative_b(GroupWord(w)) == expected

    def test_product_rule_and_reduction(self):
        rng = random.Random(3)
        for _ in range(300):
            text = random_group_word(rng, rng.randint(0, 16))
            assert fox_derivative_b(GroupWord(text)) == fox_oracle(text)
            k = rng.randint(0, len(text))
            x, y = GroupWord(text[:k]), GroupWord(text[k:])
            ab = abelianization(x)
            assert fox_derivative_b(x * y) == fox_derivative_b(x) + mono(ab.m, ab.n) * fox_derivative_b(y)


class TestMetabelian:
    def test_examples(self):
        assert metabelian_poly(GroupWord("BAba")) == mono(-1, -1)
        assert metabelian_poly(GroupWord("")) == L2()
        with pytest.raises(NotInCommutatorSubgroup):
            metabelian_poly(GroupWord("ab"))

    @pytest.mark.parametrize("u,v,expected", [
        ("ab", "ba", mono(-1, -1)),
        ("abba", "baab", mono(-2, -2) - mono(-1, -1)),
        ("baba", "abab", -(mono(-2, -2) + mono(-1, -1))),
    ])
    def test_rowwise_examples(self, u, v, expected):
        u, v = PositiveWord(u), PositiveWord(v)
        assert metabelian_poly_rowwise(u, v) == expected
        assert metabelian_poly(difference_word(u, v)) == expected

    def test_defining_relation(self):
        rng = random.Random(4)
        for _ in range(200):
            w = commutator_word(rng, rng.randint(0, 14))
            assert fox_derivative_b(w) == -(L2.from_poly1(T_MINUS_1) * metabelian_poly(w))

    def test_second_derived_word_vanishes(self):
        x = GroupWord("BAba")
        y = GroupWord("abAB")
        w = x.inverse() * y.inverse() * x * y
        assert w.letters and metabelian_poly(w).is_zero()

    def test_rowwise_and_nondegenerate_exhaustive_small(self):
        for u, v in hard_pairs(3, 3):
            M = metabelian_poly_rowwise(u, v)
            assert M == metabelian_poly(difference_word(u, v))
            assert not M.is_zero()


class TestSlopes:
    def test_specialize_examples(self):
        assert specialize_slope(mono(-1, -1), 0) == L1.monomial(-1)
        assert specialize_slope(mono(-2, -2) - mono(-1, -1), 0) == L1({-2: 1, -1: -1})
        assert specialize_slope(-(mono(-2, -2) + mono(-1, -1)), -1) == L1.constant(-2)

    def test_bad_slopes_examples(self):
        assert bad_slopes(-(mono(-2, -2) + mono(-1, -1))) == {-1}
        assert bad_slopes(mono(-1, -1)) == set()
        assert bad_slopes(L2.constant(1) + mono(1, 1) + mono(-1, 1)) == {-1, 1}
        with pytest.raises(ZeroPolynomial):
            bad_slopes(L2())

    def test_good_slope_order(self):
        assert find_good_slope(-(mono(-2, -2) + mono(-1, -1))) == 0
        assert find_good_slope(mono(-1, -1)) == 0
        assert find_good_slope(mono(0, 0) - mono(0, 1)) == 1
        M = mono(0, 0) + mono(0, 1) + mono(1, 0) + mono(0, 2)
        assert bad_slopes(M) >= {0, 1}
        assert find_good_slope(M) == -1

    def test_bad_slopes_brute_force(self):
        # a slope r collides two monomials exactly when i + r j = i' + r j'
        rng = random.Random(5)
        for _ in range(100):
            M = L2({(rng.randint(-3, 3), rng.randint(-3, 3)): rng.choice([-2, -1, 1, 2]) for _ in range(4)})
            if M.is_zero():
                continue
            expected = {
                Fraction(i - i2, j2 - j)
                for (i, j) in M.support() for (i2, j2) in M.support()
                if j != j2
            }
            assert bad_slopes(M) == expected

    def test_slope_soundness_exhaustive_small(self):
        for u, v in hard_pairs(3, 3):
            M = metabelian_poly_rowwise(u, v)
            bad = bad_slopes(M)
            for r in range(-5, 6):
                if r not in bad:
                    assert not specialize_slope(M, r).is_zero()
            assert not specialize_slope(M, find_good_slope(M)).is_zero()

    def test_p_r(self):
        assert p_r_poly(mono(-1, -1), 0) == L1({0: 1, -1: -1})
        M = -(mono(-2, -2) + mono(-1, -1))
        assert p_r_poly(M, 1).eval_int(-1) == 4
        assert p_at_minus_one(M, 1) == 4
        assert p_at_minus_one(M, 0) == 0
        for r in range(-3, 4):
            assert p_r_poly(M, r).eval_int(1) == 0
            assert p_r_poly(M, r).eval_int(-1) == p_at_minus_one(M, r % 2)


class TestLaurentMatrix:
    def test_examples(self):
        e = laurent_matrix_eval(GroupWord(""), 3)
        assert e.alpha == L1.constant(1) and e.beta.is_zero()
        b = laurent_matrix_eval(GroupWord("b"), 2)
        assert b.alpha.is_zero() and b.beta == L1.monomial(2)
        c = laurent_matrix_eval(GroupWord("BAba"), 1)
        assert c.alpha.eval_int(1) == 1 and c.beta.eval_int(1) == 0

    def test_matches_numeric_product(self):
        rng = random.Random(6)
        for _ in range(30):
            text = random_group_word(rng, 10)
            r = rng.randint(-3, 3)
            T = cmath.exp(1j * rng.uniform(0, 2 * math.pi))
            J = [[0, 1], [-1, 0]]
            B = [[0, T**r], [-(T ** -r), 0]]
            images = {"a": np.array(J), "b": np.array(B)}
            images["A"] = np.linalg.inv(images["a"])
            images["B"] = np.linalg.inv(images["b"])
            M = np.eye(2, dtype=complex)
            for ch in GroupWord(text).letters:
                M = M @ images[ch]
            assert np.allclose(laurent_matrix_eval(GroupWord(text), r)(T), M, atol=1e-10)

    def test_determinant_and_square_sum(self):
        rng = random.Random(7)
        for _ in range(100):
            w = GroupWord(random_group_word(rng, rng.randint(0, 20)))
            for r in range(-3, 4):
                pair = laurent_matrix_eval(w, r)
                assert pair.det() == L1.constant(1)
                assert square_sum_identity_holds(pair)

    def test_square_sum_decomposition(self):
        assert square_sum_decomposition(GroupWord(""), 0).F.is_zero()
        dec = square_sum_decomposition(GroupWord("BAba"), 0)
        pair = laurent_matrix_eval(GroupWord("BAba"), 0)
        one_minus_t = L1({0: 1, 1: -1})
        assert one_minus_t * dec.F == pair.alpha - 1
        assert one_minus_t * dec.G == pair.beta
        lhs = 2 - pair.trace()(-1)
        assert lhs == pytest.approx(4 * (abs(dec.F(-1)) ** 2 + abs(dec.G(-1)) ** 2))

    def test_weighted_identity_random(self):
        rng = random.Random(8)
        for _ in range(40):
            u, v = random_hard_pair(rng, 3, 3)
            w = difference_word(u, v)
            r = rng.randint(-2, 2)
            dec = square_sum_decomposition(w, r)
            pair = laurent_matrix_eval(w, r)
            for t in (0.3, 1.1, 2.5):
                T = cmath.exp(1j * t)
                assert (2 - pair.trace()(T)).real == pytest.approx(dec.weighted_deficit(T), abs=1e-10)

    def test_not_in_commutator(self):
        with pytest.raises(NotDivisible):
            square_sum_decomposition(GroupWord("a"), 0)
