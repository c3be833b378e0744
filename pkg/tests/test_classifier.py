import json
import math

import pytest

from sliceword.classifier import (
    CRITERIA,
    NIELSEN,
    SCHEMA_VERSION,
    Invariants,
    aut_probe,
    classify_pair,
    criterion_id,
    super_degenerate_check,
    witness_for,
)
from sliceword.errors import CriterionNotFired, EqualWords, UnequalAbelianization
from sliceword.fox import metabelian_poly
from sliceword.su2 import J0, diag, rotation, word_eval
from sliceword.words import GroupWord, PositiveWord, difference_word, hard_pairs, words_with_counts

P = PositiveWord
SMALL_PAIRS = list(hard_pairs(3, 3))


class TestCriterionIds:
    def test_short_names(self):
        assert criterion_id("a") == "A_dihedral"
        assert criterion_id("F") == "F_interior"
        assert criterion_id("C_mixed") == "C_mixed"
        with pytest.raises(ValueError):
            criterion_id("z")


class TestClassify:
    def test_commutator_fires_everything(self):
        report = classify_pair(P("ab"), P("ba"))
        assert report.fired_id == "A_dihedral"
        assert report.fired_ids() == list(CRITERIA)
        assert report.result("A").value == -1
        assert not report.super_degenerate

    def test_baba_abab(self):
        report = classify_pair(P("baba"), P("abab"))
        fired = report.fired_ids()
        assert "A_dihedral" not in fired and "C_mixed" not in fired and "D_single_row" not in fired
        assert report.fired_id == "B_quaternionic"
        assert report.result("B").value == (0, 4)
        assert metabelian_poly(report.w).eval_int(-1, -1) == -2

    def test_abba_baab(self):
        report = classify_pair(P("abba"), P("baab"))
        assert report.fired_id == "A_dihedral" and report.result("A").value == -2

    def test_errors(self):
        with pytest.raises(EqualWords):
            classify_pair(P("ab"), P("ab"))
        with pytest.raises(UnequalAbelianization):
            classify_pair(P("ab"), P("aab"))

    def test_subset_only_changes_headline(self):
        full = classify_pair(P("ab"), P("ba"))
        sub = classify_pair(P("ab"), P("ba"), criteria=["E"])
        assert sub.fired_id == "E_sieve"
        assert sub.fired_ids() == full.fired_ids()

    def test_json_schema(self):
        data = json.loads(json.dumps(classify_pair(P("abba"), P("baab")).to_json()))
        assert data["schema"] == SCHEMA_VERSION
        assert set(data) >= {"u", "v", "w", "ab", "rows", "invariants", "metabelian", "criteria", "fired", "super_degenerate"}
        assert set(data["rows"]) == {"delta", "alpha", "eta"}
        assert set(data["invariants"]) == {"delta0", "mu_u", "mu_v", "kappa", "active_rows"}
        assert [c["id"] for c in data["criteria"]] == list(CRITERIA)
        for c in data["criteria"]:
            assert ("witness" in c) == c["fired"]
            if c["fired"]:
                assert c["witness"]["trace"] == [0.0, 0.0]


class TestWitnesses:
    def test_examples(self):
        wit = witness_for("A", P("ab"), P("ba"))
        assert wit.A.distance(diag(math.pi / 4)) < 1e-15
        assert abs(wit.trace) <= 1e-9
        wit = witness_for("B", P("baba"), P("abab"))
        assert wit.B.distance(diag(math.pi / 2) * rotation(math.pi / 8)) < 1e-15
        assert abs(wit.trace) <= 1e-9
        wit = witness_for("E", P("ab"), P("ba"))
        assert wit.A.distance(J0) == 0 and abs(wit.trace) <= 1e-9

    def test_not_fired(self):
        with pytest.raises(CriterionNotFired):
            witness_for("A", P("baba"), P("abab"))

    def test_soundness_exhaustive(self):
        for u, v in SMALL_PAIRS:
            report = classify_pair(u, v)
            for c in report.criteria:
                if c.fired:
                    direct = word_eval(report.w, c.witness.A, c.witness.B).trace()
                    assert abs(direct) <= 1e-9, (u, v, c.id)
                    assert c.witness.revalidate(report.w) <= 1e-12
                else:
                    assert c.witness is None

    def test_dihedral_closed_form_at_witness_angle(self):
        for u, v in SMALL_PAIRS:
            inv = Invariants.compute(u, v)
            if inv.fires("A_dihedral"):
                theta = math.pi / (4 * abs(inv.delta0))
                assert abs(2 * math.cos(2 * theta * inv.delta0)) <= 1e-12


class TestSuperDegenerate:
    def test_examples(self):
        assert not super_degenerate_check(P("ab"), P("ba"))
        assert not super_degenerate_check(P("baba"), P("abab"))
        assert super_degenerate_check(P("aabb"), P("bbaa"))

    def test_count_22(self):
        words = list(words_with_counts(2, 2))
        assert len(words) == 6
        count = sum(super_degenerate_check(u, v) for u in words for v in words if u != v)
        assert count == 2

    def test_consistency_exhaustive(self):
        for u, v in SMALL_PAIRS:
            report = classify_pair(u, v, witnesses=False)
            flag = super_degenerate_check(u, v)
            assert flag == report.super_degenerate == (not report.fired_ids())
            if flag:
                assert report.fired_id is None


def _fires_B(w: GroupWord) -> bool:
    M = metabelian_poly(w)
    return M.eval_int(-1, 1) != 0 or M.eval_int(-1, -1) != 0


class TestAutProbe:
    def test_identity_hit(self):
        res = aut_probe(GroupWord("BAba"), 0)
        assert res.generators == () and res.description == "identity"
        assert abs(res.witness.trace) <= 1e-9

    def test_depth_zero_on_b_failing(self):
        w = difference_word(P("aab"), P("baa"))
        assert not _fires_B(w)
        assert aut_probe(w, 0) is None

    def test_depth_one_matches_search_oracle(self):
        for u, v in SMALL_PAIRS:
            w = difference_word(u, v)
            if _fires_B(w):
                continue
            expected = next((name for name, ga, gb in NIELSEN if _fires_B(w.substitute(ga, gb))), None)
            res = aut_probe(w, 1)
            assert (res.generators[0] if res else None) == expected

    def test_pullback(self):
        for u, v in SMALL_PAIRS[:200]:
            w = difference_word(u, v)
            res = aut_probe(w, 2)
            if res is None:
                continue
            A0, B0 = res.base_pair
            lhs = word_eval(w, res.witness.A, res.witness.B).trace()
            rhs = word_eval(res.image_w, A0, B0).trace()
            assert abs(lhs - rhs) <= 1e-10
            assert abs(lhs) <= 1e-9
            assert res.image_w == w.substitute(res.image_a, res.image_b)
