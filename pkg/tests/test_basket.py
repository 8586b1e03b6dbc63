import math
from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from plurigenus.basket import (
    Basket,
    BasketParseError,
    QuotientSingularity,
    canonicalize,
    contribution,
    contribution_closed_1,
    contribution_table,
    index,
)
from plurigenus.exactmath import DomainError, lcm_range

from helpers import l_bruteforce


def valid_weights(r):
    if r == 1:
        return [0]
    return [a for a in range(1, r) if math.gcd(a, r) == 1]


sing_strategy = st.integers(1, 40).flatmap(
    lambda r: st.sampled_from(valid_weights(r)).map(lambda a: QuotientSingularity(r, a))
)


class TestQuotientSingularity:
    def test_accepts_valid(self):
        QuotientSingularity(5, 3)
        QuotientSingularity(1, 0)
        QuotientSingularity(2, 1)

    @pytest.mark.parametrize("r,a", [(0, 0), (-3, 1), (1, 1), (5, 5), (5, -1), (6, 2), (4, 2)])
    def test_rejects_invalid(self, r, a):
        with pytest.raises(DomainError):
            QuotientSingularity(r, a)

    @pytest.mark.parametrize(
        "sing,expected",
        [((5, 3), (5, 2)), ((5, 2), (5, 2)), ((2, 1), (2, 1)), ((1, 0), (1, 0))],
    )
    def test_canonicalize(self, sing, expected):
        canon = canonicalize(QuotientSingularity(*sing))
        assert (canon.r, canon.a) == expected
        assert canonicalize(canon) == canon


class TestContribution:
    def test_empty_sum(self):
        assert contribution(QuotientSingularity(5, 2), 1) == 0
        assert contribution(QuotientSingularity(5, 2), 0) == 0
        assert contribution(QuotientSingularity(1, 0), 100) == 0

    def test_examples(self):
        assert contribution(QuotientSingularity(2, 1), 2) == Fraction(1, 4)
        assert contribution(QuotientSingularity(5, 2), 3) == 1

    def test_negative_level(self):
        with pytest.raises(DomainError):
            contribution(QuotientSingularity(5, 2), -1)

    def test_matches_bruteforce_oracle(self):
        for r in range(1, 21):
            for a in valid_weights(r):
                for m in range(0, 2 * r + 1):
                    assert contribution(QuotientSingularity(r, a), m) == l_bruteforce(r, a, m)

    def test_nonnegative(self):
        for r in range(1, 15):
            for a in valid_weights(r):
                for m in range(0, 3 * r):
                    assert contribution(QuotientSingularity(r, a), m) >= 0

    @settings(max_examples=150, deadline=None)
    @given(sing_strategy, st.integers(0, 120))
    def test_symmetry(self, q, m):
        mirror = QuotientSingularity(q.r, (q.r - q.a) % q.r if q.r > 1 else 0)
        assert contribution(q, m) == contribution(mirror, m)

    @settings(max_examples=150, deadline=None)
    @given(sing_strategy, st.integers(0, 80))
    def test_periodicity(self, q, m):
        step = Fraction(q.r * q.r - 1, 12)
        assert contribution(q, m + q.r) == contribution(q, m) + step

    def test_table_matches_pointwise(self):
        q = QuotientSingularity(7, 3)
        table = contribution_table(q, 25)
        assert table == [contribution(q, m) for m in range(26)]
        assert contribution_table(q, 0) == [Fraction(0)]
        with pytest.raises(DomainError):
            contribution_table(q, -1)


class TestClosedForm:
    def test_examples(self):
        assert contribution_closed_1(2, 2) == Fraction(1, 4)
        assert contribution_closed_1(26, 13) == Fraction(53, 2)
        for r in (1, 2, 7, 26, 60):
            assert contribution_closed_1(r, 1) == 0

    def test_agrees_with_defining_sum(self):
        for r in range(1, 26):
            sing = QuotientSingularity(r, 1) if r > 1 else QuotientSingularity(1, 0)
            table = contribution_table(sing, 80)
            for m in range(81):
                assert table[m] == contribution_closed_1(r, m)

    @pytest.mark.parametrize("r,m", [(0, 3), (-1, 0), (2, -1)])
    def test_domain_errors(self, r, m):
        with pytest.raises(DomainError):
            contribution_closed_1(r, m)


class TestBasket:
    def test_index_examples(self):
        assert Basket().index() == 1
        assert index(Basket([(2, 1), (3, 1)])) == 6
        assert index(Basket([(4, 1), (6, 1)])) == 12

    def test_canonical_storage_and_merge(self):
        b = Basket([(5, 3), (5, 2), (2, 1)])
        assert b.entries == ((QuotientSingularity(2, 1), 1), (QuotientSingularity(5, 2), 2))
        assert b.total == 3
        assert b.max_r == 5

    def test_smooth_points_normalized_away(self):
        assert Basket([(1, 0), (1, 0)]) == Basket()
        assert Basket([(1, 0), (2, 1)]) == Basket([(2, 1)])
        assert Basket([(1, 0)]).index() == 1

    def test_equality_and_hash(self):
        assert Basket([(5, 3)]) == Basket([(5, 2)])
        assert hash(Basket([(5, 3)])) == hash(Basket([(5, 2)]))
        assert Basket([(5, 2)]) != Basket([(5, 1)])

    def test_addition_merges_multiplicities(self):
        combined = Basket([(2, 1)]) + Basket([(2, 1), (3, 1)])
        assert combined == Basket([(2, 1), (2, 1), (3, 1)])
        assert combined.total == 3

    def test_from_counts_rejects_bad_multiplicity(self):
        with pytest.raises(DomainError):
            Basket.from_counts([((2, 1), 0)])

    def test_contribution_sum_weights_multiplicity(self):
        b = Basket.from_counts([((5, 2), 3)])
        single = contribution(QuotientSingularity(5, 2), 7)
        assert b.contribution_sum(7) == 3 * single
        assert b.contribution_sum_table(7)[7] == 3 * single

    @settings(max_examples=100, deadline=None)
    @given(st.lists(sing_strategy, max_size=5))
    def test_index_divides_lcm_range(self, sings):
        b = Basket(sings)
        if b.max_r >= 2:
            assert lcm_range(2, b.max_r) % b.index() == 0


class TestBasketText:
    def test_parse_spec_example(self):
        b = Basket.parse("2,1;3*5,2;26,1")
        assert b.entries == (
            (QuotientSingularity(2, 1), 1),
            (QuotientSingularity(5, 2), 3),
            (QuotientSingularity(26, 1), 1),
        )
        assert b.to_text() == "2,1;3*5,2;26,1"

    def test_round_trip(self):
        for text in ("", "2,1", "5,3;5,2", "2*7,2;3,1"):
            b = Basket.parse(text)
            assert Basket.parse(b.to_text()) == b

    def test_parse_canonicalizes_and_merges(self):
        assert Basket.parse("5,3;5,2").to_text() == "2*5,2"
        assert Basket.parse("1,0") == Basket()

    @pytest.mark.parametrize("bad", ["6,2", "abc", "2,", "0*2,1", "2;1", "5,5", "0,0"])
    def test_parse_rejects_naming_entry(self, bad):
        with pytest.raises(BasketParseError) as exc:
            Basket.parse(bad)
        assert bad.split(";")[0] in str(exc.value)

    def test_json_round_trip(self):
        b = Basket.parse("2,1;3*5,2")
        data = b.to_json_dict()
        assert data == {
            "basket": [
                {"r": 2, "a": 1, "count": 1},
                {"r": 5, "a": 2, "count": 3},
            ]
        }
        assert Basket.from_json_dict(data) == b

    def test_json_default_count_and_errors(self):
        assert Basket.from_json_dict({"basket": [{"r": 2, "a": 1}]}) == Basket([(2, 1)])
        with pytest.raises(BasketParseError):
            Basket.from_json_dict({"basket": [{"r": 6, "a": 2}]})
        with pytest.raises(BasketParseError):
            Basket.from_json_dict({"nope": []})
        with pytest.raises(BasketParseError):
            Basket.from_json_dict({"basket": [{"r": 2}]})
