import random
from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from plurigenus.basket import Basket
from plurigenus.bounds import sections_lower_bound
from plurigenus.exactmath import DomainError
from plurigenus.formula import (
    CanonicalInvariants,
    chi_mK,
    h0_ample,
    integrality_check,
    plurigenus_table,
    table_to_json_dict,
    table_to_tsv,
)


def inv(k3, chi, basket=None):
    return CanonicalInvariants(Fraction(k3), chi, basket if basket is not None else Basket())


FLETCHER_EXAMPLE = inv(Fraction(1, 26), 1, Basket([(26, 1)]))


class TestChiMK:
    def test_endpoints(self):
        assert chi_mK(inv(2, 1), 0) == 1
        assert chi_mK(inv(2, 1), 1) == -1
        assert chi_mK(FLETCHER_EXAMPLE, 0) == 1
        assert chi_mK(FLETCHER_EXAMPLE, 1) == -1

    def test_small_example(self):
        assert chi_mK(inv(2, 1), 2) == -2

    def test_negative_level(self):
        with pytest.raises(DomainError):
            chi_mK(inv(2, 1), -1)

    @settings(max_examples=100, deadline=None)
    @given(
        st.fractions(min_value=-100, max_value=100),
        st.integers(-50, 50),
        st.lists(st.sampled_from([(2, 1), (3, 1), (5, 2), (7, 3), (11, 4)]), max_size=4),
    )
    def test_endpoint_identities_hold_generally(self, k3, chi, sings):
        v = inv(k3, chi, Basket(sings))
        assert chi_mK(v, 0) == chi
        assert chi_mK(v, 1) == -chi

    def test_basket_additivity(self):
        b1 = Basket([(5, 2), (7, 3)])
        b2 = Basket([(2, 1), (5, 2)])
        for m in range(8):
            assert chi_mK(inv(3, 2, b1 + b2), m) == chi_mK(inv(3, 2, b1), m) + b2.contribution_sum(m)

    def test_affine_linear_in_k3_and_chi(self):
        b = Basket([(7, 2)])
        m = 9
        # three-point interpolation must reproduce a fourth point exactly
        at = lambda k3, chi: chi_mK(CanonicalInvariants(Fraction(k3), chi, b), m)
        slope_k3 = at(1, 0) - at(0, 0)
        assert slope_k3 == Fraction((2 * m - 1) * m * (m - 1), 12)
        assert at(Fraction(7, 3), 0) == at(0, 0) + Fraction(7, 3) * slope_k3
        slope_chi = at(0, 1) - at(0, 0)
        assert slope_chi == -(2 * m - 1)
        assert at(0, 5) == at(0, 0) + 5 * slope_chi


class TestH0Ample:
    def test_fletcher_value(self):
        assert h0_ample(FLETCHER_EXAMPLE, 13) == 14

    def test_gorenstein_value(self):
        assert h0_ample(inv(2, -1), 2) == 4

    def test_preconditions(self):
        with pytest.raises(DomainError):
            h0_ample(inv(1, 1), 1)
        with pytest.raises(DomainError):
            h0_ample(inv(0, 1), 2)
        with pytest.raises(DomainError):
            h0_ample(inv(-2, 1), 2)

    def test_case2_scenario_lower_bound(self):
        rng = random.Random(331)
        extras = [(2, 1), (3, 1), (4, 1), (5, 2), (7, 3), (11, 2), (13, 5)]
        for C in (1, 2, 3):
            for _ in range(40):
                sings = [(26 * C, 1)]
                sings += rng.sample(extras, rng.randint(0, 2))
                v = CanonicalInvariants(
                    Fraction(rng.randint(1, 60), rng.randint(1, 40)),
                    rng.randint(-2 * C, C),
                    Basket(sings),
                )
                assert h0_ample(v, 13 * C) >= sections_lower_bound(C)


class TestTableAndIntegrality:
    def test_table_example(self):
        assert plurigenus_table(inv(2, 1), 2) == [
            (0, Fraction(1)),
            (1, Fraction(-1)),
            (2, Fraction(-2)),
        ]

    def test_table_m0(self):
        assert plurigenus_table(inv(5, -3), 0) == [(0, Fraction(-3))]

    def test_table_last_row_fletcher(self):
        rows = plurigenus_table(FLETCHER_EXAMPLE, 13)
        assert rows[-1] == (13, Fraction(14))

    def test_table_matches_pointwise_evaluator(self):
        v = inv(Fraction(5, 7), -2, Basket([(7, 2), (7, 2), (4, 1)]))
        for m, value in plurigenus_table(v, 30):
            assert value == chi_mK(v, m)

    def test_integrality_examples(self):
        assert integrality_check(inv(1, 1), 2) == [2]
        assert integrality_check(inv(2, 1), 2) == []
        assert integrality_check(inv(Fraction(22, 7), 9), 1) == []

    def test_serialization(self):
        rows = plurigenus_table(inv(1, 1), 2)
        assert table_to_tsv(rows) == "0\t1\n1\t-1\n2\t-5/2"
        assert table_to_json_dict(rows) == {
            "table": [
                {"m": 0, "value": "1"},
                {"m": 1, "value": "-1"},
                {"m": 2, "value": "-5/2"},
            ]
        }


class TestCanonicalInvariants:
    def test_coerces_k3(self):
        v = CanonicalInvariants(2, 1, Basket())
        assert v.k3 == Fraction(2)

    def test_rejects_bad_fields(self):
        with pytest.raises(DomainError):
            CanonicalInvariants(Fraction(1), Fraction(1, 2), Basket())  # type: ignore[arg-type]
        with pytest.raises(DomainError):
            CanonicalInvariants(Fraction(1), 1, [(2, 1)])  # type: ignore[arg-type]
