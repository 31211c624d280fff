"""Stable stems table and exact-sequence calculators."""

import json
import math

import pytest

from torsionlab import (
    AbelianGroup,
    ComputedGroup,
    GroupExtensionProblem,
    StemsTable,
    Unknown,
    associator_obstruction,
    cyclic,
    moore_endomorphisms,
    moore_homotopy,
    mult_by_n,
    positive_n_order,
    stems,
)
from torsionlab.stems import TRIVIAL, Z, default_table, tensor_with_cyclic


class TestAbelianGroup:
    def test_canonical_invariant_factors(self):
        assert AbelianGroup((2, 4, 3)).factors == (12, 2)
        assert AbelianGroup((2, 3)).factors == (6,)
        assert AbelianGroup((1, 1)).factors == ()
        assert AbelianGroup((0, 2)).factors == (0, 2)

    def test_equality_is_isomorphism(self):
        assert AbelianGroup((2, 3)) == AbelianGroup((6,))
        assert AbelianGroup((2, 2)) != AbelianGroup((4,))

    def test_order_and_exponent(self):
        g = AbelianGroup((4, 2))
        assert g.order == 8
        assert g.exponent == 4
        assert Z.order is None
        assert TRIVIAL.order == 1

    def test_p_primary(self):
        assert AbelianGroup((24,)).p_primary(3) == cyclic(3)
        assert AbelianGroup((24,)).p_primary(2) == cyclic(8)
        assert AbelianGroup((24,)).p_primary(5) == TRIVIAL

    def test_str(self):
        assert str(TRIVIAL) == "0"
        assert str(Z) == "Z"
        assert str(AbelianGroup((4, 2))) == "Z/4 + Z/2"


class TestTable:
    def test_shipped_values(self):
        assert stems(0).group == Z
        assert stems(1).group == cyclic(2)
        assert stems(2).group == cyclic(2)
        assert stems(3).group == cyclic(24)
        assert stems(10).group == cyclic(6)

    def test_negative_dimensions_trivial(self):
        for n in (-1, -5):
            assert stems(n).group == TRIVIAL

    def test_out_of_range_is_unknown(self):
        entry = stems(100)
        assert isinstance(entry, Unknown)
        assert not entry

    def test_three_primary_facts(self):
        for dim in (21, 22, 33, 34):
            entry = stems(dim)
            assert entry.group is None
            assert entry.p_primary[3] == TRIVIAL

    def test_named_generators(self):
        gens = default_table().named_generators()
        assert gens["eta"].dimension == 1 and gens["eta"].order == 2
        assert gens["beta_1"].dimension == 10 and gens["beta_1"].order == 3
        assert gens["alpha_1"].order == 3

    def test_merge_external_file(self, tmp_path):
        extra = tmp_path / "extra.json"
        extra.write_text(json.dumps([{"dimension": 7, "factors": [240]}]))
        table = StemsTable.load_default()
        table.merge_file(str(extra))
        assert table.stems(7).group == cyclic(240)
        assert table.stems(7).provenance == "external"
        # The default table is untouched.
        assert isinstance(stems(7), Unknown)


class TestMultByN:
    def test_on_z(self):
        assert mult_by_n(Z, 5) == (TRIVIAL, cyclic(5))

    def test_unit_acts_invertibly(self):
        assert mult_by_n(cyclic(2), 3) == (TRIVIAL, TRIVIAL)

    def test_gcd_arithmetic(self):
        assert mult_by_n(cyclic(24), 3) == (cyclic(3), cyclic(3))

    def test_multiplication_by_one(self):
        for g in (Z, cyclic(24), AbelianGroup((4, 2)), TRIVIAL):
            assert mult_by_n(g, 1) == (TRIVIAL, TRIVIAL)

    def test_tensor_with_cyclic(self):
        assert tensor_with_cyclic(Z, 5) == cyclic(5)
        assert tensor_with_cyclic(cyclic(4), 6) == cyclic(2)
        assert tensor_with_cyclic(TRIVIAL, 7) == TRIVIAL


class TestMooreHomotopy:
    def test_pi0_cyclic(self):
        for n in (2, 3, 5, 9):
            assert moore_homotopy(n, 0).group == cyclic(n)

    def test_pi1_vanishes_for_odd(self):
        for n in (3, 5, 7, 15):
            assert moore_homotopy(n, 1).group == TRIVIAL

    def test_pi1_mod_two(self):
        assert moore_homotopy(2, 1).group == cyclic(2)

    def test_ambiguous_extension_reports_order(self):
        r = moore_homotopy(2, 3)
        assert r.group is None
        assert r.order == 4
        assert isinstance(r.extension, GroupExtensionProblem)
        assert r.extension.resolution == "unknown"

    def test_unknown_when_stems_missing(self):
        assert isinstance(moore_homotopy(2, 7), Unknown)

    def test_order_bookkeeping_across_table(self):
        # |pi_k(S/n)| = |coker(n on pi_k)| * |ker(n on pi_{k-1})| wherever
        # both stems are known and finite orders make sense.
        table = default_table()
        for n in range(2, 11):
            for k in range(0, 4):
                gk, gk1 = table.group(k), table.group(k - 1)
                result = moore_homotopy(n, k, table)
                _, coker = mult_by_n(gk, n)
                ker, _ = mult_by_n(gk1, n)
                assert result.order == coker.order * ker.order


class TestMooreEndomorphisms:
    @pytest.mark.parametrize("n", [3, 5, 7, 9, 15])
    def test_odd_is_cyclic_of_order_n(self, n):
        endos = moore_endomorphisms(n)
        assert endos.group == cyclic(n)

    def test_mod_two_is_z4(self):
        endos = moore_endomorphisms(2)
        assert endos.group == cyclic(4)
        assert endos.order == 4
        assert endos.extension.resolution == "nonsplit"

    def test_order_invariant(self):
        # |[S/n, S/n]| = n * |pi_1(S/n) (x) Z/n|.
        for n in (2, 3, 5, 9):
            endos = moore_endomorphisms(n)
            pi1 = moore_homotopy(n, 1)
            assert endos.order == n * tensor_with_cyclic(pi1.group, n).order


class TestPositiveNOrder:
    def test_odd_moore_spectra(self):
        for n in (3, 5, 7, 9, 15):
            assert positive_n_order(moore_endomorphisms(n), n)

    def test_mod_two_fails(self):
        assert not positive_n_order(moore_endomorphisms(2), 2)

    def test_n_equal_one(self):
        assert positive_n_order(cyclic(5), 1)

    def test_accepts_plain_group(self):
        assert positive_n_order(cyclic(3), 3)
        assert not positive_n_order(cyclic(4), 2)


class TestAssociatorObstruction:
    @pytest.mark.parametrize("n", [5, 7, 25, 35])
    def test_vanishes_prime_to_six(self, n):
        assert associator_obstruction(n).is_trivial

    def test_nonzero_at_three(self):
        r = associator_obstruction(3)
        assert r.group == cyclic(3)
        assert not r.is_trivial

    def test_nonzero_at_two(self):
        r = associator_obstruction(2)
        assert r.order == 4
        assert not r.is_trivial

    def test_matches_moore_homotopy(self):
        for n in (2, 3, 5, 6, 7):
            a = associator_obstruction(n)
            m = moore_homotopy(n, 3)
            assert a.order == m.order


class TestProvenance:
    def test_every_surfaced_value_is_tagged(self):
        assert stems(3).provenance == "table"
        assert stems(-2).provenance == "derived"
        assert moore_homotopy(3, 1).provenance == "derived"
        assert moore_endomorphisms(3).provenance == "derived"
