"""Parser, degree bookkeeping, and Adem normalization."""

import pytest
from hypothesis import given, settings
from hypothesis import strategies as hs

from torsionlab import (
    BOCKSTEIN,
    Monomial,
    P,
    ParseError,
    Prime,
    Sq,
    SteenrodElement,
    adem_normalize,
    admissible_basis,
    binomial_mod_p,
    degree,
    multiply,
    parse_expression,
)


def el(text, p):
    return parse_expression(text, p)


class TestPrime:
    def test_accepts_primes(self):
        for p in (2, 3, 5, 7, 11):
            assert Prime(p) == p

    def test_rejects_composites(self):
        for n in (0, 1, 4, 6, 9, 15):
            with pytest.raises(ValueError):
                Prime(n)


class TestBinomial:
    def test_lucas_small(self):
        assert binomial_mod_p(4, 2, 2) == 0
        assert binomial_mod_p(5, 2, 2) == 0
        assert binomial_mod_p(5, 1, 2) == 1
        assert binomial_mod_p(6, 3, 3) == 2

    def test_negative_upper_index(self):
        # C(-1, k) = (-1)^k
        assert binomial_mod_p(-1, 0, 3) == 1
        assert binomial_mod_p(-1, 1, 3) == 2
        assert binomial_mod_p(-1, 2, 3) == 1

    def test_out_of_range(self):
        assert binomial_mod_p(3, 5, 2) == 0
        assert binomial_mod_p(3, -1, 2) == 0


class TestParser:
    def test_single_generator(self):
        e = el("Sq^2", 2)
        assert str(e) == "Sq^2"
        assert degree(e) == 2

    def test_caret_optional(self):
        assert el("Sq2 Sq1", 2) == el("Sq^2 Sq^1", 2)

    def test_odd_prime_generators(self):
        e = el("P^2 b P^1", 3)
        assert degree(e) == 8 + 1 + 4  # |P^i| = 2i(p-1), |b| = 1

    def test_sums_and_coefficients(self):
        e = el("2 P^2 + P^1 P^1", 3)
        assert adem_normalize(e) == adem_normalize(el("4 P^2", 3))

    def test_subtraction(self):
        assert el("Sq^3 - Sq^3", 2) == SteenrodElement.zero(2)

    def test_parentheses(self):
        lhs = el("(P^7 P^1 - P^8) P^1", 3)
        rhs = el("P^7 P^1 P^1 - P^8 P^1", 3)
        assert lhs == rhs

    def test_bare_scalar(self):
        assert el("3", 5) == 3 * SteenrodElement.unit(5)

    def test_rejects_sq_at_odd_prime(self):
        with pytest.raises(ParseError):
            el("Sq^2", 3)

    def test_rejects_p_at_two(self):
        with pytest.raises(ParseError):
            el("P^2", 2)

    def test_rejects_bockstein_at_two(self):
        with pytest.raises(ParseError):
            el("b", 2)

    def test_rejects_garbage(self):
        with pytest.raises(ParseError):
            el("Sq^2 @ Sq^1", 2)

    def test_rejects_unbalanced_paren(self):
        with pytest.raises(ParseError):
            el("(Sq^2", 2)

    def test_reports_position(self):
        with pytest.raises(ParseError) as err:
            el("Sq^2 !", 2)
        assert err.value.position == 4  # offset of the whitespace run before the bad character


class TestAdmissibility:
    def test_two_primary(self):
        assert Monomial(2, (Sq(4), Sq(2), Sq(1))).is_admissible
        assert not Monomial(2, (Sq(1), Sq(2))).is_admissible

    def test_odd_primary(self):
        # P^i P^j admissible iff i >= p*j; a Bockstein raises the bound.
        assert Monomial(3, (P(3), P(1))).is_admissible
        assert not Monomial(3, (P(2), P(1))).is_admissible
        assert Monomial(3, (P(4), BOCKSTEIN, P(1))).is_admissible
        assert not Monomial(3, (P(3), BOCKSTEIN, P(1))).is_admissible

    def test_no_double_bockstein(self):
        assert not Monomial(3, (BOCKSTEIN, BOCKSTEIN)).is_admissible


class TestAdemNormalization:
    def test_sq1_squared_is_zero(self):
        assert adem_normalize(el("Sq^1 Sq^1", 2)) == SteenrodElement.zero(2)

    def test_sq1_sq2(self):
        assert adem_normalize(el("Sq^1 Sq^2", 2)) == el("Sq^3", 2)

    def test_sq2_sq2(self):
        assert adem_normalize(el("Sq^2 Sq^2", 2)) == el("Sq^3 Sq^1", 2)

    def test_sq2_sq3(self):
        assert adem_normalize(el("Sq^2 Sq^3", 2)) == el("Sq^5 + Sq^4 Sq^1", 2)

    def test_p1_squared(self):
        assert adem_normalize(el("P^1 P^1", 3)) == el("2 P^2", 3)

    def test_p1_b_p1(self):
        got = adem_normalize(el("P^1 b P^1", 3))
        assert got == el("P^2 b + b P^2", 3)

    def test_bockstein_squared_is_zero(self):
        assert adem_normalize(el("b b", 3)) == SteenrodElement.zero(3)

    def test_result_is_admissible(self):
        for text, p in [("Sq^2 Sq^2 Sq^2", 2), ("P^1 P^2 P^1", 3), ("P^1 P^1", 5)]:
            normal = adem_normalize(el(text, p))
            assert all(m.is_admissible for m in normal.terms)

    def test_idempotent(self):
        e = adem_normalize(el("Sq^3 Sq^3 Sq^2", 2))
        assert adem_normalize(e) == e

    def test_degree_preserved(self):
        e = el("P^3 P^3 P^3", 3)
        assert degree(adem_normalize(e)) == degree(e) == 36

    def test_vanishing_coefficient_word(self):
        # P^2 P^1 rewrites with binomial coefficient C(1,2) = 0, so the
        # whole product is zero in the algebra.
        assert adem_normalize(el("P^2 P^1", 3)) == SteenrodElement.zero(3)

    def test_linearity(self):
        a, b = el("Sq^1 Sq^2", 2), el("Sq^2 Sq^2", 2)
        assert adem_normalize(a + b) == adem_normalize(a) + adem_normalize(b)

    def test_p3_cubed_identity(self):
        lhs = adem_normalize(el("P^3 P^3 P^3", 3))
        rhs = adem_normalize(el("(P^7 P^1 - P^8) P^1", 3))
        assert lhs == rhs == el("2 P^8 P^1 + 2 P^7 P^2", 3)


class TestMultiplication:
    def test_unit(self):
        e = el("Sq^2 Sq^1", 2)
        one = SteenrodElement.unit(2)
        assert multiply(e, one) == e
        assert multiply(one, e) == e

    def test_associative_on_normal_forms(self):
        a, b, c = el("Sq^2", 2), el("Sq^3", 2), el("Sq^1", 2)
        lhs = adem_normalize(multiply(multiply(a, b), c))
        rhs = adem_normalize(multiply(a, multiply(b, c)))
        assert lhs == rhs

    def test_prime_mismatch(self):
        from torsionlab import PrimeMismatchError

        with pytest.raises(PrimeMismatchError):
            multiply(el("Sq^1", 2), el("P^1", 3))


class TestAdmissibleBasis:
    def test_degree_zero_is_unit(self):
        assert [str(m) for m in admissible_basis(2, 0)] == ["1"]

    def test_low_degrees_p2(self):
        assert [str(m) for m in admissible_basis(2, 1)] == ["Sq^1"]
        assert [str(m) for m in admissible_basis(2, 3)] == ["Sq^3", "Sq^2 Sq^1"]

    def test_degree_one_odd(self):
        assert [str(m) for m in admissible_basis(3, 1)] == ["b"]

    def test_members_admissible_and_distinct(self):
        for p, d in [(2, 10), (3, 13), (5, 9)]:
            basis = admissible_basis(p, d)
            assert len(set(basis)) == len(basis)
            for m in basis:
                assert m.is_admissible
                assert m.degree == d

    def test_normal_form_lands_in_basis(self):
        basis = set(admissible_basis(2, 6))
        normal = adem_normalize(el("Sq^2 Sq^4 + Sq^1 Sq^2 Sq^3", 2))
        assert set(normal.terms) <= basis


@settings(max_examples=60, deadline=None)
@given(
    p=hs.sampled_from([2, 3]),
    indices=hs.lists(hs.integers(min_value=1, max_value=6), min_size=1, max_size=4),
)
def test_normalization_idempotent_random(p, indices):
    gens = tuple(Sq(i) if p == 2 else P(i) for i in indices)
    e = SteenrodElement.from_word(p, gens)
    normal = adem_normalize(e)
    assert adem_normalize(normal) == normal
    assert all(m.is_admissible for m in normal.terms)
    if not normal == SteenrodElement.zero(p):
        assert degree(normal) == degree(e)
