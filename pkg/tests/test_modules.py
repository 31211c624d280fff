"""Finite graded modules: constructors, Cartan tensor products,
Adem-consistency checking, and decomposability."""

import random

import numpy as np
import pytest

from torsionlab import (
    BOCKSTEIN,
    FiniteModule,
    Generator,
    P,
    Sq,
    act_element,
    consistency_check,
    direct_sum,
    hypothetical_Cb_module,
    is_decomposable,
    load_module,
    moore_module,
    parse_expression,
    shift,
    sphere_module,
    tensor,
    violation_classes,
)
from torsionlab.modules import p3_cubed_relation


def el(text, p):
    return parse_expression(text, p)


def random_module(p, rng, max_total=4):
    """A random graded module with random actions of the degree-raising
    generators (not necessarily Adem-consistent; fine for structural
    tests like tensor associativity)."""
    degrees = sorted(rng.sample(range(5), rng.randint(1, 3)))
    dims = {}
    total = 0
    for d in degrees:
        n = rng.randint(1, 2)
        if total + n > max_total:
            break
        dims[d] = n
        total += n
    gens = [Sq(1), Sq(2)] if p == 2 else [BOCKSTEIN, P(1)]
    actions = {}
    for g in gens:
        gdeg = g.degree_at(p)
        for d in dims:
            if d + gdeg in dims:
                mat = np.array(
                    [[rng.randrange(p) for _ in range(dims[d])]
                     for _ in range(dims[d + gdeg])],
                    dtype=np.int64,
                )
                actions[(g, d)] = mat
    return FiniteModule(p, dims, actions)


class TestConstructors:
    def test_sphere(self):
        s = sphere_module(2, 3)
        assert s.dims == {3: 1}
        assert s.total_dim == 1

    def test_moore_p2(self):
        m = moore_module(2)
        assert m.dims == {0: 1, 1: 1}
        assert m.action(Sq(1), 0).tolist() == [[1]]

    def test_moore_odd(self):
        m = moore_module(5)
        assert m.dims == {0: 1, 1: 1}
        assert m.action(BOCKSTEIN, 0).tolist() == [[1]]

    def test_shift(self):
        m = shift(moore_module(2), 3)
        assert m.dims == {3: 1, 4: 1}
        assert m.action(Sq(1), 3).tolist() == [[1]]

    def test_direct_sum_dims(self):
        s = direct_sum(moore_module(2), sphere_module(2, 1))
        assert s.dims == {0: 1, 1: 2}

    def test_rejects_bad_shapes(self):
        with pytest.raises(Exception):
            FiniteModule(2, {0: 1, 1: 1}, {(Sq(1), 0): np.zeros((2, 2), dtype=np.int64)})


class TestTensor:
    def test_kunneth_dimensions(self):
        t = tensor(moore_module(2), moore_module(2))
        assert {d: t.dim(d) for d in t.degrees} == {0: 1, 1: 2, 2: 1}

    def test_unit_laws(self):
        m = moore_module(3)
        one = sphere_module(3, 0)
        assert tensor(m, one) == m
        assert tensor(one, m) == m

    def test_cartan_sq2_on_smash_square(self):
        t = tensor(moore_module(2), moore_module(2))
        # Sq^2 = Sq^1 (x) Sq^1 is the only contribution from degree 0.
        assert act_element(t, el("Sq^2", 2), 0).tolist() == [[1]]

    def test_cartan_bockstein_sign(self):
        # On u (x) v with |u| odd the right-hand term of the derivation
        # rule picks up a minus sign: b(u (x) v) = b(u) (x) v - u (x) b(v).
        m = moore_module(3)
        t = tensor(shift(m, 1), m)
        mat = act_element(t, el("b", 3), 1)
        # Degree 1 is spanned by u (x) v; degree 2 by u (x) b(v) then
        # b(u) (x) v, so the columns read (-1, +1) mod 3.
        assert mat.tolist() == [[2], [1]]

    def test_associativity_random(self):
        # (A (x) B) (x) C and A (x) (B (x) C) agree on the nose after the
        # canonical relabeling of basis triples; the permutation must
        # intertwine every action matrix exactly.
        from torsionlab.modules import tensor_basis

        def left_triples(a, b, c, ab, n):
            out = []
            for m in sorted(ab.dims):
                k = n - m
                if c.dim(k) == 0:
                    continue
                for (i, ai, j, bi) in tensor_basis(a, b, m):
                    for ci in range(c.dim(k)):
                        out.append((i, ai, j, bi, k, ci))
            return out

        def right_triples(a, b, c, bc, n):
            out = []
            for i in sorted(a.dims):
                m = n - i
                if bc.dim(m) == 0:
                    continue
                for ai in range(a.dim(i)):
                    for (j, bi, k, ci) in tensor_basis(b, c, m):
                        out.append((i, ai, j, bi, k, ci))
            return out

        rng = random.Random(7)
        for _ in range(12):
            p = rng.choice([2, 3])
            a, b, c = (random_module(p, rng) for _ in range(3))
            ab, bc = tensor(a, b), tensor(b, c)
            left, right = tensor(ab, c), tensor(a, bc)
            assert left.dims == right.dims
            perm = {}
            for n in left.dims:
                lt = left_triples(a, b, c, ab, n)
                rt = right_triples(a, b, c, bc, n)
                assert sorted(lt) == sorted(rt)
                pos = {t: i for i, t in enumerate(rt)}
                perm[n] = [pos[t] for t in lt]
            for key in set(left.actions) | set(right.actions):
                g, n = key
                n2 = n + g.degree_at(p)
                lmat = left.action(g, n)
                rmat = right.action(g, n)
                # Row r of the permuted left action is entry perm[n2][r]
                # of the right action in right-basis coordinates.
                permuted = np.zeros_like(rmat)
                for r_left, r_right in enumerate(perm[n2]):
                    for c_left, c_right in enumerate(perm[n]):
                        permuted[r_right, c_right] = lmat[r_left, c_left]
                assert permuted.tolist() == rmat.tolist()

    def test_tensor_consistency_preserved(self):
        # The smash square of a consistent module stays consistent.
        t = tensor(moore_module(2), moore_module(2))
        assert consistency_check(t, 20) == []
        t3 = tensor(moore_module(3), moore_module(3))
        assert consistency_check(t3, 20) == []


class TestActElement:
    def test_zero_on_empty_target(self):
        m = moore_module(3)
        out = act_element(m, el("P^1", 3), 0)
        assert out.shape == (0, 1)

    def test_sum_of_words(self):
        m = tensor(moore_module(2), moore_module(2))
        s = el("Sq^2 + Sq^1 Sq^1", 2)
        direct = (act_element(m, el("Sq^2", 2), 0)
                  + act_element(m, el("Sq^1 Sq^1", 2), 0)) % 2
        assert act_element(m, s, 0).tolist() == direct.tolist()

    def test_dead_branch_does_not_corrupt_sum(self):
        # One word lands in an empty degree while another does not; the
        # nonzero contribution must survive.
        cb = hypothetical_Cb_module()
        s = el("P^3 P^3 + P^6", 3)
        out = act_element(cb, s, 0)
        assert out.shape == (1, 1)
        expected = (act_element(cb, el("P^3 P^3", 3), 0)
                    + act_element(cb, el("P^6", 3), 0)) % 3
        assert out.tolist() == expected.tolist()


class TestConsistencyCheck:
    def test_clean_modules(self):
        assert consistency_check(moore_module(2), 30) == []
        assert consistency_check(moore_module(3), 30) == []
        assert consistency_check(sphere_module(5, 0), 30) == []

    def test_detects_fabricated_violation(self):
        # Sq^1 Sq^1 = 0, so a rank-1 chain x ->Sq1 y ->Sq1 z is inconsistent.
        bad = FiniteModule(
            2,
            {0: 1, 1: 1, 2: 1},
            {
                (Sq(1), 0): np.array([[1]], dtype=np.int64),
                (Sq(1), 1): np.array([[1]], dtype=np.int64),
            },
        )
        violations = consistency_check(bad, 10)
        assert violations
        assert (0, 2) in violation_classes(violations)

    def test_cb_module_single_class(self):
        cb = hypothetical_Cb_module()
        violations = consistency_check(cb, 40)
        classes = sorted(violation_classes(violations))
        assert classes == [(0, 36)]
        lhs_words = {str(v.lhs) for v in violations}
        assert "P^3 P^3 P^3" in lhs_words

    def test_p3_cubed_relation_parses_to_equal_normal_forms(self):
        from torsionlab import adem_normalize

        lhs, rhs = p3_cubed_relation()
        assert adem_normalize(lhs) == adem_normalize(rhs)


class TestCbModule:
    def test_shape(self):
        cb = hypothetical_Cb_module()
        assert cb.prime == 3
        assert cb.total_dim == 7
        assert sorted(cb.degrees) == [0, 1, 12, 13, 24, 25, 36]

    def test_bocksteins_link_cells(self):
        cb = hypothetical_Cb_module()
        for d in (0, 12, 24):
            assert cb.action(BOCKSTEIN, d).tolist() == [[1]]

    def test_p3_steps(self):
        cb = hypothetical_Cb_module()
        for d in (0, 12, 24):
            assert cb.action(P(3), d).tolist() == [[1]]

    def test_p1_acts_as_zero(self):
        cb = hypothetical_Cb_module()
        for d in cb.degrees:
            assert not np.any(act_element(cb, el("P^1", 3), d))


class TestDecomposability:
    def test_sphere_indecomposable(self):
        r = is_decomposable(sphere_module(2, 0))
        assert not r and r.certified

    def test_moore_indecomposable(self):
        r = is_decomposable(moore_module(2))
        assert not r and r.certified

    def test_smash_square_indecomposable(self):
        r = is_decomposable(tensor(moore_module(2), moore_module(2)))
        assert not r and r.certified

    def test_direct_sum_decomposable(self):
        r = is_decomposable(direct_sum(moore_module(2), shift(moore_module(2), 1)))
        assert r
        assert len(r.summands) == 2
        assert sum(s.total_dim for s in r.summands) == 4

    def test_random_sums_decomposable(self):
        rng = random.Random(11)
        pieces = [
            moore_module(2),
            sphere_module(2, 0),
            shift(moore_module(2), 2),
            tensor(moore_module(2), moore_module(2)),
        ]
        for _ in range(8):
            a, b = rng.choice(pieces), rng.choice(pieces)
            assert is_decomposable(direct_sum(a, shift(b, 5)))

    def test_odd_prime_sum(self):
        assert is_decomposable(direct_sum(moore_module(3), shift(moore_module(3), 4)))


class TestSerialization:
    def test_roundtrip(self, tmp_path):
        from torsionlab import save_module

        for m in (moore_module(2), hypothetical_Cb_module(),
                  tensor(moore_module(3), moore_module(3))):
            path = tmp_path / "m.json"
            save_module(m, str(path))
            assert load_module(str(path)) == m
