"""Steenrod action on polynomial-type algebras, used as an independent
cross-check of the Adem rewriting engine.

For p = 2 the algebra is F_2[x_1..x_k] with |x_i| = 1 and the total square
Sq(x) = x + x^2, so Sq^v(x^e) = C(e,v) x^{e+v}.  For odd p it is
E(y_1..y_k) (x) F_p[x_1..x_k] with |y_i| = 1, |x_i| = 2, beta(y_i) = x_i,
P^v(x^e) = C(e,v) x^{e+v(p-1)}, and beta acting as a graded derivation.
Raw (inadmissible) words act letter by letter, products via the Cartan
formula, so normalized and unnormalized elements can be compared without
trusting the rewriting engine.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Iterator

from .steenrod import (
    BOCKSTEIN,
    Generator,
    Monomial,
    Prime,
    PrimeMismatchError,
    SteenrodElement,
    binomial_mod_p,
)

Exps = tuple[int, ...]


@dataclass(frozen=True)
class OracleAlgebra:
    """F_2[x_1..x_k], or E(y_1..y_k) (x) F_p[x_1..x_k] at odd p."""

    prime: int
    gens: int

    def __post_init__(self):
        Prime(self.prime)
        if self.gens < 0:
            raise ValueError("generator count must be non-negative")

    @property
    def width(self) -> int:
        # Length of an exponent tuple.
        return self.gens if self.prime == 2 else 2 * self.gens

    def monomial_degree(self, exps: Exps) -> int:
        if self.prime == 2:
            return sum(exps)
        k = self.gens
        return sum(exps[:k]) + 2 * sum(exps[k:])

    def element(self, terms: dict[Exps, int]) -> "OracleElement":
        return OracleElement(self, dict(terms))

    def one(self) -> "OracleElement":
        return self.element({(0,) * self.width: 1})

    def x(self, i: int) -> "OracleElement":
        exps = [0] * self.width
        exps[i if self.prime == 2 else self.gens + i] = 1
        return self.element({tuple(exps): 1})

    def y(self, i: int) -> "OracleElement":
        if self.prime == 2:
            raise ValueError("exterior generators only exist at odd p")
        exps = [0] * self.width
        exps[i] = 1
        return self.element({tuple(exps): 1})

    def product_class(self, y_count: int, x_count: int) -> "OracleElement":
        """Square-free product y_1..y_q x_{q+1}..x_{q+r} (all x at p = 2)."""
        if self.prime == 2:
            if y_count:
                raise ValueError("no exterior generators at p=2")
            exps = tuple(1 if i < x_count else 0 for i in range(self.gens))
            return self.element({exps: 1})
        if y_count + x_count > self.gens:
            raise ValueError("not enough generators")
        ys = tuple(1 if i < y_count else 0 for i in range(self.gens))
        xs = tuple(1 if y_count <= i < y_count + x_count else 0
                   for i in range(self.gens))
        return self.element({ys + xs: 1})


@dataclass
class OracleElement:
    algebra: OracleAlgebra
    terms: dict[Exps, int] = field(default_factory=dict)

    def __post_init__(self):
        p = self.algebra.prime
        clean = {}
        for exps, c in self.terms.items():
            if len(exps) != self.algebra.width:
                raise ValueError("exponent tuple has wrong length")
            if p != 2 and any(e > 1 for e in exps[:self.algebra.gens]):
                raise ValueError("exterior exponents must be 0 or 1")
            c %= p
            if c:
                clean[exps] = c
        self.terms = clean

    def is_zero(self) -> bool:
        return not self.terms

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, OracleElement):
            return NotImplemented
        return self.algebra == other.algebra and self.terms == other.terms

    def __add__(self, other: "OracleElement") -> "OracleElement":
        if self.algebra != other.algebra:
            raise ValueError("mismatched oracle algebras")
        p = self.algebra.prime
        terms = dict(self.terms)
        for exps, c in other.terms.items():
            terms[exps] = (terms.get(exps, 0) + c) % p
        return OracleElement(self.algebra, terms)

    def __neg__(self) -> "OracleElement":
        return OracleElement(self.algebra, {e: -c for e, c in self.terms.items()})

    def __sub__(self, other: "OracleElement") -> "OracleElement":
        return self + (-other)

    def __mul__(self, other: "OracleElement") -> "OracleElement":
        if self.algebra != other.algebra:
            raise ValueError("mismatched oracle algebras")
        p, k = self.algebra.prime, self.algebra.gens
        out: dict[Exps, int] = {}
        for ea, ca in self.terms.items():
            for eb, cb in other.terms.items():
                if p == 2:
                    exps = tuple(a + b for a, b in zip(ea, eb))
                    sign = 1
                else:
                    ya, yb = ea[:k], eb[:k]
                    if any(a and b for a, b in zip(ya, yb)):
                        continue  # y_i^2 = 0
                    # Koszul sign from moving each y of b past the later
                    # y's of a (variable-major canonical order).
                    swaps = sum(yb[i] * sum(ya[i + 1:]) for i in range(k))
                    sign = -1 if swaps % 2 else 1
                    exps = (tuple(a + b for a, b in zip(ya, yb))
                            + tuple(a + b for a, b in zip(ea[k:], eb[k:])))
                c = (out.get(exps, 0) + sign * ca * cb) % p
                if c:
                    out[exps] = c
                else:
                    out.pop(exps, None)
        return OracleElement(self.algebra, out)


# ---------------------------------------------------------------------------
# Generator actions
# ---------------------------------------------------------------------------

def _distributions(exps: Exps, budget: int, p: int) -> Iterator[tuple[Exps, int]]:
    """All (increment vector, prod of C(e_j, v_j) mod p) with sum = budget."""
    n = len(exps)

    def rec(j: int, remaining: int, acc: list[int], weight: int):
        if j == n:
            if remaining == 0:
                yield tuple(acc), weight
            return
        e = exps[j]
        for v in range(min(e, remaining) + 1):
            c = binomial_mod_p(e, v, p)
            if c:
                acc.append(v)
                yield from rec(j + 1, remaining - v, acc, (weight * c) % p)
                acc.pop()

    yield from rec(0, budget, [], 1)


def _apply_sq(i: int, terms: dict[Exps, int]) -> dict[Exps, int]:
    out: dict[Exps, int] = {}
    for exps, c in terms.items():
        for v, w in _distributions(exps, i, 2):
            ne = tuple(e + d for e, d in zip(exps, v))
            out[ne] = (out.get(ne, 0) + c * w) % 2
    return {e: c for e, c in out.items() if c}


def _apply_p(i: int, terms: dict[Exps, int], k: int, p: int) -> dict[Exps, int]:
    out: dict[Exps, int] = {}
    for exps, c in terms.items():
        ys, xs = exps[:k], exps[k:]
        for v, w in _distributions(xs, i, p):
            ne = ys + tuple(e + d * (p - 1) for e, d in zip(xs, v))
            val = (out.get(ne, 0) + c * w) % p
            if val:
                out[ne] = val
            else:
                out.pop(ne, None)
    return out


def _apply_bockstein(terms: dict[Exps, int], k: int, p: int) -> dict[Exps, int]:
    out: dict[Exps, int] = {}
    for exps, c in terms.items():
        ys, xs = list(exps[:k]), list(exps[k:])
        seen_odd = 0
        for j in range(k):
            if ys[j]:
                sign = -1 if seen_odd % 2 else 1
                ny, nx = list(ys), list(xs)
                ny[j] = 0
                nx[j] += 1
                ne = tuple(ny) + tuple(nx)
                val = (out.get(ne, 0) + sign * c) % p
                if val:
                    out[ne] = val
                else:
                    out.pop(ne, None)
                seen_odd += 1
    return out


def _apply_generator(g: Generator, terms: dict[Exps, int],
                     algebra: OracleAlgebra) -> dict[Exps, int]:
    p, k = algebra.prime, algebra.gens
    if g.kind == "Sq":
        return _apply_sq(g.index, terms)
    if g.kind == "P":
        return _apply_p(g.index, terms, k, p)
    return _apply_bockstein(terms, k, p)


def act(op: SteenrodElement, v: OracleElement) -> OracleElement:
    """Action of op (possibly a raw inadmissible word) on v, letters applied
    right to left, products by the Cartan formula, sums linearly."""
    algebra = v.algebra
    if op.prime != algebra.prime:
        raise PrimeMismatchError(
            f"operation over p={op.prime}, oracle over p={algebra.prime}")
    p = algebra.prime
    total: dict[Exps, int] = {}
    for mono, coef in op.terms.items():
        terms = dict(v.terms)
        for g in reversed(mono.word):
            if not terms:
                break
            terms = _apply_generator(g, terms, algebra)
        for exps, c in terms.items():
            val = (total.get(exps, 0) + coef * c) % p
            if val:
                total[exps] = val
            else:
                total.pop(exps, None)
    return OracleElement(algebra, total)


# ---------------------------------------------------------------------------
# Fast symmetric action at p = 2
#
# The class u_k = x_1..x_k and everything a Sq-word produces from it are
# symmetric polynomials.  States are stored as sorted (value, count) tuples
# over the k nonzero exponents; Sq^i moves whole value-groups, and the
# orbit-sum bookkeeping is an exact multinomial count reduced mod 2.
# ---------------------------------------------------------------------------

SymState = dict[tuple[tuple[int, int], ...], int]


def _group_splits(a: int, m: int, budget: int) -> Iterator[tuple[tuple[tuple[int, int], ...], int, int]]:
    """Split m parts of value a among increments v with C(a,v) odd.

    Yields (((a+v, count), ...), spent, weight) per split."""
    allowed = [v for v in range(a + 1) if math.comb(a, v) % 2 == 1]

    def rec(idx: int, left_parts: int, left_budget: int,
            acc: list[tuple[int, int]], weight: int):
        if idx == len(allowed):
            if left_parts == 0:
                yield tuple(acc), budget - left_budget, weight
            return
        v = allowed[idx]
        if idx == len(allowed) - 1 and v == 0:
            # Remaining parts stay put.
            if left_parts:
                acc.append((a, left_parts))
                yield from rec(idx + 1, 0, left_budget, acc, weight)
                acc.pop()
            else:
                yield from rec(idx + 1, 0, left_budget, acc, weight)
            return
        max_cnt = left_parts if v == 0 else min(left_parts, left_budget // v)
        for cnt in range(max_cnt + 1):
            if cnt:
                acc.append((a + v, cnt))
            yield from rec(idx + 1, left_parts - cnt, left_budget - v * cnt,
                           acc, weight)
            if cnt:
                acc.pop()

    # Put v = 0 last so the stay-put shortcut applies.
    allowed = sorted(allowed, reverse=True)
    yield from rec(0, m, budget, [], 1)


def _sq_symmetric(state: SymState, i: int) -> SymState:
    out: SymState = {}
    for items, coeff in state.items():
        # Distribute the budget i over the value groups.
        groups = list(items)

        def rec(gi: int, remaining: int,
                contribs: list[tuple[int, int, int]]):
            if gi == len(groups):
                if remaining:
                    return
                # Merge contributions into a partition and count the
                # orbit multiplicity per target value.
                merged: dict[int, list[int]] = {}
                for val, cnt, _src in contribs:
                    merged.setdefault(val, []).append(cnt)
                factor = 1
                for val, cnts in merged.items():
                    total = sum(cnts)
                    left = total
                    for cnt in cnts[:-1]:
                        factor *= math.comb(left, cnt)
                        left -= cnt
                if factor % 2 == 0:
                    return
                part = tuple(sorted(
                    ((val, sum(cnts)) for val, cnts in merged.items()),
                    reverse=True))
                out[part] = (out.get(part, 0) + coeff) % 2
                if out[part] == 0:
                    del out[part]
                return
            a, m = groups[gi]
            for split, spent, _w in _group_splits(a, m, remaining):
                rec(gi + 1, remaining - spent,
                    contribs + [(val, cnt, gi) for val, cnt in split])

        rec(0, i, [])
    return out


def _act_word_symmetric(word: tuple[Generator, ...], k: int) -> SymState:
    """Action of a Sq-word on u_k = x_1..x_k, as a symmetric state."""
    state: SymState = {(((1, k),) if k else ()): 1}
    for g in reversed(word):
        if not state:
            break
        state = _sq_symmetric(state, g.index)
    return state


def _act_symmetric(op: SteenrodElement, k: int) -> SymState:
    total: SymState = {}
    for mono, coef in op.terms.items():
        for part, c in _act_word_symmetric(mono.word, k).items():
            v = (total.get(part, 0) + coef * c) % 2
            if v:
                total[part] = v
            else:
                total.pop(part, None)
    return total


# ---------------------------------------------------------------------------
# Equality checking
# ---------------------------------------------------------------------------

def _max_bockstein_count(e: SteenrodElement) -> int:
    counts = [sum(1 for g in m.word if g.kind == "b") for m in e.terms]
    return max(counts, default=0)


def oracle_equal(a: SteenrodElement, b: SteenrodElement,
                 max_degree: int) -> bool:
    """True iff a and b act identically on the oracle test classes, a
    genuine equality test for elements of degree <= max_degree."""
    if a.prime != b.prime:
        raise PrimeMismatchError("cannot compare elements over different primes")
    diff = a - b
    if diff.is_zero():
        return True
    p = a.prime
    if p == 2:
        k = max(1, max_degree)
        return not _act_symmetric(diff, k)
    x_count = max_degree // (2 * (p - 1)) + 1
    for q in range(_max_bockstein_count(diff) + 1):
        algebra = OracleAlgebra(p, q + x_count)
        cls = algebra.product_class(q, x_count)
        if not act(diff, cls).is_zero():
            return False
    return True
