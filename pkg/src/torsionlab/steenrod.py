"""Mod-p Steenrod algebra elements and Adem normalization.

Elements are F_p-linear combinations of words in the generators Sq^i
(p = 2) or beta, P^i (p odd).  Products are free word concatenation;
`adem_normalize` rewrites any element into the admissible basis using the
closed-form Adem relations:

  p = 2, a < 2b:
    Sq^a Sq^b = sum_c  C(b-c-1, a-2c) Sq^{a+b-c} Sq^c

  p odd, a < pb:
    P^a P^b = sum_t (-1)^{a+t} C((p-1)(b-t)-1, a-pt) P^{a+b-t} P^t

  p odd, a <= pb:
    P^a b P^b = sum_t (-1)^{a+t}   C((p-1)(b-t),   a-pt)   b P^{a+b-t} P^t
              - sum_t (-1)^{a+t}   C((p-1)(b-t)-1, a-pt-1)   P^{a+b-t} b P^t

with all binomials taken mod p, b^2 = 0, and Sq^0 = P^0 = 1.
"""

from __future__ import annotations

import math
import re
from typing import Iterator, Literal, NamedTuple, Union


class SteenrodError(Exception):
    """Base class for errors raised by the algebra layer."""


class PrimeMismatchError(SteenrodError):
    """Operands or generators do not live over the same prime."""


class ParseError(SteenrodError):
    """Expression text does not conform to the grammar."""

    def __init__(self, message: str, position: int):
        super().__init__(f"{message} (at position {position})")
        self.position = position


class Prime(int):
    """A positive prime integer, primality-tested on construction."""

    def __new__(cls, value: int) -> "Prime":
        value = int(value)
        if value < 2 or any(value % d == 0 for d in range(2, int(value**0.5) + 1)):
            raise ValueError(f"{value} is not prime")
        return super().__new__(cls, value)


class Generator(NamedTuple):
    """A single algebra generator: Sq^i, P^i or the Bockstein (kind 'b')."""

    kind: str  # 'Sq', 'P' or 'b'
    index: int = 0

    def degree_at(self, p: int) -> int:
        if self.kind == "Sq":
            return self.index
        if self.kind == "P":
            return 2 * self.index * (p - 1)
        return 1

    def valid_at(self, p: int) -> bool:
        return (self.kind == "Sq") == (p == 2)

    def __str__(self) -> str:
        if self.kind == "b":
            return "b"
        return f"{self.kind}^{self.index}"


def Sq(i: int) -> Generator:
    if i < 1:
        raise ValueError("Sq index must be positive")
    return Generator("Sq", i)


def P(i: int) -> Generator:
    if i < 1:
        raise ValueError("P index must be positive")
    return Generator("P", i)


BOCKSTEIN = Generator("b", 0)


# Internal word encoding used by the rewriting engine: a word is a tuple of
# ints, where at p = 2 an entry i means Sq^i, and at odd p an entry 0 means
# beta and i >= 1 means P^i.
IntWord = tuple[int, ...]


def _encode(word: tuple[Generator, ...], p: int) -> IntWord:
    out = []
    for g in word:
        if not g.valid_at(p):
            raise PrimeMismatchError(f"generator {g} is not defined at p={p}")
        out.append(0 if g.kind == "b" else g.index)
    return tuple(out)


def _decode(iword: IntWord, p: int) -> tuple[Generator, ...]:
    if p == 2:
        return tuple(Generator("Sq", i) for i in iword)
    return tuple(BOCKSTEIN if i == 0 else Generator("P", i) for i in iword)


def _word_degree(iword: IntWord, p: int) -> int:
    if p == 2:
        return sum(iword)
    return sum(1 if i == 0 else 2 * i * (p - 1) for i in iword)


class Monomial(NamedTuple):
    """A word of generators over a fixed prime."""

    prime: int
    word: tuple[Generator, ...]

    @property
    def degree(self) -> int:
        return sum(g.degree_at(self.prime) for g in self.word)

    @property
    def is_admissible(self) -> bool:
        return _first_rewrite(_encode(self.word, self.prime), self.prime) is None

    def sort_key(self) -> tuple[int, ...]:
        # Degree sequence of the letters; used for the canonical descending
        # lexicographic term order.
        return tuple(g.degree_at(self.prime) for g in self.word)

    def __str__(self) -> str:
        if not self.word:
            return "1"
        return " ".join(str(g) for g in self.word)


def unit_monomial(p: int) -> Monomial:
    return Monomial(int(Prime(p)), ())


class SteenrodElement:
    """F_p-linear combination of monomial words, not necessarily admissible."""

    __slots__ = ("prime", "_terms")

    def __init__(self, p: int, terms: dict[Monomial, int] | None = None):
        p = int(Prime(p))
        self.prime = p
        clean: dict[Monomial, int] = {}
        for mono, c in (terms or {}).items():
            if mono.prime != p:
                raise PrimeMismatchError("monomial prime differs from element prime")
            for g in mono.word:
                if not g.valid_at(p):
                    raise PrimeMismatchError(f"generator {g} is not defined at p={p}")
            c %= p
            if c:
                clean[mono] = c
        self._terms = clean

    # -- constructors ------------------------------------------------------

    @classmethod
    def zero(cls, p: int) -> "SteenrodElement":
        return cls(p, {})

    @classmethod
    def unit(cls, p: int) -> "SteenrodElement":
        return cls(p, {unit_monomial(p): 1})

    @classmethod
    def from_word(cls, p: int, word: tuple[Generator, ...] | list[Generator],
                  coeff: int = 1) -> "SteenrodElement":
        return cls(p, {Monomial(int(Prime(p)), tuple(word)): coeff})

    # -- inspection --------------------------------------------------------

    @property
    def terms(self) -> dict[Monomial, int]:
        return dict(self._terms)

    def is_zero(self) -> bool:
        return not self._terms

    def coefficient(self, mono: Monomial) -> int:
        return self._terms.get(mono, 0)

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, SteenrodElement):
            return NotImplemented
        return self.prime == other.prime and self._terms == other._terms

    def __hash__(self):
        return hash((self.prime, frozenset(self._terms.items())))

    def __repr__(self) -> str:
        return f"SteenrodElement({self.prime}, {str(self)!r})"

    def __str__(self) -> str:
        if not self._terms:
            return "0"
        parts = []
        for mono in sorted(self._terms, key=Monomial.sort_key, reverse=True):
            c = self._terms[mono]
            if not mono.word:
                parts.append(str(c))
            elif c == 1:
                parts.append(str(mono))
            else:
                parts.append(f"{c} {mono}")
        return " + ".join(parts)

    # -- arithmetic --------------------------------------------------------

    def _check_same_prime(self, other: "SteenrodElement") -> None:
        if self.prime != other.prime:
            raise PrimeMismatchError(
                f"cannot combine elements over p={self.prime} and p={other.prime}")

    def __add__(self, other: "SteenrodElement") -> "SteenrodElement":
        self._check_same_prime(other)
        terms = dict(self._terms)
        for mono, c in other._terms.items():
            terms[mono] = (terms.get(mono, 0) + c) % self.prime
        return SteenrodElement(self.prime, terms)

    def __sub__(self, other: "SteenrodElement") -> "SteenrodElement":
        return self + (-1) * other

    def __rmul__(self, scalar: int) -> "SteenrodElement":
        return SteenrodElement(
            self.prime, {m: scalar * c for m, c in self._terms.items()})

    def __mul__(self, other: "SteenrodElement") -> "SteenrodElement":
        return multiply(self, other)

    def __neg__(self) -> "SteenrodElement":
        return (-1) * self


def multiply(a: SteenrodElement, b: SteenrodElement) -> SteenrodElement:
    """Bilinear concatenation of words; no normalization is performed."""
    a._check_same_prime(b)
    p = a.prime
    terms: dict[Monomial, int] = {}
    for ma, ca in a._terms.items():
        for mb, cb in b._terms.items():
            mono = Monomial(p, ma.word + mb.word)
            terms[mono] = (terms.get(mono, 0) + ca * cb) % p
    return SteenrodElement(p, terms)


def degree(e: SteenrodElement) -> Union[int, Literal["any", "non-homogeneous"]]:
    """Common degree of all terms, 'any' for 0, 'non-homogeneous' otherwise."""
    degs = {m.degree for m in e._terms}
    if not degs:
        return "any"
    if len(degs) > 1:
        return "non-homogeneous"
    return degs.pop()


# ---------------------------------------------------------------------------
# Binomial coefficients mod p
# ---------------------------------------------------------------------------

def binomial_mod_p(n: int, k: int, p: int) -> int:
    """Binomial coefficient mod p, by Lucas for n >= 0; C(n,k) = 0 for k < 0,
    and C(n,k) = (-1)^k C(k-n-1, k) for negative n (polynomial convention)."""
    p = int(Prime(p))
    if k < 0:
        return 0
    if n < 0:
        sign = -1 if k % 2 else 1
        return (sign * binomial_mod_p(k - n - 1, k, p)) % p
    if k > n:
        return 0
    result = 1
    while n or k:
        ni, ki = n % p, k % p
        if ki > ni:
            return 0
        result = (result * math.comb(ni, ki)) % p
        n //= p
        k //= p
    return result


# ---------------------------------------------------------------------------
# Adem rewriting on int-encoded words
# ---------------------------------------------------------------------------

def _first_rewrite(word: IntWord, p: int) -> tuple[int, str] | None:
    """Position and kind of the leftmost inadmissible pattern, or None."""
    n = len(word)
    for j in range(n):
        if p == 2:
            if j + 1 < n and word[j] < 2 * word[j + 1]:
                return j, "pp"
        else:
            if word[j] == 0:
                if j + 1 < n and word[j + 1] == 0:
                    return j, "bb"
            else:
                if j + 1 < n:
                    if word[j + 1] >= 1 and word[j] < p * word[j + 1]:
                        return j, "pp"
                    if (word[j + 1] == 0 and j + 2 < n and word[j + 2] >= 1
                            and word[j] <= p * word[j + 2]):
                        return j, "pbp"
    return None


def _adem_expand(word: IntWord, j: int, kind: str, p: int) -> list[tuple[int, IntWord]]:
    """Replace the inadmissible pattern at position j, keeping the rest."""
    head, out = word[:j], []
    if kind == "bb":
        return []
    if kind == "pp":
        a, b = word[j], word[j + 1]
        tail = word[j + 2:]
        if p == 2:
            for c in range(a // 2 + 1):
                if binomial_mod_p(b - c - 1, a - 2 * c, 2):
                    mid = (a + b - c,) if c == 0 else (a + b - c, c)
                    out.append((1, head + mid + tail))
        else:
            for t in range(a // p + 1):
                coef = binomial_mod_p((p - 1) * (b - t) - 1, a - p * t, p)
                if coef:
                    sign = -1 if (a + t) % 2 else 1
                    mid = (a + b - t,) if t == 0 else (a + b - t, t)
                    out.append(((sign * coef) % p, head + mid + tail))
        return out
    # kind == 'pbp'
    a, b = word[j], word[j + 2]
    tail = word[j + 3:]
    for t in range(a // p + 1):
        sign = -1 if (a + t) % 2 else 1
        c1 = binomial_mod_p((p - 1) * (b - t), a - p * t, p)
        if c1:
            mid = (0, a + b - t) if t == 0 else (0, a + b - t, t)
            out.append(((sign * c1) % p, head + mid + tail))
        c2 = binomial_mod_p((p - 1) * (b - t) - 1, a - p * t - 1, p)
        if c2:
            mid = (a + b - t, 0) if t == 0 else (a + b - t, 0, t)
            out.append(((-sign * c2) % p, head + mid + tail))
    return out


_NORMAL_CACHE: dict[tuple[int, IntWord], dict[IntWord, int]] = {}


def _normalize_word(word: IntWord, p: int) -> dict[IntWord, int]:
    """Admissible expansion of an int word, as a word -> coefficient map."""
    key = (p, word)
    cached = _NORMAL_CACHE.get(key)
    if cached is not None:
        return cached
    hit = _first_rewrite(word, p)
    if hit is None:
        result = {word: 1}
    else:
        result = {}
        for coef, w in _adem_expand(word, hit[0], hit[1], p):
            for w2, c2 in _normalize_word(w, p).items():
                c = (result.get(w2, 0) + coef * c2) % p
                if c:
                    result[w2] = c
                else:
                    result.pop(w2, None)
    _NORMAL_CACHE[key] = result
    return result


def adem_normalize(e: SteenrodElement) -> SteenrodElement:
    """Unique representative of e in the admissible basis."""
    p = e.prime
    acc: dict[IntWord, int] = {}
    for mono, coef in e._terms.items():
        for w, c in _normalize_word(_encode(mono.word, p), p).items():
            v = (acc.get(w, 0) + coef * c) % p
            if v:
                acc[w] = v
            else:
                acc.pop(w, None)
    return SteenrodElement(
        p, {Monomial(p, _decode(w, p)): c for w, c in acc.items()})


# ---------------------------------------------------------------------------
# Admissible basis enumeration
# ---------------------------------------------------------------------------

def _admissible_words_2(d: int) -> Iterator[IntWord]:
    # Words Sq^{i_1}..Sq^{i_k} with i_j >= 2 i_{j+1}, total degree d.
    def rec(remaining: int, cap: int | None) -> Iterator[IntWord]:
        if remaining == 0:
            yield ()
            return
        top = remaining if cap is None else min(cap, remaining)
        for i in range(top, 0, -1):
            for rest in rec(remaining - i, i // 2):
                yield (i,) + rest
    yield from rec(d, None)


def _admissible_words_odd(d: int, p: int) -> Iterator[IntWord]:
    # Chains P^{s_1} b^{e_1} ... P^{s_k} b^{e_k} with s_j >= p s_{j+1} + e_j,
    # optionally preceded by a single b.
    def chains(remaining: int, cap: int | None) -> Iterator[IntWord]:
        # Chains starting with P^s, s <= cap when capped.
        q = 2 * (p - 1)
        top = remaining // q if cap is None else min(cap, remaining // q)
        for s in range(top, 0, -1):
            rest = remaining - q * s
            if rest == 0:
                yield (s,)
            if rest == 1:
                yield (s, 0)
            for eps in (0, 1):
                sub = rest - eps
                if sub <= 0:
                    continue
                # Next P exponent s2 must satisfy s >= p*s2 + eps.
                for tail in chains(sub, (s - eps) // p):
                    yield (s,) + ((0,) if eps else ()) + tail
    if d == 0:
        yield ()
        return
    if d == 1:
        yield (0,)
    yield from chains(d, None)
    yield from ((0,) + w for w in chains(d - 1, None))


def admissible_basis(p: int, deg: int) -> list[Monomial]:
    """All admissible monomials of the given degree, in the canonical
    descending lexicographic order on exponent sequences."""
    p = int(Prime(p))
    if deg < 0:
        raise ValueError("degree must be non-negative")
    words = (_admissible_words_2(deg) if p == 2
             else _admissible_words_odd(deg, p))
    monos = [Monomial(p, _decode(w, p)) for w in words]
    monos.sort(key=Monomial.sort_key, reverse=True)
    return monos


# ---------------------------------------------------------------------------
# Expression parsing
# ---------------------------------------------------------------------------

_TOKEN = re.compile(r"\s*(Sq|P|b|\d+|\^|\+|-|\(|\))")


def _tokenize(text: str) -> list[tuple[str, int]]:
    tokens, pos = [], 0
    while pos < len(text):
        m = _TOKEN.match(text, pos)
        if m is None:
            if text[pos:].strip() == "":
                break
            raise ParseError(f"unexpected character {text[pos:].lstrip()[0]!r}",
                             pos)
        tokens.append((m.group(1), m.start(1)))
        pos = m.end()
    return tokens


def parse_expression(text: str, p: int) -> SteenrodElement:
    """Parse 'term ((+|-) term)*' where a term is an optional integer
    coefficient followed by factors: generators like 'Sq^3', 'P2' or 'b',
    or parenthesized subexpressions, multiplied left to right."""
    p = int(Prime(p))
    tokens = _tokenize(text)
    i = 0

    def peek() -> str | None:
        return tokens[i][0] if i < len(tokens) else None

    def parse_generator() -> Generator:
        nonlocal i
        tok, pos = tokens[i]
        if tok == "b":
            i += 1
            if p == 2:
                raise ParseError("'b' is not available at p=2 (use Sq^1)", pos)
            return BOCKSTEIN
        if tok in ("Sq", "P"):
            if (tok == "Sq") != (p == 2):
                raise ParseError(f"{tok!r} is not available at p={p}", pos)
            i += 1
            if peek() == "^":
                i += 1
            if peek() is None or not peek().isdigit():
                raise ParseError(f"expected index after {tok!r}",
                                 tokens[i - 1][1])
            idx = int(tokens[i][0])
            i += 1
            if idx == 0:
                raise ParseError("generator index must be positive",
                                 tokens[i - 1][1])
            return Generator(tok, idx)
        raise ParseError(f"expected generator, got {tok!r}", pos)

    def parse_factor() -> SteenrodElement:
        nonlocal i
        if peek() == "(":
            open_pos = tokens[i][1]
            i += 1
            inner = parse_expr()
            if peek() != ")":
                raise ParseError("expected ')'", open_pos)
            i += 1
            return inner
        return SteenrodElement.from_word(p, (parse_generator(),))

    def parse_term() -> SteenrodElement:
        nonlocal i
        coeff, has_coeff = 1, False
        if peek() is not None and peek().isdigit():
            coeff, has_coeff = int(tokens[i][0]), True
            i += 1
        result = SteenrodElement.from_word(p, (), coeff)
        saw_factor = False
        while peek() in ("Sq", "P", "b", "("):
            result = result * parse_factor()
            saw_factor = True
        if not saw_factor and not has_coeff:
            pos = tokens[i][1] if i < len(tokens) else len(text)
            raise ParseError("expected a term", pos)
        return result

    def parse_expr() -> SteenrodElement:
        nonlocal i
        result = parse_term()
        while peek() in ("+", "-"):
            sign = 1 if tokens[i][0] == "+" else -1
            i += 1
            result = result + sign * parse_term()
        return result

    if not tokens:
        raise ParseError("empty expression", 0)
    result = parse_expr()
    if i < len(tokens):
        raise ParseError(f"unexpected token {tokens[i][0]!r}", tokens[i][1])
    return result
