"""Finite graded modules over the mod-p Steenrod algebra.

A module is a finite collection of F_p-vector spaces indexed by degree,
with a matrix for each generator action; degrees not listed are genuinely
zero.  Includes Moore/sphere/cell constructions, tensor products via the
Cartan formula, Adem-consistency checking, and decomposability analysis.
"""

from __future__ import annotations

import itertools
import json
import random
from dataclasses import dataclass, field

import numpy as np

from . import fpmatrix as fp
from .steenrod import (
    BOCKSTEIN,
    Generator,
    Monomial,
    P,
    Prime,
    PrimeMismatchError,
    Sq,
    SteenrodElement,
    adem_normalize,
    degree as element_degree,
    multiply,
    parse_expression,
)


class ModuleError(Exception):
    pass


@dataclass
class FiniteModule:
    prime: int
    dims: dict[int, int]
    actions: dict[tuple[Generator, int], np.ndarray]
    labels: dict[int, list[str]] | None = None

    def __post_init__(self):
        p = int(Prime(self.prime))
        self.prime = p
        self.dims = {int(d): int(n) for d, n in self.dims.items() if n > 0}
        clean: dict[tuple[Generator, int], np.ndarray] = {}
        for (g, d), mat in self.actions.items():
            if not g.valid_at(p):
                raise PrimeMismatchError(f"generator {g} invalid at p={p}")
            mat = np.array(mat, dtype=np.int64) % p
            src, tgt = self.dim(d), self.dim(d + g.degree_at(p))
            if mat.shape != (tgt, src):
                raise ModuleError(
                    f"action of {g} at degree {d} has shape {mat.shape}, "
                    f"expected {(tgt, src)}")
            if src and tgt and mat.any():
                clean[(g, int(d))] = mat
        self.actions = clean

    def dim(self, d: int) -> int:
        return self.dims.get(d, 0)

    @property
    def total_dim(self) -> int:
        return sum(self.dims.values())

    @property
    def degrees(self) -> list[int]:
        return sorted(self.dims)

    def action(self, g: Generator, d: int) -> np.ndarray:
        """Matrix of g from degree d, zero where unstored."""
        mat = self.actions.get((g, d))
        if mat is not None:
            return mat
        return fp.zeros(self.dim(d + g.degree_at(self.prime)), self.dim(d))

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, FiniteModule):
            return NotImplemented
        if self.prime != other.prime or self.dims != other.dims:
            return False
        keys = set(self.actions) | set(other.actions)
        return all(
            np.array_equal(self.action(g, d), other.action(g, d))
            for g, d in keys)


def _power_action(M: FiniteModule, kind: str, t: int, d: int) -> np.ndarray:
    """Matrix of Sq^t or P^t from degree d, with t = 0 the identity."""
    if t == 0:
        return fp.identity(M.dim(d))
    return M.action(Generator(kind, t), d)


# ---------------------------------------------------------------------------
# Constructions
# ---------------------------------------------------------------------------

def sphere_module(p: int, d: int = 0) -> FiniteModule:
    """One cell in degree d, all actions zero."""
    return FiniteModule(p, {d: 1}, {}, labels={d: [f"s{d}"]})


def moore_module(p: int) -> FiniteModule:
    """Two cells in degrees 0, 1 joined by a nonzero Bockstein."""
    p = int(Prime(p))
    bock = Sq(1) if p == 2 else BOCKSTEIN
    one = np.array([[1]], dtype=np.int64)
    return FiniteModule(p, {0: 1, 1: 1}, {(bock, 0): one},
                        labels={0: ["e0"], 1: ["e1"]})


def shift(M: FiniteModule, k: int) -> FiniteModule:
    labels = ({d + k: list(v) for d, v in M.labels.items()}
              if M.labels else None)
    return FiniteModule(
        M.prime,
        {d + k: n for d, n in M.dims.items()},
        {(g, d + k): mat for (g, d), mat in M.actions.items()},
        labels=labels)


def direct_sum(A: FiniteModule, B: FiniteModule) -> FiniteModule:
    if A.prime != B.prime:
        raise PrimeMismatchError("direct sum over different primes")
    p = A.prime
    dims = {d: A.dim(d) + B.dim(d)
            for d in set(A.dims) | set(B.dims)}
    actions: dict[tuple[Generator, int], np.ndarray] = {}
    for d in dims:
        for g in {g for (g, _) in list(A.actions) + list(B.actions)}:
            d2 = d + g.degree_at(p)
            if dims.get(d2, 0) == 0:
                continue
            mat = fp.zeros(dims[d2], dims[d])
            a = A.action(g, d)
            b = B.action(g, d)
            mat[:A.dim(d2), :A.dim(d)] = a
            mat[A.dim(d2):, A.dim(d):] = b
            if mat.any():
                actions[(g, d)] = mat
    return FiniteModule(p, dims, actions)


def tensor_basis(A: FiniteModule, B: FiniteModule, n: int) -> list[tuple[int, int, int, int]]:
    """Ordered basis (i, a, j, b) of (A (x) B)_n with i + j = n."""
    out = []
    for i in sorted(A.dims):
        j = n - i
        if B.dim(j) == 0:
            continue
        for a in range(A.dim(i)):
            for b in range(B.dim(j)):
                out.append((i, a, j, b))
    return out


def tensor(A: FiniteModule, B: FiniteModule) -> FiniteModule:
    """Graded tensor product with the Cartan-formula action:
    Sq^k or P^k act by the sum of split actions, beta as a graded
    derivation with the Koszul sign (-1)^deg on the right factor."""
    if A.prime != B.prime:
        raise PrimeMismatchError("tensor over different primes")
    p = A.prime
    dims: dict[int, int] = {}
    bases: dict[int, list[tuple[int, int, int, int]]] = {}
    degs = sorted({i + j for i in A.dims for j in B.dims})
    for n in degs:
        basis = tensor_basis(A, B, n)
        if basis:
            dims[n] = len(basis)
            bases[n] = basis
    index = {n: {t: i for i, t in enumerate(basis)}
             for n, basis in bases.items()}

    span = (max(degs) - min(degs)) if degs else 0
    if p == 2:
        gens = [Sq(k) for k in range(1, span + 1)]
    else:
        gens = [BOCKSTEIN] + [P(k) for k in range(1, span // (2 * (p - 1)) + 1)]

    actions: dict[tuple[Generator, int], np.ndarray] = {}
    for g in gens:
        gd = g.degree_at(p)
        for n in degs:
            n2 = n + gd
            if n2 not in dims:
                continue
            mat = fp.zeros(dims[n2], dims[n])
            for col, (i, a, j, b) in enumerate(bases[n]):
                if g.kind == "b":
                    left = A.action(BOCKSTEIN, i)
                    for a2 in range(left.shape[0]):
                        if left[a2, a]:
                            row = index[n2][(i + 1, a2, j, b)]
                            mat[row, col] = (mat[row, col] + left[a2, a]) % p
                    right = B.action(BOCKSTEIN, j)
                    sign = -1 if i % 2 else 1
                    for b2 in range(right.shape[0]):
                        if right[b2, b]:
                            row = index[n2][(i, a, j + 1, b2)]
                            mat[row, col] = (mat[row, col]
                                             + sign * right[b2, b]) % p
                else:
                    kind, k = g.kind, g.index
                    for t in range(k + 1):
                        la = _power_action(A, kind, t, i)
                        lb = _power_action(B, kind, k - t, j)
                        if not (la.any() and lb.any()):
                            continue
                        i2 = i + (t if p == 2 else 2 * t * (p - 1))
                        j2 = n2 - i2
                        for a2 in range(la.shape[0]):
                            if not la[a2, a]:
                                continue
                            for b2 in range(lb.shape[0]):
                                if lb[b2, b]:
                                    row = index[n2][(i2, a2, j2, b2)]
                                    mat[row, col] = (
                                        mat[row, col]
                                        + la[a2, a] * lb[b2, b]) % p
            if mat.any():
                actions[(g, n)] = mat
    labels = None
    if A.labels and B.labels:
        labels = {n: [f"{A.labels[i][a]}*{B.labels[j][b]}"
                      for (i, a, j, b) in basis]
                  for n, basis in bases.items()}
    return FiniteModule(p, dims, actions, labels=labels)


# ---------------------------------------------------------------------------
# Acting by algebra elements
# ---------------------------------------------------------------------------

def act_element(M: FiniteModule, e: SteenrodElement, d: int) -> np.ndarray:
    """Matrix of a homogeneous element from degree d to d + deg(e)."""
    if e.prime != M.prime:
        raise PrimeMismatchError("element and module over different primes")
    deg = element_degree(e)
    if deg == "non-homogeneous":
        raise ModuleError("act_element requires a homogeneous element")
    if deg == "any":
        deg = 0
    p = M.prime
    out = fp.zeros(M.dim(d + deg), M.dim(d))
    for mono, coef in e.terms.items():
        mat = fp.identity(M.dim(d))
        cur = d
        for g in reversed(mono.word):
            mat = fp.matmul(M.action(g, cur), mat, p)
            cur += g.degree_at(p)
            if not mat.any():
                break
        if mat.shape == out.shape:
            out = (out + coef * mat) % p
    return out


# ---------------------------------------------------------------------------
# Adem-consistency checking
# ---------------------------------------------------------------------------

@dataclass
class RelationViolation:
    """A pair of algebra-equal elements acting differently on the module."""

    lhs: SteenrodElement
    rhs: SteenrodElement
    source_degree: int
    witness: tuple[int, ...]

    @property
    def operation_degree(self) -> int:
        d = element_degree(self.lhs)
        if not isinstance(d, int):
            d = element_degree(self.rhs)
        return d if isinstance(d, int) else 0

    @property
    def target_degree(self) -> int:
        return self.source_degree + self.operation_degree

    def __str__(self) -> str:
        return (f"({self.lhs}) != ({self.rhs}) from degree "
                f"{self.source_degree} (target {self.target_degree})")


def _inadmissible_words(p: int, max_degree: int):
    """Inadmissible words of length 2 and 3 with degree <= max_degree,
    as tuples of Generators."""
    if p == 2:
        letters = [Sq(i) for i in range(1, max_degree)]
    else:
        letters = [BOCKSTEIN] + [P(i)
                                 for i in range(1, max_degree // (2 * (p - 1)) + 1)]
    degs = {g: g.degree_at(p) for g in letters}
    for length in (2, 3):
        for word in itertools.product(letters, repeat=length):
            if sum(degs[g] for g in word) > max_degree:
                continue
            if not Monomial(p, word).is_admissible:
                yield word


def _compare_pair(M: FiniteModule, lhs: SteenrodElement, rhs: SteenrodElement,
                  violations: list[RelationViolation]) -> None:
    op_degree = element_degree(lhs)
    if not isinstance(op_degree, int):
        op_degree = element_degree(rhs)
    if not isinstance(op_degree, int):
        return  # both sides zero
    for d in M.degrees:
        tdim, sdim = M.dim(d + op_degree), M.dim(d)
        left = act_element(M, lhs, d)
        right = act_element(M, rhs, d)
        if left.shape != (tdim, sdim):
            left = fp.zeros(tdim, sdim)
        if right.shape != (tdim, sdim):
            right = fp.zeros(tdim, sdim)
        if not np.array_equal(left, right):
            delta = (left - right) % M.prime
            col = int(np.flatnonzero(delta.any(axis=0))[0])
            witness = tuple(int(c == col) for c in range(sdim))
            violations.append(RelationViolation(lhs, rhs, d, witness))


def p3_cubed_relation(p: int = 3) -> tuple[SteenrodElement, SteenrodElement]:
    """The degree-36 identity (P^3)^3 = (P^7 P^1 - P^8) P^1 at p = 3."""
    lhs = parse_expression("P^3 P^3 P^3", p)
    rhs = parse_expression("P^7 P^1 P^1 - P^8 P^1", p)
    return lhs, rhs


def consistency_check(M: FiniteModule,
                      max_relation_degree: int) -> list[RelationViolation]:
    """Compare both sides of every Adem rewrite of an inadmissible word of
    length 2 or 3 (degree <= max_relation_degree), plus the explicit
    degree-36 identity at p = 3, on every occupied source degree."""
    p = M.prime
    occupied = set(M.dims)
    violations: list[RelationViolation] = []

    def reachable(op_degree: int) -> bool:
        return any(d + op_degree in occupied for d in occupied)

    for word in _inadmissible_words(p, max_relation_degree):
        op_degree = sum(g.degree_at(p) for g in word)
        if not reachable(op_degree):
            continue
        lhs = SteenrodElement.from_word(p, word)
        rhs = adem_normalize(lhs)
        _compare_pair(M, lhs, rhs, violations)
    if p == 3 and max_relation_degree >= 36 and reachable(36):
        lhs, rhs = p3_cubed_relation()
        _compare_pair(M, lhs, rhs, violations)
    return violations


def violation_classes(
        violations: list[RelationViolation]
) -> dict[tuple[int, int], list[RelationViolation]]:
    """Group violations by the failing matrix slot
    (source degree, operation degree)."""
    out: dict[tuple[int, int], list[RelationViolation]] = {}
    for v in violations:
        out.setdefault((v.source_degree, v.operation_degree), []).append(v)
    return out


def hypothetical_Cb_module() -> FiniteModule:
    """The would-be mod-3 cohomology of a 3-torsion cone over the iterated
    Moore-spectrum construction: one-dimensional in degrees 0, 1, 12, 13,
    24, 25 and 36, Bockstein linking each cell pair, P^3 stepping up by 12,
    and the P^6 action forced by P^3 P^3 = 2 P^6.  The module cannot be
    consistent: P^1 lands in the empty degree 4, so every degree-36
    identity that factors through P^1 forces (P^3)^3 = 0, contradicting
    the construction."""
    p = 3
    one = np.array([[1]], dtype=np.int64)
    two = np.array([[2]], dtype=np.int64)
    dims = {d: 1 for d in (0, 1, 12, 13, 24, 25, 36)}
    actions = {
        (BOCKSTEIN, 0): one,
        (BOCKSTEIN, 12): one,
        (BOCKSTEIN, 24): one,
        (P(3), 0): one,
        (P(3), 12): one,
        (P(3), 24): one,
        (P(3), 1): one,
        (P(3), 13): one,
        (P(6), 0): two,
        (P(6), 12): two,
        (P(6), 1): two,
    }
    return FiniteModule(p, dims, actions,
                        labels={d: [f"c{d}"] for d in dims})


# ---------------------------------------------------------------------------
# Decomposability
# ---------------------------------------------------------------------------

@dataclass
class DecompositionResult:
    decomposable: bool
    summands: tuple[FiniteModule, FiniteModule] | None = None
    certified: bool = True

    def __bool__(self) -> bool:
        return self.decomposable


def _endomorphism_basis(M: FiniteModule) -> list[dict[int, np.ndarray]]:
    """Basis of degreewise endomorphisms commuting with all generator
    actions."""
    p = M.prime
    degs = M.degrees
    offsets: dict[int, int] = {}
    total = 0
    for d in degs:
        offsets[d] = total
        total += M.dim(d) ** 2

    rows: list[np.ndarray] = []
    for (g, d), A in M.actions.items():
        d2 = d + g.degree_at(p)
        sdim, tdim = M.dim(d), M.dim(d2)
        if tdim == 0:
            continue
        # E_{d2} A - A E_d = 0, one equation per (r, c).
        for r in range(tdim):
            for c in range(sdim):
                row = np.zeros(total, dtype=np.int64)
                for k in range(tdim):
                    row[offsets[d2] + r * tdim + k] += A[k, c]
                for k in range(sdim):
                    row[offsets[d] + k * sdim + c] -= A[r, k]
                rows.append(row % p)
    if rows:
        basis_vecs = fp.nullspace(np.array(rows), p)
    else:
        basis_vecs = fp.identity(total)
    out = []
    for j in range(basis_vecs.shape[1]):
        v = basis_vecs[:, j]
        blocks = {}
        for d in degs:
            n = M.dim(d)
            blocks[d] = v[offsets[d]:offsets[d] + n * n].reshape(n, n)
        out.append(blocks)
    return out


def _assemble(blocks: dict[int, np.ndarray], degs: list[int]) -> np.ndarray:
    total = sum(b.shape[0] for b in blocks.values())
    out = fp.zeros(total, total)
    pos = 0
    for d in degs:
        n = blocks[d].shape[0]
        out[pos:pos + n, pos:pos + n] = blocks[d]
        pos += n
    return out


def _split_blocks(mat: np.ndarray, M: FiniteModule) -> dict[int, np.ndarray]:
    blocks = {}
    pos = 0
    for d in M.degrees:
        n = M.dim(d)
        blocks[d] = mat[pos:pos + n, pos:pos + n]
        pos += n
    return blocks


def _submodule_from_idempotent(M: FiniteModule,
                               e_blocks: dict[int, np.ndarray]) -> FiniteModule:
    p = M.prime
    col_bases = {d: fp.column_space(e_blocks[d], p) for d in M.degrees}
    dims = {d: cb.shape[1] for d, cb in col_bases.items() if cb.shape[1]}
    actions: dict[tuple[Generator, int], np.ndarray] = {}
    for (g, d), A in M.actions.items():
        d2 = d + g.degree_at(p)
        if d not in dims or dims.get(d2, 0) == 0:
            continue
        rhs = fp.matmul(A, col_bases[d], p)
        X = fp.solve(col_bases[d2], rhs, p)
        if X is None:
            raise ModuleError("idempotent image is not a submodule")
        actions[(g, d)] = X
    return FiniteModule(p, dims, actions)


def is_decomposable(M: FiniteModule, bound: int = 12,
                    exhaustive_limit: int = 1 << 16,
                    rng_seed: int = 0) -> DecompositionResult:
    """Decide whether M splits as a direct sum of two nonzero submodules by
    searching for a nontrivial idempotent in the endomorphism algebra.

    Exhaustive (hence certified) when the endomorphism algebra is small;
    otherwise a Fitting-decomposition search over shifted and quadratic
    evaluations of pseudo-random endomorphisms, which certifies splittings
    but not indecomposability."""
    if M.total_dim > bound:
        raise ModuleError(f"total dimension {M.total_dim} exceeds bound {bound}")
    if M.total_dim <= 1:
        return DecompositionResult(False)
    p = M.prime
    degs = M.degrees
    basis = _endomorphism_basis(M)
    mats = [_assemble(b, degs) for b in basis]
    n = mats[0].shape[0]
    ident = fp.identity(n)

    def result_from(e: np.ndarray) -> DecompositionResult:
        first = _submodule_from_idempotent(M, _split_blocks(e, M))
        second = _submodule_from_idempotent(M, _split_blocks((ident - e) % p, M))
        return DecompositionResult(True, (first, second))

    if p ** len(mats) <= exhaustive_limit:
        for coeffs in itertools.product(range(p), repeat=len(mats)):
            e = sum((c * m for c, m in zip(coeffs, mats)),
                    start=fp.zeros(n, n)) % p
            if not e.any() or np.array_equal(e, ident):
                continue
            if np.array_equal(fp.matmul(e, e, p), e):
                return result_from(e)
        return DecompositionResult(False)

    # Fitting search (not exhaustive).
    rng = random.Random(rng_seed)
    candidates = list(mats)
    for _ in range(60):
        coeffs = [rng.randrange(p) for _ in mats]
        candidates.append(
            sum((c * m for c, m in zip(coeffs, mats)),
                start=fp.zeros(n, n)) % p)

    def quadratics():
        for b in range(p):
            for c in range(p):
                # x^2 + b x + c irreducible over F_p
                if all((x * x + b * x + c) % p for x in range(p)):
                    yield b, c

    quads = list(quadratics())
    for phi in candidates:
        tests = [(phi - lam * ident) % p for lam in range(p)]
        tests += [(fp.matmul(phi, phi, p) + b * phi + c * ident) % p
                  for b, c in quads]
        for psi in tests:
            w = ident
            for _ in range(n):
                w = fp.matmul(w, psi, p)
            r = fp.rank(w, p)
            if 0 < r < n:
                U = fp.column_space(w, p)
                K = fp.nullspace(w, p)
                B = np.hstack([U, K])
                Binv = fp.inv(B, p)
                diag = fp.zeros(n, n)
                for i in range(r):
                    diag[i, i] = 1
                e = fp.matmul(fp.matmul(B, diag, p), Binv, p)
                return result_from(e)
    return DecompositionResult(False, certified=False)


# ---------------------------------------------------------------------------
# JSON module files
# ---------------------------------------------------------------------------

def _generator_to_str(g: Generator) -> str:
    return str(g).replace("^", "")


def _generator_from_str(s: str, p: int) -> Generator:
    s = s.strip().replace("^", "")
    if s == "b":
        return BOCKSTEIN
    if s.startswith("Sq"):
        return Sq(int(s[2:]))
    if s.startswith("P"):
        return P(int(s[1:]))
    raise ModuleError(f"unknown generator {s!r}")


def module_to_dict(M: FiniteModule) -> dict:
    out = {
        "prime": M.prime,
        "dims": {str(d): n for d, n in sorted(M.dims.items())},
        "actions": [
            {
                "generator": _generator_to_str(g),
                "source_degree": d,
                "matrix": M.actions[(g, d)].tolist(),
            }
            for (g, d) in sorted(M.actions,
                                 key=lambda k: (k[1], str(k[0])))
        ],
    }
    if M.labels:
        out["labels"] = {str(d): v for d, v in sorted(M.labels.items())}
    return out


def module_from_dict(data: dict) -> FiniteModule:
    p = int(data["prime"])
    dims = {int(d): int(n) for d, n in data["dims"].items()}
    actions = {}
    for entry in data.get("actions", []):
        g = _generator_from_str(entry["generator"], p)
        actions[(g, int(entry["source_degree"]))] = np.array(
            entry["matrix"], dtype=np.int64)
    labels = None
    if "labels" in data:
        labels = {int(d): list(v) for d, v in data["labels"].items()}
    return FiniteModule(p, dims, actions, labels=labels)


def save_module(M: FiniteModule, path: str) -> None:
    with open(path, "w") as fh:
        json.dump(module_to_dict(M), fh, indent=2, sort_keys=True)


def load_module(path: str) -> FiniteModule:
    with open(path) as fh:
        return module_from_dict(json.load(fh))
