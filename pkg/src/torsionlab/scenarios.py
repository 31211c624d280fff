"""Scenario runner: chains the algebra, module, stems, and exotic-category
checkers into deterministic verification reports for the five main
machine-checkable claims:

- prop2: 2·S/2 is nonzero (the smash square of the mod-2 Moore spectrum is
  4-dimensional in cohomology, carries a nonzero Sq², and is indecomposable).
- prop3: [S/n, S/n] is cyclic of order n for odd n and Z/4 for n = 2.
- prop5: no extension of the mod-3 lift of beta_1 has a cone killed by 3
  (the hypothetical cohomology module violates an Adem relation).
- prop6: the multiplication on S/n is associative exactly when n is prime
  to 6 (the obstruction lives in π₃(S/n)).
- exotic: free Z/4-modules with identity shift satisfy the triangle axioms
  in low rank yet contain an object of 2-order zero.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from .exotic import two_order_zero_certificate, verify_axioms
from .modules import (
    act_element,
    consistency_check,
    hypothetical_Cb_module,
    is_decomposable,
    moore_module,
    tensor,
    violation_classes,
)
from .steenrod import parse_expression
from .stems import (
    StemsTable,
    Unknown,
    associator_obstruction,
    default_table,
    moore_endomorphisms,
    moore_homotopy,
    positive_n_order,
    stems,
)


@dataclass
class Step:
    claim: str
    result: str
    passed: bool


@dataclass
class ScenarioReport:
    scenario: str
    steps: list[Step] = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return all(s.passed for s in self.steps)

    def check(self, claim: str, passed: bool, result: str) -> None:
        self.steps.append(Step(claim, result, bool(passed)))

    def render(self) -> str:
        lines = [f"scenario {self.scenario}: {'PASS' if self.passed else 'FAIL'}"]
        for s in self.steps:
            mark = "ok" if s.passed else "FAIL"
            lines.append(f"  [{mark}] {s.claim}: {s.result}")
        return "\n".join(lines)

    def to_dict(self) -> dict:
        return {
            "scenario": self.scenario,
            "passed": self.passed,
            "steps": [
                {"claim": s.claim, "result": s.result, "passed": s.passed}
                for s in self.steps
            ],
        }


def scenario_prop2() -> ScenarioReport:
    """2·S/2 ≠ 0: if it were zero, the smash square S/2 ∧ S/2 would split,
    but its cohomology is a 4-dimensional indecomposable module with a
    nonzero Sq² connecting the degrees a splitting would separate."""
    report = ScenarioReport("prop2")
    m2 = moore_module(2)
    square = tensor(m2, m2)
    dims = {d: square.dim(d) for d in square.degrees}
    report.check(
        "cohomology of S/2 smash S/2 is 4-dimensional with dims {0:1, 1:2, 2:1}",
        dims == {0: 1, 1: 2, 2: 1},
        f"dims {dims}, total {square.total_dim}",
    )
    sq2 = act_element(square, parse_expression("Sq^2", 2), 0)
    report.check(
        "Sq^2 is nonzero from degree 0 to degree 2",
        bool(np.any(sq2)),
        f"matrix {sq2.tolist()}",
    )
    sq1a = act_element(square, parse_expression("Sq^1", 2), 0)
    sq1b = act_element(square, parse_expression("Sq^1", 2), 1)
    cartan_ok = sq1a.tolist() == [[1], [1]] and sq1b.tolist() == [[1, 1]]
    report.check(
        "Sq^1 follows the product rule on the two tensor factors",
        cartan_ok,
        f"0->1: {sq1a.tolist()}, 1->2: {sq1b.tolist()}",
    )
    dec = is_decomposable(square)
    report.check(
        "the module is indecomposable",
        (not dec) and dec.certified,
        f"decomposable={bool(dec)}, certified={dec.certified}",
    )
    report.check(
        "conclusion: a splitting of the smash square is impossible, so 2 times "
        "the identity of S/2 is nonzero",
        report.passed,
        "all obstructions confirmed",
    )
    return report


def scenario_prop3(n: int, table: StemsTable | None = None) -> ScenarioReport:
    """[S/n, S/n] is cyclic of order n for odd n; for n = 2 the group has
    order 4 and the nonsplit extension makes it Z/4, so 2·S/2 ≠ 0."""
    report = ScenarioReport(f"prop3(n={n})")
    pi0 = moore_homotopy(n, 0, table)
    report.check(
        f"pi_0(S/{n}) is cyclic of order {n}",
        not isinstance(pi0, Unknown) and pi0.order == n,
        str(pi0),
    )
    pi1 = moore_homotopy(n, 1, table)
    expected_pi1 = 1 if n % 2 == 1 else 2
    report.check(
        f"pi_1(S/{n}) has order {expected_pi1}",
        not isinstance(pi1, Unknown) and pi1.order == expected_pi1,
        str(pi1),
    )
    endos = moore_endomorphisms(n, table)
    if n % 2 == 1:
        report.check(
            f"[S/{n}, S/{n}] is cyclic of order {n}",
            not isinstance(endos, Unknown)
            and endos.group is not None
            and endos.group.factors == (n,),
            str(endos),
        )
        report.check(
            f"hence {n} times the identity of S/{n} is zero",
            positive_n_order(endos, n),
            f"positive {n}-order: True",
        )
    else:
        nonsplit = (
            not isinstance(endos, Unknown)
            and endos.extension is not None
            and endos.extension.resolution == "nonsplit"
        )
        report.check(
            "[S/2, S/2] has order 4 and the defining extension is nonsplit",
            n != 2
            or (nonsplit and endos.order == 4 and endos.group is not None
                and endos.group.factors == (4,)),
            str(endos),
        )
        if n == 2:
            report.check(
                "hence 2 times the identity of S/2 is nonzero",
                not positive_n_order(endos, 2),
                "positive 2-order: False",
            )
    return report


def scenario_prop5(table: StemsTable | None = None) -> ScenarioReport:
    """No map extending the mod-3 lift of beta_1 has a cone killed by 3:
    the cohomology such a cone would carry violates the Adem relation
    forcing (P³)³ to act nontrivially while P¹ acts trivially."""
    report = ScenarioReport("prop5")
    table = table or default_table()
    for dim in (21, 22, 33, 34):
        entry = stems(dim, table)
        ok = (
            not isinstance(entry, Unknown)
            and 3 in entry.p_primary
            and entry.p_primary[3].is_trivial
        )
        report.check(
            f"the 3-primary part of the stable stem in dimension {dim} is trivial",
            ok,
            "trivial" if ok else str(entry),
        )
    cb = hypothetical_Cb_module()
    report.check(
        "hypothetical cone cohomology has total dimension 7 over F_3",
        cb.prime == 3 and cb.total_dim == 7,
        f"dims {dict(sorted((d, cb.dim(d)) for d in cb.degrees))}",
    )
    violations = consistency_check(cb, 40)
    classes = sorted(violation_classes(violations))
    report.check(
        "exactly one violated relation class, at source degree 0 and "
        "operation degree 36",
        classes == [(0, 36)],
        f"violated classes: {classes}",
    )
    p3_cubed = any(
        v.source_degree == 0 and str(v.lhs) == "P^3 P^3 P^3" for v in violations
    )
    report.check(
        "the violated class contains the relation (P^3)^3 = (P^7 P^1 - P^8) P^1",
        p3_cubed,
        "; ".join(sorted({str(v.lhs) for v in violations})),
    )
    report.check(
        "conclusion: no such cone exists; the mod-3 lift of beta_1 admits no "
        "extension with cone killed by 3",
        report.passed,
        "Adem consistency fails exactly where predicted",
    )
    return report


def scenario_prop6(n: int, table: StemsTable | None = None) -> ScenarioReport:
    """The multiplication on S/n is associative iff the obstruction group
    π₃(S/n) vanishes, which happens exactly when n is prime to 6."""
    report = ScenarioReport(f"prop6(n={n})")
    obstruction = associator_obstruction(n, table)
    known = not isinstance(obstruction, Unknown)
    report.check(
        f"the associator obstruction for S/{n} lives in pi_3(S/{n})",
        known,
        str(obstruction),
    )
    if math.gcd(n, 6) == 1:
        report.check(
            f"{n} is prime to 6, so the obstruction group vanishes and the "
            "multiplication is associative",
            known and obstruction.is_trivial,
            str(obstruction),
        )
    else:
        report.check(
            f"{n} is not prime to 6 and the obstruction group is nonzero",
            known and not obstruction.is_trivial,
            str(obstruction),
        )
    return report


def scenario_exotic(max_rank: int = 2) -> ScenarioReport:
    """Free Z/4-modules with identity shift: the candidate distinguished
    class passes the triangle axioms exhaustively in low rank, yet the
    rank-one object has 2-order zero — impossible in an algebraic
    triangulated category, where the cone of multiplication by n is
    always killed by n."""
    report = ScenarioReport("exotic")
    axioms = verify_axioms(max_rank)
    for claim, ok in axioms.steps:
        report.check(f"rank <= {max_rank}: {claim}", ok, "verified" if ok else "failed")
    cert = two_order_zero_certificate()
    report.check(
        "2 times the identity of the rank-one module is nonzero",
        cert.two_id_nonzero,
        "matrix [[2]]",
    )
    report.check(
        "the cone of 2*Id is again the rank-one module",
        cert.cone_is_rank_one,
        f"cone rank {cert.cone_rank}",
    )
    report.check(
        "the rank-one object has 2-order 0",
        cert.passed,
        "certificate complete",
    )
    report.check(
        "contrast: in any algebraic triangulated category the cone of "
        "multiplication by n is killed by n, so this category is not algebraic",
        cert.passed,
        "2-order 0 object exhibited",
    )
    return report


SCENARIOS = {
    "prop2": lambda table=None: scenario_prop2(),
    "prop3": lambda table=None: scenario_prop3(2, table),
    "prop5": lambda table=None: scenario_prop5(table),
    "prop6": lambda table=None: scenario_prop6(5, table),
    "exotic": lambda table=None: scenario_exotic(),
}


def run_all(table: StemsTable | None = None) -> list[ScenarioReport]:
    reports = [scenario_prop2()]
    for n in (3, 5, 7, 9, 15, 2):
        reports.append(scenario_prop3(n, table))
    reports.append(scenario_prop5(table))
    for n in (5, 7, 25, 35, 2, 3):
        reports.append(scenario_prop6(n, table))
    reports.append(scenario_exotic())
    return reports
