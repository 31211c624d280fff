"""Command-line front end.

Subcommands cover the individual calculators (normalization, oracle
cross-checks, admissible bases, module operations, Moore-spectrum homotopy
and endomorphism groups, associativity obstructions, the Z/4 exotic
category) and the scenario runner that chains them into verification
reports.  Exit status is 0 exactly when every requested check passes."""

from __future__ import annotations

import argparse
import json
import sys

from . import modules as mod
from .stems import (
    StemsTable,
    Unknown,
    associator_obstruction,
    moore_endomorphisms,
    moore_homotopy,
    stems,
)
from .exotic import (
    Z4Morphism,
    check_TR1_cone,
    two_order_zero_certificate,
    verify_axioms,
)
from .oracle import oracle_equal
from .scenarios import (
    run_all,
    scenario_exotic,
    scenario_prop2,
    scenario_prop3,
    scenario_prop5,
    scenario_prop6,
)
from .steenrod import adem_normalize, admissible_basis, parse_expression


def _emit(args, payload: dict, text: str) -> None:
    if args.json:
        print(json.dumps(payload, indent=2, sort_keys=True))
    else:
        print(text)


def _load_table(args) -> StemsTable:
    table = StemsTable.load_default()
    if getattr(args, "stems_file", None):
        table.merge_file(args.stems_file)
    return table


def _cmd_normalize(args) -> int:
    expr = parse_expression(args.expression, args.prime)
    normal = adem_normalize(expr)
    _emit(
        args,
        {"input": str(expr), "normal_form": str(normal), "prime": args.prime},
        str(normal),
    )
    return 0


def _cmd_oracle_check(args) -> int:
    lhs = parse_expression(args.expression, args.prime)
    rhs = (
        parse_expression(args.against, args.prime)
        if args.against
        else adem_normalize(lhs)
    )
    equal = oracle_equal(lhs, rhs, args.max_degree)
    _emit(
        args,
        {
            "lhs": str(lhs),
            "rhs": str(rhs),
            "max_degree": args.max_degree,
            "equal": equal,
        },
        f"{'EQUAL' if equal else 'DIFFERENT'}: {lhs}  vs  {rhs}  "
        f"(polynomial action through degree {args.max_degree})",
    )
    return 0 if equal else 1


def _cmd_basis(args) -> int:
    basis = admissible_basis(args.prime, args.degree)
    names = [str(m) for m in basis]
    _emit(
        args,
        {"prime": args.prime, "degree": args.degree, "basis": names},
        "\n".join(names) if names else "(empty)",
    )
    return 0


def _cmd_module_check(args) -> int:
    m = mod.load_module(args.file)
    violations = mod.consistency_check(m, args.max_degree)
    classes = sorted(mod.violation_classes(violations))
    text_lines = [
        f"module over F_{m.prime}, total dimension {m.total_dim}",
        f"violated relation classes: {classes if classes else 'none'}",
    ]
    text_lines.extend(f"  {v}" for v in violations)
    _emit(
        args,
        {
            "prime": m.prime,
            "total_dim": m.total_dim,
            "violated_classes": [list(c) for c in classes],
            "violations": [str(v) for v in violations],
        },
        "\n".join(text_lines),
    )
    return 0 if not violations else 1


def _cmd_module_tensor(args) -> int:
    a = mod.load_module(args.files[0])
    b = mod.load_module(args.files[1])
    t = mod.tensor(a, b)
    if args.output:
        mod.save_module(t, args.output)
    dims = {d: t.dim(d) for d in t.degrees}
    _emit(
        args,
        {"dims": dims, "total_dim": t.total_dim},
        f"tensor product dims {dims}, total dimension {t.total_dim}"
        + (f", written to {args.output}" if args.output else ""),
    )
    return 0


def _cmd_module_decompose(args) -> int:
    m = mod.load_module(args.file)
    result = mod.is_decomposable(m)
    summand_dims = [
        {d: s.dim(d) for d in s.degrees} for s in (result.summands or [])
    ]
    _emit(
        args,
        {
            "decomposable": bool(result),
            "certified": result.certified,
            "summand_dims": summand_dims,
        },
        f"decomposable: {bool(result)} (certified: {result.certified})"
        + (f", summand dims {summand_dims}" if result.summands else ""),
    )
    return 0


def _cmd_pi(args) -> int:
    table = _load_table(args)
    if args.moore is None:
        entry = stems(args.k, table)
        if isinstance(entry, Unknown):
            _emit(args, {"k": args.k, "value": "unknown"}, str(entry))
            return 1
        text = str(entry.group) if entry.group is not None else str(
            {p: str(g) for p, g in entry.p_primary.items()}
        )
        _emit(
            args,
            {"k": args.k, "group": text, "provenance": entry.provenance},
            f"pi_{args.k} = {text}  [{entry.provenance}]",
        )
        return 0
    result = moore_homotopy(args.moore, args.k, table)
    if isinstance(result, Unknown):
        _emit(args, {"k": args.k, "n": args.moore, "value": "unknown"}, str(result))
        return 1
    _emit(
        args,
        {"k": args.k, "n": args.moore, "group": str(result), "order": result.order},
        f"pi_{args.k}(S/{args.moore}) = {result}",
    )
    return 0


def _cmd_endo(args) -> int:
    table = _load_table(args)
    result = moore_endomorphisms(args.n, table)
    if isinstance(result, Unknown):
        _emit(args, {"n": args.n, "value": "unknown"}, str(result))
        return 1
    _emit(
        args,
        {"n": args.n, "group": str(result), "order": result.order},
        f"[S/{args.n}, S/{args.n}] = {result}",
    )
    return 0


def _cmd_associator(args) -> int:
    table = _load_table(args)
    result = associator_obstruction(args.n, table)
    if isinstance(result, Unknown):
        _emit(args, {"n": args.n, "value": "unknown"}, str(result))
        return 1
    verdict = "associative" if result.is_trivial else "obstruction nonzero"
    _emit(
        args,
        {"n": args.n, "obstruction": str(result), "associative": result.is_trivial},
        f"obstruction group pi_3(S/{args.n}) = {result}: {verdict}",
    )
    return 0


def _cmd_exotic_verify(args) -> int:
    report = verify_axioms(args.max_rank)
    lines = [f"exotic category axiom check (rank <= {args.max_rank}): "
             f"{'PASS' if report.passed else 'FAIL'}"]
    lines.extend(f"  [{'ok' if ok else 'FAIL'}] {desc}" for desc, ok in report.steps)
    _emit(
        args,
        {
            "max_rank": args.max_rank,
            "passed": report.passed,
            "steps": [{"claim": d, "passed": ok} for d, ok in report.steps],
        },
        "\n".join(lines),
    )
    return 0 if report.passed else 1


def _cmd_exotic_two_order(args) -> int:
    cert = two_order_zero_certificate()
    _emit(
        args,
        {
            "passed": cert.passed,
            "two_id_nonzero": cert.two_id_nonzero,
            "cone_rank": cert.cone_rank,
            "lines": cert.lines,
        },
        "\n".join(cert.lines + [f"certificate: {'PASS' if cert.passed else 'FAIL'}"]),
    )
    return 0 if cert.passed else 1


def _cmd_scenario(args) -> int:
    table = _load_table(args)
    if args.name == "all":
        reports = run_all(table)
    elif args.name == "prop2":
        reports = [scenario_prop2()]
    elif args.name == "prop3":
        reports = [scenario_prop3(args.n if args.n is not None else 2, table)]
    elif args.name == "prop5":
        reports = [scenario_prop5(table)]
    elif args.name == "prop6":
        reports = [scenario_prop6(args.n if args.n is not None else 5, table)]
    else:
        reports = [scenario_exotic()]
    if args.json:
        print(json.dumps([r.to_dict() for r in reports], indent=2, sort_keys=True))
    else:
        print("\n\n".join(r.render() for r in reports))
    return 0 if all(r.passed for r in reports) else 1


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="torsionlab",
        description="Workbench for torsion computations in triangulated categories",
    )
    parser.add_argument("--prime", type=int, default=2, help="the prime p (default 2)")
    parser.add_argument(
        "--max-degree", type=int, default=40,
        help="degree bound for oracle and consistency checks (default 40)",
    )
    parser.add_argument("--json", action="store_true", help="emit JSON output")
    parser.add_argument(
        "--stems-file", default=None,
        help="JSON file with additional stable-stems entries",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("normalize", help="Adem normal form of an expression")
    p.add_argument("expression")
    p.set_defaults(func=_cmd_normalize)

    p = sub.add_parser(
        "oracle-check",
        help="compare an expression with its normal form (or a second "
        "expression) via the polynomial-algebra action",
    )
    p.add_argument("expression")
    p.add_argument("against", nargs="?", default=None)
    p.set_defaults(func=_cmd_oracle_check)

    p = sub.add_parser("basis", help="admissible basis in a given degree")
    p.add_argument("degree", type=int)
    p.set_defaults(func=_cmd_basis)

    p = sub.add_parser("module", help="finite module operations")
    msub = p.add_subparsers(dest="module_command", required=True)
    q = msub.add_parser("check", help="Adem-consistency check of a module file")
    q.add_argument("file")
    q.set_defaults(func=_cmd_module_check)
    q = msub.add_parser("tensor", help="tensor product of two module files")
    q.add_argument("files", nargs=2)
    q.add_argument("-o", "--output", default=None)
    q.set_defaults(func=_cmd_module_tensor)
    q = msub.add_parser("decompose", help="decomposability of a module file")
    q.add_argument("file")
    q.set_defaults(func=_cmd_module_decompose)

    p = sub.add_parser("pi", help="stable stem, or Moore-spectrum homotopy with --moore")
    p.add_argument("k", type=int)
    p.add_argument("--moore", type=int, default=None, metavar="N")
    p.set_defaults(func=_cmd_pi)

    p = sub.add_parser("endo", help="endomorphism group of the mod-n Moore spectrum")
    p.add_argument("n", type=int)
    p.set_defaults(func=_cmd_endo)

    p = sub.add_parser("associator", help="associativity obstruction for S/n")
    p.add_argument("n", type=int)
    p.set_defaults(func=_cmd_associator)

    p = sub.add_parser("exotic", help="Z/4 exotic category checks")
    esub = p.add_subparsers(dest="exotic_command", required=True)
    q = esub.add_parser("verify", help="exhaustive low-rank axiom verification")
    q.add_argument("--max-rank", type=int, default=2)
    q.set_defaults(func=_cmd_exotic_verify)
    q = esub.add_parser("two-order", help="2-order-zero certificate")
    q.set_defaults(func=_cmd_exotic_two_order)

    p = sub.add_parser("scenario", help="run a verification scenario")
    p.add_argument("name", choices=["prop2", "prop3", "prop5", "prop6", "exotic", "all"])
    p.add_argument("--n", type=int, default=None, help="n for prop3/prop6")
    p.set_defaults(func=_cmd_scenario)

    return parser


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    return args.func(args)


if __name__ == "__main__":
    sys.exit(main())
