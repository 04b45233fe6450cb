"""Command line front end.

Subcommands: group-info, artin, ono, twist, reduce, check.  Global flags
come before the subcommand: --workspace loads a JSON workspace file,
--json/--table pick the output form (JSON is the default and is always
byte-stable).  Errors print a machine-readable JSON object to stdout and
exit with 2 for input problems, 1 for computation failures.
"""

from __future__ import annotations

import argparse
import sys
from typing import Optional, Sequence

from .checks import PropertyResult, run_property_suite
from .errors import (
    CharacterMismatch,
    ClosureTooLarge,
    GroupMismatch,
    InternalContradiction,
    InvalidCocycle,
    NoInvertibleIntertwiner,
    NotAHomomorphism,
    NotAPermutation,
    NotASubgroup,
    NotFiniteIndex,
    NotInRationalSpan,
    NotUnimodular,
    UnknownName,
    WorkspaceError,
)
from .groups import conjugacy_classes, cyclic_subgroup_class_reps, subgroup_conjugacy_reps
from .induction import artin_decompose, certify_minimality, ono_construct
from .lattices import GammaLattice, is_permutation_lattice, twist
from .reduction import ReductionReport, reduce_stabilizer
from .serialize import (
    FORMAT_VERSION,
    canonical_json,
    encode_artin,
    encode_certificate,
    encode_group_info,
    encode_lattice,
    encode_narrative,
    encode_ono,
    encode_reduction,
    format_matrix,
    format_table,
)
from .workspace import (
    Workspace,
    empty_workspace,
    load_workspace,
    resolve_cocycle,
    resolve_lattice,
    resolve_reduction,
)
from .workspace import resolve_group as _resolve_group

__all__ = ["main"]

_INPUT_ERRORS = (
    WorkspaceError,
    UnknownName,
    NotAPermutation,
    NotASubgroup,
    NotAHomomorphism,
    NotUnimodular,
    InvalidCocycle,
    GroupMismatch,
    CharacterMismatch,
    ClosureTooLarge,
)
_COMPUTATION_ERRORS = (
    NoInvertibleIntertwiner,
    NotInRationalSpan,
    NotFiniteIndex,
    InternalContradiction,
)


def _abelian_text(structure) -> str:
    if not structure.invariant_factors:
        return "trivial (order 1)"
    parts = " x ".join(f"Z/{d}" for d in structure.invariant_factors)
    return f"{parts} (order {structure.order})"


def _blocks(parts: Sequence[str]) -> str:
    return "\n".join(part.rstrip("\n") for part in parts if part != "") + "\n"


def _lattice_table(m: GammaLattice, title: str) -> str:
    parts = [f"{title}: rank {m.rank} over a group of order {m.group.order}"]
    for gid in m.group.generator_ids:
        parts.append(f"action of generator {m.group.label(gid)}:")
        parts.append(format_matrix(m.matrices[gid]))
    return _blocks(parts)


def cmd_group_info(workspace: Workspace, group_name: str) -> tuple[dict, str, int]:
    group = _resolve_group(workspace, group_name)
    payload = {"format": FORMAT_VERSION, "group": encode_group_info(group, name=group_name)}
    classes = conjugacy_classes(group)
    cyc = cyclic_subgroup_class_reps(group)
    subs = subgroup_conjugacy_reps(group)
    parts = [
        format_table(
            ("field", "value"),
            [
                ("name", group_name),
                ("order", str(group.order)),
                ("abelian", "yes" if group.is_abelian() else "no"),
                ("generators", " ".join(group.label(g) for g in group.generator_ids)),
                ("conjugacy classes", str(len(classes))),
                ("cyclic subgroup reps", str(len(cyc))),
                ("subgroup conjugacy reps", str(len(subs))),
            ],
        ),
        "conjugacy classes:",
        format_table(
            ("index", "size", "elements"),
            [
                (str(i), str(len(cls)), " ".join(group.label(g) for g in cls))
                for i, cls in enumerate(classes)
            ],
        ),
        "cyclic subgroup representatives:",
        format_table(
            ("index", "order", "elements"),
            [
                (str(i), str(len(rep)), " ".join(group.label(g) for g in rep))
                for i, rep in enumerate(cyc)
            ],
        ),
    ]
    return payload, _blocks(parts), 0


def cmd_artin(workspace: Workspace, lattice_name: str) -> tuple[dict, str, int]:
    lat = resolve_lattice(workspace, lattice_name)
    solution = artin_decompose(lat)
    minimal = certify_minimality(lat, solution)
    payload = {
        "format": FORMAT_VERSION,
        "lattice": encode_lattice(lat, name=lattice_name),
        "artin": encode_artin(solution),
        "minimal": minimal,
    }
    rows = [
        (
            " ".join(lat.group.label(g) for g in rep),
            str(len(rep)),
            str(solution.m[i]),
            str(solution.n[i]),
        )
        for i, rep in enumerate(solution.reps)
        if solution.m[i] or solution.n[i]
    ]
    parts = [
        f"lattice {lattice_name}: rank {lat.rank}, group order {lat.group.order}",
        f"multiplier r = {solution.r} (certified minimal: {'yes' if minimal else 'no'})",
        "induced terms (m on the left of the embedding, n on the right):",
        format_table(("subgroup", "order", "m", "n"), rows) if rows else "(none)",
    ]
    return payload, _blocks(parts), 0


def cmd_ono(
    workspace: Workspace, lattice_name: str, allow_random: bool = True
) -> tuple[dict, str, int]:
    lat = resolve_lattice(workspace, lattice_name)
    result = ono_construct(lat, allow_random=allow_random)
    payload = {
        "format": FORMAT_VERSION,
        "lattice": encode_lattice(lat, name=lattice_name),
        "ono": encode_ono(result),
    }
    parts = [
        f"lattice {lattice_name}: rank {lat.rank}, group order {lat.group.order}",
        f"multiplier r = {result.r}",
        f"induced source rank {result.m1.rank}, target rank {result.embedding.target.rank}",
        f"embedding index {result.index}",
        "embedding matrix:",
        format_matrix(result.embedding.matrix),
        f"cokernel: {_abelian_text(result.embedding.cokernel)}",
    ]
    return payload, _blocks(parts), 0


def cmd_twist(
    workspace: Workspace, lattice_name: str, cocycle_name: str, coord_bound: int = 2
) -> tuple[dict, str, int]:
    lat = resolve_lattice(workspace, lattice_name)
    cocycle = resolve_cocycle(workspace, cocycle_name)
    product = next(
        (p for p in workspace.products.values() if p.action == cocycle.base), None
    )
    twisted = twist(lat, cocycle, product)
    cert = is_permutation_lattice(twisted, coord_bound)
    payload = {
        "format": FORMAT_VERSION,
        "lattice": encode_lattice(twisted, name=f"{lattice_name} twisted by {cocycle_name}"),
        "permutation_certificate": encode_certificate(cert),
    }
    parts = [
        _lattice_table(twisted, f"twist of {lattice_name} by {cocycle_name}"),
        f"permutation lattice: {cert.status}"
        + (f" ({cert.reason})" if cert.reason else ""),
    ]
    return payload, _blocks(parts), 0


def cmd_reduce(
    workspace: Workspace,
    input_name: str,
    allow_random: bool = True,
    narrative_only: bool = False,
) -> tuple[dict, str, int]:
    inp = resolve_reduction(workspace, input_name)
    report = reduce_stabilizer(inp, allow_random=allow_random)
    narrative = encode_narrative(report.narrative)
    if narrative_only:
        payload = {"format": FORMAT_VERSION, "narrative": narrative}
    else:
        payload = {
            "format": FORMAT_VERSION,
            "input": input_name,
            "reduction": encode_reduction(report),
        }
    parts = []
    for entry in report.narrative:
        parts.append(f"[{entry.step}] {entry.title} ({entry.status})")
        parts.append(f"    {entry.detail}")
    if not narrative_only:
        parts.append(f"m = {report.m}")
        parts.append(f"A  = {_abelian_text(report.a.structure)}")
        parts.append(f"A' = {_abelian_text(report.a_prime.structure)}")
        parts.append(f"kernel order of F over the component group: {report.kernel_order_of_F}")
    return payload, _blocks(parts), 0


def cmd_check(
    workspace: Workspace, coord_bound: int = 2, allow_random: bool = True
) -> tuple[dict, str, int]:
    results = run_property_suite(
        workspace, coord_bound=coord_bound, allow_random=allow_random
    )
    passed = all(r.passed for r in results)
    payload = {
        "format": FORMAT_VERSION,
        "passed": passed,
        "properties": [
            {"name": r.name, "passed": r.passed, "cases": r.cases, "detail": r.detail}
            for r in results
        ],
    }
    rows = [
        (r.name, "pass" if r.passed else "FAIL", str(r.cases), r.detail)
        for r in results
    ]
    total = sum(r.cases for r in results)
    parts = [
        format_table(("property", "status", "cases", "detail"), rows),
        f"{len(results)} properties, {total} cases, "
        + ("all passed" if passed else "FAILURES PRESENT"),
    ]
    return payload, _blocks(parts), 0 if passed else 1


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="gammalat",
        description="Exact integer computations with finite group actions on lattices.",
    )
    parser.add_argument(
        "--workspace",
        metavar="PATH",
        default=None,
        help="JSON workspace with named groups, actions, lattices, cocycles, reductions",
    )
    fmt = parser.add_mutually_exclusive_group()
    fmt.add_argument(
        "--json", dest="format", action="store_const", const="json", help="JSON output (default)"
    )
    fmt.add_argument(
        "--table", dest="format", action="store_const", const="table", help="plain-text tables"
    )
    parser.set_defaults(format="json")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("group-info", help="order, conjugacy classes, cyclic subgroup reps")
    p.add_argument("group", help="group name (workspace or built-in)")

    p = sub.add_parser("artin", help="decompose r*[lattice] into induced lattices")
    p.add_argument("lattice", help="lattice name (workspace or built-in)")

    p = sub.add_parser("ono", help="finite-index embedding of a sum of induced lattices")
    p.add_argument("lattice", help="lattice name (workspace or built-in)")
    p.add_argument(
        "--seedless",
        action="store_true",
        help="fail instead of falling back to seeded random search",
    )

    p = sub.add_parser("twist", help="twist a lattice over a semidirect product by a cocycle")
    p.add_argument("lattice", help="lattice name (workspace or built-in)")
    p.add_argument("cocycle", help="cocycle name (workspace)")
    p.add_argument(
        "--coord-bound",
        type=int,
        default=2,
        metavar="K",
        help="coordinate bound for the permutation-basis search (default 2)",
    )

    p = sub.add_parser("reduce", help="stabilizer reduction pipeline: kernel data and narrative")
    p.add_argument("input", help="reduction input name (workspace or built-in)")
    p.add_argument("--narrative-only", action="store_true", help="emit only the 5-step trace")
    p.add_argument(
        "--seedless",
        action="store_true",
        help="fail instead of falling back to seeded random search",
    )

    p = sub.add_parser("check", help="run the full property suite over corpus plus workspace")
    p.add_argument(
        "--coord-bound",
        type=int,
        default=2,
        metavar="K",
        help="coordinate bound for permutation-basis searches (default 2)",
    )
    p.add_argument(
        "--seedless",
        action="store_true",
        help="fail instead of falling back to seeded random search",
    )
    return parser


def _emit_error(exc: BaseException, code: Optional[str] = None) -> None:
    payload = {
        "format": FORMAT_VERSION,
        "error": {"code": code or type(exc).__name__, "message": str(exc)},
    }
    sys.stdout.write(canonical_json(payload))


def main(argv: Optional[Sequence[str]] = None) -> int:
    parser = _build_parser()
    args = parser.parse_args(argv)
    try:
        workspace = (
            load_workspace(args.workspace) if args.workspace else empty_workspace()
        )
        if args.command == "group-info":
            payload, table, code = cmd_group_info(workspace, args.group)
        elif args.command == "artin":
            payload, table, code = cmd_artin(workspace, args.lattice)
        elif args.command == "ono":
            payload, table, code = cmd_ono(
                workspace, args.lattice, allow_random=not args.seedless
            )
        elif args.command == "twist":
            payload, table, code = cmd_twist(
                workspace, args.lattice, args.cocycle, coord_bound=args.coord_bound
            )
        elif args.command == "reduce":
            payload, table, code = cmd_reduce(
                workspace,
                args.input,
                allow_random=not args.seedless,
                narrative_only=args.narrative_only,
            )
        else:
            payload, table, code = cmd_check(
                workspace, coord_bound=args.coord_bound, allow_random=not args.seedless
            )
    except _INPUT_ERRORS as exc:
        _emit_error(exc)
        return 2
    except _COMPUTATION_ERRORS as exc:
        _emit_error(exc)
        return 1
    except Exception as exc:
        _emit_error(exc, code="internal")
        return 1
    sys.stdout.write(table if args.format == "table" else canonical_json(payload))
    return code


if __name__ == "__main__":
    sys.exit(main())
