"""Command-line entry point: ``sparsefb <subcommand> ...``.

Results go to stdout as JSON. Exit status is 0 on success, 1 when a
yes/no verdict comes out negative (fixed modes present, not structurally
cyclic, no pattern within the search cap) and 2 on bad input or usage.
"""
from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

from .augment import augment_strong_connectivity
from .instance import InstanceError, dump_instance, export_dot, load_instance
from .oracle import SearchSpaceError, brute_force_min_feedback, generate_random_system
from .select import AssumptionError, count_state_covering_sccs, select_sparsest_feedback
from .sfm import check_no_sfm
from .system import (
    build_closed_loop_digraph,
    build_open_loop_digraph,
    build_state_digraph,
    check_assumption,
)

EXIT_OK, EXIT_NEGATIVE, EXIT_ERROR = 0, 1, 2


class UsageError(Exception):
    pass


def _pairs(positions):
    return [[i + 1, j + 1] for i, j in positions]


def _cmd_check_sfm(args):
    inst = load_instance(args.file)
    if inst.k is None:
        raise UsageError(f"{args.file}: field 'k': check-sfm needs a feedback pattern")
    report = check_no_sfm(inst.system, inst.k)
    sd = build_closed_loop_digraph(inst.system, inst.k)
    witness = None
    if report.cycle_cover_witness is not None:
        witness = [[sd.label(v) for v in cyc] for cyc in report.cycle_cover_witness]
    out = {
        "command": "check-sfm",
        "no_sfm": report.no_sfm,
        "condition_a": report.condition_a,
        "condition_b": report.condition_b,
        "violating_states": [s + 1 for s in report.violating_states_a],
        "cycle_cover": witness,
        "state_covering_sccs": count_state_covering_sccs(sd),
        "state_sccs": [
            {"states": [s + 1 for s in summ.states], "has_feedback_edge": summ.has_feedback_edge}
            for summ in report.scc_summary
        ],
    }
    return out, f"no_sfm: {str(report.no_sfm).lower()}", EXIT_OK if report.no_sfm else EXIT_NEGATIVE


def _cmd_select(args):
    inst = load_instance(args.file)
    res = select_sparsest_feedback(inst.system)
    aug = res.augmentation
    out = {
        "command": "select",
        "n": inst.system.n,
        "cardinality": res.cardinality,
        "case": res.case.value,
        "k": _pairs(res.k.positions()),
        "augmentation": {
            "added_edges": _pairs(aug.added_edges),
            "source_components": aug.source_components,
            "sink_components": aug.sink_components,
            "isolated_components": aug.isolated_components,
        },
    }
    return out, f"cardinality: {res.cardinality}", EXIT_OK


def _cmd_augment(args):
    inst = load_instance(args.file)
    aug = augment_strong_connectivity(build_state_digraph(inst.system.a))
    out = {
        "command": "augment",
        "n": inst.system.n,
        "strongly_connected": not aug.added_edges,
        "added_edges": _pairs(aug.added_edges),
        "source_components": aug.source_components,
        "sink_components": aug.sink_components,
        "isolated_components": aug.isolated_components,
    }
    return out, f"added_edges: {len(aug.added_edges)}", EXIT_OK


def _cmd_is_cyclic(args):
    inst = load_instance(args.file)
    v = check_assumption(inst.system)
    out = {
        "command": "is-cyclic",
        "structurally_cyclic": v.structurally_cyclic,
        "dedicated_inputs": v.b_identity,
        "dedicated_outputs": v.c_identity,
        "assumption_holds": v.holds,
        "explanation": v.explanation,
    }
    verdict = f"structurally_cyclic: {str(v.structurally_cyclic).lower()}"
    return out, verdict, EXIT_OK if v.structurally_cyclic else EXIT_NEGATIVE


def _cmd_oracle(args):
    inst = load_instance(args.file)
    sys_ = inst.system
    max_card = sys_.m * sys_.p if args.max_card is None else args.max_card
    res = brute_force_min_feedback(sys_, max_card)
    out = {
        "command": "oracle",
        "max_card": max_card,
        "min_cardinality": res.min_cardinality,
        "all_optima": [_pairs(k.positions()) for k in res.all_optima],
        "explored": res.explored,
    }
    shown = "null" if res.min_cardinality is None else res.min_cardinality
    return out, f"min_cardinality: {shown}", EXIT_OK if res.found else EXIT_NEGATIVE


def _cmd_export_dot(args):
    inst = load_instance(args.file)
    if args.closed_loop:
        if inst.k is None:
            raise UsageError(f"{args.file}: field 'k': --closed-loop needs a feedback pattern")
        sd = build_closed_loop_digraph(inst.system, inst.k)
    else:
        sd = build_open_loop_digraph(inst.system)
    text = export_dot(sd, closed_loop=args.closed_loop)
    Path(args.output).write_text(text, encoding="utf-8")
    out = {
        "command": "export-dot",
        "output": str(args.output),
        "closed_loop": args.closed_loop,
        "vertices": sd.graph.node_count,
        "edges": text.count("->"),
    }
    return out, f"wrote {args.output}", EXIT_OK


def _cmd_gen(args):
    sys_ = generate_random_system(args.n, args.p, args.seed)
    Path(args.output).write_text(dump_instance(sys_), encoding="utf-8")
    out = {
        "command": "gen",
        "output": str(args.output),
        "n": args.n,
        "edge_probability": args.p,
        "seed": args.seed,
        "nnz_a": sys_.a.nnz,
    }
    return out, f"wrote {args.output}", EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="sparsefb",
        description="Structurally fixed modes and sparsest feedback selection for structured systems.",
    )
    parser.add_argument("--quiet", action="store_true", help="print only the verdict line")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("check-sfm", help="test an instance with a feedback pattern for fixed modes")
    p.add_argument("file")
    p.set_defaults(func=_cmd_check_sfm)

    p = sub.add_parser("select", help="sparsest feedback pattern (dedicated I/O, structurally cyclic)")
    p.add_argument("file")
    p.set_defaults(func=_cmd_select)

    p = sub.add_parser("augment", help="minimum strong-connectivity augmentation of the state digraph")
    p.add_argument("file")
    p.set_defaults(func=_cmd_augment)

    p = sub.add_parser("is-cyclic", help="structural cyclicity and dedicated-I/O check")
    p.add_argument("file")
    p.set_defaults(func=_cmd_is_cyclic)

    p = sub.add_parser("oracle", help="exhaustive minimum feedback search (small instances)")
    p.add_argument("file")
    p.add_argument("--max-card", type=int, default=None, help="largest cardinality to try (default m*p)")
    p.set_defaults(func=_cmd_oracle)

    p = sub.add_parser("export-dot", help="write the system digraph as Graphviz DOT")
    p.add_argument("file")
    p.add_argument("--closed-loop", action="store_true", help="include feedback edges from 'k'")
    p.add_argument("-o", "--output", required=True)
    p.set_defaults(func=_cmd_export_dot)

    p = sub.add_parser("gen", help="write a random dedicated-I/O instance")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--p", type=float, required=True, help="off-diagonal edge probability")
    p.add_argument("--seed", type=int, required=True)
    p.add_argument("-o", "--output", required=True)
    p.set_defaults(func=_cmd_gen)

    # accept --quiet after the subcommand too
    for action in sub.choices.values():
        action.add_argument("--quiet", action="store_true", default=argparse.SUPPRESS, help=argparse.SUPPRESS)
    return parser


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code) if isinstance(exc.code, int) else EXIT_ERROR
    try:
        out, verdict, status = args.func(args)
    except (InstanceError, AssumptionError, SearchSpaceError, UsageError, ValueError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_ERROR
    if args.quiet:
        print(verdict)
    else:
        print(json.dumps(out, indent=2))
    return status


if __name__ == "__main__":
    sys.exit(main())
