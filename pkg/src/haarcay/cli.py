"""Command-line front end.

Verbs: group, haar, cayley, check, witness, scan, aut.  Machine-readable
output (key:value lines or JSON lines) goes to stdout, diagnostics to
stderr.  Exit codes: 0 property holds / success, 1 property fails, 2
verdict unknown, 64 usage error, 65 invalid data, 69 resource limit.
"""
from __future__ import annotations

import argparse
import json
import os
import sys
from typing import Optional, Sequence

from . import groups as gr
from . import survey
from .errors import HaarcayError, InvalidParameterError, ResourceLimitError
from .graphs import from_graph6, to_dot, to_graph6, automorphism_group, is_connected
from .haar import (
    HaarSpec,
    alg_cayley_witness,
    build_sigma,
    cayley_graph,
    connectivity_criterion,
    haar_graph,
    is_cayley,
    is_vertex_transitive,
    right_translations,
)
from .perms import image_line

EX_USAGE = 64
EX_DATAERR = 65
EX_UNAVAILABLE = 69
BUDGET_ENV = "HAARCAY_BUDGET"


class _UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):  # argparse would exit(2); we want 64
        raise _UsageError(message)


# ---------------------------------------------------------------------------
# group DSL

def parse_group_dsl(text: str) -> gr.FiniteGroup:
    """cyclic:N | dihedral:N | gendih:<spec> | product:<spec>,<spec> |
    quaternion | metacyclic:M,R,S,T | table:<path>"""
    text = text.strip()
    if text == "quaternion":
        return gr.build_quaternion()
    head, sep, rest = text.partition(":")
    if not sep:
        raise InvalidParameterError(f"bad group spec {text!r}")
    if head == "cyclic":
        return gr.build_cyclic(_int(rest, "cyclic order"))
    if head == "dihedral":
        return gr.build_dihedral(_int(rest, "dihedral parameter"))
    if head == "gendih":
        return gr.build_generalized_dihedral(parse_group_dsl(rest))
    if head == "metacyclic":
        parts = rest.split(",")
        if len(parts) != 4:
            raise InvalidParameterError("metacyclic needs four parameters M,R,S,T")
        m, r, s, t = (_int(p, "metacyclic parameter") for p in parts)
        return gr.build_metacyclic(m, r, s, t)
    if head == "product":
        # split at the top-level comma: try each position until both parse
        for i, ch in enumerate(rest):
            if ch != ",":
                continue
            left, right = rest[:i], rest[i + 1:]
            try:
                return gr.build_direct_product(parse_group_dsl(left), parse_group_dsl(right))
            except HaarcayError:
                continue
        raise InvalidParameterError(f"cannot split product spec {rest!r} into two group specs")
    if head == "table":
        try:
            with open(rest, "r", encoding="utf-8") as fh:
                content = fh.read()
        except OSError as exc:
            raise InvalidParameterError(f"cannot read table file: {exc}") from None
        return gr.group_from_table_text(content, label=f"table:{rest}")
    raise InvalidParameterError(f"unknown group family {head!r}")


def _int(token: str, what: str) -> int:
    try:
        return int(token.strip())
    except ValueError:
        raise InvalidParameterError(f"bad {what}: {token!r}") from None


def parse_haar_spec(text: str) -> HaarSpec:
    """"<group-dsl>|<comma-separated element names or indices>"."""
    group_part, sep, subset_part = text.partition("|")
    if not sep:
        raise InvalidParameterError("haar spec needs the form <group>|<elements>")
    group = parse_group_dsl(group_part)
    tokens = [t for t in subset_part.split(",") if t.strip()]
    subset = tuple(group.element_index(t) for t in tokens)
    return HaarSpec(group, subset)


def _budget(args) -> int:
    if getattr(args, "budget", None) is not None:
        return args.budget
    env = os.environ.get(BUDGET_ENV)
    if env is not None:
        try:
            return int(env)
        except ValueError:
            raise InvalidParameterError(f"bad {BUDGET_ENV} value {env!r}") from None
    return 10**6


# ---------------------------------------------------------------------------
# verbs

def _cmd_group(args) -> int:
    group = parse_group_dsl(args.dsl)
    print(f"label:{group.label}")
    print(f"order:{group.order}")
    print(f"names:{' '.join(group.names)}")
    print(f"aut_order:{len(gr.automorphisms(group, args.max_group_order))}")
    return 0


def _emit_graph(graph, args) -> None:
    if args.graph6:
        with open(args.graph6, "w", encoding="utf-8") as fh:
            fh.write(to_graph6(graph) + "\n")
    if args.dot:
        with open(args.dot, "w", encoding="utf-8") as fh:
            fh.write(to_dot(graph))


def _cmd_haar(args) -> int:
    spec = parse_haar_spec(args.spec)
    graph = haar_graph(spec)
    connected, comps = is_connected(graph)
    print(f"spec:{spec.text()}")
    print(f"vertices:{graph.n}")
    print(f"edges:{graph.edge_count}")
    print(f"valency:{spec.valency}")
    print(f"connected:{str(connected).lower()}")
    print(f"components:{len(comps)}")
    _emit_graph(graph, args)
    return 0


def _cmd_cayley(args) -> int:
    spec = parse_haar_spec(args.spec)
    graph = cayley_graph(spec.group, spec.s)
    connected, comps = is_connected(graph)
    print(f"spec:{spec.text()}")
    print(f"vertices:{graph.n}")
    print(f"edges:{graph.edge_count}")
    print(f"connected:{str(connected).lower()}")
    print(f"components:{len(comps)}")
    _emit_graph(graph, args)
    return 0


def _cmd_check(args) -> int:
    spec = parse_haar_spec(args.spec)
    print(f"spec:{spec.text()}")
    if args.connected:
        print("property:connected")
        holds = connectivity_criterion(spec)
    elif args.vt:
        print("property:vertex-transitive")
        holds = is_vertex_transitive(haar_graph(spec))
    elif args.alg_cayley:
        print("property:algebraically-cayley")
        witness = alg_cayley_witness(spec, args.max_group_order)
        holds = witness is not None
        if witness is not None:
            print(f"witness_g:{spec.group.names[witness.g]}")
            print(f"witness_alpha:{' '.join(spec.group.names[i] for i in witness.alpha)}")
    else:
        print("property:cayley")
        seed = right_translations(spec.group) if args.seed_GR else None
        outcome = is_cayley(haar_graph(spec), budget=_budget(args), seed=seed)
        if outcome.status == "unknown":
            print("verdict:unknown")
            return 2
        holds = outcome.status == "yes"
        if holds:
            print(f"regular_group_order:{outcome.regular_group.order()}")
    print(f"verdict:{'holds' if holds else 'fails'}")
    return 0 if holds else 1


def _cmd_witness(args) -> int:
    spec = parse_haar_spec(args.spec)
    print(f"spec:{spec.text()}")
    witness = alg_cayley_witness(spec, args.max_group_order)
    if witness is None:
        print("witness:NONE")
        return 1
    sigma = build_sigma(spec, witness)
    print(f"g:{spec.group.names[witness.g]}")
    print(f"alpha:{' '.join(spec.group.names[i] for i in witness.alpha)}")
    print(f"sigma:{image_line(sigma.perm)}")
    return 0


def _cmd_aut(args) -> int:
    with open(args.path, "r", encoding="utf-8") as fh:
        graph = from_graph6(fh.read())
    aut = automorphism_group(graph, max_vertices=args.max_vertices)
    print(f"vertices:{graph.n}")
    print(f"aut_order:{aut.order()}")
    cells = " ".join(",".join(map(str, orb)) for orb in aut.orbits())
    print(f"orbits:{cells}")
    return 0


def _scan_output(args):
    """Returns (on_record, skip_keys, finalize)."""
    skip: set[str] = set()
    if args.out:
        mode = "a" if args.resume and os.path.exists(args.out) else "w"
        if mode == "a":
            with open(args.out, "r", encoding="utf-8") as fh:
                for line in fh:
                    line = line.strip()
                    if line:
                        skip.add(json.loads(line).get("key", ""))
        fh = open(args.out, mode, encoding="utf-8")

        def on_record(record: dict) -> None:
            fh.write(json.dumps(record, sort_keys=True) + "\n")
            fh.flush()

        return on_record, frozenset(skip), fh.close

    def on_record(record: dict) -> None:
        print(json.dumps(record, sort_keys=True))

    return on_record, frozenset(), lambda: None


def _cmd_scan(args) -> int:
    on_record, skip_keys, finalize = _scan_output(args)
    try:
        if args.kind == "all-subsets":
            group = parse_group_dsl(args.group[0])
            ok, counterexample = survey.all_haar_alg_cayley(
                group, dedup=args.dedup, on_record=on_record,
                max_aut_order=args.max_group_order,
            )
            print(f"all_algebraically_cayley:{str(ok).lower()}", file=sys.stderr)
            if counterexample is not None:
                names = ",".join(group.names[i] for i in counterexample)
                print(f"counterexample:{names}", file=sys.stderr)
            return 0 if ok else 1
        if args.kind == "dihedral-pattern":
            report = survey.dihedral_pattern_scan(
                args.lo, args.hi, workers=args.workers,
                on_record=on_record, skip_keys=skip_keys,
            )
        elif args.kind in ("prop36", "rigidity"):
            report = survey.dihedral_rigidity_scan(
                args.lo, args.hi, workers=args.workers,
                on_record=on_record, skip_keys=skip_keys,
            )
        elif args.kind == "gendih":
            a_groups = [parse_group_dsl(spec) for spec in args.group]
            report = survey.gendih_valency_check(
                a_groups, max_valency=args.max_valency, on_record=on_record,
                max_aut_order=args.max_group_order,
            )
        elif args.kind == "closure":
            group = parse_group_dsl(args.group[0])
            report = survey.closure_check(
                group, on_record=on_record, max_aut_order=args.max_group_order
            )
        else:
            raise _UsageError(f"unknown scan kind {args.kind!r}")
        print(report.summary_text(), end="", file=sys.stderr)
        return 0
    finally:
        finalize()


# ---------------------------------------------------------------------------
# parser wiring

def _build_parser() -> _Parser:
    parser = _Parser(prog="haarcay", description=__doc__)
    sub = parser.add_subparsers(dest="verb", required=True)

    p_group = sub.add_parser("group", help="print order, names and |Aut| of a group")
    p_group.add_argument("dsl")
    p_group.add_argument("--max-group-order", type=int, default=gr.DEFAULT_AUT_ORDER_BOUND)
    p_group.set_defaults(fn=_cmd_group)

    for verb, fn in (("haar", _cmd_haar), ("cayley", _cmd_cayley)):
        p = sub.add_parser(verb, help=f"build a {verb} graph and emit files")
        p.add_argument("spec")
        p.add_argument("--graph6", metavar="PATH")
        p.add_argument("--dot", metavar="PATH")
        p.set_defaults(fn=fn)

    p_check = sub.add_parser("check", help="decide a property of H(G,S)")
    p_check.add_argument("spec")
    which = p_check.add_mutually_exclusive_group(required=True)
    which.add_argument("--connected", action="store_true")
    which.add_argument("--vt", action="store_true")
    which.add_argument("--cayley", action="store_true")
    which.add_argument("--alg-cayley", dest="alg_cayley", action="store_true")
    p_check.add_argument("--seed-GR", dest="seed_GR", action=argparse.BooleanOptionalAction,
                         default=True)
    p_check.add_argument("--budget", type=int, default=None)
    p_check.add_argument("--max-group-order", type=int, default=gr.DEFAULT_AUT_ORDER_BOUND)
    p_check.set_defaults(fn=_cmd_check)

    p_wit = sub.add_parser("witness", help="print (g, alpha) and sigma, or NONE")
    p_wit.add_argument("spec")
    p_wit.add_argument("--max-group-order", type=int, default=gr.DEFAULT_AUT_ORDER_BOUND)
    p_wit.set_defaults(fn=_cmd_witness)

    p_scan = sub.add_parser("scan", help="run a batch scan, one JSON record per line")
    p_scan.add_argument("kind", choices=["all-subsets", "dihedral-pattern", "prop36",
                                         "rigidity", "gendih", "closure"])
    p_scan.add_argument("--group", action="append", default=[],
                        help="group DSL (repeatable for gendih)")
    p_scan.add_argument("--lo", type=int, default=None)
    p_scan.add_argument("--hi", type=int, default=None)
    p_scan.add_argument("--dedup", action="store_true")
    p_scan.add_argument("--max-valency", type=int, default=5)
    p_scan.add_argument("--workers", type=int, default=1)
    p_scan.add_argument("--out", metavar="PATH")
    p_scan.add_argument("--resume", action="store_true")
    p_scan.add_argument("--max-group-order", type=int, default=gr.DEFAULT_AUT_ORDER_BOUND)
    p_scan.set_defaults(fn=_cmd_scan)

    p_aut = sub.add_parser("aut", help="automorphism group of a graph6 file")
    p_aut.add_argument("path")
    p_aut.add_argument("--max-vertices", type=int, default=1000)
    p_aut.set_defaults(fn=_cmd_aut)
    return parser


def _validate_scan_args(args) -> None:
    if args.verb != "scan":
        return
    if args.kind in ("dihedral-pattern", "prop36", "rigidity"):
        if args.lo is None or args.hi is None:
            raise _UsageError(f"scan {args.kind} needs --lo and --hi")
    if args.kind in ("all-subsets", "closure") and len(args.group) != 1:
        raise _UsageError(f"scan {args.kind} needs exactly one --group")
    if args.kind == "gendih" and not args.group:
        raise _UsageError("scan gendih needs at least one --group")


def main(argv: Optional[Sequence[str]] = None) -> int:
    parser = _build_parser()
    try:
        args = parser.parse_args(argv)
        _validate_scan_args(args)
        return args.fn(args)
    except _UsageError as exc:
        print(f"usage error: {exc}", file=sys.stderr)
        parser.print_usage(sys.stderr)
        return EX_USAGE
    except ResourceLimitError as exc:
        print(f"resource limit: {exc}", file=sys.stderr)
        return EX_UNAVAILABLE
    except HaarcayError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EX_DATAERR


def console_entry() -> None:
    sys.exit(main())


if __name__ == "__main__":
    console_entry()
