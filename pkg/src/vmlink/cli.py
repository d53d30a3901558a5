"""Command-line frontend: ``vmlink <command> [flags]``.

Graphs are graph6 strings or ``@path`` (first graph in the file). Vertex
sets are comma-separated ids. Results go to stdout as one JSON object per
line. Exit status: 0 success, 1 usage error, 2 theorem violation or failed
sweep (the report path is printed on stderr).
"""

from __future__ import annotations

import argparse
import json
import sys
from dataclasses import dataclass
from pathlib import Path
from typing import Any, TextIO

from .errors import TheoremViolation, UsageError
from .graph import Graph, iter_bits
from .graph6 import decode, encode
from .harness import Exhaustive, FromFile, Random, SweepSpec, run_sweep, tightness_search
from .linking import (
    LinkingInstance,
    find_doubly_good_vertex,
    is_flexible,
    joint_good_options,
    main_bound,
    oum_linking_options,
    option_names,
    reduce_preserving,
    separating_chain,
)
from .rankconn import cut_rank, kappa
from .report import set_record

COMMANDS = ("cutrank", "kappa", "options", "flexible", "chain", "reduce", "find-vertex", "sweep", "tightness")
DEFAULT_VIOLATION_PATH = "theorem_violation.json"


@dataclass
class Command:
    name: str
    args: argparse.Namespace


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(message)


def _graph_arg(text: str) -> Graph:
    if text.startswith("@"):
        try:
            lines = [ln.strip() for ln in Path(text[1:]).read_text(encoding="utf-8").splitlines()]
        except OSError as exc:
            raise argparse.ArgumentTypeError(f"cannot read {text[1:]}: {exc}")
        lines = [ln for ln in lines if ln and not ln.startswith("#")]
        if not lines:
            raise argparse.ArgumentTypeError(f"no graph in {text[1:]}")
        text = lines[0]
    try:
        return decode(text)
    except UsageError as exc:
        raise argparse.ArgumentTypeError(f"malformed graph6: {exc}")


def _set_arg(text: str) -> int:
    mask = 0
    for part in text.split(","):
        part = part.strip()
        if not part:
            continue
        if not part.isdigit() or int(part) >= 64:
            raise argparse.ArgumentTypeError(f"malformed vertex set {text!r}")
        mask |= 1 << int(part)
    return mask


def _random_arg(text: str) -> Random:
    parts = text.split(",")
    if len(parts) != 3:
        raise argparse.ArgumentTypeError("expected N,P,COUNT")
    try:
        if "-" in parts[0]:
            lo, hi = (int(x) for x in parts[0].split("-"))
        else:
            lo = hi = int(parts[0])
        p = None if parts[1] == "mixed" else float(parts[1])
        count = int(parts[2])
    except ValueError:
        raise argparse.ArgumentTypeError(f"malformed random spec {text!r}")
    return Random(hi, p, count, n_min=lo if lo != hi else None)


def _exhaustive_arg(text: str) -> Exhaustive:
    try:
        if "-" in text:
            lo, hi = (int(x) for x in text.split("-"))
            return Exhaustive(hi, n_min=lo)
        return Exhaustive(int(text))
    except ValueError:
        raise argparse.ArgumentTypeError(f"malformed exhaustive spec {text!r}")


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="vmlink", description="Cut-rank connectivity and vertex-minor linking tools.")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    def graph_cmd(name: str, help_text: str, *sets: str) -> argparse.ArgumentParser:
        p = sub.add_parser(name, help=help_text)
        p.add_argument("-g", "--graph", type=_graph_arg, help="graph6 string or @file (required)")
        for flag in sets:
            p.add_argument(f"-{flag}", type=_set_arg, default=0, metavar="IDS")
        p.add_argument("--out", help="where to write a theorem-violation report")
        return p

    p = graph_cmd("cutrank", "cut-rank of a vertex set")
    p.add_argument("-x", "--set", dest="x", type=_set_arg, default=0, metavar="IDS")
    graph_cmd("kappa", "connectivity between two vertex sets", "s", "t")
    p = graph_cmd("options", "reductions at a vertex that keep connectivity", "q", "r", "s", "t")
    p.add_argument("-v", "--vertex", type=int, required=True)
    p = graph_cmd("flexible", "whether a vertex is flexible for (s, t)", "s", "t")
    p.add_argument("-v", "--vertex", type=int, required=True)
    p = graph_cmd("chain", "nested separating sets over non-flexible vertices", "s", "t")
    p.add_argument("-f", "--free", dest="f", type=_set_arg, default=None, metavar="IDS",
                   help="vertices to order (default: every non-flexible free vertex)")
    p = graph_cmd("reduce", "remove free vertices keeping both connectivities", "q", "r", "s", "t")
    p.add_argument("--drop", type=_set_arg, required=True, metavar="IDS")
    graph_cmd("find-vertex", "find a doubly-good free vertex", "q", "r", "s", "t")

    p = sub.add_parser("sweep", help="run a verification sweep")
    p.add_argument("--property", required=True)
    src = p.add_mutually_exclusive_group(required=True)
    src.add_argument("--exhaustive", type=_exhaustive_arg, metavar="N|LO-HI")
    src.add_argument("--random", type=_random_arg, metavar="N,P,COUNT")
    src.add_argument("--file", metavar="PATH", help="graph6 file, one graph per line")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--cap", type=int, default=-1, help="instances per graph (-1: property default, 0: no cap)")
    p.add_argument("--out", help="report path")

    p = sub.add_parser("tightness", help="search below the free-vertex bound for failures")
    p.add_argument("-k", type=int, required=True)
    p.add_argument("-l", type=int, required=True)
    p.add_argument("--budget", type=int, default=200)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--out", help="report path")
    return parser


def _check_disjoint(args: argparse.Namespace, a: str, b: str) -> None:
    x, y = getattr(args, a, 0), getattr(args, b, 0)
    if x & y:
        raise UsageError(f"-{a} and -{b} overlap")


def parse_args(argv: list[str]) -> Command:
    args = build_parser().parse_args(argv)
    if args.command in ("kappa", "flexible", "chain", "options", "reduce", "find-vertex"):
        _check_disjoint(args, "s", "t")
    if args.command in ("options", "reduce", "find-vertex"):
        _check_disjoint(args, "q", "r")
    g = getattr(args, "graph", None)
    if args.command not in ("sweep", "tightness") and g is None:
        raise UsageError("-g/--graph is required")
    if g is not None:
        for name in ("x", "q", "r", "s", "t", "f", "drop"):
            m = getattr(args, name, None)
            if m and m & ~g.vertices:
                raise UsageError(f"-{name if len(name) == 1 else '-' + name} names vertices outside the graph")
        v = getattr(args, "vertex", None)
        if v is not None and v not in g:
            raise UsageError(f"--vertex {v} is not in the graph")
    if args.command == "sweep" and args.cap == 0:
        args.cap = None
    return Command(args.command, args)


def _emit(out: TextIO, obj: dict[str, Any]) -> None:
    out.write(json.dumps(obj, sort_keys=True, ensure_ascii=False) + "\n")


def _violation_exit(report: dict[str, Any], path: str | None, err: TextIO) -> int:
    path = path or DEFAULT_VIOLATION_PATH
    Path(path).write_text(json.dumps(report, sort_keys=True, ensure_ascii=False) + "\n", encoding="utf-8")
    err.write(f"theorem violation; report written to {path}\n")
    return 2


def execute(cmd: Command, out: TextIO | None = None, err: TextIO | None = None) -> int:
    out = out or sys.stdout
    err = err or sys.stderr
    a = cmd.args
    try:
        return _dispatch(cmd.name, a, out, err)
    except TheoremViolation as exc:
        return _violation_exit(exc.report, getattr(a, "out", None), err)


def _dispatch(name: str, a: argparse.Namespace, out: TextIO, err: TextIO) -> int:
    if name == "cutrank":
        _emit(out, {"command": name, "x": set_record(a.x), "cut_rank": cut_rank(a.graph, a.x)})
    elif name == "kappa":
        res = kappa(a.graph, a.s, a.t)
        _emit(out, {"command": name, "s": set_record(a.s), "t": set_record(a.t),
                    "kappa": res.value, "witness": set_record(res.witness)})
    elif name == "options":
        if a.vertex in iter_bits(a.q | a.r | a.s | a.t):
            raise UsageError(f"--vertex {a.vertex} is a terminal")
        if a.s or a.t:
            opts = joint_good_options(LinkingInstance(a.graph, a.q, a.r, a.s, a.t), a.vertex)
        else:
            opts = oum_linking_options(a.graph, a.q, a.r, a.vertex)
        _emit(out, {"command": name, "vertex": a.vertex, "options": option_names(opts)})
    elif name == "flexible":
        _emit(out, {"command": name, "vertex": a.vertex,
                    "flexible": is_flexible(a.graph, a.s, a.t, a.vertex)})
    elif name == "chain":
        g = a.graph
        f = a.f
        if f is None:
            f = 0
            for v in iter_bits(g.vertices & ~(a.s | a.t)):
                if not is_flexible(g, a.s, a.t, v):
                    f |= 1 << v
        chain = separating_chain(g, a.s, a.t, f)
        _emit(out, {"command": name, "order": list(chain.order),
                    "sets": [set_record(x) for x in chain.sets], "kappa": kappa(g, a.s, a.t).value})
    elif name == "reduce":
        inst = LinkingInstance(a.graph, a.q, a.r, a.s, a.t)
        h = reduce_preserving(inst, a.drop)
        _emit(out, {"command": name, "graph6": encode(h), "vertices": set_record(h.vertices),
                    "kappa_qr": kappa(h, a.q, a.r).value, "kappa_st": kappa(h, a.s, a.t).value})
    elif name == "find-vertex":
        inst = LinkingInstance(a.graph, a.q, a.r, a.s, a.t)
        found = find_doubly_good_vertex(inst)
        _emit(out, {"command": name, "k": inst.k, "l": inst.l, "free": set_record(inst.free),
                    "bound": main_bound(inst.k, inst.l),
                    "vertex": None if found is None else found[0],
                    "options": [] if found is None else option_names(found[1])})
    elif name == "sweep":
        gen = a.exhaustive or a.random or FromFile(a.file)
        report = run_sweep(SweepSpec(gen, a.property, seed=a.seed, cap=a.cap))
        out.write(report.to_text())
        if a.out:
            report.write(a.out)
        if not report.passed:
            path = a.out or f"sweep-{a.property}-{a.seed}.jsonl"
            if not a.out:
                report.write(path)
            err.write(f"{len(report.violations)} violations; report written to {path}\n")
            return 2
    elif name == "tightness":
        rep = tightness_search(a.k, a.l, a.budget, a.seed)
        text = rep.to_text()
        out.write(text)
        if a.out:
            Path(a.out).write_text(text, encoding="utf-8")
        if rep.violations:
            return _violation_exit(rep.violations[0], a.out and a.out + ".violation.json", err)
    return 0


def main(argv: list[str] | None = None) -> int:
    argv = sys.argv[1:] if argv is None else argv
    try:
        cmd = parse_args(argv)
        return execute(cmd)
    except UsageError as exc:
        sys.stderr.write(f"vmlink: error: {exc}\n")
        return 1


if __name__ == "__main__":
    sys.exit(main())
