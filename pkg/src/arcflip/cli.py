"""Command-line front end: ``arcflip <command> ...``.

Diagram arguments are PD files, ``-`` for stdin, or a built-in source:
``@trefoil``, ``@fig8``, ``@hopf``, ``@kink``, ``@chain3``, ``@fig8:<bits>``
or ``@random:<components>:<max crossings>`` (seeded by ``--seed``).

Exit codes: 0 success or true, 1 false or negative verdict, 2 input error,
3 limit exceeded.
"""
from __future__ import annotations

import argparse
import sys
from pathlib import Path
from typing import Sequence, TextIO

import numpy as np

from . import fixtures
from .census import census
from .diagram import (
    DiagramError,
    LinkDiagram,
    checkerboard_and_label,
    linking_data,
    parse_diagram,
    serialize,
)
from .moves import MoveError, MoveLog, enumerate_arcs, replay
from .search import LimitExceeded, limit_from_env
from .stategraph import (
    TrailFinder,
    build_state_graph,
    compile_trail,
    components_of,
    degree_check,
    is_admissible,
    survey,
)
from .unknotting import Verdict, certify, predicted_verdict, unknot

EXIT_OK, EXIT_FALSE, EXIT_INPUT, EXIT_LIMIT = 0, 1, 2, 3

_NAMED = {
    "trefoil": fixtures.trefoil,
    "fig8": fixtures.fig8,
    "hopf": fixtures.hopf,
    "kink": fixtures.kink,
    "chain3": fixtures.chain3,
    "trefoil-fig8": fixtures.trefoil_fig8_link,
    "8_19": fixtures.torus_8_19,
    "8_20": fixtures.knot_8_20,
    "8_21": fixtures.knot_8_21,
}


class _Out:
    """Key/value records in ``lines`` (``key: value``) or ``tsv`` form."""

    def __init__(self, fmt: str, stream: TextIO):
        self.fmt = fmt
        self.stream = stream

    def kv(self, key: str, value) -> None:
        if isinstance(value, bool):
            value = "yes" if value else "no"
        sep = "\t" if self.fmt == "tsv" else ": "
        self.stream.write(f"{key}{sep}{value}\n")

    def row(self, *cells) -> None:
        sep = "\t" if self.fmt == "tsv" else " "
        self.stream.write(sep.join(str(c) for c in cells) + "\n")

    def log(self, log: MoveLog) -> None:
        for e in log:
            self.kv("move", e)


def load_diagram(src: str, seed: int = 0) -> LinkDiagram:
    if src.startswith("@"):
        name, _, rest = src[1:].partition(":")
        if name == "fig8" and rest:
            return fixtures.fig8_label(rest)
        if name == "random":
            try:
                k, n = (int(t) for t in rest.split(":"))
            except ValueError:
                raise DiagramError("random source is @random:<components>:<max crossings>") from None
            return fixtures.random_link(np.random.default_rng(seed), k, max_crossings=n)
        if name not in _NAMED:
            raise DiagramError(f"unknown built-in diagram {src!r}")
        return _NAMED[name]()
    if src == "-":
        return parse_diagram(sys.stdin.read())
    try:
        text = Path(src).read_text()
    except OSError as exc:
        raise DiagramError(f"cannot read {src}: {exc.strerror}") from None
    return parse_diagram(text)


def _ids(text: str) -> list[int]:
    try:
        return [int(t) for t in text.replace(" ", "").split(",") if t]
    except ValueError:
        raise DiagramError(f"expected comma-separated crossing ids, got {text!r}") from None


def _diagram(args) -> LinkDiagram:
    src = args.input if args.input is not None else args.file
    if src is None:
        raise DiagramError("no diagram given (positional FILE or --in)")
    return load_diagram(src, args.seed)


def _write(path: str | None, text: str) -> None:
    if path:
        Path(path).write_text(text)


# --------------------------------------------------------------------------
# commands


def cmd_parse(args, out: _Out) -> int:
    L = _diagram(args)
    out.stream.write(serialize(L))
    return EXIT_OK


def cmd_info(args, out: _Out) -> int:
    L = _diagram(args)
    out.kv("n", L.n)
    out.kv("components", L.num_components)
    out.kv("alternating", L.is_alternating())
    out.kv("arcs", len(enumerate_arcs(L)))
    out.kv("digest", L.digest)
    if L.num_components == 1:
        out.kv("label", checkerboard_and_label(L))
    else:
        ld = linking_data(L)
        out.kv("total_linking", ld.total)
        for i in range(L.num_components):
            for j in range(i + 1, L.num_components):
                out.kv(f"lk_{i + 1}_{j + 1}", ld.lk[i][j])
    selfx = [j + 1 for j in range(L.num_components) if L.has_self_crossings(j)]
    out.kv("self_crossing_components", ",".join(map(str, selfx)) or "-")
    return EXIT_OK


def cmd_move(args, out: _Out) -> int:
    L = _diagram(args)
    if args.list:
        for arc in enumerate_arcs(L):
            if arc.closed:
                continue
            out.row(f"c{arc.start}.2", f"c{arc.end}", "over=" + (",".join(f"c{v}" for v in arc.overs) or "-"))
        return EXIT_OK
    log = MoveLog.from_text("\n".join(args.moves))
    bare = list(log.moves)
    log = MoveLog()
    for m in bare:
        L = log.record(L, m)
    out.log(log)
    out.kv("digest", L.digest)
    _write(args.out, serialize(L))
    _write(args.log, log.to_text())
    return EXIT_OK


def cmd_unknot(args, out: _Out) -> int:
    L = _diagram(args)
    res = unknot(L, args.variant)
    ok, why = certify(res.final, res.verdict)
    out.kv("verdict", res.verdict)
    out.kv("moves", len(res.log))
    if res.verdict is Verdict.UNKNOTS_PLUS_HOPF and res.certificate.hopf_pair:
        p, q = res.certificate.hopf_pair
        out.kv("hopf_pair", f"{p + 1},{q + 1}")
    out.kv("order", ",".join(str(j + 1) for j in res.certificate.order))
    if args.variant == 2:
        out.kv("predicted", predicted_verdict(L))
    out.kv("certified", ok)
    if not ok:
        out.kv("reason", why)
    out.log(res.log)
    _write(args.log, res.log.to_text())
    _write(args.out, serialize(res.final))
    if args.certify and not ok:
        return EXIT_FALSE
    return EXIT_OK


def cmd_admissible(args, out: _Out) -> int:
    L = _diagram(args)
    S = _ids(args.set)
    for cid in S:
        L.index(cid)
    ok, log = is_admissible(L, S, args.variant)
    out.kv("admissible", ok)
    if log is not None:
        out.kv("moves", len(log))
        out.log(log)
        _write(args.log, log.to_text())
    return EXIT_OK if ok else EXIT_FALSE


def cmd_trail(args, out: _Out) -> int:
    L = _diagram(args)
    T = TrailFinder(L).find(args.x, args.y, generic=not args.directed_only)
    if T is None:
        out.kv("trail", "none")
        return EXIT_FALSE
    log = compile_trail(L, T)
    out.kv("trail", T)
    out.kv("turns", ",".join(T.turns()) or "-")
    out.kv("through_ends", T.passes_ends())
    out.kv("moves", len(log))
    out.log(log)
    _write(args.log, log.to_text())
    return EXIT_OK


def cmd_stategraph(args, out: _Out) -> int:
    L = _diagram(args)
    A = build_state_graph(L)
    rep = degree_check(A)
    comps = components_of(A)
    out.kv("vertices", len(A.vertices))
    out.kv("edges", len(A.edges))
    out.kv("components", len(comps))
    out.kv("degree_formula", rep.ok)
    if not rep.ok:
        out.kv("degree_violations", len(rep.violations))
    _write(args.dot, A.to_dot())
    return EXIT_OK


def cmd_verify(args, out: _Out) -> int:
    L = _diagram(args)
    try:
        text = Path(args.log).read_text()
    except OSError as exc:
        raise DiagramError(f"cannot read {args.log}: {exc.strerror}") from None
    log = MoveLog.from_text(text)
    try:
        final = replay(L, log, check_hashes=not args.no_hashes)
    except MoveError as exc:
        out.kv("replay", "failed")
        out.kv("reason", exc)
        return EXIT_FALSE
    out.kv("replay", "ok")
    out.kv("moves", len(log))
    out.kv("digest", final.digest)
    if args.verdict:
        ok, why = certify(final, args.verdict)
        out.kv("certified", ok)
        if not ok:
            out.kv("reason", why)
            return EXIT_FALSE
    return EXIT_OK


def cmd_survey(args, out: _Out) -> int:
    if args.files:
        diagrams = [load_diagram(f, args.seed) for f in args.files]
    else:
        diagrams = census(args.max_n, args.min_n)
    labels = "given" if args.files and not args.all_labels else "all"
    rows = survey(diagrams, labels, through_ends=args.through_ends)
    out.row("shadow", "n", "label", "pairs", "admissible", "with_trail", "admissible_no_trail", "trail_not_admissible")
    for r in rows:
        out.row(r.shadow + 1, r.n, r.label, r.pairs, r.admissible, r.with_trail, r.admissible_without_trail, r.trail_not_admissible)
    return EXIT_OK


# --------------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--format", choices=["lines", "tsv"], default="lines")
    common.add_argument("--seed", type=int, default=0, help="seed for @random sources")

    def with_input(p: argparse.ArgumentParser) -> argparse.ArgumentParser:
        p.add_argument("file", nargs="?", help="PD file, '-' or @name")
        p.add_argument("--in", dest="input", help="PD file (alternative to FILE)")
        return p

    ap = argparse.ArgumentParser(prog="arcflip", description="Arc crossing changes on knot and link diagrams.")
    sub = ap.add_subparsers(dest="command", required=True)

    with_input(sub.add_parser("parse", parents=[common], help="validate and re-serialize a diagram"))
    with_input(sub.add_parser("info", parents=[common], help="basic invariants of a diagram"))

    p = with_input(sub.add_parser("move", parents=[common], help="apply moves and print the log"))
    p.add_argument("--apply", dest="moves", action="append", default=[], metavar="MOVE", help="e.g. 'ACC1 c3.2'")
    p.add_argument("--list", action="store_true", help="list arcs as move selectors")
    p.add_argument("--out", help="write the resulting diagram here")
    p.add_argument("--log", help="write the move log here")

    p = with_input(sub.add_parser("unknot", parents=[common], help="synthesize an unknotting sequence"))
    p.add_argument("--variant", type=int, choices=[1, 2], default=1)
    p.add_argument("--log", help="write the move log here")
    p.add_argument("--out", help="write the final diagram here")
    p.add_argument("--certify", action="store_true", help="exit 1 if the outcome fails certification")

    p = with_input(sub.add_parser("admissible", parents=[common], help="can exactly these crossings be switched"))
    p.add_argument("--set", required=True, help="comma-separated crossing ids")
    p.add_argument("--variant", type=int, choices=[1, 2], default=1)
    p.add_argument("--log", help="write the witness log here")

    p = with_input(sub.add_parser("trail", parents=[common], help="admissible trail between two crossings"))
    p.add_argument("--x", type=int, required=True)
    p.add_argument("--y", type=int, required=True)
    p.add_argument("--directed-only", action="store_true", help="only the two-in two-out construction")
    p.add_argument("--log", help="write the compiled log here")

    p = with_input(sub.add_parser("stategraph", parents=[common], help="build the state graph of a knot shadow"))
    p.add_argument("--dot", help="write the graph in DOT format here")

    p = with_input(sub.add_parser("verify", parents=[common], help="replay a log and optionally certify"))
    p.add_argument("--log", required=True)
    p.add_argument("--verdict", choices=[v.value for v in Verdict])
    p.add_argument("--no-hashes", action="store_true", help="skip digest checks")

    p = sub.add_parser("survey", parents=[common], help="admissible pairs with and without trails")
    p.add_argument("files", nargs="*", help="diagrams to survey (default: census shadows)")
    p.add_argument("--min-n", type=int, default=1)
    p.add_argument("--max-n", type=int, default=5)
    p.add_argument("--all-labels", action="store_true", help="survey every label of the given shadows")
    p.add_argument("--through-ends", action="store_true", help="let trails cross their end crossings")
    return ap


_COMMANDS = {
    "parse": cmd_parse,
    "info": cmd_info,
    "move": cmd_move,
    "unknot": cmd_unknot,
    "admissible": cmd_admissible,
    "trail": cmd_trail,
    "stategraph": cmd_stategraph,
    "verify": cmd_verify,
    "survey": cmd_survey,
}


def run(argv: Sequence[str] | None = None, stdout: TextIO | None = None, stderr: TextIO | None = None) -> int:
    stdout = stdout or sys.stdout
    stderr = stderr or sys.stderr
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_INPUT if exc.code else EXIT_OK
    out = _Out(args.format, stdout)
    try:
        limit_from_env()
        return _COMMANDS[args.command](args, out)
    except LimitExceeded as exc:
        stderr.write(f"arcflip: limit exceeded: {exc}\n")
        return EXIT_LIMIT
    except DiagramError as exc:
        stderr.write(f"arcflip: {exc}\n")
        return EXIT_INPUT


def main() -> None:
    sys.exit(run())
