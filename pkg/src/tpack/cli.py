"""Command line interface and the plain-text graft / solution formats.

Graft file::

    # comment
    t a b c
    e a v
    e v b

Vertex names are interned in order of first appearance; edge ids count ``e``
lines from 0. Solution file::

    path a b : 0 1
    cut a : 0

Exit status: 0 success, 1 a mathematical failure (odd inner vertex, unlinked
terminal, failed verification), 2 I/O, usage or parse errors.
"""
from __future__ import annotations

import argparse
import sys
from dataclasses import dataclass

from .errors import CapExceeded, GraftError, Infeasible, LinkabilityFails, NotInnerEulerian
from .euler import odd_vertex
from .graft import Graft
from .linkage import is_linked
from .menger import Cut, PathSystem, path_from_edges
from .packing import Certificate, lovcher_certificate, perfect_linkage
from .toolkit import (
    DEFAULT_CAP,
    NOT_TPATH,
    GenParams,
    VerifyReport,
    brute_force_max_packing,
    generate_inner_eulerian,
    minimax_value,
    verify_certificate,
    verify_paths,
)


class ParseError(Exception):
    def __init__(self, lineno: int, message: str):
        self.lineno = lineno
        super().__init__(f"line {lineno}: {message}")


@dataclass
class NamedGraft:
    graft: Graft
    names: list[str]

    def index(self) -> dict[str, int]:
        return {n: i for i, n in enumerate(self.names)}


def parse_graft(text: str) -> NamedGraft:
    ids: dict[str, int] = {}
    terminals: list[int] = []
    edges: dict[int, tuple[int, int]] = {}

    def intern(name: str) -> int:
        if name not in ids:
            ids[name] = len(ids)
        return ids[name]

    for lineno, line in enumerate(text.splitlines(), 1):
        tokens = line.split()
        if not tokens or tokens[0].startswith("#"):
            continue
        kind, args = tokens[0], tokens[1:]
        if kind == "t":
            if not args:
                raise ParseError(lineno, "terminal line names no vertices")
            for name in args:
                if name in ids and ids[name] in terminals:
                    raise ParseError(lineno, f"terminal {name!r} declared twice")
                terminals.append(intern(name))
        elif kind == "e":
            if len(args) != 2:
                raise ParseError(lineno, "edge line needs exactly two vertex names")
            if not terminals:
                raise ParseError(lineno, "edge before any terminal declaration")
            if args[0] == args[1]:
                raise ParseError(lineno, f"loop at {args[0]!r}")
            edges[len(edges)] = (intern(args[0]), intern(args[1]))
        else:
            raise ParseError(lineno, f"unknown directive {kind!r}")
    if len(terminals) < 2:
        raise ParseError(len(text.splitlines()), f"need at least 2 terminals, found {len(terminals)}")
    names = sorted(ids, key=ids.get)
    G = Graft(frozenset(range(len(names))), frozenset(terminals), edges)
    return NamedGraft(G, names)


def format_graft(G: Graft, names: list[str] | None = None, header: str | None = None) -> str:
    if names is None:
        names = {v: f"v{v}" for v in G.vertices}
    lines = [f"# {header}"] if header else []
    lines.append("t " + " ".join(names[t] for t in sorted(G.terminals)))
    lines.extend(f"e {names[u]} {names[v]}" for e, (u, v) in sorted(G.edges.items()))
    return "\n".join(lines) + "\n"


def format_paths(paths: PathSystem, names) -> list[str]:
    return [f"path {names[p.start]} {names[p.end]} : " + " ".join(map(str, p.edges))
            for p in paths.paths]


def format_certificate(cert: Certificate, names) -> str:
    lines = format_paths(cert.paths, names)
    for t in sorted(cert.cuts):
        lines.append(f"cut {names[t]} : " + " ".join(map(str, sorted(cert.cuts[t].edges))))
    return "\n".join(lines) + "\n"


def _ints(tokens, lineno):
    try:
        return [int(x) for x in tokens]
    except ValueError:
        raise ParseError(lineno, "edge ids must be integers") from None


def verify_solution(ng: NamedGraft, text: str) -> VerifyReport:
    """Parse a solution file and verify it against ``ng``.

    With cut lines it is checked as a certificate, without them as a perfect
    linkage.
    """
    G, idx = ng.graft, ng.index()
    report = VerifyReport()
    paths, cuts = [], {}
    for lineno, line in enumerate(text.splitlines(), 1):
        tokens = line.split()
        if not tokens or tokens[0].startswith("#"):
            continue
        if ":" not in tokens:
            raise ParseError(lineno, "missing ':' separator")
        sep = tokens.index(":")
        head, ids = tokens[:sep], _ints(tokens[sep + 1:], lineno)
        for name in head[1:]:
            if name not in idx:
                raise ParseError(lineno, f"unknown vertex {name!r}")
        if head[0] == "path" and len(head) == 3:
            a, b = idx[head[1]], idx[head[2]]
            try:
                p = path_from_edges(G, a, ids)
            except GraftError as exc:
                report.add(NOT_TPATH, f"line {lineno}: {exc}")
                continue
            if p.end != b:
                report.add(NOT_TPATH, f"line {lineno}: path ends at {ng.names[p.end]}, not {head[2]}")
                continue
            paths.append(p)
        elif head[0] == "cut" and len(head) == 2:
            t = idx[head[1]]
            if t in cuts:
                raise ParseError(lineno, f"second cut for {head[1]!r}")
            cuts[t] = Cut(frozenset(ids), frozenset())
        else:
            raise ParseError(lineno, f"unrecognised line {line.strip()!r}")
    system = PathSystem(tuple(paths), G.terminals, G.terminals)
    if cuts:
        inner = verify_certificate(G, Certificate(system, cuts))
    else:
        inner = verify_paths(G, system, perfect=True)
    report.violations.extend(inner.violations)
    return report


def _load(path: str) -> NamedGraft:
    with open(path, encoding="utf-8") as fh:
        return parse_graft(fh.read())


def cmd_check(args, out) -> int:
    ng = _load(args.file)
    G, names = ng.graft, ng.names
    w = odd_vertex(G)
    out.write(f"inner_eulerian {'yes' if w is None else 'no'}\n")
    if w is not None:
        out.write(f"odd_vertex {names[w]}\n")
    ok = True
    for t in sorted(G.terminals):
        linked = is_linked(G, t)[0]
        ok &= linked
        out.write(f"linked {names[t]} {'yes' if linked else 'no'}\n")
    out.write(f"linkability {'yes' if ok else 'no'}\n")
    return 0


def cmd_minimax(args, out) -> int:
    out.write(f"{minimax_value(_load(args.file).graft)}\n")
    return 0


def cmd_pack(args, out) -> int:
    ng = _load(args.file)
    paths = perfect_linkage(ng.graft)
    out.write("".join(line + "\n" for line in format_paths(paths, ng.names)))
    return 0


def cmd_certify(args, out) -> int:
    ng = _load(args.file)
    out.write(format_certificate(lovcher_certificate(ng.graft), ng.names))
    return 0


def cmd_verify(args, out) -> int:
    ng = _load(args.graft)
    with open(args.solution, encoding="utf-8") as fh:
        report = verify_solution(ng, fh.read())
    if report.ok:
        out.write("ok\n")
        return 0
    for kind, detail in report.violations:
        out.write(f"violation {kind} {detail}\n")
    return 1


def cmd_oracle(args, out) -> int:
    ng = _load(args.file)
    count, system = brute_force_max_packing(ng.graft, args.cap)
    out.write(f"count {count}\n")
    out.write("".join(line + "\n" for line in format_paths(system, ng.names)))
    return 0


def cmd_gen(args, out) -> int:
    params = GenParams(args.seed, args.vertices, args.terminals, args.cycles, args.tpaths,
                       args.max_len)
    G = generate_inner_eulerian(params)
    text = format_graft(G, header=(
        f"gen seed={args.seed} vertices={args.vertices} terminals={args.terminals} "
        f"cycles={args.cycles} tpaths={args.tpaths} max_len={args.max_len}"))
    if args.output:
        with open(args.output, "w", encoding="utf-8") as fh:
            fh.write(text)
    else:
        out.write(text)
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="tpack", description="Edge-disjoint T-path packing with cut certificates.")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("check", help="report inner-Eulerian parity and per-terminal linkability")
    p.add_argument("file")
    p.set_defaults(func=cmd_check)

    p = sub.add_parser("minimax", help="half the sum of terminal-to-rest edge connectivities")
    p.add_argument("file")
    p.set_defaults(func=cmd_minimax)

    p = sub.add_parser("pack", help="perfect linkage (needs the linkability condition)")
    p.add_argument("file")
    p.set_defaults(func=cmd_pack)

    p = sub.add_parser("certify", help="packing plus one orthogonal cut per terminal")
    p.add_argument("file")
    p.set_defaults(func=cmd_certify)

    p = sub.add_parser("verify", help="check a solution file against a graft")
    p.add_argument("graft")
    p.add_argument("solution")
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("oracle", help="brute-force maximum packing")
    p.add_argument("file")
    p.add_argument("--cap", type=int, default=DEFAULT_CAP)
    p.set_defaults(func=cmd_oracle)

    p = sub.add_parser("gen", help="generate a seeded inner-Eulerian graft")
    p.add_argument("--seed", type=int, required=True)
    p.add_argument("--vertices", type=int, required=True)
    p.add_argument("--terminals", type=int, required=True)
    p.add_argument("--cycles", type=int, required=True)
    p.add_argument("--tpaths", type=int, required=True)
    p.add_argument("--max-len", type=int, default=4)
    p.add_argument("-o", "--output")
    p.set_defaults(func=cmd_gen)
    return parser


def main(argv=None, out=None, err=None) -> int:
    out = sys.stdout if out is None else out
    err = sys.stderr if err is None else err
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        return args.func(args, out)
    except (OSError, ParseError, Infeasible) as exc:
        err.write(f"error: {exc}\n")
        return 2
    except LinkabilityFails as exc:
        err.write(f"error: LinkabilityFails: {_named(exc.terminals, args)}\n")
        return 1
    except (NotInnerEulerian, CapExceeded, GraftError) as exc:
        err.write(f"error: {type(exc).__name__}: {_named_message(exc, args)}\n")
        return 1


def _named(terminals, args) -> str:
    try:
        names = _load(args.file).names
    except Exception:
        return ", ".join(map(str, terminals))
    return "terminal(s) " + ", ".join(names[t] for t in terminals) + " not linked"


def _named_message(exc, args) -> str:
    if isinstance(exc, NotInnerEulerian) and exc.vertex is not None:
        try:
            names = _load(args.file).names
            return f"non-terminal vertex {names[exc.vertex]} has odd degree"
        except Exception:
            pass
    return str(exc)


if __name__ == "__main__":
    sys.exit(main())
