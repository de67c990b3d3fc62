"""Verification support: seeded instance generator, brute-force oracle, certificate checker.

Nothing here depends on the packing code, so the oracle and the verifier stay
independent of what they check.
"""
from __future__ import annotations

from collections import deque
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Sequence

from .errors import CapExceeded, Infeasible, InvariantViolation
from .euler import is_inner_eulerian
from .graft import Graft, build_graft
from .menger import Path, PathSystem, lambda_, path_from_edges, reach_avoiding

DEFAULT_CAP = 50_000

MASK64 = (1 << 64) - 1


def splitmix64(x: int) -> int:
    z = (x + 0x9E3779B97F4A7C15) & MASK64
    z = ((z ^ (z >> 30)) * 0xBF58476D1CE4E5B9) & MASK64
    z = ((z ^ (z >> 27)) * 0x94D049BB133111EB) & MASK64
    return z ^ (z >> 31)


class XorShift64Star:
    """xorshift64* (shifts 12, 25, 27; multiplier 0x2545F4914F6CDD1D).

    The state is seeded with ``splitmix64(seed mod 2**64)``, replaced by the
    golden-ratio constant if that is zero. ``below(n)`` is ``next() % n``.
    Written out by hand so other implementations can reproduce instances
    bit for bit.
    """

    def __init__(self, seed: int):
        self.state = splitmix64(seed & MASK64) or 0x9E3779B97F4A7C15

    def next(self) -> int:
        x = self.state
        x ^= x >> 12
        x ^= (x << 25) & MASK64
        x ^= x >> 27
        self.state = x
        return (x * 0x2545F4914F6CDD1D) & MASK64

    def below(self, n: int) -> int:
        return self.next() % n

    def randint(self, lo: int, hi: int) -> int:
        return lo + self.below(hi - lo + 1)

    def shuffle(self, items: list) -> None:
        for i in range(len(items) - 1, 0, -1):
            j = self.below(i + 1)
            items[i], items[j] = items[j], items[i]

    def sample(self, items: Sequence, k: int) -> list:
        pool = list(items)
        for i in range(k):
            j = i + self.below(len(pool) - i)
            pool[i], pool[j] = pool[j], pool[i]
        return pool[:k]


@dataclass(frozen=True)
class GenParams:
    seed: int
    vertex_count: int
    terminal_count: int
    cycle_count: int
    tpath_count: int
    max_piece_length: int = 4


def generate_inner_eulerian(p: GenParams) -> Graft:
    """Edge-disjoint union of random simple cycles and random T-paths.

    Terminals are vertices ``0..terminal_count-1``. Cycles may pass through
    terminals; T-paths run between two distinct terminals over distinct inner
    vertices. Edge order and orientation are shuffled at the end.
    """
    n, k = p.vertex_count, p.terminal_count
    if min(n, k, p.cycle_count, p.tpath_count, p.max_piece_length) < 0:
        raise Infeasible("all counts must be non-negative")
    if k < 2:
        raise Infeasible("at least 2 terminals are required")
    if k > n:
        raise Infeasible("more terminals than vertices")
    if p.cycle_count and p.max_piece_length < 2:
        raise Infeasible("cycles need max_piece_length >= 2")
    if p.tpath_count and p.max_piece_length < 1:
        raise Infeasible("T-paths need max_piece_length >= 1")
    rng = XorShift64Star(p.seed)
    terminals = list(range(k))
    inner = list(range(k, n))
    raw: list[tuple[int, int]] = []
    for _ in range(p.cycle_count):
        length = rng.randint(2, min(p.max_piece_length, n))
        vs = rng.sample(range(n), length)
        raw.extend((vs[i], vs[(i + 1) % length]) for i in range(length))
    for _ in range(p.tpath_count):
        a, b = rng.sample(terminals, 2)
        mids = rng.sample(inner, rng.randint(0, min(p.max_piece_length - 1, len(inner))))
        chain = [a, *mids, b]
        raw.extend(zip(chain, chain[1:]))
    rng.shuffle(raw)
    edges = [(v, u) if rng.below(2) else (u, v) for u, v in raw]
    G = build_graft(n, terminals, edges)
    if not is_inner_eulerian(G):  # pragma: no cover - guaranteed by construction
        raise InvariantViolation("generator produced an odd inner vertex")
    return G


def enumerate_tpaths(G: Graft, cap: int = DEFAULT_CAP) -> list[Path]:
    """Every T-path of ``G`` once, oriented from its smaller terminal."""
    T = G.terminals
    out: list[Path] = []
    for t in sorted(T):
        verts, edges = [t], []
        on = {t}
        stack = [iter(G.adjacency[t])]
        while stack:
            e = next(stack[-1], None)
            if e is None:
                stack.pop()
                if edges:
                    edges.pop()
                    on.discard(verts.pop())
                continue
            v = G.other(e, verts[-1])
            if v in on:
                continue
            if v in T:
                if v > t:
                    out.append(Path(tuple(edges) + (e,), tuple(verts) + (v,)))
                    if len(out) > cap:
                        raise CapExceeded(f"more than {cap} T-paths")
                continue
            verts.append(v)
            edges.append(e)
            on.add(v)
            stack.append(iter(G.adjacency[v]))
    return out


def brute_force_max_packing(G: Graft, cap: int = DEFAULT_CAP) -> tuple[int, PathSystem]:
    """Maximum number of edge-disjoint T-paths by exhaustive branch and bound.

    Branches on the lowest open terminal edge: some path uses it, or none does.
    The bound counts terminal incidences still available, two per path.
    """
    T = G.terminals
    paths = enumerate_tpaths(G, cap)
    bit = {e: 1 << i for i, e in enumerate(G.edge_ids)}
    masks = [sum(bit[e] for e in p.edges) for p in paths]
    term_edges = G.terminal_edges()
    weight = {e: sum(1 for v in G.edges[e] if v in T) for e in term_edges}
    by_edge: dict[int, list[int]] = {e: [] for e in term_edges}
    for i, p in enumerate(paths):
        for e in {p.edges[0], p.edges[-1]}:
            by_edge[e].append(i)

    best: list = [0, []]

    def rec(pos: int, blocked: int, chosen: list[int], avail: int):
        if len(chosen) + avail // 2 <= best[0]:
            return
        while pos < len(term_edges) and blocked & bit[term_edges[pos]]:
            pos += 1
        if pos == len(term_edges):
            best[0], best[1] = len(chosen), list(chosen)
            return
        e = term_edges[pos]
        for i in by_edge[e]:
            m = masks[i]
            if m & blocked:
                continue
            p = paths[i]
            gone = sum(weight[f] for f in {p.edges[0], p.edges[-1]})
            chosen.append(i)
            rec(pos + 1, blocked | m, chosen, avail - gone)
            chosen.pop()
        rec(pos + 1, blocked | bit[e], chosen, avail - weight[e])

    rec(0, 0, [], sum(weight.values()))
    system = PathSystem(tuple(paths[i] for i in best[1]), T, T)
    return best[0], system


def minimax_value(G: Graft) -> Fraction:
    """Half the sum over terminals of ``lambda(t, T - t)``."""
    total = sum(lambda_(G, {t}, G.terminals - {t}) for t in sorted(G.terminals))
    value = Fraction(total, 2)
    if value.denominator != 1 and is_inner_eulerian(G):
        raise InvariantViolation("odd terminal-connectivity sum in an inner-Eulerian graft")
    return value


# -- certificate verification -------------------------------------------------

NOT_TPATH = "NotTPath"
NOT_DISJOINT = "NotDisjoint"
CUT_NOT_SEPARATING = "CutNotSeparating"
CUT_NOT_ORTHOGONAL = "CutNotOrthogonal"
EXTRA_CUT_EDGE = "ExtraCutEdge"
COVERAGE_GAP = "CoverageGap"


@dataclass
class VerifyReport:
    violations: list[tuple[str, str]] = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return not self.violations

    def add(self, kind: str, detail: str) -> None:
        self.violations.append((kind, detail))

    def kinds(self) -> set[str]:
        return {k for k, _ in self.violations}


def _check_paths(G: Graft, paths, report: VerifyReport) -> list[Path]:
    T = G.terminals
    good = []
    owner: dict[int, int] = {}
    for i, p in enumerate(paths):
        try:
            q = path_from_edges(G, p.vertices[0], p.edges)
        except Exception as exc:  # any malformed path is a NotTPath finding
            report.add(NOT_TPATH, f"path {i} {list(p.edges)}: {exc}")
            continue
        if (q.start not in T or q.end not in T or q.start == q.end
                or set(q.vertices[1:-1]) & T):
            report.add(NOT_TPATH, f"path {i} {list(p.edges)} is not a T-path")
            continue
        for e in q.edges:
            if e in owner:
                report.add(NOT_DISJOINT, f"edge {e} used by paths {owner[e]} and {i}")
            else:
                owner[e] = i
        good.append(q)
    return good


def _is_boundary(G: Graft, t: int, C: frozenset[int]) -> bool:
    """Whether ``C = delta(X)`` for some ``X`` holding ``t`` and no other terminal."""
    comp: dict[int, int] = {}
    for v in sorted(G.vertices):
        if v in comp:
            continue
        for w in reach_avoiding(G, {v}, C):
            comp[w] = v
    side = {comp[t]: 1}
    for u in G.terminals - {t}:
        if side.get(comp[u], 0) == 1:
            return False
        side[comp[u]] = 0
    links: dict[int, set[int]] = {}
    for e in C:
        a, b = (comp[x] for x in G.edges[e])
        if a == b:
            return False
        links.setdefault(a, set()).add(b)
        links.setdefault(b, set()).add(a)
    queue = deque(side)
    while queue:
        c = queue.popleft()
        for d in links.get(c, ()):
            if d not in side:
                side[d] = 1 - side[c]
                queue.append(d)
            elif side[d] == side[c]:
                return False
    return True


def verify_paths(G: Graft, paths, perfect: bool = False) -> VerifyReport:
    """Check edge-disjoint T-paths; with ``perfect`` also that every terminal edge is used."""
    report = VerifyReport()
    src = paths.paths if isinstance(paths, PathSystem) else tuple(paths)
    good = _check_paths(G, src, report)
    if perfect:
        used = {e for p in good for e in p.edges}
        for e in G.terminal_edges():
            if e not in used:
                report.add(COVERAGE_GAP, f"terminal edge {e} is not covered")
    return report


def verify_certificate(G: Graft, c) -> VerifyReport:
    """Check a packing and its per-terminal cuts; every violation found is reported."""
    report = VerifyReport()
    good = _check_paths(G, c.paths.paths, report)
    T = G.terminals
    for t in sorted(T):
        if t not in c.cuts:
            report.add(COVERAGE_GAP, f"no cut given for terminal {t}")
            continue
        cut = c.cuts[t]
        C = frozenset(cut.edges if hasattr(cut, "edges") else cut)
        unknown = C - G.edges.keys()
        if unknown:
            report.add(EXTRA_CUT_EDGE, f"cut of {t} has unknown edges {sorted(unknown)}")
            C = C - unknown
        leak = reach_avoiding(G, {t}, C) & (T - {t})
        if leak:
            report.add(CUT_NOT_SEPARATING, f"cut of {t} leaves a path to terminals {sorted(leak)}")
        elif not _is_boundary(G, t, C):
            report.add(EXTRA_CUT_EDGE, f"cut of {t} is not the boundary of a vertex set")
        on_t = set()
        for p in good:
            if t not in (p.start, p.end):
                continue
            hits = C & set(p.edges)
            on_t |= hits
            if len(hits) != 1:
                report.add(CUT_NOT_ORTHOGONAL,
                           f"cut of {t} meets path {list(p.edges)} in {len(hits)} edges")
        extra = C - on_t
        if extra:
            report.add(EXTRA_CUT_EDGE, f"cut of {t} has edges {sorted(extra)} off its paths")
    return report
