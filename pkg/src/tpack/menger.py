"""Edge-disjoint path systems between vertex sets, and their minimum cuts.

Path systems are unit flows in disguise: a system of edge-disjoint AB-paths
is stored internally as a map ``edge -> tail vertex`` and every search runs on
the residual graph of that flow, with ``A`` and ``B`` acting as a virtual
super-source and super-sink. Incident edges are always scanned in ascending
edge id, so all outputs are reproducible.
"""
from __future__ import annotations

from collections import deque
from dataclasses import dataclass
from typing import Iterable, Iterator

from .errors import (
    NotAPath,
    NotAPathSystem,
    NotLinked,
    NotMinCut,
    PivotMissing,
    PreconditionEdgeAvoidable,
    PreconditionError,
    SidesOverlap,
    UnknownEdge,
    UnknownVertex,
)
from .graft import Graft, delete_edges, delta

Flow = dict[int, int]  # edge id -> tail vertex


@dataclass(frozen=True)
class Path:
    """A path as an edge sequence together with its vertex sequence."""

    edges: tuple[int, ...]
    vertices: tuple[int, ...]

    def __post_init__(self):
        if not self.edges or len(self.vertices) != len(self.edges) + 1:
            raise NotAPath("a path needs at least one edge and one more vertex than edges")
        if len(set(self.vertices)) != len(self.vertices):
            raise NotAPath(f"vertex repeated along {self.vertices}")

    @property
    def endpoints(self) -> tuple[int, int]:
        return self.vertices[0], self.vertices[-1]

    @property
    def start(self) -> int:
        return self.vertices[0]

    @property
    def end(self) -> int:
        return self.vertices[-1]

    def reversed(self) -> Path:
        return Path(self.edges[::-1], self.vertices[::-1])

    def __len__(self):
        return len(self.edges)


def path_from_edges(G: Graft, start: int, edges: Iterable[int]) -> Path:
    """Walk ``edges`` from ``start`` in ``G``; raise ``NotAPath`` if they do not form a path."""
    edges = tuple(edges)
    verts = [start]
    cur = start
    for e in edges:
        if e not in G.edges:
            raise UnknownEdge(f"edge {e} is not in the graft")
        a, b = G.edges[e]
        if cur == a:
            cur = b
        elif cur == b:
            cur = a
        else:
            raise NotAPath(f"edge {e} does not continue the walk at vertex {cur}")
        verts.append(cur)
    return Path(edges, tuple(verts))


def orient_path(G: Graft, edges: Iterable[int]) -> Path:
    """Build a path from an edge sequence alone, inferring the start vertex."""
    edges = tuple(edges)
    if not edges:
        raise NotAPath("empty edge sequence")
    a, b = G.ends(edges[0])
    if len(edges) == 1:
        return Path(edges, (a, b))
    nxt = set(G.ends(edges[1]))
    start = a if b in nxt else b
    return path_from_edges(G, start, edges)


@dataclass(frozen=True)
class PathSystem:
    """Pairwise edge-disjoint paths, each oriented from ``source_side`` to ``sink_side``.

    T-path systems use the terminal set as both sides.
    """

    paths: tuple[Path, ...]
    source_side: frozenset[int]
    sink_side: frozenset[int]

    def __len__(self):
        return len(self.paths)

    def __iter__(self) -> Iterator[Path]:
        return iter(self.paths)

    @property
    def edges(self) -> frozenset[int]:
        return frozenset(e for p in self.paths for e in p.edges)

    @property
    def first_edges(self) -> frozenset[int]:
        return frozenset(p.edges[0] for p in self.paths)

    @property
    def last_edges(self) -> frozenset[int]:
        return frozenset(p.edges[-1] for p in self.paths)

    def path_through(self, e: int) -> Path | None:
        for p in self.paths:
            if e in p.edges:
                return p
        return None


@dataclass(frozen=True)
class Cut:
    edges: frozenset[int]
    source_region: frozenset[int]

    def __len__(self):
        return len(self.edges)


# -- argument checking -------------------------------------------------------

def _sides(G: Graft, A: Iterable[int], B: Iterable[int]) -> tuple[frozenset[int], frozenset[int]]:
    A, B = frozenset(A), frozenset(B)
    for X in (A, B):
        bad = X - G.vertices
        if bad:
            raise UnknownVertex(f"vertices {sorted(bad)} are not in the graft")
    if not A or not B:
        raise SidesOverlap("both sides must be nonempty")
    if A & B:
        raise SidesOverlap(f"sides share vertices {sorted(A & B)}")
    return A, B


def _as_paths(P) -> tuple[Path, ...]:
    if P is None:
        return ()
    if isinstance(P, PathSystem):
        return P.paths
    return tuple(P)


def check_path_system(G: Graft, A, B, P) -> PathSystem:
    """Validate ``P`` as edge-disjoint AB-paths of ``G`` and orient each from A to B."""
    A, B = frozenset(A), frozenset(B)
    out = []
    used: set[int] = set()
    for p in _as_paths(P):
        try:
            q = path_from_edges(G, p.start, p.edges)
        except (NotAPath, UnknownEdge) as exc:
            raise NotAPathSystem(f"{p.edges} is not a path of the graft: {exc}") from None
        if q.vertices != p.vertices:
            raise NotAPathSystem(f"vertex sequence of {p.edges} does not match the graft")
        if q.start in B and q.end in A:
            q = q.reversed()
        if q.start not in A or q.end not in B:
            raise NotAPathSystem(f"{q.edges} does not join the two sides")
        if any(v in A or v in B for v in q.vertices[1:-1]):
            raise NotAPathSystem(f"{q.edges} has an internal vertex on one of the sides")
        if used & set(q.edges):
            raise NotAPathSystem(f"paths share edges {sorted(used & set(q.edges))}")
        used.update(q.edges)
        out.append(q)
    return PathSystem(tuple(out), A, B)


# -- flow core ---------------------------------------------------------------

def _flow_of(paths: Iterable[Path]) -> Flow:
    flow: Flow = {}
    for p in paths:
        for e, tail in zip(p.edges, p.vertices):
            flow[e] = tail
    return flow


def _decompose(G: Graft, A: frozenset[int], B: frozenset[int], flow: Flow) -> tuple[Path, ...]:
    """Split a unit AB-flow into simple AB-paths; flow cycles are dropped."""
    used: set[int] = set()
    paths = []
    for a in sorted(A):
        for e0 in G.adjacency[a]:
            if flow.get(e0) != a or e0 in used:
                continue
            used.add(e0)
            verts, edges, pos = [a], [e0], {a: 0}
            x = G.other(e0, a)
            while True:
                if x in pos:
                    i = pos[x]
                    for v in verts[i + 1:]:
                        del pos[v]
                    del verts[i + 1:]
                    del edges[i:]
                else:
                    pos[x] = len(verts)
                    verts.append(x)
                if x in B:
                    break
                for e in G.adjacency[x]:
                    if flow.get(e) == x and e not in used:
                        break
                else:  # pragma: no cover - conservation guarantees an exit
                    raise AssertionError(f"flow not conserved at {x}")
                used.add(e)
                edges.append(e)
                x = G.other(e, x)
            paths.append(Path(tuple(edges), tuple(verts)))
    return tuple(paths)


def _augment_flow(G: Graft, A: frozenset[int], B: frozenset[int], flow: Flow) -> set[int] | None:
    """One breadth-first augmentation; returns ``None`` on success, else the reached set."""
    pred: dict[int, tuple[int, int]] = {}
    seen = set(A)
    queue = deque(sorted(A))
    hit = None
    while queue and hit is None:
        u = queue.popleft()
        for e in G.adjacency[u]:
            v = G.other(e, u)
            if v in seen or flow.get(e) == u:
                continue
            seen.add(v)
            pred[v] = (e, u)
            if v in B:
                hit = v
                break
            queue.append(v)
    if hit is None:
        return seen
    v = hit
    while v not in A:
        e, u = pred[v]
        if flow.get(e) == v:
            del flow[e]
        else:
            flow[e] = u
        v = u
    return None


def _max_flow(G: Graft, A, B, flow: Flow | None = None) -> tuple[Flow, frozenset[int]]:
    flow = {} if flow is None else dict(flow)
    while True:
        reach = _augment_flow(G, A, B, flow)
        if reach is not None:
            return flow, frozenset(reach)


def _residual_closure(G: Graft, start: Iterable[int], flow: Flow, stop: frozenset[int] = frozenset()) -> set[int]:
    seen = set(start)
    queue = deque(sorted(seen))
    while queue:
        u = queue.popleft()
        if u in stop:
            continue
        for e in G.adjacency[u]:
            v = G.other(e, u)
            if v not in seen and flow.get(e) != u:
                seen.add(v)
                queue.append(v)
    return seen


def _coreach(G: Graft, B: frozenset[int], flow: Flow) -> set[int]:
    """Vertices with a residual path into ``B``."""
    seen = set(B)
    queue = deque(sorted(B))
    while queue:
        x = queue.popleft()
        for e in G.adjacency[x]:
            w = G.other(e, x)
            if w not in seen and flow.get(e) != w:
                seen.add(w)
                queue.append(w)
    return seen


def reach_avoiding(G: Graft, start: Iterable[int], avoid: Iterable[int] = ()) -> frozenset[int]:
    """Vertices reachable from ``start`` without using edges in ``avoid``."""
    avoid = frozenset(avoid)
    seen = set(start)
    queue = deque(seen)
    while queue:
        u = queue.popleft()
        for e in G.adjacency[u]:
            if e in avoid:
                continue
            v = G.other(e, u)
            if v not in seen:
                seen.add(v)
                queue.append(v)
    return frozenset(seen)


def canonical_cut(G: Graft, A, edges: Iterable[int]) -> Cut:
    """Store a cut with its A-side: the vertices reachable from A avoiding it."""
    edges = frozenset(edges)
    return Cut(edges, reach_avoiding(G, A, edges))


# -- public operations -------------------------------------------------------

def augment(G: Graft, A, B, P=None) -> Cut | PathSystem:
    """Either a cut orthogonal to ``P`` or a system with one more path.

    The grown system keeps every endpoint edge of ``P`` on both sides and adds
    exactly one on each.
    """
    A, B = _sides(G, A, B)
    P = check_path_system(G, A, B, P)
    flow = _flow_of(P.paths)
    reach = _augment_flow(G, A, B, flow)
    if reach is not None:
        return Cut(delta(G, reach), frozenset(reach))
    return PathSystem(_decompose(G, A, B, flow), A, B)


def max_path_system(G: Graft, A, B) -> tuple[PathSystem, Cut]:
    """A maximum AB path system and the smallest cut orthogonal to it."""
    A, B = _sides(G, A, B)
    flow, reach = _max_flow(G, A, B)
    return PathSystem(_decompose(G, A, B, flow), A, B), Cut(delta(G, reach), reach)


def lambda_(G: Graft, X, Y) -> int:
    """Maximum number of edge-disjoint XY-paths."""
    X, Y = _sides(G, X, Y)
    flow, reach = _max_flow(G, X, Y)
    return len(delta(G, reach))


def is_min_cut(G: Graft, A, B, edges: Iterable[int]) -> bool:
    A, B = _sides(G, A, B)
    edges = frozenset(edges)
    if not edges <= G.edges.keys():
        return False
    if reach_avoiding(G, A, edges) & B:
        return False
    return len(edges) == lambda_(G, A, B)


def _edge_set(C) -> frozenset[int]:
    return C.edges if isinstance(C, Cut) else frozenset(C)


def cut_leq(G: Graft, A, B, C, C2) -> bool:
    """The lattice order on minimum AB-cuts: ``C`` is crossed no later than ``C2``.

    On minimum cuts this is containment of the canonical A-sides.
    """
    A, B = _sides(G, A, B)
    regions = []
    for X in (C, C2):
        es = _edge_set(X)
        if not is_min_cut(G, A, B, es):
            raise NotMinCut(f"{sorted(es)} is not a minimum cut between the sides")
        regions.append(reach_avoiding(G, A, es))
    return regions[0] <= regions[1]


def extreme_cuts_with_system(G: Graft, A, B) -> tuple[PathSystem, Cut, Cut]:
    A, B = _sides(G, A, B)
    flow, reach = _max_flow(G, A, B)
    small = Cut(delta(G, reach), reach)
    far = G.vertices - _coreach(G, B, flow)
    large = canonical_cut(G, A, delta(G, far))
    return PathSystem(_decompose(G, A, B, flow), A, B), small, large


def extreme_cuts(G: Graft, A, B) -> tuple[Cut, Cut]:
    """The smallest and the largest minimum AB-cut in the lattice order."""
    _, small, large = extreme_cuts_with_system(G, A, B)
    return small, large


def tight_cut_through(G: Graft, A, B, e: int) -> Cut:
    """Smallest minimum AB-cut containing ``e``, assuming every linkage of A uses ``e``.

    The result is checked; if some linkage avoids ``e`` the precondition is
    reported instead of returning a cut.
    """
    A, B = _sides(G, A, B)
    G.ends(e)
    dA = delta(G, A)
    if e in dA:
        raise PreconditionError(f"edge {e} lies on the boundary of the source side")
    flow, reach = _max_flow(G, A, B)
    lam = len(delta(G, reach))
    if lam < len(dA):
        raise NotLinked("the source side is not linked")
    if lambda_(delete_edges(G, [e]), A, B) >= len(dA):
        raise PreconditionEdgeAvoidable(f"some linkage of the source side avoids edge {e}")
    if e not in flow:
        raise PreconditionEdgeAvoidable(f"a maximum system avoids edge {e}")
    tail = flow[e]
    head = G.other(e, tail)
    S = _residual_closure(G, set(A) | {tail}, flow)
    if head in S or S & B:
        raise PreconditionEdgeAvoidable(f"no minimum cut contains edge {e}")
    cut = canonical_cut(G, A, delta(G, S))
    if e not in cut.edges or len(cut.edges) != lam:
        raise PreconditionEdgeAvoidable(f"no minimum cut contains edge {e}")
    return cut


def _signed(G: Graft, flow: Flow, e: int) -> int:
    t = flow.get(e)
    if t is None:
        return 0
    return 1 if t == G.edges[e][0] else -1


def pym_merge(G: Graft, A, B, P, Q) -> PathSystem:
    """A system whose A-end edges contain those of ``P`` and B-end edges those of ``Q``.

    Starts from ``Q`` and repeatedly follows the difference flow ``P - R`` out
    of a missing A-edge of ``P``: ending in B grows both ends, ending back in
    A swaps out an A-edge that ``P`` does not use. Neither step loses a B-edge.
    """
    A, B = _sides(G, A, B)
    P = check_path_system(G, A, B, P)
    Q = check_path_system(G, A, B, Q)
    fp = _flow_of(P.paths)
    fr = _flow_of(Q.paths)
    want = sorted(P.first_edges)
    for e0 in want:
        if e0 in _first_edges(G, A, fr):
            continue
        rem: dict[int, int] = {}
        for e in set(fp) | set(fr):
            diff = _signed(G, fp, e) - _signed(G, fr, e)
            if diff:
                rem[e] = diff
        a = fp[e0]
        walk_v, walk_e, pos = [a], [e0], {a: 0}
        rem[e0] -= 1 if G.edges[e0][0] == a else -1
        x = G.other(e0, a)
        while True:
            if x in A or x in B:
                walk_v.append(x)
                break
            if x in pos:
                i = pos[x]
                for v in walk_v[i + 1:]:
                    del pos[v]
                del walk_v[i + 1:]
                del walk_e[i:]
            else:
                pos[x] = len(walk_v)
                walk_v.append(x)
            for e in G.adjacency[x]:
                r = rem.get(e, 0)
                sgn = 1 if G.edges[e][0] == x else -1
                if r * sgn > 0:
                    break
            else:  # pragma: no cover - difference flow is conserved off A and B
                raise AssertionError(f"difference flow not conserved at {x}")
            rem[e] -= sgn
            walk_e.append(e)
            x = G.other(e, x)
        for e, tail in zip(walk_e, walk_v):
            val = _signed(G, fr, e) + (1 if G.edges[e][0] == tail else -1)
            if val == 0:
                del fr[e]
            else:
                fr[e] = G.edges[e][0] if val == 1 else G.edges[e][1]
    return PathSystem(_decompose(G, A, B, fr), A, B)


def _first_edges(G: Graft, A: frozenset[int], flow: Flow) -> set[int]:
    return {e for e, t in flow.items() if t in A and G.other(e, t) not in A}


def splice(P: Path, pivot, Q: Path, *, pivot_is_edge: bool = False) -> Path:
    """Join the segment of ``P`` from its start to ``pivot`` with ``Q`` from ``pivot`` on.

    ``pivot`` is a vertex, or an edge id when ``pivot_is_edge`` is set; an edge
    pivot is kept once and must be traversed the same way by both paths.
    """
    if pivot_is_edge:
        if pivot not in P.edges or pivot not in Q.edges:
            raise PivotMissing(f"edge {pivot} is not on both paths")
        i, j = P.edges.index(pivot), Q.edges.index(pivot)
        if P.vertices[i + 1] != Q.vertices[j + 1]:
            raise NotAPath(f"paths traverse edge {pivot} in opposite directions")
        edges = P.edges[:i + 1] + Q.edges[j + 1:]
        verts = P.vertices[:i + 2] + Q.vertices[j + 2:]
    else:
        if pivot not in P.vertices or pivot not in Q.vertices:
            raise PivotMissing(f"vertex {pivot} is not on both paths")
        i, j = P.vertices.index(pivot), Q.vertices.index(pivot)
        edges = P.edges[:i] + Q.edges[j:]
        verts = P.vertices[:i + 1] + Q.vertices[j + 1:]
    if len(set(edges)) != len(edges):
        raise NotAPath("spliced walk repeats an edge")
    return Path(edges, verts)
