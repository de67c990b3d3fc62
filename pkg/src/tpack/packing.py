"""Packing edge-disjoint T-paths in inner-Eulerian grafts.

The driver repeatedly extracts one T-path through an uncovered terminal edge
while keeping the remainder inner Eulerian and linkable. Extraction recurses
by splitting off the first two edges of a carried witness path, after
contracting every other terminal's largest minimum cut so that each of those
terminals keeps a unique minimum cut (which makes deleting two edges safe).
"""
from __future__ import annotations

import logging
from dataclasses import dataclass
from typing import Callable, Mapping

from .errors import (
    BoundaryMissing,
    InvariantViolation,
    LinkabilityFails,
    NotATerminalEdge,
    NotInnerEulerian,
    PreconditionError,
    SourceNotLinked,
    UnknownEdge,
)
from .euler import CYCLE, T_PATH, PartitionPiece, _pop_walk, cycle_tpath_partition, is_inner_eulerian, odd_vertex
from .graft import Graft, delete_edges, delta, split_off
from .linkage import is_linked, joker_family, lift, linkability_condition, unlinked_terminals
from .menger import Cut, Path, PathSystem, path_from_edges, splice

log = logging.getLogger(__name__)


@dataclass(frozen=True)
class ExtractionState:
    """One level of the extraction recursion.

    ``witness`` is the path through ``target_edge`` of ``linkage``, a linkage of
    the terminal ``witness.start``; ``depth`` is its length and drops by one per
    level.
    """

    graft: Graft
    target_edge: int
    witness: Path
    linkage: tuple[Path, ...]

    @property
    def depth(self) -> int:
        return len(self.witness)


@dataclass(frozen=True)
class Certificate:
    paths: PathSystem
    cuts: Mapping[int, Cut]


def _require_inner_eulerian(G: Graft) -> None:
    w = odd_vertex(G)
    if w is not None:
        raise NotInnerEulerian(w)


def _require_linkable(G: Graft) -> None:
    bad = unlinked_terminals(G)
    if bad:
        raise LinkabilityFails(bad)


def _remainder_ok(G: Graft, path: Path) -> bool:
    rest = delete_edges(G, path.edges)
    return is_inner_eulerian(rest) and linkability_condition(rest)


def _is_tpath(G: Graft, p: Path) -> bool:
    T = G.terminals
    return p.start in T and p.end in T and p.start != p.end and not (set(p.vertices[1:-1]) & T)


def rest_cycle_coverable_linkage(G: Graft, s: int, t: int) -> tuple[PathSystem, list[PartitionPiece]]:
    """For ``T = {s, t}``: a linkage of ``s`` whose complement has edge-disjoint
    cycles covering every remaining edge at ``t``.

    Each edge at ``s`` or ``t`` is consumed in turn by a linkage path, a piece
    of a cycle/T-path partition, or a piece rerouted onto a linkage path at
    its first contact with it. Cycles come back closed at ``t``.
    """
    if G.terminals != {s, t}:
        raise PreconditionError("the graft must have exactly the two terminals s and t")
    _require_inner_eulerian(G)
    if not is_linked(G, s)[0]:
        raise SourceNotLinked(f"{s} is not linked")
    cur = G
    links: list[Path] = []
    cycles: list[PartitionPiece] = []
    while True:
        pending = sorted(set(cur.incident(s)) | set(cur.incident(t)))
        if not pending:
            break
        e = pending[0]
        linked, P = is_linked(cur, s)
        if not linked:
            raise InvariantViolation(f"{s} lost its linkage")
        H = P.path_through(e)
        if H is not None:
            links.append(H)
        else:
            piece = next(p for p in cycle_tpath_partition(cur) if e in p.edges)
            if not set(piece.edges) & P.edges:
                if piece.kind == T_PATH:
                    H = path_from_edges(cur, s if piece.vertices[0] == s else piece.vertices[-1],
                                        piece.edges if piece.vertices[0] == s else piece.edges[::-1])
                    links.append(H)
                else:
                    H = _closed_from(piece, e, t)
                    cycles.append(H)
            else:
                verts, edges = piece.vertices, piece.edges
                if verts[0] != t or edges[0] != e:
                    verts, edges = verts[::-1], edges[::-1]
                on_p = {v for p in P for v in p.vertices}
                i = next(k for k in range(1, len(verts)) if verts[k] in on_p)
                v = verts[i]
                seg = Path(edges[:i], verts[:i + 1])
                through = next(p for p in P if v in p.vertices)
                H = splice(through, v, seg.reversed())
                links.append(H)
        cur = delete_edges(cur, H.edges)
    system = PathSystem(tuple(links), frozenset((s,)), frozenset((t,)))
    left = delete_edges(G, system.edges)
    covered = {e for c in cycles for e in c.edges}
    if system.first_edges != set(G.incident(s)) or not set(left.incident(t)) <= covered:
        raise InvariantViolation("linkage/cycle cover failed validation")
    return system, cycles


def _closed_from(piece: PartitionPiece, e: int, t: int) -> PartitionPiece:
    verts, edges = piece.vertices, piece.edges
    if verts[0] != t or edges[0] != e:
        verts, edges = verts[::-1], edges[::-1]
    return PartitionPiece(CYCLE, edges, verts)


def survives_two_deletions(G: Graft, f: int, g: int) -> dict[int, bool]:
    """For each terminal, whether it is still linked after deleting ``f`` and ``g``."""
    for e in (f, g):
        if e not in G.edges:
            raise UnknownEdge(f"edge {e} is not in the graft")
    H = delete_edges(G, {f, g})
    return {t: is_linked(H, t)[0] for t in sorted(G.terminals)}


def _truncate(p: Path, stop: frozenset[int], relabel: Mapping[int, int]) -> Path:
    k = next(i for i in range(1, len(p.vertices)) if p.vertices[i] in stop)
    return Path(p.edges[:k], p.vertices[:k] + (relabel[p.vertices[k]],))


def _extract(st: ExtractionState) -> Path:
    G, e0 = st.graft, st.target_edge
    s = st.witness.start
    x = G.other(e0, s)
    if x in G.terminals:
        return Path((e0,), (s, x))

    J = joker_family(G, G.terminals - {s})
    Gc = J.contracted
    stop = J.family.covered - {s}
    linkage = tuple(_truncate(p, stop, J.family.relabel) for p in st.linkage)
    witness = next(p for p in linkage if p.edges[0] == e0)
    if len(witness) > st.depth:
        raise InvariantViolation("witness grew under contraction")

    if len(witness) == 1:
        Q = witness
    else:
        f0 = witness.edges[1]
        G2, h0 = split_off(Gc, s, e0, f0)
        w2 = Path((h0,) + witness.edges[2:], (s,) + witness.vertices[2:])
        link2 = tuple(w2 if p is witness else p for p in linkage)
        log.debug("split off %d,%d into %d at depth %d", e0, f0, h0, len(witness))
        Q2 = _extract(ExtractionState(G2, h0, w2, link2))
        edges, verts, _ = _pop_walk((s, x) + Q2.vertices[1:], (e0, f0) + Q2.edges[1:])
        Q = Path(edges, verts)
        if Q.edges[0] != e0 or not _is_tpath(Gc, Q) or not _remainder_ok(Gc, Q):
            raise InvariantViolation(f"back-translated path {Q.edges} is not valid")

    t0 = Q.end
    try:
        tail = J.boundary[t0].paths[Q.edges[-1]]
    except KeyError:
        raise BoundaryMissing(f"no boundary path for edge {Q.edges[-1]} at {t0}") from None
    R = path_from_edges(G, s, Q.edges + tail.edges[1:])
    if R.edges[0] != e0 or not _is_tpath(G, R) or not _remainder_ok(G, R):
        raise InvariantViolation(f"extracted path {R.edges} is not valid")
    return R


def extract_tpath(G: Graft, e0: int) -> Path:
    """A T-path through the terminal edge ``e0`` whose removal keeps ``G``
    inner Eulerian and linkable.

    The path starts at the terminal end of ``e0`` (the lower one if both ends
    are terminals).
    """
    _require_inner_eulerian(G)
    ends = G.ends(e0)
    terms = [v for v in ends if v in G.terminals]
    if not terms:
        raise NotATerminalEdge(f"edge {e0} has no terminal end")
    _require_linkable(G)
    if len(terms) == 2:
        a, b = sorted(ends)
        return Path((e0,), (a, b))
    s = terms[0]
    _, link = is_linked(G, s)
    witness = link.path_through(e0)
    return _extract(ExtractionState(G, e0, witness, link.paths))


def perfect_linkage(G: Graft, on_step: Callable[[Graft, Path], None] | None = None) -> PathSystem:
    """Edge-disjoint T-paths covering every edge at every terminal.

    ``on_step`` is called with the remainder and the extracted path after each
    extraction.
    """
    _require_inner_eulerian(G)
    _require_linkable(G)
    cur = G
    paths: list[Path] = []
    while True:
        todo = cur.terminal_edges()
        if not todo:
            break
        P = extract_tpath(cur, todo[0])
        cur = delete_edges(cur, P.edges)
        if not is_inner_eulerian(cur) or not linkability_condition(cur):
            raise InvariantViolation(f"remainder after extracting {P.edges} broke an invariant")
        paths.append(P)
        if on_step is not None:
            on_step(cur, P)
    return PathSystem(tuple(paths), G.terminals, G.terminals)


def lovcher_certificate(G: Graft) -> Certificate:
    """Edge-disjoint T-paths plus, for every terminal ``t``, a cut separating ``t``
    from the other terminals made of exactly one edge of each path ending at ``t``.

    No linkability assumption: all terminals' largest minimum cuts are
    contracted first, the contracted graft is packed perfectly and the packing
    is lifted back.
    """
    from .toolkit import verify_certificate

    _require_inner_eulerian(G)
    J = joker_family(G, G.terminals)
    packed = perfect_linkage(J.contracted)
    paths = lift(G, J, packed)
    cuts = {}
    for t in sorted(G.terminals):
        X = J.family.contracted_set(t)
        cuts[t] = Cut(delta(G, X), X)
    cert = Certificate(paths, cuts)
    report = verify_certificate(G, cert)
    if not report.ok:
        raise InvariantViolation(f"certificate failed verification: {report.violations}")
    return cert
