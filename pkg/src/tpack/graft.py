"""Multigraphs with a distinguished terminal set.

A :class:`Graft` is immutable. Vertices and edges are dense integer ids; edge
ids are the canonical identity of an edge, so paths and cuts stored as edge
ids stay meaningful across deletion, contraction and splitting off.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from functools import cached_property
from typing import Iterable, Mapping

from .errors import (
    DanglingVertexRef,
    GraftError,
    InvalidFamily,
    LoopEdge,
    NotIncident,
    PreconditionError,
    TooFewTerminals,
    UnknownEdge,
    UnknownVertex,
    WouldCreateLoop,
)

Edge = tuple[int, int]


@dataclass(frozen=True)
class Graft:
    vertices: frozenset[int]
    terminals: frozenset[int]
    edges: Mapping[int, Edge]
    next_edge: int = field(default=-1, compare=False)

    def __post_init__(self):
        if self.next_edge < 0:
            object.__setattr__(self, "next_edge", max(self.edges, default=-1) + 1)

    @cached_property
    def adjacency(self) -> dict[int, tuple[int, ...]]:
        inc: dict[int, list[int]] = {v: [] for v in self.vertices}
        for e in sorted(self.edges):
            u, v = self.edges[e]
            inc[u].append(e)
            inc[v].append(e)
        return {v: tuple(es) for v, es in inc.items()}

    @cached_property
    def edge_ids(self) -> tuple[int, ...]:
        return tuple(sorted(self.edges))

    def ends(self, e: int) -> Edge:
        try:
            return self.edges[e]
        except KeyError:
            raise UnknownEdge(f"edge {e} is not in the graft") from None

    def other(self, e: int, v: int) -> int:
        a, b = self.ends(e)
        if v == a:
            return b
        if v == b:
            return a
        raise NotIncident(f"edge {e} is not incident with vertex {v}")

    def incident(self, v: int) -> tuple[int, ...]:
        try:
            return self.adjacency[v]
        except KeyError:
            raise UnknownVertex(f"vertex {v} is not in the graft") from None

    def degree(self, v: int) -> int:
        return len(self.incident(v))

    def is_terminal(self, v: int) -> bool:
        return v in self.terminals

    @property
    def nonterminals(self) -> frozenset[int]:
        return self.vertices - self.terminals

    def terminal_edges(self) -> list[int]:
        """Edges with at least one terminal end, ascending."""
        return [e for e in self.edge_ids if not self.terminals.isdisjoint(self.edges[e])]

    def __repr__(self):
        es = ", ".join(f"{e}:{u}-{v}" for e, (u, v) in sorted(self.edges.items()))
        return f"Graft(V={sorted(self.vertices)}, T={sorted(self.terminals)}, E=[{es}])"


def _checked(vertices, terminals, edges, next_edge=-1) -> Graft:
    vertices = frozenset(vertices)
    terminals = frozenset(terminals)
    if len(terminals) < 2:
        raise TooFewTerminals(f"a graft needs at least 2 terminals, got {len(terminals)}")
    if not terminals <= vertices:
        raise DanglingVertexRef(f"terminals {sorted(terminals - vertices)} are not vertices")
    for e, (u, v) in edges.items():
        if u == v:
            raise LoopEdge(f"edge {e} is a loop at vertex {u}")
        if u not in vertices or v not in vertices:
            raise DanglingVertexRef(f"edge {e}=({u},{v}) references a missing vertex")
    return Graft(vertices, terminals, dict(sorted(edges.items())), next_edge)


def build_graft(vertex_count: int, terminals: Iterable[int], edges: Iterable[Edge]) -> Graft:
    """Build a graft on vertices ``0..vertex_count-1``; edge ids follow list order."""
    terminals = list(terminals)
    if len(set(terminals)) != len(terminals):
        raise GraftError("terminals must be distinct")
    edge_map = {}
    for i, (u, v) in enumerate(edges):
        edge_map[i] = (int(u), int(v))
    return _checked(range(vertex_count), terminals, edge_map)


def _vertex_set(G: Graft, X: Iterable[int]) -> frozenset[int]:
    X = frozenset(X)
    missing = X - G.vertices
    if missing:
        raise UnknownVertex(f"vertices {sorted(missing)} are not in the graft")
    return X


def delta(G: Graft, X: Iterable[int]) -> frozenset[int]:
    """Edges with exactly one end in ``X``."""
    X = _vertex_set(G, X)
    out = set()
    for v in X:
        for e in G.adjacency[v]:
            a, b = G.edges[e]
            if (a in X) != (b in X):
                out.add(e)
    return frozenset(out)


def d(G: Graft, X: Iterable[int]) -> int:
    return len(delta(G, X))


def restrict(G: Graft, keep: Iterable[int]) -> Graft:
    """Same vertices and terminals, only the edges in ``keep``."""
    keep = frozenset(keep)
    unknown = keep - G.edges.keys()
    if unknown:
        raise UnknownEdge(f"edges {sorted(unknown)} are not in the graft")
    return Graft(G.vertices, G.terminals, {e: G.edges[e] for e in G.edge_ids if e in keep},
                 G.next_edge)


def delete_edges(G: Graft, drop: Iterable[int]) -> Graft:
    drop = frozenset(drop)
    unknown = drop - G.edges.keys()
    if unknown:
        raise UnknownEdge(f"edges {sorted(unknown)} are not in the graft")
    return Graft(G.vertices, G.terminals,
                 {e: G.edges[e] for e in G.edge_ids if e not in drop}, G.next_edge)


@dataclass(frozen=True)
class ContractionFamily:
    """Disjoint sets ``X_t`` around terminals and the induced vertex relabeling."""

    sets: Mapping[int, frozenset[int]]
    relabel: Mapping[int, int]
    deleted_edges: frozenset[int]

    def contracted_set(self, t: int) -> frozenset[int]:
        return self.sets.get(t, frozenset((t,)))

    @property
    def covered(self) -> frozenset[int]:
        return frozenset().union(*self.sets.values()) if self.sets else frozenset()


def make_family(G: Graft, sets: Mapping[int, Iterable[int]]) -> ContractionFamily:
    """Validate ``sets`` against ``G`` and compute ``i_F`` and the internal edges."""
    fam: dict[int, frozenset[int]] = {}
    seen: set[int] = set()
    for t in sorted(sets):
        X = frozenset(sets[t])
        if t not in G.terminals:
            raise InvalidFamily(f"{t} is not a terminal")
        if t not in X:
            raise InvalidFamily(f"X_{t} does not contain its terminal")
        if not X <= G.vertices:
            raise InvalidFamily(f"X_{t} contains unknown vertices {sorted(X - G.vertices)}")
        if X & G.terminals != {t}:
            raise InvalidFamily(f"X_{t} contains other terminals {sorted((X & G.terminals) - {t})}")
        if X & seen:
            raise InvalidFamily(f"X_{t} overlaps another set at {sorted(X & seen)}")
        seen |= X
        fam[t] = X
    relabel = {v: v for v in G.vertices}
    for t, X in fam.items():
        for v in X:
            relabel[v] = t
    deleted = frozenset(
        e for e, (u, v) in G.edges.items()
        if relabel[u] == relabel[v] and u in seen
    )
    return ContractionFamily(fam, relabel, deleted)


def contract(G: Graft, F: ContractionFamily | Mapping[int, Iterable[int]]) -> Graft:
    """Contract each ``X_t`` to ``t`` and delete the resulting loops.

    Surviving edges keep their ids; retired vertex ids are never reused.
    """
    if not isinstance(F, ContractionFamily):
        F = make_family(G, F)
    else:
        # re-validate: the family may have been built for another graft
        F = make_family(G, F.sets)
    covered = F.covered
    vertices = (G.vertices - covered) | F.sets.keys()
    edges = {}
    for e in G.edge_ids:
        if e in F.deleted_edges:
            continue
        u, v = G.edges[e]
        edges[e] = (F.relabel[u], F.relabel[v])
    return Graft(frozenset(vertices), G.terminals, edges, G.next_edge)


def split_off(G: Graft, s: int, e0: int, f0: int) -> tuple[Graft, int]:
    """Replace ``e0 = s-x`` and ``f0 = x-y`` by a fresh edge ``h0 = s-y``."""
    if s not in G.terminals:
        raise NotIncident(f"{s} is not a terminal")
    if e0 == f0:
        raise NotIncident("e0 and f0 must be distinct edges")
    if s not in G.ends(e0):
        raise NotIncident(f"edge {e0} is not incident with {s}")
    x = G.other(e0, s)
    if x in G.terminals:
        raise PreconditionError(f"edge {e0} joins two terminals; nothing to split off")
    if x not in G.ends(f0):
        raise NotIncident(f"edges {e0} and {f0} do not share vertex {x}")
    y = G.other(f0, x)
    if y == s:
        raise WouldCreateLoop(f"splitting off {e0},{f0} would create a loop at {s}")
    h0 = G.next_edge
    edges = {e: G.edges[e] for e in G.edge_ids if e not in (e0, f0)}
    edges[h0] = (s, y)
    return Graft(G.vertices, G.terminals, edges, h0 + 1), h0
