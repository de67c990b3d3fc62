"""Linkability, boundary-linked contraction families and lifting.

A terminal ``t`` is linked when edge-disjoint T-paths ending at ``t`` can use
every edge at ``t``; equivalently ``lambda(t, T - t) == d(t)``.
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Mapping

from .errors import BoundaryMissing, Collision, InvariantViolation, NotAPath, NotATerminal
from .graft import ContractionFamily, Graft, contract, delta, make_family
from .menger import (
    Path,
    PathSystem,
    check_path_system,
    extreme_cuts,
    max_path_system,
    path_from_edges,
    pym_merge,
)


def is_linked(G: Graft, t: int) -> tuple[bool, PathSystem]:
    """Whether ``t`` is linked, with a maximum ``t``-to-``T - t`` system as witness.

    Witness paths start at ``t``; when ``t`` is linked their first edges are
    exactly the edges at ``t``.
    """
    if t not in G.terminals:
        raise NotATerminal(f"{t} is not a terminal")
    ps, _ = max_path_system(G, {t}, G.terminals - {t})
    return len(ps) == G.degree(t), ps


def unlinked_terminals(G: Graft) -> list[int]:
    return [t for t in sorted(G.terminals) if not is_linked(G, t)[0]]


def linkability_condition(G: Graft) -> bool:
    return all(is_linked(G, t)[0] for t in sorted(G.terminals))


@dataclass(frozen=True)
class BoundarySystem:
    """Edge-disjoint paths ``P_{t,e}``, one per boundary edge ``e`` of ``X_t``.

    Each path starts with ``e`` (at the vertex outside ``X_t``) and ends at ``t``.
    """

    terminal: int
    paths: Mapping[int, Path]

    def covers(self, edges: Iterable[int]) -> bool:
        used = {e for p in self.paths.values() for e in p.edges}
        return set(edges) <= used


@dataclass(frozen=True)
class JokerFamily:
    family: ContractionFamily
    boundary: Mapping[int, BoundarySystem]
    contracted: Graft
    chosen: frozenset[int]


def _trivial_boundary(G: Graft, t: int) -> BoundarySystem:
    return BoundarySystem(t, {e: Path((e,), (G.other(e, t), t)) for e in G.incident(t)})


def boundary_system(G: Graft, t: int, X: frozenset[int]) -> BoundarySystem:
    """Route every edge of ``delta(X)`` to ``t`` inside ``X``.

    When ``t`` is linked in ``G`` the routing also covers every edge at ``t``:
    a system saturating ``delta(X)`` is merged with a linkage of ``t`` that
    has been cut off at its first exit from ``X``.
    """
    if X == {t}:
        return _trivial_boundary(G, t)
    outside = G.vertices - X
    inward, cut = max_path_system(G, outside, {t})
    bd = delta(G, X)
    if inward.first_edges != bd:
        raise InvariantViolation(f"X_{t} is not boundary-linked")
    linked, link = is_linked(G, t)
    if linked:
        pieces = []
        for p in link.paths:
            k = next(i for i, v in enumerate(p.vertices) if v in outside)
            pieces.append(Path(p.edges[:k], p.vertices[:k + 1]).reversed())
        towards_t = check_path_system(G, outside, {t}, pieces)
        inward = pym_merge(G, outside, {t}, inward, towards_t)
    paths = {p.edges[0]: p for p in inward.paths}
    if set(paths) != bd:
        raise InvariantViolation(f"boundary system of {t} does not match delta(X_{t})")
    return BoundarySystem(t, paths)


def joker_family(G: Graft, chosen: Iterable[int]) -> JokerFamily:
    """Contract, for each chosen terminal in ascending order, the terminal side of
    its largest minimum cut, so that afterwards ``delta(t)`` is its only minimum cut.
    """
    chosen = frozenset(chosen)
    bad = chosen - G.terminals
    if bad:
        raise NotATerminal(f"{sorted(bad)} are not terminals")
    sets: dict[int, frozenset[int]] = {}
    cur = G
    for s in sorted(chosen):
        _, large = extreme_cuts(cur, {s}, cur.terminals - {s})
        sets[s] = large.source_region
        if len(large.source_region) > 1:
            cur = contract(cur, {s: large.source_region})
    family = make_family(G, sets)
    contracted = contract(G, family)
    if contracted != cur:
        raise InvariantViolation("iterated and one-shot contraction disagree")
    for t in sorted(chosen):
        small, large = extreme_cuts(contracted, {t}, contracted.terminals - {t})
        dt = delta(contracted, {t})
        if small.edges != dt or large.edges != dt:
            raise InvariantViolation(f"delta({t}) is not the unique minimum cut after contraction")
    boundary = {t: boundary_system(G, t, family.contracted_set(t)) for t in sorted(G.terminals)}
    return JokerFamily(family, boundary, contracted, chosen)


def identity_family(G: Graft) -> JokerFamily:
    return joker_family(G, ())


def _lift_path(G: Graft, J: JokerFamily, p: Path) -> Path:
    t0, t1 = p.start, p.end
    try:
        b0 = J.boundary[t0].paths[p.edges[0]]
        b1 = J.boundary[t1].paths[p.edges[-1]]
    except KeyError as exc:
        raise BoundaryMissing(f"no boundary path for end edge {exc.args[0]}") from None
    head = b0.reversed().edges  # t0 ... e0
    tail = b1.edges  # e1 ... t1
    if len(p.edges) == 1:
        edges = head + tail[1:]
    else:
        edges = head + p.edges[1:-1] + tail
    try:
        return path_from_edges(G, t0, edges)
    except NotAPath as exc:
        raise Collision(f"lift of {p.edges} is not a path: {exc}") from None


def lift(G: Graft, J: JokerFamily, paths) -> PathSystem:
    """Extend T-paths of ``J.contracted`` to T-paths of ``G`` through the boundary systems."""
    src = paths.paths if isinstance(paths, PathSystem) else tuple(paths)
    out = []
    used: set[int] = set()
    for p in src:
        q = _lift_path(G, J, p)
        if used & set(q.edges):
            raise Collision(f"lifted paths share edges {sorted(used & set(q.edges))}")
        used.update(q.edges)
        out.append(q)
    return PathSystem(tuple(out), G.terminals, G.terminals)
