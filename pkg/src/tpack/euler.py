"""Parity and the edge-partition of an inner-Eulerian graft into cycles and T-paths."""
from __future__ import annotations

from dataclasses import dataclass
from typing import Literal

from .errors import InvariantViolation, NotInnerEulerian
from .graft import Graft

CYCLE = "cycle"
T_PATH = "t_path"


@dataclass(frozen=True)
class PartitionPiece:
    kind: Literal["cycle", "t_path"]
    edges: tuple[int, ...]
    vertices: tuple[int, ...]  # closed (first == last) for cycles


def odd_vertex(G: Graft) -> int | None:
    """Smallest non-terminal vertex of odd degree, or ``None``."""
    for v in sorted(G.nonterminals):
        if G.degree(v) % 2:
            return v
    return None


def is_inner_eulerian(G: Graft) -> bool:
    # in a finite graft, even singleton cuts off T imply every cut off T is even
    return odd_vertex(G) is None


def _pop_walk(verts, edges):
    """Loop-erase an open walk, returning the simple path and the erased simple cycles."""
    out_v, out_e, pos, cycles = [], [], {}, []
    for k, x in enumerate(verts):
        if k:
            out_e.append(edges[k - 1])
        if x in pos:
            i = pos[x]
            cyc_v = tuple(out_v[i:]) + (x,)
            cyc_e = tuple(out_e[i:])
            cycles.append(PartitionPiece(CYCLE, cyc_e, cyc_v))
            for v in out_v[i + 1:]:
                del pos[v]
            del out_v[i + 1:]
            del out_e[i:]
        else:
            pos[x] = len(out_v)
            out_v.append(x)
    return tuple(out_e), tuple(out_v), cycles


def _walk_pieces(G: Graft, unused: set[int]) -> list[PartitionPiece]:
    T = G.terminals
    pieces: list[PartitionPiece] = []
    tcount = {t: sum(1 for e in G.adjacency[t] if e in unused) for t in T}

    def take(e, x):
        unused.discard(e)
        for y in G.edges[e]:
            if y in T:
                tcount[y] -= 1
        return G.other(e, x)

    while unused:
        start_edge = None
        for e in sorted(unused):
            if not T.isdisjoint(G.edges[e]):
                start_edge = e
                break
        if start_edge is not None:
            t1 = next(y for y in G.edges[start_edge] if y in T)
            verts, edges, pos = [t1], [start_edge], {}
            x = take(start_edge, t1)
            while True:
                if x in T:
                    verts.append(x)
                    kind = T_PATH if x != t1 else CYCLE
                    pieces.append(PartitionPiece(kind, tuple(edges), tuple(verts)))
                    break
                if x in pos:
                    i = pos[x]
                    pieces.append(PartitionPiece(CYCLE, tuple(edges[i:]), tuple(verts[i:]) + (x,)))
                    for v in verts[i + 1:]:
                        del pos[v]
                    del verts[i + 1:]
                    del edges[i:]
                else:
                    pos[x] = len(verts)
                    verts.append(x)
                best = None
                for e in G.adjacency[x]:
                    if e not in unused:
                        continue
                    y = G.other(e, x)
                    if y in T and y != t1:
                        key = (0, -tcount[y], e)
                    elif y not in T:
                        key = (1, 0, e)
                    else:
                        key = (2, 0, e)
                    if best is None or key < best:
                        best = key
                e = best[2]
                edges.append(e)
                x = take(e, x)
        else:
            e = min(unused)
            u = G.edges[e][0]
            verts, edges, pos = [u], [], {u: 0}
            x = u
            while True:
                e = next(f for f in G.adjacency[x] if f in unused)
                edges.append(e)
                x = take(e, x)
                if x in pos:
                    i = pos[x]
                    pieces.append(PartitionPiece(CYCLE, tuple(edges[i:]), tuple(verts[i:]) + (x,)))
                    for v in verts[i + 1:]:
                        del pos[v]
                    del verts[i + 1:]
                    del edges[i:]
                    if not edges and not any(f in unused for f in G.adjacency[x]):
                        break
                else:
                    pos[x] = len(verts)
                    verts.append(x)
    return pieces


def _halves(piece: PartitionPiece, w: int):
    p = piece.vertices.index(w)
    head = (piece.vertices[:p + 1], piece.edges[:p])
    tail = (piece.vertices[p:], piece.edges[p:])
    return head, tail


def _join(first, second):
    (v1, e1), (v2, e2) = first, second
    return v1 + v2[1:], e1 + e2


def _terminal_cycle(G: Graft, piece: PartitionPiece) -> bool:
    return piece.kind == CYCLE and piece.vertices[0] in G.terminals


def _repair(G: Graft, pieces: list[PartitionPiece]) -> list[PartitionPiece]:
    """Re-pair cycles closed at a terminal with pieces ending elsewhere.

    Each round turns a cycle at ``a`` and a piece with ends away from ``a``
    that share an inner vertex into two T-paths (plus inner cycles from loop
    erasure), so the number of terminal-closed cycles strictly drops.
    """
    T = G.terminals
    while True:
        found = None
        for i, ci in enumerate(pieces):
            if not _terminal_cycle(G, ci):
                continue
            a = ci.vertices[0]
            inner_i = set(ci.vertices) - T
            for j, pj in enumerate(pieces):
                if j == i or not (pj.kind == T_PATH or _terminal_cycle(G, pj)):
                    continue
                if a in (pj.vertices[0], pj.vertices[-1]):
                    continue
                common = inner_i & set(pj.vertices)
                if common:
                    found = (i, j, min(common))
                    break
            if found:
                break
        if found is None:
            return pieces
        i, j, w = found
        h1, h2 = _halves(pieces[i], w)
        k1, k2 = _halves(pieces[j], w)
        out = []
        for verts, edges in (_join(h1, k2), _join(k1, h2)):
            pe, pv, cycles = _pop_walk(verts, edges)
            out.append(PartitionPiece(T_PATH, pe, pv))
            out.extend(cycles)
        pieces = [p for k, p in enumerate(pieces) if k not in (i, j)] + out


def check_piece(G: Graft, piece: PartitionPiece) -> bool:
    vs, es = piece.vertices, piece.edges
    if not es or len(vs) != len(es) + 1:
        return False
    for k, e in enumerate(es):
        if e not in G.edges or set(G.edges[e]) != {vs[k], vs[k + 1]}:
            return False
    T = G.terminals
    if piece.kind == CYCLE:
        body = vs[:-1]
        return vs[0] == vs[-1] and len(set(body)) == len(body) and (len(es) >= 2)
    if piece.kind == T_PATH:
        return (len(set(vs)) == len(vs) and vs[0] in T and vs[-1] in T
                and all(v not in T for v in vs[1:-1]))
    return False


def cycle_tpath_partition(G: Graft) -> list[PartitionPiece]:
    """Partition ``E(G)`` into cycles and T-paths.

    Terminal-terminal edges become single-edge T-paths. The rest is handled as
    the even multigraph obtained by identifying all terminals: walks leave a
    terminal, pop inner cycles when they revisit a vertex, and stop at the
    first terminal reached, preferring a terminal different from the start.
    Walks that close at their own terminal are cycles through it.
    """
    w = odd_vertex(G)
    if w is not None:
        raise NotInnerEulerian(w)
    T = G.terminals
    pieces = []
    unused = set(G.edges)
    for e in G.edge_ids:
        if set(G.edges[e]) <= T:
            pieces.append(PartitionPiece(T_PATH, (e,), G.edges[e]))
            unused.discard(e)
    pieces.extend(_walk_pieces(G, unused))
    pieces = _repair(G, pieces)
    seen: list[int] = [e for p in pieces for e in p.edges]
    if sorted(seen) != list(G.edge_ids) or not all(check_piece(G, p) for p in pieces):
        raise InvariantViolation("cycle/T-path partition failed validation")
    return pieces
