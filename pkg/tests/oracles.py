"""Brute-force reference computations, deliberately naive and independent of tpack's flow code."""
from __future__ import annotations

from itertools import combinations

import networkx as nx


def cut_value(G, X):
    X = set(X)
    return sum(1 for u, v in G.edges.values() if (u in X) != (v in X))


def cut_edges(G, X):
    X = set(X)
    return frozenset(e for e, (u, v) in G.edges.items() if (u in X) != (v in X))


def all_min_cuts(G, A, B):
    """Every minimum AB-cut edge set, by enumerating all A-sides."""
    A, B = set(A), set(B)
    free = sorted(G.vertices - A - B)
    best, found = None, set()
    for r in range(len(free) + 1):
        for S in combinations(free, r):
            X = A | set(S)
            val = cut_value(G, X)
            if best is None or val < best:
                best, found = val, {cut_edges(G, X)}
            elif val == best:
                found.add(cut_edges(G, X))
    return best, found


def nx_lambda(G, A, B):
    """Edge connectivity between vertex sets via networkx max flow."""
    H = nx.DiGraph()
    H.add_nodes_from(["src", "snk"])
    for u, v in G.edges.values():
        for x, y in ((u, v), (v, u)):
            cap = H.get_edge_data(x, y, {"capacity": 0})["capacity"]
            H.add_edge(x, y, capacity=cap + 1)
    big = len(G.edges) + 1
    for a in A:
        H.add_edge("src", a, capacity=big)
    for b in B:
        H.add_edge(b, "snk", capacity=big)
    return nx.maximum_flow_value(H, "src", "snk")


def ab_paths(G, A, B):
    """All AB-paths as (edges, vertices), oriented from A, no inner vertex in A or B."""
    A, B = set(A), set(B)
    out = []

    def dfs(verts, edges):
        x = verts[-1]
        for e in G.adjacency[x]:
            y = G.other(e, x)
            if y in verts:
                continue
            if y in B:
                out.append((tuple(edges + [e]), tuple(verts + [y])))
            elif y not in A:
                dfs(verts + [y], edges + [e])

    for a in sorted(A):
        dfs([a], [])
    return out


def max_systems(G, A, B):
    """All maximum-size sets of edge-disjoint AB-paths (as tuples of (edges, vertices))."""
    paths = ab_paths(G, A, B)
    best = [0, []]

    def rec(i, used, chosen):
        if len(chosen) + (len(paths) - i) < best[0]:
            return
        if i == len(paths):
            if len(chosen) > best[0]:
                best[0], best[1] = len(chosen), [tuple(chosen)]
            elif len(chosen) == best[0]:
                best[1].append(tuple(chosen))
            return
        es = set(paths[i][0])
        if not es & used:
            chosen.append(paths[i])
            rec(i + 1, used | es, chosen)
            chosen.pop()
        rec(i + 1, used, chosen)

    rec(0, frozenset(), [])
    return best[1]


def first_cut_position(path_edges, cut):
    return next(i for i, e in enumerate(path_edges) if e in cut)


def leq_by_paths(G, A, B, C, C2):
    """The lattice order read off every AB-path: C is met no later than C2."""
    return all(first_cut_position(p, C) <= first_cut_position(p, C2) for p, _ in ab_paths(G, A, B))


def tpath_packing_size(G):
    """Maximum number of edge-disjoint T-paths via a plain subset search over all T-paths."""
    T = G.terminals
    paths = []
    for a in sorted(T):
        for edges, verts in ab_paths(G, {a}, T - {a}):
            if verts[-1] > a:
                paths.append(frozenset(edges))
    best = 0

    def rec(i, used, n):
        nonlocal best
        best = max(best, n)
        if i == len(paths) or n + (len(paths) - i) <= best:
            return
        if not paths[i] & used:
            rec(i + 1, used | paths[i], n + 1)
        rec(i + 1, used, n)

    rec(0, frozenset(), 0)
    return best
