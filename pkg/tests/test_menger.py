import itertools

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from tpack.errors import (
    NotAPath,
    NotAPathSystem,
    NotLinked,
    NotMinCut,
    PivotMissing,
    PreconditionEdgeAvoidable,
    SidesOverlap,
)
from tpack.graft import build_graft, delete_edges, delta
from tpack.menger import (
    Cut,
    Path,
    PathSystem,
    augment,
    cut_leq,
    extreme_cuts,
    is_min_cut,
    lambda_,
    max_path_system,
    path_from_edges,
    pym_merge,
    splice,
    tight_cut_through,
)

from instances import doubled_star, ladder, random_multigraph, triangle, two_path
from oracles import all_min_cuts, ab_paths, leq_by_paths, max_systems, nx_lambda


def edges_of(ps):
    return sorted(p.edges for p in ps.paths)


def test_augment_from_empty_takes_lowest_ids():
    ps = augment(ladder(), {0}, {2})
    assert edges_of(ps) == [(0, 2)]


def test_augment_full_system_returns_cut():
    G = ladder()
    P = [path_from_edges(G, 0, [0, 2]), path_from_edges(G, 0, [1, 3])]
    cut = augment(G, {0}, {2}, P)
    assert cut == Cut(frozenset({0, 1}), frozenset({0}))
    assert augment(two_path(), {0}, {1}, [path_from_edges(two_path(), 0, [0, 1])]).edges == {0}


def test_augment_rejects_bad_system():
    G = ladder()
    with pytest.raises(NotAPathSystem):
        augment(G, {0}, {2}, [path_from_edges(G, 0, [0, 2]), path_from_edges(G, 0, [1, 2])])
    with pytest.raises(SidesOverlap):
        augment(G, {0}, {0, 2})


def test_max_path_system_examples():
    ps, cut = max_path_system(ladder(), {0}, {2})
    assert edges_of(ps) == [(0, 2), (1, 3)] and cut.edges == {0, 1}
    ps, cut = max_path_system(triangle(), {0}, {1, 2})
    assert edges_of(ps) == [(0,), (2,)] and cut.edges == {0, 2}
    E = build_graft(3, [0, 1], [])
    ps, cut = max_path_system(E, {0}, {1})
    assert len(ps) == 0 and cut.edges == frozenset()


def test_lambda_examples():
    assert lambda_(doubled_star(), {0}, {1, 2}) == 2
    assert lambda_(two_path(), {0}, {1}) == 1


def test_cut_leq_examples():
    G = ladder()
    assert cut_leq(G, {0}, {2}, {0, 1}, {2, 3})
    assert not cut_leq(G, {0}, {2}, {2, 3}, {0, 1})
    assert cut_leq(G, {0}, {2}, {0, 1}, {0, 1})
    with pytest.raises(NotMinCut):
        cut_leq(G, {0}, {2}, {0}, {2, 3})


def test_extreme_cuts_examples():
    small, large = extreme_cuts(ladder(), {0}, {2})
    assert (small.edges, large.edges) == ({0, 1}, {2, 3})
    small, large = extreme_cuts(two_path(), {0}, {1})
    assert (small.edges, large.edges) == ({0}, {1})
    G = build_graft(2, [0, 1], [(0, 1)])
    assert extreme_cuts(G, {0}, {1})[0] == extreme_cuts(G, {0}, {1})[1]


def test_tight_cut_examples():
    assert tight_cut_through(two_path(), {0}, {1}, 1).edges == {1}
    assert tight_cut_through(ladder(), {0}, {2}, 2).edges == {2, 3}
    with pytest.raises(PreconditionEdgeAvoidable):
        tight_cut_through(triangle(), {0}, {1, 2}, 1)
    G = build_graft(3, [0, 1], [(0, 2), (0, 2), (2, 1), (2, 1), (2, 1)])
    with pytest.raises(PreconditionEdgeAvoidable):
        tight_cut_through(G, {0}, {1}, 2)
    G = build_graft(3, [0, 1], [(0, 2), (0, 2), (2, 1)])
    with pytest.raises(NotLinked):
        tight_cut_through(G, {0}, {1}, 2)


def test_pym_lozenge():
    G = ladder()
    P = [path_from_edges(G, 0, [0, 2])]
    Q = [path_from_edges(G, 0, [1, 3])]
    R = pym_merge(G, {0}, {2}, P, Q)
    assert 0 in R.first_edges and 3 in R.last_edges
    assert pym_merge(G, {0}, {2}, [], []).paths == ()
    assert edges_of(pym_merge(G, {0}, {2}, P, P)) == [(0, 2)]


def test_splice_examples():
    G = build_graft(4, [0, 1, 3], [(0, 2), (2, 1), (2, 3)])
    P, Q = path_from_edges(G, 0, [0, 1]), path_from_edges(G, 2, [2])
    assert splice(P, 2, Q).edges == (0, 2)
    with pytest.raises(PivotMissing):
        splice(P, 0, Q)
    H = build_graft(5, [0, 4], [(0, 1), (1, 2), (2, 3), (3, 1), (1, 4)])
    P = path_from_edges(H, 0, [0, 1, 2])      # 0-1-2-3
    Q = path_from_edges(H, 3, [3, 4])         # 3-1-4
    with pytest.raises(NotAPath):
        splice(P, 3, Q)


def test_path_validation():
    with pytest.raises(NotAPath):
        Path((0, 1), (0, 1, 0))
    with pytest.raises(NotAPath):
        path_from_edges(triangle(), 0, [1])


# -- properties against brute force --------------------------------------------

def small_graphs(count, n_max=7, m_max=11):
    out = []
    for seed in range(count):
        n = 3 + seed % (n_max - 2)
        m = 2 + (seed * 7) % (m_max - 1)
        out.append(random_multigraph(seed, n, m, k=2 + seed % 2))
    return out


def sides(G):
    T = sorted(G.terminals)
    return {T[0]}, set(T[1:])


@pytest.mark.parametrize("G", small_graphs(80))
def test_max_system_is_maximum_and_orthogonal(G):
    A, B = sides(G)
    ps, cut = max_path_system(G, A, B)
    best, _ = all_min_cuts(G, A, B)
    assert len(ps) == len(cut) == best == nx_lambda(G, A, B)
    assert cut.edges == delta(G, cut.source_region)
    for p in ps:
        assert len(set(p.edges) & cut.edges) == 1
    assert cut.edges <= ps.edges


@pytest.mark.parametrize("G", small_graphs(80))
def test_lambda_symmetric(G):
    A, B = sides(G)
    assert lambda_(G, A, B) == lambda_(G, B, A)


@pytest.mark.parametrize("G", small_graphs(60, n_max=8))
def test_lattice_order_matches_path_definition(G):
    A, B = sides(G)
    _, cuts = all_min_cuts(G, A, B)
    small, large = extreme_cuts(G, A, B)
    assert small.edges in cuts and large.edges in cuts
    for C in cuts:
        assert cut_leq(G, A, B, small, C) and cut_leq(G, A, B, C, large)
    for C, C2 in itertools.product(cuts, repeat=2):
        assert cut_leq(G, A, B, C, C2) == leq_by_paths(G, A, B, C, C2)


@pytest.mark.parametrize("G", small_graphs(120, m_max=10))
def test_tight_cut_is_orthogonal_to_every_linkage(G):
    A, B = sides(G)
    dA = delta(G, A)
    systems = max_systems(G, A, B)
    if len(systems[0]) != len(dA):
        return
    always = set.intersection(*(set(e for p in S for e in p[0]) for S in systems)) - dA
    for e in sorted(always):
        cut = tight_cut_through(G, A, B, e)
        assert e in cut.edges and is_min_cut(G, A, B, cut.edges)
        for S in systems:
            for p, _ in S:
                assert len(set(p) & cut.edges) == 1


def test_missing_at_most_one_edge_of_target():
    # a linkage of A that misses exactly one edge at B, where no linkage uses a
    # strict subset of its B-edges, forces every linkage to miss at most one
    checked = 0
    for G in small_graphs(200, m_max=10):
        A, B = sides(G)
        dA, dB = delta(G, A), delta(G, B)
        systems = max_systems(G, A, B)
        if len(systems[0]) != len(dA):
            continue
        traces = [frozenset(p[0][-1] for p in S) for S in systems]
        for tr in traces:
            if len(dB - tr) == 1 and not any(o < tr for o in traces):
                checked += 1
                assert all(len(dB - o) <= 1 for o in traces)
    assert checked > 0


@settings(max_examples=200, deadline=None)
@given(st.integers(0, 10**6), st.data())
def test_pym_postconditions(seed, data):
    G = random_multigraph(seed, 3 + seed % 4, 3 + seed % 7, k=2)
    A, B = sides(G)
    systems = []
    for S in max_systems(G, A, B):
        for r in range(len(S) + 1):
            systems.extend(itertools.combinations(S, r))
    P = data.draw(st.sampled_from(systems))
    Q = data.draw(st.sampled_from(systems))
    to_paths = lambda S: [Path(e, v) for e, v in S]  # noqa: E731
    Pp, Qp = to_paths(P), to_paths(Q)
    R = pym_merge(G, A, B, Pp, Qp)
    assert {p.edges[0] for p in Pp} <= R.first_edges
    assert {p.edges[-1] for p in Qp} <= R.last_edges
    for p in R:
        assert p.start in A and p.end in B
    assert len({e for p in R for e in p.edges}) == sum(len(p) for p in R)
