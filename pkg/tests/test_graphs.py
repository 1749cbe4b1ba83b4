import random
from itertools import combinations, permutations

import networkx as nx
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from polysurf import graphs as gr


# --- brute-force oracles ------------------------------------------------------------


def _paths_exist(pairs, free, adj) -> bool:
    """Vertex-disjoint paths for every pair, internal vertices taken from free."""
    if not pairs:
        return True
    (u, v), rest = pairs[0], pairs[1:]
    if v in adj[u]:
        return _paths_exist(rest, free, adj)
    for k in range(1, len(free) + 1):
        for seq in permutations(sorted(free), k):
            walk = (u, *seq, v)
            if all(walk[i + 1] in adj[walk[i]] for i in range(len(walk) - 1)):
                if _paths_exist(rest, free - set(seq), adj):
                    return True
    return False


def kuratowski_nonplanar(g: gr.Graph) -> bool:
    """Search every placement of a K5 or K3,3 subdivision (small graphs only)."""
    adj = [set(a) for a in g.adj]
    vs = set(range(g.n))
    for branch in combinations(range(g.n), 5):
        if _paths_exist(list(combinations(branch, 2)), vs - set(branch), adj):
            return True
    for branch in combinations(range(g.n), 6):
        first = branch[0]
        for side in combinations(branch[1:], 2):
            a = (first, *side)
            b = tuple(x for x in branch if x not in a)
            if _paths_exist([(x, y) for x in a for y in b], vs - set(branch), adj):
                return True
    return False


def three_tree_oracle(n: int, edges: frozenset) -> bool:
    """Exhaustive: try every removable vertex, not just the first one found."""
    verts = {v for e in edges for v in e} if edges else set()
    if n == 4:
        return len(edges) == 6
    adj = {v: set() for v in range(n)}
    for e in edges:
        a, b = tuple(e)
        adj[a].add(b)
        adj[b].add(a)
    if len(verts) != n:
        return False
    for v in range(n):
        if len(adj[v]) == 3 and all(frozenset(p) in edges for p in combinations(adj[v], 2)):
            rest = frozenset(e for e in edges if v not in e)
            relabel = {x: i for i, x in enumerate(sorted(set(range(n)) - {v}))}
            rest = frozenset(frozenset(relabel[x] for x in e) for e in rest)
            if three_tree_oracle(n - 1, rest):
                return True
    return False


def _edges(g):
    return frozenset(frozenset(e) for e in g.edges())


def random_graph(rng, n, p):
    return gr.Graph(n, [e for e in combinations(range(n), 2) if rng.random() < p])


# --- text format ------------------------------------------------------------------


def test_format_round_trip():
    g = gr.petersen()
    h = gr.parse_graph(gr.format_graph(g))
    assert h.n == g.n and _edges(h) == _edges(g)


def test_parse_comments_and_blank_lines():
    g = gr.parse_graph("# a path\n3 2\n\n0 1  # first\n1 2\n")
    assert g.n == 3 and g.m == 2


@pytest.mark.parametrize(
    "text, line",
    [
        ("", None),
        ("3\n", 1),
        ("3 1\n0 1\n1 2\n", 1),
        ("3 1\n0 x\n", 2),
        ("3 1\n0 3\n", 2),
        ("3 1\n1 1\n", 2),
        ("3 2\n0 1\n1 0\n", 3),
    ],
)
def test_parse_errors_carry_line(text, line):
    with pytest.raises(gr.GraphFormatError) as err:
        gr.parse_graph(text)
    assert err.value.line == line


def test_graph_rejects_loops_and_bad_edges():
    with pytest.raises(ValueError):
        gr.Graph(2, [(0, 0)])
    with pytest.raises(ValueError):
        gr.Graph(2, [(0, 2)])


# --- generators ------------------------------------------------------------------


def test_generator_examples():
    assert (gr.hypercube(3).n, gr.hypercube(3).m) == (8, 12)
    assert (gr.hypercube(0).n, gr.hypercube(0).m) == (1, 0)
    assert gr.complete_bipartite(4, 4).m == 16
    assert (gr.complete(1).n, gr.complete(1).m) == (1, 0)
    assert gr.petersen().degrees() == [3] * 10


@pytest.mark.parametrize("d", range(7))
def test_hypercube_structure(d):
    g = gr.hypercube(d)
    assert g.n == 2**d and all(x == d for x in g.degrees())
    assert g.is_bipartite() and g.is_connected()
    for u, v in g.edges():
        assert bin(u ^ v).count("1") == 1


def test_subdivide_examples():
    s = gr.subdivide_graph(gr.complete(5), 1)
    assert (s.n, s.m) == (15, 20)
    p3 = gr.subdivide_graph(gr.path(2), 1)
    assert nx.is_isomorphic(p3.to_networkx(), nx.path_graph(3))
    s2 = gr.subdivide_graph(gr.petersen(), 2)
    assert (s2.n, s2.m) == (10 + 2 * 15, 3 * 15)
    with pytest.raises(ValueError):
        gr.subdivide_graph(gr.path(2), 0)


@settings(max_examples=40, deadline=None)
@given(st.integers(1, 9), st.floats(0.1, 0.9), st.integers(0, 10**6))
def test_subdivision_is_bipartite_and_counts(n, p, seed):
    g = gr.gnp(n, p, seed)
    s = gr.subdivide_graph(g, 1)
    assert s.is_bipartite()
    assert (s.n, s.m) == (g.n + g.m, 2 * g.m)
    if g.m:
        assert max(len(c) for c in nx.find_cliques(s.to_networkx())) <= 2


def test_triple_stacked_triangle():
    g = gr.triple_stacked_triangle()
    assert (g.n, g.m) == (6, 12)
    assert not gr.is_planar(g)
    # deleting a triangle edge leaves K3,3; deleting a K3,3 edge gives a planar graph
    triangle = {frozenset(e) for e in [(0, 1), (1, 2), (0, 2)]}
    for e in g.edges():
        assert gr.is_planar(g.without_edges([e])) == (frozenset(e) not in triangle)
    assert gr.contains_subgraph(g, gr.complete_bipartite(3, 3)) is not None


# --- planarity --------------------------------------------------------------------


def test_planarity_examples():
    assert gr.is_planar(gr.complete(4))
    assert not gr.is_planar(gr.complete(5))
    assert not gr.is_planar(gr.complete_bipartite(3, 3))


def test_planarity_all_graphs_up_to_five_vertices():
    for n in range(1, 6):
        pairs = list(combinations(range(n), 2))
        for mask in range(1 << len(pairs)):
            g = gr.Graph(n, [pairs[i] for i in range(len(pairs)) if mask >> i & 1])
            assert gr.is_planar(g) == (not kuratowski_nonplanar(g))


def test_planarity_random_graphs_six_and_seven_vertices():
    rng = random.Random(7)
    nonplanar = 0
    for _ in range(400):
        n = rng.choice([6, 7])
        g = random_graph(rng, n, rng.choice([0.4, 0.6, 0.75, 0.9]))
        want = not kuratowski_nonplanar(g)
        assert gr.is_planar(g) == want
        nonplanar += not want
    assert nonplanar > 20


def test_planar_generator_is_planar():
    for seed in range(30):
        assert gr.is_planar(gr.random_planar(5 + seed, seed))


# --- 3-trees ----------------------------------------------------------------------


def test_three_tree_examples():
    assert gr.is_three_tree(gr.complete(4)) == []
    for s in range(100):
        g = gr.random_three_tree(30, s)
        seq = gr.is_three_tree(g)
        assert seq is not None and len(seq) == 26


def test_three_tree_recognizer_matches_exhaustive_oracle():
    rng = random.Random(3)
    cases = [gr.triple_stacked_triangle(), gr.complete(5), gr.complete(4)]
    cases += [gr.random_three_tree(rng.randint(4, 8), s) for s in range(20)]
    for _ in range(60):
        n = rng.randint(5, 8)
        g = gr.random_three_tree(n, rng.randrange(10**6))
        # swap one edge for a non-edge: same edge count, usually not a 3-tree
        non = [e for e in combinations(range(n), 2) if not g.has_edge(*e)]
        if non:
            g = g.without_edges([g.edges()[rng.randrange(g.m)]]).with_edges([rng.choice(non)])
        cases.append(g)
    agree = {True: 0, False: 0}
    for g in cases:
        want = three_tree_oracle(g.n, _edges(g))
        assert (gr.is_three_tree(g) is not None) == want
        agree[want] += 1
    assert agree[True] and agree[False]


def test_three_tree_sequence_replays():
    g, steps = gr.random_three_tree(12, 5, with_sequence=True)
    seq = gr.is_three_tree(g)
    base = set(range(g.n)) - {x for x, _ in seq}
    h = gr.Graph(g.n, [e for e in combinations(sorted(base), 2)])
    for x, tri in seq:
        assert all(h.has_edge(a, b) for a, b in combinations(tri, 2))
        h = h.with_edges([(x, t) for t in tri])
    assert _edges(h) == _edges(g)
    assert len(steps) == 8


# --- subgraphs, K5,t, isomorphism -------------------------------------------------------


def test_contains_subgraph_examples():
    assert gr.contains_subgraph(gr.triple_stacked_triangle(), gr.complete_bipartite(3, 3)) is not None
    assert gr.contains_subgraph(gr.subdivide_graph(gr.complete(5), 1), gr.complete(5)) is None
    hit = gr.contains_subgraph(gr.complete(6), gr.complete(5))
    assert hit is not None and len(set(hit.values())) == 5
    with pytest.raises(gr.PatternTooLarge):
        gr.contains_subgraph(gr.complete(12), gr.cycle(11))


def test_monomorphism_matches_networkx():
    rng = random.Random(5)
    for _ in range(60):
        host = random_graph(rng, rng.randint(5, 9), 0.5)
        pat = random_graph(rng, rng.randint(3, 5), 0.6)
        got = gr.find_monomorphism(host, pat)
        gm = nx.algorithms.isomorphism.GraphMatcher(host.to_networkx(), pat.to_networkx())
        want = gm.subgraph_is_monomorphic()
        assert (got is not None) == want
        if got is not None:
            assert len(set(got.values())) == pat.n
            assert all(host.has_edge(got[u], got[v]) for u, v in pat.edges())


def test_k5t_examples():
    five, common = gr.contains_k5t(gr.complete_bipartite(5, 81), 81)
    assert len(five) == 5 and len(common) == 81
    assert gr.contains_k5t(gr.complete_bipartite(5, 80), 81) is None
    q6 = gr.hypercube(6)
    # brute force: any two vertices of Q6 have at most two common neighbours
    assert max(len(q6.adj[u] & q6.adj[v]) for u, v in combinations(range(q6.n), 2)) == 2
    assert gr.contains_k5t(q6, 81) is None
    assert gr.contains_k5t(gr.complete(7), 2) is not None


def test_isomorphism_matches_networkx():
    rng = random.Random(9)
    for _ in range(80):
        g = random_graph(rng, rng.randint(1, 10), rng.random())
        perm = list(range(g.n))
        rng.shuffle(perm)
        h = gr.Graph(g.n, [(perm[u], perm[v]) for u, v in g.edges()])
        if rng.random() < 0.5 and g.m and g.m < g.n * (g.n - 1) // 2:
            non = [e for e in combinations(range(g.n), 2) if not h.has_edge(*e)]
            h = h.without_edges([h.edges()[0]]).with_edges([rng.choice(non)])
        iso = gr.find_isomorphism(g, h)
        assert (iso is not None) == nx.is_isomorphic(g.to_networkx(), h.to_networkx())
        if iso is not None:
            assert gr.is_isomorphism(g, h, iso)


# --- obstructions and density -------------------------------------------------------


def test_obstruction_examples():
    assert [o.kind for o in gr.obstruction_scan(gr.complete(5))] == ["K5"]
    assert gr.obstruction_scan(gr.subdivide_graph(gr.complete(10), 1)) == []
    assert gr.obstruction_scan(gr.hypercube(4)) == []
    big = gr.complete_bipartite(5, 81)
    found = gr.obstruction_scan(big)
    assert [o.kind for o in found] == ["K5_81"] and gr.witness_ok(big, found[0])


def test_scan_reports_every_kind():
    # K5 joined to K5,81 joined to a triple-stacked triangle
    parts = [gr.complete(5), gr.complete_bipartite(5, 81), gr.triple_stacked_triangle()]
    edges, off = [], 0
    for p in parts:
        edges += [(u + off, v + off) for u, v in p.edges()]
        off += p.n
    g = gr.Graph(off, edges)
    found = gr.obstruction_scan(g)
    assert {o.kind for o in found} == {"K5", "K5_81", "TripleStackedTriangle"}
    assert all(gr.witness_ok(g, o) for o in found)


def test_nonplanar_three_trees_contain_triple_stacked_triangle():
    for seed in range(60):
        g = gr.random_three_tree(12, seed)
        kinds = {o.kind for o in gr.obstruction_scan(g)}
        assert gr.is_planar(g) == ("TripleStackedTriangle" not in kinds)


def test_density_stats_examples():
    assert gr.density_stats(gr.hypercube(6)).avg_degree == 6
    assert gr.density_stats(gr.complete_bipartite(4, 4)).avg_degree == 4
    st_ = gr.density_stats(gr.hypercube(5))
    assert st_.hypercube_edges == 80 and st_.kst_reference == pytest.approx(32**1.8)
