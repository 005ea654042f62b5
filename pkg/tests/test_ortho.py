import itertools

import numpy as np
import pytest

from ksray import (
    NonConvergence, ceg18, complete_bases, complete_graph, cube13,
    cycle_graph, from_edges, graph_from_json, graph_to_json, kcbs5,
    maximal_cliques, ortho_graph, peres24, realize, stream_rng, three_cubes,
    unbiased_basis_triples, build_rayset,
)


def brute_maximal_cliques(g):
    """Oracle: test every subset for clique-ness and maximality."""
    n = g.n
    cliques = []
    for r in range(1, n + 1):
        for sub in itertools.combinations(range(n), r):
            if all(g.adjacency[a, b] for a, b in itertools.combinations(sub, 2)):
                cliques.append(set(sub))
    return sorted(tuple(sorted(c)) for c in cliques
                  if not any(c < d for d in cliques))


def test_ortho_graph_cube13():
    g = ortho_graph(cube13())
    assert g.n == 13 and len(g.edges) == 24 and g.dimension == 3


def test_ortho_graph_standard_basis_triangle():
    rs = build_rayset([(1, 0, 0), (0, 1, 0), (0, 0, 1)], "real")
    g = ortho_graph(rs)
    assert sorted(g.edges) == [(0, 1), (0, 2), (1, 2)]


def test_ortho_graph_kcbs_is_c5():
    g = ortho_graph(kcbs5())
    assert sorted(g.edges) == sorted(cycle_graph(5).edges)


def test_maximal_cliques_triangle():
    assert maximal_cliques(complete_graph(3, 3)) == [(0, 1, 2)]


def test_maximal_cliques_c5():
    got = maximal_cliques(cycle_graph(5))
    assert got == [(0, 1), (0, 4), (1, 2), (2, 3), (3, 4)]


def test_maximal_cliques_cube13():
    got = maximal_cliques(ortho_graph(cube13()))
    triangles = [c for c in got if len(c) == 3]
    assert triangles == [(0, 1, 2), (0, 3, 4), (1, 5, 6), (2, 7, 8)]


@pytest.mark.parametrize("seed", range(6))
def test_maximal_cliques_against_bruteforce(seed):
    rng = stream_rng(808, seed)
    n = int(rng.integers(4, 9))
    adj = rng.random((n, n)) < 0.45
    edges = [(i, j) for i in range(n) for j in range(i + 1, n) if adj[i, j]]
    g = from_edges(n, edges, dimension=n)
    assert maximal_cliques(g) == brute_maximal_cliques(g)


def test_maximal_cliques_deterministic():
    g = ortho_graph(peres24())
    assert maximal_cliques(g) == maximal_cliques(g)


def test_complete_bases_cube13():
    assert len(complete_bases(ortho_graph(cube13()))) == 4


def test_complete_bases_ceg18():
    bases = complete_bases(ortho_graph(ceg18()))
    assert len(bases) == 9
    counts = [0] * 18
    for b in bases:
        for v in b:
            counts[v] += 1
    assert counts == [2] * 18


def test_complete_bases_c5_empty():
    assert complete_bases(cycle_graph(5, dimension=3)) == []


def test_catalog_cliques_respect_dimension():
    for rs in (cube13(), peres24(), ceg18(), kcbs5(), three_cubes(0.0)):
        g = ortho_graph(rs)
        assert max(len(c) for c in maximal_cliques(g)) <= g.dimension


def test_complete_bases_are_exactly_the_full_size_cliques():
    # cross-check against direct subset enumeration on every catalog set
    for rs in (cube13(), peres24(), ceg18(), kcbs5(), three_cubes(0.0)):
        g = ortho_graph(rs)
        d = g.dimension
        brute = [c for c in itertools.combinations(range(g.n), d)
                 if all(g.adjacency[a, b]
                        for a, b in itertools.combinations(c, 2))]
        assert complete_bases(g) == brute


def test_peres24_unbiased_triples():
    rs = peres24()
    found = unbiased_basis_triples(rs)
    assert found is not None
    bases, tri_a, tri_b = found
    assert len(bases) == 6 and sorted(tri_a + tri_b) == list(range(6))
    covered = sorted(v for b in bases for v in b)
    assert covered == list(range(24))
    M = rs.matrix
    for tri in (tri_a, tri_b):
        for a, b in itertools.combinations(tri, 2):
            ov = np.abs(M[list(bases[a])].conj() @ M[list(bases[b])].T) ** 2
            assert np.abs(ov - 0.25).max() < 1e-12


# --- realize ----------------------------------------------------------------

def test_realize_c5_in_3d():
    g = cycle_graph(5, dimension=3)
    rs = realize(g, 3, seed=1)
    M = rs.matrix
    residual = sum(abs(np.vdot(M[i], M[j])) ** 2 for i, j in g.edges)
    assert residual < 1e-10
    realized = ortho_graph(rs)
    for i, j in g.edges:
        assert realized.adjacency[i, j]


def test_realize_c5_in_2d_fails():
    with pytest.raises(NonConvergence) as err:
        realize(cycle_graph(5, dimension=3), 2, seed=3, max_sweeps=200)
    assert err.value.residual > 1e-10


def test_realize_k4_in_3d_fails():
    with pytest.raises(NonConvergence):
        realize(complete_graph(4, dimension=4), 3, seed=5, max_sweeps=200)


def test_realize_strict_mode_separates_nonedges():
    g = cycle_graph(5, dimension=3)
    rs = realize(g, 3, seed=9, strict=True)
    M = rs.matrix
    realized = ortho_graph(rs)
    for i, j in g.edges:
        assert realized.adjacency[i, j]
    for i in range(5):
        for j in range(i + 1, 5):
            if not g.adjacency[i, j]:
                assert abs(np.vdot(M[i], M[j])) > 1e-3


def test_realize_cube13_graph():
    g = ortho_graph(cube13())
    rs = realize(g, 3, seed=11)
    realized = ortho_graph(rs)
    for i, j in g.edges:
        assert realized.adjacency[i, j]


# --- exchange format --------------------------------------------------------

def test_graph_json_roundtrip():
    g = ortho_graph(cube13())
    back = graph_from_json(graph_to_json(g))
    assert back.n == g.n and back.dimension == g.dimension
    assert np.array_equal(back.adjacency, g.adjacency)
