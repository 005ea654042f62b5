import itertools
import math

import numpy as np
import pytest

from ksray import (
    bounds_report, ceg18, complete_graph, cube13,
    cycle_graph, empty_graph, fractional_packing, from_edges,
    independence_number, kcbs5, lovasz_theta, maximal_cliques, ortho_graph,
    peres24, stream_rng, theta_certificate, three_cubes,
)
from ksray.bounds import TooLarge

SQRT5 = math.sqrt(5.0)


def brute_alpha(g):
    """Oracle: all subsets."""
    best = 0
    for mask in range(1 << g.n):
        sub = [v for v in range(g.n) if mask >> v & 1]
        if len(sub) > best and not any(
                g.adjacency[a, b] for a, b in itertools.combinations(sub, 2)):
            best = len(sub)
    return best


# --- independence number ----------------------------------------------------

def test_alpha_c5():
    alpha, witness = independence_number(cycle_graph(5))
    assert alpha == 2 and len(witness) == 2


def test_alpha_k4():
    alpha, _ = independence_number(complete_graph(4, 4))
    assert alpha == 1


def test_alpha_cube13_vs_bruteforce():
    g = ortho_graph(cube13())
    alpha, witness = independence_number(g)
    assert alpha == brute_alpha(g) == 5
    assert not any(g.adjacency[a, b]
                   for a, b in itertools.combinations(witness, 2))


@pytest.mark.parametrize("seed", range(5))
def test_alpha_random_graphs(seed):
    rng = stream_rng(909, seed)
    n = int(rng.integers(5, 13))
    adj = rng.random((n, n)) < 0.4
    edges = [(i, j) for i in range(n) for j in range(i + 1, n) if adj[i, j]]
    g = from_edges(n, edges, dimension=n)
    alpha, _ = independence_number(g)
    assert alpha == brute_alpha(g)


def test_alpha_guard():
    with pytest.raises(TooLarge):
        independence_number(empty_graph(65, 3))


# --- Lovasz theta -----------------------------------------------------------

def test_theta_c5():
    assert abs(lovasz_theta(cycle_graph(5)) - SQRT5) < 1e-5


def test_theta_complete_graphs():
    for n in (2, 4, 6):
        assert abs(lovasz_theta(complete_graph(n, n)) - 1.0) < 1e-5


def test_theta_edgeless():
    assert abs(lovasz_theta(empty_graph(5, 3)) - 5.0) < 1e-5


def test_theta_certified_gap():
    cert = theta_certificate(cycle_graph(5), eps=1e-6)
    assert cert.gap <= 1e-6
    assert cert.lower <= SQRT5 <= cert.upper + 1e-12
    X = cert.primal_matrix
    assert abs(np.trace(X) - 1.0) < 1e-12
    w = np.linalg.eigvalsh(X)
    assert w[0] > -1e-14
    for i, j in cycle_graph(5).edges:
        assert abs(X[i, j]) == 0.0


def test_theta_disjoint_union_adds():
    g = from_edges(10, [(k, (k + 1) % 5) for k in range(5)]
                   + [(5 + k, 5 + (k + 1) % 5) for k in range(5)], dimension=3)
    assert abs(lovasz_theta(g) - 2 * SQRT5) < 1e-4


def test_theta_monotone_under_edge_deletion():
    full = lovasz_theta(cycle_graph(5))
    minus = lovasz_theta(from_edges(5, [(0, 1), (1, 2), (2, 3), (3, 4)],
                                    dimension=3))
    assert minus >= full - 1e-5
    assert abs(minus - 3.0) < 1e-5  # the path P5 is perfect, alpha = 3


# --- fractional packing -----------------------------------------------------

def test_packing_c5():
    value, weights = fractional_packing(cycle_graph(5))
    assert abs(value - 2.5) < 1e-9
    assert np.abs(weights - 0.5).max() < 1e-9


def test_packing_k4():
    value, _ = fractional_packing(complete_graph(4, 4))
    assert abs(value - 1.0) < 1e-9


def test_packing_edgeless():
    value, _ = fractional_packing(empty_graph(3, 3))
    assert abs(value - 3.0) < 1e-9


def test_packing_weights_feasible_on_catalogs():
    for rs in (cube13(), kcbs5(), ceg18()):
        g = ortho_graph(rs)
        _, weights = fractional_packing(g)
        assert weights.min() > -1e-12
        for clique in maximal_cliques(g):
            assert weights[list(clique)].sum() <= 1.0 + 1e-9


# --- combined report --------------------------------------------------------

def test_bounds_report_c5():
    rep = bounds_report(cycle_graph(5))
    assert rep.alpha == 2
    assert abs(rep.theta - SQRT5) < 1e-5
    assert abs(rep.alpha_star - 2.5) < 1e-9


def test_bounds_report_k3():
    rep = bounds_report(complete_graph(3, 3))
    assert rep.alpha == 1
    assert abs(rep.theta - 1.0) < 1e-5
    assert abs(rep.alpha_star - 1.0) < 1e-9


def test_sandwich_on_catalog_graphs():
    for rs in (cube13(), kcbs5(), ceg18(), peres24(), three_cubes(0.0)):
        rep = bounds_report(ortho_graph(rs))
        assert rep.alpha <= rep.theta + 1e-5
        assert rep.theta <= rep.alpha_star + 2e-5
