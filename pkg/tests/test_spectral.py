import math
import random
from fractions import Fraction

import numpy as np
import pytest

import helpers
from udm import catalog
from udm.graphs import Graph, edge_subgraph, graph_density, is_uniformly_dense_graph
from udm.spectral import (
    IsolatedVertex,
    NoConvergence,
    SymMatrix,
    edge_laplacian,
    eigen_max,
    jacobi_eigenvalues,
    lambda_max_bounds,
    normalized_laplacian,
    nullity,
    spectral_ud_check,
    spectrum,
)


def _strip(g):
    return edge_subgraph(g, range(g.edge_count))[0]


# --- operators and eigenvalues ---------------------------------------------


def test_complete_graph_lambda_max():
    # closed form n/(n-1)
    assert eigen_max(normalized_laplacian(catalog.complete_graph(4))) == pytest.approx(
        4 / 3, abs=1e-9
    )
    assert eigen_max(normalized_laplacian(catalog.complete_graph(5))) == pytest.approx(
        5 / 4, abs=1e-9
    )


def test_single_edge_spectrum():
    eig = jacobi_eigenvalues(normalized_laplacian(Graph(2, ((0, 1),))))
    assert eig == pytest.approx((0.0, 2.0), abs=1e-12)


def test_tree_lambda_max_is_two():
    for n in (3, 5, 8):
        lam = eigen_max(normalized_laplacian(catalog.path_graph(n)))
        assert lam == pytest.approx(2.0, abs=1e-9)


def test_identity_matrix_eigen_max():
    import numpy as np

    assert jacobi_eigenvalues(np.eye(4)) == (1.0, 1.0, 1.0, 1.0)


def test_isolated_vertex_rejected():
    g = Graph(3, ((0, 1),))
    with pytest.raises(IsolatedVertex):
        normalized_laplacian(g)
    with pytest.raises(IsolatedVertex):
        edge_laplacian(g)


def test_jacobi_against_numpy_on_random_symmetric():
    rng = np.random.default_rng(0)
    for _ in range(40):
        n = int(rng.integers(1, 9))
        a = rng.standard_normal((n, n))
        a = (a + a.T) / 2
        mine = np.array(jacobi_eigenvalues(a))
        ref = np.linalg.eigvalsh(a)
        assert np.abs(mine - ref).max() < 1e-9


def test_jacobi_no_convergence_cap():
    a = np.array([[0.0, 1.0], [1.0, 0.0]])
    with pytest.raises(NoConvergence):
        jacobi_eigenvalues(a, max_sweeps=0)


def test_nullity_identities():
    # n0(L) = component count, n0(L1) = independent cycle count
    c4 = catalog.cycle_graph(4)
    assert nullity(edge_laplacian(c4)) == 1
    assert nullity(edge_laplacian(catalog.path_graph(4))) == 0
    assert nullity(edge_laplacian(catalog.chorded_square((0, 2)))) == 2
    two = Graph(6, ((0, 1), (1, 2), (0, 2), (3, 4), (4, 5), (3, 5)))
    assert nullity(normalized_laplacian(two)) == 2
    zero = SymMatrix(
        ((0.0, 0.0), (0.0, 0.0)),
        ((Fraction(0), Fraction(0)), (Fraction(0), Fraction(0))),
    )
    assert nullity(zero) == 2


def test_nullity_identities_on_random_graphs():
    from udm.graphs import betti, components

    rng = random.Random(18)
    for _ in range(200):
        g = _strip(helpers.random_graph(rng, max_vertices=7))
        if g.edge_count == 0:
            continue
        assert nullity(normalized_laplacian(g)) == components(g)
        assert nullity(edge_laplacian(g)) == betti(g)


def test_big_example_edge_nullity():
    g = catalog.clique_sharing_cycle_edge(5, 20)
    assert nullity(edge_laplacian(g)) == 29 - 22


def test_vertex_and_edge_spectra_share_nonzeros():
    rng = random.Random(19)
    for _ in range(30):
        g = _strip(helpers.random_graph(rng, max_vertices=6))
        if g.edge_count == 0:
            continue
        sv = spectrum(normalized_laplacian(g))
        se = spectrum(edge_laplacian(g))
        nz_v = [x for x in sv.eigenvalues if x > 1e-8]
        nz_e = [x for x in se.eigenvalues if x > 1e-8]
        assert len(nz_v) == len(nz_e)
        assert np.abs(np.array(nz_v) - np.array(nz_e)).max() < 1e-8


def test_eigenvalues_within_classical_bounds():
    rng = random.Random(20)
    for _ in range(50):
        g = _strip(helpers.random_graph(rng, max_vertices=7))
        if g.edge_count == 0:
            continue
        for sym in (normalized_laplacian(g), edge_laplacian(g)):
            eig = jacobi_eigenvalues(sym)
            assert min(eig) >= -1e-10
            assert max(eig) <= 2 + 1e-10


def test_edge_laplacian_matches_incidence_product():
    # independent route: build N^T D^-1 N from the full signed incidence
    from udm import exactla

    rng = random.Random(30)
    for _ in range(25):
        g = _strip(helpers.random_graph(rng, max_vertices=6))
        if g.edge_count == 0:
            continue
        deg = g.degrees()
        n_rows = [
            [
                Fraction(1) if v == u else (Fraction(-1) if v == w else Fraction(0))
                for (u, w) in g.edges
            ]
            for v in range(g.vertex_count)
        ]
        dinv = [
            [Fraction(1, deg[i]) if i == j else Fraction(0) for j in range(g.vertex_count)]
            for i in range(g.vertex_count)
        ]
        product = exactla.mat_mul(
            exactla.mat_mul(exactla.transpose(n_rows), dinv), n_rows
        )
        assert tuple(tuple(r) for r in product) == edge_laplacian(g).exact


def test_edge_laplacian_orientation_invariance():
    # the operator definition fixes +1 at the lower endpoint; conjugating by
    # any sign pattern leaves the spectrum and nullity unchanged
    rng = random.Random(21)
    g = catalog.chorded_square((1, 3))
    base = edge_laplacian(g)
    base_eig = np.array(jacobi_eigenvalues(base))
    for _ in range(10):
        signs = [rng.choice((1, -1)) for _ in range(g.edge_count)]
        flipped = [
            [base.exact[i][j] * signs[i] * signs[j] for j in range(g.edge_count)]
            for i in range(g.edge_count)
        ]
        sym = SymMatrix(
            tuple(tuple(float(x) for x in row) for row in flipped),
            tuple(tuple(row) for row in flipped),
            exact=tuple(tuple(row) for row in flipped),
        )
        assert nullity(sym) == nullity(base)
        assert np.abs(np.array(jacobi_eigenvalues(sym)) - base_eig).max() < 1e-9


# --- uniform density via spectra -------------------------------------------


def test_spectral_check_tadpole():
    out = spectral_ud_check(catalog.tadpole_graph())
    assert not out.consistent
    assert out.violator == (1, 2, 3)
    assert out.violator_density == Fraction(3, 2)


def test_spectral_check_consistent_cases():
    assert spectral_ud_check(catalog.cycle_graph(4)).consistent
    assert spectral_ud_check(catalog.path_graph(4)).consistent
    assert spectral_ud_check(catalog.complete_graph(4)).consistent


def test_spectral_check_matches_density_oracle():
    for g in helpers.connected_graphs(7):
        assert (
            spectral_ud_check(g).consistent
            == is_uniformly_dense_graph(g).is_uniformly_dense
        )


# --- lambda-max bounds ------------------------------------------------------


def test_tree_equalities():
    g = catalog.path_graph(4)
    report = lambda_max_bounds(g, subsets="all")
    assert report.lambda_max == pytest.approx(2.0, abs=1e-9)
    assert report.global_lower.holds
    assert report.global_lower.rhs == pytest.approx(2.0, abs=1e-12)
    # every restriction of a tree is again a forest: equality throughout
    assert report.subgraph_worst.lhs == pytest.approx(2.0, abs=1e-9)
    assert not report.subgraph_violations


def test_k4_packing_bound_equality():
    report = lambda_max_bounds(catalog.complete_graph(4), subsets="all")
    assert report.tree_packing == 2
    assert report.packing_bound.rhs == pytest.approx(4 / 3, abs=1e-12)
    assert report.lambda_max == pytest.approx(4 / 3, abs=1e-9)
    assert report.packing_bound.holds


def test_packing_bound_at_least_global():
    for g in helpers.connected_graphs(6):
        report = lambda_max_bounds(g, subsets="sample:16")
        if report.packing_bound is not None:
            assert report.packing_bound.rhs >= report.global_lower.rhs - 1e-12


def test_clique_cycle_subgraph_violation():
    g = catalog.clique_sharing_cycle_edge(5, 20)
    clique_edges = tuple(range(10))
    sub, _ = edge_subgraph(g, clique_edges)
    lam = eigen_max(normalized_laplacian(sub))
    assert lam == pytest.approx(1.25, abs=1e-9)
    assert lam < 44 / 29
    # the connected-subset report finds the violation on the smaller sibling
    small = catalog.clique_sharing_cycle_edge(5, 12)
    report = lambda_max_bounds(small, subsets="connected")
    assert report.uniformly_dense is False
    assert any(v.subset == clique_edges for v in report.subgraph_violations)


def test_subgraph_bound_on_ud_graphs():
    # uniformly dense graphs up to 12 edges: lambda_max(G|A) >= 2/rho(G)
    # for every nonempty A
    pool = [
        g for g in helpers.connected_graphs(6)
        if is_uniformly_dense_graph(g).is_uniformly_dense
    ]
    pool += [catalog.hypercube_graph(3), catalog.theta_graph(3, 3, 6)]
    for g in pool:
        assert g.edge_count <= 12
        assert is_uniformly_dense_graph(g).is_uniformly_dense
        rhs = 2 / float(graph_density(g))
        for mask in range(1, 1 << g.edge_count):
            subset = [i for i in range(g.edge_count) if mask >> i & 1]
            sub, _ = edge_subgraph(g, subset)
            assert eigen_max(normalized_laplacian(sub)) >= rhs - 1e-9


def test_ud_graphs_satisfy_global_and_packing_bounds_q3():
    report = lambda_max_bounds(catalog.hypercube_graph(3), subsets="sample:32")
    assert report.uniformly_dense
    assert report.global_lower.holds
    assert report.packing_bound.holds
    assert report.tree_packing >= math.floor(12 / 7)
