import pytest

from udm import catalog
from udm.graphs import betti, components, cycle_matroid, graph_density


def test_tadpole_graph_matches_matroid():
    assert cycle_matroid(catalog.tadpole_graph()) == catalog.tadpole_matroid()


def test_theta_graph_counts():
    g = catalog.theta_graph(2, 3, 6)
    assert components(g) == 1 and betti(g) == 2
    assert g.edge_count == 11 and g.vertex_count == 10
    fig8 = catalog.theta_graph(0, 4, 4)
    assert fig8.vertex_count == 7 and fig8.edge_count == 8


def test_theta_graph_rejects_multigraph_shapes():
    with pytest.raises(ValueError):
        catalog.theta_graph(1, 1, 5)
    with pytest.raises(ValueError):
        catalog.theta_graph(0, 2, 4)


def test_chorded_square_requires_diagonal():
    with pytest.raises(ValueError):
        catalog.chorded_square((0, 1))


def test_clique_sharing_cycle_edge_counts():
    g = catalog.clique_sharing_cycle_edge(5, 20)
    assert g.vertex_count == 23 and g.edge_count == 29
    assert components(g) == 1
    assert graph_density(g).numerator == 29


def test_hypercube():
    q3 = catalog.hypercube_graph(3)
    assert q3.vertex_count == 8 and q3.edge_count == 12
    assert all(d == 3 for d in q3.degrees())


def test_corpus_hash_stable():
    assert catalog.corpus_hash() == catalog.corpus_hash()
    assert len(catalog.corpus_hash()) == 16
