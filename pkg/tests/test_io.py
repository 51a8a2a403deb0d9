import json
from fractions import Fraction

import pytest

from udm import catalog, io
from udm.graphs import cycle_matroid
from udm.matroid import is_uniformly_dense
from udm.measure import BasisMeasure


def test_matroid_round_trip(tmp_path):
    m = catalog.tadpole_matroid()
    path = tmp_path / "m.json"
    path.write_text(json.dumps(io.dump_matroid(m)))
    assert io.load_matroid(path) == m


def test_matroid_one_indexed_round_trip(tmp_path):
    m = catalog.tadpole_matroid()
    path = tmp_path / "m.json"
    dumped = io.dump_matroid(m, one_indexed=True)
    assert dumped["bases"][0][0] == 1
    path.write_text(json.dumps(dumped))
    assert io.load_matroid(path, one_indexed=True) == m


def test_matroid_parse_errors(tmp_path):
    path = tmp_path / "bad.json"
    path.write_text("{not json")
    with pytest.raises(io.ParseError, match="invalid JSON"):
        io.load_matroid(path)
    path.write_text(json.dumps({"n": 3}))
    with pytest.raises(io.ParseError, match="bases"):
        io.load_matroid(path)
    path.write_text(json.dumps({"n": 3, "rank": 2, "bases": [[0]]}))
    with pytest.raises(io.ParseError, match="rank"):
        io.load_matroid(path)


def test_graph_round_trip(tmp_path):
    g = catalog.chorded_square((0, 2))
    path = tmp_path / "g.txt"
    path.write_text(io.dump_graph(g))
    assert io.load_graph(path) == g
    path.write_text(io.dump_graph(g, one_indexed=True))
    assert io.load_graph(path, one_indexed=True) == g


def test_graph_parse_errors_name_lines(tmp_path):
    path = tmp_path / "g.txt"
    path.write_text("3 2\n0 1\n")
    with pytest.raises(io.ParseError, match="promises 2 edges"):
        io.load_graph(path)
    path.write_text("3 1\n0 1 2\n")
    with pytest.raises(io.ParseError, match="line 2"):
        io.load_graph(path)


def test_representation_round_trip(tmp_path):
    from udm.graphs import reduced_incidence_matrix

    x = reduced_incidence_matrix(catalog.chorded_square((1, 3)))
    path = tmp_path / "x.json"
    path.write_text(json.dumps(io.dump_representation(x)))
    assert io.load_representation(path) == x


def test_representation_rejects_floats(tmp_path):
    path = tmp_path / "x.json"
    path.write_text(json.dumps({"entries": [[0.5, 1.0]]}))
    with pytest.raises(io.ParseError, match="exact rational"):
        io.load_representation(path)


def test_projection_accepts_floats(tmp_path):
    path = tmp_path / "t.json"
    path.write_text(json.dumps({"entries": [[1.0, 0.0], [0.0, 0.0]]}))
    t = io.load_projection(path)
    assert not t.is_exact and t.rank == 1


def test_measure_dump_fractions():
    m = catalog.tadpole_matroid()
    mu = BasisMeasure(m, (Fraction(1, 3),) * 3)
    data = io.dump_measure(mu)
    assert data["total"] == "1"
    assert all(item["weight"] == "1/3" for item in data["weights"])


def test_certificate_dump_one_indexed():
    cert = is_uniformly_dense(catalog.tadpole_matroid())
    data = io.dump_certificate(cert, one_indexed=True)
    assert data["violator"] == [2, 3, 4]
    assert data["violator_density"] == "3/2"
