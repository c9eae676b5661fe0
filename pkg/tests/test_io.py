import numpy as np
import pytest

from vnlab.errors import EdgeListParseError
from vnlab.graph import Namespace, VertexLabel, make_graph
from vnlab.io import read_edgelist, read_features, write_edgelist, write_features


def test_read_edgelist_basic(tmp_path):
    p = tmp_path / "g.txt"
    p.write_text("4 3\n1 2\n2 3\n3 4\n")
    g = read_edgelist(p)
    assert g.n == 4
    assert g.edge_count == 3
    assert g.has_edge(VertexLabel.v(3), VertexLabel.v(4))


def test_read_edgelist_namespace(tmp_path):
    p = tmp_path / "g.txt"
    p.write_text("3 1\n1 3\n")
    g = read_edgelist(p, namespace=Namespace.V2)
    assert g.has_edge(VertexLabel.u(1), VertexLabel.u(3))


def test_isolated_vertices_survive(tmp_path):
    p = tmp_path / "g.txt"
    p.write_text("5 1\n1 2\n")
    assert read_edgelist(p).n == 5


def test_write_then_read_same_graph(tmp_path):
    g = make_graph(6, [(1, 2), (2, 3), (3, 4), (4, 5), (3, 6), (4, 6)])
    p = tmp_path / "out" / "g.txt"
    write_edgelist(g, p)
    assert read_edgelist(p) == g
    assert p.read_text().splitlines()[0] == "6 6"


@pytest.mark.parametrize(
    "text, line",
    [
        ("3 1\n1 1\n", 2),
        ("3 1\n1 4\n", 2),
        ("3 2\n1 2\n", 3),
        ("3 2\n1 2\n2 1\n", 3),
        ("3 1\n1 x\n", 2),
        ("3\n", 1),
    ],
)
def test_malformed_edge_lists_name_the_line(tmp_path, text, line):
    p = tmp_path / "bad.txt"
    p.write_text(text)
    with pytest.raises(EdgeListParseError) as err:
        read_edgelist(p)
    assert err.value.line == line
    assert f"bad.txt:{line}" in str(err.value)


def test_missing_file_hint(tmp_path):
    with pytest.raises(FileNotFoundError):
        read_edgelist(tmp_path / "nope.txt")


def test_features_round_trip(tmp_path):
    X = np.array([[1.0, 0.5], [0.0, -2.25], [3.0, 1e-3]])
    g = make_graph(3, [(1, 2)], features=X)
    p = tmp_path / "g.feat"
    write_features(g, p)
    assert np.array_equal(read_features(p, n=3), X)


def test_features_without_header(tmp_path):
    p = tmp_path / "g.feat"
    p.write_text("1.0\n2.0\n")
    X = read_features(p)
    assert X.shape == (2, 1)


def test_feature_row_width_checked(tmp_path):
    p = tmp_path / "g.feat"
    p.write_text("1.0 2.0\n3.0\n")
    with pytest.raises(EdgeListParseError):
        read_features(p)


def test_feature_row_count_checked(tmp_path):
    p = tmp_path / "g.feat"
    p.write_text("1.0\n2.0\n")
    with pytest.raises(EdgeListParseError):
        read_features(p, n=3)
