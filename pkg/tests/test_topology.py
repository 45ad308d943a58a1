import pytest
from hypothesis import given
from hypothesis import strategies as st

from kicked_meanfield.topology import (
    ConnectivityGraph,
    GraphError,
    chain,
    complete,
    empty,
    from_descriptor,
    heavy_hex,
    load_edge_list,
    mean_degree,
    ring,
)


def test_load_edge_list_infers_size():
    g = load_edge_list("0 1\n1 2")
    assert (g.n_qubits, g.n_edges) == (3, 2)
    assert g.mean_degree() == 4 / 3


def test_load_edge_list_header_and_comments():
    g = load_edge_list("# device\nqubits 5\n\n  0   1  \n# trailing\n")
    assert (g.n_qubits, g.n_edges) == (5, 1)
    assert g.mean_degree() == 0.4


@pytest.mark.parametrize(
    "text, fragment",
    [
        ("0 0", "self-loop"),
        ("0 1\n1 0", "duplicate"),
        ("qubits 2\n0 2", "out of range"),
        ("0 1\nfoo bar", "line 2"),
        ("0 1 2", "line 1"),
        ("0 -1", "line 1"),
        ("", "empty"),
    ],
)
def test_load_edge_list_errors(text, fragment):
    with pytest.raises(GraphError, match=fragment):
        load_edge_list(text)


def test_builtin_families():
    assert ring(12).mean_degree() == 2
    assert ring(8).n_edges == 8
    c = chain(2)
    assert c.n_edges == 1 and c.mean_degree() == 1
    k = complete(4)
    assert k.n_edges == 6 and k.mean_degree() == 3
    assert mean_degree(empty(4)) == 0
    with pytest.raises(GraphError):
        ring(2)


def test_heavy_hex_canonical():
    g = heavy_hex()
    assert (g.n_qubits, g.n_edges) == (127, 144)
    assert g.mean_degree() == 288 / 127
    assert max(g.degrees()) == 3
    assert g.is_connected()


def test_heavy_hex_eagle_numbering():
    g = heavy_hex()
    # spot checks of the published Eagle coupling map
    assert g.adjacency[0] == (1, 14)
    assert g.adjacency[14] == (0, 18)
    assert g.adjacency[62] == (61, 63, 72)
    assert g.adjacency[13] == (12,)
    assert g.adjacency[126] == (112, 125)


def test_heavy_hex_single_cell():
    g = heavy_hex(2, 5)
    assert g.n_qubits == 12 and g.n_edges == 12
    assert set(g.degrees()) <= {1, 2, 3}
    assert g.is_connected()


def test_heavy_hex_rejects_zero_size():
    with pytest.raises(GraphError):
        heavy_hex(0, 5)
    with pytest.raises(GraphError):
        heavy_hex(3, 0)


@given(st.integers(1, 8), st.integers(1, 20))
def test_heavy_hex_degree_bound(rows, cols):
    g = heavy_hex(rows, cols)
    assert max(g.degrees(), default=0) <= 3
    assert sum(g.degrees()) == 2 * g.n_edges


GRAPHS = [ring(7), chain(5), complete(5), empty(3), heavy_hex(), heavy_hex(3, 7)]


@pytest.mark.parametrize("g", GRAPHS)
def test_mean_degree_from_adjacency(g):
    assert sum(len(n) for n in g.adjacency) / g.n_qubits == g.mean_degree()


@pytest.mark.parametrize("g", GRAPHS)
def test_edge_list_round_trip(g):
    back = load_edge_list(g.to_edge_list())
    assert back.n_qubits == g.n_qubits and back.edges == g.edges


@st.composite
def graphs(draw):
    n = draw(st.integers(1, 12))
    pairs = draw(st.sets(st.tuples(st.integers(0, n - 1), st.integers(0, n - 1)).filter(lambda p: p[0] < p[1])))
    return ConnectivityGraph(n, frozenset(pairs))


@given(graphs())
def test_round_trip_property(g):
    assert load_edge_list(g.to_edge_list()).edges == g.edges


def test_from_descriptor(tmp_path):
    assert from_descriptor("ring:6").n_edges == 6
    assert from_descriptor("heavy-hex").n_qubits == 127
    assert from_descriptor("heavy-hex:2,5").n_qubits == 12
    path = tmp_path / "g.txt"
    path.write_text("0 1\n1 2\n")
    assert from_descriptor(str(path)).n_edges == 2
    with pytest.raises(GraphError):
        from_descriptor("nonsense:3")
    with pytest.raises(GraphError):
        from_descriptor("ring:x")
