
import networkx as nx
import numpy as np
import pytest

from factorcrit.graph import Graph, complete
from factorcrit.graph6 import (
    Graph6Error,
    Graph6HeaderError,
    Graph6TrailingDataError,
    Graph6TruncatedError,
    emit_graph6,
    parse_graph6,
)
from oracles import all_labeled_graphs, from_nx, to_nx


def _nx_g6(g: Graph) -> bytes:
    return nx.to_graph6_bytes(to_nx(g), header=False).strip()


def test_k1_encoding():
    # N(1) = chr(1 + 63) and no data bytes
    assert emit_graph6(complete(1)) == b"@"


def test_hand_encoded_small_graphs():
    # K_2: N(2)='A', one bit 1 padded to 100000 -> 32 + 63 = '_'
    assert emit_graph6(complete(2)) == b"A_"
    # K_4: 'C' then six ones -> 63 + 63 = '~'
    assert emit_graph6(complete(4)) == b"C~"
    # path 0-1-2: bits x01=1, x02=0, x12=1 -> 101000 = 40 -> 'g'
    assert emit_graph6(Graph.from_edges(3, [(0, 1), (1, 2)])) == b"Bg"


def test_round_trip_k5():
    assert parse_graph6(emit_graph6(complete(5))) == complete(5)


def test_errors_are_distinct():
    with pytest.raises(Graph6HeaderError):
        parse_graph6(b"")
    with pytest.raises(Graph6HeaderError):
        parse_graph6(b"\x01")
    with pytest.raises(Graph6HeaderError):
        parse_graph6(b"~??")
    with pytest.raises(Graph6TruncatedError):
        parse_graph6(b"D?")
    with pytest.raises(Graph6TrailingDataError):
        parse_graph6(b"C~~")
    with pytest.raises(Graph6TrailingDataError):
        # K_2 with a stray padding bit
        parse_graph6(b"A`")
    assert issubclass(Graph6TruncatedError, Graph6Error)


def test_optional_header_and_newline():
    assert parse_graph6(b">>graph6<<C~\n") == complete(4)
    assert parse_graph6("C~") == complete(4)


def test_exhaustive_round_trip_small():
    for n in range(1, 6):
        for g in all_labeled_graphs(n):
            data = emit_graph6(g)
            assert data == _nx_g6(g)
            assert parse_graph6(data) == g


def test_large_header_matches_networkx():
    rng = np.random.default_rng(5)
    for n in (62, 63, 100):
        h = nx.gnp_random_graph(n, 0.1, seed=int(rng.integers(1 << 30)))
        g = from_nx(h)
        data = emit_graph6(g)
        assert data == _nx_g6(g)
        assert parse_graph6(data) == g


def test_random_round_trip_against_networkx():
    rng = np.random.default_rng(11)
    for _ in range(200):
        n = int(rng.integers(6, 31))
        h = nx.gnp_random_graph(n, float(rng.random()), seed=int(rng.integers(1 << 30)))
        g = from_nx(h)
        data = emit_graph6(g)
        assert data == _nx_g6(g)
        assert from_nx(nx.from_graph6_bytes(data)) == g
        assert emit_graph6(parse_graph6(data)) == data


def test_empty_graph_order_zero():
    assert emit_graph6(Graph(0, [])) == b"?"
    assert parse_graph6(b"?").order == 0
