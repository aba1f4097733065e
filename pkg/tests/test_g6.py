import io
import random

import networkx as nx
import pytest

from linkless.g6 import (
    BadByte,
    BadHeader,
    BadLength,
    BadPadding,
    decode_g6,
    encode_g6,
    iter_graphs,
    stream_g6,
)
from linkless.graph import complete, empty, from_edges


def test_k6_wire_form():
    # n=6 -> 'E'; fifteen 1-bits pack as 126,126,119 = '~','~','w'
    assert encode_g6(complete(6)) == b"E~~w"
    assert decode_g6(b"E~~w") == complete(6)


def test_single_vertex():
    assert decode_g6(b"@") == empty(1)
    assert encode_g6(empty(1)) == b"@"


def test_two_vertex_forms():
    assert encode_g6(empty(2)) == b"A?"
    assert encode_g6(from_edges(2, [(0, 1)])) == b"A_"
    assert decode_g6(b"A_").has_edge(0, 1)


def test_decode_errors():
    with pytest.raises(BadHeader):
        decode_g6(b"")
    with pytest.raises(BadHeader):
        decode_g6(b"?")  # n = 0
    with pytest.raises(BadLength):
        decode_g6(b"E~~")
    with pytest.raises(BadLength):
        decode_g6(b"E~~ww")
    with pytest.raises(BadByte):
        decode_g6(b"E~~\x20")
    # n=2 has one data bit; byte 64 sets a pad bit
    with pytest.raises(BadPadding):
        decode_g6(b"A@")
    with pytest.raises(BadHeader):
        decode_g6(bytes([63 + 40]))  # n = 40 > capacity


def test_encode_capacity():
    # the Graph type caps at 32 vertices, inside the codec's n <= 62 limit,
    # so the encoder's CapacityExceeded guard is unreachable via Graph
    assert encode_g6(empty(32)).startswith(bytes([63 + 32]))
    assert decode_g6(encode_g6(empty(32))) == empty(32)


def test_round_trip_random():
    rng = random.Random(20240817)
    for _ in range(10_000):
        n = rng.randint(2, 16)
        g = from_edges(
            n,
            [(u, v) for u in range(n) for v in range(u + 1, n)
             if rng.random() < rng.choice([0.15, 0.5, 0.85])],
        )
        line = encode_g6(g)
        assert decode_g6(line) == g
        assert encode_g6(decode_g6(line)) == line


def test_interop_with_networkx_bytes():
    """Decode->encode reproduces networkx-encoded records byte for byte."""
    rng = random.Random(7)
    graphs = [complete(6), empty(1), from_edges(2, [(0, 1)])]
    for _ in range(500):
        n = rng.randint(2, 20)
        graphs.append(
            from_edges(
                n,
                [(u, v) for u in range(n) for v in range(u + 1, n)
                 if rng.random() < 0.4],
            )
        )
    for g in graphs:
        G = nx.Graph()
        G.add_nodes_from(range(g.n))
        G.add_edges_from(g.edges())
        ref = nx.to_graph6_bytes(G, header=False).strip()
        assert decode_g6(ref) == g
        assert encode_g6(g) == ref


def test_stream_order_and_header():
    payload = b">>graph6<<E~~w\nA_\nA?\n"
    recs = list(stream_g6(payload))
    assert [r.line_number for r in recs] == [1, 2, 3]
    assert all(r.ok for r in recs)
    assert recs[0].graph == complete(6)


def test_stream_error_isolation():
    payload = b"A_\nE~~\nA?\n"
    recs = list(stream_g6(payload))
    assert [r.ok for r in recs] == [True, False, True]
    assert recs[1].line_number == 2
    assert recs[1].error is not None
    with pytest.raises(Exception):
        list(iter_graphs(payload))


def test_stream_crlf():
    recs = list(stream_g6(b"A_\r\nA?\r\n"))
    assert len(recs) == 2 and all(r.ok for r in recs)


def test_stream_single_pass_large():
    """Constant-memory single pass over a large stream."""
    line = encode_g6(complete(6)) + b"\n"
    big = io.BytesIO(line * 200_000)
    count = 0
    for rec in stream_g6(big):
        count += 1
    assert count == 200_000
