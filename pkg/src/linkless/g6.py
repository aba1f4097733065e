"""Bit-exact graph6 codec (short form, n <= 62).

The wire format: one size byte n+63, then ceil(n(n-1)/2 / 6) data bytes in
63..126.  Data bits are the upper triangle of the adjacency matrix in
column-major order (x01, x02, x12, x03, ...), six bits per byte, most
significant bit first, trailing pad bits zero.
"""

from __future__ import annotations

import io
from dataclasses import dataclass
from typing import BinaryIO, Iterator, Union

from .errors import CapacityExceeded, LinklessError
from .graph import MAX_VERTICES, Graph

HEADER = b">>graph6<<"


class G6Error(LinklessError):
    """Malformed graph6 record."""


class BadHeader(G6Error):
    """Size field missing or out of the supported range."""


class BadLength(G6Error):
    """Wrong number of data bytes for the declared vertex count."""


class BadByte(G6Error):
    """Byte outside the printable range 63..126."""


class BadPadding(G6Error):
    """Nonzero bits after the last adjacency bit."""


def decode_g6(line: Union[bytes, str]) -> Graph:
    """Decode one graph6 record (no trailing newline)."""
    if isinstance(line, str):
        line = line.encode("ascii")
    if not line:
        raise BadHeader("empty record")
    for b in line:
        if not 63 <= b <= 126:
            raise BadByte(f"byte {b} outside 63..126")
    n = line[0] - 63
    if n == 0 or n > MAX_VERTICES:
        raise BadHeader(f"n={n} outside supported range 1..{MAX_VERTICES}")
    nbits = n * (n - 1) // 2
    nbytes = (nbits + 5) // 6
    if len(line) != 1 + nbytes:
        raise BadLength(f"expected {1 + nbytes} bytes for n={n}, got {len(line)}")
    adj = [0] * n
    bit = 0
    for byte in line[1:]:
        chunk = byte - 63
        for k in range(5, -1, -1):
            if bit >= nbits:
                if chunk >> k & 1:
                    raise BadPadding("nonzero trailing bits")
                continue
            if chunk >> k & 1:
                u, v = _bit_to_pair(bit)
                adj[u] |= 1 << v
                adj[v] |= 1 << u
            bit += 1
    return Graph(n, adj)


def _bit_to_pair(bit: int) -> tuple[int, int]:
    # column-major upper triangle: column v holds bits for rows 0..v-1
    v = 1
    acc = 0
    while acc + v <= bit:
        acc += v
        v += 1
    return bit - acc, v


def encode_g6(g: Graph) -> bytes:
    """Encode a graph as one graph6 record (no newline)."""
    if g.n > 62:
        raise CapacityExceeded(f"graph6 short form only supports n <= 62, got {g.n}")
    out = bytearray([g.n + 63])
    chunk = 0
    filled = 0
    for v in range(1, g.n):
        col = g.adj[v]
        for u in range(v):
            chunk = chunk << 1 | (col >> u & 1)
            filled += 1
            if filled == 6:
                out.append(chunk + 63)
                chunk = 0
                filled = 0
    if filled:
        out.append((chunk << (6 - filled)) + 63)
    return bytes(out)


@dataclass(frozen=True)
class G6Record:
    """One record of a graph6 stream: either a graph or a decode error."""

    line_number: int
    graph: Graph | None = None
    error: G6Error | None = None

    @property
    def ok(self) -> bool:
        return self.graph is not None


def stream_g6(source: Union[BinaryIO, bytes, str]) -> Iterator[G6Record]:
    """Lazily decode a newline-separated graph6 stream.

    Accepts LF or CRLF line ends and skips an optional >>graph6<< header.
    Malformed lines become error records; the stream keeps going, so one
    bad line cannot kill a long filter job.  Line numbers are 1-based.
    """
    if isinstance(source, str):
        source = source.encode("ascii")
    if isinstance(source, bytes):
        source = io.BytesIO(source)
    for lineno, raw in enumerate(source, start=1):
        line = raw.rstrip(b"\r\n")
        if line.startswith(HEADER):
            line = line[len(HEADER):]
        if not line:
            continue
        try:
            yield G6Record(lineno, graph=decode_g6(line))
        except G6Error as exc:
            yield G6Record(lineno, error=exc)


def iter_graphs(source: Union[BinaryIO, bytes, str]) -> Iterator[Graph]:
    """Like stream_g6 but raises on the first malformed record."""
    for rec in stream_g6(source):
        if not rec.ok:
            raise G6Error(f"line {rec.line_number}: {rec.error}")
        yield rec.graph


def write_g6(graphs, sink: BinaryIO) -> int:
    """Write graphs as LF-terminated graph6 lines; returns the count."""
    count = 0
    for g in graphs:
        sink.write(encode_g6(g) + b"\n")
        count += 1
    return count
