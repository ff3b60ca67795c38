"""graph6 encoding and decoding.

Format: a size header ``N(n)`` followed by the upper triangle of the
adjacency matrix, read column by column (``x(0,1), x(0,2), x(1,2), x(0,3)``
...), packed six bits per byte with 63 added to each byte and the final byte
zero-padded.
"""

from __future__ import annotations

from .graph import Graph

_HEADER = b">>graph6<<"


class Graph6Error(ValueError):
    """Base class for graph6 decoding failures."""


class Graph6HeaderError(Graph6Error):
    """Missing, malformed or out-of-range size header."""


class Graph6TruncatedError(Graph6Error):
    """Fewer data bytes than the header demands."""


class Graph6TrailingDataError(Graph6Error):
    """Bytes or nonzero padding bits after the adjacency data."""


def _encode_n(n: int) -> bytes:
    if n < 0:
        raise ValueError("negative order")
    if n <= 62:
        return bytes([n + 63])
    if n <= 258047:
        return bytes([126] + [((n >> sh) & 63) + 63 for sh in (12, 6, 0)])
    if n <= 68719476735:
        return bytes([126, 126] + [((n >> sh) & 63) + 63 for sh in (30, 24, 18, 12, 6, 0)])
    raise ValueError(f"order {n} too large for graph6")


def _decode_n(data: bytes) -> tuple[int, int]:
    """Return ``(n, header_length)``."""
    if not data:
        raise Graph6HeaderError("empty input")
    for b in data[:8]:
        if not 63 <= b <= 126:
            raise Graph6HeaderError(f"byte {b!r} outside the printable graph6 range")
    if data[0] != 126:
        return data[0] - 63, 1
    if len(data) >= 2 and data[1] == 126:
        if len(data) < 8:
            raise Graph6HeaderError("truncated 8-byte size header")
        n = 0
        for b in data[2:8]:
            n = (n << 6) | (b - 63)
        if n <= 258047:
            raise Graph6HeaderError("non-minimal 8-byte size header")
        return n, 8
    if len(data) < 4:
        raise Graph6HeaderError("truncated 4-byte size header")
    n = 0
    for b in data[1:4]:
        n = (n << 6) | (b - 63)
    if n <= 62:
        raise Graph6HeaderError("non-minimal 4-byte size header")
    return n, 4


def emit_graph6(g: Graph) -> bytes:
    """Encode ``g`` as graph6 (no header prefix, no newline)."""
    n = g.order
    out = bytearray(_encode_n(n))
    acc = 0
    nbits = 0
    rows = g.rows
    for j in range(1, n):
        rj = rows[j]
        for i in range(j):
            acc = (acc << 1) | (rj >> i & 1)
            nbits += 1
            if nbits == 6:
                out.append(acc + 63)
                acc = 0
                nbits = 0
    if nbits:
        out.append((acc << (6 - nbits)) + 63)
    return bytes(out)


def parse_graph6(text: bytes | str) -> Graph:
    """Decode one graph6 string.

    An optional ``>>graph6<<`` prefix and surrounding whitespace (e.g. the
    line terminator) are accepted.
    """
    if isinstance(text, str):
        text = text.encode("ascii", errors="replace")
    data = bytes(text).strip()
    if data.startswith(_HEADER):
        data = data[len(_HEADER):]
    n, pos = _decode_n(data)
    nbits = n * (n - 1) // 2
    nbytes = (nbits + 5) // 6
    body = data[pos:]
    if len(body) < nbytes:
        raise Graph6TruncatedError(f"expected {nbytes} data bytes for n={n}, got {len(body)}")
    if len(body) > nbytes:
        raise Graph6TrailingDataError(f"{len(body) - nbytes} unexpected bytes after data")
    for b in body:
        if not 63 <= b <= 126:
            raise Graph6Error(f"byte {b!r} outside the printable graph6 range")
    rows = [0] * n
    bit = 0
    i, j = 0, 1
    for b in body:
        val = b - 63
        for sh in range(5, -1, -1):
            if bit >= nbits:
                if val >> sh & 1:
                    raise Graph6TrailingDataError("nonzero padding bits")
                continue
            if val >> sh & 1:
                rows[i] |= 1 << j
                rows[j] |= 1 << i
            bit += 1
            i += 1
            if i == j:
                i = 0
                j += 1
    return Graph(n, rows)
