"""graph6 encoding (header-less), as produced by nauty's ``geng``.

Bits are the upper triangle in column order x(0,1), x(0,2), x(1,2), x(0,3), ...
packed big-endian into 6-bit groups, each written as ``value + 63``.
"""
from __future__ import annotations

from typing import IO, Iterable, Iterator

from .graph import Graph, GraphError


def _size_prefix(n: int) -> bytes:
    if n <= 62:
        return bytes([63 + n])
    return bytes([126, 63 + (n >> 12 & 63), 63 + (n >> 6 & 63), 63 + (n & 63)])


def encode(g: Graph) -> bytes:
    out = bytearray(_size_prefix(g.n))
    acc = 0
    nbits = 0
    adj = g.adj
    for j in range(1, g.n):
        col = adj[j]
        for i in range(j):
            acc = (acc << 1) | (col >> i & 1)
            nbits += 1
            if nbits == 6:
                out.append(acc + 63)
                acc = nbits = 0
    if nbits:
        out.append((acc << (6 - nbits)) + 63)
    return bytes(out)


def to_string(g: Graph) -> str:
    return encode(g).decode("ascii")


def decode(data: bytes | str) -> Graph:
    if isinstance(data, str):
        data = data.encode("ascii")
    data = data.strip()
    if data.startswith(b">>graph6<<"):
        data = data[10:]
    if not data:
        raise GraphError("empty graph6 string")
    if any(c < 63 or c > 126 for c in data):
        raise GraphError("graph6 byte outside 63..126")
    if data[0] == 126:
        if len(data) < 4 or data[1] == 126:
            raise GraphError("unsupported graph6 size prefix")
        n = ((data[1] - 63) << 12) | ((data[2] - 63) << 6) | (data[3] - 63)
        body = data[4:]
    else:
        n = data[0] - 63
        body = data[1:]
    nbits = n * (n - 1) // 2
    if len(body) != (nbits + 5) // 6:
        raise GraphError(f"graph6 body has {len(body)} bytes, expected {(nbits + 5) // 6}")
    rows = [0] * n
    k = 0
    i, j = 0, 1
    for byte in body:
        val = byte - 63
        for shift in range(5, -1, -1):
            if k == nbits:
                break
            if val >> shift & 1:
                rows[i] |= 1 << j
                rows[j] |= 1 << i
            k += 1
            i += 1
            if i == j:
                i = 0
                j += 1
    return Graph(n, tuple(rows))


def read_file(fh: IO[str]) -> Iterator[Graph]:
    for line in fh:
        line = line.strip()
        if line:
            yield decode(line)


def write_file(fh: IO[str], graphs: Iterable[Graph]) -> int:
    count = 0
    for g in graphs:
        fh.write(to_string(g) + "\n")
        count += 1
    return count
