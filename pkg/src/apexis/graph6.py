"""graph6 encoding (orders up to 62 use the one-byte header)."""

from __future__ import annotations

from typing import Iterable, Iterator, TextIO

from .graph import Graph, GraphError

__all__ = ["encode", "decode", "read_lines", "write_lines", "Graph6Error"]


class Graph6Error(GraphError):
    pass


def encode(g: Graph) -> str:
    n = g.n
    if n > 62:
        raise Graph6Error("orders above 62 are not supported")
    out = [chr(n + 63)]
    acc = 0
    k = 0
    for j in range(1, n):
        row = g.adj[j]
        for i in range(j):
            acc = (acc << 1) | (row >> i & 1)
            k += 1
            if k == 6:
                out.append(chr(acc + 63))
                acc = k = 0
    if k:
        out.append(chr((acc << (6 - k)) + 63))
    return "".join(out)


def decode(s: str) -> Graph:
    s = s.strip()
    if s.startswith(">>graph6<<"):
        s = s[10:]
    if not s:
        raise Graph6Error("empty graph6 string")
    vals = [ord(c) - 63 for c in s]
    if any(not 0 <= v <= 63 for v in vals):
        raise Graph6Error(f"invalid graph6 character in {s!r}")
    n = vals[0]
    if n == 63:
        raise Graph6Error("orders above 62 are not supported")
    nbits = n * (n - 1) // 2
    need = (nbits + 5) // 6
    if len(vals) - 1 != need:
        raise Graph6Error(f"graph6 string {s!r} has {len(vals) - 1} data bytes, expected {need}")
    edges = []
    pos = 0
    for j in range(1, n):
        for i in range(j):
            byte = vals[1 + pos // 6]
            if byte >> (5 - pos % 6) & 1:
                edges.append((i, j))
            pos += 1
    if nbits % 6 and vals[-1] & ((1 << (6 - nbits % 6)) - 1):
        raise Graph6Error(f"nonzero padding bits in {s!r}")
    return Graph(n, edges)


def read_lines(fh: TextIO) -> Iterator[Graph]:
    for line in fh:
        line = line.strip()
        if line and not line.startswith("#"):
            yield decode(line)


def write_lines(graphs: Iterable[Graph], fh: TextIO) -> int:
    k = 0
    for g in graphs:
        fh.write(encode(g) + "\n")
        k += 1
    return k
