"""Plain-text edge-list formats.

Graph::

    # optional comments
    n m
    a b        (m lines, 0 <= a < b < n)

Hypergraph: header ``n m r`` followed by m lines of r sorted vertex indices.
"""

from __future__ import annotations

from pathlib import Path

from .graphs import Graph
from .hypergraphs import Hypergraph


class FormatError(ValueError):
    pass


def _data_lines(text: str) -> list[tuple[int, list[int]]]:
    rows = []
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        try:
            rows.append((lineno, [int(tok) for tok in line.split()]))
        except ValueError:
            raise FormatError(f"line {lineno}: expected integers, got {raw!r}") from None
    if not rows:
        raise FormatError("no header line")
    return rows


def parse_graph(text: str) -> Graph:
    rows = _data_lines(text)
    lineno, header = rows[0]
    if len(header) != 2:
        raise FormatError(f"line {lineno}: header must be 'n m'")
    n, m = header
    if n < 0 or m < 0:
        raise FormatError(f"line {lineno}: negative count")
    body = rows[1:]
    if len(body) != m:
        raise FormatError(f"header promises {m} edges, found {len(body)}")
    seen = set()
    for lineno, row in body:
        if len(row) != 2:
            raise FormatError(f"line {lineno}: edge must have two endpoints")
        a, b = row
        if not 0 <= a < b < n:
            raise FormatError(f"line {lineno}: need 0 <= a < b < {n}, got {a} {b}")
        if (a, b) in seen:
            raise FormatError(f"line {lineno}: duplicate edge {a} {b}")
        seen.add((a, b))
    return Graph.from_edges(n, seen)


def format_graph(G: Graph, comment: str | None = None) -> str:
    edges = G.edges()
    lines = [f"# {comment}"] if comment else []
    lines.append(f"{G.n} {len(edges)}")
    lines += [f"{a} {b}" for a, b in edges]
    return "\n".join(lines) + "\n"


def parse_hypergraph(text: str) -> Hypergraph:
    rows = _data_lines(text)
    lineno, header = rows[0]
    if len(header) != 3:
        raise FormatError(f"line {lineno}: header must be 'n m r'")
    n, m, r = header
    if n < 0 or m < 0 or r < 1:
        raise FormatError(f"line {lineno}: bad header values")
    body = rows[1:]
    if len(body) != m:
        raise FormatError(f"header promises {m} edges, found {len(body)}")
    edges = []
    for lineno, row in body:
        if len(row) != r:
            raise FormatError(f"line {lineno}: edge must have {r} vertices")
        if any(not 0 <= v < n for v in row) or any(a >= b for a, b in zip(row, row[1:])):
            raise FormatError(f"line {lineno}: vertices must be distinct, sorted and below {n}")
        edges.append(tuple(row))
    if len(set(edges)) != len(edges):
        raise FormatError("duplicate edges")
    return Hypergraph(n, r, frozenset(edges))


def format_hypergraph(H: Hypergraph, comment: str | None = None) -> str:
    edges = H.sorted_edges()
    lines = [f"# {comment}"] if comment else []
    lines.append(f"{H.n} {len(edges)} {H.r}")
    lines += [" ".join(map(str, e)) for e in edges]
    return "\n".join(lines) + "\n"


def read_graph(path) -> Graph:
    return parse_graph(Path(path).read_text())


def read_hypergraph(path) -> Hypergraph:
    return parse_hypergraph(Path(path).read_text())

