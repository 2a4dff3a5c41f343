"""Simple graphs on bitset adjacency: degree norms, clique counting, constructions."""

from __future__ import annotations

import math
from dataclasses import dataclass
from itertools import combinations
from typing import Iterable, Iterator, Sequence

import numpy as np

MAX_ENUM_N = 8


@dataclass(frozen=True)
class Graph:
    """Undirected simple graph; ``adj[v]`` is an int bitmask of v's neighbours."""

    n: int
    adj: tuple[int, ...]

    def __post_init__(self):
        if len(self.adj) != self.n:
            raise ValueError("adjacency length must equal n")
        full = (1 << self.n) - 1
        for v, nb in enumerate(self.adj):
            if nb & ~full:
                raise ValueError(f"vertex {v} has out-of-range neighbours")
            if nb >> v & 1:
                raise ValueError(f"loop at vertex {v}")
            w = nb
            while w:
                low = w & -w
                u = low.bit_length() - 1
                if not self.adj[u] >> v & 1:
                    raise ValueError(f"asymmetric edge {v}-{u}")
                w ^= low

    @classmethod
    def from_edges(cls, n: int, edges: Iterable[tuple[int, int]]) -> "Graph":
        adj = [0] * n
        for a, b in edges:
            a, b = int(a), int(b)
            if a == b:
                raise ValueError(f"loop at vertex {a}")
            if not (0 <= a < n and 0 <= b < n):
                raise ValueError(f"edge ({a}, {b}) out of range for n={n}")
            adj[a] |= 1 << b
            adj[b] |= 1 << a
        return cls(n, tuple(adj))

    def edges(self) -> list[tuple[int, int]]:
        """Edges (a, b) with a < b in lexicographic order."""
        out = []
        for a in range(self.n):
            higher = self.adj[a] >> (a + 1)
            b = a + 1
            while higher:
                if higher & 1:
                    out.append((a, b))
                higher >>= 1
                b += 1
        return out

    def degrees(self) -> list[int]:
        return [nb.bit_count() for nb in self.adj]

    @property
    def num_edges(self) -> int:
        return sum(self.degrees()) // 2

    def has_edge(self, a: int, b: int) -> bool:
        return bool(self.adj[a] >> b & 1)

    def disjoint_union(self, other: "Graph") -> "Graph":
        shift = self.n
        return Graph(self.n + other.n, self.adj + tuple(nb << shift for nb in other.adj))

    def relabel(self, perm: Sequence[int]) -> "Graph":
        """Graph with vertex v renamed perm[v]."""
        return Graph.from_edges(self.n, ((perm[a], perm[b]) for a, b in self.edges()))


def norm_of_degrees(degrees: Sequence[float], p: float) -> float:
    """(sum d^p)^(1/p), or max degree for p = inf."""
    if not p > 0:
        raise ValueError(f"p must be positive, got {p}")
    if math.isinf(p):
        return float(max(degrees, default=0))
    pos = [d for d in degrees if d > 0]
    if not pos:
        return 0.0
    return math.fsum(d ** p for d in pos) ** (1.0 / p)


def degree_norm(G: Graph, p: float) -> float:
    return norm_of_degrees(G.degrees(), p)


def _bits(mask: int) -> Iterator[int]:
    while mask:
        low = mask & -mask
        yield low.bit_length() - 1
        mask ^= low


def degeneracy_order(G: Graph) -> list[int]:
    """Repeatedly remove a minimum-degree vertex (smallest label on ties)."""
    deg = G.degrees()
    alive = (1 << G.n) - 1
    order = []
    for _ in range(G.n):
        v = min(_bits(alive), key=lambda x: (deg[x], x))
        order.append(v)
        alive &= ~(1 << v)
        for u in _bits(G.adj[v] & alive):
            deg[u] -= 1
    return order


def _count_in(cand: int, k: int, later: list[int]) -> int:
    if k == 1:
        return cand.bit_count()
    if k == 2:
        return sum((cand & later[v]).bit_count() for v in _bits(cand))
    return sum(_count_in(cand & later[v], k - 1, later) for v in _bits(cand))


def count_cliques(G: Graph, t: int) -> int:
    """Exact number of t-cliques."""
    if t < 1:
        raise ValueError(f"t must be >= 1, got {t}")
    if t == 1:
        return G.n
    if t == 2:
        return G.num_edges
    # relabel by degeneracy so each vertex only looks at later, low-degree neighbourhoods
    order = degeneracy_order(G)
    pos = {v: i for i, v in enumerate(order)}
    later = [0] * G.n
    for v in range(G.n):
        i = pos[v]
        for u in _bits(G.adj[v]):
            if pos[u] > i:
                later[i] |= 1 << pos[u]
    return sum(_count_in(later[i], t - 1, later) for i in range(G.n))


def _higher_neighbours(G: Graph) -> list[int]:
    return [nb & ~((1 << (v + 1)) - 1) for v, nb in enumerate(G.adj)]


def list_cliques(G: Graph, t: int) -> Iterator[tuple[int, ...]]:
    """Yield every t-clique once, as a sorted tuple, in lexicographic order."""
    if t < 1:
        raise ValueError(f"t must be >= 1, got {t}")
    higher = _higher_neighbours(G)

    def rec(prefix: tuple[int, ...], cand: int):
        if len(prefix) == t:
            yield prefix
            return
        for v in _bits(cand):
            yield from rec(prefix + (v,), cand & higher[v])

    yield from rec((), (1 << G.n) - 1)


def clique_extension_count(G: Graph, S: Iterable[int], t: int) -> int:
    """Number of t-cliques of G containing the clique S."""
    S = sorted(set(S))
    if len(S) > t:
        raise ValueError(f"|S| = {len(S)} exceeds t = {t}")
    for a, b in combinations(S, 2):
        if not G.has_edge(a, b):
            raise ValueError(f"S is not a clique: {a} and {b} are not adjacent")
    common = (1 << G.n) - 1
    for v in S:
        common &= G.adj[v]
    k = t - len(S)
    if k == 0:
        return 1
    higher = _higher_neighbours(G)
    return _count_in(common, k, higher)


def construct_complete(u: int) -> Graph:
    return construct_disjoint_cliques([u])


def construct_disjoint_cliques(sizes: Sequence[int]) -> Graph:
    """Vertex-disjoint complete graphs, laid out in consecutive blocks."""
    if not sizes:
        raise ValueError("sizes must be nonempty")
    adj = []
    start = 0
    for s in sizes:
        if s < 1:
            raise ValueError(f"clique sizes must be positive, got {s}")
        block = ((1 << s) - 1) << start
        adj.extend(block & ~(1 << v) for v in range(start, start + s))
        start += s
    return Graph(start, tuple(adj))


def gls_layout(n: int, delta: int) -> tuple[int, int]:
    """(q, r) with n = q (delta+1) + r and 0 <= r <= delta."""
    if n < 1 or delta < 0:
        raise ValueError(f"need n >= 1 and delta >= 0, got n={n}, delta={delta}")
    return divmod(n, delta + 1)


def construct_gls(n: int, delta: int) -> Graph:
    """q copies of K_{delta+1} plus one K_r."""
    q, r = gls_layout(n, delta)
    sizes = [delta + 1] * q + ([r] if r else [])
    return construct_disjoint_cliques(sizes)


def pair_index(n: int) -> list[tuple[int, int]]:
    """Vertex pairs in lexicographic order; bit i of an edge mask is pair i."""
    return list(combinations(range(n), 2))


def graph_from_mask(n: int, mask: int) -> Graph:
    return Graph.from_edges(n, (e for i, e in enumerate(pair_index(n)) if mask >> i & 1))


def enumerate_all_graphs(n: int, start: int = 0, stop: int | None = None) -> Iterator[Graph]:
    """Every labelled graph on n vertices, ordered by edge bitmask.

    ``start``/``stop`` select a bitmask range so callers can split the work.
    """
    if n > MAX_ENUM_N:
        raise ValueError(f"n = {n} exceeds the enumeration limit {MAX_ENUM_N}")
    if n < 0:
        raise ValueError("n must be nonnegative")
    pairs = pair_index(n)
    total = 1 << len(pairs)
    stop = total if stop is None else min(stop, total)
    for mask in range(start, stop):
        adj = [0] * n
        for i, (a, b) in enumerate(pairs):
            if mask >> i & 1:
                adj[a] |= 1 << b
                adj[b] |= 1 << a
        yield Graph(n, tuple(adj))


def random_graph(n: int, edge_prob: float, seed) -> Graph:
    """Erdos-Renyi G(n, edge_prob); ``seed`` is anything numpy's default_rng accepts."""
    if not 0 <= edge_prob <= 1:
        raise ValueError(f"edge_prob must lie in [0, 1], got {edge_prob}")
    rng = np.random.default_rng(seed)
    pairs = pair_index(n)
    keep = rng.random(len(pairs)) < edge_prob
    return Graph.from_edges(n, (e for e, k in zip(pairs, keep) if k))


def petersen() -> Graph:
    outer = [(i, (i + 1) % 5) for i in range(5)]
    spokes = [(i, i + 5) for i in range(5)]
    inner = [(5 + i, 5 + (i + 2) % 5) for i in range(5)]
    return Graph.from_edges(10, outer + spokes + inner)
