"""r-uniform hypergraphs: subset degrees, (j, p)-norms, hypercliques."""

from __future__ import annotations

import math
from dataclasses import dataclass
from itertools import combinations
from typing import Iterable, Iterator

from .graphs import norm_of_degrees

MAX_ENUM_EDGES = 24


@dataclass(frozen=True)
class Hypergraph:
    n: int
    r: int
    edges: frozenset

    def __post_init__(self):
        if self.r < 1:
            raise ValueError(f"uniformity must be positive, got {self.r}")
        for e in self.edges:
            if len(e) != self.r or len(set(e)) != self.r:
                raise ValueError(f"edge {e} does not have {self.r} distinct vertices")
            if tuple(sorted(e)) != e:
                raise ValueError(f"edge {e} is not sorted")
            if e[0] < 0 or e[-1] >= self.n:
                raise ValueError(f"edge {e} out of range for n={self.n}")

    @classmethod
    def from_edges(cls, n: int, r: int, edges: Iterable[Iterable[int]]) -> "Hypergraph":
        norm = [tuple(sorted(e)) for e in edges]
        if len(set(norm)) != len(norm):
            raise ValueError("duplicate edges")
        return cls(n, r, frozenset(norm))

    def sorted_edges(self) -> list[tuple[int, ...]]:
        return sorted(self.edges)

    def disjoint_union(self, other: "Hypergraph") -> "Hypergraph":
        if other.r != self.r:
            raise ValueError("uniformities differ")
        shifted = (tuple(v + self.n for v in e) for e in other.edges)
        return Hypergraph(self.n + other.n, self.r, self.edges | frozenset(shifted))


def colex_subsets(n: int, j: int) -> list[tuple[int, ...]]:
    """All j-subsets of range(n) in colexicographic order."""
    return sorted(combinations(range(n), j), key=lambda s: s[::-1])


def subset_degree(H: Hypergraph, S: Iterable[int]) -> int:
    """Number of edges containing the set S (|S| < r)."""
    S = frozenset(S)
    if len(S) >= H.r:
        raise ValueError(f"|S| = {len(S)} must be below r = {H.r}")
    return sum(1 for e in H.edges if S.issubset(e))


def subset_degrees(H: Hypergraph, j: int) -> list[int]:
    """deg(S) for every j-set S, colex order."""
    if not 1 <= j < H.r:
        raise ValueError(f"need 1 <= j < r = {H.r}, got {j}")
    index = {S: i for i, S in enumerate(colex_subsets(H.n, j))}
    deg = [0] * len(index)
    for e in H.edges:
        for S in combinations(e, j):
            deg[index[S]] += 1
    return deg


def hyper_norm(H: Hypergraph, j: int, p: float) -> float:
    if not p > 0:
        raise ValueError(f"p must be positive, got {p}")
    return norm_of_degrees(subset_degrees(H, j), p)


def _active_vertices(H: Hypergraph) -> list[int]:
    return sorted({v for e in H.edges for v in e})


def list_hypercliques(H: Hypergraph, t: int) -> Iterator[tuple[int, ...]]:
    """t-sets all of whose r-subsets are edges, in lexicographic order."""
    if t < H.r:
        raise ValueError(f"t = {t} must be at least r = {H.r}")
    for T in combinations(_active_vertices(H), t):
        if all(e in H.edges for e in combinations(T, H.r)):
            yield T


def count_hypercliques(H: Hypergraph, t: int) -> int:
    return sum(1 for _ in list_hypercliques(H, t))


def construct_complete_hyper(u: int, r: int) -> Hypergraph:
    if u < r:
        raise ValueError(f"need u >= r, got u={u}, r={r}")
    return Hypergraph(u, r, frozenset(combinations(range(u), r)))


def construct_disjoint_complete_hyper(m: int, u: int, r: int) -> Hypergraph:
    if m < 1:
        raise ValueError(f"need m >= 1, got {m}")
    edges = frozenset(
        tuple(c * u + v for v in e) for c in range(m) for e in combinations(range(u), r)
    )
    return Hypergraph(m * u, r, edges)


def enumerate_all_hypergraphs(n: int, r: int, start: int = 0, stop: int | None = None) -> Iterator[Hypergraph]:
    """Every labelled r-uniform hypergraph on n vertices, by edge bitmask."""
    slots = list(combinations(range(n), r))
    if len(slots) > MAX_ENUM_EDGES:
        raise ValueError(f"C({n},{r}) = {len(slots)} exceeds the enumeration limit {MAX_ENUM_EDGES}")
    total = 1 << len(slots)
    stop = total if stop is None else min(stop, total)
    for mask in range(start, stop):
        yield Hypergraph(n, r, frozenset(e for i, e in enumerate(slots) if mask >> i & 1))


def hypergraph_from_mask(n: int, r: int, mask: int) -> Hypergraph:
    slots = combinations(range(n), r)
    return Hypergraph(n, r, frozenset(e for i, e in enumerate(slots) if mask >> i & 1))


def num_hypergraphs(n: int, r: int) -> int:
    return 1 << math.comb(n, r)
