"""Exact entropy chains of uniformly sampled, uniformly ordered sets.

A member A of a family of d-sets is drawn uniformly and its elements are put in
uniformly random order (X_1, ..., X_d).  Everything here is computed exactly
from subset multiplicities; nothing is sampled.

The chain quantities are x_k = 2^H(X_k | X_1..X_{k-1}).  For any such process
x_1 >= x_2 + 1 >= ... >= x_d + d - 1, and the product of the x_k is d! |family|.
The diagnostics at the bottom evaluate the inequalities that turn this chain
into clique-count bounds on concrete graphs and hypergraphs.
"""

from __future__ import annotations

import math
from collections import Counter
from dataclasses import dataclass, field
from itertools import combinations
from typing import Iterable, Optional

from . import realmath as rm
from .graphs import Graph, list_cliques
from .hypergraphs import Hypergraph, list_hypercliques, subset_degrees

TOL = 1e-9


@dataclass(frozen=True)
class SetFamily:
    ground_size: int
    member_size: int
    members: tuple[tuple[int, ...], ...]

    def __post_init__(self):
        if not self.members:
            raise ValueError("family must be nonempty")
        if len(set(self.members)) != len(self.members):
            raise ValueError("family members must be distinct")
        for m in self.members:
            if len(m) != self.member_size or len(set(m)) != self.member_size:
                raise ValueError(f"member {m} is not a {self.member_size}-set")
            if min(m) < 0 or max(m) >= self.ground_size:
                raise ValueError(f"member {m} out of range for n={self.ground_size}")

    @classmethod
    def of(cls, n: int, members: Iterable[Iterable[int]]) -> "SetFamily":
        ms = tuple(tuple(sorted(m)) for m in members)
        if not ms:
            raise ValueError("family must be nonempty")
        return cls(n, len(ms[0]), ms)


@dataclass
class EntropyChainReport:
    prefix_entropy: list[float]
    x: list[float]
    chain_ok: bool
    product: float
    family_size: int = 0
    margins: list[float] = field(default_factory=list)


def entropy_chain(F: SetFamily) -> EntropyChainReport:
    d = F.member_size
    M = len(F.members)
    H = []
    for k in range(1, d + 1):
        counts = Counter()
        for m in F.members:
            counts.update(combinations(m, k))
        # each ordering of S is a prefix with prob N(S) (d-k)! / (d! M);
        # the k! orderings together carry weight N(S) / (C(d,k) M)
        scale = math.comb(d, k) * M
        prefix_total = math.factorial(d) * M
        tail = math.factorial(d - k)
        H.append(math.fsum(
            n_s / scale * -math.log2(n_s * tail / prefix_total) for n_s in counts.values()
        ))
    x = [2.0 ** (H[0])] + [2.0 ** (H[k] - H[k - 1]) for k in range(1, d)]
    margins = [x[k] - x[k + 1] - 1 for k in range(d - 1)]
    return EntropyChainReport(
        prefix_entropy=H,
        x=x,
        chain_ok=all(mg >= -TOL for mg in margins),
        product=math.prod(x),
        family_size=M,
        margins=margins,
    )


def lemma8_check(report: EntropyChainReport, tol: float = TOL) -> tuple[bool, list[float]]:
    """Whether x_k >= x_{k+1} + 1 - tol for all k, with the margins x_k - x_{k+1} - 1."""
    x = report.x
    margins = [x[k] - x[k + 1] - 1 for k in range(len(x) - 1)]
    return all(m >= -tol for m in margins), margins


def clique_family(G: Graph, t: int) -> SetFamily:
    members = tuple(list_cliques(G, t))
    if not members:
        raise ValueError(f"graph has no {t}-clique")
    return SetFamily(G.n, t, members)


def hyperclique_family(H: Hypergraph, t: int) -> SetFamily:
    members = tuple(list_hypercliques(H, t))
    if not members:
        raise ValueError(f"hypergraph has no {t}-hyperclique")
    return SetFamily(H.n, t, members)


def _chain(G: Graph, t: int, report: Optional[EntropyChainReport]) -> EntropyChainReport:
    return report if report is not None else entropy_chain(clique_family(G, t))


@dataclass
class ClaimRecord:
    x1: float
    x2: float
    lhs: float
    rhs: float
    hypothesis: bool
    holds: Optional[bool]
    n: Optional[int] = None
    chain_n_ok: Optional[bool] = None


def claim_small_p(G: Graph, t: int, p: float, u: float,
                  report: Optional[EntropyChainReport] = None) -> ClaimRecord:
    """x_1 x_2^p against u (u-1)^p for 0 < p <= t-1.

    When k_t(G) > binom(u, t) (with u >= t) the left side must be strictly
    larger; otherwise both sides are reported and ``holds`` is None.
    """
    if not 0 < p <= t - 1:
        raise ValueError(f"need 0 < p <= t-1 = {t - 1}, got {p}")
    rep = _chain(G, t, report)
    x1, x2 = rep.x[0], rep.x[1]
    lhs = x1 * x2 ** p
    rhs = u * (u - 1) ** p
    hyp = u >= t and rep.family_size > rm.binom_real(u, t)
    return ClaimRecord(x1, x2, lhs, rhs, bool(hyp), bool(lhs > rhs) if hyp else None)


@dataclass
class Claim6Gap:
    lhs: float
    rhs: float
    gap: float


def claim6_gap(G: Graph, t: int, p: float,
               report: Optional[EntropyChainReport] = None) -> Claim6Gap:
    """log2(sum deg^p) - (H(X_1) + p H(X_2 | X_1)); never negative."""
    if not p > 0:
        raise ValueError(f"p must be positive, got {p}")
    rep = _chain(G, t, report)
    H1, H2 = rep.prefix_entropy[0], rep.prefix_entropy[1]
    lhs = H1 + p * (H2 - H1)
    rhs = math.log2(math.fsum(d ** p for d in G.degrees() if d > 0))
    return Claim6Gap(lhs, rhs, rhs - lhs)


def claim7(G: Graph, t: int, p: float, u: float,
           report: Optional[EntropyChainReport] = None) -> ClaimRecord:
    """x_1 x_2^p against n (u-1)^p for p > t-1, plus the x_1 <= n check.

    Asserted when k_t(G) > (n/u) binom(u, t) and u >= s_R, which is the
    fixed-n theorem's hypothesis with C = n^(1/p) (u-1).
    """
    if not p > t - 1:
        raise ValueError(f"need p > t-1 = {t - 1}, got {p}")
    rep = _chain(G, t, report)
    n = G.n
    x1, x2 = rep.x[0], rep.x[1]
    lhs = x1 * x2 ** p
    rhs = n * (u - 1) ** p
    s = rm.solve_s_real(rm.RegimeParams(t, p))
    hyp = u >= s and rep.family_size > n / u * rm.binom_real(u, t)
    return ClaimRecord(x1, x2, lhs, rhs, bool(hyp), bool(lhs > rhs) if hyp else None,
                       n=n, chain_n_ok=bool(x1 <= n + TOL))


@dataclass
class HyperDiagnostic:
    x: list[float]
    A: float
    B: float
    Cfac: float
    lhs5: float
    rhs5: float
    eq5_ok: bool
    target: float
    hypothesis: bool
    abp_ok: Optional[bool]


def _falling(u: float, lo: int, hi: int) -> float:
    """(u-lo)(u-lo-1)...(u-hi+1)."""
    return math.prod(u - i for i in range(lo, hi))


def hyper_entropy_diagnostic(H: Hypergraph, t: int, r: int, j: int, p: float, u: float,
                             report: Optional[EntropyChainReport] = None) -> HyperDiagnostic:
    """The two entropy estimates behind the hypergraph bound at small p."""
    params = rm.RegimeParams(t, p, r, j)
    if H.r != r:
        raise ValueError(f"hypergraph is {H.r}-uniform, expected {r}")
    if params.supercritical:
        raise ValueError(f"need p <= {params.threshold}, got {p}")
    rep = report if report is not None else entropy_chain(hyperclique_family(H, t))
    x = rep.x
    A = math.prod(x[:j])
    B = math.prod(x[j:r])
    Cfac = math.prod(x[r:t])
    Hj, Hr = rep.prefix_entropy[j - 1], rep.prefix_entropy[r - 1]
    lhs5 = Hj + p * (Hr - Hj)
    degsum = math.fsum(d ** p for d in subset_degrees(H, j) if d > 0)
    rhs5 = math.log2(math.factorial(j) * math.factorial(r - j) ** p * degsum)
    target = _falling(u, 0, j) * _falling(u, j, r) ** p
    hyp = u >= t and rep.family_size > rm.binom_real(u, t)
    abp = A * B ** p
    return HyperDiagnostic(
        x=list(x), A=A, B=B, Cfac=Cfac, lhs5=lhs5, rhs5=rhs5,
        eq5_ok=lhs5 <= rhs5 + TOL, target=target, hypothesis=hyp,
        abp_ok=abp >= target * (1 - TOL) if hyp else None,
    )

