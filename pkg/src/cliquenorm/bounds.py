"""Closed-form upper bounds on clique counts under a degree-norm constraint."""

from __future__ import annotations

import math
from dataclasses import asdict, dataclass
from typing import Optional

from . import realmath as rm
from .graphs import gls_layout
from .realmath import RegimeParams

SUB = "subcritical"
SUPER = "supercritical"


class PreconditionError(ValueError):
    """A theorem's hypothesis fails for the given parameters."""


@dataclass(frozen=True)
class BoundResult:
    regime: str
    u: float
    bound: float
    s_real: Optional[float] = None
    s_int: Optional[int] = None

    def to_dict(self) -> dict:
        return asdict(self)

    @classmethod
    def from_dict(cls, d: dict) -> "BoundResult":
        return cls(**d)


def _clamped_binom(u: float, t: int) -> float:
    """max{binom(u, t), 0}, taken as 0 below t-1 where the polynomial oscillates.

    No t-clique fits when u < t, so zero is still a valid bound there, and it
    keeps the bound nondecreasing in C.
    """
    if u <= t - 1:
        return 0.0
    return max(rm.binom_real(u, t), 0.0)


def _scaled(C: float, p: float, log_h: float) -> float:
    """C^p * exp(log_h), in log space when C^p could overflow."""
    if p > rm.LOG_P or C > rm.LOG_C:
        return math.exp(p * math.log(C) + log_h)
    return C ** p * math.exp(log_h)


def clique_bound(p: float, t: int, C: float) -> BoundResult:
    """Max number of t-cliques in a graph with degree p-norm at most C."""
    if math.isinf(p):
        raise ValueError("p = inf needs n and the max degree; use chase_gls_bound")
    if C < 0:
        raise ValueError(f"C must be nonnegative, got {C}")
    params = RegimeParams(t, p)
    if not params.supercritical:
        if C == 0:
            return BoundResult(SUB, 1.0, 0.0)
        u = rm.solve_u_small(C, params)
        return BoundResult(SUB, u, _clamped_binom(u, t))
    s = rm.solve_s_real(params)
    u = rm.select_s_int(params)
    if C == 0:
        return BoundResult(SUPER, float(u), 0.0, s, u)
    if p > rm.LOG_P or C > rm.LOG_C:
        bound = _scaled(C, p, rm.log_h(u, params))
    else:
        bound = C ** p / (u * (u - 1) ** p) * math.comb(u, t)
    return BoundResult(SUPER, float(u), bound, s, u)


def fixed_n_bound(n: int, p: float, t: int, C: float) -> float:
    """(n/u) binom(u, t) with u = C / n^(1/p) + 1, for n-vertex graphs and p > t-1."""
    params = RegimeParams(t, p)
    if not params.supercritical:
        raise ValueError(f"need p > t-1 = {t - 1}, got p={p}")
    if n < 1:
        raise ValueError(f"n must be positive, got {n}")
    s = rm.solve_s_real(params)
    # compare n (s-1)^p <= C^p in log space
    lhs = math.log(n) + p * math.log(s - 1)
    rhs = p * math.log(C) if C > 0 else -math.inf
    if lhs > rhs:
        raise PreconditionError(
            f"n (s_R - 1)^p = {math.exp(lhs):.6g} exceeds C^p = {math.exp(rhs):.6g}"
        )
    u = C / n ** (1.0 / p) + 1
    return n / u * rm.binom_real(u, t)


def fixed_n_precondition(n: int, p: float, t: int, C: float) -> tuple[float, float]:
    """(n (s_R - 1)^p, C^p)."""
    s = rm.solve_s_real(RegimeParams(t, p))
    return n * (s - 1) ** p, C ** p


def kruskal_katona_bound(e: float, t: int) -> float:
    """At most binom(u, t) t-cliques among binom(u, 2) = e edges."""
    if t < 3:
        raise ValueError(f"t must be >= 3, got {t}")
    if e < 0:
        raise ValueError(f"e must be nonnegative, got {e}")
    u = (1 + math.sqrt(1 + 8 * e)) / 2
    return _clamped_binom(u, t)


def chase_gls_bound(n: int, delta: int, t: int) -> int:
    """q binom(delta+1, t) + binom(r, t) for max degree delta on n vertices."""
    if t < 2:
        raise ValueError(f"t must be >= 2, got {t}")
    q, r = gls_layout(n, delta)
    return q * math.comb(delta + 1, t) + math.comb(r, t)


def hyperclique_bound(p: float, t: int, r: int, j: int, C: float) -> BoundResult:
    """Max number of t-hypercliques in an r-graph with (j, p)-norm at most C."""
    if C < 0:
        raise ValueError(f"C must be nonnegative, got {C}")
    params = RegimeParams(t, p, r, j)
    if not params.supercritical:
        if C == 0:
            return BoundResult(SUB, float(r - 1), 0.0)
        u = rm.solve_u_hyper(C, params)
        return BoundResult(SUB, u, _clamped_binom(u, t))
    s = rm.solve_s_real_hyper(params)
    if C == 0:
        return BoundResult(SUPER, s, 0.0, s)
    if p > rm.LOG_P or C > rm.LOG_C:
        bound = _scaled(C, p, rm.log_htilde(s, params))
    else:
        bound = C ** p * rm.htilde_value(s, params)
    return BoundResult(SUPER, s, bound, s)
