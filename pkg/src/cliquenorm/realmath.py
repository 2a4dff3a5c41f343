"""Real-argument binomials, the objective functions h and h~, and their root solvers.

All solvers use bisection: every function solved here is strictly monotone
on its domain, so a sign-bracketed bisection always converges.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Callable, Optional

X_TOL = 1e-12
MAX_ITER = 200
EDGE_OFFSET = 1e-6

# log-space evaluation kicks in past these
LOG_P = 30.0
LOG_C = 1e6


@dataclass(frozen=True)
class RegimeParams:
    """Clique size ``t`` and exponent ``p``; ``r`` and ``j`` for hypergraphs."""

    t: int
    p: float
    r: Optional[int] = None
    j: Optional[int] = None

    def __post_init__(self):
        if self.t < 3:
            raise ValueError(f"t must be >= 3, got {self.t}")
        if not self.p > 0:
            raise ValueError(f"p must be positive, got {self.p}")
        if (self.r is None) != (self.j is None):
            raise ValueError("r and j must be given together")
        if self.r is not None and not (self.t > self.r > self.j >= 1):
            raise ValueError(f"need t > r > j >= 1, got t={self.t}, r={self.r}, j={self.j}")

    @property
    def is_hyper(self) -> bool:
        return self.r is not None

    @property
    def threshold(self) -> float:
        if self.is_hyper:
            return (self.t - self.j) / (self.r - self.j)
        return float(self.t - 1)

    @property
    def supercritical(self) -> bool:
        return self.p > self.threshold


def binom_real(u: float, t: int) -> float:
    """Generalized binomial u(u-1)...(u-t+1)/t!."""
    if t < 1:
        raise ValueError(f"t must be >= 1, got {t}")
    if u < 0:
        raise ValueError(f"u must be nonnegative, got {u}")
    prod = 1.0
    for i in range(t):
        prod *= u - i
    return prod / math.factorial(t)


def log_binom_real(u: float, t: int) -> float:
    """Natural log of binom_real(u, t), valid for u > t - 1."""
    return math.fsum(math.log(u - i) for i in range(t)) - math.lgamma(t + 1)


def _check_domain(x: float, t: int) -> None:
    if not x > t - 1:
        raise ValueError(f"x must exceed t-1 = {t - 1}, got {x}")


def log_h(x: float, params: RegimeParams) -> float:
    _check_domain(x, params.t)
    return log_binom_real(x, params.t) - math.log(x) - params.p * math.log(x - 1)


def h_value(x: float, params: RegimeParams) -> float:
    """binom(x, t) / (x (x-1)^p) on (t-1, inf)."""
    _check_domain(x, params.t)
    if params.p > LOG_P:
        return math.exp(log_h(x, params))
    return binom_real(x, params.t) / (x * (x - 1) ** params.p)


def g_value(x: float, params: RegimeParams) -> float:
    """Rescaled derivative of h; same sign as h'(x), strictly decreasing."""
    _check_domain(x, params.t)
    t = params.t
    return math.fsum((i - 1) / (x - i) for i in range(2, t)) + t - 1 - params.p


def _hyper_params(params: RegimeParams) -> tuple[int, int, int, float]:
    if not params.is_hyper:
        raise ValueError("hypergraph parameters (r, j) required")
    return params.t, params.r, params.j, params.p


def log_htilde(x: float, params: RegimeParams) -> float:
    t, r, j, p = _hyper_params(params)
    _check_domain(x, t)
    return log_binom_real(x, t) - log_binom_real(x, j) - p * log_binom_real(x - j, r - j)


def htilde_value(x: float, params: RegimeParams) -> float:
    """binom(x, t) / (binom(x, j) binom(x-j, r-j)^p) on (t-1, inf)."""
    t, r, j, p = _hyper_params(params)
    _check_domain(x, t)
    if p > LOG_P:
        return math.exp(log_htilde(x, params))
    return binom_real(x, t) / (binom_real(x, j) * binom_real(x - j, r - j) ** p)


def gtilde_value(x: float, params: RegimeParams) -> float:
    """Logarithmic derivative of h~."""
    t, r, j, p = _hyper_params(params)
    _check_domain(x, t)
    pos = math.fsum(1.0 / (x - i) for i in range(j, t))
    neg = math.fsum(1.0 / (x - i) for i in range(j, r))
    return pos - p * neg


def _bisect_decreasing(f: Callable[[float], float], left: float) -> float:
    """Root of a strictly decreasing f on (left, inf), positive near left."""
    offset = EDGE_OFFSET
    lo = left + offset
    while f(lo) <= 0:
        offset /= 2
        lo = left + offset
        if offset < 1e-300:
            raise ArithmeticError("could not bracket root from the left")
    hi = lo + 1.0
    while f(hi) > 0:
        hi = left + 2 * (hi - left)
        if hi > 1e300:
            raise ArithmeticError("could not bracket root from the right")
    return _bisect(f, lo, hi, decreasing=True)


def _bisect(f: Callable[[float], float], lo: float, hi: float, decreasing: bool) -> float:
    # run to float resolution (always within X_TOL) unless the cap hits first
    for _ in range(MAX_ITER):
        mid = 0.5 * (lo + hi)
        if mid <= lo or mid >= hi:
            break
        val = f(mid)
        if val == 0:
            return mid
        if (val > 0) == decreasing:
            lo = mid
        else:
            hi = mid
    return 0.5 * (lo + hi)


def solve_s_real(params: RegimeParams) -> float:
    """The unique maximizer of h on (t-1, inf); needs p > t-1."""
    if params.p <= params.t - 1:
        raise ValueError(f"need p > t-1 = {params.t - 1}, got p={params.p}")
    return _bisect_decreasing(lambda x: g_value(x, params), params.t - 1)


def select_s_int(params: RegimeParams) -> int:
    """Best integer >= t for h; the smaller one wins an exact tie."""
    s = solve_s_real(params)
    cands = sorted({max(params.t, math.floor(s)), max(params.t, math.ceil(s))})
    best = cands[0]
    for c in cands[1:]:
        if log_h(c, params) > log_h(best, params):
            best = c
    return best


def solve_u_small(C: float, params: RegimeParams) -> float:
    """Unique u > 1 with u^(1/p) (u-1) = C."""
    if not C > 0:
        raise ValueError(f"C must be positive, got {C}")
    p = params.p
    log_c = math.log(C)

    def f(u):
        return math.log(u) / p + math.log(u - 1) - log_c

    hi = 2.0
    while f(hi) < 0:
        hi *= 2
    return _bisect(f, 1.0, hi, decreasing=False)


def solve_s_real_hyper(params: RegimeParams) -> float:
    """The unique maximizer of h~; needs p > (t-j)/(r-j)."""
    _hyper_params(params)
    if not params.supercritical:
        raise ValueError(f"need p > {params.threshold}, got p={params.p}")
    return _bisect_decreasing(lambda x: gtilde_value(x, params), params.t - 1)


def solve_u_hyper(C: float, params: RegimeParams) -> float:
    """Unique u > r-1 with binom(u, j)^(1/p) binom(u-j, r-j) = C."""
    t, r, j, p = _hyper_params(params)
    if not C > 0:
        raise ValueError(f"C must be positive, got {C}")
    log_c = math.log(C)

    def f(u):
        return log_binom_real(u, j) / p + log_binom_real(u - j, r - j) - log_c

    lo = float(r - 1)
    hi = lo + 1.0
    while f(hi) < 0:
        hi = lo + 2 * (hi - lo)
    return _bisect(f, lo, hi, decreasing=False)
