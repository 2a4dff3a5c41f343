"""Exhaustive and randomized verification of the clique bounds.

The exhaustive suites work on edge bitmasks with numpy: clique counts and
degree sequences are computed for a whole chunk of masks at once, and the
(scalar) bound is evaluated once per distinct sorted degree multiset, since
the norm, and hence the bound, depends on nothing else.
"""

from __future__ import annotations

import json
import math
import os
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import asdict, dataclass, field
from functools import lru_cache
from itertools import combinations
from typing import Iterable, Optional, Sequence

import numpy as np

from . import bounds
from . import realmath as rm
from .graphs import (
    Graph,
    count_cliques,
    construct_complete,
    construct_disjoint_cliques,
    degree_norm,
    norm_of_degrees,
    random_graph,
)

TOL = 1e-9
CHUNK = 1 << 18
MAX_GRAPH_N = 7
MAX_HYPER_SLOTS = 20


@dataclass
class Violation:
    instance: str
    p: float
    k: int
    bound: float
    norm: float


@dataclass
class PStat:
    p: float
    max_ratio: float = 0.0
    witness: Optional[str] = None
    violations: int = 0


@dataclass
class VerificationReport:
    suite: str
    instances_checked: int = 0
    violations: list[Violation] = field(default_factory=list)
    max_ratio: float = 0.0
    witness: Optional[str] = None
    elapsed: float = 0.0
    per_p: list[PStat] = field(default_factory=list)
    notes: dict = field(default_factory=dict)

    @property
    def ok(self) -> bool:
        return not self.violations

    def to_dict(self) -> dict:
        return asdict(self)

    def to_json(self, **kw) -> str:
        return json.dumps(self.to_dict(), **kw)

    @classmethod
    def from_dict(cls, d: dict) -> "VerificationReport":
        d = dict(d)
        d["violations"] = [Violation(**v) for v in d.get("violations", [])]
        d["per_p"] = [PStat(**s) for s in d.get("per_p", [])]
        return cls(**d)

    @classmethod
    def from_json(cls, s: str) -> "VerificationReport":
        return cls.from_dict(json.loads(s))


def _better(ratio: float, witness: str, best_ratio: float, best_witness: Optional[str]) -> bool:
    if ratio != best_ratio:
        return ratio > best_ratio
    return best_witness is None or witness < best_witness


def merge_reports(a: VerificationReport, b: VerificationReport) -> VerificationReport:
    """Combine two partial reports of the same suite; associative and commutative."""
    out = VerificationReport(a.suite)
    out.instances_checked = a.instances_checked + b.instances_checked
    out.violations = sorted(a.violations + b.violations, key=lambda v: (v.instance, v.p))
    stats = {s.p: PStat(s.p, s.max_ratio, s.witness, s.violations) for s in a.per_p}
    for s in b.per_p:
        cur = stats.setdefault(s.p, PStat(s.p))
        if s.witness is not None and _better(s.max_ratio, s.witness, cur.max_ratio, cur.witness):
            cur.max_ratio, cur.witness = s.max_ratio, s.witness
        cur.violations += s.violations
    out.per_p = [stats[p] for p in sorted(stats)]
    _finish(out)
    out.elapsed = a.elapsed + b.elapsed
    out.notes = {**a.notes}
    for k, v in b.notes.items():
        out.notes[k] = out.notes.get(k, 0) + v if isinstance(v, int) else v
    return out


def _finish(report: VerificationReport) -> None:
    report.max_ratio, report.witness = 0.0, None
    for s in report.per_p:
        if s.witness is not None and _better(s.max_ratio, s.witness, report.max_ratio, report.witness):
            report.max_ratio, report.witness = s.max_ratio, s.witness


def _workers() -> int:
    return max(1, int(os.environ.get("CLIQUENORM_WORKERS", "1")))


def _run_chunks(fn, args_list: list[tuple], suite: str, workers: Optional[int]) -> VerificationReport:
    workers = _workers() if workers is None else workers
    start = time.perf_counter()
    if workers > 1 and len(args_list) > 1:
        with ProcessPoolExecutor(workers) as pool:
            parts = list(pool.map(fn, *zip(*args_list)))
    else:
        parts = [fn(*a) for a in args_list]
    report = VerificationReport(suite)
    for part in parts:
        report = merge_reports(report, part)
    report.suite = suite
    report.elapsed = time.perf_counter() - start
    return report


# --- vectorized exhaustive kernels -------------------------------------------

def _subset_masks(slots: list[tuple[int, ...]], sets: Iterable[tuple[int, ...]], r: int) -> list[int]:
    """For each set, the slot bitmask of all its r-subsets."""
    index = {s: i for i, s in enumerate(slots)}
    out = []
    for T in sets:
        m = 0
        for e in combinations(T, r):
            m |= 1 << index[e]
        out.append(m)
    return out


def _chunk_counts_and_keys(masks: np.ndarray, n: int, r: int, j: int, t: int):
    """Clique counts and encoded sorted j-degree multisets for each mask."""
    slots = list(combinations(range(n), r))
    k = np.zeros(len(masks), dtype=np.int64)
    for tm in _subset_masks(slots, combinations(range(n), t), r):
        k += (masks & tm) == tm
    jsets = list(combinations(range(n), j))
    bits = ((masks[:, None] >> np.arange(len(slots), dtype=np.int64)) & 1).astype(np.int16)
    deg = np.zeros((len(masks), len(jsets)), dtype=np.int16)
    for si, S in enumerate(jsets):
        cols = [i for i, e in enumerate(slots) if set(S) <= set(e)]
        deg[:, si] = bits[:, cols].sum(axis=1)
    deg.sort(axis=1)
    base = math.comb(n - j, r - j) + 1
    keys = np.zeros(len(masks), dtype=np.int64)
    for c in range(deg.shape[1]):
        keys = keys * base + deg[:, c]
    return k, keys, base, deg.shape[1]


def _decode(key: int, base: int, width: int) -> list[int]:
    out = []
    for _ in range(width):
        key, d = divmod(key, base)
        out.append(d)
    return out[::-1]


@lru_cache(maxsize=None)
def _graph_bound(degs: tuple[int, ...], p: float, t: int) -> tuple[float, float]:
    C = norm_of_degrees(degs, p)
    return C, bounds.clique_bound(p, t, C).bound


@lru_cache(maxsize=None)
def _hyper_bound(degs: tuple[int, ...], p: float, t: int, r: int, j: int) -> tuple[float, float]:
    C = norm_of_degrees(degs, p)
    return C, bounds.hyperclique_bound(p, t, r, j, C).bound


def _check_arrays(report: VerificationReport, ids, k: np.ndarray, bound: np.ndarray,
                  norm: np.ndarray, p: float) -> None:
    stat = PStat(p)
    bad = np.flatnonzero(k > bound + TOL)
    for i in bad:
        report.violations.append(Violation(ids(i), p, int(k[i]), float(bound[i]), float(norm[i])))
    stat.violations = len(bad)
    usable = bound > 0
    if usable.any():
        ratio = np.where(usable, k / np.where(usable, bound, 1.0), -1.0)
        i = int(np.argmax(ratio))
        stat.max_ratio, stat.witness = float(ratio[i]), ids(i)
    report.per_p.append(stat)


def _mask_id(kind: str, n: int, width: int):
    hexw = (width + 3) // 4
    return lambda mask: f"{kind}:n={n}:mask={int(mask):0{hexw}x}"


def _exhaustive_chunk(kind: str, n: int, r: int, j: int, t: int,
                      p_list: tuple[float, ...], start: int, stop: int) -> VerificationReport:
    masks = np.arange(start, stop, dtype=np.int64)
    k, keys, base, width = _chunk_counts_and_keys(masks, n, r, j, t)
    ukeys, inv = np.unique(keys, return_inverse=True)
    degs = [tuple(_decode(int(key), base, width)) for key in ukeys]
    fmt = _mask_id(kind, n, math.comb(n, r))
    report = VerificationReport(kind, instances_checked=len(masks))
    for p in p_list:
        if kind == "graph":
            pairs = [_graph_bound(d, p, t) for d in degs]
        else:
            pairs = [_hyper_bound(d, p, t, r, j) for d in degs]
        unorm = np.array([c for c, _ in pairs])
        ubound = np.array([b for _, b in pairs])
        _check_arrays(report, lambda i: fmt(masks[i]), k, ubound[inv], unorm[inv], p)
    _finish(report)
    return report


def _ranges(total: int, chunk: int) -> list[tuple[int, int]]:
    return [(s, min(s + chunk, total)) for s in range(0, total, chunk)]


def verify_exhaustive_graphs(n: int, t: int, p_list: Sequence[float], allow_n8: bool = False,
                             chunk: int = CHUNK, workers: Optional[int] = None) -> VerificationReport:
    """Check the clique bound on every labelled graph on n vertices."""
    limit = 8 if allow_n8 else MAX_GRAPH_N
    if n > limit:
        raise ValueError(f"n = {n} exceeds the exhaustive limit {limit}")
    if t < 3:
        raise ValueError(f"t must be >= 3, got {t}")
    total = 1 << math.comb(n, 2)
    ps = tuple(float(p) for p in p_list)
    args = [("graph", n, 2, 1, t, ps, a, b) for a, b in _ranges(total, chunk)]
    rep = _run_chunks(_exhaustive_chunk, args, f"graphs-exhaustive(n={n}, t={t})", workers)
    return rep


def verify_exhaustive_hypergraphs(n: int, r: int, j: int, t: int, p_list: Sequence[float],
                                  chunk: int = CHUNK, workers: Optional[int] = None) -> VerificationReport:
    """Check the hyperclique bound on every labelled r-graph on n vertices."""
    rm.RegimeParams(t, 1.0, r, j)
    slots = math.comb(n, r)
    if slots > MAX_HYPER_SLOTS:
        raise ValueError(f"C({n},{r}) = {slots} exceeds the exhaustive limit {MAX_HYPER_SLOTS}")
    ps = tuple(float(p) for p in p_list)
    args = [("hyper", n, r, j, t, ps, a, b) for a, b in _ranges(1 << slots, chunk)]
    return _run_chunks(_exhaustive_chunk, args,
                       f"hyper-exhaustive(n={n}, r={r}, j={j}, t={t})", workers)


def exhaustive_clique_counts(n: int, t: int, start: int = 0, stop: Optional[int] = None) -> np.ndarray:
    """k_t for every graph mask in [start, stop), vectorized."""
    total = 1 << math.comb(n, 2)
    stop = total if stop is None else stop
    return _chunk_counts_and_keys(np.arange(start, stop, dtype=np.int64), n, 2, 1, t)[0]


# --- random suites -----------------------------------------------------------

def _sample_rng(seed: int, i: int) -> np.random.Generator:
    # per-sample substream: results do not depend on how samples are chunked
    return np.random.default_rng([seed, i])


def _random_chunk(n: int, edge_prob: float, t: int, p_list: tuple[float, ...],
                  seed: int, start: int, stop: int) -> VerificationReport:
    report = VerificationReport("graphs-random", instances_checked=stop - start)
    ids, ks, norms = [], [], {p: [] for p in p_list}
    for i in range(start, stop):
        G = random_graph(n, edge_prob, _sample_rng(seed, i))
        ids.append(f"random:seed={seed}:i={i:07d}")
        ks.append(count_cliques(G, t))
        degs = G.degrees()
        for p in p_list:
            norms[p].append(norm_of_degrees(degs, p))
    k = np.array(ks, dtype=np.int64)
    for p in p_list:
        norm = np.array(norms[p])
        bnd = np.array([bounds.clique_bound(p, t, c).bound for c in norm])
        _check_arrays(report, ids.__getitem__, k, bnd, norm, p)
    _finish(report)
    return report


def verify_random_graphs(n: int, samples: int, edge_prob: float, t: int, p_list: Sequence[float],
                         seed: int, chunk: int = 1000, workers: Optional[int] = None) -> VerificationReport:
    if n > 64:
        raise ValueError(f"n = {n} exceeds 64")
    ps = tuple(float(p) for p in p_list)
    args = [(n, edge_prob, t, ps, seed, a, b) for a, b in _ranges(samples, chunk)]
    return _run_chunks(_random_chunk, args, f"graphs-random(n={n}, p_edge={edge_prob}, t={t})", workers)


def verify_fixed_n(n: int, t: int, p: float, samples: int, seed: int,
                   extra: Sequence[Graph] = ()) -> VerificationReport:
    """Fixed-vertex-count bound on random n-vertex graphs of random density.

    Samples failing the theorem's precondition are counted, not checked.
    """
    start = time.perf_counter()
    params = rm.RegimeParams(t, p)
    if not params.supercritical:
        raise ValueError(f"need p > t-1 = {t - 1}, got {p}")
    s = rm.solve_s_real(params)
    report = VerificationReport(f"fixed-n(n={n}, t={t}, p={p})")
    stat = PStat(p)
    met = 0
    instances = []
    for i in range(samples):
        rng = _sample_rng(seed, i)
        instances.append((f"fixed-n:seed={seed}:i={i:07d}", random_graph(n, rng.random(), rng)))
    instances += [(f"fixture:{i:03d}", G) for i, G in enumerate(extra)]
    for ident, G in instances:
        if G.n != n:
            raise ValueError(f"{ident} has {G.n} vertices, expected {n}")
        report.instances_checked += 1
        C = degree_norm(G, p)
        if C == 0 or n * (s - 1) ** p > C ** p:
            continue
        met += 1
        k = count_cliques(G, t)
        bnd = bounds.fixed_n_bound(n, p, t, C)
        if k > bnd + TOL:
            report.violations.append(Violation(ident, p, k, bnd, C))
            stat.violations += 1
        if bnd > 0 and _better(k / bnd, ident, stat.max_ratio, stat.witness):
            stat.max_ratio, stat.witness = k / bnd, ident
    report.per_p = [stat]
    report.notes = {"precondition_met": met}
    _finish(report)
    report.elapsed = time.perf_counter() - start
    return report


# --- tightness ---------------------------------------------------------------

class NotTight(ValueError):
    """The construction's integrality or regime conditions fail."""


@dataclass(frozen=True)
class Construction:
    kind: str  # "clique", "disjoint" or "fixed-n"
    u: int
    m: int = 1

    @classmethod
    def parse(cls, text: str) -> "Construction":
        """``clique:U``, ``disjoint:MxU`` or ``fixed-n:MxU``."""
        kind, _, rest = text.partition(":")
        if kind == "clique":
            return cls(kind, int(rest))
        if kind in ("disjoint", "fixed-n"):
            m, _, u = rest.partition("x")
            return cls(kind, int(u), int(m))
        raise ValueError(f"unknown construction {text!r}")

    def build(self) -> Graph:
        if self.kind == "clique":
            return construct_complete(self.u)
        return construct_disjoint_cliques([self.u] * self.m)


@dataclass
class TightnessResult:
    k: int
    norm: float
    bound: float
    ratio: float


def verify_tightness(spec: Construction, t: int, p: float) -> TightnessResult:
    params = rm.RegimeParams(t, p)
    G = spec.build()
    C = degree_norm(G, p)
    if spec.kind == "clique":
        if params.supercritical:
            raise NotTight(f"a single clique is the witness only for p <= t-1 = {t - 1}")
        if spec.u < t:
            raise NotTight(f"u = {spec.u} < t = {t} has no t-clique")
        bnd = bounds.clique_bound(p, t, C).bound
    elif spec.kind == "disjoint":
        if not params.supercritical:
            raise NotTight(f"disjoint cliques are the witness only for p > t-1 = {t - 1}")
        s_int = rm.select_s_int(params)
        if spec.u != s_int:
            raise NotTight(f"clique order {spec.u} differs from the best integer {s_int}")
        bnd = bounds.clique_bound(p, t, C).bound
    elif spec.kind == "fixed-n":
        if not params.supercritical:
            raise NotTight(f"the fixed-n bound needs p > t-1 = {t - 1}")
        try:
            bnd = bounds.fixed_n_bound(G.n, p, t, C)
        except bounds.PreconditionError as exc:
            raise NotTight(str(exc)) from exc
    else:
        raise ValueError(f"unknown construction kind {spec.kind!r}")
    k = count_cliques(G, t)
    return TightnessResult(k, C, bnd, k / bnd if bnd > 0 else math.nan)


# --- analytic checks ---------------------------------------------------------

@dataclass
class Prop9Result:
    s_real: float
    root_residual: float
    unimodal_ok: bool
    monotone_ok: bool
    derivative_ok: bool

    @property
    def ok(self) -> bool:
        return self.root_residual <= TOL and self.unimodal_ok and self.monotone_ok and self.derivative_ok


def check_proposition9(p: float, t: int, grid_size: int = 60) -> Prop9Result:
    """Root, unimodality and stationarity of h around its maximizer."""
    params = rm.RegimeParams(t, p)
    s = rm.solve_s_real(params)
    width = s - (t - 1)
    left = sorted(s - width * np.geomspace(1e-3, 1 - 1e-6, grid_size))
    right = list(s + np.geomspace(1e-3 * max(1.0, width), max(1e3 - s, 1.0), grid_size))
    lh_left = [rm.log_h(x, params) for x in left] + [rm.log_h(s, params)]
    lh_right = [rm.log_h(s, params)] + [rm.log_h(x, params) for x in right]
    unimodal = all(a < b for a, b in zip(lh_left, lh_left[1:])) and \
        all(a > b for a, b in zip(lh_right, lh_right[1:]))
    gs = [rm.g_value(x, params) for x in left + [s] + right]
    monotone = all(a > b for a, b in zip(gs, gs[1:]))
    step = 1e-4 * width
    hs = rm.h_value(s, params)
    fd = (rm.h_value(s + step, params) - rm.h_value(s - step, params)) / (2 * step)
    return Prop9Result(s, abs(rm.g_value(s, params)), unimodal, monotone, abs(fd) <= 1e-6 * hs)
