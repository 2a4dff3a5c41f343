"""Acceptance criteria, one test each, at the stated tolerances.

Every test records a PASS/FAIL line through the ``criterion`` fixture; the
lines are printed in a summary section at the end of the pytest run.
"""

import math
import time

import numpy as np
import pytest

from cliquenorm import realmath as rm
from cliquenorm.bounds import (
    chase_gls_bound,
    clique_bound,
    fixed_n_bound,
    fixed_n_precondition,
)
from cliquenorm.entropy import (
    claim6_gap,
    claim7,
    claim_small_p,
    clique_family,
    entropy_chain,
)
from cliquenorm.graphs import (
    construct_complete,
    construct_disjoint_cliques,
    construct_gls,
    count_cliques,
    degree_norm,
    enumerate_all_graphs,
    random_graph,
)
from cliquenorm.harness import check_proposition9, verify_exhaustive_graphs, verify_exhaustive_hypergraphs

REL = 1e-9


def close(a, b, tol=REL):
    return abs(a - b) <= tol * max(1.0, abs(b))


def increasing_root(f, lo, hi):
    """Root of an increasing f on [lo, hi] by plain bisection."""
    for _ in range(200):
        mid = (lo + hi) / 2
        if f(mid) < 0:
            lo = mid
        else:
            hi = mid
    return (lo + hi) / 2


def suite_7a():
    """t=3 entropy chains of every graph on at most 6 vertices with a triangle."""
    out = []
    for n in range(3, 7):
        for G in enumerate_all_graphs(n):
            if count_cliques(G, 3):
                out.append((G, entropy_chain(clique_family(G, 3))))
    return out


@pytest.fixture(scope="module")
def chains_7a():
    return suite_7a()


def test_c01_kruskal_katona_tightness(criterion):
    start = time.perf_counter()
    bad = []
    for u in range(3, 11):
        K = construct_complete(u)
        for t in (3, 4, 5):
            if u < t:
                continue
            norm = degree_norm(K, 1)
            b = clique_bound(1, t, u * (u - 1)).bound
            if norm != u * (u - 1) or count_cliques(K, t) != math.comb(u, t) or not close(b, math.comb(u, t)):
                bad.append((u, t, b))
    elapsed = time.perf_counter() - start
    ok = criterion("1 Kruskal-Katona tightness", not bad and elapsed < 1, f"bad={bad} time={elapsed:.3f}s")
    assert ok


def test_c02_subcritical_tightness(criterion):
    start = time.perf_counter()
    worst = 0.0
    for p in (0.5, 1, 1.5, 2):
        for u in range(4, 11):
            C = u ** (1 / p) * (u - 1)
            worst = max(worst, abs(count_cliques(construct_complete(u), 3) / clique_bound(p, 3, C).bound - 1))
    elapsed = time.perf_counter() - start
    ok = criterion("2 subcritical tightness", worst <= REL and elapsed < 1,
                   f"max|ratio-1|={worst:.2e} time={elapsed:.3f}s")
    assert ok


def test_c03_supercritical_tightness(criterion):
    start = time.perf_counter()
    bad = []
    for m in range(1, 21):
        G = construct_disjoint_cliques([3] * m)
        C = degree_norm(G, 3)
        res = clique_bound(3, 3, C)
        if not (close(C ** 3, 24 * m) and res.s_int == 3 and close(res.bound, m) and count_cliques(G, 3) == m):
            bad.append(("K3", m, res.bound))
        G4 = construct_disjoint_cliques([4] * m)
        res4 = clique_bound(2.5, 3, degree_norm(G4, 2.5))
        k = count_cliques(G4, 3)
        if not (res4.s_int == 4 and k == 4 * m and close(res4.bound, k)):
            bad.append(("K4", m, res4.bound))
    elapsed = time.perf_counter() - start
    ok = criterion("3 supercritical tightness", not bad and elapsed < 1, f"bad={bad} time={elapsed:.3f}s")
    assert ok


def test_c04_fixed_n_tightness(criterion):
    start = time.perf_counter()
    G = construct_disjoint_cliques([4, 4, 4])
    C = 324 ** (1 / 3)
    lhs, rhs = fixed_n_precondition(12, 3, 3, C)
    u = C / 12 ** (1 / 3) + 1
    b = fixed_n_bound(12, 3, 3, C)
    elapsed = time.perf_counter() - start
    ok = (close(degree_norm(G, 3) ** 3, 324) and close(u, 4) and close(b, 12)
          and count_cliques(G, 3) == 12 and close(lhs, 96) and lhs <= rhs and elapsed < 1)
    ok = criterion("4 fixed-n tightness", ok, f"u={u:.12g} bound={b:.12g} precondition={lhs:.6g}<={rhs:.6g}")
    assert ok


def test_c05_exhaustive_graphs(criterion):
    rep = verify_exhaustive_graphs(7, 3, [0.5, 1, 1.5, 2, 3, 5])
    ok = rep.instances_checked == 1 << 21 and not rep.violations and rep.max_ratio <= 1 + REL
    ok = criterion("5 exhaustive graphs n=7", ok,
                   f"instances={rep.instances_checked} violations={len(rep.violations)} "
                   f"max_ratio={rep.max_ratio:.12g} witness={rep.witness} time={rep.elapsed:.1f}s")
    assert ok


def test_c06_exhaustive_hypergraphs(criterion):
    details, ok = [], True
    for t, j in ((4, 1), (4, 2)):
        ps = [0.5, 1, (t - j) / (3 - j), 3]
        rep = verify_exhaustive_hypergraphs(6, 3, j, t, ps)
        ok &= rep.instances_checked == 1 << 20 and not rep.violations and rep.max_ratio <= 1 + REL
        details.append(f"j={j}: violations={len(rep.violations)} max_ratio={rep.max_ratio:.12g} "
                       f"time={rep.elapsed:.1f}s")
    ok = criterion("6 exhaustive hypergraphs n=6 r=3", ok, "; ".join(details))
    assert ok


def test_c07_entropy_chain(criterion, chains_7a):
    start = time.perf_counter()
    failures = 0
    checked = 0

    def check(rep, t, k):
        x = rep.x
        chain = all(x[i] >= x[i + 1] + 1 - REL for i in range(len(x) - 1))
        prod = close(rep.product, math.factorial(t) * k)
        return chain and prod

    for G, rep in chains_7a:
        checked += 1
        failures += not check(rep, 3, rep.family_size)
    for i in range(500):
        G = random_graph(10, 0.5, np.random.default_rng([2024, i]))
        for t in (3, 4):
            k = count_cliques(G, t)
            if k == 0:
                continue
            checked += 1
            failures += not check(entropy_chain(clique_family(G, t)), t, k)
    elapsed = time.perf_counter() - start
    ok = criterion("7 entropy chain", failures == 0 and elapsed < 60,
                   f"families={checked} failures={failures} time={elapsed:.1f}s")
    assert ok


def test_c08_solver_closed_forms(criterion):
    start = time.perf_counter()
    errs = [abs(rm.solve_s_real(rm.RegimeParams(3, p)) - (2 + 1 / (p - 2))) for p in (2.5, 3, 4, 12)]
    errs.append(abs(rm.solve_s_real(rm.RegimeParams(4, 5)) - (13 + math.sqrt(17)) / 4))
    errs.append(abs(rm.solve_s_real_hyper(rm.RegimeParams(4, 2, 3, 1)) - (3 + math.sqrt(2))))
    pairs = [(p, t) for t in (3, 4, 5, 6) for p in (t - 1 + 0.25, t - 0.5, t, t + 2, 4 * t)]
    prop9 = [check_proposition9(p, t).ok for p, t in pairs]
    elapsed = time.perf_counter() - start
    ok = max(errs) <= REL and len(pairs) == 20 and all(prop9) and elapsed < 1
    ok = criterion("8 closed-form solvers", ok,
                   f"max_err={max(errs):.2e} prop9={sum(prop9)}/{len(pairs)} time={elapsed:.3f}s")
    assert ok


def _dense_graphs(count, n, seed, t, min_cliques):
    out, i = [], 0
    while len(out) < count:
        rng = np.random.default_rng([seed, i])
        i += 1
        G = random_graph(n, 0.55 + 0.4 * rng.random(), rng)
        k = count_cliques(G, t)
        if k >= min_cliques:
            out.append((G, k, rng))
    return out


def test_c09_claim_diagnostics(criterion, chains_7a):
    start = time.perf_counter()
    worst_gap = min(claim6_gap(G, 3, p, rep).gap for G, rep in chains_7a for p in (0.5, 1, 2, 3))
    K4 = construct_complete(4)
    k4_gap = max(abs(claim6_gap(K4, 3, p).gap) for p in (0.5, 1, 2, 3, 5, 10))

    # small p: pick u in [t, u_k) where binom(u_k, t) = k, and p in (0, t-1]
    small_ok = 0
    for G, k, rng in _dense_graphs(100, 9, 5, 3, 2):
        u_k = increasing_root(lambda u: rm.binom_real(u, 3) - k, 3, k + 3)
        u = 3 + (u_k - 3) * rng.uniform(0.05, 0.95)
        rec = claim_small_p(G, 3, rng.uniform(0.1, 2), u)
        small_ok += rec.hypothesis and rec.holds is True

    # fixed n: pick u in [s_R, u_k) where (n/u) binom(u, t) = k
    big_ok = 0
    built = 0
    for G, k, rng in _dense_graphs(400, 10, 9, 3, 1):
        p = float(rng.choice([2.5, 3, 4, 5]))
        s = rm.solve_s_real(rm.RegimeParams(3, p))
        if k <= G.n / s * rm.binom_real(s, 3):
            continue
        u_k = increasing_root(lambda u: G.n / u * rm.binom_real(u, 3) - k, s, G.n + 1)
        u = s + (u_k - s) * rng.uniform(0.05, 0.95)
        rec = claim7(G, 3, p, u)
        big_ok += rec.hypothesis and rec.holds is True and rec.chain_n_ok
        built += 1
        if built == 100:
            break
    elapsed = time.perf_counter() - start
    ok = (worst_gap >= -REL and k4_gap <= REL and small_ok == 100 and built == 100 and big_ok == 100
          and elapsed < 60)
    ok = criterion("9 claim diagnostics", ok,
                   f"min_gap={worst_gap:.3g} K4_gap={k4_gap:.1e} claim5={small_ok}/100 "
                   f"claim7={big_ok}/{built} time={elapsed:.1f}s")
    assert ok


def test_c10a_large_p_ratio_monotone(criterion):
    ok, details = True, []
    for n, delta, t in ((10, 4, 3), (12, 3, 3), (18, 5, 4)):
        G = construct_gls(n, delta)
        assert n % (delta + 1) == 0
        chase = chase_gls_bound(n, delta, t)
        ratios = [clique_bound(p, t, degree_norm(G, p)).bound / chase for p in (10, 20, 50)]
        mono = all(b <= a * (1 + REL) for a, b in zip(ratios, ratios[1:]))
        ok &= mono and ratios[-1] > 1
        details.append(f"({n},{delta},{t}): " + ", ".join(f"{r:.4g}" for r in ratios))
    ok = criterion("10a large-p ratio to max-degree bound non-increasing", ok, "; ".join(details))
    assert ok


def test_c10b_max_degree_bound_exact(criterion):
    bad = [(n, d, t) for n in range(1, 31) for d in range(0, 7) for t in range(2, 6)
           if chase_gls_bound(n, d, t) != count_cliques(construct_gls(n, d), t)]
    ok = criterion("10b max-degree bound equals count on extremal graphs", not bad, f"bad={bad[:5]}")
    assert ok
