"""Command-line interface.

Exit codes: 0 success, 1 verification violations, 2 usage or input errors,
3 a theorem's precondition does not hold.
"""

from __future__ import annotations

import argparse
import csv
import json
import logging
import math
import sys
from pathlib import Path

import numpy as np

from . import bounds, entropy, fileio, harness
from . import realmath as rm
from .graphs import (
    construct_complete,
    construct_disjoint_cliques,
    construct_gls,
    count_cliques,
)
from .hypergraphs import (
    construct_complete_hyper,
    construct_disjoint_complete_hyper,
    count_hypercliques,
)

log = logging.getLogger("cliquenorm")

EXIT_VIOLATION = 1
EXIT_USAGE = 2
EXIT_PRECONDITION = 3


class UsageError(Exception):
    pass


def _float(text: str) -> float:
    if text.lower() in ("inf", "infinity", "oo"):
        return math.inf
    try:
        return float(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"not a number: {text!r}") from None


def _float_list(text: str) -> list[float]:
    return [_float(tok) for tok in text.split(",") if tok.strip()]


def _int_list(text: str) -> list[int]:
    try:
        return [int(tok) for tok in text.split(",") if tok.strip()]
    except ValueError:
        raise argparse.ArgumentTypeError(f"not a list of integers: {text!r}") from None


def _fmt(x) -> str:
    if x is None:
        return "-"
    if isinstance(x, float):
        return f"{x:.12g}"
    return str(x)


def _emit(text: str, out) -> None:
    if out in (None, "-"):
        sys.stdout.write(text)
    else:
        Path(out).write_text(text)


# --- bound ---------------------------------------------------------------------

def cmd_bound(args) -> int:
    p, t, C = args.p, args.t, args.C
    hyper = args.r is not None or args.j is not None
    if math.isinf(p):
        if args.n is None or args.delta is None:
            raise UsageError("p = inf needs --n and --delta (max degree)")
        value = bounds.chase_gls_bound(args.n, args.delta, t)
        payload = {"mode": "max-degree", "n": args.n, "delta": args.delta, "bound": value}
        _print_payload(payload, args.json)
        return 0
    if C is None:
        raise UsageError("--C is required for finite p")
    if hyper:
        if args.r is None or args.j is None:
            raise UsageError("--r and --j must be given together")
        result = bounds.hyperclique_bound(p, t, args.r, args.j, C)
    elif args.n is not None:
        try:
            value = bounds.fixed_n_bound(args.n, p, t, C)
        except bounds.PreconditionError as exc:
            print(f"precondition failed: {exc}", file=sys.stderr)
            return EXIT_PRECONDITION
        lhs, rhs = bounds.fixed_n_precondition(args.n, p, t, C)
        payload = {
            "mode": "fixed-n", "n": args.n, "u": C / args.n ** (1 / p) + 1,
            "s_real": rm.solve_s_real(rm.RegimeParams(t, p)),
            "precondition_lhs": lhs, "precondition_rhs": rhs, "bound": value,
        }
        _print_payload(payload, args.json)
        return 0
    else:
        result = bounds.clique_bound(p, t, C)
    _print_payload(result.to_dict(), args.json)
    return 0


def _print_payload(payload: dict, as_json: bool) -> None:
    if as_json:
        print(json.dumps(payload))
        return
    for k, v in payload.items():
        print(f"{k}: {_fmt(v)}")


# --- count / construct ---------------------------------------------------------

def cmd_count(args) -> int:
    if args.hyper:
        H = fileio.read_hypergraph(args.input)
        print(count_hypercliques(H, args.t))
    else:
        G = fileio.read_graph(args.input)
        print(count_cliques(G, args.t))
    return 0


def _need(args, *names):
    missing = [f"--{n.replace('_', '-')}" for n in names if getattr(args, n) is None]
    if missing:
        raise UsageError(f"--type {args.type} needs {', '.join(missing)}")


def cmd_construct(args) -> int:
    kind = args.type
    if kind == "clique":
        _need(args, "u")
        text = fileio.format_graph(construct_complete(args.u), f"K_{args.u}")
    elif kind == "disjoint":
        _need(args, "sizes")
        text = fileio.format_graph(construct_disjoint_cliques(args.sizes),
                                   "disjoint cliques " + ",".join(map(str, args.sizes)))
    elif kind == "gls":
        _need(args, "n", "delta")
        text = fileio.format_graph(construct_gls(args.n, args.delta),
                                   f"max-degree extremal graph n={args.n} delta={args.delta}")
    else:
        _need(args, "u", "r")
        m = args.m or 1
        H = construct_disjoint_complete_hyper(m, args.u, args.r) if m > 1 else \
            construct_complete_hyper(args.u, args.r)
        text = fileio.format_hypergraph(H, f"{m} x K_{args.u}^({args.r})")
    _emit(text, args.out)
    return 0


# --- verify --------------------------------------------------------------------

def _report_text(rep: harness.VerificationReport) -> str:
    lines = [
        f"suite: {rep.suite}",
        f"instances: {rep.instances_checked}",
        f"violations: {len(rep.violations)}",
        f"max_ratio: {_fmt(rep.max_ratio)}",
        f"witness: {rep.witness or '-'}",
        f"elapsed: {rep.elapsed:.3f}s",
    ]
    for s in rep.per_p:
        lines.append(f"  p={_fmt(s.p)}: max_ratio={_fmt(s.max_ratio)} witness={s.witness or '-'} "
                     f"violations={s.violations}")
    for k, v in rep.notes.items():
        lines.append(f"{k}: {v}")
    for v in rep.violations[:20]:
        lines.append(f"  VIOLATION {v.instance} p={_fmt(v.p)} k={v.k} bound={_fmt(v.bound)} norm={_fmt(v.norm)}")
    return "\n".join(lines) + "\n"


def cmd_verify(args) -> int:
    suite = args.suite
    if suite == "prop9":
        res = harness.check_proposition9(args.p[0], args.t)
        payload = {"s_real": res.s_real, "root_residual": res.root_residual,
                   "unimodal_ok": res.unimodal_ok, "monotone_ok": res.monotone_ok,
                   "derivative_ok": res.derivative_ok}
        _print_payload(payload, args.json)
        return 0 if res.ok else EXIT_VIOLATION
    if suite == "tightness":
        if not args.construction:
            raise UsageError("--suite tightness needs --construction")
        spec = harness.Construction.parse(args.construction)
        try:
            res = harness.verify_tightness(spec, args.t, args.p[0])
        except harness.NotTight as exc:
            print(f"not a tight instance: {exc}", file=sys.stderr)
            return EXIT_USAGE
        _print_payload({"k": res.k, "norm": res.norm, "bound": res.bound, "ratio": res.ratio}, args.json)
        return 0 if res.k <= res.bound + harness.TOL else EXIT_VIOLATION
    if suite == "graphs-exhaustive":
        rep = harness.verify_exhaustive_graphs(args.n, args.t, args.p, allow_n8=args.allow_n8,
                                               workers=args.workers)
    elif suite == "graphs-random":
        rep = harness.verify_random_graphs(args.n, args.samples, args.edge_prob, args.t, args.p,
                                           args.seed, workers=args.workers)
    elif suite == "hyper-exhaustive":
        if args.r is None or args.j is None:
            raise UsageError("--suite hyper-exhaustive needs --r and --j")
        rep = harness.verify_exhaustive_hypergraphs(args.n, args.r, args.j, args.t, args.p,
                                                    workers=args.workers)
    else:
        rep = harness.verify_fixed_n(args.n, args.t, args.p[0], args.samples, args.seed)
    sys.stdout.write(rep.to_json() + "\n" if args.json else _report_text(rep))
    return 0 if rep.ok else EXIT_VIOLATION


# --- entropy -------------------------------------------------------------------

def cmd_entropy(args) -> int:
    G = fileio.read_graph(args.input)
    try:
        fam = entropy.clique_family(G, args.t)
    except ValueError as exc:
        raise UsageError(str(exc)) from None
    rep = entropy.entropy_chain(fam)
    ok, margins = entropy.lemma8_check(rep)
    payload = {
        "t": args.t, "cliques": rep.family_size,
        "H": rep.prefix_entropy, "x": rep.x, "product": rep.product,
        "lemma8_ok": ok, "margins": margins,
    }
    if args.p is not None:
        gap = entropy.claim6_gap(G, args.t, args.p, rep)
        payload["claim6"] = {"lhs": gap.lhs, "rhs": gap.rhs, "gap": gap.gap}
        if args.u is not None:
            if args.p <= args.t - 1:
                payload["claim5"] = vars(entropy.claim_small_p(G, args.t, args.p, args.u, rep))
            else:
                payload["claim7"] = vars(entropy.claim7(G, args.t, args.p, args.u, rep))
    if args.json:
        print(json.dumps(payload))
        return 0
    print(f"{args.t}-cliques: {rep.family_size}")
    for k, (h, x) in enumerate(zip(rep.prefix_entropy, rep.x), 1):
        print(f"  k={k}: H={h:.12g} x={x:.12g}")
    print(f"product: {rep.product:.12g} (t! k_t = {math.factorial(args.t) * rep.family_size})")
    print(f"chain x_k >= x_(k+1) + 1: {'ok' if ok else 'FAILED'}  margins: "
          + ", ".join(f"{m:.6g}" for m in margins))
    for name in ("claim6", "claim5", "claim7"):
        if name in payload:
            print(f"{name}: " + " ".join(f"{k}={_fmt(v)}" for k, v in payload[name].items()))
    return 0


# --- sweep ---------------------------------------------------------------------

def sweep_rows(t: int, C: float, p_from: float, p_to: float, steps: int) -> list[dict]:
    if steps < 1 or not 0 < p_from <= p_to:
        raise UsageError("need 0 < p-from <= p-to and steps >= 1")
    ps = np.linspace(p_from, p_to, steps) if steps > 1 else np.array([p_from])
    rows = []
    prev = None
    for p in ps:
        res = bounds.clique_bound(float(p), t, C)
        regime = "sub" if res.regime == bounds.SUB else "super"
        if prev is not None and regime != prev:
            log.info("regime changes between p=%.6g and p=%.6g (threshold %d)", rows[-1]["p"], p, t - 1)
        prev = regime
        rows.append({"p": float(p), "regime": regime, "u": res.u, "bound": res.bound})
    return rows


def cmd_sweep(args) -> int:
    rows = sweep_rows(args.t, args.C, args.p_from, args.p_to, args.steps)
    out = sys.stdout if args.out in (None, "-") else open(args.out, "w", newline="")
    try:
        w = csv.writer(out, lineterminator="\n")
        w.writerow(["p", "regime", "u", "bound"])
        for row in rows:
            w.writerow([f"{row['p']:.12g}", row["regime"], f"{row['u']:.12g}", f"{row['bound']:.12g}"])
    finally:
        if out is not sys.stdout:
            out.close()
    return 0


# --- parser --------------------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="cliquenorm",
                                 description="Clique-count bounds under degree-sequence p-norms.")
    ap.add_argument("-v", "--verbose", action="store_true")
    sub = ap.add_subparsers(dest="command", required=True)

    b = sub.add_parser("bound", help="evaluate a bound")
    b.add_argument("--p", type=_float, required=True)
    b.add_argument("--t", type=int, required=True)
    b.add_argument("--C", type=float)
    b.add_argument("--r", type=int)
    b.add_argument("--j", type=int)
    b.add_argument("--n", type=int, help="vertex count (fixed-n bound, or p=inf)")
    b.add_argument("--delta", type=int, help="max degree, for p=inf")
    b.add_argument("--json", action="store_true")
    b.set_defaults(func=cmd_bound)

    c = sub.add_parser("count", help="count cliques in a file")
    c.add_argument("--input", required=True)
    c.add_argument("--t", type=int, required=True)
    c.add_argument("--hyper", action="store_true")
    c.set_defaults(func=cmd_count)

    k = sub.add_parser("construct", help="write an extremal construction")
    k.add_argument("--type", choices=["clique", "disjoint", "gls", "hyper-complete"], required=True)
    k.add_argument("--u", type=int)
    k.add_argument("--sizes", type=_int_list)
    k.add_argument("--n", type=int)
    k.add_argument("--delta", type=int)
    k.add_argument("--r", type=int)
    k.add_argument("--m", type=int)
    k.add_argument("--out")
    k.set_defaults(func=cmd_construct)

    v = sub.add_parser("verify", help="run a verification suite")
    v.add_argument("--suite", required=True, choices=[
        "graphs-exhaustive", "graphs-random", "hyper-exhaustive", "fixed-n", "tightness", "prop9"])
    v.add_argument("--n", type=int, default=5)
    v.add_argument("--t", type=int, default=3)
    v.add_argument("--p", type=_float_list, default=[1.0], help="comma-separated exponents")
    v.add_argument("--r", type=int)
    v.add_argument("--j", type=int)
    v.add_argument("--samples", type=int, default=1000)
    v.add_argument("--edge-prob", type=float, default=0.5)
    v.add_argument("--seed", type=int, default=0)
    v.add_argument("--construction", help="clique:U, disjoint:MxU or fixed-n:MxU")
    v.add_argument("--allow-n8", action="store_true")
    v.add_argument("--workers", type=int)
    v.add_argument("--json", action="store_true")
    v.set_defaults(func=cmd_verify)

    e = sub.add_parser("entropy", help="entropy chain of the t-clique family")
    e.add_argument("--input", required=True)
    e.add_argument("--t", type=int, required=True)
    e.add_argument("--p", type=float)
    e.add_argument("--u", type=float)
    e.add_argument("--json", action="store_true")
    e.set_defaults(func=cmd_entropy)

    s = sub.add_parser("sweep", help="bound as a function of p, as CSV")
    s.add_argument("--t", type=int, required=True)
    s.add_argument("--C", type=float, required=True)
    s.add_argument("--p-from", type=float, required=True)
    s.add_argument("--p-to", type=float, required=True)
    s.add_argument("--steps", type=int, default=50)
    s.add_argument("--out")
    s.set_defaults(func=cmd_sweep)
    return ap


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING,
                        format="%(levelname)s %(message)s")
    try:
        return args.func(args)
    except bounds.PreconditionError as exc:
        print(f"precondition failed: {exc}", file=sys.stderr)
        return EXIT_PRECONDITION
    except (UsageError, ValueError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
