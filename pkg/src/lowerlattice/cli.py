"""Command-line entry point: ``lowerlattice <command> ...``.

Exit codes: 0 success or admissible, 1 inadmissible or not found, 2 usage or
parse error.
"""

from __future__ import annotations

import argparse
import csv
import json
import sys
from dataclasses import asdict, dataclass

import numpy as np

from .admissibility import LatticeConfig, Plan, check_direct, first_violation
from .cubature import ChebSeries, Rank1Lattice, reconstruct
from .index_sets import (
    IndexSet,
    LowerSet,
    Weights,
    make_block,
    make_cross,
    make_hyperbolic,
    make_simplex,
    make_simplex_by_cardinality,
    make_simplex_iso,
    mirror_cardinality,
    read_index_set,
    write_index_set,
)
from .search import (
    NotFoundError,
    SearchResult,
    cbc_search,
    exhaustive_search,
    lower_bound,
    two_step,
    upper_bound,
    write_lattice,
    read_lattice,
)

CSV_HEADER = ["set_id", "d", "card_lambda", "card_mirror", "plan", "algo", "n", "elapsed_ms", "error"]
TOL = 1e-10
MODE_PLAN = {"a": Plan.A, "b": Plan.B, "c": Plan.C}


class UsageError(Exception):
    pass


@dataclass
class BenchRecord:
    set_id: str
    d: int
    card_lambda: int
    card_mirror: int
    plan: str
    algo: str
    n: int | str
    elapsed_ms: str
    error: str = ""

    def row(self) -> list:
        return [getattr(self, k) for k in CSV_HEADER]


def _ints(text: str) -> tuple[int, ...]:
    try:
        return tuple(int(t) for t in text.split(",") if t.strip())
    except ValueError:
        raise UsageError(f"expected comma separated integers, got {text!r}") from None


def _build_set(family: str, k=None, d=None, n=None, w=None, u=None) -> LowerSet:
    if family == "block":
        if k is None:
            raise UsageError("block needs --k")
        return make_block(_ints(k))
    if family == "cross":
        if k is None:
            raise UsageError("cross needs --k")
        return make_cross(_ints(k))
    if family == "simplex":
        if w is not None:
            if u is None:
                raise UsageError("weighted simplex needs --u")
            return make_simplex(Weights.parse(w, u))
        if d is None or k is None:
            raise UsageError("simplex needs --d and --k, or --w and --u")
        return make_simplex_iso(int(d), int(k))
    if family == "simplex-card":
        if w is None or n is None:
            raise UsageError("simplex-card needs --w and --n")
        return make_simplex_by_cardinality(Weights.parse(w), int(n))
    if family == "hyperbolic":
        if d is None or n is None:
            raise UsageError("hyperbolic needs --d and --n")
        return make_hyperbolic(int(d), int(n))
    raise UsageError(f"unknown family {family!r}")


def _run_search(s: IndexSet, plan: Plan, algo: str, n_min=None, n_max=None, odd_only=False) -> SearchResult:
    if algo == "exhaustive":
        return exhaustive_search(s, plan, n_min, n_max)
    if not isinstance(s, LowerSet):
        raise UsageError(f"{algo} needs a lower set")
    if algo == "cbc":
        return cbc_search(s, plan, n_min)
    if algo == "two-step":
        return two_step(s, plan, n_min, odd_only=odd_only)
    raise UsageError(f"unknown algorithm {algo!r}")


# --- commands ------------------------------------------------------------------

def cmd_gen_set(args) -> int:
    s = _build_set(args.family, args.k, args.d, args.n, args.w, args.u)
    if args.out in (None, "-"):
        write_index_set(s, sys.stdout)
    else:
        write_index_set(s, args.out)
    return 0


def cmd_search(args) -> int:
    s = read_index_set(args.set)
    plan = Plan.parse(args.plan)
    try:
        res = _run_search(s, plan, args.algo, args.n_min, args.n_max, args.odd_only)
    except NotFoundError as e:
        print(f"not found: {e}", file=sys.stderr)
        return 1
    print(res.cfg)
    if args.out:
        write_lattice(res.cfg, args.out)
    rec = BenchRecord(args.set_id or args.set, s.dim, len(s), mirror_cardinality(s), str(plan),
                      res.algo, res.n, f"{res.elapsed_ms:.3f}")
    csv.writer(sys.stdout, lineterminator="\n").writerow(rec.row())
    return 0


def cmd_verify(args) -> int:
    s = read_index_set(args.set)
    cfg = read_lattice(args.lattice)
    if cfg.dim != s.dim:
        raise UsageError(f"lattice dimension {cfg.dim} differs from set dimension {s.dim}")
    plan = Plan.parse(args.plan)
    v = first_violation(s, cfg, plan)
    if v is None:
        print(f"admissible for plan {plan}")
        return 0
    print(f"not admissible for plan {plan}")
    if args.verbose:
        print(f"first violation: {v}")
    return 1


def cmd_bounds(args) -> int:
    s = read_index_set(args.set)
    plan = Plan.parse(args.plan)
    lo, hi = lower_bound(s, plan), upper_bound(s, plan)
    print(f"l* {lo}")
    print(f"p* {hi}")
    if args.oracle:
        try:
            print(f"n* {exhaustive_search(s, plan, lo, hi).n}")
        except NotFoundError:
            print("n* not found")
            return 1
    return 0


def cmd_reconstruct_demo(args) -> int:
    s = read_index_set(args.set)
    cfg = read_lattice(args.lattice)
    if cfg.dim != s.dim:
        raise UsageError(f"lattice dimension {cfg.dim} differs from set dimension {s.dim}")
    plan = MODE_PLAN[args.mode]
    if not check_direct(s, cfg, plan):
        print(f"refused: lattice is not admissible for plan {plan} (mode {args.mode})")
        return 1
    rng = np.random.default_rng(args.seed)
    f = ChebSeries.random(s, rng)
    g = reconstruct(Rank1Lattice(cfg), f, s, args.mode)
    err = f.max_error(g)
    print(f"max coefficient error {err:.3e}")
    return 0 if err <= TOL else 1


def _bench_sets(cfg: dict):
    family = cfg.get("family", "simplex-card")
    for size in cfg.get("sizes", []):
        if family == "simplex-card":
            s = _build_set(family, w=cfg["w"], n=size)
            sid = f"simplex-card-N{size}"
        elif family == "simplex":
            s = _build_set(family, d=cfg["d"], k=size)
            sid = f"simplex-d{cfg['d']}-k{size}"
        elif family == "hyperbolic":
            s = _build_set(family, d=cfg["d"], n=size)
            sid = f"hyperbolic-d{cfg['d']}-N{size}"
        elif family == "block":
            s = make_block((int(size),) * int(cfg["d"]))
            sid = f"block-d{cfg['d']}-k{size}"
        else:
            raise UsageError(f"unknown bench family {family!r}")
        yield sid, s


def cmd_bench(args) -> int:
    cfg = {}
    if args.config:
        with open(args.config) as fh:
            cfg = json.load(fh)
    for key in ("family", "w", "d"):
        if getattr(args, key) is not None:
            cfg[key] = getattr(args, key)
    if args.sizes is not None:
        cfg["sizes"] = list(_ints(args.sizes))
    plans = [Plan.parse(p) for p in (args.plans or ",".join(cfg.get("plans", ["A", "B", "C"]))).split(",")]
    algos = (args.algos or ",".join(cfg.get("algos", ["exhaustive", "two-step"]))).split(",")

    records: list[BenchRecord] = []
    for sid, s in _bench_sets(cfg):
        for plan in plans:
            for algo in algos:
                rec = BenchRecord(sid, s.dim, len(s), mirror_cardinality(s), str(plan), algo, "", "")
                try:
                    res = _run_search(s, plan, algo)
                    rec.n, rec.elapsed_ms = res.n, f"{res.elapsed_ms:.3f}"
                except Exception as e:  # recorded per row, the run continues
                    rec.error = f"{type(e).__name__}: {e}"
                records.append(rec)

    out = sys.stdout if args.out in (None, "-") else open(args.out, "w", newline="")
    try:
        w = csv.writer(out, lineterminator="\n")
        w.writerow(CSV_HEADER)
        for rec in records:
            w.writerow(rec.row())
    finally:
        if out is not sys.stdout:
            out.close()

    oracle = {(r.set_id, r.plan): r.n for r in records if r.algo == "exhaustive" and not r.error}
    for algo in algos:
        if algo == "exhaustive":
            continue
        errs = [abs(r.n - oracle[(r.set_id, r.plan)]) / oracle[(r.set_id, r.plan)]
                for r in records if r.algo == algo and not r.error and (r.set_id, r.plan) in oracle]
        if errs:
            print(f"# MAPE {algo} vs exhaustive: {100 * sum(errs) / len(errs):.2f}% over {len(errs)} rows",
                  file=sys.stderr if args.out in (None, "-") else sys.stdout)
    return 0


# --- parser --------------------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="lowerlattice", description=__doc__.splitlines()[0])
    sub = p.add_subparsers(dest="command", required=True)

    g = sub.add_parser("gen-set", help="write a standard lower set")
    g.add_argument("family", choices=["block", "cross", "simplex", "simplex-card", "hyperbolic"])
    g.add_argument("--k", help="comma separated k (block/cross) or integer k (isotropic simplex)")
    g.add_argument("--d", type=int)
    g.add_argument("--n", type=int, help="cardinality (simplex-card) or product bound (hyperbolic)")
    g.add_argument("--w", help="comma separated weights, e.g. 0.9,0.8,0.7")
    g.add_argument("--u", help="simplex radius")
    g.add_argument("-o", "--out")
    g.set_defaults(func=cmd_gen_set)

    s = sub.add_parser("search", help="find an admissible lattice")
    s.add_argument("set")
    s.add_argument("--plan", default="A")
    s.add_argument("--algo", default="exhaustive", choices=["exhaustive", "cbc", "two-step"])
    s.add_argument("--odd-only", action="store_true")
    s.add_argument("--n-min", type=int)
    s.add_argument("--n-max", type=int)
    s.add_argument("--set-id")
    s.add_argument("-o", "--out", help="lattice output file")
    s.add_argument("--seed", type=int, default=0)
    s.set_defaults(func=cmd_search)

    v = sub.add_parser("verify", help="check a lattice against a set")
    v.add_argument("set")
    v.add_argument("lattice")
    v.add_argument("--plan", default="A")
    v.add_argument("-v", "--verbose", action="store_true")
    v.set_defaults(func=cmd_verify)

    b = sub.add_parser("bounds", help="lower and upper bounds on n*")
    b.add_argument("set")
    b.add_argument("--plan", default="A")
    b.add_argument("--oracle", action="store_true", help="also run the exhaustive search")
    b.set_defaults(func=cmd_bounds)

    r = sub.add_parser("reconstruct-demo", help="reconstruct a random series on the set")
    r.add_argument("set")
    r.add_argument("lattice")
    r.add_argument("--mode", default="a", choices=["a", "b", "c"])
    r.add_argument("--seed", type=int, default=0)
    r.set_defaults(func=cmd_reconstruct_demo)

    c = sub.add_parser("bench", help="CSV benchmark over a family of sets")
    c.add_argument("--config", help="JSON file with family/w/d/sizes/plans/algos")
    c.add_argument("--family", choices=["simplex-card", "simplex", "hyperbolic", "block"])
    c.add_argument("--w")
    c.add_argument("--d", type=int)
    c.add_argument("--sizes", help="comma separated sizes; may be empty")
    c.add_argument("--plans")
    c.add_argument("--algos")
    c.add_argument("--seed", type=int, default=0)
    c.add_argument("-o", "--out")
    c.set_defaults(func=cmd_bench)
    return p


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except (UsageError, ValueError, OSError) as e:
        print(f"error: {e}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
