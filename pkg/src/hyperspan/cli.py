"""Command-line front end: ``gen``, ``build``, ``verify`` and ``bench``.

Exit codes: 0 success, 1 verification failure, 2 usage or input error.
Diagnostics go to stderr; data goes to files or stdout.
"""
from __future__ import annotations

import argparse
import logging
import os
import sys

from . import bench
from .additive_eft import build_additive_eft, per_pair_surplus
from .assoc import associated, lift
from .baseline import additive2_spanner, greedy_spanner, peeloff_eft
from .eftcluster import Params, build
from .exceptions import ExhaustiveTooLarge, HypergraphError
from .hypercore import dumps, load, match_subgraph
from .instances import (
    dumps_adversary,
    high_girth_base,
    loose_cycle,
    lowerbound_family,
    random_hypergraph,
)
from .verify import verify_add, verify_mult

log = logging.getLogger("hyperspan")

GEN_KINDS = ("random", "high-girth", "lowerbound")
ALGOS = ("assoc-greedy", "assoc-additive", "peeloff", "cluster", "additive-eft")
RANDOMIZED_ALGOS = ("cluster", "additive-eft")


class UsageError(Exception):
    pass


def _pair_of(text, cast, name):
    parts = text.split(",")
    if len(parts) != 2:
        raise argparse.ArgumentTypeError(f"{name} expects two comma-separated values")
    return tuple(cast(p) for p in parts)


def _write(path, text):
    if path in (None, "-"):
        sys.stdout.write(text)
    else:
        with open(path, "w") as fh:
            fh.write(text)


def _require(args, *names):
    missing = [f"--{n.replace('_', '-')}" for n in names if getattr(args, n) is None]
    if missing:
        raise UsageError(f"{args.command}: missing {', '.join(missing)}")


def cmd_gen(args):
    _require(args, "seed", "n")
    if args.kind == "random":
        _require(args, "m", "r")
        H = random_hypergraph(args.n, args.m, args.r, args.weight_range,
                              seed=args.seed, mixed=args.mixed)
        _write(args.out, dumps(H))
    elif args.kind == "high-girth":
        _require(args, "r")
        girth = args.girth if args.girth is not None else 2 * args.k + 2
        H = high_girth_base(args.n, args.r, girth, seed=args.seed, budget=args.budget)
        _write(args.out, dumps(H))
        print(f"high-girth base: {H.m} hyperedges", file=sys.stderr)
    else:
        _require(args, "r", "f")
        if args.base == "cycle":
            base = loose_cycle(args.n // (args.r - 1), args.r, n=args.n)
        else:
            base = high_girth_base(args.n, args.r, 2 * args.k + 2, seed=args.seed,
                                   budget=args.budget)
        H, adversary = lowerbound_family(base, args.f, args.k)
        _write(args.out, dumps(H))
        if args.out not in (None, "-"):
            stem, _ = os.path.splitext(args.out)
            _write(stem + ".faults", dumps_adversary(adversary))
        print(f"lower-bound family: {H.n} vertices, {H.m} hyperedges", file=sys.stderr)
    return 0


def cmd_build(args):
    _require(args, "input")
    if args.algo in RANDOMIZED_ALGOS and args.seed is None:
        raise UsageError(f"build --algo {args.algo} needs --seed")
    H = load(args.input)
    stats_text = None
    if args.algo == "assoc-greedy":
        G = associated(H)
        S = lift(G, greedy_spanner(G, args.k), H)
    elif args.algo == "assoc-additive":
        G = associated(H)
        S = lift(G, additive2_spanner(G), H)
    elif args.algo == "peeloff":
        S, rounds = peeloff_eft(H, args.k, args.f)
        stats_text = "round\tedges\n" + "".join(f"{i}\t{len(r)}\n" for i, r in enumerate(rounds))
    elif args.algo == "cluster":
        S, stats = build(H, Params(k=args.k, f=args.f, seed=args.seed,
                                   sample_const=args.sample_const))
        stats_text = stats.to_tsv()
        for w in stats.warnings:
            print(f"warning: {w}", file=sys.stderr)
    else:
        S, bound, (_, _, stats) = build_additive_eft(
            H, k_mult=args.k, f=args.f, seed=args.seed, sample_const=args.sample_const
        )
        stats_text = stats.to_tsv()
        print(f"surplus bound (W={bound.W:g}): {bound.value:g}", file=sys.stderr)
    _write(args.out, dumps(S))
    if args.stats and stats_text is not None:
        _write(args.stats, stats_text)
    print(f"{args.algo}: kept {S.m} of {H.m} hyperedges", file=sys.stderr)
    return 0


def cmd_verify(args):
    _require(args, "graph", "spanner", "f")
    if args.mode != "exhaustive" and args.seed is None:
        raise UsageError(f"verify --mode {args.mode} needs --seed")
    seed = args.seed if args.seed is not None else 0
    H = load(args.graph)
    S = match_subgraph(H, load(args.spanner))
    common = dict(mode=args.mode, seed=seed, sample_budget=args.budget, threads=args.threads)
    if args.kind == "mult":
        _require(args, "stretch")
        report = verify_mult(H, S, args.f, args.stretch, **common)
    else:
        if (args.alpha_params is None) == (args.surplus is None):
            raise UsageError("verify --kind add needs exactly one of --alpha-params, --surplus")
        if args.surplus is not None:
            surplus = args.surplus
        else:
            alpha, mu = args.alpha_params
            surplus = per_pair_surplus(args.f, max(H.rank, 2), alpha, mu)
        report = verify_add(H, S, args.f, surplus, **common)
    _write(args.report, report.to_tsv())
    verdict = "PASS" if report.passed else "FAIL"
    print(f"{verdict}: {report.violations} violations over {report.fault_sets_checked} "
          f"fault sets", file=sys.stderr)
    return 0 if report.passed else 1


def cmd_bench(args):
    _require(args, "seed", "grid")
    grid = bench.Grid.parse(args.grid)
    if args.suite == "size-scaling":
        rows = bench.size_scaling(grid, args.seed, seeds=args.seeds, density=args.density,
                                  weights=args.weight_range)
    else:
        rows = bench.time_scaling(grid, args.seed, seeds=args.seeds, density=args.density,
                                  weights=args.weight_range, repeats=args.repeats)
    _write(args.out_tsv, bench.dumps_rows(rows))
    return 0


def build_parser():
    p = argparse.ArgumentParser(prog="hyperspan", description=__doc__.splitlines()[0])
    p.add_argument("-v", "--verbose", action="store_true", help="log progress to stderr")
    sub = p.add_subparsers(dest="command", required=True)

    g = sub.add_parser("gen", help="generate an instance")
    g.add_argument("--kind", choices=GEN_KINDS, required=True)
    g.add_argument("--n", type=int)
    g.add_argument("--m", type=int)
    g.add_argument("--r", type=int)
    g.add_argument("--k", type=int, default=2)
    g.add_argument("--f", type=int)
    g.add_argument("--seed", type=int)
    g.add_argument("--out")
    g.add_argument("--weight-range", type=lambda s: _pair_of(s, int, "--weight-range"),
                   default=(1, 1), metavar="LO,HI")
    g.add_argument("--mixed", action="store_true", help="hyperedge sizes 2..r")
    g.add_argument("--girth", type=int, help="high-girth target (default 2k+2)")
    g.add_argument("--budget", type=int, default=1000, help="rejections before stopping")
    g.add_argument("--base", choices=("cycle", "greedy"), default="cycle",
                   help="lower-bound base: loose cycle on n vertices or greedy high-girth")
    g.set_defaults(func=cmd_gen)

    b = sub.add_parser("build", help="build a spanner")
    b.add_argument("--algo", choices=ALGOS, required=True)
    b.add_argument("--k", type=int, default=2)
    b.add_argument("--f", type=int, default=1)
    b.add_argument("--seed", type=int)
    b.add_argument("--sample-const", type=float, default=4.0)
    b.add_argument("--in", dest="input")
    b.add_argument("--out")
    b.add_argument("--stats")
    b.set_defaults(func=cmd_build)

    v = sub.add_parser("verify", help="check a spanner against its host")
    v.add_argument("--kind", choices=("mult", "add"), required=True)
    v.add_argument("--stretch", type=float)
    v.add_argument("--alpha-params", type=lambda s: _pair_of(s, int, "--alpha-params"),
                   metavar="ALPHA,MU")
    v.add_argument("--surplus", type=float, help="constant additive surplus")
    v.add_argument("--f", type=int)
    v.add_argument("--mode", choices=("exhaustive", "sampled", "adversarial"),
                   default="exhaustive")
    v.add_argument("--budget", type=int, default=1000)
    v.add_argument("--seed", type=int)
    v.add_argument("--graph")
    v.add_argument("--spanner")
    v.add_argument("--threads", type=int, default=1)
    v.add_argument("--report", help="TSV report path (default stdout)")
    v.set_defaults(func=cmd_verify)

    s = sub.add_parser("bench", help="run a scaling suite")
    s.add_argument("--suite", choices=("size-scaling", "time-scaling"), required=True)
    s.add_argument("--grid", help="n-list:k-list:f-list:r-list, e.g. 64:2:1,4:3")
    s.add_argument("--seed", type=int)
    s.add_argument("--seeds", type=int, default=5)
    s.add_argument("--density", type=float, default=4.0, help="m = density * n^1.5")
    s.add_argument("--weight-range", type=lambda s: _pair_of(s, int, "--weight-range"),
                   default=bench.DEFAULT_WEIGHTS, metavar="LO,HI")
    s.add_argument("--repeats", type=int, default=3)
    s.add_argument("--out-tsv")
    s.set_defaults(func=cmd_bench)
    return p


def main(argv=None):
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING,
                        format="%(levelname)s %(name)s: %(message)s", stream=sys.stderr)
    try:
        return args.func(args)
    except UsageError as exc:
        parser.print_usage(sys.stderr)
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except (HypergraphError, ExhaustiveTooLarge, ValueError, TypeError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
