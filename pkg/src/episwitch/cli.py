"""Command-line front end.

Subcommands: gen, threshold, simulate, sweep, verify-appendix.  Experiment
commands read one JSON config (see episwitch.config); CLI flags override
config fields.  Exit codes: 0 success, 1 usage/config error, 2 numeric or
resource error.  All output is deterministic given the config.
"""

import argparse
import csv
import json
import sys

from .config import ExperimentConfig, beta_values, build_graphs, build_policy
from .errors import EpiSwitchError, NumericError, ResourceBudgetError
from .graphs import EpidemicParams, write_edge_list
from .linalg import spectral_radius
from .meanfield import simulate_trajectory
from .simulate import run_epidemic, sweep
from .switching import FixedTrace, GilbertRegenerate, Periodic
from .thresholds import (expected_column_sum, gilbert_spread_bound,
                         mc_column_sum, threshold_periodic, threshold_set,
                         threshold_static)
from . import config as _config


class _Parser(argparse.ArgumentParser):
    """argparse exits 2 on usage errors; the contract here is exit code 1."""

    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(1, f"{self.prog}: error: {message}\n")


def _write_csv(path, header, rows):
    def emit(f):
        w = csv.writer(f, lineterminator="\n")
        w.writerow(header)
        w.writerows(rows)
    if path is None:
        emit(sys.stdout)
    else:
        with open(path, "w", newline="") as f:
            emit(f)


def _fmt(x):
    # repr gives the shortest representation that round-trips exactly
    return repr(x) if isinstance(x, float) else x


# ---------------------------------------------------------------------------
# gen


def _cmd_gen(args):
    spec = {"kind": args.kind, "n": args.n, "k": args.k, "m": args.m,
            "p": args.p, "rewire": args.rewire, "hub": args.hub,
            "seed": args.seed}
    spec = {k: v for k, v in spec.items() if v is not None}
    g = _config._build_one_graph(spec, args.seed)
    rho = spectral_radius(g)
    if args.out is None:
        write_edge_list(g, sys.stdout)
        print(f"n={g.n} m={g.edge_count} rho={rho:.6g}", file=sys.stderr)
    else:
        with open(args.out, "w", newline="") as f:
            write_edge_list(g, f)
        print(f"n={g.n} m={g.edge_count} rho={rho:.6g}")
    return 0


# ---------------------------------------------------------------------------
# threshold


def _threshold_json(cfg):
    policy = build_policy(cfg, build_graphs(cfg))
    params = EpidemicParams(beta_values(cfg)[0], cfg.delta)
    if isinstance(policy, GilbertRegenerate):
        raw, clamped = gilbert_spread_bound(policy.n, policy.p, params)
        return {"criterion": "gilbert-bound",
                "values": {"bound_raw": raw, "bound_clamped": clamped},
                "lower": raw, "upper": raw, "depth": 1, "norm": None,
                "verdict": "Inconclusive"}
    graphs = policy.graph_set()
    # a fixed trace repeats cyclically, so it is periodic switching too
    if isinstance(policy, (Periodic, FixedTrace)) and len(policy.analysis_trace()) > 1:
        verdict = threshold_periodic(policy.analysis_trace(), params)
        value = verdict.values["rho_product"]
        return {"criterion": verdict.criterion, "values": verdict.values,
                "lower": value, "upper": value, "depth": 1, "norm": None,
                "verdict": verdict.verdict.value}
    if len(graphs) == 1:
        verdict = threshold_static(graphs[0], params)
        value = verdict.values["jsr"]
        return {"criterion": verdict.criterion, "values": verdict.values,
                "lower": value, "upper": value, "depth": 1, "norm": None,
                "verdict": verdict.verdict.value}
    verdict, bracket = threshold_set(graphs, params, max_depth=cfg.max_depth,
                                     norm_id=cfg.norm_id)
    return {"criterion": verdict.criterion, "values": verdict.values,
            "lower": bracket.lower, "upper": bracket.upper,
            "depth": bracket.depth, "norm": bracket.norm_id,
            "verdict": verdict.verdict.value}


def _cmd_threshold(args):
    cfg = _load_config(args)
    doc = _threshold_json(cfg)
    text = json.dumps(doc, indent=2, sort_keys=True)
    print(text)
    path = cfg.output.get("path")
    if path:
        with open(path, "w") as f:
            f.write(text + "\n")
    return 0


# ---------------------------------------------------------------------------
# simulate


def _cmd_simulate(args):
    cfg = _load_config(args)
    policy = build_policy(cfg, build_graphs(cfg))
    params = EpidemicParams(beta_values(cfg)[0], cfg.delta)
    path = cfg.output.get("path")
    if cfg.mode == "meanfield":
        import numpy as np
        p0 = np.full(policy.n, cfg.init_fraction)
        states = simulate_trajectory(policy, p0, params, cfg.horizon, cfg.seed)
        header = ["t"] + [f"p_{i}" for i in range(policy.n)]
        rows = [[t] + [_fmt(float(x)) for x in state]
                for t, state in enumerate(states)]
        _write_csv(path, header, rows)
        summary = f"final_sup_norm={np.abs(states[-1]).max():.6g}"
    else:
        runs = []
        for r in range(cfg.reps):
            from . import _rng
            rep_seed = _rng.substream_seed(cfg.seed, 0, r)
            runs.append(run_epidemic(policy, params, cfg.init_fraction,
                                     cfg.horizon, rep_seed,
                                     cfg.allow_reinfection))
        header = ["t"] + [f"run_{r}" for r in range(cfg.reps)]
        rows = [[t] + [_fmt(float(run.series[t])) for run in runs]
                for t in range(cfg.horizon + 1)]
        _write_csv(path, header, rows)
        died = [run.died_out_at for run in runs]
        summary = " ".join(
            f"run_{r}: died_out_at={d if d is not None else 'never'} "
            f"final_fraction={run.final_fraction:.6g}"
            for r, (d, run) in enumerate(zip(died, runs)))
    print(summary, file=sys.stderr if path is None else sys.stdout)
    return 0


# ---------------------------------------------------------------------------
# sweep


def _cmd_sweep(args):
    cfg = _load_config(args)
    if "beta_range" not in cfg.epidemic:
        raise EpiSwitchError("sweep requires epidemic.beta_range")
    policy = build_policy(cfg, build_graphs(cfg))
    grid = [(b, cfg.delta) for b in beta_values(cfg)]
    rows = sweep(policy, grid, cfg.reps, cfg.horizon, cfg.seed,
                 init_fraction=cfg.init_fraction, max_depth=cfg.max_depth,
                 norm_id=cfg.norm_id, allow_reinfection=cfg.allow_reinfection,
                 workers=cfg.workers)
    header = ["beta", "delta", "jsr_lower", "jsr_upper", "product_rho",
              "dieout_prob", "final_frac_mean", "final_frac_std",
              "reps", "T", "seed"]
    out = [[_fmt(getattr(r, name)) for name in header] for r in rows]
    _write_csv(cfg.output.get("path"), header, out)
    return 0


# ---------------------------------------------------------------------------
# verify-appendix


def _cmd_verify_appendix(args):
    if args.trials < 1000:
        raise EpiSwitchError("verify-appendix needs at least 1000 trials")
    params = EpidemicParams(args.beta, args.delta)
    all_pass = True
    for k in range(1, args.k_max + 1):
        expected = expected_column_sum(args.n, args.p, params, k)
        mean, std_err = mc_column_sum(args.n, args.p, params, k, args.trials,
                                      args.seed + k, mode=args.mode)
        gap = abs(mean - expected)
        ok = gap <= 3.0 * std_err or gap == 0.0
        all_pass &= ok
        print(f"k={k} expected={expected:.6f} mc_mean={mean:.6f} "
              f"std_err={std_err:.2e} {'PASS' if ok else 'FAIL'}")
    print(f"appendix column-sum check: {'PASS' if all_pass else 'FAIL'} "
          f"(mode={args.mode}, trials={args.trials})")
    return 0


# ---------------------------------------------------------------------------


def _load_config(args):
    cfg = ExperimentConfig.load(args.config)
    return cfg.override(beta=args.beta, delta=args.delta, T=args.T,
                        reps=args.reps, seed=args.seed,
                        init_fraction=args.init_fraction, mode=getattr(args, "mode", None),
                        max_depth=args.max_depth, norm=args.norm,
                        out=args.out, workers=args.workers)


def _add_override_flags(p, with_mode=False):
    p.add_argument("--config", required=True, help="experiment JSON document")
    p.add_argument("--beta", type=float, help="override epidemic.beta")
    p.add_argument("--delta", type=float, help="override epidemic.delta")
    p.add_argument("--T", type=int, help="override run.T (horizon)")
    p.add_argument("--reps", type=int, help="override run.reps")
    p.add_argument("--seed", type=int, help="override run.seed")
    p.add_argument("--init-fraction", dest="init_fraction", type=float,
                   help="override run.init_fraction")
    p.add_argument("--max-depth", dest="max_depth", type=int,
                   help="override analysis.max_depth")
    p.add_argument("--norm", choices=("1", "2", "inf"),
                   help="override analysis.norm")
    p.add_argument("--workers", type=int, help="parallel grid workers")
    p.add_argument("--out", help="override output.path")
    if with_mode:
        p.add_argument("--mode", choices=("meanfield", "mc"),
                       help="override run.mode")


def build_parser():
    parser = _Parser(prog="episwitch",
                     description="SIS epidemics on switching networks: "
                                 "simulation and JSR threshold analysis")
    sub = parser.add_subparsers(dest="command", required=True)

    g = sub.add_parser("gen", parents=[], help="generate a graph edge list",
                       description="Write a generated graph in the edge-list "
                                   "format and report n, m, rho(A).")
    g.add_argument("kind", choices=_config.GENERATOR_KINDS)
    g.add_argument("--n", type=int, required=True)
    g.add_argument("--k", type=int, help="degree (regular) / base degree (ws)")
    g.add_argument("--m", type=int, help="edges per arrival (ba)")
    g.add_argument("--p", type=float, help="link probability (gilbert)")
    g.add_argument("--rewire", type=float, help="rewiring probability (ws)")
    g.add_argument("--hub", type=int, help="hub node (star)")
    g.add_argument("--seed", type=int, default=0)
    g.add_argument("--out", help="output path (default stdout)")
    g.set_defaults(func=_cmd_gen)

    t = sub.add_parser("threshold", help="emit the die-out verdict as JSON")
    _add_override_flags(t)
    t.set_defaults(func=_cmd_threshold)

    s = sub.add_parser("simulate", help="trajectory CSV (meanfield) or run CSV (mc)")
    _add_override_flags(s, with_mode=True)
    s.set_defaults(func=_cmd_simulate)

    w = sub.add_parser("sweep", help="beta sweep CSV with JSR and MC columns")
    _add_override_flags(w)
    w.set_defaults(func=_cmd_sweep)

    v = sub.add_parser("verify-appendix",
                       help="check the expected column-sum formula by Monte Carlo")
    v.add_argument("--n", type=int, required=True)
    v.add_argument("--p", type=float, required=True)
    v.add_argument("--beta", type=float, required=True)
    v.add_argument("--delta", type=float, required=True)
    v.add_argument("--k-max", dest="k_max", type=int, default=3)
    v.add_argument("--trials", type=int, default=100_000)
    v.add_argument("--seed", type=int, required=True)
    v.add_argument("--mode", choices=("iid", "symmetric"), default="iid")
    v.set_defaults(func=_cmd_verify_appendix)

    return parser


def main(argv=None):
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
        return args.func(args)
    except SystemExit as exc:  # argparse usage failure (already printed)
        return exc.code if isinstance(exc.code, int) else 1
    except (NumericError, ResourceBudgetError) as exc:
        print(f"episwitch: numeric/resource error: {exc}", file=sys.stderr)
        return 2
    except EpiSwitchError as exc:
        print(f"episwitch: {exc}", file=sys.stderr)
        return 1
    except OSError as exc:
        print(f"episwitch: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
