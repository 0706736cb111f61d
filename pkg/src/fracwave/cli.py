"""Command-line entry point.

Subcommands: ``run`` (config file -> trajectory CSV), ``verify`` (lemma id ->
verdict CSV on stdout or --out), ``fit`` (CSV + model -> exponents),
``sweep`` (alpha grid x seed grid, optionally parallel).

Exit codes: 0 success, 1 usage error, 2 numerical failure.
"""

from __future__ import annotations

import argparse
import os
import sys

import numpy as np

from .config import ExperimentConfig, load_config_file
from .dynamics import BlowupError, PicardDivergenceError
from .experiments import fit_growth, read_csv, run_experiment, run_sweep
from .field import random_decaying_field, szego_project
from . import dispersion, inequalities

EXIT_OK, EXIT_USAGE, EXIT_NUMERICAL = 0, 1, 2


def _default_threads() -> int:
    env = os.environ.get("FRACWAVE_THREADS")
    if env is not None:
        try:
            return max(1, int(env))
        except ValueError:
            pass
    return 1


def _verdict_rows(args) -> list[str]:
    """Rows of 'lemma,parameters,ratio,resolution' for the chosen check."""
    lemma = args.lemma
    alpha = args.alpha
    n = args.n
    K = args.max_mode
    rng = np.random.Generator(np.random.Philox(args.seed))
    rows = ["lemma,parameters,ratio,resolution"]

    def rand(K):
        return random_decaying_field(K, sigma=2.0, rng=rng)

    if lemma == "phi":
        sup = inequalities.phi_supremum(alpha)
        rows.append(f"phi,alpha={alpha:g},{sup!r},grid")
    elif lemma == "leibniz":
        for _ in range(args.ensemble):
            v = inequalities.check_leibniz_lemma(rand(K), alpha, n)
            rows.append(f"leibniz,alpha={alpha:g};n={n},{v.ratio!r},K={K}")
    elif lemma == "kpv":
        for _ in range(args.ensemble):
            v = inequalities.check_kpv(
                rand(K), rand(K), 0.5, 0.5, 0.0, 4.0 / 3.0, 4.0, 2.0
            )
            rows.append(f"kpv,s=0.5;p=4/3,{v.ratio!r},K={K}")
    elif lemma == "bg":
        for _ in range(args.ensemble):
            v = inequalities.brezis_gallouet_ratio(rand(K), s=1.0)
            rows.append(f"bg,s=1,{v.ratio!r},K={K}")
    elif lemma == "l1":
        for _ in range(args.ensemble):
            w = rand(K)
            v = inequalities.l1_interpolation_check(w.coeffs, w.modes)
            rows.append(f"l1,,{v.ratio!r},K={K}")
    elif lemma == "hankel":
        for _ in range(args.ensemble):
            v = inequalities.hankel_bound_check(
                szego_project(rand(K)), szego_project(rand(K))
            )
            rows.append(f"hankel,proof-weight,{v.ratio!r},K={K}")
    elif lemma == "counterexample":
        for expo in (8, 10, 12, 14):
            _, r = inequalities.log_counterexample(2**expo)
            rows.append(f"counterexample,N=2^{expo},{r!r},N={2 ** expo}")
    elif lemma == "gn":
        for _ in range(args.ensemble):
            u = rand(K)
            f = 0.5 * (u + u.conj())  # real part
            v = inequalities.gagliardo_nirenberg_check(f, s=0.5, p=4.0)
            rows.append(f"gn,s=0.5;p=4,{v.ratio!r},K={K}")
    elif lemma == "dispersion":
        fit = dispersion.dispersion_constant_fit(
            alpha, [2**j for j in range(4, 9)], list(np.linspace(0.05, 1.0, 8))
        )
        for N, r in fit.per_block.items():
            rows.append(f"dispersion,alpha={alpha:g},{r!r},N={N}")
    elif lemma == "strichartz":
        for N in (16, 32, 64):
            best = 0.0
            for _ in range(max(4, args.ensemble // 4)):
                v = dispersion.strichartz_l4linf(rand(2 * N), N, alpha)
                best = max(best, v.ratio)
            rows.append(f"strichartz,alpha={alpha:g},{best!r},N={N}")
    else:
        raise ValueError(f"unknown lemma {lemma!r}")
    return rows


def _parse_range(text: str) -> list[float]:
    """'0.7:0.1:1.9' -> [0.7, 0.8, ..., 1.9]; single values pass through."""
    if ":" in text:
        lo, step, hi = (float(v) for v in text.split(":"))
        count = int(round((hi - lo) / step)) + 1
        return [round(lo + i * step, 12) for i in range(count)]
    return [float(text)]


def _parse_seeds(text: str) -> list[int]:
    """'0..8' -> [0, 1, ..., 8]; comma/space lists accepted too."""
    if ".." in text:
        lo, hi = text.split("..")
        return list(range(int(lo), int(hi) + 1))
    return [int(v) for v in text.replace(",", " ").split()]


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="fracwave")
    sub = parser.add_subparsers(dest="command", required=True)

    p_run = sub.add_parser("run", help="run one experiment from a config file")
    p_run.add_argument("--config", required=True)
    p_run.add_argument("--out", default=None)
    p_run.add_argument("--seed", type=int, default=None)

    p_ver = sub.add_parser("verify", help="run one lemma check, print verdict CSV")
    p_ver.add_argument(
        "lemma",
        choices=[
            "leibniz", "phi", "kpv", "bg", "l1", "hankel",
            "counterexample", "gn", "dispersion", "strichartz",
        ],
    )
    p_ver.add_argument("--alpha", type=float, default=1.5)
    p_ver.add_argument("--n", type=int, default=0)
    p_ver.add_argument("--max-mode", type=int, default=32)
    p_ver.add_argument("--ensemble", type=int, default=16)
    p_ver.add_argument("--seed", type=int, default=0)
    p_ver.add_argument("--out", default=None)

    p_fit = sub.add_parser("fit", help="fit a growth model to a trajectory CSV")
    p_fit.add_argument("csv")
    p_fit.add_argument("--model", choices=["power", "exp_t", "exp_t2"], required=True)
    p_fit.add_argument("--s", type=float, required=True)

    p_sw = sub.add_parser("sweep", help="alpha grid x seed grid of runs")
    p_sw.add_argument("--config", required=True)
    p_sw.add_argument("--alpha", required=True, help="lo:step:hi or single value")
    p_sw.add_argument("--seeds", required=True, help="lo..hi or list")
    p_sw.add_argument("--out", default="sweep_out")
    p_sw.add_argument("--threads", type=int, default=None)
    return parser


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as err:
        return EXIT_OK if err.code == 0 else EXIT_USAGE

    try:
        if args.command == "run":
            if not os.path.exists(args.config):
                print(f"config file not found: {args.config}", file=sys.stderr)
                return EXIT_USAGE
            cfg = ExperimentConfig.from_mapping(load_config_file(args.config))
            if args.seed is not None:
                cfg.seed = args.seed
            out = args.out or cfg.out_path
            run_experiment(cfg, out)
            print(out)
            return EXIT_OK

        if args.command == "verify":
            rows = _verdict_rows(args)
            text = "\n".join(rows) + "\n"
            if args.out:
                with open(args.out, "w", encoding="utf-8") as fh:
                    fh.write(text)
            else:
                sys.stdout.write(text)
            return EXIT_OK

        if args.command == "fit":
            if not os.path.exists(args.csv):
                print(f"csv not found: {args.csv}", file=sys.stderr)
                return EXIT_USAGE
            record = read_csv(args.csv)
            fit = fit_growth(record, args.s, args.model)
            print(
                f"model={fit.model} exponent={fit.exponent!r} "
                f"residual={fit.residual!r}"
            )
            return EXIT_OK

        if args.command == "sweep":
            if not os.path.exists(args.config):
                print(f"config file not found: {args.config}", file=sys.stderr)
                return EXIT_USAGE
            cfg = ExperimentConfig.from_mapping(load_config_file(args.config))
            threads = args.threads if args.threads is not None else _default_threads()
            paths = run_sweep(
                cfg, _parse_range(args.alpha), _parse_seeds(args.seeds),
                args.out, threads,
            )
            for p in paths:
                print(p)
            return EXIT_OK
    except (BlowupError, PicardDivergenceError, FloatingPointError) as err:
        print(f"numerical failure: {err}", file=sys.stderr)
        return EXIT_NUMERICAL
    except (ValueError, KeyError) as err:
        print(f"error: {err}", file=sys.stderr)
        return EXIT_USAGE
    return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
