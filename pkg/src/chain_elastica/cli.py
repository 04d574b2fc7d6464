"""Command line front end:

    chain-elastica {solve|sweep|stability|consistency}
        --config <path> [--model ...] [--potential ...] [--eps-list ...]
        [--interp {pi|cubic|quartic}] [--opt {newton|bfgs}] [--out <dir>]
"""

import argparse
import json
import os
import sys

import numpy as np

from .harness import (energy_fits, load_config, run_consistency, run_solve,
                      run_stability, run_sweep, write_fits_json,
                      write_records_csv, _fmt)


def _parse_eps_list(text):
    """Comma-separated eps values, or a dyadic range like '2^-3..2^-8'."""
    text = text.strip()
    if ".." in text:
        lo, hi = text.split("..")
        a = int(lo.replace("2^-", ""))
        b = int(hi.replace("2^-", ""))
        return tuple(2.0 ** -k for k in range(min(a, b), max(a, b) + 1))
    return tuple(float(tok) for tok in text.split(",") if tok)


def _build_config(args):
    overrides = {}
    if args.model:
        overrides["models"] = tuple(args.model)
    if args.potential:
        overrides["potential"] = args.potential
    if args.eps_list:
        overrides["eps_list"] = _parse_eps_list(args.eps_list)
    if args.interp:
        overrides["interp"] = args.interp
    if args.opt:
        overrides["opt_method"] = args.opt
    if args.eps_min is not None:
        overrides["eps_min_fit"] = args.eps_min
    if args.out:
        overrides["out_dir"] = args.out
    return load_config(args.config, overrides)


def main(argv=None):
    parser = argparse.ArgumentParser(prog="chain-elastica")
    sub = parser.add_subparsers(dest="command", required=True)
    for name in ("solve", "sweep", "stability", "consistency"):
        p = sub.add_parser(name)
        p.add_argument("--config", default=None)
        p.add_argument("--model", action="append",
                       choices=["cb", "hoc4", "hoc6", "ill2", "first",
                                "atomistic"])
        p.add_argument("--potential", choices=["harmonic", "lj", "morse"])
        p.add_argument("--eps-list", dest="eps_list")
        p.add_argument("--interp", choices=["pi", "cubic", "quartic"])
        p.add_argument("--opt", choices=["newton", "bfgs"])
        p.add_argument("--eps-min", dest="eps_min", type=float,
                       help="exclude eps below this from slope fits")
        p.add_argument("--out")
        if name == "solve":
            p.add_argument("--eps", type=float, default=2.0 ** -3)
    args = parser.parse_args(argv)
    cfg = _build_config(args)
    os.makedirs(cfg.out_dir, exist_ok=True)

    if args.command == "sweep":
        records, fits = run_sweep(cfg)
        write_records_csv(os.path.join(cfg.out_dir, "records.csv"), records)
        write_fits_json(os.path.join(cfg.out_dir, "fit.json"), fits)
        write_fits_json(os.path.join(cfg.out_dir, "fit_energy.json"),
                        energy_fits(cfg, records))
        for f in fits:
            flag = "  [flagged: r2 < 0.99]" if f.flagged else ""
            print(f"{f.model}: grad-error slope {f.slope:.3f} "
                  f"(r2 = {f.r2:.5f}, {f.points} points){flag}")
        return 0

    if args.command == "solve":
        models = tuple(m for m in (cfg.models if not args.model
                                   else tuple(args.model)) if m != "atomistic")
        out, dists = run_solve(cfg, args.eps, models=models,
                               out_dir=cfg.out_dir)
        for key, d in dists.items():
            print(f"|grad I u_a - grad u_{key}|_L2 = {d:.6e}")
        return 0

    if args.command == "stability":
        report, modes, table = run_stability(cfg)
        path = os.path.join(cfg.out_dir, "stability_symbols.csv")
        with open(path, "w") as fh:
            fh.write("x,phi_a,phi_cb,phi_hoc_taylor,phi_hoc_direct\n")
            for row in table:
                fh.write(",".join(_fmt(float(v)) for v in row) + "\n")
        summary = {
            "band": list(report.band),
            "lambda_a": report.lambda_a,
            "lambda_a_per_N": {str(k): v for k, v in
                               report.lambda_a_per_N.items()},
            "lambda_cb": report.lambda_cb,
            "lambda_hoc_taylor": report.lambda_hoc_taylor,
            "lambda_hoc_direct": report.lambda_hoc_direct,
            "ordering_holds": report.ordering_holds,
            "max_ordering_violation": report.max_ordering_violation,
            "perturbation_kappa_bound": report.perturbation_kappa_bound,
            "negative_modes_ill2": {str(k): v for k, v in modes.items()},
        }
        with open(os.path.join(cfg.out_dir, "stability.json"), "w") as fh:
            json.dump(summary, fh, indent=2, sort_keys=True)
            fh.write("\n")
        print(f"ordering holds on band {report.band}: {report.ordering_holds}")
        return 0

    if args.command == "consistency":
        models = tuple(args.model) if args.model else ("hoc4", "hoc6",
                                                       "ill2", "first")
        rows, fits = run_consistency(cfg, models=models)
        path = os.path.join(cfg.out_dir, "consistency.csv")
        with open(path, "w") as fh:
            fh.write("model,N,max_R,l2_R\n")
            for row in rows:
                fh.write(f"{row['model']},{row['N']},{_fmt(row['max_R'])},"
                         f"{_fmt(row['l2_R'])}\n")
        write_fits_json(os.path.join(cfg.out_dir, "consistency_fit.json"),
                        list(fits.values()))
        for key, f in fits.items():
            print(f"{key}: consistency order {f.slope:.3f} (r2 = {f.r2:.5f})")
        return 0

    return 1


if __name__ == "__main__":
    sys.exit(main())
