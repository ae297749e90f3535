"""Command-line surface: sweep, features, verify, expand.

Exit codes: 0 success, 1 verification failure, 2 configuration error.
"""

from __future__ import annotations

import argparse
import json
import os
import sys

from . import __version__
from . import atlas
from .atlas import ConfigError


def _cmd_sweep(args):
    cfg = atlas.load_config(args.config)
    result = atlas.run_sweep(cfg)
    if args.features:
        try:
            result.features = atlas.classify_features(cfg)
        except ConfigError as exc:
            print(f"feature overlay skipped: {exc}", file=sys.stderr)
    csv_path, meta_path = result.write(args.outdir or cfg.outdir)
    print(f"{len(result.rows)} cells -> {csv_path}")
    print(f"metadata -> {meta_path}")
    if result.n_undefined:
        print(f"{result.n_undefined} cells flagged (undefined/error/"
              "truncation)")
    return 0


def _cmd_features(args):
    cfg = atlas.load_config(args.config)
    feats = atlas.classify_features(cfg)
    outdir = args.outdir or cfg.outdir
    os.makedirs(outdir, exist_ok=True)
    csv_path = os.path.join(outdir, f"{cfg.name}_features.csv")
    meta_path = os.path.join(outdir, f"{cfg.name}_features.meta.json")
    with open(csv_path, "w") as fh:
        fh.write("kind,exact,branch,x,y,label\n")
        for i, feat in enumerate(feats):
            for pt in feat.points:
                x = repr(float(pt[0]))
                y = repr(float(pt[1])) if len(pt) > 1 else ""
                fh.write(f"{feat.kind},{int(feat.exact)},{i},{x},{y},"
                         f"\"{feat.label}\"\n")
    with open(meta_path, "w") as fh:
        json.dump({"schema": "photonstats-features-v1",
                   "version": __version__, "name": cfg.name,
                   "system": cfg.system,
                   "features": [f.as_dict() for f in feats]},
                  fh, indent=2, sort_keys=True)
        fh.write("\n")
    print(f"{len(feats)} feature loci -> {csv_path}")
    return 0


def _cmd_verify(args):
    tolerances = {}
    if args.tol is not None:
        tolerances = {"identity": args.tol, "oracle": args.tol}
    report = atlas.verify(args.suite, seed=args.seed, tolerances=tolerances)
    print(report.summary())
    if args.json:
        with open(args.json, "w") as fh:
            fh.write(report.to_json())
            fh.write("\n")
        print(f"report -> {args.json}")
    return 0 if report.passed else 1


def _cmd_expand(args):
    from . import steady as sd

    cfg = atlas.load_config(args.config)
    params = atlas.resolve_params(cfg.system, cfg.base, drive=1e-3)
    observable = cfg.observables[0]
    powers = args.powers or _default_powers(observable)
    fit = sd.series_expand(params, observable, powers,
                           window=(args.window_min, args.window_max),
                           n_samples=args.samples, n_photons=cfg.n_photons)
    outdir = args.outdir or cfg.outdir
    os.makedirs(outdir, exist_ok=True)
    csv_path = os.path.join(outdir, f"{cfg.name}_series.csv")
    with open(csv_path, "w") as fh:
        fh.write("power,coefficient\n")
        for p, c in zip(fit.powers, fit.coefficients):
            fh.write(f"{float(p)!r},{float(c)!r}\n")
    print(f"{observable} ~ " + " + ".join(
        f"{c:.6g} drive^{p}" for p, c in zip(fit.powers, fit.coefficients)))
    print(f"max weighted residual {fit.residual:.2e}, "
          f"condition {fit.condition:.2e}")
    print(f"coefficients -> {csv_path}")
    return 0


def _default_powers(observable):
    if observable == "n":
        return (2, 4)
    if observable.endswith("_fluct"):
        return (-4, -2)
    return (0, 2)


def main(argv=None):
    parser = argparse.ArgumentParser(
        prog="photonstats",
        description="Photon statistics of weakly driven dissipative systems")
    parser.add_argument("--version", action="version", version=__version__)
    sub = parser.add_subparsers(dest="command", required=True)

    p_sweep = sub.add_parser("sweep", help="evaluate a parameter grid")
    p_sweep.add_argument("config")
    p_sweep.add_argument("--outdir", default=None)
    p_sweep.add_argument("--features", action="store_true",
                         help="attach feature polylines to the sidecar")
    p_sweep.set_defaults(func=_cmd_sweep)

    p_feat = sub.add_parser("features", help="sample CA/CB/UA/UB loci")
    p_feat.add_argument("config")
    p_feat.add_argument("--outdir", default=None)
    p_feat.set_defaults(func=_cmd_features)

    p_ver = sub.add_parser("verify", help="run a verification suite")
    p_ver.add_argument("suite", choices=("identities", "oracles", "landmarks"))
    p_ver.add_argument("--seed", type=int, default=2024)
    p_ver.add_argument("--tol", type=float, default=None)
    p_ver.add_argument("--json", default=None, help="write the report here")
    p_ver.set_defaults(func=_cmd_verify)

    p_exp = sub.add_parser("expand", help="fit drive-power series")
    p_exp.add_argument("config")
    p_exp.add_argument("--outdir", default=None)
    p_exp.add_argument("--powers", type=float, nargs="+", default=None)
    p_exp.add_argument("--window-min", type=float, default=1e-3)
    p_exp.add_argument("--window-max", type=float, default=1e-2)
    p_exp.add_argument("--samples", type=int, default=8)
    p_exp.set_defaults(func=_cmd_expand)

    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except ConfigError as exc:
        print(f"configuration error: {exc}", file=sys.stderr)
        return 2
    except FileNotFoundError as exc:
        print(f"configuration error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
