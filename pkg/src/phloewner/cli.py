"""Command-line interface: ``phloewner <subcommand> ...``.

Exit codes are 0 on success, 2 for invalid input data and 3 for numerical
failures (singular pencils, Pick matrix not positive definite, ...).
"""

import argparse
import json
import logging
import sys

import numpy as np

from .errors import DataError, PHLoewnerError
from .loewner import write_singular_values
from .passivity import check_certificate, lambda_min_dissipation, positive_real_sweep
from .ph import PH_KEYS, ph_from_dict, ph_to_dict, reconstruct
from .pipeline import (
    FrequencySampleSet,
    PipelineConfig,
    identify_loewner,
    identify_ph,
    identify_ph_limited,
    make_grid,
    read_samples_csv,
    write_bode_csv,
    write_samples_csv,
)
from .spectral_zeros import compute_spectral_zeros, filter_rhp, write_zeros_csv
from .state_space import DofQuery, dof_count, matrix_from_json, model_from_dict, model_to_dict
from .zoo import MODELS


def _pair(text, name):
    try:
        lo, hi = (float(x) for x in text.split(","))
    except ValueError:
        raise DataError(f"{name} must be 'lo,hi', got {text!r}") from None
    return lo, hi


def _grid(text):
    parts = text.split(",")
    if len(parts) != 3:
        raise DataError(f"grid must be 'lo,hi,count', got {text!r}")
    try:
        lo, hi, count = float(parts[0]), float(parts[1]), int(parts[2])
    except ValueError:
        raise DataError(f"grid must be 'lo,hi,count', got {text!r}") from None
    if not 0 < lo < hi or count < 1:
        raise DataError(f"grid needs 0 < lo < hi and count >= 1, got {text!r}")
    return lo, hi, count


def _read_json(path):
    try:
        with open(path) as f:
            return json.load(f)
    except json.JSONDecodeError as exc:
        raise DataError(f"{path}: invalid JSON ({exc})") from None


def _write_json(obj, path):
    text = json.dumps(obj, indent=1)
    if path in (None, "-"):
        print(text)
    else:
        with open(path, "w") as f:
            f.write(text + "\n")


def _load_system(path):
    """A state-space model, or a pH model (returned with its blocks)."""
    d = _read_json(path)
    if not isinstance(d, dict):
        raise DataError(f"{path}: expected a JSON object")
    if all(k in d for k in PH_KEYS):
        ph = ph_from_dict(d)
        return reconstruct(ph), ph
    return model_from_dict(d), None


def _load_matrix(path):
    d = _read_json(path)
    if isinstance(d, dict):
        if len(d) != 1:
            raise DataError(f"{path}: expected a matrix or an object with a single key")
        d = next(iter(d.values()))
    return matrix_from_json(d)


def cmd_sample(args):
    model, _ = _load_system(args.model)
    lo, hi, count = _grid(args.grid)
    omegas = make_grid(lo, hi, count, args.scale)
    write_samples_csv(FrequencySampleSet.from_model(model, omegas), args.output)


def _config(args, **kw):
    D = None
    if getattr(args, "D", "estimate") != "estimate":
        if not args.D.startswith("given:"):
            raise DataError(f"--D must be 'estimate' or 'given:<file>', got {args.D!r}")
        D = np.real(_load_matrix(args.D[len("given:"):]))
    return PipelineConfig(svd_rel_tol=args.tol, D=D, **kw)


def cmd_identify(args):
    fs = read_samples_csv(args.samples)
    model, sv = identify_loewner(fs, _config(args))
    _write_json(model_to_dict(model), args.output)
    if args.sv:
        write_singular_values(sv, args.sv)


def cmd_ph(args):
    fs = read_samples_csv(args.samples)
    if args.band:
        cfg = _config(args, band=_pair(args.band, "band"))
        ph, diag = identify_ph_limited(fs, cfg)
    else:
        ph, diag = identify_ph(fs, _config(args))
    _write_json(ph_to_dict(ph), args.output)
    if args.diag:
        _write_json(diag.to_dict(), args.diag)


def cmd_zeros(args):
    model, _ = _load_system(args.model)
    zs = compute_spectral_zeros(model)
    if args.rhp:
        zs = filter_rhp(zs)
    write_zeros_csv(zs, args.output)


def cmd_validate(args):
    model, ph = _load_system(args.model)
    report = {"n": model.n, "m": model.m}
    if ph is not None:
        report["ph_violations"] = ph.violations()
        report["lambda_min_dissipation"] = lambda_min_dissipation(ph)
    if args.certificate:
        report["certificate"] = check_certificate(model, _load_matrix(args.certificate)).to_dict()
    if args.sweep:
        lo, hi, count = _grid(args.sweep)
        sweep = positive_real_sweep(model, make_grid(lo, hi, count))
        vals = [lm for _, lm in sweep]
        report["sweep"] = {
            "omega": [w for w, _ in sweep],
            "lambda_min": vals,
            "min": float(np.nanmin(vals)) if not np.all(np.isnan(vals)) else None,
        }
    _write_json(report, args.output)


def cmd_dof(args):
    print(dof_count(DofQuery(args.n, args.m, args.rank)))


def cmd_bode(args):
    model, _ = _load_system(args.model)
    lo, hi, count = _grid(args.grid)
    write_bode_csv(model, make_grid(lo, hi, count, args.scale), args.output)


def cmd_models(args):
    if args.name is None:
        for name in MODELS:
            print(name)
        return
    if args.name not in MODELS:
        raise DataError(f"unknown model {args.name!r}; choose from {sorted(MODELS)}")
    _write_json(model_to_dict(MODELS[args.name]()), args.output)


def build_parser():
    p = argparse.ArgumentParser(
        prog="phloewner",
        description="Port-Hamiltonian identification from frequency-response data.",
    )
    p.add_argument("-v", "--verbose", action="store_true", help="log progress to stderr")
    sub = p.add_subparsers(dest="command", required=True)

    s = sub.add_parser("sample", help="sample Z(i omega) of a model to CSV")
    s.add_argument("model")
    s.add_argument("--grid", required=True, help="lo,hi,count")
    s.add_argument("--scale", choices=("log", "lin"), default="log")
    s.add_argument("-o", "--output", required=True)
    s.set_defaults(func=cmd_sample)

    s = sub.add_parser("identify", help="Loewner model from samples")
    s.add_argument("samples")
    s.add_argument("--tol", type=float, default=1e-8, help="relative SVD truncation tolerance")
    s.add_argument("--D", default="estimate", help="'estimate' or 'given:<file>'")
    s.add_argument("-o", "--output", required=True)
    s.add_argument("--sv", help="write singular values to this CSV")
    s.set_defaults(func=cmd_identify)

    s = sub.add_parser("ph", help="normalized pH model from samples")
    s.add_argument("samples")
    s.add_argument("--tol", type=float, default=1e-8)
    s.add_argument("--D", default="estimate", help="'estimate' or 'given:<file>'")
    s.add_argument("--band", help="lo,hi")
    s.add_argument("-o", "--output", required=True)
    s.add_argument("--diag", help="write diagnostics JSON here")
    s.set_defaults(func=cmd_ph)

    s = sub.add_parser("zeros", help="spectral zeros of a model")
    s.add_argument("model")
    s.add_argument("--rhp", action="store_true", help="keep the right half-plane zeros only")
    s.add_argument("-o", "--output", required=True)
    s.set_defaults(func=cmd_zeros)

    s = sub.add_parser("validate", help="structural and passivity checks")
    s.add_argument("model")
    s.add_argument("--certificate", help="JSON file with a candidate X")
    s.add_argument("--sweep", help="lo,hi,count for a positive-real sweep")
    s.add_argument("-o", "--output", default="-")
    s.set_defaults(func=cmd_validate)

    s = sub.add_parser("dof", help="real degrees of freedom of a transfer function")
    s.add_argument("--n", type=int, required=True)
    s.add_argument("--m", type=int, required=True)
    s.add_argument("--rank", type=int, help="rank of Z(inf); omit when strictly proper")
    s.set_defaults(func=cmd_dof)

    s = sub.add_parser("bode", help="|Z(i omega)| on a grid to CSV")
    s.add_argument("model")
    s.add_argument("--grid", required=True, help="lo,hi,count")
    s.add_argument("--scale", choices=("log", "lin"), default="log")
    s.add_argument("-o", "--output", required=True)
    s.set_defaults(func=cmd_bode)

    s = sub.add_parser("models", help="list reference models or export one")
    s.add_argument("name", nargs="?")
    s.add_argument("-o", "--output", default="-")
    s.set_defaults(func=cmd_models)
    return p


def main(argv=None):
    args = build_parser().parse_args(argv)
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING,
                        format="%(levelname)s: %(message)s")
    try:
        args.func(args)
    except PHLoewnerError as exc:
        print(f"error: {type(exc).__name__}: {exc}", file=sys.stderr)
        return exc.exit_code
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    return 0


if __name__ == "__main__":
    sys.exit(main())
