"""Command-line front end.

Exit codes: 0 pass, 1 mathematical check failed, 2 usage or input error.
"""

import argparse
import json
import math
import os
import sys

import numpy as np

from . import io
from .bimeasure import pd_type_check
from .covariation import covariation_estimate, covariation_exact, default_moment_order
from .errors import CapabilityError, ValidationError
from .harmonisable import classify, fourier_coefficient, synthesize_paths
from .spectral_measure import GridSpec, check_additivity_condition, sample_vector
from .stable_core import constants, lemma1_check, lemma2_check

DEFAULT_SEED = 20240917
SEED_ENV = "STABLE_SPECTRA_SEED"

EXIT_OK, EXIT_FAIL, EXIT_INPUT = 0, 1, 2

LEMMA1_THRESHOLD = 1e-6
LEMMA2_THRESHOLD = 1e-4


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_INPUT, f"{self.prog}: error: {message}\n")


def _fmt(x):
    return io.format_number(x)


def _resolve_seed(seed):
    if seed is not None:
        return seed
    env = os.environ.get(SEED_ENV)
    if env is None or env == "":
        return DEFAULT_SEED
    try:
        return int(env)
    except ValueError:
        raise UsageError(f"{SEED_ENV}={env!r} is not an integer") from None


def _float_list(text):
    try:
        return [float(v) for v in text.split(",") if v.strip()]
    except ValueError:
        raise UsageError(f"cannot parse number list {text!r}") from None


def _complex_list(text):
    try:
        vals = [complex(v.strip().replace(" ", "")) for v in text.split(",") if v.strip()]
    except ValueError:
        raise UsageError(f"cannot parse coefficient list {text!r}") from None
    arr = np.array(vals, dtype=complex)
    return arr.real if not np.any(arr.imag) else arr


def _load(path, parse):
    try:
        obj = io.load_json(path)
    except FileNotFoundError:
        raise UsageError(f"no such file: {path}") from None
    except (OSError, json.JSONDecodeError) as exc:
        raise UsageError(f"cannot read {path}: {exc}") from None
    try:
        return parse(obj)
    except (ValidationError, ValueError, KeyError, TypeError) as exc:
        raise UsageError(f"invalid content in {path}: {exc}") from None


def _open_out(path):
    if path is None or path == "-":
        return sys.stdout, False
    return open(path, "w", encoding="utf-8", newline=""), True


# commands

def cmd_check_additivity(args):
    measure = _load(args.measure, io.measure_from_dict)
    grid = GridSpec(seed=_resolve_seed(args.seed))
    report = check_additivity_condition(measure, grid=grid, tolerance=args.tol,
                                        triple_mode=args.mode)
    print(f"mode: {report.mode}")
    print(f"grid points: {report.n_points}")
    print(f"max_abs: {_fmt(report.max_abs)}")
    if report.worst_case is not None:
        i, j, k, theta = report.worst_case
        coords = " ".join(_fmt(v) for v in np.ravel(theta))
        print(f"worst case: (i, j, k) = ({i}, {j}, {k}) at theta = [{coords}]")
    print(f"tolerance: {_fmt(report.tolerance)}")
    print("PASS" if report.passed else "FAIL")
    return EXIT_OK if report.passed else EXIT_FAIL


def cmd_covariation(args):
    measure = _load(args.measure, io.measure_from_dict)
    if args.alpha is None:
        raise UsageError("--alpha is required")
    a = _complex_list(args.a)
    b = _complex_list(args.b)
    d = measure.dimension
    if a.shape != (d,) or b.shape != (d,):
        raise UsageError(f"coefficient vectors must have {d} entries")
    try:
        exact = covariation_exact(measure, args.alpha, a, b)
    except ValueError as exc:
        raise UsageError(str(exc)) from None
    print(f"exact: {_fmt(exact)}")
    if not args.estimate:
        return EXIT_OK
    seed = _resolve_seed(args.seed)
    p = default_moment_order(args.alpha) if args.p is None else args.p
    try:
        x = sample_vector(measure, args.alpha, args.n, seed)
        est = covariation_estimate(x @ a, x @ b, args.alpha, p=p)
    except ValueError as exc:
        raise UsageError(str(exc)) from None
    z = abs(est.value - exact) / est.std_error if est.std_error > 0 else math.inf
    print(f"estimate: {_fmt(est.value)} +/- {_fmt(est.std_error)} "
          f"(n = {est.n}, p = {_fmt(est.p)}, seed = {seed})")
    print(f"deviation: {_fmt(z)} standard errors")
    return EXIT_OK


def cmd_classify(args):
    model = _load(args.model, io.model_from_dict)
    pd = pd_type_check(model.bimeasure, model.alpha, trials=args.pd_trials,
                       seed=_resolve_seed(args.seed), field=args.pd_field)
    report = classify(model, mass_tolerance=args.tol)
    period = "" if report.period is None else f", T = {_fmt(report.period)}"
    print(f"verdict: {report.verdict}{period}")
    print("lines:")
    print("  gamma,mass")
    for g, m in report.line_set:
        print(f"  {_fmt(g)},{_fmt(m)}")
    if not pd.passed:
        print(f"invalid bimeasure: positive-definite-type check failed ({pd.field} field, "
              f"worst value {_fmt(pd.worst_real)}{'+' if pd.worst_imag >= 0 else '-'}"
              f"{_fmt(abs(pd.worst_imag))}j)")
        return EXIT_FAIL
    return EXIT_OK


def cmd_spectrum(args):
    model = _load(args.model, io.model_from_dict)
    if not args.T > 0:
        raise UsageError(f"T must be positive, got {args.T}")
    if args.k_max < args.k_min:
        raise UsageError("--k-max must be >= --k-min")
    fh, close = _open_out(args.out)
    worst = 0.0
    try:
        fh.write("k,numeric_re,numeric_im,predicted_re,predicted_im,abs_err\n")
        for k in range(args.k_min, args.k_max + 1):
            rec = fourier_coefficient(model, args.tau, k, args.T)
            err = abs(rec.numeric - rec.predicted)
            worst = max(worst, err)
            fh.write(",".join([str(k)] + [f"{v:.15g}" for v in (
                rec.numeric.real, rec.numeric.imag,
                rec.predicted.real, rec.predicted.imag, err)]) + "\n")
    finally:
        if close:
            fh.close()
    if worst > args.tol:
        print(f"numeric and predicted coefficients differ by {_fmt(worst)} > {_fmt(args.tol)}",
              file=sys.stderr)
        return EXIT_FAIL
    return EXIT_OK


def cmd_synthesize(args):
    model = _load(args.model, io.model_from_dict)
    times = _float_list(args.times)
    if args.n < 0:
        raise UsageError("--n must be >= 0")
    try:
        paths = synthesize_paths(model, times, args.n, _resolve_seed(args.seed))
    except CapabilityError:
        raise UsageError("no increment law: model supports analytics only") from None
    fh, close = _open_out(args.out)
    try:
        io.write_paths_csv(fh, times, paths)
    finally:
        if close:
            fh.close()
    return EXIT_OK


def cmd_verify_identities(args):
    alphas = _float_list(args.alpha)
    p1 = _float_list(args.p)
    p2 = _float_list(args.p2)
    s_vals = _float_list(args.s)
    z_vals = _complex_list(args.z).astype(complex)
    for al in alphas:
        if not 1.0 < al < 2.0:
            raise UsageError(f"alpha must lie in (1, 2), got {al}")
    for p in p1:
        if not 1.0 < p < 2.0:
            raise UsageError(f"one-dimensional identity needs 1 < p < 2, got {p}")
    for p in p2:
        if not 0.0 < p < 2.0:
            raise UsageError(f"two-dimensional identity needs 0 < p < 2, got {p}")
    if np.any(z_vals == 0):
        raise UsageError("planar identities need non-zero z")

    t1 = LEMMA1_THRESHOLD if args.tol is None else args.tol
    t2 = LEMMA2_THRESHOLD if args.tol is None else args.tol
    failed = False
    print("identity,param,arg,numeric,closed_form,abs_err,threshold,status")

    def row(name, p, arg, numeric, closed, err, thr):
        nonlocal failed
        ok = err <= thr
        failed |= not ok
        print(f"{name},{_fmt(p)},{_fmt(arg)},{_fmt(numeric)},{_fmt(closed)},"
              f"{_fmt(err)},{_fmt(thr)},{'pass' if ok else 'FAIL'}")

    for p in p1:
        for s in s_vals:
            chk = lemma1_check(s, p)
            row("sine", p, s, chk.numeric, chk.closed_form, chk.abs_err, t1)
            row("one_minus_cos", p, s, chk.extra["cos_numeric"],
                chk.extra["cos_closed_form"], chk.extra["cos_abs_err"], t1)
    for p in p2:
        for z in z_vals:
            chk = lemma2_check(z, p)
            row("planar", p, z, chk.numeric, chk.closed_form, chk.abs_err, t2)
            row("planar_gradient", p, z, chk.extra["deriv_numeric"],
                chk.extra["deriv_closed_form"], chk.extra["deriv_abs_err"], t2)

    print()
    print("alpha,psi,s_real_1,s_iso_1,c0")
    for al in alphas:
        k = constants(al, 1.0)
        print(f"{_fmt(al)},{_fmt(k.psi_alpha)},{_fmt(k.s_alpha_real)},"
              f"{_fmt(k.s_alpha_iso)},{_fmt(k.c0)}")
    return EXIT_FAIL if failed else EXIT_OK


def build_parser():
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--seed", type=int, default=None,
                        help=f"RNG seed (fallback: ${SEED_ENV}, then {DEFAULT_SEED})")

    parser = _Parser(prog="stable-spectra",
                     description="Covariation analysis of symmetric alpha-stable vectors "
                                 "and harmonisable processes.",
                     epilog="Exit codes: 0 pass, 1 check failed, 2 usage or input error.")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    p = sub.add_parser("check-additivity", parents=[common],
                       help="third-derivative additivity check of a spectral measure")
    p.add_argument("measure", help="measure JSON file")
    p.add_argument("--mode", choices=["literal", "pairwise"], default="literal",
                   help="index triples: literal = not all equal, pairwise = pairwise "
                        "distinct (default: %(default)s)")
    p.add_argument("--tol", type=float, default=1e-10, help="pass tolerance (default: %(default)s)")
    p.set_defaults(func=cmd_check_additivity)

    p = sub.add_parser("covariation", parents=[common],
                       help="exact (and optionally Monte-Carlo) covariation of two linear forms")
    p.add_argument("measure", help="measure JSON file")
    p.add_argument("--alpha", type=float, help="stability index in (1, 2)")
    p.add_argument("--a", required=True, help="first coefficient vector, comma separated")
    p.add_argument("--b", required=True, help="second coefficient vector, comma separated")
    p.add_argument("--estimate", action="store_true", help="also run the moment estimator")
    p.add_argument("--n", type=int, default=100_000, help="samples for --estimate "
                                                          "(default: %(default)s)")
    p.add_argument("--p", type=float, default=None,
                   help="moment order, 1 <= p < alpha (default: min(1.2, (1 + alpha)/2))")
    p.set_defaults(func=cmd_covariation)

    p = sub.add_parser("classify", parents=[common],
                       help="stationary / periodic / almost-periodic verdict of a model")
    p.add_argument("model", help="model JSON file")
    p.add_argument("--tol", type=float, default=1e-12,
                   help="mass below which an entry of F is ignored (default: %(default)s)")
    p.add_argument("--pd-field", choices=["real", "complex"], default="real",
                   help="coefficients used by the positive-definiteness check "
                        "(default: %(default)s)")
    p.add_argument("--pd-trials", type=int, default=1000,
                   help="random vectors in the positive-definiteness check (default: %(default)s)")
    p.set_defaults(func=cmd_classify)

    p = sub.add_parser("spectrum", help="cyclic Fourier coefficients as CSV")
    p.add_argument("model", help="model JSON file")
    p.add_argument("--T", type=float, required=True, help="period")
    p.add_argument("--tau", type=float, default=0.0, help="lag (default: %(default)s)")
    p.add_argument("--k-min", type=int, default=-3, help="(default: %(default)s)")
    p.add_argument("--k-max", type=int, default=3, help="(default: %(default)s)")
    p.add_argument("--tol", type=float, default=1e-8,
                   help="allowed numeric/predicted mismatch (default: %(default)s)")
    p.add_argument("--out", default=None, help="CSV path (default: stdout)")
    p.set_defaults(func=cmd_spectrum)

    p = sub.add_parser("synthesize", parents=[common], help="sample paths as CSV")
    p.add_argument("model", help="model JSON file with an increment law")
    p.add_argument("--times", required=True, help="comma separated time points")
    p.add_argument("--n", type=int, default=1000, help="number of paths (default: %(default)s)")
    p.add_argument("--out", default=None, help="CSV path (default: stdout)")
    p.set_defaults(func=cmd_synthesize)

    p = sub.add_parser("verify-identities",
                       help="check the oscillatory-integral identities against closed forms")
    p.add_argument("--alpha", default="1.2,1.5,1.8",
                   help="alphas for the constants table (default: %(default)s)")
    p.add_argument("--p", default="1.1,1.5,1.9",
                   help="orders for the one-dimensional identities (default: %(default)s)")
    p.add_argument("--s", default="-2,-1,-0.5,0,0.5,1,2",
                   help="arguments for the one-dimensional identities; write --s=-1,... when the "
                        "list starts with a minus sign (default: %(default)s)")
    p.add_argument("--p2", default="0.8,1.5",
                   help="orders for the planar identities (default: %(default)s)")
    p.add_argument("--z", default="1,1j,1+1j",
                   help="complex arguments for the planar identities (default: %(default)s)")
    p.add_argument("--tol", type=float, default=None,
                   help=f"override both thresholds (defaults: {LEMMA1_THRESHOLD:g} "
                        f"one-dimensional, {LEMMA2_THRESHOLD:g} planar)")
    p.set_defaults(func=cmd_verify_identities)
    return parser


def main(argv=None):
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except UsageError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT


if __name__ == "__main__":
    sys.exit(main())
