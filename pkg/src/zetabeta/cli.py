"""Command-line front end.

Verbs: ``eval``, ``verify``, ``scan``, ``figure1`` and ``tschebyschef``.
CSV goes to stdout (or ``--out``), summaries and warnings to stderr.
Exit status: 0 success or pass, 1 identity check failed, 2 usage or
domain error.
"""

from __future__ import annotations

import argparse
import configparser
import csv
import dataclasses
import math
import sys
import warnings
from concurrent.futures import ProcessPoolExecutor
from functools import partial
from typing import Callable, Iterable, List, Optional, Sequence, Tuple

from . import afunction as af
from . import identity_lab as lab
from . import special_functions as sf
from .core import DEFAULT_PRECISION, Precision, ZetaBetaError, as_positive_real, parse_complex

GRID_IDENTITIES = ("funceq-A", "eq1", "eq2", "eq8")
IDENTITIES = GRID_IDENTITIES + (
    "ramanujan",
    "eq17",
    "fourier-cosine",
    "poisson",
    "epstein",
    "H-transform",
    "route-agreement",
)
VERIFY_COLUMNS = ("sigma", "t", "lhs_re", "lhs_im", "rhs_re", "rhs_im", "residual")

RAMANUJAN_CASES = ((1.0, 0.0), (math.sqrt(math.pi), 0.0), (math.sqrt(math.pi), 0.5), (2.0, 0.5))
FOURIER_CASES = ((1.0, 2.0, 0.0), (1.0, 2.0, 3.0), (0.6 * math.pi, math.pi**2, 2.0 * math.pi))
# (beta, n, k) for the sech-pair specialisation of the cosine transform
FOURIER_SECH_CASES = ((math.sqrt(math.pi), 0.5, 0), (math.sqrt(math.pi), 0.5, 1), (1.5, 0.3, 1))
EQ17_BETAS = (1.0, math.sqrt(math.pi), 2.0)
EPSTEIN_POINTS = (2 + 0j, 2.5 + 0j, 2 + 1j)
MINIMUM_THRESHOLD = 1e-3
_GOLDEN = (math.sqrt(5.0) - 1.0) / 2.0


class UsageError(Exception):
    """Invalid option combination, reported before any computation."""


def fmt(x: float) -> str:
    return "%.17g" % x


def _complex_arg(text: str) -> complex:
    try:
        return parse_complex(text)
    except ValueError as exc:
        raise argparse.ArgumentTypeError(str(exc)) from None


def _positive_float(text: str) -> float:
    try:
        x = float(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"not a number: {text!r}") from None
    if not (x > 0 and math.isfinite(x)):
        raise argparse.ArgumentTypeError(f"must be positive: {text!r}")
    return x


def _float_list(text: str) -> List[float]:
    try:
        return [float(v) for v in text.split(",") if v.strip()]
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected comma-separated numbers: {text!r}") from None


def load_precision(path: Optional[str]) -> Precision:
    """Read ``key = value`` overrides of :class:`Precision` from ``path``."""
    if path is None:
        return DEFAULT_PRECISION
    parser = configparser.ConfigParser(inline_comment_prefixes=("#", ";"))
    try:
        with open(path, encoding="utf-8") as fh:
            parser.read_string("[precision]\n" + fh.read())
    except (OSError, configparser.Error) as exc:
        raise UsageError(f"cannot read config {path}: {exc}") from None
    fields = {f.name: f.type for f in dataclasses.fields(Precision)}
    overrides = {}
    for key, raw in parser["precision"].items():
        if key not in fields:
            raise UsageError(f"unknown config key {key!r}; known keys: {', '.join(fields)}")
        cast = int if key in ("max_terms", "quad_levels") else float
        try:
            overrides[key] = cast(raw)
        except ValueError:
            raise UsageError(f"bad value for {key}: {raw!r}") from None
    try:
        return dataclasses.replace(DEFAULT_PRECISION, **overrides)
    except ValueError as exc:
        raise UsageError(str(exc)) from None


def _ordered_map(fn: Callable, items: Sequence, jobs: int) -> List:
    """``map`` that may fan out to worker processes; results keep input order."""
    if jobs <= 1 or len(items) < 2:
        return [fn(x) for x in items]
    with ProcessPoolExecutor(max_workers=jobs) as pool:
        return list(pool.map(fn, items, chunksize=max(1, len(items) // (4 * jobs))))


def _write_csv(out, header: Sequence[str], rows: Iterable[Sequence[str]]) -> None:
    writer = csv.writer(out, lineterminator="\n")
    writer.writerow(header)
    writer.writerows(rows)


# ---------------------------------------------------------------- eval

def cmd_eval(args, prec: Precision) -> Tuple[List[str], List[List[str]]]:
    s = args.s
    if args.fn in ("H", "theta4_deficit"):
        if s.imag != 0:
            raise UsageError(f"{args.fn} takes a positive real argument")
        x = as_positive_real(s.real)
        fn = af.harmonic_sum_H if args.fn == "H" else sf.theta4_deficit
        result = fn(x, prec)
    elif args.fn == "A":
        result = af.A(s, args.route or af.ARoute.DIRECT_PRODUCT, prec)
    else:
        fn = {"gamma": sf.gamma, "zeta": sf.zeta, "L": sf.beta_L, "eta": sf.eta}[args.fn]
        result = fn(s, prec)
    header = ["fn", "sigma", "t", "value_re", "value_im", "err_estimate", "terms_used"]
    row = [args.fn, fmt(s.real), fmt(s.imag), fmt(result.value.real), fmt(result.value.imag), fmt(result.err_estimate), str(result.terms_used)]
    return header, [row]


# -------------------------------------------------------------- verify

def _check_verify_options(args) -> None:
    ident = args.identity
    given = {
        "--grid": args.grid is not None,
        "--default-grid": args.default_grid,
        "--route": args.route is not None,
        "--alpha": args.alpha is not None,
        "--n": args.n is not None,
        "--beta": args.beta is not None,
        "--a": args.a is not None,
        "--b": args.b is not None,
        "--u": args.u is not None,
        "--s": bool(args.s),
        "--x": bool(args.x),
        "--cutoff": args.cutoff is not None,
    }
    allowed = {
        "funceq-A": {"--grid", "--default-grid", "--route"},
        "eq1": {"--grid", "--default-grid"},
        "eq2": {"--grid", "--default-grid"},
        "eq8": {"--grid", "--default-grid"},
        "ramanujan": {"--alpha", "--n"},
        "eq17": {"--beta"},
        "fourier-cosine": {"--a", "--b", "--u"},
        "poisson": set(),
        "epstein": {"--s", "--cutoff"},
        "H-transform": {"--x"},
        "route-agreement": {"--s"},
    }[ident]
    extra = sorted(k for k, v in given.items() if v and k not in allowed)
    if extra:
        raise UsageError(f"option(s) {', '.join(extra)} not valid with --identity {ident}")
    if args.grid is not None and args.default_grid:
        raise UsageError("--grid and --default-grid are mutually exclusive")
    if ident == "ramanujan" and (args.alpha is None) != (args.n is None):
        raise UsageError("--alpha and --n must be given together")
    if ident == "fourier-cosine" and len({args.a is None, args.b is None, args.u is None}) > 1:
        raise UsageError("--a, --b and --u must be given together")
    if args.cutoff is not None and args.cutoff < 10:
        raise UsageError("--cutoff must be at least 10")


def _grid_check(ident: str, prec: Precision, tol: Optional[float], route, points: List[complex]) -> lab.CheckReport:
    kw = {} if tol is None else {"tol": tol}
    if ident == "funceq-A":
        return lab.check_functional_equation(points, prec, route or af.ARoute.DIRECT_PRODUCT, **kw)
    if ident == "eq1":
        return lab.check_reflection_zeta(points, prec, "eq1", **kw)
    if ident == "eq2":
        return lab.check_reflection_L(points, prec, **kw)
    return lab.check_eq8_identity(points, prec, **kw)


def _chunks(items: List, count: int) -> List[List]:
    size = max(1, math.ceil(len(items) / count))
    return [items[i : i + size] for i in range(0, len(items), size)]


def run_verify(args, prec: Precision) -> List[lab.CheckReport]:
    ident, tol = args.identity, args.tol
    kw = {} if tol is None else {"tol": tol}
    if ident in GRID_IDENTITIES:
        grid = lab.DEFAULT_FUNCEQ_GRID if args.grid is None else lab.GridSpec.parse(args.grid, lab.POLE_DISKS)
        points = grid.points()
        if not points:
            raise UsageError("grid contains no points outside the pole exclusions")
        fn = partial(_grid_check, ident, prec, tol, args.route)
        parts = _ordered_map(fn, _chunks(points, max(1, args.jobs)), args.jobs)
        merged = lab.CheckReport(parts[0].identity_name, parts[0].tolerance)
        for part in parts:
            merged.points.extend(part.points)
        return [merged]
    if ident == "ramanujan":
        cases = RAMANUJAN_CASES if args.alpha is None else ((args.alpha, args.n),)
        return [lab.check_ramanujan(a, n, prec, **kw) for a, n in cases]
    if ident == "eq17":
        betas = EQ17_BETAS if args.beta is None else (args.beta,)
        return [lab.check_eq17(b, prec, **kw) for b in betas]
    if ident == "fourier-cosine":
        if args.a is not None:
            return [lab.check_fourier_cosine(args.a, args.b, args.u, prec, **kw)]
        reports = [lab.check_fourier_cosine(a, b, u, prec, **kw) for a, b, u in FOURIER_CASES]
        reports += [lab.check_fourier_cosine_sech(b, n, k, prec, **kw) for b, n, k in FOURIER_SECH_CASES]
        return reports
    if ident == "poisson":
        return [lab.check_poisson_gaussian(prec, **kw)]
    if ident == "epstein":
        points = args.s or EPSTEIN_POINTS
        cutoff = 200 if args.cutoff is None else args.cutoff
        return [lab.check_epstein_factorization(s, prec, cutoff, tol) for s in points]
    if ident == "H-transform":
        xs = [x for group in args.x for x in group] if args.x else (0.5, 1.0, math.pi, 5.0)
        return [lab.check_H_transform(xs, prec, **kw)]
    points = args.s or lab.ROUTE_POINTS_ALL + lab.ROUTE_POINTS_STRIP
    return [lab.check_route_agreement(points, prec, **kw)]


def verify_rows(reports: Sequence[lab.CheckReport]) -> List[List[str]]:
    rows = []
    for report in reports:
        for p in report.points:
            lhs, rhs = complex(p.lhs), complex(p.rhs)
            rows.append([fmt(p.s.real), fmt(p.s.imag), fmt(lhs.real), fmt(lhs.imag), fmt(rhs.real), fmt(rhs.imag), fmt(p.residual)])
    return rows


def verify_summary(identity: str, reports: Sequence[lab.CheckReport]) -> Tuple[bool, str]:
    passed = all(r.passed for r in reports)
    worst = max(r.max_residual for r in reports)
    count = sum(len(r.points) for r in reports)
    verdict = "PASS" if passed else "FAIL"
    return passed, f"{verdict} max_residual={worst:.3e} identity={identity} points={count}"


# ---------------------------------------------------------------- scan

def _abs_A(sigma: float, prec: Precision, t: float) -> float:
    return abs(af.A(complex(sigma, t), af.ARoute.DIRECT_PRODUCT, prec).value)


def golden_section_min(f: Callable[[float], float], a: float, b: float, resolution: float) -> Tuple[float, float]:
    """Minimise a unimodal ``f`` on ``[a, b]`` to an interval shorter than ``resolution``."""
    c = b - _GOLDEN * (b - a)
    d = a + _GOLDEN * (b - a)
    fc, fd = f(c), f(d)
    while b - a > resolution:
        if fc <= fd:
            b, d, fd = d, c, fc
            c = b - _GOLDEN * (b - a)
            fc = f(c)
        else:
            a, c, fc = c, d, fd
            d = a + _GOLDEN * (b - a)
            fd = f(d)
    t = 0.5 * (a + b)
    return t, f(t)


def scan_line(
    sigma: float, t0: float, t1: float, step: float, prec: Precision = DEFAULT_PRECISION, jobs: int = 1
) -> Tuple[List[Tuple[float, float]], List[Tuple[float, float]]]:
    """Sample ``|A(sigma + it)|`` on ``t0..t1`` and refine the dips below the threshold.

    Returns ``(samples, minima)``; each minimum is refined by golden-section
    search on the two neighbouring cells to ``step * 1e-3``.
    """
    count = int(math.floor((t1 - t0) / step + 1e-9)) + 1
    ts = [round(t0 + i * step, 12) for i in range(count)]
    values = _ordered_map(partial(_abs_A, sigma, prec), ts, jobs)
    f = partial(_abs_A, sigma, prec)
    minima = []
    for i in range(1, count - 1):
        if values[i] <= values[i - 1] and values[i] <= values[i + 1]:
            t, v = golden_section_min(f, ts[i - 1], ts[i + 1], step * 1e-3)
            if v < MINIMUM_THRESHOLD:
                minima.append((t, v))
    return list(zip(ts, values)), minima


# ------------------------------------------------------------- figure1

def figure1_rows(step: float, prec: Precision = DEFAULT_PRECISION, jobs: int = 1) -> List[Tuple[float, float]]:
    """``(sigma, Re A(sigma))`` for ``sigma = step, 2 step, ...`` up to ``1 - step``."""
    count = int(math.floor((1.0 - step) / step + 1e-9))
    sigmas = [round(k * step, 12) for k in range(1, count + 1)]
    values = _ordered_map(partial(_re_A, prec), sigmas, jobs)
    return list(zip(sigmas, values))


def _re_A(prec: Precision, sigma: float) -> float:
    return af.A(sigma, af.ARoute.DIRECT_PRODUCT, prec).value.real


# --------------------------------------------------------------- parser

def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="zetabeta", description="Evaluate and verify A(s) = Gamma(s) zeta(s) L(s) / pi^s.")
    parser.add_argument("--config", help="key=value file overriding precision settings")
    parser.add_argument("--out", help="write CSV here instead of stdout")
    parser.add_argument("--jobs", type=int, default=1, help="worker processes for grids and scans")
    sub = parser.add_subparsers(dest="verb", required=True)

    p = sub.add_parser("eval", help="evaluate one function at one point")
    p.add_argument("--fn", required=True, choices=("gamma", "zeta", "L", "eta", "A", "H", "theta4_deficit"))
    p.add_argument("--s", "--x", dest="s", required=True, type=_complex_arg, help='argument, e.g. "0.5+14i"')
    p.add_argument("--route", choices=[r.value for r in af.ARoute], help="evaluation route (A only)")

    p = sub.add_parser("verify", help="check an identity and emit per-point residuals")
    p.add_argument("--identity", required=True, choices=IDENTITIES)
    p.add_argument("--grid", help='"smin:smax:step,tmin:tmax:step"')
    p.add_argument("--default-grid", action="store_true")
    p.add_argument("--route", choices=[r.value for r in af.ARoute])
    p.add_argument("--tol", type=_positive_float)
    p.add_argument("--alpha", type=_positive_float)
    p.add_argument("--n", type=float)
    p.add_argument("--beta", type=_positive_float)
    p.add_argument("--a", type=float)
    p.add_argument("--b", type=float)
    p.add_argument("--u", type=float)
    p.add_argument("--s", action="append", type=_complex_arg)
    p.add_argument("--x", action="append", type=_float_list)
    p.add_argument("--cutoff", type=int)

    p = sub.add_parser("scan", help="|A| along a vertical line with refined minima")
    p.add_argument("--t0", type=float, default=0.0)
    p.add_argument("--t1", type=float, required=True)
    p.add_argument("--step", type=float, default=0.05)
    p.add_argument("--sigma", type=float, default=0.5)

    p = sub.add_parser("figure1", help="Re A(sigma) on 0 < sigma < 1")
    p.add_argument("--step", type=float, default=0.01)

    p = sub.add_parser("tschebyschef", help="the alternating prime sum F(y)")
    p.add_argument("--y", action="append", type=_float_list, required=True, help="comma-separated y values")
    p.add_argument("--p-max", type=int, default=10_000)
    return parser


def _validate(args) -> None:
    if args.jobs < 1:
        raise UsageError("--jobs must be at least 1")
    if args.verb == "eval" and args.route is not None and args.fn != "A":
        raise UsageError("--route is only valid with --fn A")
    if args.verb == "verify":
        _check_verify_options(args)
    if args.verb == "scan":
        if not (0 <= args.t0 < args.t1) or not args.step > 0 or not math.isfinite(args.t1):
            raise UsageError("scan needs 0 <= t0 < t1 and step > 0")
    if args.verb == "figure1" and not 0 < args.step < 0.5:
        raise UsageError("figure1 needs 0 < step < 0.5")
    if args.verb == "tschebyschef":
        ys = [y for group in args.y for y in group]
        if not ys or any(not (y > 0 and math.isfinite(y)) for y in ys):
            raise UsageError("every y must be a positive number")
        if args.p_max < 3:
            raise UsageError("--p-max must be at least 3")
        args.y = ys


def _dispatch(args, prec: Precision, err) -> Tuple[List[str], List[List[str]], int]:
    if args.verb == "eval":
        header, rows = cmd_eval(args, prec)
        return header, rows, 0
    if args.verb == "verify":
        reports = run_verify(args, prec)
        passed, line = verify_summary(args.identity, reports)
        print(line, file=err)
        return list(VERIFY_COLUMNS), verify_rows(reports), 0 if passed else 1
    if args.verb == "scan":
        samples, minima = scan_line(args.sigma, args.t0, args.t1, args.step, prec, args.jobs)
        rows = [["sample", fmt(t), fmt(v)] for t, v in samples]
        rows += [["minimum", fmt(t), fmt(v)] for t, v in minima]
        for t, v in minima:
            print(f"minimum t={t:.6f} |A|={v:.3e}", file=err)
        print(f"{len(minima)} minima below {MINIMUM_THRESHOLD:g} on sigma={args.sigma:g}", file=err)
        return ["kind", "t", "abs_A"], rows, 0
    if args.verb == "figure1":
        return ["sigma", "re_A"], [[fmt(s), fmt(v)] for s, v in figure1_rows(args.step, prec, args.jobs)], 0
    with warnings.catch_warnings(record=True) as caught:
        warnings.simplefilter("always", lab.TruncationWarning)
        values = [lab.tschebyschef_F(y, args.p_max) for y in args.y]
    for w in caught:
        print(f"warning: {w.message}", file=err)
    increasing = all(b > a for a, b in zip(values, values[1:]))
    print(f"monotonicity: {'strictly increasing' if increasing else 'not strictly increasing'} over {len(values)} values", file=err)
    return ["y", "F"], [[fmt(y), fmt(v)] for y, v in zip(args.y, values)], 0


def main(argv: Optional[Sequence[str]] = None, out=None, err=None) -> int:
    out = sys.stdout if out is None else out
    err = sys.stderr if err is None else err
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        _validate(args)
        prec = load_precision(args.config)
        header, rows, status = _dispatch(args, prec, err)
    except UsageError as exc:
        print(f"UsageError: {exc}", file=err)
        return 2
    except ZetaBetaError as exc:
        print(f"{type(exc).__name__}: {exc}", file=err)
        return 2
    if args.out:
        with open(args.out, "w", encoding="utf-8", newline="") as fh:
            _write_csv(fh, header, rows)
    else:
        _write_csv(out, header, rows)
    return status


if __name__ == "__main__":
    sys.exit(main())
