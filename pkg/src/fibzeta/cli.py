"""Command-line front end.

Subcommands: eval, grid, poles, verify, sequence, detect.  Output is plain
key: value records, CSV (17 significant digits, bit-exact round trips), or
JSON.  Exit codes: 0 success, 2 usage, 3 numerical failure, 4 domain error.
"""

from __future__ import annotations

import argparse
import csv
import json
import math
import re
import sys
from dataclasses import dataclass
from functools import lru_cache
from typing import Sequence

from .config import Settings, make_settings
from .continuation import (
    METHODS,
    PARITIES,
    PARITY_COMBINED,
    PARITY_EVEN,
    PARITY_ODD,
    ZetaEvaluation,
    direct_terms_for,
    zeta_combined_binomial,
    zeta_direct,
    zeta_even_binomial,
    zeta_norm_plus_one,
    zeta_odd_binomial,
)
from .crosscheck import pole_lattice, shifted_convolution_even, shifted_convolution_odd
from .errors import DomainError, NumericalError, PoleProximityError
from .poisson import zeta_even_poisson, zeta_odd_poisson
from .quadfield import QuadraticField, is_fib, make_field, sequence_terms
from .suites import SHIFTED_CONV_BOUND, SUITE_NAMES, run_suite

_NUM = r"(?:\d+\.?\d*|\.\d+)(?:[eE][+-]?\d+)?"
_PURE_REAL_RE = re.compile(rf"^\s*(?P<re>[+-]?{_NUM})\s*$")
_PURE_IMAG_RE = re.compile(rf"^\s*(?P<im>[+-]?(?:{_NUM})?)[iI]\s*$")
_FULL_RE = re.compile(rf"^\s*(?P<re>[+-]?{_NUM})(?P<im>[+-](?:{_NUM})?)[iI]\s*$")


def _imag_value(body: str) -> float:
    if body in ("", "+"):
        return 1.0
    if body == "-":
        return -1.0
    return float(body)


def parse_complex(text: str) -> complex:
    """Parse 'a+bi' literals: '2', '-1.5', '3i', '-i', '1.5-2e-3i'.

    The sign between the two parts is mandatory; anything ambiguous is
    rejected rather than guessed.
    """
    match = _PURE_REAL_RE.match(text)
    if match:
        return complex(float(match.group("re")), 0.0)
    match = _PURE_IMAG_RE.match(text)
    if match:
        return complex(0.0, _imag_value(match.group("im")))
    match = _FULL_RE.match(text)
    if match:
        return complex(float(match.group("re")), _imag_value(match.group("im")))
    raise ValueError(f"cannot parse complex literal {text!r}; expected forms like 1.5-2i")


def fmt(x: float) -> str:
    """17 significant digits: enough for a bit-exact float round trip."""
    return f"{x:.17g}"


@dataclass(frozen=True)
class GridRequest:
    D: int
    parity: str
    re_range: tuple[float, float, float]
    im_range: tuple[float, float, float]
    methods: tuple[str, ...]
    tol: float
    output: str

    def __post_init__(self):
        for lo, hi, step in (self.re_range, self.im_range):
            if step <= 0 or not all(math.isfinite(v) for v in (lo, hi, step)):
                raise DomainError(f"grid ranges must be finite with step > 0")
        if not (0.0 < self.tol <= 1e-2):
            raise DomainError(f"tol must be in (0, 1e-2], got {self.tol}")
        if self.parity not in PARITIES:
            raise DomainError(f"parity must be one of {PARITIES}")
        for m in self.methods:
            if m not in METHODS:
                raise DomainError(f"unknown method {m!r}")
        if self.output not in ("csv", "json"):
            raise DomainError("output must be csv or json")

    def axis(self, which: str) -> list[float]:
        lo, hi, step = self.re_range if which == "re" else self.im_range
        n = int(math.floor((hi - lo) / step + 1e-9)) + 1
        return [lo + i * step for i in range(max(n, 0))]


def evaluate(
    field: QuadraticField,
    s: complex,
    parity: str,
    method: str,
    tol: float,
    settings: Settings,
) -> ZetaEvaluation:
    """Dispatch one evaluation; norm +1 fields only support the combined parity."""
    if not field.is_norm_minus_one:
        if parity != PARITY_COMBINED:
            field.require_norm_minus_one()
        if method == "binomial":
            return zeta_norm_plus_one(field, s, tol, settings)
        if method == "direct":
            return zeta_direct(field, s, parity, direct_terms_for(field, s, tol, parity), settings)
        field.require_norm_minus_one()

    if method == "binomial":
        fun = {
            PARITY_ODD: zeta_odd_binomial,
            PARITY_EVEN: zeta_even_binomial,
            PARITY_COMBINED: zeta_combined_binomial,
        }[parity]
        return fun(field, s, tol, settings)
    if method == "poisson":
        if parity == PARITY_ODD:
            return zeta_odd_poisson(field, s, tol, settings)
        if parity == PARITY_EVEN:
            return zeta_even_poisson(field, s, tol, settings)
        odd = zeta_odd_poisson(field, s, tol, settings)
        even = zeta_even_poisson(field, s, tol, settings)
        return ZetaEvaluation(
            value=odd.value + even.value,
            method="poisson",
            terms_used=odd.terms_used + even.terms_used,
            tail=type(odd.tail)(odd.tail.bound + even.tail.bound, False),
            nearest_pole_distance=min(odd.nearest_pole_distance, even.nearest_pole_distance),
        )
    if method == "direct":
        return zeta_direct(field, s, parity, direct_terms_for(field, s, tol, parity), settings)
    if method == "shifted_convolution":
        if parity == PARITY_ODD:
            return shifted_convolution_odd(field, s, SHIFTED_CONV_BOUND)
        if parity == PARITY_EVEN:
            return shifted_convolution_even(field, s, SHIFTED_CONV_BOUND)
        odd = shifted_convolution_odd(field, s, SHIFTED_CONV_BOUND)
        even = shifted_convolution_even(field, s, SHIFTED_CONV_BOUND)
        return ZetaEvaluation(
            value=odd.value + even.value,
            method="shifted_convolution",
            terms_used=odd.terms_used + even.terms_used,
            tail=type(odd.tail)(odd.tail.bound + even.tail.bound, True),
            nearest_pole_distance=odd.nearest_pole_distance,
        )
    raise DomainError(f"unknown method {method!r}")


# -------------------------------------------------------------------- commands

def cmd_eval(args: argparse.Namespace, settings: Settings) -> int:
    field = make_field(args.D, settings)
    s = parse_complex(args.s)
    ev = evaluate(field, s, args.parity, args.method, args.tol, settings)
    record = {
        "value_re": fmt(ev.value.real),
        "value_im": fmt(ev.value.imag),
        "method": ev.method,
        "terms_used": ev.terms_used,
        "tail_bound": fmt(ev.tail_bound),
        "tail_rigorous": ev.tail.rigorous,
        "nearest_pole_distance": fmt(ev.nearest_pole_distance),
    }
    if args.json:
        print(json.dumps(record))
    else:
        for key, val in record.items():
            print(f"{key}: {val}")
    return 0


@lru_cache(maxsize=8)
def _cached_field(d: int, settings: Settings) -> QuadraticField:
    return make_field(d, settings)


def _point_rows(task) -> list[list[str]]:
    """Rows for one grid point (module-level so worker processes can run it)."""
    d, settings, re_part, im, parity, methods, tol = task
    field = _cached_field(d, settings)
    s = complex(re_part, im)
    rows = []
    for method in methods:
        base = [fmt(re_part), fmt(im), method]
        try:
            ev = evaluate(field, s, parity, method, tol, settings)
            rows.append(base + [fmt(ev.value.real), fmt(ev.value.imag),
                                fmt(ev.tail_bound), fmt(ev.nearest_pole_distance), "ok"])
        except PoleProximityError as exc:
            rows.append(base + ["", "", "", fmt(exc.distance), "pole"])
        except NumericalError as exc:
            rows.append(base + ["", "", "", "", type(exc).__name__])
    return rows


def _grid_rows(request: GridRequest, settings: Settings, workers: int = 1) -> list[list[str]]:
    """Evaluate all grid points; rows come back in grid order even when the
    work fans out across processes."""
    tasks = [
        (request.D, settings, re_part, im, request.parity, request.methods, request.tol)
        for im in request.axis("im")
        for re_part in request.axis("re")
    ]
    if workers > 1 and len(tasks) > 1:
        from concurrent.futures import ProcessPoolExecutor

        with ProcessPoolExecutor(max_workers=workers) as pool:
            chunks = list(pool.map(_point_rows, tasks, chunksize=4))
    else:
        chunks = [_point_rows(t) for t in tasks]
    return [row for chunk in chunks for row in chunk]


GRID_HEADER = ["re_s", "im_s", "method", "re_z", "im_z", "tail_bound", "pole_distance", "status"]


def cmd_grid(args: argparse.Namespace, settings: Settings) -> int:
    request = GridRequest(
        D=args.D,
        parity=args.parity,
        re_range=tuple(args.re),
        im_range=tuple(args.im),
        methods=tuple(args.methods.split(",")),
        tol=args.tol,
        output=args.format,
    )
    rows = _grid_rows(request, settings, workers=args.workers)
    out = open(args.out, "w", newline="") if args.out else sys.stdout
    try:
        if request.output == "csv":
            writer = csv.writer(out)
            writer.writerow(GRID_HEADER)
            writer.writerows(rows)
        else:
            records = [dict(zip(GRID_HEADER, row)) for row in rows]
            json.dump(records, out, indent=1)
            out.write("\n")
    finally:
        if args.out:
            out.close()
    return 0


def cmd_poles(args: argparse.Namespace, settings: Settings) -> int:
    field = make_field(args.D, settings)
    specs = pole_lattice(field, args.kmax, args.mmax, args.which)
    writer = csv.writer(sys.stdout)
    writer.writerow(["k", "m", "re_s0", "im_s0", "re_residue_odd", "im_residue_odd",
                     "re_residue_even", "im_residue_even", "survives_in_combined"])
    for p in specs:
        writer.writerow([
            p.k, p.m, fmt(p.location.real), fmt(p.location.imag),
            fmt(p.residue_odd.real), fmt(p.residue_odd.imag),
            fmt(p.residue_even.real), fmt(p.residue_even.imag),
            int(p.survives_in_combined),
        ])
    return 0


def cmd_verify(args: argparse.Namespace, settings: Settings) -> int:
    d_list = [int(tok) for tok in args.D.split(",")] if args.D else None
    names = SUITE_NAMES if args.suite == "all" else tuple(args.suite.split(","))
    for name in names:
        if name not in SUITE_NAMES:
            raise UsageError(f"unknown suite {name!r}; choose from {', '.join(SUITE_NAMES)} or all")
    failed = 0
    for name in names:
        results = run_suite(name, d_list, seed=args.seed, bound=args.bound, points=args.points)
        for res in results:
            print(res.line())
            failed += 0 if res.passed else 1
    if failed:
        print(f"{failed} check(s) FAILED", file=sys.stderr)
        return 3
    return 0


def cmd_sequence(args: argparse.Namespace, settings: Settings) -> int:
    field = make_field(args.D, settings)
    writer = csv.writer(sys.stdout)
    writer.writerow(["n", "fib", "lucas", "norm_identity"])
    for t in sequence_terms(field, args.n + 1):
        ok = t.lucas**2 - field.q * t.fib**2 == 4 * field.norm_eps**t.index
        writer.writerow([t.index, t.fib, t.lucas, "ok" if ok else "VIOLATED"])
    return 0


def cmd_detect(args: argparse.Namespace, settings: Settings) -> int:
    field = make_field(args.D, settings)
    result = is_fib(field, args.n)
    print(f"verdict: {result.verdict}")
    if result.witness is not None:
        print(f"witness: {result.witness}")
    return 0


class UsageError(Exception):
    pass


# ---------------------------------------------------------------------- parser

def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--config", help="key=value settings file")
    common.add_argument("--precision", type=int, help="decimal digits for field constants")
    common.add_argument("--pole-guard", type=float, help="pole guard radius")

    parser = argparse.ArgumentParser(
        prog="fibzeta",
        description="Zeta functions of quadratic-field Fibonacci sequences",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("eval", parents=[common], help="evaluate one point")
    p.add_argument("--D", type=int, required=True)
    p.add_argument("--s", required=True, help="complex literal, e.g. 1.5-2i (use --s=-1 for negatives)")
    p.add_argument("--parity", choices=PARITIES, default=PARITY_COMBINED)
    p.add_argument("--method", choices=METHODS, default="binomial")
    p.add_argument("--tol", type=float, default=1e-12)
    p.add_argument("--json", action="store_true")
    p.set_defaults(fun=cmd_eval)

    p = sub.add_parser("grid", parents=[common], help="evaluate a rectangular grid")
    p.add_argument("--D", type=int, required=True)
    p.add_argument("--parity", choices=PARITIES, default=PARITY_COMBINED)
    p.add_argument("--re", type=float, nargs=3, required=True, metavar=("LO", "HI", "STEP"))
    p.add_argument("--im", type=float, nargs=3, required=True, metavar=("LO", "HI", "STEP"))
    p.add_argument("--methods", default="binomial,poisson", help="comma list")
    p.add_argument("--tol", type=float, default=1e-10)
    p.add_argument("--format", choices=("csv", "json"), default="csv")
    p.add_argument("--out", help="write to file instead of stdout")
    p.add_argument("--workers", type=int, default=1, help="parallel evaluation processes")
    p.set_defaults(fun=cmd_grid)

    p = sub.add_parser("poles", parents=[common], help="pole lattice with residues")
    p.add_argument("--D", type=int, required=True)
    p.add_argument("--kmax", type=int, default=2)
    p.add_argument("--mmax", type=int, default=3)
    p.add_argument("--which", choices=("odd", "even", "combined"), default="odd")
    p.set_defaults(fun=cmd_poles)

    p = sub.add_parser("verify", parents=[common], help="run verification suites")
    p.add_argument("--suite", required=True, help=f"one of {', '.join(SUITE_NAMES)}, or all")
    p.add_argument("--D", help="comma list of fields, e.g. 5,10")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--bound", type=int, default=1_000_000, help="pell enumeration bound")
    p.add_argument("--points", type=int, default=200, help="grid points per field")
    p.set_defaults(fun=cmd_verify)

    p = sub.add_parser("sequence", parents=[common], help="print sequence terms")
    p.add_argument("--D", type=int, required=True)
    p.add_argument("--n", type=int, required=True)
    p.set_defaults(fun=cmd_sequence)

    p = sub.add_parser("detect", parents=[common], help="Pell-type membership test")
    p.add_argument("--D", type=int, required=True)
    p.add_argument("--n", type=int, required=True)
    p.set_defaults(fun=cmd_detect)

    return parser


def main(argv: Sequence[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return exc.code if isinstance(exc.code, int) else 2
    try:
        settings = make_settings(
            config_path=args.config,
            precision_dps=args.precision,
            pole_guard_radius=args.pole_guard,
        )
        return args.fun(args, settings)
    except UsageError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except DomainError as exc:
        print(f"error: {type(exc).__name__}: {exc}", file=sys.stderr)
        return 4
    except NumericalError as exc:
        print(f"error: {type(exc).__name__}: {exc}", file=sys.stderr)
        return 3


def entry_point() -> None:
    sys.exit(main())


if __name__ == "__main__":
    entry_point()
