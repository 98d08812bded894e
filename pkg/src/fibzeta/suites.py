"""Named verification suites shared by the CLI and the acceptance tests.

Each check returns a CheckResult with the worst observed deviation so the
caller can print one line per check and compare against its tolerance.
Randomized grids are driven by a caller-supplied seed and are rejection
sampled away from the pole lattice.
"""

from __future__ import annotations

import cmath
import math
import random
from dataclasses import dataclass
from typing import Sequence

from .complexfn import cgamma, czeta
from .continuation import (
    PARITY_EVEN,
    PARITY_ODD,
    direct_terms_for,
    nearest_lattice_pole,
    zeta_combined_binomial,
    zeta_direct,
    zeta_even_binomial,
    zeta_odd_binomial,
)
from .crosscheck import (
    pole_lattice,
    residue_numeric,
    shifted_convolution_even,
    shifted_convolution_odd,
    special_value_even_minus_one,
)
from .poisson import (
    fourier_coefficient_odd,
    zeta_even_poisson,
    zeta_functional_reconstruction,
    zeta_odd_poisson,
)
from .quadfield import QuadraticField, fib_upto, is_fib, make_field, sequence_terms

DEFAULT_FIELDS = (2, 5, 10, 13)
SHIFTED_CONV_BOUND = 10_000_000_000


@dataclass(frozen=True)
class CheckResult:
    name: str
    passed: bool
    max_deviation: float
    tolerance: float
    detail: str = ""

    def line(self) -> str:
        status = "PASS" if self.passed else "FAIL"
        out = f"{status} {self.name}: max deviation {self.max_deviation:.3e} (tol {self.tolerance:.1e})"
        if self.detail:
            out += f" [{self.detail}]"
        return out


def sample_points(
    field: QuadraticField,
    rng: random.Random,
    count: int,
    re_lo: float,
    re_hi: float,
    im_max: float,
    min_pole_distance: float = 0.05,
) -> list[complex]:
    """Uniform points in the box, rejection-sampled off the pole lattice."""
    out: list[complex] = []
    while len(out) < count:
        s = complex(rng.uniform(re_lo, re_hi), rng.uniform(-im_max, im_max))
        if nearest_lattice_pole(field, s)[3] > min_pole_distance:
            out.append(s)
    return out


# ------------------------------------------------------------------ sequences

_SEQUENCE_PREFIXES = {
    3: ([0, 1, 4, 15, 56, 209], [2, 4, 14, 52, 194, 724]),
    10: ([0, 1, 6, 37, 228], [2, 6, 38, 234, 1442]),
}


def sequence_checks() -> list[CheckResult]:
    out = []
    for d, (fib_ref, luc_ref) in _SEQUENCE_PREFIXES.items():
        field = make_field(d)
        terms = sequence_terms(field, len(fib_ref))
        ok = [t.fib for t in terms] == fib_ref and [t.lucas for t in terms] == luc_ref
        out.append(CheckResult(f"sequence-prefix D={d}", ok, 0.0 if ok else 1.0, 0.0, "exact"))
    field = make_field(5)
    fibs, lucs = [0, 1], [2, 1]
    for _ in range(60):
        fibs.append(fibs[-1] + fibs[-2])
        lucs.append(lucs[-1] + lucs[-2])
    terms = sequence_terms(field, 51)
    ok = [t.fib for t in terms] == fibs[:51] and [t.lucas for t in terms] == lucs[:51]
    out.append(CheckResult("sequence-standard D=5", ok, 0.0 if ok else 1.0, 0.0, "exact"))
    return out


# ----------------------------------------------------------------------- pell

def pell_check(field: QuadraticField, bound: int = 1_000_000) -> CheckResult:
    odd_set, even_set = set(), set()
    for t in fib_upto(field, bound):
        (odd_set if t.index % 2 else even_set).add(t.fib)
    members = odd_set | even_set
    split = field.is_norm_minus_one
    mismatches = 0
    for n in range(1, bound + 1):
        r = is_fib(field, n)
        if bool(r) != (n in members):
            mismatches += 1
            continue
        if split and r:
            if r.verdict == "member_odd_index" and n not in odd_set:
                mismatches += 1
            elif r.verdict == "member_even_index" and n not in even_set:
                mismatches += 1
    return CheckResult(
        f"pell-membership D={field.D}",
        mismatches == 0,
        float(mismatches),
        0.0,
        f"{bound} integers, {len(members)} members",
    )


# --------------------------------------------------------------- cross-method

def cross_method_check(
    field: QuadraticField,
    rng: random.Random,
    points: int = 200,
    tol_cross: float = 1e-8,
    tol_direct: float = 1e-10,
    eval_tol: float = 1e-12,
) -> list[CheckResult]:
    """Binomial vs Poisson on the standard box, plus direct and
    shifted-convolution comparisons on their convergent sub-ranges."""
    n_box = points - 2 * (points // 5)
    box = sample_points(field, rng, n_box, -4.0, 3.0, 8.0)
    direct_pts = sample_points(field, rng, points // 5, 0.5, 3.0, 8.0)
    sc_pts = sample_points(field, rng, points // 5, 1.0, 3.0, 8.0)

    worst_odd = worst_even = 0.0
    for s in box + direct_pts + sc_pts:
        b_odd = zeta_odd_binomial(field, s, eval_tol)
        p_odd = zeta_odd_poisson(field, s, eval_tol)
        worst_odd = max(worst_odd, abs(b_odd.value - p_odd.value))
        b_even = zeta_even_binomial(field, s, eval_tol)
        p_even = zeta_even_poisson(field, s, eval_tol)
        worst_even = max(worst_even, abs(b_even.value - p_even.value))

    worst_direct = 0.0
    for s in direct_pts:
        for parity, fun in ((PARITY_ODD, zeta_odd_binomial), (PARITY_EVEN, zeta_even_binomial)):
            b = fun(field, s, eval_tol)
            d = zeta_direct(field, s, parity, direct_terms_for(field, s, eval_tol, parity))
            worst_direct = max(worst_direct, abs(b.value - d.value))

    worst_sc = 0.0
    sc_ok = True
    for s in sc_pts:
        for fun, sc_fun in (
            (zeta_odd_binomial, shifted_convolution_odd),
            (zeta_even_binomial, shifted_convolution_even),
        ):
            b = fun(field, s, eval_tol)
            sc = sc_fun(field, s, SHIFTED_CONV_BOUND)
            delta = abs(b.value - sc.value)
            allowed = b.tail_bound + sc.tail_bound + 1e-11
            worst_sc = max(worst_sc, delta - allowed)
            sc_ok = sc_ok and delta <= allowed

    d = field.D
    total = len(box) + len(direct_pts) + len(sc_pts)
    return [
        CheckResult(f"cross-method odd D={d}", worst_odd < tol_cross, worst_odd, tol_cross,
                    f"{total} points"),
        CheckResult(f"cross-method even D={d}", worst_even < tol_cross, worst_even, tol_cross,
                    f"{total} points"),
        CheckResult(f"binomial-vs-direct D={d}", worst_direct < tol_direct, worst_direct,
                    tol_direct, f"{len(direct_pts)} points, Re s >= 0.5"),
        CheckResult(f"binomial-vs-shifted-convolution D={d}", sc_ok, max(worst_sc, 0.0), 0.0,
                    f"{len(sc_pts)} points, Re s >= 1, within summed tail bounds"),
    ]


# -------------------------------------------------------------------- splitting

def splitting_check(
    field: QuadraticField, rng: random.Random, points: int = 100
) -> CheckResult:
    worst = 0.0
    ok = True
    for s in sample_points(field, rng, points, -6.0, 4.0, 10.0):
        odd = zeta_odd_binomial(field, s, 1e-13)
        even = zeta_even_binomial(field, s, 1e-13)
        comb = zeta_combined_binomial(field, s, 1e-13)
        delta = abs(comb.value - (odd.value + even.value))
        allowed = odd.tail_bound + even.tail_bound + comb.tail_bound + 1e-9
        worst = max(worst, delta)
        ok = ok and delta <= allowed
    return CheckResult(
        f"splitting-identity D={field.D}", ok, worst, 0.0, f"{points} points, within tail bounds"
    )


# ------------------------------------------------------ golden specialization

def golden_specialization_checks(rng: random.Random) -> list[CheckResult]:
    """At D=5 the combined series must reproduce the classical golden-ratio
    continuation term by term, and the value at s=1 is the reciprocal
    Fibonacci constant."""
    field = make_field(5)
    phi = (1.0 + math.sqrt(5.0)) / 2.0
    worst_rel = 0.0
    done = 0
    while done < 20:
        s = complex(rng.uniform(-3.0, 3.0), rng.uniform(-6.0, 6.0))
        if nearest_lattice_pole(field, s, "combined")[3] <= 0.1:
            continue
        coeff = 1.0 + 0j
        acc = 0j
        for k in range(140):
            acc += coeff / (phi ** (s + 2 * k) + (-1.0) ** (k + 1))
            coeff = coeff * (-s - k) / (k + 1.0)
        inline = 5.0 ** (s / 2.0) * acc
        mine = zeta_combined_binomial(field, s, 1e-14).value
        worst_rel = max(worst_rel, abs(mine - inline) / max(abs(inline), 1e-30))
        done += 1

    terms = [t.fib for t in sequence_terms(field, 102)]
    recip = sum(1.0 / terms[n] for n in range(1, 101))
    at_one = zeta_combined_binomial(field, 1.0, 1e-14).value
    dev_one = abs(at_one - 3.359885666243)

    return [
        CheckResult("golden-specialization termwise", worst_rel < 1e-12, worst_rel, 1e-12,
                    "20 random s, relative"),
        CheckResult("reciprocal-fibonacci value", dev_one < 1e-9 and abs(at_one - recip) < 1e-9,
                    dev_one, 1e-9, "Z(1) at D=5"),
    ]


# -------------------------------------------------------------------- residues

def residue_checks(field: QuadraticField, k_max: int = 2, m_max: int = 3) -> list[CheckResult]:
    worst_rel = 0.0
    for which, fun in (("odd", zeta_odd_binomial), ("even", zeta_even_binomial)):
        for p in pole_lattice(field, k_max, m_max, which):
            num = residue_numeric(
                lambda s, fun=fun: fun(field, s, 1e-12, pole_guard=1e-4).value,
                p.location,
                1e-3,
            )
            ana = p.residue_odd if which == "odd" else p.residue_even
            worst_rel = max(worst_rel, abs(num - ana) / max(1.0, abs(ana)))
    worst_cancel = 0.0
    for p in pole_lattice(field, k_max, m_max, "odd"):
        if (p.m + p.k) % 2 == 1:
            worst_cancel = max(worst_cancel, abs(p.residue_odd + p.residue_even))
    return [
        CheckResult(f"residues-contour-vs-analytic D={field.D}", worst_rel < 1e-6, worst_rel,
                    1e-6, f"k<={k_max}, |m|<={m_max}, both parities"),
        CheckResult(f"residue-cancellation D={field.D}", worst_cancel < 1e-8, worst_cancel,
                    1e-8, "m+k odd points"),
    ]


# ---------------------------------------------------------------- trivial zeros

def trivial_zero_checks(field: QuadraticField) -> list[CheckResult]:
    worst_p = worst_b = 0.0
    even_min = math.inf
    for j in range(1, 6):
        s = -(2.0 * j - 1.0)
        worst_p = max(worst_p, abs(zeta_odd_poisson(field, s, 1e-13).value))
        worst_b = max(worst_b, abs(zeta_odd_binomial(field, s, 1e-13).value))
        even_min = min(even_min, abs(zeta_even_poisson(field, s, 1e-13).value))
    return [
        CheckResult(f"trivial-zeros poisson D={field.D}", worst_p < 1e-10, worst_p, 1e-10,
                    "s = -1, -3, ..., -9"),
        CheckResult(f"trivial-zeros binomial D={field.D}", worst_b < 1e-10, worst_b, 1e-10,
                    "same points"),
        CheckResult(f"even-nonzero-at-odd-integers D={field.D}", even_min > 1e-8, even_min,
                    1e-8, "no zero forced on the even part"),
    ]


# -------------------------------------------------------------- special values

def special_value_checks(field: QuadraticField) -> list[CheckResult]:
    val = special_value_even_minus_one(field)
    exact = float(val.rational)
    b = zeta_even_binomial(field, -1.0, 1e-13).value
    p = zeta_even_poisson(field, -1.0, 1e-13).value
    worst = max(abs(b - exact), abs(p - exact))
    out = [
        CheckResult(
            f"special-value even(-1) D={field.D}",
            worst < 1e-9 and val.galois_sum_is_zero,
            worst,
            1e-9,
            f"exact {val.rational}, combined {val.combined}",
        )
    ]
    if field.D == 5:
        out.append(CheckResult("special-value Z5_even(-1) = -1", val.rational == -1,
                               abs(exact + 1.0), 0.0, "exact rational"))
    return out


# ------------------------------------------------------------ zeta cancellation

def zeta_cancellation_check(
    field: QuadraticField, rng: random.Random, points: int = 20
) -> CheckResult:
    worst = 0.0
    for _ in range(points):
        s = complex(rng.uniform(-4.5, -2.5), rng.uniform(-6.0, 6.0))
        recon, ref, _ = zeta_functional_reconstruction(field, s, 1e-11)
        worst = max(worst, abs(recon - ref))
    return CheckResult(
        f"zeta-cancellation D={field.D}", worst < 1e-9, worst, 1e-9,
        f"{points} points with Re s < 0"
    )


# ---------------------------------------------------------- special functions

def special_function_checks(rng: random.Random) -> list[CheckResult]:
    worst_refl = 0.0
    count = 0
    while count < 500:
        z = complex(rng.uniform(-10, 10), rng.uniform(-10, 10))
        if abs(z.real - round(z.real)) < 0.05:
            continue
        worst_refl = max(worst_refl, abs(cgamma(z) * cgamma(1 - z) * cmath.sin(math.pi * z) / math.pi - 1.0))
        count += 1

    worst_rec = 0.0
    count = 0
    while count < 300:
        z = complex(rng.uniform(-15, 15), rng.uniform(-40, 40))
        if abs(z.real - round(z.real)) < 0.1 and abs(z.imag) < 0.1:
            continue
        lhs = cgamma(z + 1.0)
        rhs = z * cgamma(z)
        worst_rec = max(worst_rec, abs(lhs - rhs) / max(abs(rhs), 1e-300))
        count += 1

    def xi(s):
        return 0.5 * s * (s - 1) * cmath.exp(-0.5 * s * math.log(math.pi)) * cgamma(0.5 * s) * czeta(s)

    worst_fe = 0.0
    count = 0
    while count < 80:
        s = complex(rng.uniform(-8, 9), rng.uniform(-30, 30))
        if abs(s - 1) < 0.1 or abs(s) < 0.1 or abs(s.imag) < 0.05:
            continue
        worst_fe = max(worst_fe, abs(xi(s) - xi(1 - s)) / max(abs(xi(s)), 1e-300))
        count += 1

    from scipy.integrate import quad
    import numpy as np

    field = make_field(5)
    phi = (1.0 + math.sqrt(5.0)) / 2.0

    def f(x):
        return 1.0 / (phi**x + phi**-x)

    ref0 = 2.0 * quad(f, 0.0, 60.0, epsabs=1e-14, limit=400)[0]
    ref1 = 2.0 * quad(f, 0.0, np.inf, weight="cos", wvar=2.0 * math.pi, epsabs=1e-13, limit=400)[0]
    dev0 = abs(fourier_coefficient_odd(field, 1.0, 0) - ref0)
    dev1 = abs(fourier_coefficient_odd(field, 1.0, 1) - ref1)
    worst_fc = max(dev0, dev1)

    return [
        CheckResult("gamma-reflection", worst_refl < 1e-10, worst_refl, 1e-10, "500 samples"),
        CheckResult("gamma-recurrence", worst_rec < 1e-10, worst_rec, 1e-10, "300 samples"),
        CheckResult("zeta-functional-equation", worst_fe < 1e-10, worst_fe, 1e-10, "80 samples"),
        CheckResult("fourier-coefficient-quadrature", worst_fc < 1e-8, worst_fc, 1e-8,
                    "D=5, s=1, m in {0, 1}"),
    ]


# -------------------------------------------------------------- suite registry

def _fields(d_list: Sequence[int]) -> list[QuadraticField]:
    return [make_field(d) for d in d_list]


def run_suite(
    name: str,
    d_list: Sequence[int] | None = None,
    seed: int = 0,
    bound: int = 1_000_000,
    points: int = 200,
) -> list[CheckResult]:
    """Run one named suite; raises KeyError for an unknown name."""
    rng = random.Random(seed)
    d_list = list(d_list) if d_list else list(DEFAULT_FIELDS)
    if name == "sequences":
        return sequence_checks()
    if name == "pell":
        return [pell_check(f, bound) for f in _fields(d_list)]
    if name == "cross-method":
        out = []
        for f in _fields(d_list):
            out.extend(cross_method_check(f, rng, points))
        return out
    if name == "splitting":
        return [splitting_check(f, rng) for f in _fields(d_list)]
    if name == "golden":
        return golden_specialization_checks(rng)
    if name == "residues":
        out = []
        for f in _fields(d_list):
            out.extend(residue_checks(f))
        return out
    if name == "trivial-zeros":
        out = []
        for f in _fields(d_list):
            out.extend(trivial_zero_checks(f))
        return out
    if name == "special-values":
        out = []
        for f in _fields(d_list):
            out.extend(special_value_checks(f))
        return out
    if name == "zeta-cancellation":
        return [zeta_cancellation_check(f, rng) for f in _fields(d_list)]
    if name == "special-functions":
        return special_function_checks(rng)
    raise KeyError(name)


SUITE_NAMES = (
    "sequences",
    "pell",
    "cross-method",
    "splitting",
    "golden",
    "residues",
    "trivial-zeros",
    "special-values",
    "zeta-cancellation",
    "special-functions",
)
