"""Complex special functions used by every continuation formula.

gamma: Lanczos approximation (g = 607/128, 15 coefficients) on the right
half-plane, reflection formula on the left, everything available in log
form so that products of gammas with large imaginary parts never leave
double range.

zeta: Borwein's accelerated alternating series for Re s >= 1/2, switching
to Euler-Maclaurin near the zeros of (1 - 2^(1-s)) where the alternating
form loses digits, and the functional equation for Re s < 1/2.

Complex values are the builtin complex type throughout.  All functions are
pure; BinomialStream is caller-local state.
"""

from __future__ import annotations

import cmath
import math
from functools import lru_cache

from .errors import PoleAtNonpositiveIntegerError, PoleAtOneError

_LANCZOS_G = 607.0 / 128.0
_LANCZOS_COEFFS = (
    0.99999999999999709182,
    57.156235665862923517,
    -59.597960355475491248,
    14.136097974741747174,
    -0.49191381609762019978,
    0.33994649984811888699e-4,
    0.46523628927048575665e-4,
    -0.98374475304879564677e-4,
    0.15808870322491248884e-3,
    -0.21026444172410488319e-3,
    0.21743961811521264320e-3,
    -0.16431810653676389022e-3,
    0.84418223983852743293e-4,
    -0.26190838401581408670e-4,
    0.36899182659531622704e-5,
)
_HALF_LOG_TWO_PI = 0.5 * math.log(2.0 * math.pi)
_LOG_PI = math.log(math.pi)

# B_{2j} for j = 1..14, used by the Euler-Maclaurin zeta tail
_BERNOULLI_EVEN = (
    1.0 / 6,
    -1.0 / 30,
    1.0 / 42,
    -1.0 / 30,
    5.0 / 66,
    -691.0 / 2730,
    7.0 / 6,
    -3617.0 / 510,
    43867.0 / 798,
    -174611.0 / 330,
    854513.0 / 138,
    -236364091.0 / 2730,
    8553103.0 / 6,
    -23749461029.0 / 870,
)


def _log_sin_pi(z: complex) -> complex:
    """log(sin(pi z)), stable for large |Im z| (branch only matters mod 2 pi i)."""
    if z.imag > 7.0:
        # sin(pi z) = -e^{-i pi z} (1 - e^{2 i pi z}) / (2i)
        return (
            -1j * math.pi * z
            + cmath.log(1.0 - cmath.exp(2j * math.pi * z))
            + complex(-math.log(2.0), 0.5 * math.pi)
        )
    if z.imag < -7.0:
        return (
            1j * math.pi * z
            + cmath.log(1.0 - cmath.exp(-2j * math.pi * z))
            - complex(math.log(2.0), 0.5 * math.pi)
        )
    return cmath.log(cmath.sin(math.pi * z))


def _log_gamma_right(z: complex) -> complex:
    """Lanczos log-gamma, valid for Re z >= 0.5."""
    zz = z - 1.0
    acc = _LANCZOS_COEFFS[0]
    for k in range(1, 15):
        acc += _LANCZOS_COEFFS[k] / (zz + k)
    t = zz + _LANCZOS_G + 0.5
    return _HALF_LOG_TWO_PI + (zz + 0.5) * cmath.log(t) - t + cmath.log(acc)


def log_gamma(z: complex) -> complex:
    """log Gamma(z) up to a multiple of 2 pi i; intended to be exponentiated.

    Combinations like exp(log_gamma(a) + log_gamma(b) - log_gamma(c)) are
    then exact in phase, which is how the Poisson-side formulas consume it.
    """
    z = complex(z)
    if z.real >= 0.5:
        return _log_gamma_right(z)
    return _LOG_PI - _log_sin_pi(z) - _log_gamma_right(1.0 - z)


def _nonpositive_integer_near(z: complex, tol: float = 1e-12) -> int | None:
    n = round(z.real)
    if n <= 0 and abs(z.real - n) <= tol and abs(z.imag) <= tol:
        return n
    return None


def cgamma(z: complex) -> complex:
    """Gamma(z); raises PoleAtNonpositiveIntegerError at its poles."""
    z = complex(z)
    pole = _nonpositive_integer_near(z)
    if pole is not None:
        raise PoleAtNonpositiveIntegerError(pole)
    return cmath.exp(log_gamma(z))


def rgamma(z: complex) -> complex:
    """1/Gamma(z): entire, zero at nonpositive integers."""
    z = complex(z)
    if z.real >= 0.5:
        return cmath.exp(-_log_gamma_right(z))
    # reflection: 1/Gamma(z) = sin(pi z) Gamma(1-z) / pi
    return cmath.sin(math.pi * z) * cmath.exp(_log_gamma_right(1.0 - z) - _LOG_PI)


@lru_cache(maxsize=32)
def _borwein_d(n: int) -> tuple[tuple[int, ...], int]:
    """Exact integer coefficients d_k of Borwein's algorithm 2."""
    d = []
    acc = 0
    for j in range(n + 1):
        acc += (
            n
            * math.factorial(n + j - 1)
            * 4**j
            // (math.factorial(n - j) * math.factorial(2 * j))
        )
        d.append(acc)
    return tuple(d), d[-1]


def _zeta_borwein(s: complex, terms: int) -> complex:
    d, dn = _borwein_d(terms)
    acc = 0j
    sign = 1
    for k in range(terms):
        acc += sign * (d[k] - dn) * cmath.exp(-s * math.log(k + 1))
        sign = -sign
    eta_factor = 1.0 - cmath.exp((1.0 - s) * math.log(2.0))
    return -acc / (dn * eta_factor)


def _zeta_euler_maclaurin(s: complex) -> complex:
    n_cut = max(18, int(1.3 * abs(s.imag)) + 12)
    acc = 0j
    for k in range(1, n_cut):
        acc += cmath.exp(-s * math.log(k))
    log_n = math.log(n_cut)
    acc += cmath.exp((1.0 - s) * log_n) / (s - 1.0)
    acc += 0.5 * cmath.exp(-s * log_n)
    # tail: sum_j B_2j/(2j)! * s(s+1)...(s+2j-2) * n^(-s-2j+1)
    poch = s  # rising product s (s+1) ... (s + 2j - 2)
    fact = 2.0
    power = cmath.exp((-s - 1.0) * log_n)
    n_inv2 = 1.0 / (n_cut * n_cut)
    for j, b2j in enumerate(_BERNOULLI_EVEN, start=1):
        acc += (b2j / fact) * poch * power
        poch *= (s + (2 * j - 1)) * (s + 2 * j)
        fact *= (2 * j + 1) * (2 * j + 2)
        power *= n_inv2
    return acc


def czeta(s: complex) -> complex:
    """Riemann zeta for complex s != 1."""
    s = complex(s)
    if abs(s - 1.0) < 1e-12:
        raise PoleAtOneError()
    if s.real >= 0.5:
        return _zeta_right(s)
    # functional equation: zeta(s) = 2^s pi^(s-1) sin(pi s/2) Gamma(1-s) zeta(1-s)
    chi = (
        cmath.exp(s * math.log(2.0) + (s - 1.0) * _LOG_PI)
        * cmath.sin(0.5 * math.pi * s)
        * cmath.exp(log_gamma(1.0 - s))
    )
    return chi * _zeta_right(1.0 - s)


def _zeta_right(s: complex) -> complex:
    t = abs(s.imag)
    if t > 90.0:
        return _zeta_euler_maclaurin(s)
    eta_factor = 1.0 - cmath.exp((1.0 - s) * math.log(2.0))
    if abs(eta_factor) < 0.05:
        return _zeta_euler_maclaurin(s)
    terms = 24 + int(0.75 * t)
    terms = ((terms + 7) // 8) * 8  # quantize for coefficient-cache reuse
    return _zeta_borwein(s, terms)


class BinomialStream:
    """Iterator over generalized binomial coefficients C(-s, k), k = 0, 1, 2, ...

    Each step is one multiply/divide: C(-s, k+1) = C(-s, k) (-s - k)/(k + 1).
    """

    def __init__(self, s: complex):
        self.s = complex(s)
        self.k = -1
        self.current: complex = 1.0 + 0j

    def __iter__(self) -> "BinomialStream":
        return self

    def __next__(self) -> complex:
        if self.k >= 0:
            self.current = self.current * (-self.s - self.k) / (self.k + 1)
        self.k += 1
        return self.current


def binom_next(stream: BinomialStream) -> complex:
    """Advance the stream one step and return C(-s, k) for the new k."""
    return next(stream)
