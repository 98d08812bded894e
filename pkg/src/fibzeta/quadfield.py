"""Exact arithmetic for real quadratic fields Q(sqrt(D)).

Provides the fundamental unit (computed from the periodic continued
fraction of sqrt(D), or of (1+sqrt(D))/2 when D = 1 mod 4), the
integer-recurrence Fibonacci/Lucas analogues built from traces of unit
powers, and Pell-type membership tests.

Everything here is exact big-integer or high-precision real arithmetic;
fields are immutable and safe to share between threads or processes.

The sign of the unit norm decides which evaluations exist downstream: the
odd/even index split needs N(eps) = -1 (possible only for D = 1, 2 mod 4),
while norm +1 fields route through a single full-sequence series.  No
class-group machinery is provided or needed.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterator

import mpmath as mp

from .config import Settings, default_settings
from .errors import DomainError, NormPlusOneError, NotSquarefreeError

NOT_MEMBER = "not_member"
MEMBER = "member"
MEMBER_EVEN_INDEX = "member_even_index"
MEMBER_ODD_INDEX = "member_odd_index"

# bound below which the continued-fraction unit is re-derived by brute search
_VALIDATION_SCAN_CAP = 4096


def is_square(n: int) -> bool:
    """Exact perfect-square test for arbitrary-size integers."""
    if n < 0:
        return False
    r = math.isqrt(n)
    return r * r == n


def r1(n: int) -> int:
    """Number of integer solutions of x^2 = n: 2 for a positive square, 1 for 0, else 0."""
    if n < 0:
        return 0
    if n == 0:
        return 1
    return 2 if is_square(n) else 0


def squarefree_violation(d: int) -> int | None:
    """Smallest prime p with p^2 | d, or None if d is squarefree."""
    p = 2
    while p * p <= d:
        if d % (p * p) == 0:
            return p
        p += 1
    return None


@dataclass(frozen=True)
class UnitElement:
    """An element (a + b*sqrt(q))/2 of the ring of integers, in trace coordinates."""

    a: int
    b: int
    q: int

    def __post_init__(self):
        if (self.a * self.a - self.q * self.b * self.b) % 4 != 0:
            raise DomainError(
                f"({self.a} + {self.b} sqrt({self.q}))/2 is not an algebraic integer"
            )

    @property
    def trace(self) -> int:
        return self.a

    @property
    def norm(self) -> int:
        return (self.a * self.a - self.q * self.b * self.b) // 4

    def conjugate(self) -> "UnitElement":
        return UnitElement(self.a, -self.b, self.q)

    def __mul__(self, other: "UnitElement") -> "UnitElement":
        if self.q != other.q:
            raise ValueError("mixed-field multiplication")
        a = self.a * other.a + self.q * self.b * other.b
        b = self.a * other.b + self.b * other.a
        assert a % 2 == 0 and b % 2 == 0
        return UnitElement(a // 2, b // 2, self.q)

    def real_value(self, dps: int = 30) -> mp.mpf:
        """Real embedding (positive square root) at dps decimal digits."""
        with mp.workdps(dps):
            return (self.a + self.b * mp.sqrt(self.q)) / 2

    def __str__(self) -> str:
        if self.a % 2 == 0 and self.b % 2 == 0:
            return f"{self.a // 2} + {self.b // 2}*sqrt({self.q})"
        return f"({self.a} + {self.b}*sqrt({self.q}))/2"


@dataclass(frozen=True)
class SequenceTerm:
    index: int
    fib: int
    lucas: int


@dataclass(frozen=True)
class QuadraticField:
    """Q(sqrt(D)) with its fundamental unit and derived constants.

    q is D when D = 1 mod 4 and 4D otherwise; ell is the matching shift
    (4 resp. 1) used by the shifted-convolution series.  Immutable.
    """

    D: int
    q: int
    ell: int
    eps: UnitElement
    norm_eps: int
    log_eps: mp.mpf
    precision_dps: int

    @property
    def log_eps_float(self) -> float:
        return float(self.log_eps)

    @property
    def is_norm_minus_one(self) -> bool:
        return self.norm_eps == -1

    @property
    def trace_eps(self) -> int:
        return self.eps.trace

    def require_norm_minus_one(self) -> None:
        if self.norm_eps != -1:
            raise NormPlusOneError(
                f"D={self.D}: fundamental unit {self.eps} has norm +1; "
                "this operation needs norm -1"
            )

    def __str__(self) -> str:
        return f"Q(sqrt({self.D})), eps = {self.eps}, N(eps) = {self.norm_eps:+d}"


def _continued_fraction_unit(d: int) -> tuple[int, int, int]:
    """Fundamental unit of O_D from one period of the continued fraction.

    Expands sqrt(d) (or (1+sqrt(d))/2 for d = 1 mod 4) with exact integer
    state (P, Q) for the complete quotients (P + sqrt(d))/Q.  When a state
    repeats, the product of the partial-quotient matrices over the period
    fixes that quotient, and its large eigenvalue C*omega_r + A22 is the
    fundamental automorphism.  Returns (a, b, period_length) with the unit
    written as (a + b*sqrt(q))/2.
    """
    sq = math.isqrt(d)
    if d % 4 == 1:
        p_i, q_i = 1, 2
    else:
        p_i, q_i = 0, 1
    seen: dict[tuple[int, int], int] = {}
    states: list[tuple[int, int]] = []
    quotients: list[int] = []
    i = 0
    while True:
        state = (p_i, q_i)
        if state in seen:
            r = seen[state]
            break
        seen[state] = i
        states.append(state)
        a_i = (p_i + sq) // q_i
        quotients.append(a_i)
        p_next = a_i * q_i - p_i
        q_next = (d - p_next * p_next) // q_i
        p_i, q_i = p_next, q_next
        i += 1
        if i > 100 * d + 1000:  # period of sqrt(d) is O(sqrt(d) log d)
            raise DomainError(f"continued fraction of sqrt({d}) failed to cycle")
    # matrix product over the repeating window [r, i)
    m11, m12, m21, m22 = 1, 0, 0, 1
    for a_j in quotients[r:i]:
        m11, m12, m21, m22 = m11 * a_j + m12, m11, m21 * a_j + m22, m21
    p_r, q_r = states[r]
    u = Fraction(m21 * p_r, q_r) + m22
    v = Fraction(m21, q_r)
    if d % 4 == 1:
        a, b = 2 * u, 2 * v
    else:
        a, b = 2 * u, v
    if a.denominator != 1 or b.denominator != 1:
        raise DomainError(f"period matrix for D={d} gave a non-integral unit")
    return int(a), int(b), i - r


def _unit_by_search(q: int, b_cap: int) -> tuple[int, int] | None:
    """Smallest unit > 1 of the order, by scanning b in (a + b*sqrt(q))/2."""
    for b in range(1, b_cap + 1):
        qb2 = q * b * b
        hits = []
        for shift in (-4, 4):
            t = qb2 + shift
            if t >= 0 and is_square(t):
                hits.append(math.isqrt(t))
        if hits:
            return min(hits), b
    return None


def make_field(d: int, settings: Settings | None = None) -> QuadraticField:
    """Construct and validate the field Q(sqrt(d)) for squarefree d >= 2."""
    settings = settings or default_settings()
    if not isinstance(d, int) or d < 2:
        raise DomainError(f"D must be an integer >= 2, got {d!r}")
    p = squarefree_violation(d)
    if p is not None:
        raise NotSquarefreeError(d, p)
    if d % 4 == 1:
        q, ell = d, 4
    else:
        q, ell = 4 * d, 1
    a, b, period = _continued_fraction_unit(d)
    eps = UnitElement(a, b, q)
    if eps.norm not in (-1, 1):
        raise DomainError(f"continued fraction of D={d} produced a non-unit {eps}")
    if eps.norm != (-1) ** (period % 2):
        raise DomainError(f"norm/period mismatch for D={d}")
    if b <= _VALIDATION_SCAN_CAP:
        found = _unit_by_search(q, b)
        if found != (a, b):
            raise DomainError(
                f"fundamental-unit check failed for D={d}: "
                f"continued fraction gave {eps} but search found {found}"
            )
    dps = settings.precision_dps
    with mp.workdps(dps + 10):
        log_eps = mp.log((a + b * mp.sqrt(q)) / 2)
    return QuadraticField(
        D=d, q=q, ell=ell, eps=eps, norm_eps=eps.norm, log_eps=log_eps, precision_dps=dps
    )


def iter_sequence(field: QuadraticField) -> Iterator[SequenceTerm]:
    """Yield SequenceTerm(n, F(n), L(n)) for n = 0, 1, 2, ... (exact integers).

    Both sequences satisfy x(n+2) = t*x(n+1) - N*x(n) with t the trace and
    N the norm of the fundamental unit.  F(1) = Tr(eps/sqrt(q)) is the
    sqrt(q)-coefficient b of the unit (1 for every small field; e.g. 3 for
    D = 7), L starts 2, t.
    """
    t, norm = field.trace_eps, field.norm_eps
    f0, f1 = 0, field.eps.b
    l0, l1 = 2, t
    n = 0
    while True:
        yield SequenceTerm(n, f0, l0)
        f0, f1 = f1, t * f1 - norm * f0
        l0, l1 = l1, t * l1 - norm * l0
        n += 1


def sequence_terms(field: QuadraticField, count: int) -> list[SequenceTerm]:
    """First `count` terms (indices 0 .. count-1)."""
    out = []
    for term in iter_sequence(field):
        if term.index >= count:
            break
        out.append(term)
    return out


def fib(field: QuadraticField, n: int) -> int:
    """F(n) = Tr(eps^n / sqrt(q)), by the exact integer recurrence."""
    if n < 0:
        raise DomainError("index must be nonnegative")
    t, norm = field.trace_eps, field.norm_eps
    a, b = 0, field.eps.b
    for _ in range(n):
        a, b = b, t * b - norm * a
    return a


def lucas(field: QuadraticField, n: int) -> int:
    """L(n) = Tr(eps^n), by the exact integer recurrence."""
    if n < 0:
        raise DomainError("index must be nonnegative")
    t, norm = field.trace_eps, field.norm_eps
    a, b = 2, t
    for _ in range(n):
        a, b = b, t * b - norm * a
    return a


def fib_upto(field: QuadraticField, limit: int) -> list[SequenceTerm]:
    """Terms with 1 <= F(n) <= limit, ascending index (used for enumeration)."""
    out = []
    for term in iter_sequence(field):
        if term.fib > limit:
            break
        if term.index >= 1:
            out.append(term)
    return out


@dataclass(frozen=True)
class MembershipResult:
    verdict: str
    witness: int | None

    def __bool__(self) -> bool:
        return self.verdict != NOT_MEMBER


def is_fib(field: QuadraticField, n: int, split: bool | None = None) -> MembershipResult:
    """Pell-type membership test: is n a term of the F sequence?

    Decides solvability of X^2 = q n^2 +- 4 by exact integer square root
    (reduced to Y^2 = D n^2 +- 1 when q = 4D, witness X = 2Y).  With a
    norm -1 unit the solvable sign determines the index parity: -4 for
    odd index, +4 for even.  When both signs solve (only n=1 for D=5),
    the odd-index verdict is reported.

    split=True demands the parity verdict and raises NormPlusOneError on
    norm +1 fields; split=None picks it from the field norm.
    """
    if n < 1:
        raise DomainError(f"membership test needs a positive integer, got {n}")
    if split is None:
        split = field.is_norm_minus_one
    if split and not field.is_norm_minus_one:
        field.require_norm_minus_one()

    if field.q % 4 == 0:
        base, unit_shift, scale = field.D * n * n, 1, 2
    else:
        base, unit_shift, scale = field.q * n * n, 4, 1

    witness_minus = witness_plus = None
    t = base - unit_shift
    if t >= 0 and is_square(t):
        witness_minus = scale * math.isqrt(t)
    t = base + unit_shift
    if is_square(t):
        witness_plus = scale * math.isqrt(t)

    if not split:
        if witness_plus is not None:
            return MembershipResult(MEMBER, witness_plus)
        if witness_minus is not None:
            return MembershipResult(MEMBER, witness_minus)
        return MembershipResult(NOT_MEMBER, None)
    if witness_minus is not None:
        return MembershipResult(MEMBER_ODD_INDEX, witness_minus)
    if witness_plus is not None:
        return MembershipResult(MEMBER_EVEN_INDEX, witness_plus)
    return MembershipResult(NOT_MEMBER, None)
