"""Zsigmondy prime detection and the no-large-prime exception table.

A Zsigmondy prime of (a, b, n) divides a**n - b**n but no earlier
a**m - b**m; equivalently the multiplicative order of a * b^(-1) mod the
prime is exactly n.  A large Zsigmondy prime additionally has square
multiplicity in a**n - b**n or exceeds n + 1.

Everything funnels through the homogeneous cyclotomic value: its prime
divisors are the order-n primes plus at most one known interloper, which
is what makes the factorization-free existence decision possible.
"""

from __future__ import annotations

from dataclasses import dataclass
from enum import Enum

from .arith import Effort, Factorization, factorize, is_prime, largest_prime_divisor, vp
from .cyclotomic import Triple, cyclotomic_coeffs, eval_homogeneous
from .valuation import multiplicative_order, vp_cyclotomic


class DivisorCase(Enum):
    """The three ways a prime can divide a homogeneous cyclotomic value."""

    TWO_POWER = "two_power"
    ZSIGMONDY = "zsigmondy"
    LARGEST_PRIME = "largest_prime"


@dataclass(frozen=True)
class PrimeDivisorClass:
    case: DivisorCase
    p: int
    k: int
    beta: int

    def __post_init__(self) -> None:
        if self.case is DivisorCase.TWO_POWER and self.p != 2:
            raise ValueError("two-power case requires p = 2")
        if self.case is not DivisorCase.TWO_POWER and self.p < 3:
            raise ValueError("odd cases require p >= 3")


class ExceptionKind(Enum):
    """Why a triple has no large Zsigmondy prime (NONE when it does)."""

    NONE = "none"
    SUM_POWER_OF_TWO = "sum_power_of_two"
    SUM_THREE_TIMES_POWER_OF_TWO = "sum_three_times_power_of_two"
    TRIPLE_2_1_6 = "triple_2_1_6"
    SMALL_PAIR_N4 = "small_pair_n4"
    SMALL_PAIR_N6 = "small_pair_n6"
    PAIR_2_1_N10_12_18 = "pair_2_1_n10_12_18"


# kinds with no Zsigmondy prime at all, not merely no large one
_NO_ZSIG_KINDS = frozenset(
    {ExceptionKind.SUM_POWER_OF_TWO, ExceptionKind.TRIPLE_2_1_6}
)


@dataclass(frozen=True)
class ExceptionCase:
    kind: ExceptionKind
    s: int | None = None
    t: int | None = None
    pair: tuple[int, int] | None = None

    @property
    def is_exception(self) -> bool:
        return self.kind is not ExceptionKind.NONE

    def witness(self) -> dict:
        out: dict = {}
        if self.s is not None:
            out["s"] = self.s
        if self.t is not None:
            out["t"] = self.t
        if self.pair is not None:
            out["pair"] = list(self.pair)
        return out


@dataclass(frozen=True)
class FastDecision:
    """Existence decision with the arithmetic that produced it.

    residual is the cyclotomic value after removing the one possible
    non-Zsigmondy prime power; the decision is residual > threshold.
    """

    has_large: bool
    phi_value: int
    removed_prime: int | None
    removed_exponent: int
    residual: int
    threshold: int


@dataclass(frozen=True)
class ZsigReport:
    triple: Triple
    phi_value: int
    zsig_primes: tuple[tuple[int, int], ...]
    large_zsig_primes: tuple[int, ...]
    has_zsigmondy: bool
    has_large: bool
    exception: ExceptionCase
    factorization_complete: bool
    phi_factors: Factorization | None
    fast: FastDecision
    large_multiplier: int = 1

    @property
    def table_agrees(self) -> bool:
        """Whether the exception table predicted has_large correctly."""
        return (not self.exception.is_exception) == self.has_large


class IncompleteFactorizationError(Exception):
    """The factorization budget ran out mid-analysis.

    Carries whatever was established: the partial factorization, the
    order-n primes among the factors found, and (when raised by analyze)
    a partial report whose has_large comes from the exact
    factorization-free decision.
    """

    def __init__(
        self,
        message: str,
        factorization: Factorization,
        partial_primes: tuple[tuple[int, int], ...],
        report: "ZsigReport | None" = None,
    ) -> None:
        super().__init__(message)
        self.factorization = factorization
        self.partial_primes = partial_primes
        self.report = report


def _order_equals(q: int, a: int, b: int, n: int) -> bool:
    """Whether the order of a * b^(-1) mod q is exactly n, by powmod."""
    x = a * pow(b, q - 2, q) % q
    if pow(x, n, q) != 1:
        return False
    for r, _ in factorize(n).factors:
        if pow(x, n // r, q) == 1:
            return False
    return True


def _factor_phi(t: Triple, effort: Effort | None) -> tuple[int, Factorization]:
    """Factor the cyclotomic value, peeling the two candidate small primes
    first so the expensive splitting runs on the order-n part only."""
    a, b, n = t.a, t.b, t.n
    value = eval_homogeneous(n, a, b)
    found: dict[int, int] = {}
    rem = value
    small = {2}
    if n >= 2:
        small.add(largest_prime_divisor(n))
    for p in sorted(small):
        e = 0
        while rem % p == 0:
            e += 1
            rem //= p
        if e:
            found[p] = e
    inner = factorize(rem, effort) if rem > 1 else Factorization(1, ())
    for p, e in inner.factors:
        found[p] = found.get(p, 0) + e
    return value, Factorization(value, tuple(sorted(found.items())), inner.cofactor)


def zsigmondy_primes(
    t: Triple, effort: Effort | None = None
) -> list[tuple[int, int]]:
    """All primes whose order at (a, b) is exactly n, with the exponent
    they carry in a**n - b**n, located by factoring the cyclotomic value.

    For an order-n prime the exponent in a**n - b**n equals its exponent
    in the cyclotomic value, because no other divisor level can contain
    it; the report records that shared exponent.

    Raises IncompleteFactorizationError when the budget is exhausted
    before the value splits completely.
    """
    _, fac, zsig = _zsig_core(t, effort)
    if not fac.complete:
        raise IncompleteFactorizationError(
            f"budget exhausted with composite cofactor of {fac.cofactor.bit_length()} bits",
            fac,
            tuple(zsig),
        )
    return zsig


def _zsig_core(
    t: Triple, effort: Effort | None
) -> tuple[int, Factorization, list[tuple[int, int]]]:
    value, fac = _factor_phi(t, effort)
    zsig = [
        (q, e) for q, e in fac.factors if _order_equals(q, t.a, t.b, t.n)
    ]
    return value, fac, zsig


def large_zsigmondy_primes(
    t: Triple, multiplier: int = 1, effort: Effort | None = None
) -> list[int]:
    """Zsigmondy primes that are large: squared in a**n - b**n or beyond
    multiplier * n + 1.  multiplier = 1 is the standard notion."""
    if multiplier < 1:
        raise ValueError("multiplier must be a positive integer")
    return [
        q
        for q, e in zsigmondy_primes(t, effort)
        if e >= 2 or q > multiplier * t.n + 1
    ]


def _phi_mod(n: int, a: int, b: int, p: int) -> int:
    # Horner evaluation of the homogeneous value mod p; avoids big integers
    if n == 1:
        return (a - b) % p
    if n == 2:
        return (a + b) % p
    cs = cyclotomic_coeffs(n).coeffs
    acc = cs[-1] % p
    bpow = 1
    for k in range(len(cs) - 2, -1, -1):
        bpow = bpow * b % p
        acc = (acc * a + cs[k] * bpow) % p
    return acc


def classify_prime_divisor(p: int, t: Triple) -> PrimeDivisorClass:
    """Which of the three divisor cases p falls into for this triple.

    p must actually divide the cyclotomic value (checked modularly).  The
    largest-prime case additionally verifies its multiplicity-one claim
    through the closed-form valuation.
    """
    if not is_prime(p):
        raise ValueError("p must be prime")
    a, b, n = t.a, t.b, t.n
    if _phi_mod(n, a, b, p) != 0:
        raise ValueError("p does not divide the cyclotomic value")
    if p == 2:
        if n == 1:
            raise ValueError("p = 2 at n = 1 is outside the case analysis")
        if n & (n - 1) != 0:
            raise ValueError("2 divides the value only at power-of-two indices")
        return PrimeDivisorClass(DivisorCase.TWO_POWER, 2, 1, n.bit_length() - 1)
    if _order_equals(p, a, b, n):
        return PrimeDivisorClass(DivisorCase.ZSIGMONDY, p, n, 0)
    if n >= 2 and p == largest_prime_divisor(n):
        k = multiplicative_order(p, a, b)
        beta = vp(n, p)
        if beta >= 1 and n == p**beta * k:
            if vp_cyclotomic(p, a, b, n) != 1:
                raise AssertionError("largest-prime divisor must have multiplicity 1")
            return PrimeDivisorClass(DivisorCase.LARGEST_PRIME, p, k, beta)
    raise ValueError("prime divisor fits no case; this contradicts the theory")


def has_large_zsigmondy_fast(t: Triple) -> FastDecision:
    """Factorization-free existence decision for a large Zsigmondy prime.

    Remove the one possible non-Zsigmondy prime from the cyclotomic value
    C: at n = 2 the full power of two in a + b; at power-of-two n a single
    factor 2 (when present); otherwise a single factor of the largest
    prime dividing n (when present).  What remains is a product of primes
    of order exactly n, each congruent to 1 mod n and hence at least
    n + 1.  So: residual 1 means no Zsigmondy prime, residual n + 1 means
    exactly one and it is not large, and residual > n + 1 forces either a
    prime above n + 1 or a repeated prime, either of which is large.
    """
    a, b, n = t.a, t.b, t.n
    if n < 2:
        raise ValueError("the decision needs n >= 2")
    value = eval_homogeneous(n, a, b)
    removed_prime: int | None = None
    removed_exp = 0
    residual = value
    if n == 2:
        while residual % 2 == 0:
            residual //= 2
            removed_exp += 1
        if removed_exp:
            removed_prime = 2
    elif n & (n - 1) == 0:
        if residual % 2 == 0:
            residual //= 2
            removed_prime, removed_exp = 2, 1
    else:
        p = largest_prime_divisor(n)
        if residual % p == 0:
            residual //= p
            removed_prime, removed_exp = p, 1
    return FastDecision(
        has_large=residual > n + 1,
        phi_value=value,
        removed_prime=removed_prime,
        removed_exponent=removed_exp,
        residual=residual,
        threshold=n + 1,
    )


def sufficiency_check(t: Triple) -> bool:
    """Strict inequality (n+1) * P(n) < C that forces a large Zsigmondy
    prime to exist.  One-directional: failure decides nothing."""
    if t.n < 3:
        raise ValueError("the sufficiency bound needs n >= 3")
    value = eval_homogeneous(t.n, t.a, t.b)
    return (t.n + 1) * largest_prime_divisor(t.n) < value


def classify_exception(t: Triple) -> ExceptionCase:
    """Pure table lookup: which known no-large-prime case the triple is.

    Entirely syntactic (the only arithmetic is the odd part of a + b at
    n = 2), so comparing it against computed existence is a genuine
    cross-check of the table, not a circular one.
    """
    a, b, n = t.a, t.b, t.n
    if n < 2:
        raise ValueError("the exception table starts at n = 2")
    if n == 2:
        s = vp(a + b, 2)
        odd = (a + b) >> s
        if odd == 1:
            return ExceptionCase(ExceptionKind.SUM_POWER_OF_TWO, s=s, t=0)
        if odd == 3:
            return ExceptionCase(
                ExceptionKind.SUM_THREE_TIMES_POWER_OF_TWO, s=s, t=1
            )
        return ExceptionCase(ExceptionKind.NONE)
    if n == 4 and (a, b) in {(2, 1), (3, 1)}:
        return ExceptionCase(ExceptionKind.SMALL_PAIR_N4, pair=(a, b))
    if n == 6:
        if (a, b) == (2, 1):
            return ExceptionCase(ExceptionKind.TRIPLE_2_1_6, pair=(2, 1))
        if (a, b) in {(3, 1), (3, 2), (5, 4)}:
            return ExceptionCase(ExceptionKind.SMALL_PAIR_N6, pair=(a, b))
    if n in {10, 12, 18} and (a, b) == (2, 1):
        return ExceptionCase(ExceptionKind.PAIR_2_1_N10_12_18, pair=(2, 1))
    return ExceptionCase(ExceptionKind.NONE)


def analyze(
    t: Triple, effort: Effort | None = None, multiplier: int = 1
) -> ZsigReport:
    """Full per-triple report.

    The existence answer is computed three ways: from the factored prime
    list, from the factorization-free decision, and (as a prediction) from
    the exception table.  The first two must agree and that is asserted;
    the table's prediction is recorded in the report, where a disagreement
    is data, not an error: the scanner collects such triples as
    mismatches.

    On budget exhaustion raises IncompleteFactorizationError whose report
    field carries everything except the complete prime list, with
    has_large taken from the factorization-free decision (which is exact).
    """
    if t.n < 2:
        raise ValueError("analysis needs n >= 2")
    if multiplier < 1:
        raise ValueError("multiplier must be a positive integer")
    fast = has_large_zsigmondy_fast(t)
    exception = classify_exception(t)
    value, fac, zsig = _zsig_core(t, effort)
    large = tuple(
        q for q, e in zsig if e >= 2 or q > multiplier * t.n + 1
    )
    if not fac.complete:
        report = ZsigReport(
            triple=t,
            phi_value=value,
            zsig_primes=tuple(zsig),
            large_zsig_primes=large,
            has_zsigmondy=bool(zsig) or fast.residual > 1,
            has_large=fast.has_large,
            exception=exception,
            factorization_complete=False,
            phi_factors=fac,
            fast=fast,
            large_multiplier=multiplier,
        )
        raise IncompleteFactorizationError(
            f"budget exhausted splitting the value for {t}",
            fac,
            tuple(zsig),
            report,
        )
    has_large = bool(large)
    if multiplier == 1 and has_large != fast.has_large:
        raise AssertionError(
            f"factored and factorization-free decisions disagree on {t}"
        )
    for q, e in zsig:
        if value % q != 0 or q % t.n != 1:
            raise AssertionError(f"order-{t.n} prime {q} violates its invariants")
        if multiplier == 1 and q not in large and (q != t.n + 1 or e != 1):
            raise AssertionError(
                f"non-large Zsigmondy prime {q} must equal n + 1 with exponent 1"
            )
    return ZsigReport(
        triple=t,
        phi_value=value,
        zsig_primes=tuple(zsig),
        large_zsig_primes=large,
        has_zsigmondy=bool(zsig),
        has_large=has_large,
        exception=exception,
        factorization_complete=True,
        phi_factors=fac,
        fast=fast,
        large_multiplier=multiplier,
    )
