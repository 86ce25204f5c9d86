"""Cyclotomic polynomials with exact integer coefficients, and their
two-variable homogeneous values.

The homogeneous value of index n at (a, b) is b**phi(n) times the
one-variable polynomial evaluated at a/b, always an integer.  Three
independent evaluators are provided so they can check each other: direct
Horner evaluation of the coefficient vector, an inclusion-exclusion
product over divisors, and an index-reduction evaluator that rewrites the
index until it is squarefree.
"""

from __future__ import annotations

from dataclasses import dataclass

from .arith import divisors, gcd, mobius


@dataclass(frozen=True)
class Triple:
    """A validated input (a, b, n): coprime, ordered, positive."""

    a: int
    b: int
    n: int

    def __post_init__(self) -> None:
        if self.b < 1:
            raise ValueError("b must be at least 1")
        if self.a <= self.b:
            raise ValueError("a must exceed b")
        if gcd(self.a, self.b) != 1:
            raise ValueError("a and b must be coprime")
        if self.n < 1:
            raise ValueError("n must be at least 1")


@dataclass(frozen=True)
class IntPoly:
    """Dense integer polynomial; coeffs[k] multiplies x**k, leading last."""

    coeffs: tuple[int, ...]

    def __post_init__(self) -> None:
        if not self.coeffs:
            raise ValueError("empty coefficient vector")
        if len(self.coeffs) > 1 and self.coeffs[-1] == 0:
            raise ValueError("leading coefficient must be nonzero")

    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1

    def __call__(self, x: int) -> int:
        acc = 0
        for c in reversed(self.coeffs):
            acc = acc * x + c
        return acc


def _mul_binomial(poly: list[int], k: int) -> list[int]:
    # poly * (x**k - 1)
    out = [0] * (len(poly) + k)
    for i, c in enumerate(poly):
        out[i + k] += c
        out[i] -= c
    return out


def _div_binomial(poly: list[int], k: int) -> list[int]:
    # poly // (x**k - 1), exact; the low-order remainder terms are checked
    deg = len(poly) - 1
    q = [0] * (deg - k + 1)
    for i in range(deg - k, -1, -1):
        above = q[i + k] if i + k < len(q) else 0
        q[i] = poly[i + k] + above
    for j in range(min(k, len(poly))):
        expected = -q[j] if j < len(q) else 0
        if poly[j] != expected:
            raise AssertionError("binomial division left a remainder")
    return q


_coeff_cache: dict[int, IntPoly] = {}

# indices above this are computed on demand and not retained
COEFF_CACHE_LIMIT = 4096


def cyclotomic_coeffs(n: int) -> IntPoly:
    """Exact coefficient vector of the n-th cyclotomic polynomial.

    The index is first reduced to its radical (the polynomial at n is the
    one at rad(n) with x replaced by a power), then the squarefree case is
    assembled from the divisor products of x**d - 1 via inclusion-exclusion
    on the Moebius function.  All arithmetic is exact; every binomial
    division checks its remainder.
    """
    if n < 1:
        raise ValueError("index must be a positive integer")
    cached = _coeff_cache.get(n)
    if cached is not None:
        return cached
    if n == 1:
        poly = IntPoly((-1, 1))
    else:
        rad = 1
        for p, _ in _factor_small(n):
            rad *= p
        if rad != n:
            base = cyclotomic_coeffs(rad).coeffs
            stretch = n // rad
            out = [0] * ((len(base) - 1) * stretch + 1)
            for i, c in enumerate(base):
                out[i * stretch] = c
            poly = IntPoly(tuple(out))
        else:
            nums: list[int] = []
            dens: list[int] = []
            for d in divisors(n):
                mu = mobius(d)
                if mu == 1:
                    nums.append(n // d)
                elif mu == -1:
                    dens.append(n // d)
            work = [1]
            for k in nums:
                work = _mul_binomial(work, k)
            for k in dens:
                work = _div_binomial(work, k)
            poly = IntPoly(tuple(work))
    if n <= COEFF_CACHE_LIMIT:
        _coeff_cache[n] = poly
    return poly


def _factor_small(n: int) -> list[tuple[int, int]]:
    # plain trial factorization; indices here are small
    out = []
    d = 2
    while d * d <= n:
        if n % d == 0:
            e = 0
            while n % d == 0:
                e += 1
                n //= d
            out.append((d, e))
        d += 1
    if n > 1:
        out.append((n, 1))
    return out


def eval_homogeneous(n: int, a: int, b: int) -> int:
    """Homogeneous cyclotomic value at (a, b) by Horner evaluation."""
    Triple(a, b, n)
    if n == 1:
        return a - b
    if n == 2:
        return a + b
    cs = cyclotomic_coeffs(n).coeffs
    deg = len(cs) - 1
    acc = cs[-1]
    bpow = 1
    for k in range(deg - 1, -1, -1):
        bpow *= b
        acc = acc * a + cs[k] * bpow
    return acc


def eval_mobius(n: int, a: int, b: int) -> int:
    """Same value via the divisor product of (a**d - b**d) terms raised to
    the Moebius sign, kept as one numerator and one denominator with a
    single exact division at the end."""
    Triple(a, b, n)
    if n == 1:
        return a - b
    if n == 2:
        return a + b
    num = 1
    den = 1
    for d in divisors(n):
        mu = mobius(d)
        if mu == 0:
            continue
        e = n // d
        term = a**e - b**e
        if mu == 1:
            num *= term
        else:
            den *= term
    q, r = divmod(num, den)
    if r != 0:
        raise ArithmeticError("divisor product did not divide exactly")
    return q


def eval_recursive(n: int, a: int, b: int) -> int:
    """Same value by index reduction: replace (a, b) by prime-power powers
    until the index is squarefree, then split off one prime at a time via
    the quotient of values at (a**p, b**p) and (a, b)."""
    Triple(a, b, n)
    return _eval_reduced(n, a, b)


def _eval_reduced(n: int, a: int, b: int) -> int:
    if n == 1:
        return a - b
    if n == 2:
        return a + b
    rad = 1
    for p, _ in _factor_small(n):
        rad *= p
    if rad != n:
        stretch = n // rad
        return _eval_reduced(rad, a**stretch, b**stretch)
    p = _factor_small(n)[-1][0]
    m = n // p
    q, r = divmod(_eval_reduced(m, a**p, b**p), _eval_reduced(m, a, b))
    if r != 0:
        raise ArithmeticError("index reduction quotient was not exact")
    return q


def product_identity_check(n: int, a: int, b: int) -> bool:
    """True iff the divisor-indexed values multiply to a**n - b**n."""
    Triple(a, b, n)
    prod = 1
    for d in divisors(n):
        prod *= eval_homogeneous(d, a, b)
    return prod == a**n - b**n


def bounds_check(n: int, a: int, b: int) -> bool:
    """Strict two-sided bound: (a-b)**phi < value < (a+b)**phi, n >= 3."""
    Triple(a, b, n)
    if n < 3:
        raise ValueError("the strict bounds need n >= 3")
    value = eval_homogeneous(n, a, b)
    deg = cyclotomic_coeffs(n).degree
    return (a - b) ** deg < value < (a + b) ** deg
