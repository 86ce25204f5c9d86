"""Exact arithmetic for Zsigmondy and large Zsigmondy primes."""

from .arith import (
    Effort,
    Factorization,
    divisors,
    euler_phi,
    factorize,
    gcd,
    is_prime,
    largest_prime_divisor,
    mobius,
    totient_sieve,
    vp,
)
from .cyclotomic import (
    IntPoly,
    Triple,
    bounds_check,
    cyclotomic_coeffs,
    eval_homogeneous,
    eval_mobius,
    eval_recursive,
    product_identity_check,
)
from .valuation import (
    LtePreconditionError,
    OrderContext,
    lte_valuation,
    multiplicative_order,
    order_context,
    vp_cyclotomic,
)
from .zsigmondy import (
    DivisorCase,
    ExceptionCase,
    ExceptionKind,
    FastDecision,
    IncompleteFactorizationError,
    PrimeDivisorClass,
    ZsigReport,
    analyze,
    classify_exception,
    classify_prime_divisor,
    has_large_zsigmondy_fast,
    large_zsigmondy_primes,
    sufficiency_check,
    zsigmondy_primes,
)

__version__ = "0.1.0"

__all__ = [
    "Effort",
    "Factorization",
    "divisors",
    "euler_phi",
    "factorize",
    "gcd",
    "is_prime",
    "largest_prime_divisor",
    "mobius",
    "totient_sieve",
    "vp",
    "IntPoly",
    "Triple",
    "bounds_check",
    "cyclotomic_coeffs",
    "eval_homogeneous",
    "eval_mobius",
    "eval_recursive",
    "product_identity_check",
    "LtePreconditionError",
    "OrderContext",
    "lte_valuation",
    "multiplicative_order",
    "order_context",
    "vp_cyclotomic",
    "DivisorCase",
    "ExceptionCase",
    "ExceptionKind",
    "FastDecision",
    "IncompleteFactorizationError",
    "PrimeDivisorClass",
    "ZsigReport",
    "analyze",
    "classify_exception",
    "classify_prime_divisor",
    "has_large_zsigmondy_fast",
    "large_zsigmondy_primes",
    "sufficiency_check",
    "zsigmondy_primes",
    "__version__",
]
