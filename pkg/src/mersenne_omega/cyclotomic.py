"""Multiplicative structure of 2^n - 1: divisor enumeration, cyclotomic
parts, primitive prime divisors, and quotient residues.

The key identity is 2^n - 1 = prod over d | n of Phi_d(2), which lets the
factor engine attack each part with congruence conditions specific to d.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from .arith import mersenne, multiplicative_order_of_two
from .factoring import Factorization, factor_natural

__all__ = [
    "CyclotomicPart",
    "PrimitiveReport",
    "divisor_list",
    "cyclotomic_value",
    "cyclotomic_split",
    "primitive_prime_divisors",
    "mersenne_quotient_residue",
]


@dataclass(frozen=True)
class CyclotomicPart:
    """One factor Phi_d(2) of 2^n - 1, for a divisor d of n.

    intrinsic is gcd(Phi_d(2), d): the only prime that can divide the
    part without being a primitive divisor of 2^d - 1.  It is 1 or the
    largest prime factor of d.
    """

    d: int
    value: int
    intrinsic: int


@dataclass(frozen=True)
class PrimitiveReport:
    """Primitive prime divisors of 2^n - 1 (order of 2 equals n) and
    their product with multiplicity."""

    n: int
    primitive_primes: tuple[int, ...]
    primitive_part: int


def divisor_list(n: int) -> list[int]:
    """All divisors of n, ascending."""
    if n < 1:
        raise ValueError("n must be >= 1")
    divisors = [1]
    for p, e in factor_natural(n).factors:
        divisors = [d * p**i for d in divisors for i in range(e + 1)]
    return sorted(divisors)


def _mobius(m: int) -> int:
    f = factor_natural(m)
    if any(e > 1 for _, e in f.factors):
        return 0
    return -1 if f.omega % 2 else 1


def cyclotomic_value(d: int) -> int:
    """Phi_d(2), computed exactly as the Moebius product of 2^e - 1 over
    e | d (multiply the mu = +1 terms, divide by the mu = -1 terms)."""
    if d < 1:
        raise ValueError("d must be >= 1")
    numerator = 1
    denominator = 1
    for e in divisor_list(d):
        mu = _mobius(d // e)
        if mu == 1:
            numerator *= (1 << e) - 1
        elif mu == -1:
            denominator *= (1 << e) - 1
    return numerator // denominator


def cyclotomic_split(n: int) -> list[CyclotomicPart]:
    """Parts Phi_d(2) for every divisor d of n with d >= 2, ascending in d.

    Together with Phi_1(2) = 1 their product is 2^n - 1.
    """
    if n < 1:
        raise ValueError("n must be >= 1")
    parts = []
    for d in divisor_list(n):
        if d < 2:
            continue
        value = cyclotomic_value(d)
        parts.append(CyclotomicPart(d, value, math.gcd(value, d)))
    return parts


def primitive_prime_divisors(n: int, f: Factorization) -> PrimitiveReport:
    """Filter the primes of a complete factorization of 2^n - 1 down to
    those whose multiplicative order of 2 is exactly n.

    A partial factorization is rejected: a missing factor would make
    primitivity undecidable.
    """
    if n < 1:
        raise ValueError("n must be >= 1")
    if not f.complete:
        raise ValueError("complete factorization required")
    if f.target != mersenne(n):
        raise ValueError(f"factorization target is not 2^{n} - 1")
    primes = []
    part = 1
    for q, e in f.factors:
        if multiplicative_order_of_two(q, divisor_hint=n) == n:
            primes.append(q)
            part *= q**e
    return PrimitiveReport(n, tuple(primes), part)


def mersenne_quotient_residue(p: int, m: int) -> int:
    """Residue of (2^(p*m) - 1)/(2^p - 1) modulo 2^p - 1.

    The quotient is the m-term sum of 2^(k*p), each term congruent to 1,
    so the residue is simply m mod (2^p - 1).  It vanishes exactly when
    2^p - 1 divides m.
    """
    if p < 2:
        raise ValueError("p must be >= 2")
    if m < 1:
        raise ValueError("m must be >= 1")
    return m % mersenne(p)
