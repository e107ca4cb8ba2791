"""Budgeted integer factorization: trial division, Brent-cycle rho, and a
pipeline for 2^n - 1 that pre-splits along the divisors of n.

All routines are deterministic: rho seeds follow the fixed schedule
c = 1, 2, 3, ... and there is no wall-clock dependence unless a caller
opts into one via Budget.wall_hint_ms.
"""

from __future__ import annotations

import functools
import math
from collections import Counter
from dataclasses import dataclass
from typing import TYPE_CHECKING

from .arith import Verdict, is_perfect_power, is_probable_prime, mersenne

if TYPE_CHECKING:
    from .storage import FactorCache

__all__ = [
    "Budget",
    "DEFAULT_BUDGET",
    "Factorization",
    "FactorStats",
    "factor_natural",
    "trial_divide_congruence",
    "pollard_rho_brent",
    "factor_mersenne",
]


@dataclass(frozen=True)
class Budget:
    """Work limits for one top-level factorization call.

    rho_iterations_max bounds the total number of iteration-function
    evaluations across all rho invocations triggered by the call.
    """

    rho_iterations_max: int = 1 << 26
    trial_division_bound: int = 2_000_000
    wall_hint_ms: int | None = None

    def __post_init__(self) -> None:
        if self.rho_iterations_max <= 0:
            raise ValueError("rho_iterations_max must be positive")
        if self.trial_division_bound <= 0:
            raise ValueError("trial_division_bound must be positive")
        if self.wall_hint_ms is not None and self.wall_hint_ms <= 0:
            raise ValueError("wall_hint_ms must be positive")


DEFAULT_BUDGET = Budget()


@dataclass(frozen=True)
class Factorization:
    """Prime factorization of target, possibly partial.

    factors holds (prime, exponent) pairs with strictly ascending primes;
    the product of prime^exponent times cofactor equals target.  The
    factorization is complete exactly when cofactor == 1; a partial
    result carries its unfactored composite part in cofactor.
    """

    target: int
    factors: tuple[tuple[int, int], ...]
    cofactor: int = 1

    def __post_init__(self) -> None:
        if self.target < 1 or self.cofactor < 1:
            raise ValueError("target and cofactor must be >= 1")
        previous = 1
        for prime, exponent in self.factors:
            if prime <= previous:
                raise ValueError("primes must be strictly ascending")
            if exponent < 1:
                raise ValueError("exponents must be positive")
            previous = prime

    @property
    def complete(self) -> bool:
        return self.cofactor == 1

    @property
    def status(self) -> str:
        return "complete" if self.complete else "partial"

    @property
    def omega(self) -> int:
        """Number of distinct known prime factors."""
        return len(self.factors)

    @property
    def bigomega(self) -> int:
        """Number of known prime factors counted with multiplicity."""
        return sum(e for _, e in self.factors)

    def primes(self) -> tuple[int, ...]:
        return tuple(p for p, _ in self.factors)

    def exponent_of(self, prime: int) -> int:
        for p, e in self.factors:
            if p == prime:
                return e
        return 0

    def product(self) -> int:
        result = self.cofactor
        for p, e in self.factors:
            result *= p**e
        return result

    def reconstructs(self) -> bool:
        return self.product() == self.target


@dataclass
class FactorStats:
    """Observable work counters, accumulated across calls when reused."""

    rho_iterations: int = 0
    rho_calls: int = 0
    trial_candidates: int = 0
    cache_hits: int = 0


class _RhoTracker:
    """Shared iteration allowance for every rho call under one budget."""

    __slots__ = ("remaining", "stats")

    def __init__(self, limit: int, stats: FactorStats | None):
        self.remaining = limit
        self.stats = stats

    def spend(self, steps: int) -> None:
        self.remaining -= steps
        if self.stats is not None:
            self.stats.rho_iterations += steps


@functools.lru_cache(maxsize=4)
def _sieve_primes(bound: int) -> tuple[int, ...]:
    sieve = bytearray([1]) * (bound + 1)
    sieve[0:2] = b"\x00\x00"
    for i in range(2, math.isqrt(bound) + 1):
        if sieve[i]:
            sieve[i * i :: i] = bytearray(len(range(i * i, bound + 1, i)))
    return tuple(i for i in range(2, bound + 1) if sieve[i])


def _prime_like(x: int) -> bool:
    return is_probable_prime(x) is not Verdict.COMPOSITE


def _rho_brent(x: int, c: int, tracker: _RhoTracker) -> int | None:
    """One Brent-cycle rho attempt on odd composite x with y <- y^2 + c.

    Returns a nontrivial divisor, or None when the budget runs out or the
    cycle closes without exposing a factor.  gcds are batched every 128
    steps.  Fully deterministic in (x, c, remaining budget).
    """
    if tracker.stats is not None:
        tracker.stats.rho_calls += 1
    batch = 128
    y, r, q = 2, 1, 1
    g, xs, ys = 1, 0, 0
    while g == 1:
        xs = y
        if tracker.remaining < r:
            return None
        tracker.spend(r)
        for _ in range(r):
            y = (y * y + c) % x
        k = 0
        while k < r and g == 1:
            ys = y
            steps = min(batch, r - k)
            if tracker.remaining < steps:
                return None
            tracker.spend(steps)
            for _ in range(steps):
                y = (y * y + c) % x
                q = q * (xs - y) % x
            g = math.gcd(q, x)
            k += steps
        r <<= 1
    if g == x:
        # The batch overshot a factor; replay it one gcd at a time.
        g = 1
        for _ in range(batch + 1):
            ys = (ys * ys + c) % x
            g = math.gcd((xs - ys) % x, x)
            if g > 1:
                break
    if 1 < g < x:
        return g
    return None


def pollard_rho_brent(
    x: int, seed: int, budget: Budget | None = None, stats: FactorStats | None = None
) -> int | None:
    """Find a nontrivial divisor of an odd composite x, or None.

    The iteration function is y <- y^2 + seed (mod x) starting from
    y = 2, with Brent cycle detection.  Callers guarantee x is composite,
    odd, and not a perfect power; primes are rejected outright.
    """
    if x % 2 == 0:
        raise ValueError("x must be odd")
    if _prime_like(x):
        raise ValueError("x must be composite")
    budget = budget or DEFAULT_BUDGET
    return _rho_brent(x, seed, _RhoTracker(budget.rho_iterations_max, stats))


def _factor_with_rho(value: int, tracker: _RhoTracker, counts: Counter) -> int:
    """Fully factor value (known composite or 1) into counts.

    Returns the product of whatever composite pieces remain when the rho
    budget is exhausted (1 when none).
    """
    leftover = 1
    stack = [(value, 1)]
    while stack:
        v, multiplicity = stack.pop()
        if v == 1:
            continue
        if _prime_like(v):
            counts[v] += multiplicity
            continue
        power = is_perfect_power(v)
        if power is not None:
            b, k = power
            stack.append((b, multiplicity * k))
            continue
        divisor = None
        seed = 1
        while divisor is None and tracker.remaining > 0:
            divisor = _rho_brent(v, seed, tracker)
            seed += 1
        if divisor is None:
            leftover *= v**multiplicity
            continue
        stack.append((divisor, multiplicity))
        stack.append((v // divisor, multiplicity))
    return leftover


def factor_natural(
    x: int, budget: Budget | None = None, stats: FactorStats | None = None
) -> Factorization:
    """Factor an ordinary natural: trial division up to the budget bound,
    then Brent rho with the deterministic seed schedule on what remains.
    """
    if x < 1:
        raise ValueError("x must be >= 1")
    budget = budget or DEFAULT_BUDGET
    if x == 1:
        return Factorization(1, ())
    counts: Counter = Counter()
    remaining = x
    proven_done = False
    if _prime_like(remaining):
        counts[remaining] = 1
        remaining = 1
        proven_done = True
    else:
        for p in _sieve_primes(budget.trial_division_bound):
            if p * p > remaining:
                if remaining > 1:
                    counts[remaining] += 1
                    remaining = 1
                proven_done = True
                break
            if remaining % p == 0:
                e = 0
                while remaining % p == 0:
                    remaining //= p
                    e += 1
                counts[p] += e
                if remaining == 1:
                    proven_done = True
                    break
                if _prime_like(remaining):
                    counts[remaining] += 1
                    remaining = 1
                    proven_done = True
                    break
    cofactor = 1
    if not proven_done and remaining > 1:
        tracker = _RhoTracker(budget.rho_iterations_max, stats)
        cofactor = _factor_with_rho(remaining, tracker, counts)
    return Factorization(x, tuple(sorted(counts.items())), cofactor)


def trial_divide_congruence(
    target: int, d: int, limit: int, stats: FactorStats | None = None
) -> list[int]:
    """List primes q = 2*d*l + 1 <= limit dividing target, ascending.

    Candidates are additionally filtered to q = +-1 (mod 8) when d is an
    odd prime, since 2 must then be a quadratic residue modulo any such
    divisor.  Found primes are divided out as the scan proceeds so that
    composite candidates cannot slip through.
    """
    if d < 2:
        raise ValueError("d must be >= 2")
    if target % 2 == 0:
        raise ValueError("target must be odd")
    filter_mod_8 = d % 2 == 1 and _prime_like(d)
    found: list[int] = []
    remaining = target
    step = 2 * d
    q = 1
    while True:
        q += step
        if q > limit or q > remaining:
            break
        if filter_mod_8 and q & 7 not in (1, 7):
            continue
        if stats is not None:
            stats.trial_candidates += 1
        if remaining % q:
            continue
        if not _prime_like(q):
            continue
        found.append(q)
        while remaining % q == 0:
            remaining //= q
    return found


def factor_mersenne(
    n: int,
    budget: Budget | None = None,
    cache: "FactorCache | None" = None,
    stats: FactorStats | None = None,
) -> Factorization:
    """Factor 2^n - 1 using its multiplicative structure.

    Pipeline: (1) return a complete cached entry if present; (2) split
    2^n - 1 into the cyclotomic parts belonging to each divisor d of n
    with d >= 2 (their product is the whole number); (3) strip each
    part's intrinsic prime and any primes already known from a partial
    cache entry, then run the 2*d*l + 1 congruence scan, then rho; (4)
    primality-check every surviving cofactor.  Results are merged across
    parts, sorted, and written back to the cache.  On budget exhaustion
    the composite remainder is reported in cofactor and status is
    partial.
    """
    if n < 1:
        raise ValueError("n must be >= 1")
    budget = budget or DEFAULT_BUDGET
    if cache is not None:
        hit = cache.get(n)
        if hit is not None and hit.complete:
            if stats is not None:
                stats.cache_hits += 1
            return hit
        known = hit.primes() if hit is not None else ()
    else:
        known = ()

    from .cyclotomic import cyclotomic_split

    counts: Counter = Counter()
    leftover = 1
    tracker = _RhoTracker(budget.rho_iterations_max, stats)
    for part in cyclotomic_split(n):
        v = part.value
        if v == 1:
            continue
        if part.intrinsic > 1:
            while v % part.intrinsic == 0:
                v //= part.intrinsic
                counts[part.intrinsic] += 1
        for p in known:
            while v % p == 0:
                v //= p
                counts[p] += 1
        if v == 1:
            continue
        if _prime_like(v):
            counts[v] += 1
            continue
        for q in trial_divide_congruence(
            v, part.d, min(budget.trial_division_bound, v), stats
        ):
            while v % q == 0:
                v //= q
                counts[q] += 1
        if v == 1:
            continue
        if _prime_like(v):
            counts[v] += 1
            continue
        leftover *= _factor_with_rho(v, tracker, counts)
    result = Factorization(mersenne(n), tuple(sorted(counts.items())), leftover)
    if cache is not None:
        result = cache.merge(n, result)
    return result
