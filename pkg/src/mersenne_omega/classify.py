"""Classification of indices n by the number of distinct prime factors
of 2^n - 1, provable lower bounds on that count, divisor-form checks for
prime-index factors, and batch identity verification.

omega(2^n - 1) can equal 1 only for prime n; it can equal 2 only for
n in {4, 6}, n an odd prime, or n an odd prime squared; it can equal 3
only for n = 8, an odd prime, twice an odd prime, a product of two
distinct odd primes, an odd prime squared, or an odd prime cubed.  The
clause labels T1, T2_i, ..., T3_v used in reports identify the matching
case together with the expected shape of the factorization itself.
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass

from .arith import (
    Verdict,
    integer_root,
    is_perfect_power,
    is_probable_prime,
    mersenne,
)
from .cyclotomic import divisor_list, mersenne_quotient_residue
from .factoring import Budget, Factorization, FactorStats, factor_mersenne, factor_natural

__all__ = [
    "Shape",
    "Clause",
    "OMEGA_MORE",
    "CandidateForm",
    "DivisorFormCheck",
    "ClassificationReport",
    "SuiteResult",
    "IdentityReport",
    "validate_divisor_form",
    "lower_bound_omega",
    "lower_bound_divisors",
    "classify_index",
    "verify_structure",
    "verify_identities",
    "verify_structures_in_range",
]

# Marker for "omega may exceed 3" in eligibility sets.
OMEGA_MORE = "more"


class Shape(enum.Enum):
    """Structural shape of an index n, a function of n's factorization."""

    ONE = "one"
    TWO = "two"
    SPECIAL4 = "special4"
    SPECIAL6 = "special6"
    SPECIAL8 = "special8"
    PRIME = "prime"
    PRIME_SQUARED = "prime_squared"
    PRIME_CUBED = "prime_cubed"
    TWO_TIMES_PRIME = "two_times_prime"
    TWO_DISTINCT_PRIMES = "two_distinct_primes"
    OTHER = "other"


class Clause(enum.Enum):
    T1 = "T1"
    T2_I = "T2_i"
    T2_II = "T2_ii"
    T2_SPECIAL = "T2_special"
    T3_I = "T3_i"
    T3_II = "T3_ii"
    T3_III = "T3_iii"
    T3_IV = "T3_iv"
    T3_V = "T3_v"
    T3_SPECIAL = "T3_special"
    NONE = "none"


@dataclass(frozen=True)
class CandidateForm:
    """Shape of n, the provable floor, and the values the classification
    permits for the number of distinct prime factors of 2^n - 1."""

    n: int
    shape: Shape
    min_omega: int
    eligible_omega: frozenset

    def allows(self, omega: int) -> bool:
        if omega <= 3:
            return omega in self.eligible_omega
        return OMEGA_MORE in self.eligible_omega

    def eligible_sorted(self) -> list:
        numbers = sorted(v for v in self.eligible_omega if v != OMEGA_MORE)
        if OMEGA_MORE in self.eligible_omega:
            numbers.append(OMEGA_MORE)
        return numbers


@dataclass(frozen=True)
class DivisorFormCheck:
    """Decomposition q = 2*l*p + 1 of a prime divisor q of 2^p - 1.

    passes records whether l mod 4 lies in {0, (-p) mod 4}, equivalently
    whether q = +-1 (mod 8).
    """

    q: int
    p: int
    l: int
    l_class: int
    passes: bool


@dataclass(frozen=True)
class ClassificationReport:
    n: int
    omega: int
    matched_clause: Clause
    decomposition: str
    consistent: bool
    divisor_form_checks: tuple[DivisorFormCheck, ...]


def _odd_prime(n: int) -> bool:
    return n % 2 == 1 and n > 2 and is_probable_prime(n) is not Verdict.COMPOSITE


def validate_divisor_form(q: int, p: int) -> DivisorFormCheck:
    """Check the 2*l*p + 1 form of a prime q dividing 2^p - 1, p odd prime.

    A non-integral l means the caller's divisibility premise was violated
    and is reported as an error rather than a failed check.
    """
    if not _odd_prime(p):
        raise ValueError("p must be an odd prime")
    if (q - 1) % (2 * p):
        raise ValueError(f"{q} is not of the form 2*l*{p} + 1")
    l = (q - 1) // (2 * p)
    l_class = l % 4
    return DivisorFormCheck(q, p, l, l_class, l_class in (0, (-p) % 4))


def lower_bound_omega(n: int) -> int:
    """Provable floor for omega(2^n - 1) from the chain/coprime-split
    argument: Omega(n) when n is a prime power, Omega(n) + 1 when n has
    at least two distinct prime factors, with the fixed exceptions n = 1,
    2, 6."""
    if n < 1:
        raise ValueError("n must be >= 1")
    if n == 1:
        return 0
    if n == 2:
        return 1
    if n == 6:
        return 2
    f = factor_natural(n)
    if f.omega == 1:
        return f.bigomega
    return f.bigomega + 1


def lower_bound_divisors(n: int) -> int:
    """Divisor-counting floor for omega(2^n - 1): every divisor h of n
    outside {1, 2, 6} contributes a distinct primitive prime, and h = 2
    contributes the prime 3.  Always at least d(n) - 3."""
    if n < 1:
        raise ValueError("n must be >= 1")
    divisors = divisor_list(n)
    excluded = len({1, 2, 6} & set(divisors))
    return len(divisors) - excluded + (1 if n % 2 == 0 else 0)


_ELIGIBLE_1 = frozenset({Shape.TWO, Shape.PRIME})
_ELIGIBLE_2 = frozenset({Shape.SPECIAL4, Shape.SPECIAL6, Shape.PRIME, Shape.PRIME_SQUARED})
_ELIGIBLE_3 = frozenset(
    {
        Shape.SPECIAL8,
        Shape.PRIME,
        Shape.TWO_TIMES_PRIME,
        Shape.TWO_DISTINCT_PRIMES,
        Shape.PRIME_SQUARED,
        Shape.PRIME_CUBED,
    }
)
_ELIGIBLE_MORE = frozenset(
    {
        Shape.PRIME,
        Shape.PRIME_SQUARED,
        Shape.PRIME_CUBED,
        Shape.TWO_TIMES_PRIME,
        Shape.TWO_DISTINCT_PRIMES,
        Shape.OTHER,
    }
)


def _shape_of(n: int) -> Shape:
    if n == 1:
        return Shape.ONE
    if n == 2:
        return Shape.TWO
    if n == 4:
        return Shape.SPECIAL4
    if n == 6:
        return Shape.SPECIAL6
    if n == 8:
        return Shape.SPECIAL8
    f = factor_natural(n)
    if f.omega == 1:
        exponent = f.factors[0][1]
        # Prime powers of 2 up to 8 were handled above, so the base is odd.
        if exponent == 1:
            return Shape.PRIME
        if exponent == 2:
            return Shape.PRIME_SQUARED
        if exponent == 3:
            return Shape.PRIME_CUBED
        return Shape.OTHER
    if f.omega == 2 and f.bigomega == 2:
        p1 = f.factors[0][0]
        return Shape.TWO_TIMES_PRIME if p1 == 2 else Shape.TWO_DISTINCT_PRIMES
    return Shape.OTHER


def classify_index(n: int) -> CandidateForm:
    """Shape of n, the provable floor on omega(2^n - 1), and the set of
    values in {1, 2, 3, more} that the classification results permit."""
    if n < 1:
        raise ValueError("n must be >= 1")
    shape = _shape_of(n)
    min_omega = max(lower_bound_omega(n), lower_bound_divisors(n))
    eligible = set()
    if shape in _ELIGIBLE_1 and min_omega <= 1:
        eligible.add(1)
    if shape in _ELIGIBLE_2 and min_omega <= 2:
        eligible.add(2)
    if shape in _ELIGIBLE_3 and min_omega <= 3:
        eligible.add(3)
    if shape in _ELIGIBLE_MORE:
        eligible.add(OMEGA_MORE)
    return CandidateForm(n, shape, min_omega, frozenset(eligible))


def _mersenne_index_of(prime: int) -> int | None:
    k = (prime + 1).bit_length() - 1
    if k >= 2 and mersenne(k) == prime:
        return k
    return None


def _decomposition(n: int, f: Factorization) -> str:
    pieces = []
    for prime, exponent in f.factors:
        k = _mersenne_index_of(prime)
        if k is not None and n % k == 0:
            key, label = (0, k), f"M{k}"
        else:
            key, label = (1, prime), str(prime)
        if exponent > 1:
            label += f"^{exponent}"
        pieces.append((key, label))
    if not f.complete:
        pieces.append(((2, f.cofactor), f"[{f.cofactor}]"))
    return "·".join(label for _, label in sorted(pieces)) or "1"


def _exponent_gcd(f: Factorization) -> int:
    return math.gcd(*(e for _, e in f.factors)) if f.factors else 0


def _match_clause(n: int, f: Factorization, shape: Shape) -> tuple[Clause, bool]:
    """Pick the clause n's shape belongs to and check the clause-level
    decomposition of the factorization.  Returns (clause, holds)."""
    omega = f.omega
    if omega == 0:
        return Clause.NONE, n == 1
    if omega == 1:
        ok = shape in (Shape.TWO, Shape.PRIME) and f.factors == ((mersenne(n), 1),)
        return (Clause.T1, ok) if ok else (Clause.NONE, False)
    if omega == 2:
        if n == 4:
            return Clause.T2_SPECIAL, f.factors == ((3, 1), (5, 1))
        if n == 6:
            return Clause.T2_SPECIAL, f.factors == ((3, 2), (7, 1))
        if shape is Shape.PRIME:
            return Clause.T2_II, _exponent_gcd(f) == 1
        if shape is Shape.PRIME_SQUARED:
            p1 = math.isqrt(n)
            return Clause.T2_I, f.exponent_of(mersenne(p1)) == 1
        return Clause.NONE, False
    if omega == 3:
        if n == 8:
            return Clause.T3_SPECIAL, f.factors == ((3, 1), (5, 1), (17, 1))
        if shape is Shape.PRIME:
            return Clause.T3_V, _exponent_gcd(f) == 1
        if shape is Shape.TWO_TIMES_PRIME:
            p1 = n // 2
            ok = f.exponent_of(3) == 1 and f.exponent_of(mersenne(p1)) == 1
            return Clause.T3_I, ok
        if shape is Shape.TWO_DISTINCT_PRIMES:
            p1, p2 = (p for p, _ in factor_natural(n).factors)
            s = f.exponent_of(mersenne(p1))
            t = f.exponent_of(mersenne(p2))
            ok = s >= 1 and t >= 1 and _exponent_gcd(f) == 1
            if p2 != mersenne(p1):
                # 2^p1 - 1 does not divide p2, so both inner exponents
                # must collapse to 1.
                ok = ok and s == 1 and t == 1
            return Clause.T3_II, ok
        if shape is Shape.PRIME_SQUARED:
            p1 = math.isqrt(n)
            inner = factor_natural(mersenne(p1))
            if inner.omega == 1:
                ok = f.exponent_of(mersenne(p1)) == 1
            elif inner.omega == 2:
                (p, s), (q, t) = inner.factors
                ok = (
                    math.gcd(s, t) == 1
                    and f.exponent_of(p) == s
                    and f.exponent_of(q) == t
                )
            else:
                ok = False
            return Clause.T3_III, ok
        if shape is Shape.PRIME_CUBED:
            p1 = integer_root(n, 3)
            mp = mersenne(p1)
            outer = [e for p, e in f.factors if p != mp]
            ok = f.exponent_of(mp) == 1 and math.gcd(*outer) == 1
            return Clause.T3_IV, ok
        return Clause.NONE, False
    return Clause.NONE, True


def verify_structure(n: int, f: Factorization) -> ClassificationReport:
    """Check a complete factorization of 2^n - 1 against the classification:
    when it has at most 3 distinct primes, n's shape must be on the
    corresponding solution list and the clause-level decomposition must
    hold; prime-index factors must additionally carry the 2*l*n + 1 form.

    The checks are necessity-only; nothing here claims that an eligible
    shape forces a particular omega.
    """
    if not f.complete:
        raise ValueError("complete factorization required")
    if f.target != mersenne(n):
        raise ValueError(f"factorization target is not 2^{n} - 1")
    form = classify_index(n)
    checks: tuple[DivisorFormCheck, ...] = ()
    if _odd_prime(n):
        checks = tuple(validate_divisor_form(q, n) for q in f.primes())
    clause, holds = _match_clause(n, f, form.shape)
    consistent = (
        holds
        and form.allows(f.omega)
        and f.omega >= form.min_omega
        and all(c.passes for c in checks)
    )
    return ClassificationReport(n, f.omega, clause, _decomposition(n, f), consistent, checks)


@dataclass(frozen=True)
class SuiteResult:
    name: str
    passed: int
    failed: int
    inconclusive: int = 0
    first_failure: str | None = None

    @property
    def ok(self) -> bool:
        return self.failed == 0


@dataclass(frozen=True)
class IdentityReport:
    max_n: int
    suites: tuple[SuiteResult, ...]

    @property
    def ok(self) -> bool:
        return all(s.ok for s in self.suites)

    @property
    def inconclusive(self) -> int:
        return sum(s.inconclusive for s in self.suites)


class _Tally:
    def __init__(self, name: str):
        self.name = name
        self.passed = 0
        self.failed = 0
        self.inconclusive = 0
        self.first_failure: str | None = None

    def check(self, ok: bool, describe: str) -> None:
        if ok:
            self.passed += 1
        else:
            self.failed += 1
            if self.first_failure is None:
                self.first_failure = describe

    def skip(self) -> None:
        self.inconclusive += 1

    def result(self) -> SuiteResult:
        return SuiteResult(
            self.name, self.passed, self.failed, self.inconclusive, self.first_failure
        )


# The perfect-power sweep always covers at least this much, regardless of
# the requested range: the absence statement is cheap to check and the
# larger window is part of the standard verification contract.
_PERFECT_POWER_FLOOR = 200


def verify_identities(
    max_n: int,
    budget: Budget | None = None,
    cache=None,
    stats: FactorStats | None = None,
) -> IdentityReport:
    """Run the four identity sub-suites over indices up to max_n.

    - gcd identity: gcd(2^a - 1, 2^b - 1) = 2^gcd(a, b) - 1 for all pairs;
    - omega superadditivity: for coprime 1 < m < k with m*k <= max_n and
      m*k != 6, omega(M(m*k)) > omega(M(m)) + omega(M(k));
    - perfect-power absence for 2 <= n <= max(max_n, 200);
    - quotient residue: the closed form m mod (2^p - 1) against explicit
      big-integer division, for prime p and p*m <= max_n.

    Cases that would need a factorization the budget cannot complete are
    counted as inconclusive, never as passes.
    """
    if max_n < 2:
        raise ValueError("max_n must be >= 2")

    memo: dict[int, Factorization] = {}

    def factored(n: int) -> Factorization:
        if n not in memo:
            memo[n] = factor_mersenne(n, budget, cache, stats)
        return memo[n]

    gcd_suite = _Tally("gcd_identity")
    for a in range(1, max_n + 1):
        for b in range(a, max_n + 1):
            expected = mersenne(math.gcd(a, b))
            ok = math.gcd(mersenne(a), mersenne(b)) == expected
            gcd_suite.check(ok, f"gcd(M{a}, M{b}) != M{math.gcd(a, b)}")

    super_suite = _Tally("omega_superadditivity")
    for m in range(2, max_n + 1):
        for k in range(m + 1, max_n // m + 1):
            if math.gcd(m, k) != 1 or m * k == 6:
                continue
            fm, fk, fmk = factored(m), factored(k), factored(m * k)
            if not (fm.complete and fk.complete and fmk.complete):
                super_suite.skip()
                continue
            ok = fmk.omega > fm.omega + fk.omega
            super_suite.check(ok, f"omega(M{m * k}) <= omega(M{m}) + omega(M{k})")

    power_suite = _Tally("perfect_power_absence")
    for n in range(2, max(max_n, _PERFECT_POWER_FLOOR) + 1):
        power_suite.check(is_perfect_power(mersenne(n)) is None, f"M{n} is a perfect power")

    residue_suite = _Tally("quotient_residue")
    for p in range(2, max_n + 1):
        if is_probable_prime(p) is Verdict.COMPOSITE:
            continue
        for m in range(1, max_n // p + 1):
            direct = (mersenne(p * m) // mersenne(p)) % mersenne(p)
            ok = mersenne_quotient_residue(p, m) == direct
            residue_suite.check(ok, f"quotient residue mismatch at p={p}, m={m}")

    return IdentityReport(
        max_n,
        (
            gcd_suite.result(),
            super_suite.result(),
            power_suite.result(),
            residue_suite.result(),
        ),
    )


def verify_structures_in_range(
    max_n: int,
    budget: Budget | None = None,
    cache=None,
    stats: FactorStats | None = None,
) -> SuiteResult:
    """Factor 2^n - 1 for every n in [2, max_n] and verify each complete
    factorization is consistent with the classification; budget-limited
    cases count as inconclusive."""
    if max_n < 2:
        raise ValueError("max_n must be >= 2")
    tally = _Tally("structure_consistency")
    for n in range(2, max_n + 1):
        f = factor_mersenne(n, budget, cache, stats)
        if not f.complete:
            tally.skip()
            continue
        report = verify_structure(n, f)
        tally.check(report.consistent, f"n={n}: inconsistent ({report.decomposition})")
    return tally.result()
