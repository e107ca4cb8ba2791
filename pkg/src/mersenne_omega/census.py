"""Range sweeps over indices n: arithmetic functions of n, the two-sided
divisor-count band 2^((1 +- eps) * ln ln n), and per-index records of how
the observed factor count of 2^n - 1 compares with every lower bound.

Logarithms are natural throughout.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from .classify import lower_bound_divisors, lower_bound_omega
from .factoring import Budget, FactorStats, factor_mersenne, factor_natural

__all__ = [
    "CensusConfig",
    "CensusRecord",
    "CensusSummary",
    "ASYMPTOTIC_NOTE",
    "index_functions",
    "hw_bound",
    "hw_bounds",
    "run_census",
]

# Printed with every summary: the almost-all density statement behind the
# final inequality is not testable on desk-scale ranges (the right-hand
# side is below zero there), so acceptance rests on the deterministic
# bounds instead.
ASYMPTOTIC_NOTE = (
    "almost-all density claim untested at this scale; "
    "deterministic lower bounds are asserted instead"
)


def index_functions(n: int) -> tuple[int, int, int]:
    """(number of divisors, distinct prime factors, prime factors with
    multiplicity) of n."""
    if n < 1:
        raise ValueError("n must be >= 1")
    f = factor_natural(n)
    d = 1
    for _, e in f.factors:
        d *= e + 1
    return d, f.omega, f.bigomega


def hw_bound(n: int, epsilon: float) -> float:
    """Lower edge 2^((1 - eps) * ln ln n) of the divisor-count band.

    Requires n >= 3 so that ln ln n is positive.
    """
    if n < 3:
        raise ValueError("n must be >= 3 (ln ln n must be positive)")
    return 2.0 ** ((1.0 - epsilon) * math.log(math.log(n)))


def hw_bounds(n: int, epsilon: float) -> tuple[float, float]:
    """Both edges 2^((1 -+ eps) * ln ln n) of the divisor-count band."""
    if n < 3:
        raise ValueError("n must be >= 3 (ln ln n must be positive)")
    loglog = math.log(math.log(n))
    return 2.0 ** ((1.0 - epsilon) * loglog), 2.0 ** ((1.0 + epsilon) * loglog)


@dataclass(frozen=True)
class CensusConfig:
    n_min: int
    n_max: int
    epsilon: float = 0.5
    budget: Budget | None = None
    cache_path: str | None = None

    def __post_init__(self) -> None:
        if not 2 <= self.n_min <= self.n_max:
            raise ValueError("need 2 <= n_min <= n_max")
        if not 0.0 < self.epsilon < 1.0:
            raise ValueError("epsilon must lie in (0, 1)")


@dataclass(frozen=True)
class CensusRecord:
    """Per-index row.  omega_M and the fields derived from it are None
    when the factorization is partial; the band fields are None for
    n < 3, where ln ln n has the wrong sign."""

    n: int
    d_n: int
    omega_n: int
    bigomega_n: int
    omega_M: int | None
    bound_prop2: int
    bound_divisors: int
    hw_value: float | None
    lemma6_holds: bool | None
    final_inequality_holds: bool | None
    complete: bool


@dataclass(frozen=True)
class CensusSummary:
    n_min: int
    n_max: int
    epsilon: float
    records_total: int
    complete_count: int
    incomplete_count: int
    lemma6_fraction: float | None
    lemma6_upper_fraction: float | None
    final_fraction: float | None
    deterministic_violations: tuple[int, ...]
    weak_divisor_bound_violations: tuple[int, ...]
    uncorrected_bound_witnesses: tuple[int, ...]
    asymptotic_note: str = ASYMPTOTIC_NOTE


def run_census(config: CensusConfig, cache=None, stats: FactorStats | None = None):
    """Sweep [n_min, n_max] and return (records, summary), ordered by n.

    The summary reports the fraction of indices inside the divisor-count
    band (both sides), the fraction satisfying the final inequality
    omega(M_n) > hw - 3 among complete records, any violations of the
    deterministic bounds (there must be none), and the witnesses where
    the uncorrected floor Omega(n) + 1 exceeds the observed omega(M_n)
    (always prime-power indices).
    """
    records = []
    violations = []
    weak_violations = []
    witnesses = []
    lemma6_true = lemma6_total = 0
    lemma6_upper_true = 0
    final_true = final_total = 0
    for n in range(config.n_min, config.n_max + 1):
        d_n, omega_n, bigomega_n = index_functions(n)
        bound_p2 = lower_bound_omega(n)
        bound_div = lower_bound_divisors(n)
        f = factor_mersenne(n, config.budget, cache, stats)
        omega_m = f.omega if f.complete else None

        hw = hw_upper = lemma6 = final = None
        if n >= 3:
            hw, hw_upper = hw_bounds(n, config.epsilon)
            lemma6 = d_n > hw
            lemma6_total += 1
            lemma6_true += lemma6
            lemma6_upper_true += d_n < hw_upper
            if omega_m is not None:
                final = omega_m > hw - 3.0
                final_total += 1
                final_true += final

        if omega_m is not None:
            if omega_m < bound_p2 or omega_m < bound_div:
                violations.append(n)
            if omega_m < d_n - 3:
                weak_violations.append(n)
            if n not in (2, 6) and bigomega_n + 1 > omega_m:
                witnesses.append(n)

        records.append(
            CensusRecord(
                n=n,
                d_n=d_n,
                omega_n=omega_n,
                bigomega_n=bigomega_n,
                omega_M=omega_m,
                bound_prop2=bound_p2,
                bound_divisors=bound_div,
                hw_value=hw,
                lemma6_holds=lemma6,
                final_inequality_holds=final,
                complete=f.complete,
            )
        )

    complete_count = sum(r.complete for r in records)
    summary = CensusSummary(
        n_min=config.n_min,
        n_max=config.n_max,
        epsilon=config.epsilon,
        records_total=len(records),
        complete_count=complete_count,
        incomplete_count=len(records) - complete_count,
        lemma6_fraction=lemma6_true / lemma6_total if lemma6_total else None,
        lemma6_upper_fraction=lemma6_upper_true / lemma6_total if lemma6_total else None,
        final_fraction=final_true / final_total if final_total else None,
        deterministic_violations=tuple(violations),
        weak_divisor_bound_violations=tuple(weak_violations),
        uncorrected_bound_witnesses=tuple(witnesses),
    )
    return records, summary
