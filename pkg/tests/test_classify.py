import math

import pytest

from mersenne_omega import (
    Clause,
    FactorCache,
    Shape,
    classify_index,
    factor_mersenne,
    lower_bound_divisors,
    lower_bound_omega,
    mersenne,
    validate_divisor_form,
    verify_identities,
    verify_structure,
    verify_structures_in_range,
)
from mersenne_omega.factoring import Budget, Factorization


def test_validate_divisor_form_examples():
    c = validate_divisor_form(23, 11)
    assert (c.l, c.l_class, c.passes) == (1, 1, True)  # (-11) % 4 == 1
    c = validate_divisor_form(89, 11)
    assert (c.l, c.l_class, c.passes) == (4, 0, True)
    c = validate_divisor_form(1103, 29)
    assert (c.l, c.l_class, c.passes) == (19, 3, True)  # (-29) % 4 == 3


def test_validate_divisor_form_errors():
    with pytest.raises(ValueError):
        validate_divisor_form(7, 11)  # 6 not divisible by 22
    with pytest.raises(ValueError):
        validate_divisor_form(23, 4)  # p not an odd prime
    with pytest.raises(ValueError):
        validate_divisor_form(23, 9)


@pytest.mark.parametrize(
    "n,expected",
    [(1, 0), (2, 1), (6, 2), (8, 3), (9, 2), (30, 4), (4, 2), (27, 3), (12, 4)],
)
def test_lower_bound_omega(n, expected):
    assert lower_bound_omega(n) == expected


@pytest.mark.parametrize(
    "n,expected",
    [(1, 0), (2, 1), (6, 2), (7, 1), (12, 4), (64, 6), (30, 6), (49, 2)],
)
def test_lower_bound_divisors(n, expected):
    assert lower_bound_divisors(n) == expected


def test_lower_bound_divisors_dominates_simple_count():
    for n in range(1, 201):
        d = len([h for h in range(1, n + 1) if n % h == 0])
        assert lower_bound_divisors(n) >= d - 3


def test_classify_index_shapes():
    cases = {
        1: Shape.ONE,
        2: Shape.TWO,
        4: Shape.SPECIAL4,
        6: Shape.SPECIAL6,
        8: Shape.SPECIAL8,
        5: Shape.PRIME,
        9: Shape.PRIME_SQUARED,
        27: Shape.PRIME_CUBED,
        10: Shape.TWO_TIMES_PRIME,
        15: Shape.TWO_DISTINCT_PRIMES,
        12: Shape.OTHER,
        16: Shape.OTHER,
        30: Shape.OTHER,
        45: Shape.OTHER,
    }
    for n, shape in cases.items():
        assert classify_index(n).shape is shape, n


def test_classify_index_eligibility():
    assert classify_index(15).eligible_sorted() == [3, "more"]
    assert classify_index(30).eligible_sorted() == ["more"]
    assert classify_index(4).eligible_sorted() == [2]
    assert classify_index(8).eligible_sorted() == [3]
    assert classify_index(2).eligible_sorted() == [1]
    assert classify_index(7).eligible_sorted() == [1, 2, 3, "more"]
    assert classify_index(49).eligible_sorted() == [2, 3, "more"]
    form = classify_index(15)
    assert form.min_omega == 3
    assert form.allows(3) and form.allows(7) and not form.allows(2)


def test_classify_index_floor_never_below_eligible():
    for n in range(1, 129):
        form = classify_index(n)
        for v in (1, 2, 3):
            if v in form.eligible_omega:
                assert v >= form.min_omega, n


def test_verify_structure_examples():
    cases = {
        2: (Clause.T1, "M2"),
        3: (Clause.T1, "M3"),
        4: (Clause.T2_SPECIAL, "M2·5"),
        6: (Clause.T2_SPECIAL, "M2^2·M3"),
        9: (Clause.T2_I, "M3·73"),
        23: (Clause.T2_II, "47·178481"),
        8: (Clause.T3_SPECIAL, "M2·5·17"),
        10: (Clause.T3_I, "M2·M5·11"),
        21: (Clause.T3_II, "M3^2·M7·337"),
        25: (Clause.T3_III, "M5·601·1801"),
        27: (Clause.T3_IV, "M3·73·262657"),
        29: (Clause.T3_V, "233·1103·2089"),
    }
    for n, (clause, decomposition) in cases.items():
        report = verify_structure(n, factor_mersenne(n))
        assert report.matched_clause is clause, n
        assert report.decomposition == decomposition, n
        assert report.consistent, n


def test_verify_structure_large_omega_has_no_clause():
    report = verify_structure(12, factor_mersenne(12))
    assert report.omega == 4
    assert report.matched_clause is Clause.NONE
    assert report.consistent


def test_verify_structure_rejects_partial():
    partial = Factorization(mersenne(11), ((23, 1),), 89)
    with pytest.raises(ValueError):
        verify_structure(11, partial)


def test_verify_structure_detects_wrong_shape():
    # forge an impossible "omega = 1" factorization for n = 12
    fake = Factorization(mersenne(12), ((4095, 1),))
    report = verify_structure(12, fake)
    assert not report.consistent
    assert report.matched_clause is Clause.NONE


def test_structure_consistent_through_64():
    suite = verify_structures_in_range(64)
    assert suite.failed == 0 and suite.inconclusive == 0
    assert suite.passed == 63


def test_bounds_hold_through_64():
    for n in range(2, 65):
        omega = factor_mersenne(n).omega
        assert omega >= lower_bound_omega(n), n
        assert omega >= lower_bound_divisors(n), n
        form = classify_index(n)
        assert form.allows(omega), n


def test_exponent_gcd_when_omega_at_most_3():
    for n in range(2, 65):
        f = factor_mersenne(n)
        exponents = [e for _, e in f.factors]
        if f.omega in (2, 3):
            assert math.gcd(*exponents) == 1, n


def test_divisor_form_on_all_prime_index_factors():
    for p in range(3, 62, 2):
        if any(p % r == 0 for r in range(2, p)):
            continue
        for q, _ in factor_mersenne(p).factors:
            assert validate_divisor_form(q, p).passes, (p, q)


def test_verify_identities_all_pass_at_40():
    report = verify_identities(40)
    assert report.ok
    assert report.inconclusive == 0
    names = [s.name for s in report.suites]
    assert names == [
        "gcd_identity",
        "omega_superadditivity",
        "perfect_power_absence",
        "quotient_residue",
    ]
    by_name = {s.name: s for s in report.suites}
    assert by_name["gcd_identity"].passed == 820  # pairs with 1 <= a <= b <= 40
    assert by_name["perfect_power_absence"].passed == 199  # floor of 200 applies


def test_verify_identities_skips_product_six():
    report = verify_identities(6)
    by_name = {s.name: s for s in report.suites}
    # the only coprime pair with product <= 6 is (2, 3), which is skipped
    assert by_name["omega_superadditivity"].passed == 0
    assert by_name["omega_superadditivity"].failed == 0


def test_verify_identities_minimum_range():
    report = verify_identities(2)
    assert report.ok
    with pytest.raises(ValueError):
        verify_identities(1)


def test_verify_identities_marks_budget_gaps_inconclusive():
    starved = Budget(rho_iterations_max=1, trial_division_bound=3)
    report = verify_identities(40, budget=starved, cache=FactorCache())
    by_name = {s.name: s for s in report.suites}
    assert by_name["omega_superadditivity"].failed == 0
    assert by_name["omega_superadditivity"].inconclusive > 0
