import itertools
import json
from fractions import Fraction

import numpy as np
import pytest

from bellscope.correlations import DeterministicStrategy, local_bound_bruteforce
from bellscope.numerics import RandomSource
from bellscope.symmetric import (
    PIBellExpression,
    StrategyCounts,
    classical_bound_symmetric,
    correlators_of_counts,
    dicke_expression,
    expression_from_json,
    expression_to_json,
    murcia,
    pi_to_functional,
    rioja,
    rioja_parity_ok,
)

from helpers import five_tuple_of_assignment, pi_min_bruteforce


def counts_assignment(counts):
    """One explicit per-site assignment realising a StrategyCounts."""
    return (
        [(1, 1)] * counts.a + [(1, -1)] * counts.b
        + [(-1, 1)] * counts.c + [(-1, -1)] * counts.d
    )


def all_counts(n):
    for a in range(n + 1):
        for b in range(n + 1 - a):
            for c in range(n + 1 - a - b):
                yield StrategyCounts(a, b, c, n - a - b - c)


class TestCorrelatorsOfCounts:
    def test_all_plus(self):
        got = correlators_of_counts(StrategyCounts(3, 0, 0, 0))
        assert got.as_tuple() == (3, 3, 6, 6, 6)

    def test_two_party_mixed(self):
        got = correlators_of_counts(StrategyCounts(1, 0, 0, 1))
        assert got.as_tuple() == (0, 0, -2, -2, -2)

    def test_exhaustive_against_assignment_oracle(self):
        for n in range(1, 9):
            for counts in all_counts(n):
                want = five_tuple_of_assignment(counts_assignment(counts))
                assert correlators_of_counts(counts).as_tuple() == want

    def test_random_large_counts_against_oracle(self):
        rng = RandomSource(3)
        for trial in range(100):
            n = int(rng.integers(2, 41))
            splits = np.sort(rng.integers(0, n + 1, size=3))
            counts = StrategyCounts(
                int(splits[0]), int(splits[1] - splits[0]),
                int(splits[2] - splits[1]), int(n - splits[2]),
            )
            want = five_tuple_of_assignment(counts_assignment(counts))
            assert correlators_of_counts(counts).as_tuple() == want

    def test_negative_counts_rejected(self):
        with pytest.raises(ValueError):
            StrategyCounts(-1, 1, 0, 0)


class TestClassicalBound:
    def test_known_bounds(self):
        assert classical_bound_symmetric(murcia(7))[0] == 14
        assert classical_bound_symmetric(dicke_expression(4))[0] == 18

    def test_witness_attains_bound(self):
        rng = RandomSource(5)
        for trial in range(20):
            coeffs = [int(v) for v in rng.integers(-4, 5, size=5)]
            n = int(rng.integers(2, 30))
            expr = PIBellExpression(
                n=n, alpha=coeffs[0], beta=coeffs[1], gamma=coeffs[2],
                delta=coeffs[3], epsilon=coeffs[4],
            )
            bound, witness = classical_bound_symmetric(expr)
            assert expr.value(correlators_of_counts(witness)) == -bound

    def test_agrees_with_full_enumeration(self):
        rng = RandomSource(13)
        for trial in range(20):
            coeffs = [int(v) for v in rng.integers(-4, 5, size=5)]
            for n in range(2, 9):
                expr = PIBellExpression(
                    n=n, alpha=coeffs[0], beta=coeffs[1], gamma=coeffs[2],
                    delta=coeffs[3], epsilon=coeffs[4],
                )
                bound, _ = classical_bound_symmetric(expr)
                rep = local_bound_bruteforce(pi_to_functional(expr))
                assert Fraction(bound) == -Fraction(rep.min_value)

    def test_exact_with_rational_coefficients(self):
        expr = PIBellExpression(
            n=5, alpha=Fraction(1, 3), beta=Fraction(-1, 2),
            gamma=Fraction(2, 3), delta=1, epsilon=Fraction(1, 6),
        )
        bound, witness = classical_bound_symmetric(expr)
        direct = min(
            expr.value(correlators_of_counts(c)) for c in all_counts(5)
        )
        assert bound == -direct
        assert isinstance(bound, Fraction)

    def test_guard_rejects_huge_n(self):
        with pytest.raises(ValueError):
            classical_bound_symmetric(murcia(5000))

    def test_permutation_invariance_of_functional(self):
        rng = RandomSource(8)
        for trial in range(10):
            n = int(rng.integers(2, 7))
            expr = PIBellExpression(
                n=n, alpha=int(rng.integers(-3, 4)), beta=int(rng.integers(-3, 4)),
                gamma=int(rng.integers(-3, 4)), delta=int(rng.integers(-3, 4)),
                epsilon=int(rng.integers(-3, 4)),
            )
            f = pi_to_functional(expr)
            assignment = [
                (int(rng.integers(2)) * 2 - 1, int(rng.integers(2)) * 2 - 1)
                for _ in range(n)
            ]
            base = None
            for perm in itertools.islice(itertools.permutations(range(n)), 10):
                permuted = [assignment[p] for p in perm]
                strat = DeterministicStrategy(
                    tuple(
                        ((1 - m0) // 2, (1 - m1) // 2) for m0, m1 in permuted
                    )
                )
                v = f.strategy_value(strat)
                if base is None:
                    base = v
                assert v == base


class TestRiojaFamily:
    def test_murcia_is_a_member(self):
        for n in (2, 5, 12):
            member = rioja(1, 1, -1, 0, n, branch="minus")
            reference = murcia(n)
            assert member.coefficients() == reference.coefficients() == (-2, 0, 1, -1, 1)
            assert member.bound == reference.bound == 2 * n

    def test_unit_xy_bound_is_2n(self):
        for n in (2, 7, 20):
            for branch in ("plus", "minus"):
                assert rioja(1, 1, 1, 0, n, branch=branch).bound == 2 * n

    def test_parity_rule(self):
        # odd n: mu must have parity opposite to y; even n: opposite to x
        assert rioja_parity_ok(1, 2, 1, 3)
        assert not rioja_parity_ok(1, 2, 0, 3)
        assert rioja_parity_ok(2, 1, 1, 4)
        assert not rioja_parity_ok(2, 1, 0, 4)
        with pytest.raises(ValueError, match="parity"):
            rioja(1, 2, 1, 0, 3)
        expr = rioja(1, 2, 1, 0, 3, check_parity=False)
        assert expr.n == 3

    def test_branches_differ_in_alpha_and_bound(self):
        plus = rioja(2, 1, 1, 1, 6, branch="plus")
        minus = rioja(2, 1, 1, 1, 6, branch="minus")
        assert plus.alpha == 2 * (1 + 3) and minus.alpha == 2 * (1 - 3)
        assert plus.bound == (6 * 9 + (1 + 2) ** 2 - 1) // 2
        assert minus.bound == (6 * 9 + (1 - 2) ** 2 - 1) // 2

    def test_closed_form_matches_enumeration_off_the_degenerate_point(self):
        for x, y in ((1, 1), (1, 2), (2, 3), (3, 3)):
            for sigma in (1, -1):
                for mu in range(-3, 4):
                    for n in (2, 3, 6, 11):
                        if not rioja_parity_ok(x, y, mu, n):
                            continue
                        if (x, y, mu) == (3, 3, 0):
                            continue
                        expr = rioja(x, y, sigma, mu, n)
                        enum, _ = classical_bound_symmetric(expr)
                        assert expr.bound == enum, (x, y, sigma, mu, n)

    def test_scaled_copy_point_has_constant_gap_of_four(self):
        # (3,3,0) duplicates 9x the (1,1,0) expression, so the exact bound
        # scales to 18n while the closed form stays at 18n + 4
        for sigma in (1, -1):
            for branch in ("plus", "minus"):
                for n in (2, 5, 9, 14):
                    expr = rioja(3, 3, sigma, 0, n, branch=branch)
                    enum, _ = classical_bound_symmetric(expr)
                    assert enum == 18 * n
                    assert expr.bound == 18 * n + 4

    def test_small_case_against_site_enumeration(self):
        for sigma in (1, -1):
            expr = rioja(1, 1, sigma, 2, 2)
            best = pi_min_bruteforce(expr.coefficients(), 2)
            assert classical_bound_symmetric(expr)[0] == -best

    def test_rejects_nonpositive_xy(self):
        with pytest.raises(ValueError):
            rioja(0, 1, 1, 0, 3)
        with pytest.raises(ValueError):
            rioja(1, 1, 2, 0, 3)


class TestDickeExpression:
    def test_n4_coefficients_and_bound(self):
        expr = dicke_expression(4)
        assert expr.coefficients() == (0, 0, 6, 2, -1)
        assert expr.bound == 18

    def test_n5_coefficients(self):
        expr = dicke_expression(5)
        assert expr.alpha == 10 and expr.beta == 2
        assert expr.gamma == 10 and expr.delta == Fraction(5, 2) and expr.epsilon == -1

    def test_closed_form_matches_enumeration(self):
        for n in range(2, 21):
            expr = dicke_expression(n)
            enum, _ = classical_bound_symmetric(expr)
            assert expr.bound == enum, n


class TestFunctionalBridge:
    def test_strategy_values_match_counts(self):
        rng = RandomSource(21)
        for trial in range(20):
            n = int(rng.integers(2, 7))
            expr = PIBellExpression(
                n=n, alpha=int(rng.integers(-3, 4)), beta=int(rng.integers(-3, 4)),
                gamma=int(rng.integers(-3, 4)), delta=int(rng.integers(-3, 4)),
                epsilon=int(rng.integers(-3, 4)),
            )
            f = pi_to_functional(expr)
            signs = [
                (int(rng.integers(2)) * 2 - 1, int(rng.integers(2)) * 2 - 1)
                for _ in range(n)
            ]
            strat = DeterministicStrategy(
                tuple(((1 - m0) // 2, (1 - m1) // 2) for m0, m1 in signs)
            )
            a = sum(1 for s in signs if s == (1, 1))
            b = sum(1 for s in signs if s == (1, -1))
            c = sum(1 for s in signs if s == (-1, 1))
            counts = StrategyCounts(a, b, c, n - a - b - c)
            want = expr.value(correlators_of_counts(counts))
            assert f.strategy_value(strat) == float(want)


class TestExpressionJson:
    def test_round_trip_integer(self):
        expr = murcia(9)
        doc = json.loads(json.dumps(expression_to_json(expr)))
        back = expression_from_json(doc)
        assert back.coefficients() == expr.coefficients()
        assert back.bound == expr.bound and back.n == 9

    def test_round_trip_rational(self):
        expr = dicke_expression(5)  # delta = 5/2
        doc = json.loads(json.dumps(expression_to_json(expr)))
        back = expression_from_json(doc)
        assert back.delta == Fraction(5, 2)
        assert back.bound == expr.bound

    def test_bound_provenance_preserved(self):
        expr = murcia(4)
        doc = expression_to_json(expr)
        assert doc.get("bound_provenance")
        back = expression_from_json(json.loads(json.dumps(doc)))
        assert back.bound_provenance == expr.bound_provenance
