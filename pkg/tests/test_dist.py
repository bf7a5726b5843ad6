import itertools
import math
import warnings
from collections import Counter
from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from oracles import as_probs, occupancy_counts, occupancy_formula
from vslab.dist import (ExactDistribution, MomentTable, asymptotic_params_occupancy,
                        asymptotic_params_random_poly, binomial_row, closed_form_nonzero_dist,
                        closed_form_valueset_dist, falling, forward_differences,
                        log_small_valueset_asymptotic, moment_table,
                        nonzero_branch_valueset_dist, occupancy_dist, occupancy_moment,
                        occupancy_moment_table, random_poly_missing_dist, random_poly_moment,
                        random_poly_moment_table, random_poly_valueset_dist, sieve_p_from_s,
                        sieve_s_from_p, small_valueset_asymptotic)
from vslab.errors import BudgetError, ValidationError
from vslab.field import field_for_order
from vslab.cyclo import CyclotomicMapping, value_set_brute
from vslab.simlab import enumerate_occupancy

F = Fraction


# --- distribution type

def test_distribution_invariants():
    d = ExactDistribution([3, 1, 2], [F(1, 2), F(1, 4), F(1, 4)])
    assert d.support == (1, 2, 3)
    assert ExactDistribution([0, 1], [1, 0]).support == (0,)
    with pytest.raises(ValidationError):
        ExactDistribution([0, 1], [F(1, 2), F(1, 3)])
    with pytest.raises(ValidationError):
        ExactDistribution([0, 1], [F(3, 2), F(-1, 2)])


def test_moment_table_invariant():
    with pytest.raises(ValidationError):
        MomentTable(1, (F(1), F(2)), (F(1), F(1)))
    t = MomentTable.from_falling([1, F(1, 2), 0])
    assert t.sieve_terms == (1, F(1, 2), 0)


def test_combinatorial_helpers():
    for n in range(30):
        assert binomial_row(n) == [math.comb(n, j) for j in range(n + 1)]
    f = [j**3 for j in range(8)]
    for m in range(8):
        direct = sum((-1) ** (m - j) * math.comb(m, j) * f[j] for j in range(m + 1))
        assert forward_differences(f, 7)[m] == direct
    assert falling(5, 0) == 1 and falling(5, 2) == 20 and falling(3, 5) == 0


# --- sieve

def test_sieve_examples():
    assert sieve_p_from_s([1, 0, 0]) == ExactDistribution.point_mass(0)
    S = sieve_s_from_p(occupancy_dist(1, 2))
    assert S == [1, F(1, 2)]
    assert sieve_p_from_s([1, F(1, 2), 0]).as_dict() == {0: F(1, 2), 1: F(1, 2)}


def test_sieve_rejects_inconsistent():
    with pytest.raises(ValidationError):
        sieve_p_from_s([1, 3, 0])


@pytest.mark.parametrize("t, l", [(1, 1), (1, 2), (2, 3), (1, 7), (3, 5), (2, 20)])
def test_sieve_round_trip(t, l):
    d = occupancy_dist(t, l)
    assert sieve_p_from_s(sieve_s_from_p(d)) == d
    # S_k = E((Y)_k)/k!
    S = sieve_s_from_p(d)
    for k in range(len(S)):
        assert S[k] * math.factorial(k) == occupancy_moment(t, l, k)


@settings(max_examples=100, deadline=None)
@given(st.lists(st.integers(0, 20), min_size=1, max_size=8), st.integers(0, 6))
def test_sieve_round_trip_arbitrary(weights, shift):
    if not any(weights):
        weights[0] = 1
    total = sum(weights)
    d = ExactDistribution(range(shift, shift + len(weights)), [F(w, total) for w in weights])
    assert sieve_p_from_s(sieve_s_from_p(d)) == d


# --- occupancy

def test_occupancy_moment_examples():
    assert occupancy_moment(3, 4, 0) == 1
    assert occupancy_moment(1, 2, 1) == F(1, 2)
    assert occupancy_moment(2, 2, 1) == F(9, 4)
    with pytest.raises(ValidationError):
        occupancy_moment(1, 2, 3)


def test_occupancy_dist_examples():
    assert occupancy_dist(1, 2).as_dict() == {0: F(1, 2), 1: F(1, 2)}
    assert occupancy_dist(1, 3).prob(2) == F(1, 9)
    for t, l in [(1, 1), (2, 3), (4, 2), (1, 9)]:
        assert occupancy_dist(t, l).prob(t * l) == 0


@pytest.mark.parametrize("t, l", [(t, l) for t in range(1, 6) for l in range(1, 8)
                                  if (t * l) ** l <= 2 * 10**5])
def test_occupancy_matches_enumeration(t, l):
    assert occupancy_dist(t, l).as_dict() == as_probs(occupancy_counts(t, l))


@pytest.mark.parametrize("t, l", [(1, 30), (2, 15), (5, 8), (1, 100)])
def test_occupancy_matches_direct_sum(t, l):
    assert occupancy_dist(t, l).as_dict() == occupancy_formula(t, l)


@pytest.mark.parametrize("t, l", [(1, 5), (2, 7), (3, 40), (1, 200)])
def test_occupancy_moment_consistency(t, l):
    d = occupancy_dist(t, l)
    for k in range(4):
        assert d.falling_moment(k) == occupancy_moment(t, l, k)
    assert moment_table(d, 3) == occupancy_moment_table(t, l, 3)


def test_occupancy_limit():
    with pytest.raises(BudgetError):
        occupancy_dist(1, 2001)
    assert occupancy_dist(1, 50, limit=50).prob(0) > 0


# --- value-set laws

def test_nonzero_branch_examples():
    assert nonzero_branch_valueset_dist(3, 2, 1).prob(3) == F(1, 2)
    d = nonzero_branch_valueset_dist(5, 4, 1)
    assert d.prob(5) == F(3, 32) == F(math.factorial(4), 4**4)
    for q, l in [(7, 6), (13, 4), (31, 5)]:
        assert nonzero_branch_valueset_dist(q, l, 1).prob(1) == 0
    with pytest.raises(ValidationError):
        nonzero_branch_valueset_dist(7, 4, 1)


@pytest.mark.parametrize("q", [3, 5, 7, 11, 13, 17, 23])
def test_nonzero_matches_closed_form(q):
    assert nonzero_branch_valueset_dist(q, q - 1, 1) == closed_form_nonzero_dist(q)


def test_random_poly_moment_examples():
    assert random_poly_moment(7, 3, 1, 0) == 1
    assert random_poly_moment(3, 2, 1, 1) == F(8, 9)
    for q in (5, 11, 101):
        assert random_poly_moment(q, q - 1, 1, 1) == (q - 1) * F(q - 1, q) ** (q - 1)


def test_random_poly_valueset_examples():
    d = random_poly_valueset_dist(3, 2, 1)
    assert d.as_dict() == {1: F(1, 9), 2: F(6, 9), 3: F(2, 9)}
    assert sum(random_poly_valueset_dist(13, 6, 2).probs) == 1


def brute_valueset_law(q, l, r):
    spec = field_for_order(q)
    counts = Counter(len(value_set_brute(CyclotomicMapping(spec, r, l, a)))
                     for a in itertools.product(range(q), repeat=l))
    return as_probs(counts)


@pytest.mark.parametrize("q, l, r", [(3, 2, 1), (4, 3, 1), (5, 2, 1), (5, 4, 2), (7, 3, 1),
                                     (7, 2, 3), (9, 4, 2), (13, 3, 4), (4, 3, 3), (7, 6, 2)])
def test_random_poly_valueset_matches_brute(q, l, r):
    assert random_poly_valueset_dist(q, l, r).as_dict() == brute_valueset_law(q, l, r)


@pytest.mark.parametrize("q", [3, 4, 5, 7, 8, 9, 11, 13, 17, 29, 53, 101])
def test_random_poly_matches_closed_form(q):
    exact = random_poly_valueset_dist(q, q - 1, 1)
    closed = closed_form_valueset_dist(q)
    assert exact.support == closed.support
    assert all(a == b for a, b in zip(exact.probs, closed.probs))


@pytest.mark.parametrize("q, l, r", [(7, 6, 1), (13, 4, 2), (31, 10, 3), (101, 100, 1)])
def test_random_poly_moment_consistency(q, l, r):
    y = random_poly_missing_dist(q, l, r)
    for k in (1, 2):
        assert y.falling_moment(k) == random_poly_moment(q, l, r, k)
    table = random_poly_moment_table(q, l, r, 2)
    assert table.mean() == y.mean() and table.variance() == y.variance()
    s, t = (q - 1) // l, math.gcd(r, (q - 1) // l)
    x = random_poly_valueset_dist(q, l, r)
    assert x == y.map(lambda k: 1 + s * (t * l - k) // t)


# --- asymptotics

def test_asymptotic_occupancy_examples():
    p = asymptotic_params_occupancy(1, 1000)
    assert p.mu == pytest.approx(1000 / math.e, abs=1e-9)
    assert round(p.mu, 3) == 367.879
    assert p.sigma2 == pytest.approx(math.exp(-2) * (math.e - 2) * 1000, rel=1e-12)
    assert p.s_n == pytest.approx((p.sigma2 - p.mu) / p.mu**2)
    with pytest.warns(UserWarning, match="t\\^5"):
        p = asymptotic_params_occupancy(10, 1000)
    assert not p.hypotheses_ok
    with warnings.catch_warnings():
        warnings.simplefilter("error")
        assert asymptotic_params_occupancy(1, 10**6).hypotheses_ok


def test_asymptotic_random_poly_examples():
    p = asymptotic_params_random_poly(10007)
    assert p.mu == pytest.approx(10007 / math.e, rel=1e-15)
    assert round(p.mu, 2) == 3681.37
    assert p.sigma2 / 10007 == pytest.approx(math.exp(-1) - 2 * math.exp(-2), rel=1e-12)
    assert abs(p.sigma2 / 10007 - 0.09720) < 1e-5
    assert asymptotic_params_random_poly(10**6).mu / 10**6 == pytest.approx(1 / math.e)


def test_small_valueset_examples():
    for q in (5, 11, 101):
        assert small_valueset_asymptotic(q, 0) == pytest.approx(q ** -(q - 1), rel=1e-9)
    ratios = []
    for q in (101, 499, 997):
        exact = random_poly_valueset_dist(q, q - 1, 1).prob(4)
        ratios.append(math.exp(math.log(exact.numerator) - math.log(exact.denominator)
                               - log_small_valueset_asymptotic(q, 3)))
    assert abs(ratios[0] - 1) < 0.05
    assert all(abs(b - 1) < abs(a - 1) for a, b in zip(ratios, ratios[1:]))
    assert abs(ratios[-1] - 1) < 0.05


@pytest.mark.parametrize("t", [10**4, 10**5, 10**6])
def test_single_ball_large_t(t):
    # one ball in t boxes leaves exactly t - 1 empty
    assert occupancy_dist(t, 1, limit=t) == ExactDistribution.point_mass(t - 1)
    assert enumerate_occupancy(t, 1).to_exact() == ExactDistribution.point_mass(t - 1)
