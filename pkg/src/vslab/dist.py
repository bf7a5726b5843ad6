"""Exact value-set and occupancy distributions as big-integer rationals.

Two random models over a mapping of index ``l`` with ``s = (q-1)/l`` and
``t = gcd(r, s)``:

* nonzero branches (each ``a_i`` uniform on F_q^*): the ``l`` branches drop
  into ``t*l`` equally likely image cosets, i.e. ``l`` balls into ``t*l``
  boxes, and ``|V| = 1 + (s/t) * (t*l - Y)`` with ``Y`` the empty boxes;
* all branches (each ``a_i`` uniform on F_q): a branch is zero with
  probability ``1/q`` and otherwise lands in each coset with probability
  ``s/(t*q)``.

The alternating sums cancel catastrophically in floating point, so every
closed form here is evaluated with integers and :class:`fractions.Fraction`.
"""

from __future__ import annotations

import math
import warnings
from dataclasses import dataclass
from fractions import Fraction
from math import comb, gcd

from . import config
from .asymptotic import make_params
from .errors import BudgetError, ValidationError


class ExactDistribution:
    """Finite integer-valued distribution with exact rational probabilities.

    Zero-probability points are dropped, so ``support`` lists exactly the
    values with positive mass; :meth:`prob` returns 0 elsewhere.
    """

    __slots__ = ("support", "probs", "_index")

    def __init__(self, support, probs):
        pairs = {}
        for x, pr in zip(support, probs):
            pr = Fraction(pr)
            if pr < 0:
                raise ValidationError(f"negative probability {pr} at {x}")
            if pr:
                pairs[int(x)] = pairs.get(int(x), Fraction(0)) + pr
        total = sum(pairs.values(), Fraction(0))
        if total != 1:
            raise ValidationError(f"probabilities sum to {total}, not 1")
        self.support = tuple(sorted(pairs))
        self.probs = tuple(pairs[x] for x in self.support)
        self._index = pairs

    @classmethod
    def from_mapping(cls, mapping):
        items = sorted(mapping.items())
        return cls([x for x, _ in items], [p for _, p in items])

    @classmethod
    def point_mass(cls, x):
        return cls([x], [1])

    def prob(self, x):
        return self._index.get(x, Fraction(0))

    def items(self):
        return zip(self.support, self.probs)

    def as_dict(self):
        return dict(self._index)

    def map(self, fn):
        """Distribution of ``fn(X)``."""
        out = {}
        for x, pr in self.items():
            y = fn(x)
            out[y] = out.get(y, Fraction(0)) + pr
        return ExactDistribution.from_mapping(out)

    def expectation(self, fn):
        return sum((pr * fn(x) for x, pr in self.items()), Fraction(0))

    def mean(self):
        return self.expectation(lambda x: x)

    def variance(self):
        mu = self.mean()
        return self.expectation(lambda x: (x - mu) ** 2)

    def falling_moment(self, k):
        return self.expectation(lambda x: falling(x, k))

    def __eq__(self, other):
        if not isinstance(other, ExactDistribution):
            return NotImplemented
        return self.support == other.support and self.probs == other.probs

    def __len__(self):
        return len(self.support)

    def __repr__(self):
        body = ", ".join(f"{x}: {p}" for x, p in self.items())
        return f"ExactDistribution({{{body}}})"


@dataclass(frozen=True)
class MomentTable:
    """Falling-factorial moments ``E((Y)_k)`` and sieve terms ``S_k``, k = 0..k_max."""

    k_max: int
    falling_moments: tuple
    sieve_terms: tuple

    def __post_init__(self):
        if len(self.falling_moments) != self.k_max + 1 or len(self.sieve_terms) != self.k_max + 1:
            raise ValidationError("moment table length does not match k_max")
        if self.sieve_terms and self.sieve_terms[0] != 1:
            raise ValidationError(f"S_0 = {self.sieve_terms[0]}, expected 1")
        for k, (em, sk) in enumerate(zip(self.falling_moments, self.sieve_terms)):
            if em != math.factorial(k) * sk:
                raise ValidationError(f"E((Y)_{k}) != {k}! S_{k}")

    @classmethod
    def from_falling(cls, moments):
        moments = tuple(Fraction(m) for m in moments)
        sieve = tuple(m / math.factorial(k) for k, m in enumerate(moments))
        return cls(len(moments) - 1, moments, sieve)

    def mean(self):
        return self.falling_moments[1]

    def variance(self):
        # V(Y) = E(Y(Y-1)) + E(Y) - E(Y)^2
        e1, e2 = self.falling_moments[1], self.falling_moments[2]
        return e2 + e1 - e1 * e1


def binomial_row(n, m=None):
    """``[C(n, 0), ..., C(n, m)]`` (``m = n`` by default) by the multiplicative recurrence."""
    m = n if m is None else min(m, n)
    row = [1] * (m + 1)
    c = 1
    for j in range(m):
        c = c * (n - j) // (j + 1)
        row[j + 1] = c
    return row


def forward_differences(values, m_max):
    """``[D^m f(0) for m in 0..m_max]`` where ``f(j) = values[j]``.

    ``D^m f(0) = sum_{j<=m} (-1)^(m-j) C(m, j) f(j)``; the difference table
    gets there with subtractions only.
    """
    row = list(values[:m_max + 1])
    out = []
    for _ in range(m_max + 1):
        out.append(row[0])
        row = [b - a for a, b in zip(row, row[1:])]
    return out


def falling(n, k):
    """Falling factorial ``n (n-1) ... (n-k+1)``."""
    out = 1
    for i in range(k):
        out *= n - i
    return out


def moment_table(dist, k_max):
    return MomentTable.from_falling(dist.falling_moment(k) for k in range(k_max + 1))


# --- sieve transforms

def _common_denominator(values):
    den = 1
    for v in values:
        den = den * v.denominator // gcd(den, v.denominator)
    return den, [v.numerator * (den // v.denominator) for v in values]


def _taylor_shift(coeffs, c):
    """Coefficients of ``A(z + c)`` from those of ``A(z)`` (c = +-1), by Horner."""
    out = []
    for x in reversed(coeffs):
        if not out:
            out = [x]
            continue
        if c > 0:
            mid = [a + b for a, b in zip(out, out[1:])]
            out = [x + out[0]] + mid + [out[-1]]
        else:
            mid = [a - b for a, b in zip(out, out[1:])]
            out = [x - out[0]] + mid + [out[-1]]
    return out


def sieve_s_from_p(dist):
    """``S_k = sum_h C(h, k) P(Y = h)`` for ``k = 0 .. max(support)``."""
    if dist.support and dist.support[0] < 0:
        raise ValidationError("sieve transform needs a nonnegative support")
    n = dist.support[-1] if dist.support else 0
    den, nums = _common_denominator(dist.probs)
    dense = [0] * (n + 1)
    for h, num in zip(dist.support, nums):
        dense[h] = num
    # sum_k S_k z^k = sum_h P_h (z + 1)^h
    return [Fraction(a, den) for a in _taylor_shift(dense, 1)]


def sieve_p_from_s(S):
    """``P(Y = k) = sum_{h >= k} (-1)^(h-k) C(h, k) S_h``."""
    S = [Fraction(x) for x in S]
    den, nums = _common_denominator(S)
    acc = _taylor_shift(nums, -1)
    for k, a in enumerate(acc):
        if a < 0:
            raise ValidationError(f"sieve terms are inconsistent: P(Y={k}) = {Fraction(a, den)} < 0")
    return ExactDistribution(range(len(acc)), [Fraction(a, den) for a in acc])


# --- nonzero branches: occupancy

def _check_tl(t, l):
    if t < 1 or l < 1:
        raise ValidationError(f"need t >= 1 and l >= 1, got t={t}, l={l}")


def occupancy_moment(t, l, k):
    """``E((Y)_k) = (tl)_k ((tl - k)/tl)^l`` for Y empty boxes, l balls, tl boxes."""
    _check_tl(t, l)
    n = t * l
    if not 0 <= k <= n:
        raise ValidationError(f"k={k} outside [0, {n}]")
    return Fraction(falling(n, k) * (n - k) ** l, n**l)


def occupancy_dist(t, l, limit=None):
    """Exact law of the number of empty boxes (l labeled balls into tl boxes)."""
    _check_tl(t, l)
    n = t * l
    limit = config.EXACT_OCCUPANCY_LIMIT if limit is None else limit
    if n > limit:
        raise BudgetError(f"t*l={n} exceeds the exact-mode limit {limit}")
    # the m-th difference of a degree-l polynomial vanishes for m > l, so
    # only k >= n - l carries mass and C(n, k) = C(n, n-k) is needed for n-k <= l
    top = min(n, l)
    diffs = forward_differences([j**l for j in range(top + 1)], top)
    return _empty_count_dist(n, binomial_row(n, top), diffs, n**l)


def _empty_count_dist(n, binom, diffs, denom):
    """``P(Y = n - m) = C(n, m) diffs[m] / denom`` for ``m < len(diffs)``."""
    ks = [n - m for m in range(len(diffs))]
    probs = [Fraction(binom[m] * diffs[m], denom) for m in range(len(diffs))]
    return ExactDistribution(ks, probs)


def _shape(q, l, r):
    if q < 2:
        raise ValidationError(f"q={q} must be at least 2")
    if l < 1 or (q - 1) % l:
        raise ValidationError(f"l={l} does not divide q-1={q - 1}")
    if r < 1:
        raise ValidationError(f"r={r} must be positive")
    s = (q - 1) // l
    return s, gcd(r, s)


def nonzero_branch_valueset_dist(q, l, r, limit=None):
    """Law of ``|V_g|`` when every branch coefficient is uniform on F_q^*."""
    s, t = _shape(q, l, r)
    n = t * l
    return occupancy_dist(t, l, limit).map(lambda y: 1 + (s // t) * (n - y))


def closed_form_nonzero_dist(q):
    """``P(|V| = h+1) = (q-1)^-(q-1) C(q-1, h) sum_j (-1)^(h-j) C(h, j) j^(q-1)``.

    The ``l = q-1`` case written out separately, as an independent route.
    """
    n = q - 1
    probs = []
    for h in range(n + 1):
        acc = sum((-1) ** (h - j) * comb(h, j) * j**n for j in range(1, h + 1))
        probs.append(Fraction(comb(n, h) * acc, n**n))
    return ExactDistribution([h + 1 for h in range(n + 1)], probs)


# --- all branches: random polynomials

def random_poly_moment(q, l, r, k):
    """``E((Y)_k) = (tl)_k (1 - sk/(tq))^l``, Y the missing nonzero cosets."""
    s, t = _shape(q, l, r)
    n = t * l
    if not 0 <= k <= n:
        raise ValidationError(f"k={k} outside [0, {n}]")
    return Fraction(falling(n, k) * (t * q - s * k) ** l, (t * q) ** l)


def random_poly_missing_dist(q, l, r, limit=None):
    """Law of Y, the number of index-tl cosets missing from the value set."""
    s, t = _shape(q, l, r)
    n = t * l
    limit = config.EXACT_OCCUPANCY_LIMIT if limit is None else limit
    if n > limit:
        raise BudgetError(f"t*l={n} exceeds the exact-mode limit {limit}")
    top = min(n, l)
    diffs = forward_differences([(t + s * j) ** l for j in range(top + 1)], top)
    return _empty_count_dist(n, binomial_row(n, top), diffs, (t * q) ** l)


def random_poly_valueset_dist(q, l, r, limit=None):
    """``P(|V| = 1 + ks/t) = C(tl, k) sum_{j<=k} (-1)^(k-j) C(k, j) ((t + sj)/(tq))^l``."""
    s, t = _shape(q, l, r)
    n = t * l
    limit = config.EXACT_OCCUPANCY_LIMIT if limit is None else limit
    if n > limit:
        raise BudgetError(f"t*l={n} exceeds the exact-mode limit {limit}")
    top = min(n, l)
    denom = (t * q) ** l
    binom = binomial_row(n, top)
    diffs = forward_differences([(t + s * j) ** l for j in range(top + 1)], top)
    sizes = [1 + k * s // t for k in range(top + 1)]
    return ExactDistribution(sizes, [Fraction(binom[k] * diffs[k], denom) for k in range(top + 1)])


def closed_form_valueset_dist(q):
    """``P(|V| = k+1) = C(q-1, k) sum_j (-1)^(k-j) C(k, j) ((1+j)/q)^(q-1)``."""
    n = q - 1
    probs = []
    for k in range(n + 1):
        acc = sum((-1) ** (k - j) * comb(k, j) * (1 + j) ** n for j in range(k + 1))
        probs.append(Fraction(comb(n, k) * acc, q**n))
    return ExactDistribution([k + 1 for k in range(n + 1)], probs)


def occupancy_moment_table(t, l, k_max):
    return MomentTable.from_falling(occupancy_moment(t, l, k) for k in range(k_max + 1))


def random_poly_moment_table(q, l, r, k_max):
    return MomentTable.from_falling(random_poly_moment(q, l, r, k) for k in range(k_max + 1))


# --- asymptotics (floats only from here on)

def asymptotic_params_occupancy(t, l, threshold=None, warn=True):
    """Normal-limit mean and variance of the empty-box count.

    ``mu = t e^{-1/t} l`` and ``sigma^2 = t e^{-2/t} (e^{1/t} - 1 - 1/t) l``.
    The limit is only proven for ``t = o(l^{1/5})``; ``t**5 < l`` stands in.
    """
    _check_tl(t, l)
    mu = t * math.exp(-1.0 / t) * l
    sigma2 = t * math.exp(-2.0 / t) * (math.exp(1.0 / t) - 1.0 - 1.0 / t) * l
    t5_ok = t**5 < l
    if warn and not t5_ok:
        warnings.warn(f"t^5 = {t**5} >= l = {l}: outside the proven normal regime",
                      stacklevel=2)
    return make_params(mu, sigma2, {"t5_below_l": t5_ok}, threshold)


def asymptotic_params_random_poly(q, threshold=None):
    """``mu = q/e``, ``sigma^2 = (e^-1 - 2 e^-2) q`` for the missing-value count."""
    if q < 2:
        raise ValidationError(f"q={q} must be at least 2")
    mu = q / math.e
    sigma2 = (math.exp(-1.0) - 2.0 * math.exp(-2.0)) * q
    return make_params(mu, sigma2, None, threshold)


def log_small_valueset_asymptotic(q, k):
    """Natural log of ``(1/k!) (q-1)^k ((k+1)/q)^(q-1)``."""
    if q < 2:
        raise ValidationError(f"q={q} must be at least 2")
    if not 0 <= k <= q - 1:
        raise ValidationError(f"k={k} outside [0, {q - 1}]")
    out = -math.lgamma(k + 1) + (q - 1) * math.log((k + 1) / q)
    if k:
        out += k * math.log(q - 1)
    return out


def small_valueset_asymptotic(q, k):
    """Asymptotic ``P(|V| = k+1)`` for small k; underflows to 0.0 for large q,
    where :func:`log_small_valueset_asymptotic` should be used instead."""
    return math.exp(log_small_valueset_asymptotic(q, k))


def log_fraction(x):
    """Natural log of a positive Fraction too small or large for a float."""
    return math.log(x.numerator) - math.log(x.denominator)
