"""Size of the union of independent uniformly random subsets of an n-set.

Set ``i`` is a uniform ``m_i``-subset of ``{1..n}``. ``X`` is the size of
the union and ``Y = n - X`` the number of uncovered points.
"""

from __future__ import annotations

import math
from collections import Counter
from dataclasses import dataclass
from fractions import Fraction

from . import config
from .asymptotic import make_params
from .dist import ExactDistribution, MomentTable, binomial_row, falling, forward_differences
from .errors import BudgetError, ValidationError


@dataclass(frozen=True)
class UnionModel:
    n: int
    sizes: tuple

    def __post_init__(self):
        sizes = tuple(int(m) for m in self.sizes)
        if self.n < 1:
            raise ValidationError(f"n={self.n} must be positive")
        if not sizes:
            raise ValidationError("need at least one set size")
        bad = [m for m in sizes if not 1 <= m <= self.n]
        if bad:
            raise ValidationError(f"set sizes {bad} outside [1, {self.n}]")
        object.__setattr__(self, "sizes", sizes)

    @property
    def l(self):
        return len(self.sizes)

    @property
    def u(self):
        return tuple(m / self.n for m in self.sizes)


def parse_sizes(text):
    """``"2,3,3"`` or the shorthand ``"5x10"`` (ten sets of size 5)."""
    text = text.strip().replace("×", "x").replace("X", "x")
    try:
        if "x" in text:
            m, _, count = text.partition("x")
            return (int(m),) * int(count)
        return tuple(int(tok) for tok in text.split(",") if tok.strip())
    except ValueError:
        raise ValidationError(f"cannot parse set sizes {text!r}") from None


def union_moment(model, k):
    """``E((Y)_k) = (n)_k prod_j (n - m_j)_k / (n)_k``."""
    n = model.n
    if not 0 <= k <= n:
        raise ValidationError(f"k={k} outside [0, {n}]")
    nk = falling(n, k)
    out = Fraction(nk)
    for m in model.sizes:
        out *= Fraction(falling(n - m, k), nk)
    return out


def union_moment_table(model, k_max):
    return MomentTable.from_falling(union_moment(model, k) for k in range(k_max + 1))


def union_dist(model, limit=None):
    """Exact law of ``X = |A_1 u ... u A_l|``.

    ``P(X = i) = C(n, i) sum_h (-1)^h C(i, h) prod_j C(i-h, m_j) / C(n, m_j)``;
    the inner sum is the i-th forward difference at 0 of
    ``x -> prod_j C(x, m_j)``.
    """
    n = model.n
    limit = config.EXACT_UNION_LIMIT if limit is None else limit
    if n > limit:
        raise BudgetError(f"n={n} exceeds the exact-mode limit {limit}")
    covered = [1] * (n + 1)
    denom = 1
    for m, mult in Counter(model.sizes).items():
        for x in range(n + 1):
            covered[x] *= math.comb(x, m) ** mult
        denom *= math.comb(n, m) ** mult
    diffs = forward_differences(covered, n)
    outer = binomial_row(n)
    return ExactDistribution(range(n + 1),
                             [Fraction(outer[i] * diffs[i], denom) for i in range(n + 1)])


def bp_moments(n, m, l):
    """Mean and variance of the union size for ``l`` sets all of size ``m``.

    The variance goes through the uncovered count:
    ``V(X) = V(Y) = E(Y(Y-1)) + E(Y) - E(Y)^2``.
    """
    UnionModel(n, (m,) * l)
    miss = Fraction(n - m, n) ** l
    mean_x = n * (1 - miss)
    mean_y = n - mean_x
    if n == 1:
        pair = Fraction(0)
    else:
        pair = n * (n - 1) * miss * Fraction(n - 1 - m, n - 1) ** l
    return mean_x, pair + mean_y - mean_y * mean_y


def variance_with_x_mean(n, m, l):
    """``E(Y(Y-1)) - E(X)^2 + E(X)``: the variance identity with the mean of X
    substituted for the mean of Y. Not a variance (it is -17/3 at n=4, m=2,
    l=2); kept so the discrepancy stays visible and testable."""
    mean_x, var = bp_moments(n, m, l)
    mean_y = n - mean_x
    pair = var - mean_y + mean_y * mean_y
    return pair - mean_x * mean_x + mean_x


def union_asymptotic(model, max_u_times_l=None, min_sum_u=None, threshold=None):
    """Normal-limit parameters of the uncovered count Y.

    ``mu = n prod(1 - u_i)``, ``sigma^2 = n (1 - (1 + sum u_i) prod(1 - u_i)) prod(1 - u_i)``.
    """
    max_ul = config.UNION_MAX_U_TIMES_L if max_u_times_l is None else max_u_times_l
    min_su = config.UNION_MIN_SUM_U if min_sum_u is None else min_sum_u
    u = model.u
    prod = math.prod(1.0 - x for x in u)
    mu = model.n * prod
    sigma2 = model.n * (1.0 - (1.0 + sum(u)) * prod) * prod
    flags = {
        "u_times_l_bounded": max(u) * model.l <= max_ul,
        "sum_u_above_c": sum(u) >= min_su,
    }
    return make_params(mu, sigma2, flags, threshold)
