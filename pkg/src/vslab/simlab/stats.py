"""Distances between distributions and a KS check against the normal law."""

from __future__ import annotations

import math
from fractions import Fraction

import numpy as np

from ..asymptotic import check_normality_hypotheses  # noqa: F401  (re-export)
from ..dist import ExactDistribution
from ..errors import ValidationError
from .empirical import EmpiricalDistribution

KS_MIN_SAMPLES = 100


def _probabilities(d):
    if isinstance(d, EmpiricalDistribution):
        d = d.to_exact()
    if isinstance(d, ExactDistribution):
        return d.as_dict()
    return {int(k): Fraction(v) for k, v in dict(d).items()}


def tv_distance(a, b):
    """``(1/2) sum |a_k - b_k|`` as an exact rational."""
    pa, pb = _probabilities(a), _probabilities(b)
    keys = set(pa) | set(pb)
    zero = Fraction(0)
    return sum((abs(pa.get(k, zero) - pb.get(k, zero)) for k in keys), zero) / 2


def normal_cdf(x):
    return 0.5 * math.erfc(-x / math.sqrt(2.0))


def ks_normal(samples, mu, sigma):
    """Kolmogorov-Smirnov statistic of ``(samples - mu) / sigma`` against N(0, 1).

    ``samples`` is an array or an :class:`EmpiricalDistribution`. Ties are
    handled exactly: the empirical CDF is compared with the normal CDF on
    both sides of every jump.
    """
    if not sigma > 0:
        raise ValidationError(f"sigma={sigma} must be positive")
    if isinstance(samples, EmpiricalDistribution):
        values = np.array(samples.support, dtype=np.float64)
        counts = np.array(list(samples.counts.values()), dtype=np.int64)
    else:
        values, counts = np.unique(np.asarray(samples, dtype=np.float64), return_counts=True)
    n = int(counts.sum())
    if n < KS_MIN_SAMPLES:
        raise ValidationError(f"need at least {KS_MIN_SAMPLES} samples, got {n}")
    upper = np.cumsum(counts) / n
    lower = upper - counts / n
    cdf = np.array([normal_cdf((v - mu) / sigma) for v in values])
    return float(max(np.abs(upper - cdf).max(), np.abs(lower - cdf).max()))
