"""Count tables from enumeration or sampling."""

from __future__ import annotations

from collections import Counter
from fractions import Fraction

import numpy as np

from ..dist import ExactDistribution
from ..errors import ValidationError


class EmpiricalDistribution:
    """Counts per support value over ``trials`` outcomes.

    Frequencies are exact rationals ``count / trials``. Merging two tables
    adds counts, so any split of the work gives the same result.
    """

    __slots__ = ("counts", "trials")

    def __init__(self, counts=None, trials=None):
        counts = Counter({int(k): int(v) for k, v in dict(counts or {}).items() if v})
        if any(v < 0 for v in counts.values()):
            raise ValidationError("negative count")
        total = sum(counts.values())
        if trials is not None and trials != total:
            raise ValidationError(f"counts sum to {total}, expected {trials}")
        self.counts = dict(sorted(counts.items()))
        self.trials = total

    @classmethod
    def from_values(cls, values):
        values = np.asarray(values, dtype=np.int64).ravel()
        if values.size == 0:
            return cls()
        lo = int(values.min())
        bins = np.bincount(values - lo)
        return cls({lo + i: int(c) for i, c in enumerate(bins) if c})

    @property
    def support(self):
        return tuple(self.counts)

    def freq(self, x):
        if not self.trials:
            raise ValidationError("empty distribution has no frequencies")
        return Fraction(self.counts.get(x, 0), self.trials)

    def rows(self):
        """``(support, count, freq_num, freq_den)`` with the frequency reduced."""
        out = []
        for x, c in self.counts.items():
            f = Fraction(c, self.trials)
            out.append((x, c, f.numerator, f.denominator))
        return out

    def to_exact(self):
        if not self.trials:
            raise ValidationError("empty distribution")
        return ExactDistribution(self.counts, [Fraction(c, self.trials) for c in self.counts.values()])

    def mean(self):
        return self.to_exact().mean()

    def variance(self):
        return self.to_exact().variance()

    def values(self):
        """All outcomes as a sorted array (for KS statistics)."""
        return np.repeat(np.array(list(self.counts), dtype=np.int64),
                         np.array(list(self.counts.values()), dtype=np.int64))

    def map(self, fn):
        out = Counter()
        for x, c in self.counts.items():
            out[fn(x)] += c
        return EmpiricalDistribution(out)

    def __add__(self, other):
        merged = Counter(self.counts)
        merged.update(other.counts)
        return EmpiricalDistribution(merged)

    def __eq__(self, other):
        if not isinstance(other, EmpiricalDistribution):
            return NotImplemented
        return self.counts == other.counts

    def __repr__(self):
        return f"EmpiricalDistribution(trials={self.trials}, counts={self.counts})"


def merge(tables):
    out = Counter()
    for t in tables:
        out.update(t.counts)
    return EmpiricalDistribution(out)
