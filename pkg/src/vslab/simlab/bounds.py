"""Exhaustive check of the value-set bounds for non-permutation polynomials.

For each enumerated mapping, interpolate, read off degree ``d`` and index
``l`` and check

* ``|V| <= q - (q-1)/d`` when g is not a permutation (degree bound);
* ``|V| <= q - (q-1)/l`` when g is not a permutation and has at least two
  nonconstant terms (index bound; the index is not meaningful for monomials);
* ``|V| >= ceil(q/d)`` whenever g is not constant.
"""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass, field

import numpy as np

from .. import config
from ..ntheory import divisors
from ..errors import BudgetError, ValidationError
from ..field import field_for_order
from ..kernels import (decode_tuples, from_cyclotomic_rows, poly_shape_rows,
                       rows_per_chunk, value_set_sizes)
from .parallel import chunk_ranges, run_tasks

RECORD_FIELDS = ("mapping_l", "size", "degree", "index", "is_pp", "terms")


@dataclass
class BoundReport:
    """Aggregated per-instance records and every violation found.

    ``records`` counts instances by ``RECORD_FIELDS``; ``violations`` holds
    ``(rule, mapping_text)`` pairs and is empty for a correct implementation.
    """

    q: int
    r: int
    records: Counter = field(default_factory=Counter)
    violations: list = field(default_factory=list)

    @property
    def instances(self):
        return sum(self.records.values())

    @property
    def ok(self):
        return not self.violations

    def merge(self, other):
        self.records.update(other.records)
        self.violations.extend(other.violations)
        return self


def _violations(q, size, degree, index, terms, is_pp):
    """Boolean masks, one per rule, True where the rule fails."""
    nonconst = terms > 0
    d = np.maximum(degree, 1)
    lx = np.maximum(index, 1)
    return {
        "degree_bound": nonconst & ~is_pp & (size * d > q * d - (q - 1)),
        "index_bound": (terms > 1) & ~is_pp & (size * lx > q * lx - (q - 1)),
        "lower_bound": nonconst & (size * d < q),
    }


def _bounds_chunk(q, l, r, start, stop):
    spec = field_for_order(q)
    branches = decode_tuples(q, l, start, stop)
    size = value_set_sizes(spec, l, r, branches)
    coeffs = from_cyclotomic_rows(spec, l, r, branches)
    degree, _, index, constant = poly_shape_rows(spec, coeffs)
    terms = (coeffs[:, 1:] != 0).sum(axis=1)
    is_pp = size == q
    report = BoundReport(q, r)
    keys = np.stack([size, degree, index, is_pp.astype(np.int64), np.minimum(terms, 2)], axis=1)
    uniq, counts = np.unique(keys, axis=0, return_counts=True)
    for row, c in zip(uniq.tolist(), counts.tolist()):
        report.records[(l, row[0], row[1], row[2], bool(row[3]), row[4])] += c
    for rule, mask in _violations(q, size, degree, index, terms, is_pp).items():
        for i in np.flatnonzero(mask):
            a = ",".join(str(x) for x in branches[i])
            report.violations.append((rule, f"q={q};l={l};r={r};a={a}"))
    return report


def check_bounds(q, l_max=None, r=1, budget=None, workers=1):
    """Run the bound checks over every mapping of index ``l | q-1``, ``l <= l_max``."""
    field_for_order(q)
    if r < 1:
        raise ValidationError(f"r={r} must be positive")
    budget = config.enum_budget(config.ENUM_BRANCH_BUDGET) if budget is None else budget
    ls = [l for l in divisors(q - 1) if l_max is None or l <= l_max]
    total = sum(q**l for l in ls)
    if total > budget:
        raise BudgetError(f"check_bounds q={q}: {total} mappings exceed the budget {budget}")
    tasks = [(q, l, r, a, b) for l in ls for a, b in chunk_ranges(q**l, rows_per_chunk(q))]
    report = BoundReport(q, r)
    for part in run_tasks(_bounds_chunk, tasks, workers):
        report.merge(part)
    return report
