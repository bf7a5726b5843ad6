"""Exhaustive oracles: every assignment, tuple or subset choice, counted exactly."""

from __future__ import annotations

import itertools
import math

import numpy as np

from .. import config
from ..errors import BudgetError, ValidationError
from ..field import field_for_order
from ..kernels import (count_distinct, decode_tuples, from_cyclotomic_rows,
                       rows_per_chunk, to_cyclotomic_rows, value_set_sizes)
from .empirical import EmpiricalDistribution, merge
from .parallel import chunk_ranges, run_tasks


def _check_budget(count, budget, what):
    if count > budget:
        raise BudgetError(f"{what}: {count} cases exceed the enumeration budget {budget}")


def _tally(values, width):
    counts = np.bincount(values, minlength=width)
    return EmpiricalDistribution({i: int(c) for i, c in enumerate(counts) if c})


# --- occupancy

def _occupancy_chunk(t, l, start, stop):
    boxes = t * l
    cells = decode_tuples(boxes, l, start, stop)
    return _tally(boxes - count_distinct(cells, boxes), boxes + 1)


def enumerate_occupancy(t, l, budget=None, workers=1):
    """Empty-box counts over all ``(t*l)**l`` placements of ``l`` balls."""
    if t < 1 or l < 1:
        raise ValidationError(f"t={t} and l={l} must be positive")
    budget = config.enum_budget(config.ENUM_OCCUPANCY_BUDGET) if budget is None else budget
    total = (t * l) ** l
    _check_budget(total, budget, f"occupancy t={t}, l={l}")
    tasks = [(t, l, a, b) for a, b in chunk_ranges(total, rows_per_chunk(l))]
    return merge(run_tasks(_occupancy_chunk, tasks, workers))


# --- branch tuples

def _branch_chunk(q, l, r, nonzero_only, start, stop):
    spec = field_for_order(q)
    base = q - 1 if nonzero_only else q
    rows = decode_tuples(base, l, start, stop, offset=1 if nonzero_only else 0)
    return _tally(value_set_sizes(spec, l, r, rows), q + 1)


def _branch_shape(q, l, r):
    spec = field_for_order(q)
    if l < 1 or (q - 1) % l:
        raise ValidationError(f"l={l} does not divide q-1={q - 1}")
    if r < 1:
        raise ValidationError(f"r={r} must be positive")
    return spec


def enumerate_branch_tuples(q, l, r=1, nonzero_only=False, budget=None, workers=1):
    """Value-set sizes over all branch tuples (from F_q, or F_q^* if ``nonzero_only``)."""
    _branch_shape(q, l, r)
    budget = config.enum_budget(config.ENUM_BRANCH_BUDGET) if budget is None else budget
    total = (q - 1 if nonzero_only else q) ** l
    _check_budget(total, budget, f"branch tuples q={q}, l={l}")
    tasks = [(q, l, r, nonzero_only, a, b) for a, b in chunk_ranges(total, rows_per_chunk(l))]
    return merge(run_tasks(_branch_chunk, tasks, workers))


# --- unions of subsets

def _subset_masks(n, m):
    return np.array([sum(1 << i for i in c) for c in itertools.combinations(range(n), m)],
                    dtype=np.uint64)


def _union_chunk(n, sizes, start, stop):
    masks = [_subset_masks(n, m) for m in sizes]
    idx = np.arange(start, stop, dtype=np.int64)
    acc = np.zeros(len(idx), dtype=np.uint64)
    for table in reversed(masks):
        acc |= table[idx % len(table)]
        idx //= len(table)
    return _tally(np.bitwise_count(acc).astype(np.int64), n + 1)


def enumerate_union(model, budget=None, workers=1):
    """``|A_1 u ... u A_l|`` over every tuple of subsets with the model's sizes."""
    budget = config.enum_budget(config.ENUM_UNION_BUDGET) if budget is None else budget
    if model.n > 63:
        raise BudgetError(f"n={model.n} too large for subset enumeration")
    total = math.prod(math.comb(model.n, m) for m in model.sizes)
    _check_budget(total, budget, f"union n={model.n}, sizes={model.sizes}")
    tasks = [(model.n, model.sizes, a, b) for a, b in chunk_ranges(total, 1 << 20)]
    return merge(run_tasks(_union_chunk, tasks, workers))


# --- interpolation round trip

def roundtrip_mismatches(spec, coeffs):
    """Rows of ``coeffs`` (zero constant term) not restored by the round trip."""
    coeffs = np.asarray(coeffs, dtype=np.int64)
    r, l, branches = to_cyclotomic_rows(spec, coeffs)
    bad = 0
    key = r * spec.q + l
    for k in np.unique(key):
        sel = key == k
        l_val = int(l[sel][0])
        back = from_cyclotomic_rows(spec, l_val, int(r[sel][0]), branches[sel][:, :l_val])
        bad += int((back != coeffs[sel]).any(axis=1).sum())
    return bad


def _roundtrip_chunk(q, start, stop):
    spec = field_for_order(q)
    coeffs = np.zeros((stop - start, q), dtype=np.int64)
    coeffs[:, 1:] = decode_tuples(q, q - 1, start, stop)
    return roundtrip_mismatches(spec, coeffs)


def roundtrip_exhaustive(q, budget=None, workers=1):
    """Mismatch count over all ``q**(q-1)`` polynomials with ``g(0) = 0``."""
    field_for_order(q)
    budget = config.enum_budget(config.ENUM_BRANCH_BUDGET) if budget is None else budget
    total = q ** (q - 1)
    _check_budget(total, budget, f"round trip q={q}")
    tasks = [(q, a, b) for a, b in chunk_ranges(total, 1 << 17)]
    return sum(run_tasks(_roundtrip_chunk, tasks, workers)), total
