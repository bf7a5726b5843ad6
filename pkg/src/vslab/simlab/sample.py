"""Seeded Monte Carlo samplers.

Every trial draws from its own counter-based stream (see :mod:`.seeds`) and
trials are grouped into fixed chunks, so counts are identical for any
number of workers.
"""

from __future__ import annotations

import numpy as np

from ..errors import ValidationError
from ..field import field_for_order
from ..kernels import count_distinct, rows_per_chunk, value_set_sizes
from .empirical import EmpiricalDistribution, merge
from .enumerate import _branch_shape, _tally, roundtrip_mismatches
from .parallel import chunk_ranges, run_tasks
from .seeds import as_seed, trial_generator


def _check_trials(trials):
    if trials < 0:
        raise ValidationError(f"trials={trials} must be nonnegative")


def _draw_rows(master, start, stop, draw):
    return np.stack([draw(trial_generator(master, i)) for i in range(start, stop)])


def _run(chunk_fn, args, trials, width, seed, workers):
    _check_trials(trials)
    master = as_seed(seed).master
    tasks = [(*args, master, a, b) for a, b in chunk_ranges(trials, rows_per_chunk(width))]
    return merge(run_tasks(chunk_fn, tasks, workers))


# --- value sets

def _valueset_chunk(q, l, r, nonzero_only, master, start, stop):
    spec = field_for_order(q)
    lo = 1 if nonzero_only else 0
    rows = _draw_rows(master, start, stop, lambda g: g.integers(lo, q, size=l))
    return _tally(value_set_sizes(spec, l, r, rows), q + 1)


def sample_valueset(q, l, r=1, trials=0, seed=0, nonzero_only=False, workers=1):
    """Value-set sizes of ``trials`` mappings with independent uniform branches."""
    _branch_shape(q, l, r)
    return _run(_valueset_chunk, (q, l, r, nonzero_only), trials, l, seed, workers)


# --- occupancy

def _occupancy_chunk(t, l, master, start, stop):
    boxes = t * l
    rows = _draw_rows(master, start, stop, lambda g: g.integers(0, boxes, size=l))
    return _tally(boxes - count_distinct(rows, boxes), boxes + 1)


def sample_occupancy(t, l, trials=0, seed=0, workers=1):
    """Empty-box counts for ``l`` balls thrown into ``t*l`` boxes."""
    if t < 1 or l < 1:
        raise ValidationError(f"t={t} and l={l} must be positive")
    return _run(_occupancy_chunk, (t, l), trials, t * l, seed, workers)


# --- unions

def random_subset(gen, n, m):
    """Uniform ``m``-subset of ``range(n)``: the first ``m`` positions of a
    stable argsort of ``n`` uniform keys."""
    return np.argsort(gen.random(n), kind="stable")[:m]


def _union_draw(n, sizes):
    def draw(gen):
        hit = np.zeros(n, dtype=bool)
        for m in sizes:
            hit[random_subset(gen, n, m)] = True
        return np.array([hit.sum()])
    return draw


def _union_chunk(n, sizes, master, start, stop):
    rows = _draw_rows(master, start, stop, _union_draw(n, sizes))
    return _tally(rows[:, 0], n + 1)


def sample_union(model, trials=0, seed=0, workers=1):
    """Union sizes ``|A_1 u ... u A_l|`` of independent uniform subsets."""
    return _run(_union_chunk, (model.n, model.sizes), trials, model.n * model.l, seed, workers)


# --- random round trips

def _roundtrip_chunk(q, master, start, stop):
    spec = field_for_order(q)
    coeffs = np.zeros((stop - start, q), dtype=np.int64)
    coeffs[:, 1:] = _draw_rows(master, start, stop, lambda g: g.integers(0, q, size=q - 1))
    bad = roundtrip_mismatches(spec, coeffs)
    return EmpiricalDistribution({0: stop - start - bad, 1: bad})


def roundtrip_random(q, trials, seed=0, workers=1):
    """Mismatch count over ``trials`` random polynomials with ``g(0) = 0``."""
    field_for_order(q)
    table = _run(_roundtrip_chunk, (q,), trials, q, seed, workers)
    return table.counts.get(1, 0), table.trials
