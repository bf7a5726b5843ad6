"""Verification harness: exhaustive oracles, seeded samplers, diagnostics."""

from .bounds import BoundReport, check_bounds
from .empirical import EmpiricalDistribution, merge
from .enumerate import (enumerate_branch_tuples, enumerate_occupancy, enumerate_union,
                        roundtrip_exhaustive, roundtrip_mismatches)
from .sample import roundtrip_random, sample_occupancy, sample_union, sample_valueset
from .seeds import Seed, trial_generator
from .stats import check_normality_hypotheses, ks_normal, normal_cdf, tv_distance

__all__ = [
    "BoundReport", "EmpiricalDistribution", "Seed", "check_bounds",
    "check_normality_hypotheses", "enumerate_branch_tuples", "enumerate_occupancy",
    "enumerate_union", "ks_normal", "merge", "normal_cdf", "roundtrip_exhaustive",
    "roundtrip_mismatches", "roundtrip_random", "sample_occupancy", "sample_union",
    "sample_valueset", "trial_generator", "tv_distance",
]
