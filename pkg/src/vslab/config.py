"""Size caps and diagnostic thresholds.

Every cap can be overridden per call. ``VSLAB_BUDGET`` in the environment
replaces the enumeration caps (not the table or exact-mode limits).
"""

import os

FIELD_TABLE_LIMIT = 10**6

EXACT_OCCUPANCY_LIMIT = 2000  # max t*l for exact occupancy distributions
EXACT_UNION_LIMIT = 2000  # max n for exact union distributions

ENUM_OCCUPANCY_BUDGET = 10**7
ENUM_BRANCH_BUDGET = 10**8
ENUM_UNION_BUDGET = 10**6

# finite-sample surrogates for the little-o hypotheses
MU2_SIGMA6_THRESHOLD = 0.01
UNION_MAX_U_TIMES_L = 10.0
UNION_MIN_SUM_U = 0.1


def enum_budget(default):
    """Return the enumeration cap, honouring ``VSLAB_BUDGET`` if set."""
    raw = os.environ.get("VSLAB_BUDGET")
    if raw:
        return int(raw)
    return default
