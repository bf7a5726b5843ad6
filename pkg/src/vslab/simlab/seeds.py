"""Counter-based per-trial random streams.

Trial ``i`` under master seed ``m`` draws from a Philox generator keyed by
``m`` with the trial index in the third counter word, so its draws never
depend on which worker runs it or in what order.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from ..errors import ValidationError

MASK64 = (1 << 64) - 1


@dataclass(frozen=True)
class Seed:
    master: int

    def __post_init__(self):
        if not 0 <= self.master <= MASK64:
            raise ValidationError(f"seed {self.master} is not a 64-bit unsigned integer")

    def generator(self, trial):
        return trial_generator(self.master, trial)


def trial_generator(master, trial):
    if trial < 0:
        raise ValidationError(f"trial index {trial} must be nonnegative")
    bits = np.random.Philox(key=master & MASK64, counter=[0, 0, trial, 0])
    return np.random.Generator(bits)


def as_seed(seed):
    return seed if isinstance(seed, Seed) else Seed(int(seed))
