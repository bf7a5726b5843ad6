"""Normal-limit parameters and the finite-sample checks on their hypotheses.

The limit theorem needs ``s_n > -1/mu_n`` and ``mu_n = o(sigma_n^3)``; the
second is replaced by the surrogate ``mu^2 / sigma^6 <= threshold``.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from . import config


@dataclass(frozen=True)
class AsymptoticParams:
    mu: float
    sigma2: float
    s_n: float
    flags: dict = field(default_factory=dict)

    @property
    def sigma(self):
        return self.sigma2 ** 0.5

    @property
    def hypotheses_ok(self):
        return all(self.flags.values())


def check_normality_hypotheses(params, threshold=None):
    """Evaluate the two hypothesis surrogates; returns a dict of flags."""
    threshold = config.MU2_SIGMA6_THRESHOLD if threshold is None else threshold
    mu, sigma2, s_n = params.mu, params.sigma2, params.s_n
    positive = sigma2 > 0 and mu > 0
    return {
        "sigma2_positive": positive,
        "s_n_above_minus_inv_mu": positive and s_n > -1.0 / mu,
        "mu2_over_sigma6_small": positive and mu * mu / sigma2**3 <= threshold,
    }


def make_params(mu, sigma2, extra_flags=None, threshold=None):
    """Build params with ``s_n = (sigma2 - mu) / mu^2`` and all flags filled in."""
    s_n = (sigma2 - mu) / (mu * mu) if mu else float("nan")
    base = AsymptoticParams(mu, sigma2, s_n)
    flags = check_normality_hypotheses(base, threshold)
    flags.update(extra_flags or {})
    return AsymptoticParams(mu, sigma2, s_n, flags)
