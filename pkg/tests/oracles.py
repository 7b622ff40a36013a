"""Independent arbitrary-precision oracles for expected test values.

Everything here is computed straight from the defining formulas with mpmath
at 60 significant digits, sharing no code with the package under test.
"""

from __future__ import annotations

import mpmath as mp

DPS = 60


def tau_oracle(epsilon: float, rho: float, n: int) -> float:
    """-(1/epsilon) * ln(2 * (1 - rho**(1/n))), evaluated at high precision."""
    with mp.workdps(DPS):
        root = mp.mpf(rho) ** (mp.mpf(1) / n)
        return float(-mp.log(2 * (1 - root)) / mp.mpf(epsilon))


def inclusion_oracle(epsilon: float, rho: float, n: int) -> float:
    """p = (1/2) exp(-epsilon * tau) = 1 - rho**(1/n)."""
    with mp.workdps(DPS):
        return float(1 - mp.mpf(rho) ** (mp.mpf(1) / n))


def expected_injected_oracle(epsilon: float, rho: float, n: int) -> float:
    """Mean of Binomial(n, p): n * (1 - rho**(1/n))."""
    with mp.workdps(DPS):
        return float(n * (1 - mp.mpf(rho) ** (mp.mpf(1) / n)))


def injected_sd_oracle(epsilon: float, rho: float, n: int) -> float:
    """Standard deviation of Binomial(n, p)."""
    with mp.workdps(DPS):
        p = 1 - mp.mpf(rho) ** (mp.mpf(1) / n)
        return float(mp.sqrt(n * p * (1 - p)))


def survival_oracle(count: float, epsilon: float, rho: float, n: int) -> float:
    """P(Laplace(count, 1/epsilon) >= tau(epsilon, rho, n))."""
    with mp.workdps(DPS):
        eps = mp.mpf(epsilon)
        t = -mp.log(2 * (1 - mp.mpf(rho) ** (mp.mpf(1) / n))) / eps
        gap = eps * (mp.mpf(count) - t)
        if gap >= 0:
            return float(1 - mp.exp(-gap) / 2)
        return float(mp.exp(gap) / 2)
