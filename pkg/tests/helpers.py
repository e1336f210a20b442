"""Shared oracle helpers for the test suite.

The oracles here deliberately avoid the package's own special functions:
E1 and erfc are integrated from their defining integrals with adaptive
quadrature, digamma identities come from harmonic sums, and region
probabilities come from 2-D quadrature. Keeping the oracles independent is
what gives the closed-form comparisons teeth.
"""

import math

import numpy as np
from scipy import integrate


def e1_oracle(x: float) -> float:
    """E1(x) by adaptive quadrature of the defining integral on [x, inf)."""
    val, _ = integrate.quad(lambda t: math.exp(-t) / t, x, np.inf,
                            epsabs=1e-300, epsrel=1e-13, limit=400)
    return val


def erfc_oracle(z: float) -> float:
    """erfc(z) by quadrature of the Gaussian integral on [z, inf).

    Works for negative z directly, so the oracle does not share the
    implementation's reflection trick.
    """
    val, _ = integrate.quad(lambda t: math.exp(-t * t), z, np.inf,
                            epsabs=1e-300, epsrel=1e-13, limit=400)
    return 2.0 / math.sqrt(math.pi) * val


def harmonic_number(k: int) -> float:
    """H_k as an exactly-rounded sum of reciprocals."""
    return math.fsum(1.0 / i for i in range(1, k + 1))


def three_sigma(mean_a, se_a, mean_b, se_b=0.0) -> bool:
    """True when two estimates agree within 3 combined standard errors."""
    return abs(mean_a - mean_b) <= 3.0 * math.hypot(se_a, se_b) + 1e-15
