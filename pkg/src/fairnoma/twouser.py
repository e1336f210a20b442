"""Two-user downlink NOMA system model.

Instantaneous OMA/NOMA capacities for an ordered pair of channel SNR gains,
the fair power-allocation region [a_inf, a_sup] in which NOMA beats OMA for
both users simultaneously, and the high-SNR capacity approximations. All
rates are in b/s/Hz; the transmit SNR ``xi`` is linear (dB conversion happens
only at the CLI boundary).
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import NamedTuple

from .errors import DomainError

_LN2 = math.log(2.0)


def _require_positive(name: str, value: float) -> None:
    if not (math.isfinite(value) and value > 0.0):
        raise DomainError(f"{name} must be positive and finite, got {value!r}")


@dataclass(frozen=True)
class SystemParams:
    """Link-level parameters shared by every operation.

    ``xi``: linear transmit SNR; ``beta``: mean of the exponential channel
    SNR gains; ``r0``: minimum target rate in b/s/Hz (used by outage ops).
    """

    xi: float
    beta: float = 1.0
    r0: float = 0.0

    def __post_init__(self):
        _require_positive("xi", self.xi)
        _require_positive("beta", self.beta)
        if not (math.isfinite(self.r0) and self.r0 >= 0.0):
            raise DomainError(f"r0 must be >= 0 and finite, got {self.r0!r}")


@dataclass(frozen=True)
class ChannelPair:
    """Ordered pair of channel SNR gains, weaker first (0 < g1 <= g2)."""

    g1: float
    g2: float

    def __post_init__(self):
        _require_positive("g1", self.g1)
        _require_positive("g2", self.g2)
        if self.g1 > self.g2:
            raise DomainError(
                f"ChannelPair requires g1 <= g2, got ({self.g1!r}, {self.g2!r});"
                " use ChannelPair.ordered() to sort arbitrary inputs")

    @classmethod
    def ordered(cls, ga: float, gb: float) -> "ChannelPair":
        """Build a pair from gains in either order (ties keep input order)."""
        if gb < ga:
            ga, gb = gb, ga
        return cls(ga, gb)


@dataclass(frozen=True)
class FairRegion:
    """Allocation interval [a_inf, a_sup] for the strong user's power share."""

    a_inf: float
    a_sup: float

    def __post_init__(self):
        if not (0.0 < self.a_inf <= self.a_sup < 1.0):
            raise DomainError(
                f"FairRegion requires 0 < a_inf <= a_sup < 1, got "
                f"({self.a_inf!r}, {self.a_sup!r})")

    @property
    def width(self) -> float:
        return self.a_sup - self.a_inf

    def contains(self, a: float) -> bool:
        return self.a_inf <= a <= self.a_sup

    def midpoint(self) -> float:
        return 0.5 * (self.a_inf + self.a_sup)


def oma_capacity(xi: float, g: float) -> float:
    """Half-bandwidth orthogonal-access capacity, (1/2) log2(1 + xi*g)."""
    _require_positive("xi", xi)
    _require_positive("g", g)
    return 0.5 * math.log1p(xi * g) / _LN2


def _check_share(a: float) -> None:
    if not (math.isfinite(a) and 0.0 <= a <= 1.0):
        raise DomainError(f"power share a must lie in [0, 1], got {a!r}")


def noma_capacity_weak(xi: float, g1: float, a: float) -> float:
    """Weak-user NOMA capacity log2(1 + (1-a) xi g1 / (a xi g1 + 1)).

    The weak user decodes while treating the strong user's share ``a`` as
    interference; monotone decreasing in ``a``.
    """
    _require_positive("xi", xi)
    _require_positive("g1", g1)
    _check_share(a)
    w = xi * g1
    return math.log1p((1.0 - a) * w / (a * w + 1.0)) / _LN2


def noma_capacity_strong(xi: float, g2: float, a: float) -> float:
    """Strong-user NOMA capacity log2(1 + a xi g2), interference-free after SIC."""
    _require_positive("xi", xi)
    _require_positive("g2", g2)
    _check_share(a)
    return math.log1p(a * xi * g2) / _LN2


def allocation_bound(xi: float, x: float) -> float:
    """The bound a(x) = (sqrt(1 + xi*x) - 1)/(xi*x), in (0, 1/2).

    Evaluated as 1/(1 + sqrt(1 + xi*x)), which is cancellation-free and makes
    the xi*x -> 0 limit of 1/2 exact.
    """
    _require_positive("xi", xi)
    _require_positive("x", x)
    return 1.0 / (1.0 + math.sqrt(1.0 + xi * x))


def fair_region(params: SystemParams, ch: ChannelPair) -> FairRegion:
    """Allocation interval on which NOMA is no worse than OMA for both users.

    The lower endpoint makes the strong user indifferent
    (C2_N(a_inf) = C2_O), the upper one the weak user (C1_N(a_sup) = C1_O).
    """
    return FairRegion(a_inf=allocation_bound(params.xi, ch.g2),
                      a_sup=allocation_bound(params.xi, ch.g1))


def sum_rate(xi: float, ch: ChannelPair, a: float) -> float:
    """NOMA sum rate S_N(a) = C1_N(a) + C2_N(a); monotone increasing in a."""
    return (noma_capacity_weak(xi, ch.g1, a)
            + noma_capacity_strong(xi, ch.g2, a))


def sum_rate_oma(xi: float, ch: ChannelPair) -> float:
    """OMA sum rate S_O = C1_O + C2_O."""
    return oma_capacity(xi, ch.g1) + oma_capacity(xi, ch.g2)


class HighSnrCapacities(NamedTuple):
    c1_oma: float
    c2_oma: float
    c1_ainf: float
    c2_asup: float


def high_snr_capacities(xi: float, ch: ChannelPair) -> HighSnrCapacities:
    """High-SNR approximations of the four per-user capacities.

    Returns (1/2)log2(xi g1), (1/2)log2(xi g2), (1/2)log2(xi g2), and
    log2(sqrt(xi/g1) g2). Meaningful when xi*g1 >> 1; no regime check is
    enforced.
    """
    _require_positive("xi", xi)
    half_log_xi = 0.5 * math.log(xi) / _LN2
    log_g1 = math.log(ch.g1) / _LN2
    log_g2 = math.log(ch.g2) / _LN2
    return HighSnrCapacities(
        c1_oma=half_log_xi + 0.5 * log_g1,
        c2_oma=half_log_xi + 0.5 * log_g2,
        c1_ainf=half_log_xi + 0.5 * log_g2,
        c2_asup=half_log_xi - 0.5 * log_g1 + log_g2,
    )
