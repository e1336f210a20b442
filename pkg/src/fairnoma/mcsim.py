"""Deterministic Monte Carlo engine for every expectation and probability in
the package.

Trials are processed in fixed 65536-draw chunks. Chunk ``ci`` of a run draws
from ``Philox(SeedSequence((seed, scenario_id, grid_index, k_value, ci)))``,
so each trial's channel realization is a pure function of the configuration
and its own index: worker count cannot change it, and the a-policy is
deliberately absent from the key so every policy sees identical draws
(common random numbers). Per-chunk partial sums are combined in chunk order
with ``math.fsum``, which is exactly rounded, making results bit-identical
under any parallel schedule. Exponential gains use the inverse CDF
``-beta*log1p(-u)``.
"""

from __future__ import annotations

import math
from concurrent.futures import ThreadPoolExecutor, as_completed
from dataclasses import dataclass, field
from typing import Callable

import numpy as np

from .errors import DomainError

_LN2 = math.log(2.0)

#: trials per substream chunk; fixed so parallel partitioning cannot move
#: draws between substreams
CHUNK_TRIALS = 1 << 16

_SCENARIO_IDS = {"pair_iid": 1, "pair_minmax": 2, "multiuser": 3}

_POLICIES = ("inf", "sup", "mid")


def _validate_policy(policy) -> None:
    if isinstance(policy, str):
        if policy not in _POLICIES:
            raise DomainError(
                f"a_policy must be one of {_POLICIES} or a fixed share in (0,1),"
                f" got {policy!r}")
        return
    if isinstance(policy, (int, float)) and not isinstance(policy, bool):
        if 0.0 < float(policy) < 1.0 and math.isfinite(policy):
            return
    raise DomainError(f"fixed a_policy requires a value in (0, 1), got {policy!r}")


@dataclass(frozen=True)
class SimConfig:
    """Experiment description; everything that can influence a result.

    ``a_policy`` is 'inf', 'sup', 'mid', or a float in (0,1) meaning a fixed
    strong-user share. ``k_grid`` optionally sweeps the user count for the
    pair_minmax scenario (defaults to just ``k_users``).
    """

    trials: int
    seed: int
    xi_grid: tuple
    beta: float = 1.0
    k_users: int = 2
    r0: float = 0.0
    a_policy: object = "sup"
    scenario: str = "pair_iid"
    k_grid: tuple | None = None

    def __post_init__(self):
        if not isinstance(self.trials, int) or self.trials < 1:
            raise DomainError(f"trials must be a positive integer, got {self.trials!r}")
        if not isinstance(self.seed, int) or not 0 <= self.seed < 2 ** 64:
            raise DomainError(f"seed must be a 64-bit unsigned integer, got {self.seed!r}")
        xi_grid = tuple(float(x) for x in self.xi_grid)
        if not xi_grid:
            raise DomainError("xi_grid must be non-empty")
        for x in xi_grid:
            if not (math.isfinite(x) and x > 0.0):
                raise DomainError(f"xi_grid entries must be positive, got {x!r}")
        if any(a >= b for a, b in zip(xi_grid, xi_grid[1:])):
            raise DomainError("xi_grid must be strictly increasing")
        object.__setattr__(self, "xi_grid", xi_grid)
        if not (math.isfinite(self.beta) and self.beta > 0.0):
            raise DomainError(f"beta must be positive, got {self.beta!r}")
        if not isinstance(self.k_users, int) or self.k_users < 1:
            raise DomainError(f"k_users must be a positive integer, got {self.k_users!r}")
        if not (math.isfinite(self.r0) and self.r0 >= 0.0):
            raise DomainError(f"r0 must be >= 0, got {self.r0!r}")
        _validate_policy(self.a_policy)
        if self.scenario not in _SCENARIO_IDS:
            raise DomainError(f"unknown scenario {self.scenario!r}")
        if self.k_grid is not None:
            k_grid = tuple(self.k_grid)
            if not k_grid or any(not isinstance(k, int) or k < 1 for k in k_grid):
                raise DomainError(f"k_grid must hold positive integers, got {self.k_grid!r}")
            if any(a >= b for a, b in zip(k_grid, k_grid[1:])):
                raise DomainError("k_grid must be strictly increasing")
            object.__setattr__(self, "k_grid", k_grid)


@dataclass(frozen=True)
class SimResult:
    """One estimated quantity: mean, its standard error, and provenance."""

    mean: float
    std_error: float
    trials: int
    seed: int


@dataclass(frozen=True)
class GridPoint:
    """All measures estimated at one (xi, K) grid point."""

    xi: float
    k: int
    measures: dict


# ---------------------------------------------------------------------------
# chunk plumbing

def _chunk_rng(seed: int, scenario: str, grid_index: int, k_value: int,
               chunk_index: int) -> np.random.Generator:
    entropy = (seed, _SCENARIO_IDS[scenario], grid_index, k_value, chunk_index)
    return np.random.Generator(np.random.Philox(np.random.SeedSequence(entropy)))


def _n_chunks(trials: int) -> int:
    return (trials + CHUNK_TRIALS - 1) // CHUNK_TRIALS


def _chunk_len(trials: int, chunk_index: int) -> int:
    start = chunk_index * CHUNK_TRIALS
    return min(CHUNK_TRIALS, trials - start)


def _map_chunks(fn: Callable[[int], dict], n_chunks: int,
                workers: int | None) -> list:
    if workers is None or workers <= 1 or n_chunks <= 1:
        return [fn(ci) for ci in range(n_chunks)]
    results: list = [None] * n_chunks
    with ThreadPoolExecutor(max_workers=workers) as pool:
        futures = {pool.submit(fn, ci): ci for ci in range(n_chunks)}
        for fut in as_completed(futures):
            results[futures[fut]] = fut.result()
    return results


def _moments(**arrays) -> dict:
    out = {}
    for name, v in arrays.items():
        out[name] = (float(np.sum(v)), float(np.dot(v, v)))
    return out


def _reduce(parts: list, trials: int, seed: int) -> dict:
    """Combine per-chunk partials (in chunk order) into SimResults."""
    measures = {}
    for name in parts[0]:
        first = parts[0][name]
        if isinstance(first, int):
            count = sum(p[name] for p in parts)
            p_hat = count / trials
            se = math.sqrt(p_hat * (1.0 - p_hat) / trials)
            measures[name] = SimResult(p_hat, se, trials, seed)
        else:
            total = math.fsum(p[name][0] for p in parts)
            total_sq = math.fsum(p[name][1] for p in parts)
            mean = total / trials
            if trials > 1:
                var = max((total_sq - trials * mean * mean) / (trials - 1), 0.0)
                se = math.sqrt(var / trials)
            else:
                se = 0.0
            measures[name] = SimResult(mean, se, trials, seed)
    return measures


# ---------------------------------------------------------------------------
# per-draw physics

def _draw_gains(rng: np.random.Generator, beta: float, shape) -> np.ndarray:
    return -beta * np.log1p(-rng.random(shape))


def _share(policy, w1: np.ndarray, w2: np.ndarray):
    """Strong user's power share per draw under an allocation policy."""
    if policy == "inf":
        return 1.0 / (1.0 + np.sqrt(1.0 + w2))
    if policy == "sup":
        return 1.0 / (1.0 + np.sqrt(1.0 + w1))
    if policy == "mid":
        return 0.5 * (1.0 / (1.0 + np.sqrt(1.0 + w2))
                      + 1.0 / (1.0 + np.sqrt(1.0 + w1)))
    return float(policy)


def _pair_rates(w1: np.ndarray, w2: np.ndarray, a) -> tuple[np.ndarray, np.ndarray]:
    c1 = np.log1p((1.0 - a) * w1 / (a * w1 + 1.0)) / _LN2
    c2 = np.log1p(a * w2) / _LN2
    return c1, c2


def _oma_rates(w1: np.ndarray, w2: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
    return 0.5 * np.log1p(w1) / _LN2, 0.5 * np.log1p(w2) / _LN2


def _min_power_total(w_sorted: np.ndarray, k: int) -> np.ndarray:
    """Sum of the minimum per-user shares that replicate OMA capacities.

    Downward recursion over users K..1 on a (n, K) array of sorted
    instantaneous SNRs; for K = 1 the root power simplifies to exactly 1.
    """
    n = w_sorted.shape[0]
    total = np.zeros(n)
    for j in range(k - 1, -1, -1):
        w = w_sorted[:, j]
        t = np.expm1(np.log1p(w) / k) if k > 1 else w
        total = total + t * (1.0 + w * total) / w
    return total


# ---------------------------------------------------------------------------
# scenario runners

def _require_scenario(config: SimConfig, expected: str) -> None:
    if config.scenario != expected:
        raise DomainError(
            f"this operation requires scenario={expected!r}, got {config.scenario!r}")


def run_ergodic_pair(config: SimConfig, workers: int | None = None) -> list:
    """Per-xi capacity means for the ordered two-user pair under the
    configured a-policy, plus the paired per-draw sum-rate gain ``ds``."""
    _require_scenario(config, "pair_iid")
    points = []
    for gi, xi in enumerate(config.xi_grid):
        def chunk(ci: int, xi: float = xi, gi: int = gi) -> dict:
            rng = _chunk_rng(config.seed, "pair_iid", gi, 0, ci)
            n = _chunk_len(config.trials, ci)
            g = _draw_gains(rng, config.beta, (n, 2))
            w1 = xi * g.min(axis=1)
            w2 = xi * g.max(axis=1)
            c1o, c2o = _oma_rates(w1, w2)
            c1n, c2n = _pair_rates(w1, w2, _share(config.a_policy, w1, w2))
            s_o = c1o + c2o
            s_n = c1n + c2n
            return _moments(c1_oma=c1o, c2_oma=c2o, s_oma=s_o,
                            c1_noma=c1n, c2_noma=c2n, s_noma=s_n,
                            ds=s_n - s_o)

        parts = _map_chunks(chunk, _n_chunks(config.trials), workers)
        points.append(GridPoint(xi=xi, k=2,
                                measures=_reduce(parts, config.trials, config.seed)))
    return points


def run_outage(config: SimConfig, workers: int | None = None) -> list:
    """Per-xi outage frequencies below r0.

    Reports OMA for both users, the region endpoints that matter
    (weak at a_inf, strong at a_sup), the mid policy for both users, and the
    boundary-identity pair (weak at a_sup, strong at a_inf) from the same
    draws.
    """
    _require_scenario(config, "pair_iid")
    r0 = config.r0
    o_thresh = 4.0 ** r0 - 1.0   # outage iff xi*g < threshold, per user in OMA
    points = []
    for gi, xi in enumerate(config.xi_grid):
        def chunk(ci: int, xi: float = xi, gi: int = gi) -> dict:
            rng = _chunk_rng(config.seed, "pair_iid", gi, 0, ci)
            n = _chunk_len(config.trials, ci)
            g = _draw_gains(rng, config.beta, (n, 2))
            w1 = xi * g.min(axis=1)
            w2 = xi * g.max(axis=1)
            out = {
                "p_oma_weak": int(np.count_nonzero(w1 < o_thresh)),
                "p_oma_strong": int(np.count_nonzero(w2 < o_thresh)),
            }
            for policy, tag in (("inf", "ainf"), ("sup", "asup"), ("mid", "mid")):
                c1n, c2n = _pair_rates(w1, w2, _share(policy, w1, w2))
                out[f"p_noma_weak_{tag}"] = int(np.count_nonzero(c1n < r0))
                out[f"p_noma_strong_{tag}"] = int(np.count_nonzero(c2n < r0))
            return out

        parts = _map_chunks(chunk, _n_chunks(config.trials), workers)
        points.append(GridPoint(xi=xi, k=2,
                                measures=_reduce(parts, config.trials, config.seed)))
    return points


def run_pair_policy_outage(config: SimConfig,
                           workers: int | None = None) -> list:
    """Per-xi outage frequencies for the single configured a-policy."""
    _require_scenario(config, "pair_iid")
    r0 = config.r0
    points = []
    for gi, xi in enumerate(config.xi_grid):
        def chunk(ci: int, xi: float = xi, gi: int = gi) -> dict:
            rng = _chunk_rng(config.seed, "pair_iid", gi, 0, ci)
            n = _chunk_len(config.trials, ci)
            g = _draw_gains(rng, config.beta, (n, 2))
            w1 = xi * g.min(axis=1)
            w2 = xi * g.max(axis=1)
            c1n, c2n = _pair_rates(w1, w2, _share(config.a_policy, w1, w2))
            return {"p_weak": int(np.count_nonzero(c1n < r0)),
                    "p_strong": int(np.count_nonzero(c2n < r0))}

        parts = _map_chunks(chunk, _n_chunks(config.trials), workers)
        points.append(GridPoint(xi=xi, k=2,
                                measures=_reduce(parts, config.trials, config.seed)))
    return points


def run_pairing(config: SimConfig, workers: int | None = None) -> list:
    """Min/max-pairing capacities over (xi, K): OMA, the two fair endpoints,
    and a fixed-share benchmark, with paired per-draw sum-rate gains.

    The fixed share is ``a_policy`` when it is numeric, else 1/5.
    """
    _require_scenario(config, "pair_minmax")
    k_grid = config.k_grid if config.k_grid is not None else (config.k_users,)
    if any(k < 2 for k in k_grid):
        raise DomainError("pair_minmax requires at least 2 users per point")
    fixed_share = (float(config.a_policy)
                   if isinstance(config.a_policy, (int, float)) else 0.2)
    points = []
    for gi, xi in enumerate(config.xi_grid):
        for k in k_grid:
            def chunk(ci: int, xi: float = xi, gi: int = gi, k: int = k) -> dict:
                rng = _chunk_rng(config.seed, "pair_minmax", gi, k, ci)
                n = _chunk_len(config.trials, ci)
                g = _draw_gains(rng, config.beta, (n, k))
                w1 = xi * g.min(axis=1)
                w2 = xi * g.max(axis=1)
                c1o, c2o = _oma_rates(w1, w2)
                s_o = c1o + c2o
                vals = {"c_min_oma": c1o, "c_max_oma": c2o, "s_oma": s_o}
                for policy, tag in (("inf", "ainf"), ("sup", "asup"),
                                    (fixed_share, "fixed")):
                    c1n, c2n = _pair_rates(w1, w2, _share(policy, w1, w2))
                    vals[f"c_min_{tag}"] = c1n
                    vals[f"c_max_{tag}"] = c2n
                    vals[f"s_{tag}"] = c1n + c2n
                    vals[f"ds_{tag}"] = c1n + c2n - s_o
                return _moments(**vals)

            parts = _map_chunks(chunk, _n_chunks(config.trials), workers)
            points.append(GridPoint(xi=xi, k=k,
                                    measures=_reduce(parts, config.trials,
                                                     config.seed)))
    return points


def run_multiuser_power(config: SimConfig, workers: int | None = None) -> list:
    """Per-xi mean of the minimum total NOMA power share that matches OMA
    for every one of K users (measure ``sum_b``)."""
    _require_scenario(config, "multiuser")
    k = config.k_users
    points = []
    for gi, xi in enumerate(config.xi_grid):
        def chunk(ci: int, xi: float = xi, gi: int = gi) -> dict:
            rng = _chunk_rng(config.seed, "multiuser", gi, k, ci)
            n = _chunk_len(config.trials, ci)
            g = _draw_gains(rng, config.beta, (n, k))
            g.sort(axis=1)
            return _moments(sum_b=_min_power_total(xi * g, k))

        parts = _map_chunks(chunk, _n_chunks(config.trials), workers)
        points.append(GridPoint(xi=xi, k=k,
                                measures=_reduce(parts, config.trials, config.seed)))
    return points
