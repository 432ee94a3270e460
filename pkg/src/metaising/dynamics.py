"""Discrete-time Metropolis-Glauber dynamics and hitting-time machinery.

Trajectories are reproducible from (seed, backend-independent): the chain
loop lives in the selected kernel backend and both backends share one RNG.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np
import scipy.sparse
import scipy.sparse.linalg

from . import backend
from ._pykernels import SplitMix64
from .errors import CapacityError, CensoredSampleError, ParameterError
from .graphs import RegularGraph
from .model import EnergyParams, all_minus, all_plus, flip_delta, scaled_energy_table

HITTING_CAP = 14

__all__ = [
    "HittingTimeSample",
    "ChainState",
    "transition_probability",
    "run_until_hit",
    "run_replicas",
    "sample_occupancy",
    "exact_mean_hitting_time",
    "estimate_exponent",
    "HITTING_CAP",
]


@dataclass(frozen=True)
class HittingTimeSample:
    steps: int
    beta: float
    seed: int
    hit: bool


def transition_probability(
    G: RegularGraph, sigma: int, sigma_prime: int, params: EnergyParams
) -> float:
    """One-step law: (1/n) exp(-beta [dH]+) for single-flip pairs, the lazy
    remainder on the diagonal, and 0 otherwise."""
    diff = sigma ^ sigma_prime
    n = G.n
    if diff == 0:
        total = 0.0
        for i in range(n):
            delta = float(flip_delta(G, sigma, i, params))
            total += math.exp(-params.beta * max(delta, 0.0)) / n
        return 1.0 - total
    if diff.bit_count() != 1:
        return 0.0
    i = diff.bit_length() - 1
    delta = float(flip_delta(G, sigma, i, params))
    return math.exp(-params.beta * max(delta, 0.0)) / G.n


class ChainState:
    """Mutable chain state stepped one transition at a time in Python.

    Uses the same RNG and update order as the kernel loop, so stepping here
    and running the kernel from the same seed visit identical states.
    """

    __slots__ = ("G", "params", "current", "step_count", "_rng", "_counts")

    def __init__(self, G: RegularGraph, params: EnergyParams, start: int, seed: int):
        self.G = G
        self.params = params
        self.current = start
        self.step_count = 0
        self._rng = SplitMix64(seed)
        self._counts = [
            sum((start >> v) & 1 for v in G.adjacency[i]) for i in range(G.n)
        ]

    def step(self) -> int:
        G, params = self.G, self.params
        i = self._rng.next_u64() % G.n
        if (self.current >> i) & 1:
            delta = -4.0 * (G.r - self._counts[i]) + 2.0 * (G.r + float(params.h))
        else:
            delta = -4.0 * self._counts[i] + 2.0 * (G.r - float(params.h))
        if delta <= 0.0 or self._rng.uniform() < math.exp(-params.beta * delta):
            if (self.current >> i) & 1:
                self.current &= ~(1 << i)
                inc = -1
            else:
                self.current |= 1 << i
                inc = 1
            for v in G.adjacency[i]:
                self._counts[v] += inc
        self.step_count += 1
        return self.current

    def recount(self) -> bool:
        """Consistency check of the cached plus-neighbor counts."""
        fresh = [
            sum((self.current >> v) & 1 for v in self.G.adjacency[i])
            for i in range(self.G.n)
        ]
        return fresh == self._counts


def run_until_hit(
    G: RegularGraph,
    params: EnergyParams,
    start: int,
    target: int,
    max_steps: int,
    seed: int,
) -> HittingTimeSample:
    if max_steps <= 0:
        raise ParameterError(f"need max_steps > 0, got {max_steps}")
    indptr, indices = G.csr()
    steps, hit, _ = backend.run_until_hit(
        indptr, indices, float(params.h), params.beta, start, target, max_steps, seed
    )
    if not hit:
        steps = max_steps
    return HittingTimeSample(steps=steps, beta=params.beta, seed=seed, hit=hit)


def run_replicas(
    G: RegularGraph,
    params: EnergyParams,
    start: int,
    target: int,
    max_steps: int,
    seeds: list[int],
) -> list[HittingTimeSample]:
    return [run_until_hit(G, params, start, target, max_steps, s) for s in seeds]


def sample_occupancy(
    G: RegularGraph,
    params: EnergyParams,
    start: int,
    n_steps: int,
    burn_in: int,
    seed: int,
) -> np.ndarray:
    """Per-configuration visit counts after burn-in; for stationarity checks."""
    if G.n > 24:
        raise CapacityError("occupancy table needs n <= 24")
    indptr, indices = G.csr()
    return backend.sample_visits(
        indptr, indices, float(params.h), params.beta, start, n_steps, burn_in, seed
    )


def exact_mean_hitting_time(
    G: RegularGraph, params: EnergyParams, target: int | None = None
) -> np.ndarray:
    """E_eta[tau_target] for every start eta, by the absorbing-chain solve
    (I - Q) t = 1 with the target state absorbing."""
    if G.n > HITTING_CAP:
        raise CapacityError(f"exact hitting solver capped at n={HITTING_CAP}, got {G.n}")
    if target is None:
        target = all_plus(G)
    n = G.n
    size = 1 << n
    scaled, q = scaled_energy_table(G, params)
    energies = scaled / q
    keep = np.array([s for s in range(size) if s != target], dtype=np.int64)
    pos = np.full(size, -1, dtype=np.int64)
    pos[keep] = np.arange(size - 1)

    # Build A = I - Q directly: the diagonal 1 - Q_ss equals the total flip
    # probability out of s, summed explicitly. Recovering it as 1 - (1 - sum)
    # underflows to 0 at large beta and makes the system singular.
    rows, cols, vals = [], [], []
    for s in keep:
        out_total = 0.0
        for j in range(n):
            t = int(s) ^ (1 << j)
            p = math.exp(-params.beta * max(energies[t] - energies[s], 0.0)) / n
            out_total += p
            if t != target:
                rows.append(pos[s])
                cols.append(pos[t])
                vals.append(-p)
        rows.append(pos[s])
        cols.append(pos[s])
        vals.append(out_total)
    A = scipy.sparse.csr_matrix((vals, (rows, cols)), shape=(size - 1, size - 1))
    ones = np.ones(size - 1)
    if size <= 1 << 12:
        t = np.linalg.solve(A.toarray(), ones)
    else:
        t = scipy.sparse.linalg.spsolve(A.tocsc(), ones)
    if not np.all(np.isfinite(t)) or np.any(t < 0):
        raise RuntimeError("hitting-time system produced invalid solution")
    out = np.zeros(size)
    out[keep] = t
    return out


def estimate_exponent(
    G: RegularGraph,
    params: EnergyParams,
    betas: list[float],
    method: str = "exact-solver",
    start: int | None = None,
    target: int | None = None,
    replicas: int = 100,
    max_steps: int = 10**7,
    seed: int = 0,
) -> dict:
    """Least-squares slope of log(mean hitting time) against beta.

    Monte Carlo mode refuses censored samples outright: at exponential
    hitting-time growth, silently averaging truncated runs dominates any
    other error source.
    """
    if len(betas) < 2:
        raise ParameterError("need at least 2 beta values for a slope")
    if method not in ("exact-solver", "monte-carlo"):
        raise ParameterError(f"unknown method {method!r}")
    if start is None:
        start = all_minus(G)
    if target is None:
        target = all_plus(G)
    log_means = []
    for b in betas:
        p = EnergyParams(h=params.h, beta=b)
        if method == "exact-solver":
            mean = float(exact_mean_hitting_time(G, p, target)[start])
        else:
            samples = run_replicas(
                G, p, start, target, max_steps, [seed + k for k in range(replicas)]
            )
            censored = [s for s in samples if not s.hit]
            if censored:
                raise CensoredSampleError(
                    f"{len(censored)}/{len(samples)} samples censored at "
                    f"beta={b}; raise max_steps"
                )
            mean = float(np.mean([s.steps for s in samples]))
        log_means.append(math.log(mean))
    betas_arr = np.asarray(betas, dtype=float)
    logs = np.asarray(log_means)
    slope, intercept = np.polyfit(betas_arr, logs, 1)
    residuals = logs - (slope * betas_arr + intercept)
    pair_slopes = [
        (logs[j] - logs[i]) / (betas_arr[j] - betas_arr[i])
        for i in range(len(betas))
        for j in range(i + 1, len(betas))
    ]
    return {
        "slope": float(slope),
        "intercept": float(intercept),
        "pair_slopes": pair_slopes,
        "residuals": residuals.tolist(),
        "log_means": log_means,
        "betas": list(betas),
        "method": method,
    }
