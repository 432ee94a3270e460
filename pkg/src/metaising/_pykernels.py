"""Pure-Python reference implementations of the hot kernels.

The compiled extension (metaising._kernels) implements exactly the same
algorithms, including the RNG, so a given seed produces bit-identical
trajectories on either backend. Keep the two files in lockstep.
"""

from __future__ import annotations

import math

import numpy as np

BACKEND_NAME = "python"

_MASK64 = (1 << 64) - 1
_INF = np.iinfo(np.int64).max


class SplitMix64:
    """splitmix64; the pinned RNG for all chain trajectories."""

    __slots__ = ("state",)

    def __init__(self, seed: int):
        self.state = seed & _MASK64

    def next_u64(self) -> int:
        self.state = (self.state + 0x9E3779B97F4A7C15) & _MASK64
        z = self.state
        z = ((z ^ (z >> 30)) * 0xBF58476D1CE4E5B9) & _MASK64
        z = ((z ^ (z >> 27)) * 0x94D049BB133111EB) & _MASK64
        return (z ^ (z >> 31)) & _MASK64

    def uniform(self) -> float:
        return (self.next_u64() >> 11) * (1.0 / 9007199254740992.0)


def _plus_neighbor_counts(indptr, indices, n, sigma):
    counts = [0] * n
    for i in range(n):
        c = 0
        for k in range(indptr[i], indptr[i + 1]):
            c += (sigma >> int(indices[k])) & 1
        counts[i] = c
    return counts


def run_until_hit(indptr, indices, h, beta, start, target, max_steps, seed):
    """Run the Metropolis-Glauber chain until it hits `target`.

    Returns (steps, hit, final_state). One step = one uniform vertex proposal,
    accepted with probability exp(-beta * max(delta, 0)).
    """
    n = len(indptr) - 1
    rng = SplitMix64(seed)
    sigma = int(start)
    if sigma == target:
        return 0, True, sigma
    counts = _plus_neighbor_counts(indptr, indices, n, sigma)
    indptr = [int(x) for x in indptr]
    indices = [int(x) for x in indices]
    steps = 0
    while steps < max_steps:
        i = rng.next_u64() % n
        deg = indptr[i + 1] - indptr[i]
        if (sigma >> i) & 1:
            delta = -4.0 * (deg - counts[i]) + 2.0 * (deg + h)
        else:
            delta = -4.0 * counts[i] + 2.0 * (deg - h)
        accept = delta <= 0.0 or rng.uniform() < math.exp(-beta * delta)
        if accept:
            if (sigma >> i) & 1:
                sigma &= ~(1 << i)
                inc = -1
            else:
                sigma |= 1 << i
                inc = 1
            for k in range(indptr[i], indptr[i + 1]):
                counts[indices[k]] += inc
        steps += 1
        if sigma == target:
            return steps, True, sigma
    return steps, False, sigma


def sample_visits(indptr, indices, h, beta, start, n_steps, burn_in, seed):
    """Visit counts per configuration over n_steps post-burn-in chain steps."""
    n = len(indptr) - 1
    rng = SplitMix64(seed)
    sigma = int(start)
    counts = _plus_neighbor_counts(indptr, indices, n, sigma)
    indptr = [int(x) for x in indptr]
    indices = [int(x) for x in indices]
    visits = np.zeros(1 << n, dtype=np.int64)
    total = burn_in + n_steps
    for step in range(total):
        i = rng.next_u64() % n
        deg = indptr[i + 1] - indptr[i]
        if (sigma >> i) & 1:
            delta = -4.0 * (deg - counts[i]) + 2.0 * (deg + h)
        else:
            delta = -4.0 * counts[i] + 2.0 * (deg - h)
        if delta <= 0.0 or rng.uniform() < math.exp(-beta * delta):
            if (sigma >> i) & 1:
                sigma &= ~(1 << i)
                inc = -1
            else:
                sigma |= 1 << i
                inc = 1
            for k in range(indptr[i], indptr[i + 1]):
                counts[indices[k]] += inc
        if step >= burn_in:
            visits[sigma] += 1
    return visits


def _find(parent, x):
    while parent[x] != x:
        parent[x] = parent[parent[x]]
        x = parent[x]
    return x


def stability_sweep(order, energy, n):
    """Stability level of every configuration, as scaled energies.

    Kruskal-style sweep over configurations in increasing energy order:
    when a component with a strictly higher minimum merges into a lower one
    at level L, every still-unresolved state x of the higher component gets
    V_x = L - H(x). States never resolved (the global minima) get INT64_MAX,
    the +infinity sentinel.
    """
    size = 1 << n
    parent = np.arange(size, dtype=np.int64)
    comp_min = np.zeros(size, dtype=np.int64)
    head = np.full(size, -1, dtype=np.int64)
    tail = np.full(size, -1, dtype=np.int64)
    nxt = np.full(size, -1, dtype=np.int64)
    processed = np.zeros(size, dtype=np.uint8)
    V = np.full(size, -1, dtype=np.int64)
    for pos in range(size):
        s = int(order[pos])
        level = int(energy[s])
        processed[s] = 1
        comp_min[s] = level
        head[s] = tail[s] = s
        rs = s
        for j in range(n):
            t = s ^ (1 << j)
            if not processed[t]:
                continue
            rt = _find(parent, t)
            if rt == rs:
                continue
            if comp_min[rt] < comp_min[rs]:
                low, high = rt, rs
            elif comp_min[rs] < comp_min[rt]:
                low, high = rs, rt
            else:
                low, high = rs, rt
                if head[high] != -1:
                    if head[low] == -1:
                        head[low] = head[high]
                        tail[low] = tail[high]
                    else:
                        nxt[tail[low]] = head[high]
                        tail[low] = tail[high]
                    head[high] = -1
                parent[high] = low
                rs = low
                continue
            x = head[high]
            while x != -1:
                V[x] = level - energy[x]
                x = nxt[x]
            head[high] = -1
            parent[high] = low
            rs = low
    V[V == -1] = _INF
    return V


def anchor_phi_sweep(order, energy, n, anchor):
    """Communication height from `anchor` to every configuration (scaled).

    Same sweep as stability_sweep, but components are annotated with whether
    they contain the anchor; members of a non-anchor component are assigned
    Phi = merge level when they join the anchor's component.
    """
    size = 1 << n
    parent = np.arange(size, dtype=np.int64)
    head = np.full(size, -1, dtype=np.int64)
    tail = np.full(size, -1, dtype=np.int64)
    nxt = np.full(size, -1, dtype=np.int64)
    processed = np.zeros(size, dtype=np.uint8)
    has_anchor = np.zeros(size, dtype=np.uint8)
    phi = np.full(size, _INF, dtype=np.int64)
    for pos in range(size):
        s = int(order[pos])
        level = int(energy[s])
        processed[s] = 1
        if s == anchor:
            has_anchor[s] = 1
            phi[s] = level
        else:
            head[s] = tail[s] = s
        rs = s
        for j in range(n):
            t = s ^ (1 << j)
            if not processed[t]:
                continue
            rt = _find(parent, t)
            if rt == rs:
                continue
            if has_anchor[rs] or has_anchor[rt]:
                other = rt if has_anchor[rs] else rs
                keep = rs if has_anchor[rs] else rt
                x = head[other]
                while x != -1:
                    phi[x] = level
                    x = nxt[x]
                head[other] = -1
                parent[other] = keep
                rs = keep
            else:
                if head[rt] != -1:
                    if head[rs] == -1:
                        head[rs] = head[rt]
                        tail[rs] = tail[rt]
                    else:
                        nxt[tail[rs]] = head[rt]
                        tail[rs] = tail[rt]
                    head[rt] = -1
                parent[rt] = rs
    return phi
