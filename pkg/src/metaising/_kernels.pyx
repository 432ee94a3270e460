# cython: boundscheck=False, wraparound=False, cdivision=True
"""Compiled hot kernels: Metropolis-Glauber chain loop and landscape sweeps.

Mirror of metaising._pykernels, algorithm for algorithm, including the
splitmix64 RNG, so trajectories are bit-identical across backends.
"""

from libc.math cimport exp
from libc.stdint cimport uint64_t, int64_t, int32_t, uint8_t

import numpy as np

BACKEND_NAME = "cython"

cdef int64_t _INF = np.iinfo(np.int64).max


cdef inline uint64_t _next_u64(uint64_t *state) nogil:
    state[0] += <uint64_t>0x9E3779B97F4A7C15
    cdef uint64_t z = state[0]
    z = (z ^ (z >> 30)) * <uint64_t>0xBF58476D1CE4E5B9
    z = (z ^ (z >> 27)) * <uint64_t>0x94D049BB133111EB
    return z ^ (z >> 31)


cdef inline double _uniform(uint64_t *state) nogil:
    return (_next_u64(state) >> 11) * (1.0 / 9007199254740992.0)


def run_until_hit(indptr, indices, double h, double beta,
                  start, target, max_steps, seed):
    cdef int32_t[::1] ptr = np.ascontiguousarray(indptr, dtype=np.int32)
    cdef int32_t[::1] idx = np.ascontiguousarray(indices, dtype=np.int32)
    cdef int n = ptr.shape[0] - 1
    cdef uint64_t sigma = <uint64_t>int(start)
    cdef uint64_t tgt = <uint64_t>int(target)
    cdef uint64_t budget = <uint64_t>int(max_steps)
    cdef uint64_t state = <uint64_t>(int(seed) & ((1 << 64) - 1))
    cdef uint64_t steps = 0
    cdef int i, k, deg, inc
    cdef double delta
    cdef int[::1] counts = np.zeros(n, dtype=np.intc)

    if sigma == tgt:
        return 0, True, int(sigma)
    for i in range(n):
        for k in range(ptr[i], ptr[i + 1]):
            counts[i] += <int>((sigma >> idx[k]) & 1)

    with nogil:
        while steps < budget:
            i = <int>(_next_u64(&state) % <uint64_t>n)
            deg = ptr[i + 1] - ptr[i]
            if (sigma >> i) & 1:
                delta = -4.0 * (deg - counts[i]) + 2.0 * (deg + h)
            else:
                delta = -4.0 * counts[i] + 2.0 * (deg - h)
            if delta <= 0.0 or _uniform(&state) < exp(-beta * delta):
                if (sigma >> i) & 1:
                    sigma &= ~(<uint64_t>1 << i)
                    inc = -1
                else:
                    sigma |= <uint64_t>1 << i
                    inc = 1
                for k in range(ptr[i], ptr[i + 1]):
                    counts[idx[k]] += inc
            steps += 1
            if sigma == tgt:
                break
    return int(steps), sigma == tgt, int(sigma)


def sample_visits(indptr, indices, double h, double beta,
                  start, n_steps, burn_in, seed):
    cdef int32_t[::1] ptr = np.ascontiguousarray(indptr, dtype=np.int32)
    cdef int32_t[::1] idx = np.ascontiguousarray(indices, dtype=np.int32)
    cdef int n = ptr.shape[0] - 1
    cdef uint64_t sigma = <uint64_t>int(start)
    cdef uint64_t total = <uint64_t>(int(n_steps) + int(burn_in))
    cdef uint64_t warm = <uint64_t>int(burn_in)
    cdef uint64_t state = <uint64_t>(int(seed) & ((1 << 64) - 1))
    cdef uint64_t step = 0
    cdef int i, k, deg, inc
    cdef double delta
    cdef int[::1] counts = np.zeros(n, dtype=np.intc)
    visits_arr = np.zeros(1 << n, dtype=np.int64)
    cdef int64_t[::1] visits = visits_arr

    for i in range(n):
        for k in range(ptr[i], ptr[i + 1]):
            counts[i] += <int>((sigma >> idx[k]) & 1)

    with nogil:
        while step < total:
            i = <int>(_next_u64(&state) % <uint64_t>n)
            deg = ptr[i + 1] - ptr[i]
            if (sigma >> i) & 1:
                delta = -4.0 * (deg - counts[i]) + 2.0 * (deg + h)
            else:
                delta = -4.0 * counts[i] + 2.0 * (deg - h)
            if delta <= 0.0 or _uniform(&state) < exp(-beta * delta):
                if (sigma >> i) & 1:
                    sigma &= ~(<uint64_t>1 << i)
                    inc = -1
                else:
                    sigma |= <uint64_t>1 << i
                    inc = 1
                for k in range(ptr[i], ptr[i + 1]):
                    counts[idx[k]] += inc
            if step >= warm:
                visits[<int64_t>sigma] += 1
            step += 1
    return visits_arr


cdef inline int64_t _find(int64_t[::1] parent, int64_t x) nogil:
    while parent[x] != x:
        parent[x] = parent[parent[x]]
        x = parent[x]
    return x


def stability_sweep(order, energy, int n):
    cdef int64_t[::1] ord_v = np.ascontiguousarray(order, dtype=np.int64)
    cdef int64_t[::1] en = np.ascontiguousarray(energy, dtype=np.int64)
    cdef int64_t size = <int64_t>1 << n
    cdef int64_t[::1] parent = np.arange(size, dtype=np.int64)
    cdef int64_t[::1] comp_min = np.zeros(size, dtype=np.int64)
    cdef int64_t[::1] head = np.full(size, -1, dtype=np.int64)
    cdef int64_t[::1] tail = np.full(size, -1, dtype=np.int64)
    cdef int64_t[::1] nxt = np.full(size, -1, dtype=np.int64)
    cdef uint8_t[::1] processed = np.zeros(size, dtype=np.uint8)
    V_arr = np.full(size, -1, dtype=np.int64)
    cdef int64_t[::1] V = V_arr
    cdef int64_t pos, s, t, rs, rt, low, high, x, level
    cdef int j

    with nogil:
        for pos in range(size):
            s = ord_v[pos]
            level = en[s]
            processed[s] = 1
            comp_min[s] = level
            head[s] = s
            tail[s] = s
            rs = s
            for j in range(n):
                t = s ^ (<int64_t>1 << j)
                if not processed[t]:
                    continue
                rt = _find(parent, t)
                if rt == rs:
                    continue
                if comp_min[rt] < comp_min[rs]:
                    low = rt
                    high = rs
                elif comp_min[rs] < comp_min[rt]:
                    low = rs
                    high = rt
                else:
                    low = rs
                    high = rt
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
                    V[x] = level - en[x]
                    x = nxt[x]
                head[high] = -1
                parent[high] = low
                rs = low
    V_arr[V_arr == -1] = _INF
    return V_arr


def anchor_phi_sweep(order, energy, int n, anchor):
    cdef int64_t[::1] ord_v = np.ascontiguousarray(order, dtype=np.int64)
    cdef int64_t[::1] en = np.ascontiguousarray(energy, dtype=np.int64)
    cdef int64_t size = <int64_t>1 << n
    cdef int64_t anc = <int64_t>int(anchor)
    cdef int64_t[::1] parent = np.arange(size, dtype=np.int64)
    cdef int64_t[::1] head = np.full(size, -1, dtype=np.int64)
    cdef int64_t[::1] tail = np.full(size, -1, dtype=np.int64)
    cdef int64_t[::1] nxt = np.full(size, -1, dtype=np.int64)
    cdef uint8_t[::1] processed = np.zeros(size, dtype=np.uint8)
    cdef uint8_t[::1] has_anchor = np.zeros(size, dtype=np.uint8)
    phi_arr = np.full(size, _INF, dtype=np.int64)
    cdef int64_t[::1] phi = phi_arr
    cdef int64_t pos, s, t, rs, rt, other, keep, x, level
    cdef int j

    with nogil:
        for pos in range(size):
            s = ord_v[pos]
            level = en[s]
            processed[s] = 1
            if s == anc:
                has_anchor[s] = 1
                phi[s] = level
            else:
                head[s] = s
                tail[s] = s
            rs = s
            for j in range(n):
                t = s ^ (<int64_t>1 << j)
                if not processed[t]:
                    continue
                rt = _find(parent, t)
                if rt == rs:
                    continue
                if has_anchor[rs] or has_anchor[rt]:
                    if has_anchor[rs]:
                        other = rt
                        keep = rs
                    else:
                        other = rs
                        keep = rt
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
    return phi_arr
