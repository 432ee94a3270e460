"""Simple r-regular graphs: generation, boundaries, isoperimetric numbers.

Vertex subsets are represented as Python integers used as bitmasks
(bit i set <=> vertex i in the set), which keeps subset enumeration and
the downstream spin-configuration encoding identical.
"""

from __future__ import annotations

import hashlib
import math
import random
from fractions import Fraction
from typing import Iterable, Iterator, TextIO

import numpy as np

from .errors import CapacityError, GenerationError, ParameterError

ISO_EXACT_CAP = 24

__all__ = [
    "RegularGraph",
    "generate_random_regular",
    "complete_graph",
    "complete_bipartite",
    "edge_boundary",
    "edge_boundary_table",
    "isoperimetric_exact",
    "isoperimetric_heuristic",
    "IsoperimetricResult",
    "bollobas_lower_bound",
    "zeta_condition",
    "read_edge_list",
    "write_edge_list",
    "graph_hash",
    "ISO_EXACT_CAP",
]


class RegularGraph:
    """Immutable simple r-regular graph with sorted adjacency lists."""

    __slots__ = ("n", "r", "adjacency", "edge_count", "_csr", "_connected")

    def __init__(self, n: int, r: int, edges: Iterable[tuple[int, int]]):
        if r < 1 or n <= r:
            raise ParameterError(f"need n > r >= 1, got n={n}, r={r}")
        if (n * r) % 2 != 0:
            raise ParameterError(f"n*r must be even, got n={n}, r={r}")
        adj: list[list[int]] = [[] for _ in range(n)]
        seen = set()
        count = 0
        for u, v in edges:
            if not (0 <= u < n and 0 <= v < n):
                raise ParameterError(f"edge ({u},{v}) out of range [0,{n})")
            if u == v:
                raise ParameterError(f"self-loop at vertex {u}")
            key = (min(u, v), max(u, v))
            if key in seen:
                raise ParameterError(f"multi-edge ({u},{v})")
            seen.add(key)
            adj[u].append(v)
            adj[v].append(u)
            count += 1
        for v, nbrs in enumerate(adj):
            if len(nbrs) != r:
                raise ParameterError(f"vertex {v} has degree {len(nbrs)}, expected {r}")
        self.n = n
        self.r = r
        self.adjacency = tuple(tuple(sorted(nbrs)) for nbrs in adj)
        self.edge_count = count
        self._csr = None
        self._connected = None

    def edges(self) -> Iterator[tuple[int, int]]:
        """Each undirected edge once, as (u, v) with u < v, sorted."""
        for u in range(self.n):
            for v in self.adjacency[u]:
                if u < v:
                    yield (u, v)

    def csr(self) -> tuple[np.ndarray, np.ndarray]:
        """Adjacency as (indptr, indices) int32 arrays for the kernels."""
        if self._csr is None:
            indptr = np.arange(0, (self.n + 1) * self.r, self.r, dtype=np.int32)
            indices = np.fromiter(
                (v for nbrs in self.adjacency for v in nbrs),
                dtype=np.int32,
                count=self.n * self.r,
            )
            self._csr = (indptr, indices)
        return self._csr

    def is_connected(self) -> bool:
        if self._connected is None:
            seen = bytearray(self.n)
            stack = [0]
            seen[0] = 1
            found = 1
            while stack:
                u = stack.pop()
                for v in self.adjacency[u]:
                    if not seen[v]:
                        seen[v] = 1
                        found += 1
                        stack.append(v)
            self._connected = found == self.n
        return self._connected

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, RegularGraph)
            and self.n == other.n
            and self.adjacency == other.adjacency
        )

    def __hash__(self) -> int:
        return hash((self.n, self.r, self.adjacency))

    def __repr__(self) -> str:
        return f"RegularGraph(n={self.n}, r={self.r}, edges={self.edge_count})"


def complete_graph(n: int) -> RegularGraph:
    return RegularGraph(n, n - 1, [(u, v) for u in range(n) for v in range(u + 1, n)])


def complete_bipartite(a: int, b: int) -> RegularGraph:
    """K_{a,b}; regular only when a == b."""
    if a != b:
        raise ParameterError("only balanced complete bipartite graphs are regular")
    return RegularGraph(2 * a, a, [(u, a + v) for u in range(a) for v in range(a)])


def generate_random_regular(
    n: int, r: int, seed: int, max_attempts: int = 200_000
) -> RegularGraph:
    """Uniform simple r-regular graph via the pairing model with rejection.

    Any attempt producing a loop or multi-edge is discarded wholesale, which
    makes accepted graphs exactly uniform over simple r-regular graphs.
    """
    if r < 3:
        raise ParameterError(f"need r >= 3, got r={r}")
    if n <= r:
        raise ParameterError(f"need n > r, got n={n}, r={r}")
    if (n * r) % 2 != 0:
        raise ParameterError(f"n*r must be even, got n={n}, r={r}")
    rng = random.Random(seed)
    # Rejection acceptance decays like exp(-(r^2)/4), so for dense degrees
    # sample the (n-1-r)-regular complement instead; complementation is a
    # bijection on simple regular graphs, so uniformity is preserved exactly.
    r_sample = n - 1 - r if 2 * r >= n else r
    if r_sample == 0:
        return complete_graph(n)
    edges = _pairing_attempts(n, r_sample, rng, max_attempts)
    if r_sample != r:
        chosen = set(edges)
        edges = [
            (u, v)
            for u in range(n)
            for v in range(u + 1, n)
            if (u, v) not in chosen
        ]
    return RegularGraph(n, r, edges)


def _pairing_attempts(
    n: int, r: int, rng: random.Random, max_attempts: int
) -> list[tuple[int, int]]:
    points = [v for v in range(n) for _ in range(r)]
    for _ in range(max_attempts):
        rng.shuffle(points)
        seen = set()
        edges = []
        ok = True
        for i in range(0, len(points), 2):
            u, v = points[i], points[i + 1]
            if u == v:
                ok = False
                break
            key = (min(u, v), max(u, v))
            if key in seen:
                ok = False
                break
            seen.add(key)
            edges.append(key)
        if ok:
            return edges
    raise GenerationError(
        f"pairing model rejected {max_attempts} attempts for n={n}, r={r}"
    )


def edge_boundary(G: RegularGraph, A: int) -> int:
    """|∂_e A|: number of edges with exactly one endpoint in A."""
    if A >> G.n:
        raise ParameterError("subset mask has bits outside [0, n)")
    count = 0
    for u in range(G.n):
        if (A >> u) & 1:
            for v in G.adjacency[u]:
                if not (A >> v) & 1:
                    count += 1
    return count


def edge_boundary_table(G: RegularGraph) -> np.ndarray:
    """|∂_e A| for every mask A in [0, 2^n), as an int32 array.

    Memory is the binding constraint (not time), so masks are processed in
    chunks; the cap matches the exhaustive enumeration cap.
    """
    n = G.n
    if n > ISO_EXACT_CAP:
        raise CapacityError(f"boundary table needs n <= {ISO_EXACT_CAP}, got n={n}")
    size = 1 << n
    bnd = np.zeros(size, dtype=np.int32)
    chunk = min(size, 1 << 20)
    for start in range(0, size, chunk):
        masks = np.arange(start, start + chunk, dtype=np.uint32)
        acc = np.zeros(chunk, dtype=np.int32)
        for u, v in G.edges():
            acc += ((masks >> np.uint32(u)) ^ (masks >> np.uint32(v))) & np.uint32(1)
        bnd[start : start + chunk] = acc
    return bnd


class IsoperimetricResult:
    """Exact or heuristic isoperimetric values with minimizing witnesses."""

    __slots__ = ("i_e", "witness", "i_e_prime", "witness_prime", "exact")

    def __init__(self, i_e, witness, i_e_prime, witness_prime, exact):
        self.i_e = i_e
        self.witness = witness
        self.i_e_prime = i_e_prime
        self.witness_prime = witness_prime
        self.exact = exact

    def __repr__(self) -> str:
        kind = "exact" if self.exact else "heuristic"
        return f"IsoperimetricResult({kind}, i_e={self.i_e}, i_e'={self.i_e_prime})"


def isoperimetric_exact(G: RegularGraph) -> IsoperimetricResult:
    """Exact i_e and i_e' by enumeration of all subsets with |A| <= n/2.

    Values are exact rationals; witnesses are the numerically smallest
    minimizing masks (deterministic tie-break).
    """
    n = G.n
    if n > ISO_EXACT_CAP:
        raise CapacityError(
            f"exact isoperimetric enumeration capped at n={ISO_EXACT_CAP} "
            f"(got n={n}); use isoperimetric_heuristic"
        )
    bnd = edge_boundary_table(G)
    masks = np.arange(1 << n, dtype=np.uint32)
    sizes = np.bitwise_count(masks).astype(np.int32)

    best: Fraction | None = None
    best_mask = 0
    half = n // 2
    for k in range(1, half + 1):
        at_k = np.nonzero(sizes == k)[0]
        b = bnd[at_k]
        bmin = int(b.min())
        value = Fraction(bmin, k)
        if best is None or value < best:
            best = value
            best_mask = int(at_k[b == bmin].min())
    at_half = np.nonzero(sizes == half)[0]
    b = bnd[at_half]
    bmin = int(b.min())
    i_e_prime = Fraction(bmin, half)
    witness_prime = int(at_half[b == bmin].min())
    assert best is not None and best <= i_e_prime
    return IsoperimetricResult(best, best_mask, i_e_prime, witness_prime, exact=True)


def _subset_ratio(G: RegularGraph, A: int) -> Fraction:
    return Fraction(edge_boundary(G, A), int(A).bit_count())


def isoperimetric_heuristic(
    G: RegularGraph, seed: int = 0, effort: int = 20
) -> IsoperimetricResult:
    """Upper bound on i_e by randomized local search over subsets.

    Moves: add a vertex, drop a vertex, or swap one in/one out, keeping
    |A| <= n/2 and accepting any strict improvement of |∂_e A|/|A|.
    The returned value is always >= i_e(G), witnessed by a concrete set.
    """
    if not G.is_connected():
        raise ParameterError("heuristic search requires a connected graph")
    n = G.n
    half = n // 2
    rng = random.Random(seed)
    best: Fraction | None = None
    best_mask = 0
    best_half: Fraction | None = None
    best_half_mask = 0
    for _ in range(max(1, effort)):
        members = rng.sample(range(n), half)
        A = 0
        for v in members:
            A |= 1 << v
        improved = True
        while improved:
            improved = False
            current = _subset_ratio(G, A)
            inside = [v for v in range(n) if (A >> v) & 1]
            outside = [v for v in range(n) if not (A >> v) & 1]
            rng.shuffle(inside)
            rng.shuffle(outside)
            candidates: list[int] = []
            for u in inside:
                if len(inside) > 1:
                    candidates.append(A & ~(1 << u))
                for v in outside:
                    candidates.append((A & ~(1 << u)) | (1 << v))
            if len(inside) < half:
                for v in outside:
                    candidates.append(A | (1 << v))
            for cand in candidates:
                if _subset_ratio(G, cand) < current:
                    A = cand
                    improved = True
                    break
        value = _subset_ratio(G, A)
        if best is None or value < best:
            best, best_mask = value, A
        if int(A).bit_count() == half and (best_half is None or value < best_half):
            best_half, best_half_mask = value, A
    if best_half is None:
        # fall back to an arbitrary half-set for the i_e' witness
        best_half_mask = (1 << half) - 1
        best_half = _subset_ratio(G, best_half_mask)
    assert best is not None
    return IsoperimetricResult(best, best_mask, best_half, best_half_mask, exact=False)


def bollobas_lower_bound(r: int) -> float:
    """r/2 - sqrt(log 2) * sqrt(r); asymptotic whp lower bound on i_e."""
    if r < 3:
        raise ParameterError(f"need r >= 3, got r={r}")
    return r / 2 - math.sqrt(math.log(2)) * math.sqrt(r)


def zeta_condition(r: int, zeta: float) -> bool:
    """Whether 2^(4/r) < (1-zeta)^(1-zeta) * (1+zeta)^(1+zeta)."""
    if not 0 < zeta < 1:
        raise ParameterError(f"need zeta in (0,1), got {zeta}")
    lhs = 2 ** (4 / r)
    rhs = (1 - zeta) ** (1 - zeta) * (1 + zeta) ** (1 + zeta)
    return lhs < rhs


def write_edge_list(G: RegularGraph, fh: TextIO) -> None:
    fh.write(f"{G.n} {G.r}\n")
    for u, v in G.edges():
        fh.write(f"{u} {v}\n")


def read_edge_list(fh: TextIO) -> RegularGraph:
    header = fh.readline().split()
    if len(header) != 2:
        raise ParameterError("edge-list header must be 'n r'")
    try:
        n, r = int(header[0]), int(header[1])
    except ValueError as exc:
        raise ParameterError(f"bad edge-list header: {header}") from exc
    edges = []
    for line in fh:
        line = line.strip()
        if not line:
            continue
        parts = line.split()
        if len(parts) != 2:
            raise ParameterError(f"bad edge line: {line!r}")
        edges.append((int(parts[0]), int(parts[1])))
    return RegularGraph(n, r, edges)


def graph_hash(G: RegularGraph) -> str:
    """Digest of the canonical sorted edge list; links reports across commands."""
    payload = f"{G.n} {G.r}\n" + "\n".join(f"{u} {v}" for u, v in G.edges())
    return hashlib.sha256(payload.encode()).hexdigest()[:16]
