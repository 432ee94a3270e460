"""Exact energy-landscape analysis over the configuration hypercube.

Communication heights and stability levels come from a single union-find
sweep over the energy-sorted configurations; everything is computed in
exact scaled-integer arithmetic (energies times the denominator of h).
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from . import backend
from .errors import CapacityError, ParameterError
from .graphs import RegularGraph
from .model import EnergyParams, all_minus, all_plus, scaled_energy_table

LANDSCAPE_CAP = 22

_INF = np.iinfo(np.int64).max

__all__ = [
    "LandscapeReport",
    "CycleRecord",
    "communication_height",
    "stability_level",
    "full_landscape",
    "sublevel_cycle",
    "metastable_set_at_level",
    "LANDSCAPE_CAP",
]


def _check_cap(G: RegularGraph) -> None:
    if G.n > LANDSCAPE_CAP:
        raise CapacityError(
            f"exact landscape analysis capped at n={LANDSCAPE_CAP}, got n={G.n}"
        )


def _energy_order(G: RegularGraph, params: EnergyParams):
    scaled, q = scaled_energy_table(G, params)
    order = np.argsort(scaled, kind="stable").astype(np.int64)
    return scaled, q, order


@dataclass
class LandscapeReport:
    """Exhaustive landscape summary for one (graph, field) instance."""

    n: int
    q: int
    energies_scaled: np.ndarray
    stability_scaled: np.ndarray
    phi_minus_to_plus: Fraction
    gamma: Fraction
    metastable_states: list[int]

    def energy(self, sigma: int) -> Fraction:
        return Fraction(int(self.energies_scaled[sigma]), self.q)

    def stability(self, sigma: int) -> Fraction | float:
        v = int(self.stability_scaled[sigma])
        return math.inf if v == _INF else Fraction(v, self.q)

    @property
    def barrier(self) -> Fraction:
        """Phi(all-minus, all-plus) - H(all-minus)."""
        return self.phi_minus_to_plus - self.energy(0)


@dataclass
class CycleRecord:
    """A sublevel set around an anchor, with its boundary and depth."""

    members: set[int]
    external_boundary: set[int]
    depth: Fraction | None
    connected: bool
    nontrivial: bool


def communication_height(
    G: RegularGraph, params: EnergyParams, sigma: int, sigma_prime: int
) -> Fraction:
    """Phi(sigma, sigma') = minimax energy over single-flip paths.

    Path endpoints are included in the max, so Phi >= max(H, H')."""
    _check_cap(G)
    if sigma == sigma_prime:
        scaled, q = scaled_energy_table(G, params)
        return Fraction(int(scaled[sigma]), q)
    scaled, q, order = _energy_order(G, params)
    phi = backend.anchor_phi_sweep(order, scaled, G.n, sigma)
    return Fraction(int(phi[sigma_prime]), q)


def stability_level(
    G: RegularGraph, params: EnergyParams, sigma: int
) -> Fraction | float:
    """V_sigma; +inf for the global minimum (in particular for all-plus)."""
    _check_cap(G)
    scaled, q, order = _energy_order(G, params)
    V = backend.stability_sweep(order, scaled, G.n)
    v = int(V[sigma])
    return math.inf if v == _INF else Fraction(v, q)


def full_landscape(G: RegularGraph, params: EnergyParams) -> LandscapeReport:
    _check_cap(G)
    scaled, q, order = _energy_order(G, params)
    V = backend.stability_sweep(order, scaled, G.n)
    phi = backend.anchor_phi_sweep(order, scaled, G.n, all_minus(G))
    plus = all_plus(G)
    phi_plus = Fraction(int(phi[plus]), q)
    finite = V.copy()
    finite[plus] = -1
    # gamma ranges over sigma != all-plus; other infinities (disconnected
    # energy ties) would surface here as the sentinel
    gamma_scaled = int(finite.max())
    if gamma_scaled == _INF:
        gamma = Fraction(0)
        metastable = [int(s) for s in np.nonzero(finite == _INF)[0]]
    else:
        gamma = Fraction(gamma_scaled, q)
        metastable = [int(s) for s in np.nonzero(finite == gamma_scaled)[0]]
    return LandscapeReport(
        n=G.n,
        q=q,
        energies_scaled=scaled,
        stability_scaled=V,
        phi_minus_to_plus=phi_plus,
        gamma=gamma,
        metastable_states=metastable,
    )


def sublevel_cycle(
    G: RegularGraph, params: EnergyParams, anchor: int, level: Fraction
) -> CycleRecord:
    """The set {sigma : Phi(anchor, sigma) - H(anchor) < level} with boundary.

    By construction this is the connected component of the anchor in the
    strict sublevel graph; connectivity is still verified by BFS and flagged.
    """
    _check_cap(G)
    level = Fraction(level)
    if level <= 0:
        raise ParameterError(f"need level > 0, got {level}")
    scaled, q, order = _energy_order(G, params)
    phi = backend.anchor_phi_sweep(order, scaled, G.n, anchor)
    threshold = int(scaled[anchor]) + level * q
    members = {int(s) for s in np.nonzero(phi < threshold)[0]}
    boundary: set[int] = set()
    for s in members:
        for j in range(G.n):
            t = s ^ (1 << j)
            if t not in members:
                boundary.add(t)
    # BFS inside members under single-flip adjacency
    seen = {anchor}
    stack = [anchor]
    while stack:
        s = stack.pop()
        for j in range(G.n):
            t = s ^ (1 << j)
            if t in members and t not in seen:
                seen.add(t)
                stack.append(t)
    connected = seen == members
    min_inside = min(int(scaled[s]) for s in members)
    if boundary:
        min_boundary = min(int(scaled[s]) for s in boundary)
        depth = Fraction(min_boundary - min_inside, q)
        max_inside = max(int(scaled[s]) for s in members)
        nontrivial = connected and max_inside < min_boundary
    else:
        depth = None
        nontrivial = False
    return CycleRecord(
        members=members,
        external_boundary=boundary,
        depth=depth,
        connected=connected,
        nontrivial=nontrivial,
    )


def metastable_set_at_level(
    G: RegularGraph, params: EnergyParams, level: Fraction | float
) -> set[int]:
    """K_V = {sigma : V_sigma > V}; always contains the global minimum."""
    _check_cap(G)
    scaled, q, order = _energy_order(G, params)
    V = backend.stability_sweep(order, scaled, G.n)
    if level == math.inf:
        return set()
    threshold = Fraction(level) * q
    return {int(s) for s in range(1 << G.n) if int(V[s]) == _INF or int(V[s]) > threshold}
