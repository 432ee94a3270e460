"""Condition verification and the bound formulas tying graph geometry to
the metastable-time exponent.

Everything here is per-instance and exact; the ensemble-level (whp)
statements are reported as pass fractions, never asserted per graph.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction

from .dynamics import HITTING_CAP, estimate_exponent
from .errors import ParameterError
from .graphs import (
    IsoperimetricResult,
    RegularGraph,
    bollobas_lower_bound,
    generate_random_regular,
    graph_hash,
    isoperimetric_exact,
)
from .landscape import LANDSCAPE_CAP, full_landscape
from .model import EnergyParams, all_minus, all_plus

__all__ = [
    "AsymptoticConstants",
    "asymptotic_gamma_bounds",
    "instance_gamma_lower",
    "instance_gamma_upper",
    "stability_upper_bound",
    "ConditionReport",
    "verify_conditions",
    "sandwich_experiment",
    "small_r_inequality",
    "small_r_inequality_weak_variant",
]

_SQRT_LOG2 = math.sqrt(math.log(2))


@dataclass(frozen=True)
class AsymptoticConstants:
    """C0 > 0 small; C1 = sqrt(log 2) + C0 must stay below sqrt(3)/2 so the
    lower exponent (r/2 - C1 sqrt(r)) n is positive for all r >= 3.
    That caps C0 below sqrt(3)/2 - sqrt(log 2) ~ 0.0334."""

    c0: float = 0.02

    def __post_init__(self):
        if self.c0 <= 0:
            raise ParameterError(f"need C0 > 0, got {self.c0}")
        if self.c1 >= math.sqrt(3) / 2:
            raise ParameterError(
                f"C1 = sqrt(log 2) + C0 = {self.c1:.4f} must be < sqrt(3)/2"
            )

    @property
    def c1(self) -> float:
        return _SQRT_LOG2 + self.c0

    @property
    def c2(self) -> float:
        return 6 * _SQRT_LOG2 + 6 * self.c0


def asymptotic_gamma_bounds(
    n: int, r: int, constants: AsymptoticConstants = AsymptoticConstants()
) -> tuple[float, float]:
    """(Gamma_l, Gamma_u) = ((r/2 - C1 sqrt(r)) n, (r/2 + C2 sqrt(r)) n)."""
    if r < 3:
        raise ParameterError(f"need r >= 3, got r={r}")
    sq = math.sqrt(r)
    return (r / 2 - constants.c1 * sq) * n, (r / 2 + constants.c2 * sq) * n


def _iso(G: RegularGraph, iso: IsoperimetricResult | None) -> IsoperimetricResult:
    return isoperimetric_exact(G) if iso is None else iso


def instance_gamma_lower(
    G: RegularGraph, h: Fraction, iso: IsoperimetricResult | None = None
) -> Fraction:
    """(i_e(G) - h) n: deterministic lower bound on Phi(minus,plus) - H(minus)."""
    iso = _iso(G, iso)
    h = Fraction(h)
    if not 0 < h < iso.i_e:
        raise ParameterError(f"need 0 < h < i_e(G) = {iso.i_e}, got h={h}")
    return (iso.i_e - h) * G.n


def _half_ceiling(G: RegularGraph, h: Fraction, iso: IsoperimetricResult) -> int:
    r = G.r
    return max(0, math.ceil((r + h - 2 * iso.i_e) / (r - h) * Fraction(G.n, 2)))


def instance_gamma_upper(
    G: RegularGraph,
    h: Fraction,
    iso: IsoperimetricResult | None = None,
    use_improved: bool = False,
) -> Fraction:
    """(i_e' - h) n + 2(r-2+h) ceil((r+h-2 i_e)/(r-h) n/2), the deterministic
    upper bound; with use_improved (valid when i_e > 1) the factor drops to
    2(r-4+h)."""
    iso = _iso(G, iso)
    h = Fraction(h)
    if not G.is_connected():
        raise ParameterError("upper bound requires a connected graph")
    if not 0 < h < iso.i_e:
        raise ParameterError(f"need 0 < h < i_e(G) = {iso.i_e}, got h={h}")
    if use_improved and not iso.i_e > 1:
        raise ParameterError(f"improved bound needs i_e > 1, got {iso.i_e}")
    r = G.r
    factor = 2 * (r - 4 + h) if use_improved else 2 * (r - 2 + h)
    return (iso.i_e_prime - h) * G.n + factor * _half_ceiling(G, h, iso)


def stability_upper_bound(
    G: RegularGraph,
    h: Fraction,
    iso: IsoperimetricResult | None = None,
    use_improved: bool = False,
) -> Fraction:
    """2(r-2+h) ceil((r+h-2 i_e)/(r-h) n/2): bound on V_sigma for
    sigma outside {all-minus, all-plus}; improved factor 2(r-4+h)."""
    iso = _iso(G, iso)
    h = Fraction(h)
    if not G.is_connected():
        raise ParameterError("stability bound requires a connected graph")
    if not 0 < h < iso.i_e:
        raise ParameterError(f"need 0 < h < i_e(G) = {iso.i_e}, got h={h}")
    if use_improved and not iso.i_e > 1:
        raise ParameterError(f"improved bound needs i_e > 1, got {iso.i_e}")
    r = G.r
    factor = 2 * (r - 4 + h) if use_improved else 2 * (r - 2 + h)
    return factor * _half_ceiling(G, h, iso)


@dataclass
class ConditionReport:
    gamma_lower: Fraction
    gamma_upper: Fraction
    phi: Fraction
    gamma: Fraction
    cond1: bool
    cond2: bool
    cond3a: bool
    cond3b: bool
    cond3a_witness: int | None
    cond3b_witness: int | None
    unique_metastable: bool
    metastable_states: list[int]

    @property
    def all_hold(self) -> bool:
        return self.cond1 and self.cond2 and self.cond3a and self.cond3b


def verify_conditions(
    G: RegularGraph,
    h: Fraction,
    gamma_lower: Fraction | float,
    gamma_upper: Fraction | float,
) -> ConditionReport:
    """Evaluate Conditions (1), (2), (3a), (3b) exactly from the landscape.

    gamma_lower/gamma_upper may be floats (asymptotic bounds) or exact
    rationals (instance-level bounds); comparisons are exact either way.
    """
    gl = Fraction(gamma_lower)
    gu = Fraction(gamma_upper)
    if gl > gu:
        raise ParameterError(f"need Gamma_l <= Gamma_u, got {gl} > {gu}")
    params = EnergyParams(h=Fraction(h))
    report = full_landscape(G, params)
    phi = report.barrier
    minus, plus = all_minus(G), all_plus(G)
    cond3a, cond3b = True, True
    wit3a: int | None = None
    wit3b: int | None = None
    for s in range(1 << G.n):
        if s in (minus, plus):
            continue
        v = report.stability(s)
        if cond3a and not v <= gu:
            cond3a, wit3a = False, s
        if cond3b and not v < gl:
            cond3b, wit3b = False, s
        if not cond3a and not cond3b:
            break
    return ConditionReport(
        gamma_lower=gl,
        gamma_upper=gu,
        phi=phi,
        gamma=report.gamma,
        cond1=phi >= gl,
        cond2=phi <= gu,
        cond3a=cond3a,
        cond3b=cond3b,
        cond3a_witness=wit3a,
        cond3b_witness=wit3b,
        unique_metastable=report.metastable_states == [minus],
        metastable_states=report.metastable_states,
    )


def small_r_inequality(r: int) -> float:
    """2(1 - 4/r) sqrt(log 2) sqrt(r) + sqrt(log 2) - r/2; negative for
    r >= 6, which is what makes the unique-metastable-state argument work."""
    return 2 * (1 - 4 / r) * _SQRT_LOG2 * math.sqrt(r) + _SQRT_LOG2 - r / 2


def small_r_inequality_weak_variant(r: int) -> float:
    """Same with (1 - 2/r): the version available without i_e > 1; fails
    (is nonnegative) for all r <= 10."""
    return 2 * (1 - 2 / r) * _SQRT_LOG2 * math.sqrt(r) + _SQRT_LOG2 - r / 2


def sandwich_experiment(
    r: int,
    n_list: list[int],
    h: Fraction,
    seeds: list[int],
    constants: AsymptoticConstants = AsymptoticConstants(),
    betas: tuple[float, float] = (8.0, 10.0),
    slope_tolerance: float = 0.05,
) -> dict:
    """Sample random r-regular graphs and check the exponent sandwich
    per instance; whp-level results are summarized as pass fractions."""
    h = Fraction(h)
    rows = []
    bollobas = bollobas_lower_bound(r)
    for n in n_list:
        if (n * r) % 2 != 0:
            raise ParameterError(f"n*r must be even, got n={n}, r={r}")
        for seed in seeds:
            G = generate_random_regular(n, r, seed)
            row: dict = {
                "n": n,
                "r": r,
                "seed": seed,
                "graph_hash": graph_hash(G),
                "connected": G.is_connected(),
            }
            iso = isoperimetric_exact(G)
            row["i_e"] = str(iso.i_e)
            row["i_e_prime"] = str(iso.i_e_prime)
            row["meets_bollobas"] = float(iso.i_e) >= bollobas
            if not G.is_connected() or not 0 < h < iso.i_e:
                row["skipped"] = f"needs connected G and 0 < h < i_e = {iso.i_e}"
                rows.append(row)
                continue
            gl = instance_gamma_lower(G, h, iso)
            gu = instance_gamma_upper(G, h, iso)
            row["gamma_l"] = str(gl)
            row["gamma_u"] = str(gu)
            if n <= LANDSCAPE_CAP:
                params = EnergyParams(h=h)
                rep = full_landscape(G, params)
                phi = rep.barrier
                row["phi"] = str(phi)
                row["gamma"] = str(rep.gamma)
                row["sandwich_ok"] = gl <= phi <= gu
                row["metastable"] = [int(s) for s in rep.metastable_states]
            if n <= HITTING_CAP:
                est = estimate_exponent(
                    G, EnergyParams(h=h), list(betas), method="exact-solver"
                )
                row["slope"] = est["slope"]
                if "gamma" in row:
                    gamma = float(Fraction(row["gamma"]))
                    row["slope_matches_gamma"] = (
                        gamma == 0.0
                        if est["slope"] == 0.0
                        else abs(est["slope"] - gamma) <= slope_tolerance * gamma
                    )
            rows.append(row)
    checked = [row for row in rows if "sandwich_ok" in row]
    summary = {
        "instances": len(rows),
        "sandwich_pass_fraction": (
            sum(row["sandwich_ok"] for row in checked) / len(checked) if checked else None
        ),
        "bollobas_fraction": sum(row["meets_bollobas"] for row in rows) / len(rows),
        "asymptotic_gamma_l": asymptotic_gamma_bounds(1, r, constants)[0],
        "asymptotic_gamma_u": asymptotic_gamma_bounds(1, r, constants)[1],
    }
    return {"rows": rows, "summary": summary}
