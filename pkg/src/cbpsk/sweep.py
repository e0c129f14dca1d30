"""Experiment orchestration: SNR grids, amplitude-ratio sweeps, and the
rate-curve datasets behind the capacity-comparison figures.

All rates are evaluated at a reference total noise power of 1, so the grid
value rho is both the linear SNR and the mean symbol energy. Axis modes:
"linear_snr" uses rho itself as the abscissa; "eb_n0_db" uses
10*log10(rho / rate), the per-information-bit SNR implied by each point.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from .cocktail import CocktailParams, adr_breakdown
from .mi import Constellation, NoiseModel, awgn_capacity, constellation_mi

__all__ = [
    "CONVENTIONAL_SCHEMES",
    "ALL_SCHEMES",
    "AXIS_MODES",
    "SweepSpec",
    "RateCurve",
    "log_grid",
    "scheme_rate",
    "modulation_rate_curves",
    "cocktail_rate_curves",
    "cocktail_gain_curves",
    "sweep_to_table",
    "curves_from_table",
]

CONVENTIONAL_SCHEMES = ("capacity", "bpsk", "qpsk", "4ask", "8psk")
ALL_SCHEMES = CONVENTIONAL_SCHEMES + ("cocktail",)
AXIS_MODES = ("linear_snr", "eb_n0_db")

# The reference channel: total complex noise power 1, so each real
# dimension carries variance 1/2.
_TOTAL_NOISE = 1.0
_CONSTELLATIONS = {
    "bpsk": Constellation.bpsk(),
    "qpsk": Constellation.qpsk(),
    "4ask": Constellation.ask4(),
    "8psk": Constellation.psk8(),
}


@dataclass(frozen=True)
class SweepSpec:
    """A sweep request: SNR grid, amplitude ratios, scheme set, axis mode."""

    snr_grid: tuple
    ratios: tuple = (1.5, 2.5, 3.5, 5.0)
    eta: float = 0.5
    schemes: tuple = CONVENTIONAL_SCHEMES
    axis_mode: str = "linear_snr"

    def __post_init__(self) -> None:
        grid = tuple(float(r) for r in self.snr_grid)
        if not grid:
            raise ValueError("snr_grid must be nonempty")
        if any(not math.isfinite(r) or r <= 0 for r in grid):
            raise ValueError("snr_grid values must be finite and > 0")
        if any(b <= a for a, b in zip(grid, grid[1:])):
            raise ValueError("snr_grid must be strictly ascending")
        ratios = tuple(float(r) for r in self.ratios)
        if any(not math.isfinite(r) or r <= 1.0 for r in ratios):
            raise ValueError("amplitude ratios must all be > 1")
        if not 0.0 < self.eta < 1.0:
            raise ValueError(f"eta must lie strictly inside (0, 1), got {self.eta}")
        unknown = [s for s in self.schemes if s not in ALL_SCHEMES]
        if unknown:
            raise ValueError(f"unknown schemes {unknown}; valid schemes: {ALL_SCHEMES}")
        if self.axis_mode not in AXIS_MODES:
            raise ValueError(f"axis_mode must be one of {AXIS_MODES}, got {self.axis_mode!r}")
        object.__setattr__(self, "snr_grid", grid)
        object.__setattr__(self, "ratios", ratios)
        object.__setattr__(self, "schemes", tuple(self.schemes))


@dataclass(frozen=True)
class RateCurve:
    """A labeled list of (axis value, rate) rows, strictly ascending in axis."""

    label: str
    rows: tuple

    def __post_init__(self) -> None:
        rows = tuple((float(x), float(y)) for x, y in self.rows)
        if any(b[0] <= a[0] for a, b in zip(rows, rows[1:])):
            raise ValueError(f"curve {self.label!r}: axis values must be strictly ascending")
        object.__setattr__(self, "rows", rows)

    @property
    def xs(self) -> tuple:
        return tuple(r[0] for r in self.rows)

    @property
    def ys(self) -> tuple:
        return tuple(r[1] for r in self.rows)


def log_grid(start: float, stop: float, count: int) -> tuple:
    """A log-spaced grid of ``count`` points from start to stop inclusive."""
    if count < 1 or start <= 0 or stop <= start:
        raise ValueError("need count >= 1 and 0 < start < stop")
    if count == 1:
        return (float(start),)
    step = (math.log10(stop) - math.log10(start)) / (count - 1)
    return tuple(10.0 ** (math.log10(start) + i * step) for i in range(count))


def scheme_rate(scheme: str, snr_linear: float) -> float:
    """Rate, in bits/sec/Hz, of one conventional scheme at symbol SNR rho.

    The symbol energy is rho on the reference channel. 1-D alphabets (bpsk,
    4ask) occupy a single real dimension and therefore see half the total
    noise power; 2-D alphabets split it across both dimensions.
    """
    if snr_linear < 0 or not math.isfinite(snr_linear):
        raise ValueError(f"snr must be finite and >= 0, got {snr_linear!r}")
    if scheme == "capacity":
        return awgn_capacity(snr_linear)
    try:
        base = _CONSTELLATIONS[scheme]
    except KeyError:
        raise ValueError(f"unknown scheme {scheme!r}; valid schemes: {CONVENTIONAL_SCHEMES}") from None
    if snr_linear == 0.0:
        return 0.0
    c = base.scaled(math.sqrt(snr_linear * _TOTAL_NOISE))
    if c.dimension == 1:
        return constellation_mi(c, NoiseModel(_TOTAL_NOISE / 2.0))
    return constellation_mi(c, NoiseModel(_TOTAL_NOISE))


def _axis_value(axis_mode: str, rho: float, rate: float) -> float:
    if axis_mode == "linear_snr":
        return rho
    if rate <= 0.0:
        raise ZeroDivisionError(f"rate underflowed at rho={rho}; Eb/N0 axis undefined")
    return 10.0 * math.log10(rho / rate)


def modulation_rate_curves(spec: SweepSpec) -> list:
    """Rate curves of the conventional schemes (and capacity) over the grid."""
    bad = [s for s in spec.schemes if s not in CONVENTIONAL_SCHEMES]
    if bad:
        raise ValueError(f"modulation curves support {CONVENTIONAL_SCHEMES}, got {bad}")
    curves = []
    for scheme in spec.schemes:
        rows = []
        for rho in spec.snr_grid:
            rate = scheme_rate(scheme, rho)
            rows.append((_axis_value(spec.axis_mode, rho, rate), rate))
        curves.append(RateCurve(scheme, tuple(rows)))
    return curves


def _cocktail_total(ratio: float, eta: float, rho: float) -> float:
    # Same mean input energy as the comparison schemes: E_in = rho * noise.
    params = CocktailParams.from_ratio(ratio, rho * _TOTAL_NOISE, eta)
    return adr_breakdown(params, NoiseModel(_TOTAL_NOISE)).total


def cocktail_rate_curves(spec: SweepSpec) -> list:
    """Cocktail total-rate curves per amplitude ratio, plus any reference
    curves ("capacity", "bpsk") present in the scheme set."""
    if not spec.ratios:
        raise ValueError("ratios must be nonempty")
    curves = []
    for ref in ("capacity", "bpsk"):
        if ref in spec.schemes:
            rows = []
            for rho in spec.snr_grid:
                rate = scheme_rate(ref, rho)
                rows.append((_axis_value(spec.axis_mode, rho, rate), rate))
            curves.append(RateCurve(ref, tuple(rows)))
    for ratio in spec.ratios:
        rows = []
        for rho in spec.snr_grid:
            total = _cocktail_total(ratio, spec.eta, rho)
            rows.append((_axis_value(spec.axis_mode, rho, total), total))
        curves.append(RateCurve(f"cocktail r={ratio:g}", tuple(rows)))
    return curves


def cocktail_gain_curves(spec: SweepSpec) -> list:
    """Curves of (cocktail total rate - capacity) per amplitude ratio."""
    if not spec.ratios:
        raise ValueError("ratios must be nonempty")
    curves = []
    for ratio in spec.ratios:
        rows = []
        for rho in spec.snr_grid:
            total = _cocktail_total(ratio, spec.eta, rho)
            gain = total - awgn_capacity(rho)
            rows.append((_axis_value(spec.axis_mode, rho, total), gain))
        curves.append(RateCurve(f"gain r={ratio:g}", tuple(rows)))
    return curves


def sweep_to_table(curves) -> list:
    """Flatten curves into long-format (label, axis, value) rows, losslessly."""
    return [(c.label, x, y) for c in curves for x, y in c.rows]


def curves_from_table(rows) -> list:
    """Rebuild curves from a long-format table; inverse of sweep_to_table."""
    order = []
    grouped = {}
    for label, x, y in rows:
        if label not in grouped:
            grouped[label] = []
            order.append(label)
        grouped[label].append((x, y))
    return [RateCurve(label, tuple(grouped[label])) for label in order]
