"""Closed-form lifetime laws in the three deep scale-separation regimes.

With tau0 the free-space lifetime and n_th the thermal occupation,

    tau = (8/3)^2 * tau0/(n_th + 1) * (omega/c)^3 * X

where X = d^4/(3 delta) for delta << d, h (thick slab, small skin depth),
X = delta^2 d / 2 for delta, h >> d (thick slab, large skin depth), and
X = delta^2 d^2 / (2 h) for delta >> d >> h (thin film). The lifetime minimum
over skin depth sits near delta = d for a thick slab and near sqrt(h d) for a
thin film.
"""

import enum
import math
from dataclasses import dataclass

from .quantities import CONSTANTS, thermal_occupation


class Regime(enum.Enum):
    THICK_SMALL_DELTA = "thick_small_delta"   # delta << d, h
    THICK_LARGE_DELTA = "thick_large_delta"   # delta, h >> d
    THIN_FILM = "thin_film"                   # delta >> d >> h
    CROSSOVER = "crossover"


@dataclass(frozen=True)
class RegimeInputs:
    """The three length scales plus frequency, temperature, and tau0."""

    d: float
    delta: float
    h: float          # math.inf for a thick slab
    omega: float
    T: float
    tau0: float

    def __post_init__(self):
        if self.d <= 0 or self.delta <= 0 or not (self.h > 0):
            raise ValueError("lengths must be positive (h may be inf)")
        if self.omega <= 0 or self.tau0 <= 0 or self.T < 0:
            raise ValueError("require omega > 0, tau0 > 0, T >= 0")


def classify_regime(r: RegimeInputs, strictness: float = 10.0) -> Regime:
    """Match the case conditions with "much less than" read as a ratio >= strictness."""
    if strictness <= 1:
        raise ValueError("strictness must exceed 1")
    s = strictness
    if r.delta * s <= r.d and r.delta * s <= r.h:
        return Regime.THICK_SMALL_DELTA
    if r.d * s <= r.delta and r.d * s <= r.h:
        return Regime.THICK_LARGE_DELTA
    if r.d * s <= r.delta and r.h * s <= r.d:
        return Regime.THIN_FILM
    return Regime.CROSSOVER


def asymptotic_lifetime(r: RegimeInputs, regime: Regime) -> float:
    """Closed-form lifetime for one deep regime; rejects CROSSOVER."""
    if regime is Regime.CROSSOVER:
        raise ValueError("no closed form in the crossover; use the full "
                         "wavenumber integral")
    if regime is Regime.THICK_SMALL_DELTA:
        x = r.d ** 4 / (3.0 * r.delta)
    elif regime is Regime.THICK_LARGE_DELTA:
        x = r.delta ** 2 * r.d / 2.0
    else:
        if math.isinf(r.h):
            raise ValueError("thin-film law requires a finite film thickness")
        x = r.delta ** 2 * r.d ** 2 / (2.0 * r.h)
    nbar = thermal_occupation(r.omega, r.T)
    return ((8.0 / 3.0) ** 2 * r.tau0 / (nbar + 1.0)
            * (r.omega / CONSTANTS.c) ** 3 * x)


def delta_min(d: float, h: float = math.inf) -> float:
    """Skin depth of maximal noise coupling: d for a thick slab, sqrt(h d) thin."""
    if d <= 0 or not (h > 0):
        raise ValueError("require d > 0 and h > 0 (h may be inf)")
    if math.isinf(h):
        return d
    return math.sqrt(h * d)
