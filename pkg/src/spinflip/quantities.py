"""Physical constants, thermal photon statistics, and material dispersion models.

All quantities are SI. Permittivities follow the e^{-i omega t} time convention,
so every passive (lossy) medium has Im(eps) > 0.
"""

import math
from dataclasses import dataclass
from typing import NamedTuple


@dataclass(frozen=True)
class PhysicalConstants:
    """CODATA SI constants. Frozen; never mutated at runtime."""

    mu0: float = 1.25663706212e-6    # vacuum permeability [H/m]
    hbar: float = 1.054571817e-34    # reduced Planck constant [J s]
    kB: float = 1.380649e-23         # Boltzmann constant [J/K]
    c: float = 299792458.0           # vacuum light speed [m/s]
    muB: float = 9.2740100783e-24    # Bohr magneton [J/T]
    gS: float = 2.0                  # electron spin g-factor

    def __post_init__(self):
        for name in ("mu0", "hbar", "kB", "c", "muB", "gS"):
            if getattr(self, name) <= 0:
                raise ValueError(f"constant {name} must be positive")


CONSTANTS = PhysicalConstants()


class UnknownMaterialError(LookupError):
    """Raised for a preset name that is not registered."""


@dataclass(frozen=True)
class Material:
    """A planar-layer material. Use the factory methods, not the constructor.

    Kinds:
      vacuum          -- eps = 1
      dielectric      -- real relative permittivity eps_r >= 1
      conductor       -- dc conductivity sigma [S/m]
      skin_depth      -- skin depth delta [m] quoted at omega_ref [rad/s]
      superconductor  -- (Tc, gap_ratio, sigma_normal, T); the effective
                         conductivity follows the thermally-broken-pair model,
                         see superconductor_effective_conductivity().
    """

    kind: str
    eps_r: float = 1.0
    sigma: float = 0.0
    delta: float = 0.0
    omega_ref: float = 0.0
    Tc: float = 0.0
    gap_ratio: float = 0.0
    sigma_normal: float = 0.0
    T: float = 0.0

    def __post_init__(self):
        if self.kind not in ("vacuum", "dielectric", "conductor", "skin_depth",
                             "superconductor"):
            raise ValueError(f"unknown material kind {self.kind!r}")
        if self.kind == "dielectric" and self.eps_r < 1.0:
            raise ValueError("dielectric requires eps_r >= 1")
        if self.kind == "conductor" and self.sigma <= 0:
            raise ValueError("conductor requires sigma > 0")
        if self.kind == "skin_depth" and (self.delta <= 0 or self.omega_ref <= 0):
            raise ValueError("skin_depth requires delta > 0 and omega_ref > 0")
        if self.kind == "superconductor":
            if self.Tc <= 0 or self.sigma_normal <= 0 or self.gap_ratio <= 0:
                raise ValueError("superconductor requires Tc, gap_ratio, "
                                 "sigma_normal > 0")
            if self.T <= 0:
                raise ValueError("superconductor requires T > 0")

    @staticmethod
    def vacuum() -> "Material":
        return Material(kind="vacuum")

    @staticmethod
    def dielectric(eps_r: float) -> "Material":
        return Material(kind="dielectric", eps_r=eps_r)

    @staticmethod
    def conductor(sigma: float) -> "Material":
        return Material(kind="conductor", sigma=sigma)

    @staticmethod
    def skin_depth_defined(delta: float, omega_ref: float) -> "Material":
        return Material(kind="skin_depth", delta=delta, omega_ref=omega_ref)

    @staticmethod
    def superconductor(Tc: float, gap_ratio: float, sigma_normal: float,
                       T: float) -> "Material":
        return Material(kind="superconductor", Tc=Tc, gap_ratio=gap_ratio,
                        sigma_normal=sigma_normal, T=T)


VACUUM = Material.vacuum()


def thermal_occupation(omega: float, T: float) -> float:
    """Mean thermal photon number per mode, 1/(e^{hbar omega/kB T} - 1).

    Returns exactly 0 for T = 0. Raises ValueError for omega <= 0 or T < 0.
    """
    if omega <= 0:
        raise ValueError("omega must be positive")
    if T < 0:
        raise ValueError("T must be non-negative")
    if T == 0:
        return 0.0
    x = CONSTANTS.hbar * omega / (CONSTANTS.kB * T)
    if x > 700.0:
        # expm1 would overflow; Boltzmann tail is exact to double precision
        return math.exp(-x)
    return 1.0 / math.expm1(x)


def skin_depth_from_conductivity(sigma: float, omega: float) -> float:
    """delta = sqrt(2/(mu0 omega sigma))."""
    if sigma <= 0 or omega <= 0:
        raise ValueError("sigma and omega must be positive")
    return math.sqrt(2.0 / (CONSTANTS.mu0 * omega * sigma))


def conductivity_from_skin_depth(delta: float, omega: float) -> float:
    """sigma = 2/(mu0 omega delta^2); exact inverse of skin_depth_from_conductivity."""
    if delta <= 0 or omega <= 0:
        raise ValueError("delta and omega must be positive")
    return 2.0 / (CONSTANTS.mu0 * omega * delta * delta)


class EffectiveConductivity(NamedTuple):
    sigma: float
    normal_state: bool


def superconductor_effective_conductivity(m: Material,
                                          cap: float = 100.0) -> EffectiveConductivity:
    """Effective conductivity of a superconductor from thermally broken pairs.

    sigma_eff = sigma_normal * min(cap, exp(2 Delta(0) (1/kB T - 1/kB Tc)))
    with Delta(0) = gap_ratio * kB * Tc. At T = Tc this is sigma_normal; above
    Tc the material is flagged normal and sigma_normal is returned. The cap
    (default 100) bounds the low-temperature enhancement.
    """
    if m.kind != "superconductor":
        raise ValueError("material is not a superconductor")
    if m.T >= m.Tc:
        return EffectiveConductivity(m.sigma_normal, normal_state=True)
    gap0 = m.gap_ratio * CONSTANTS.kB * m.Tc
    boost = math.exp(2.0 * gap0 / CONSTANTS.kB * (1.0 / m.T - 1.0 / m.Tc))
    return EffectiveConductivity(m.sigma_normal * min(cap, boost),
                                 normal_state=False)


def material_conductivity(m: Material, omega: float) -> float:
    """Conductivity of a material at omega; 0 for lossless kinds."""
    if m.kind == "conductor":
        return m.sigma
    if m.kind == "skin_depth":
        return conductivity_from_skin_depth(m.delta, m.omega_ref)
    if m.kind == "superconductor":
        return superconductor_effective_conductivity(m).sigma
    return 0.0


def material_skin_depth(m: Material, omega: float):
    """Skin depth of a lossy material at omega, or None for lossless kinds."""
    sigma = material_conductivity(m, omega)
    if sigma == 0.0:
        return None
    return skin_depth_from_conductivity(sigma, omega)


def drude_permittivity(m: Material, omega: float) -> complex:
    """Complex relative permittivity at omega.

    Lossy kinds use eps = 1 + 2i (c/(omega delta))^2 with delta the effective
    skin depth at omega; the vacuum term keeps the delta -> infinity limit
    exact. Vacuum gives 1, dielectric gives eps_r.
    """
    if omega <= 0:
        raise ValueError("omega must be positive")
    if m.kind == "vacuum":
        return 1.0 + 0.0j
    if m.kind == "dielectric":
        return complex(m.eps_r)
    delta = material_skin_depth(m, omega)
    return 1.0 + 2.0j * (CONSTANTS.c / (omega * delta)) ** 2


_PRESET_NAMES = ("Cu", "Al", "Nb_normal", "Nb_super", "custom")

# bulk dc conductivities [S/m]; Nb values are the measured normal-state
# anchors used throughout
_SIGMA_CU = 5.8e7
_SIGMA_AL = 3.5e7
_SIGMA_NB_NORMAL = 2.0e9
_NB_TC = 9.3          # [K]
_NB_GAP_RATIO = 2.1   # Delta(0)/(kB Tc)


def material_preset(name: str, T: float) -> Material:
    """Build a named material preset at temperature T.

    Valid names: Cu, Al, Nb_normal, Nb_super. "custom" is reserved and raises,
    directing the caller to a Material factory.
    """
    if name == "custom":
        raise ValueError("preset 'custom' is not constructible; build a "
                         "Material directly via its factory methods")
    if name == "Cu":
        return Material.conductor(_SIGMA_CU)
    if name == "Al":
        return Material.conductor(_SIGMA_AL)
    if name == "Nb_normal":
        return Material.conductor(_SIGMA_NB_NORMAL)
    if name == "Nb_super":
        return Material.superconductor(Tc=_NB_TC, gap_ratio=_NB_GAP_RATIO,
                                       sigma_normal=_SIGMA_NB_NORMAL, T=T)
    raise UnknownMaterialError(
        f"unknown material preset {name!r}; valid names: {', '.join(_PRESET_NAMES)}")
