"""Spin-flip rates from the magnetic noise tensor, matrix elements, and trap loss.

The flip rate of a trapped ground-state alkali atom between adjacent Zeeman
sublevels is

    Gamma = mu0 (2 (muB gS)^2 / hbar) (n_th + 1)
            * [ |S_par|^2 (I_free + I_par) + |S_norm|^2 (I_free + I_norm) ]

where S_par, S_norm are electron-spin matrix elements along the in-plane axis
perpendicular to the bias field and along the surface normal, and the I's are
the diagonal noise-tensor components from layered_green. Cross terms between
those axes vanish by the planar symmetry of the stack.
"""

import math
from dataclasses import dataclass

from .layered_green import LayerStack, im_curlcurl_free, im_curlcurl_scattered
from .quadrature import QuadratureSpec
from .quantities import CONSTANTS, thermal_occupation


class ForbiddenTransitionError(ValueError):
    """Raised for transitions that violate the Delta mF = +-1 selection rule."""


@dataclass(frozen=True)
class SpinTransition:
    """One hyperfine Zeeman transition in surface-adapted axes.

    omega is the transition angular frequency; S_inplane and S_normal are the
    electron-spin matrix elements along the in-plane axis perpendicular to the
    bias field and along the surface normal (the bias field lies in the
    surface plane).
    """

    omega: float
    S_inplane: complex
    S_normal: complex
    label: str = ""

    def __post_init__(self):
        if self.omega <= 0:
            raise ValueError("omega must be positive")
        if self.S_inplane == 0 and self.S_normal == 0:
            raise ValueError("at least one matrix element must be nonzero")

    @property
    def matrix_element_sum(self) -> float:
        """Sum of squared matrix-element magnitudes entering the rate."""
        return abs(self.S_inplane) ** 2 + abs(self.S_normal) ** 2


@dataclass(frozen=True)
class LossModel:
    """Trap-loss bookkeeping on top of the bare flip rate.

    The spin-flip channel removes atoms more slowly than it flips them (the
    first flip lands in a still-trapped sublevel), so the flip-limited loss
    lifetime is the flip lifetime multiplied by flip_to_loss_factor (default
    5/3). background_rate adds distance-independent loss, e.g. from residual
    gas collisions.
    """

    flip_to_loss_factor: float = 5.0 / 3.0
    background_rate: float = 0.0

    def __post_init__(self):
        if self.flip_to_loss_factor <= 0:
            raise ValueError("flip_to_loss_factor must be positive")
        if self.background_rate < 0:
            raise ValueError("background_rate must be non-negative")


def spin_matrix_elements(F: float, mF_i: float, mF_f: float,
                         I: float) -> tuple[complex, complex]:
    """Electron-spin matrix elements for |F, mF_i> -> |F, mF_f>, Delta mF = +-1.

    The electron spin is projected onto F within the hyperfine manifold
    (projection factor [F(F+1) + S(S+1) - I(I+1)] / (2 F(F+1)), S = 1/2) and
    the transverse components follow from ladder-operator algebra. Returns
    (S_inplane, S_normal); both have magnitude projection * ladder / 2.
    """
    if F <= 0 or I < 0:
        raise ValueError("require F > 0 and I >= 0")
    if not (math.isclose(F, I + 0.5) or math.isclose(F, abs(I - 0.5))):
        raise ValueError(f"F={F} is not a valid I +- 1/2 manifold for I={I}")
    if abs(mF_i) > F + 1e-12 or abs(mF_f) > F + 1e-12:
        raise ValueError("|mF| must not exceed F")
    dm = mF_f - mF_i
    if math.isclose(dm, 0.0):
        raise ForbiddenTransitionError("mF_i = mF_f is not a spin flip")
    if not math.isclose(abs(dm), 1.0):
        raise ForbiddenTransitionError(
            f"Delta mF = {dm:+g} is forbidden; only Delta mF = +-1 couples")

    proj = (F * (F + 1) + 0.75 - I * (I + 1)) / (2 * F * (F + 1))
    if dm < 0:
        ladder = math.sqrt(F * (F + 1) - mF_i * (mF_i - 1))   # <f|F_-|i>
        fx, fy = ladder / 2.0, 1j * ladder / 2.0
    else:
        ladder = math.sqrt(F * (F + 1) - mF_i * (mF_i + 1))   # <f|F_+|i>
        fx, fy = ladder / 2.0, -1j * ladder / 2.0
    return proj * fx, proj * fy


def rb87_ground_transition(omega: float) -> SpinTransition:
    """The (F, mF) = (2, 2) -> (2, 1) transition of a nuclear-spin-3/2 alkali."""
    s_ip, s_n = spin_matrix_elements(F=2, mF_i=2, mF_f=1, I=1.5)
    return SpinTransition(omega=omega, S_inplane=s_ip, S_normal=s_n,
                          label="(2,2)->(2,1)")


def free_space_lifetime(t: SpinTransition) -> float:
    """Zero-temperature free-space lifetime 3 pi hbar c^3 / (mu0 omega^3 sum|gS muB S|^2)."""
    k = CONSTANTS
    return (3.0 * math.pi * k.hbar * k.c ** 3
            / (k.mu0 * t.omega ** 3 * (k.gS * k.muB) ** 2 * t.matrix_element_sum))


def flip_rate_free(t: SpinTransition, T: float) -> float:
    """Flip rate far from any surface, (n_th + 1)/tau0."""
    return (thermal_occupation(t.omega, T) + 1.0) / free_space_lifetime(t)


def flip_rate(t: SpinTransition, d: float, stack: LayerStack, T: float,
              spec: QuadratureSpec = QuadratureSpec()) -> float:
    """Spin-flip rate [1/s] at height d above the stack at temperature T.

    Propagates GreenAccuracyError from the noise-tensor quadrature.
    """
    g = im_curlcurl_scattered(d, t.omega, stack, spec)
    return flip_rate_from_green(t, g, T)


def flip_rate_from_green(t: SpinTransition, g, T: float) -> float:
    """Assemble the rate from an already-computed GreenResult."""
    prefactor = (CONSTANTS.mu0 * 2.0 * (CONSTANTS.muB * CONSTANTS.gS) ** 2
                 / CONSTANTS.hbar * (thermal_occupation(t.omega, T) + 1.0))
    return prefactor * (abs(t.S_inplane) ** 2 * (g.I_free + g.I_par)
                        + abs(t.S_normal) ** 2 * (g.I_free + g.I_norm))


def trap_loss_rate(gamma_flip: float, m: LossModel) -> float:
    """Trap loss rate: flip rate slowed by the loss factor, plus background."""
    if gamma_flip < 0:
        raise ValueError("gamma_flip must be non-negative")
    return gamma_flip / m.flip_to_loss_factor + m.background_rate
