"""Spin-flip lifetimes of magnetically trapped atoms above layered conducting films.

The library evaluates the magnetic near-field noise of a planar
vacuum/film/substrate stack through wavenumber integrals over generalized
reflection coefficients, assembles spin-flip and trap-loss rates from it, and
checks the results against closed-form scaling laws in the deep
scale-separation regimes.
"""

from .asymptotics import (Regime, RegimeInputs, asymptotic_lifetime,
                          classify_regime, delta_min)
from .layered_green import (GreenAccuracyError, GreenResult, LayerStack,
                            fresnel_interface, fresnel_stack, im_curlcurl_free,
                            im_curlcurl_scattered, normal_wavenumber)
from .quadrature import (QuadratureOutcome, QuadratureSpec,
                         integrate_decaying_tail, integrate_finite)
from .quantities import (CONSTANTS, Material, PhysicalConstants,
                         UnknownMaterialError, conductivity_from_skin_depth,
                         drude_permittivity, material_preset,
                         material_skin_depth, skin_depth_from_conductivity,
                         superconductor_effective_conductivity,
                         thermal_occupation)
from .spin_flip import (ForbiddenTransitionError, LossModel, SpinTransition,
                        flip_rate, flip_rate_free, flip_rate_from_green,
                        free_space_lifetime, rb87_ground_transition,
                        spin_matrix_elements, trap_loss_rate)

__version__ = "0.1.0"

__all__ = [
    "CONSTANTS", "PhysicalConstants", "Material", "UnknownMaterialError",
    "thermal_occupation", "skin_depth_from_conductivity",
    "conductivity_from_skin_depth", "drude_permittivity",
    "superconductor_effective_conductivity", "material_preset",
    "material_skin_depth",
    "QuadratureSpec", "QuadratureOutcome", "integrate_finite",
    "integrate_decaying_tail",
    "LayerStack", "GreenResult", "GreenAccuracyError", "normal_wavenumber",
    "fresnel_interface", "fresnel_stack", "im_curlcurl_scattered",
    "im_curlcurl_free",
    "SpinTransition", "LossModel", "ForbiddenTransitionError",
    "spin_matrix_elements", "rb87_ground_transition", "free_space_lifetime",
    "flip_rate", "flip_rate_free", "flip_rate_from_green", "trap_loss_rate",
    "Regime", "RegimeInputs", "classify_regime", "asymptotic_lifetime",
    "delta_min",
    "__version__",
]
