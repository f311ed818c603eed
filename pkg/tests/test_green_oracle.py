"""Finite-difference curl-curl oracle checks against the direct integrands."""

import math

import numpy as np

from spinflip.layered_green import LayerStack, im_curlcurl_scattered
from spinflip.quadrature import QuadratureSpec
from spinflip.quantities import CONSTANTS, Material
from tests.helpers_oracle import OracleGrid, fd_curlcurl_components

W560 = 2 * math.pi * 560e3
TIGHT = QuadratureSpec(rel_tol=1e-11)


def test_single_point_agreement_s_polarization():
    d, delta, h = 20e-6, 60e-6, 2e-6
    stack = LayerStack(film=Material.skin_depth_defined(delta, W560), h=h,
                       substrate=Material.dielectric(11.7))
    direct = im_curlcurl_scattered(d, W560, stack, TIGHT)
    grid = OracleGrid(W560, stack, kappa_max=max(15.0 / d, 10.0 / delta))
    fd_par, fd_norm = fd_curlcurl_components(grid, d)
    assert abs(fd_par - direct.I_par) <= 1e-5 * abs(direct.I_par)
    assert abs(fd_norm - direct.I_norm) <= 1e-5 * abs(direct.I_norm)


def test_full_dyadic_with_p_polarization_at_mild_retardation():
    # k0*d = 0.5: the longitudinal collapse of the p dyad is mild enough for
    # finite differences, and the propagating segment matters; this closes the
    # p-polarization curl algebra left untestable in the deep near field
    k0 = W560 / CONSTANTS.c
    d = 0.5 / k0
    delta = 20e-6
    stack = LayerStack.thick_slab(Material.skin_depth_defined(delta, W560))
    direct = im_curlcurl_scattered(d, W560, stack, TIGHT)
    grid = OracleGrid(W560, stack, kappa_max=12.0 / d, n_panels=240,
                      include_p=True, include_propagating=True)
    fd_par, fd_norm = fd_curlcurl_components(grid, d)
    # the 12/d truncation bounds the tail at ~e^{-24}; compare at 1e-3
    assert abs(fd_par - direct.I_par) <= 1e-3 * abs(direct.I_par)
    assert abs(fd_norm - direct.I_norm) <= 1e-3 * abs(direct.I_norm)


def test_p_contribution_negligible_in_near_field():
    # the in-plane integrand carries k0^2 r_p; at near-field scales it is
    # below the s contribution by ~(k0 d)^4 and cannot move the 1e-4 oracle
    d, delta = 20e-6, 20e-6
    k0 = W560 / CONSTANTS.c
    assert (k0 * d) ** 4 < 1e-16


def test_fd_step_insensitivity():
    d, delta = 30e-6, 10e-6
    stack = LayerStack.thick_slab(Material.skin_depth_defined(delta, W560))
    direct = im_curlcurl_scattered(d, W560, stack, TIGHT)
    grid = OracleGrid(W560, stack, kappa_max=max(15.0 / d, 10.0 / delta))
    for step in (3e-4, 1e-4, 3e-5):
        fd_par, fd_norm = fd_curlcurl_components(grid, d, step_fraction=step)
        assert abs(fd_par - direct.I_par) <= 1e-5 * abs(direct.I_par)
        assert abs(fd_norm - direct.I_norm) <= 1e-5 * abs(direct.I_norm)
