import numpy as np
import pytest

from spinflip.quadrature import (QuadratureOutcome, QuadratureSpec,
                                 integrate_decaying_tail, integrate_finite)


class TestFinite:
    def test_linear_monomial(self):
        out = integrate_finite(lambda q: q, 0.0, 1.0)
        assert out.converged
        assert np.isclose(out.value, 0.5, rtol=1e-12)

    def test_inverse_sqrt_upper_endpoint(self):
        spec = QuadratureSpec(singularity_mode="inverse_sqrt_at_upper")
        out = integrate_finite(lambda q: 1.0 / np.sqrt(1.0 - q), 0.0, 1.0, spec)
        assert out.converged
        assert np.isclose(out.value, 2.0, rtol=1e-10)

    def test_complex_exponential(self):
        out = integrate_finite(lambda q: np.exp(1j * q), 0.0, np.pi)
        assert out.converged
        assert np.isclose(out.value, 2j, rtol=1e-12)

    def test_requires_increasing_interval(self):
        with pytest.raises(ValueError):
            integrate_finite(lambda q: q, 1.0, 0.0)

    def test_budget_exhaustion_is_flagged_not_raised(self):
        spec = QuadratureSpec(rel_tol=1e-14, max_subdivisions=4)
        out = integrate_finite(lambda q: np.sin(50.0 * q) / (1e-3 + q * q),
                               0.0, 10.0, spec)
        assert isinstance(out, QuadratureOutcome)
        assert not out.converged
        assert out.error_estimate > 0

    def test_evaluation_count_tracks_panels(self):
        out = integrate_finite(lambda q: q * q, 0.0, 1.0)
        assert out.evaluations % 15 == 0
        assert out.evaluations >= 15


class TestTail:
    def test_plain_exponential(self):
        spec = QuadratureSpec(abs_tol=1e-13)
        out = integrate_decaying_tail(lambda q: np.exp(-q), 0.0, 1.0, spec)
        assert out.converged
        assert np.isclose(out.value, 1.0, rtol=1e-10)

    def test_damped_cosine(self):
        # int_0^inf e^{-aq} cos(bq) dq = a/(a^2+b^2)
        spec = QuadratureSpec(abs_tol=1e-13)
        out = integrate_decaying_tail(
            lambda q: np.exp(-q) * np.cos(3.0 * q), 0.0, 1.0, spec)
        assert np.isclose(out.value, 0.1, rtol=1e-9)

    def test_cubic_gamma_identity(self):
        # int_0^inf q^3 e^{-2q} dq = 3!/2^4 = 3/8
        spec = QuadratureSpec(abs_tol=1e-14)
        out = integrate_decaying_tail(
            lambda q: q ** 3 * np.exp(-2.0 * q), 0.0, 0.5, spec)
        assert np.isclose(out.value, 0.375, rtol=1e-10)

    def test_bad_decay_scale(self):
        with pytest.raises(ValueError):
            integrate_decaying_tail(lambda q: np.exp(-q), 0.0, 0.0)


class TestProperties:
    def test_linearity_on_random_smooth_functions(self):
        rng = np.random.default_rng(20240817)
        for _ in range(8):
            c = rng.normal(size=4)
            alpha, beta = rng.normal(size=2)

            def f(q):
                return c[0] * q * q + c[1] * np.sin(3 * q)

            def g(q):
                return c[2] * np.exp(-q) + c[3] * q

            lhs = integrate_finite(lambda q: alpha * f(q) + beta * g(q),
                                   0.0, 2.0).value
            rhs = (alpha * integrate_finite(f, 0.0, 2.0).value
                   + beta * integrate_finite(g, 0.0, 2.0).value)
            assert np.isclose(lhs, rhs, rtol=1e-10, atol=1e-13)

    def test_determinism_bit_identical(self):
        def f(q):
            return np.exp(1j * 7.0 * q) / (1.0 + q * q)

        a = integrate_finite(f, 0.0, 5.0)
        b = integrate_finite(f, 0.0, 5.0)
        assert a.value == b.value
        assert a.error_estimate == b.error_estimate
        assert a.evaluations == b.evaluations

    def test_error_honesty_on_analytic_set(self):
        cases = [
            (lambda q: q, 0.0, 1.0, 0.5),
            (lambda q: q ** 3, 0.0, 2.0, 4.0),
            (lambda q: np.sin(q), 0.0, np.pi, 2.0),
            (lambda q: np.exp(1j * q), 0.0, np.pi, 2j),
            (lambda q: 2.0 * q * np.exp(-q * q), 0.0, 3.0, 1.0 - np.exp(-9.0)),
            (lambda q: 1.0 / (1.0 + q * q), 0.0, 1.0, np.pi / 4),
            (lambda q: np.cos(12.0 * q), 0.0, 1.0, np.sin(12.0) / 12.0),
            (lambda q: q * np.exp(1j * q), 0.0, 2.0,
             np.exp(2j) * (1.0 - 2j) - 1.0),
        ]
        for f, a, b, exact in cases:
            out = integrate_finite(f, a, b)
            true_err = abs(out.value - exact)
            # allow a machine-noise floor for rules that are exact
            assert true_err <= 10.0 * out.error_estimate \
                + 1e-13 * (1.0 + abs(exact))


class TestSpecValidation:
    def test_tolerances_must_be_positive(self):
        with pytest.raises(ValueError):
            QuadratureSpec(rel_tol=0.0)
        with pytest.raises(ValueError):
            QuadratureSpec(abs_tol=-1.0)
        with pytest.raises(ValueError):
            QuadratureSpec(max_subdivisions=0)

    def test_unknown_singularity_mode(self):
        with pytest.raises(ValueError):
            QuadratureSpec(singularity_mode="inverse_sqrt_at_lower")
