"""Scalar decay oracles: closed form, extinction time, regularized integration."""

import numpy as np
import pytest

from torusdamp.oracles import (
    ode_oracle_exact,
    ode_oracle_regularized,
    ode_oracle_tc,
)


class TestExactOracle:
    def test_coulomb_half_time(self):
        assert ode_oracle_exact(1.0, 1.0, 1.0, 0.5) == pytest.approx(0.25, abs=1e-15)

    def test_zero_data(self):
        assert ode_oracle_exact(0.0, 0.5, 2.0, 3.0) == 0.0

    def test_reaches_zero_at_tc(self):
        """y0=4, alpha=1, gamma=0.5: |u0|=2 gives t_c = 2/0.5 = 4."""
        assert ode_oracle_exact(4.0, 1.0, 0.5, 4.0) == 0.0
        assert ode_oracle_exact(4.0, 1.0, 0.5, 3.999) > 0.0

    @pytest.mark.parametrize("alpha", [0.25, 0.5, 1.0])
    @pytest.mark.parametrize("y", [0.3, 1.0, 4.7])
    def test_satisfies_decay_equation(self, alpha, y):
        """Centered difference of y(t) matches -2*gamma*y^(1-a/2) to 1e-6 relative."""
        gamma, h = 1.7, 1e-6
        # pick t well inside the positive regime
        t = 0.25 * ode_oracle_tc(np.sqrt(y), alpha, gamma)
        y_mid = ode_oracle_exact(y, alpha, gamma, t)
        deriv = (
            ode_oracle_exact(y, alpha, gamma, t + h)
            - ode_oracle_exact(y, alpha, gamma, t - h)
        ) / (2.0 * h)
        expected = -2.0 * gamma * y_mid ** (1.0 - 0.5 * alpha)
        assert deriv == pytest.approx(expected, rel=1e-6)

    def test_rejects_negative_arguments(self):
        with pytest.raises(ValueError):
            ode_oracle_exact(-1.0, 1.0, 1.0, 0.1)
        with pytest.raises(ValueError):
            ode_oracle_exact(1.0, 1.0, 1.0, -0.1)


class TestExtinctionTime:
    def test_unit_case(self):
        assert ode_oracle_tc(1.0, 1.0, 1.0) == pytest.approx(1.0, abs=1e-15)

    def test_zero_data(self):
        assert ode_oracle_tc(0.0, 0.5, 1.0) == 0.0

    def test_strong_friction_example(self):
        """|u0|=2, alpha=0.5, gamma=2: sqrt(2)/(0.5*2) = sqrt(2)."""
        assert ode_oracle_tc(2.0, 0.5, 2.0) == pytest.approx(np.sqrt(2.0), rel=1e-14)


class TestRegularizedOracle:
    def test_zero_fixed_point(self):
        assert ode_oracle_regularized(0.0, 0.5, 1.0, 0.1, 7.0) == 0.0

    def test_positive_for_all_representable_times(self):
        """No finite-time arrest: strictly positive until double-precision underflow."""
        for t in (0.1, 1.0, 5.0, 10.0):
            assert ode_oracle_regularized(1.0, 1.0, 1.0, 1e-3, t) > 0.0

    def test_delta_dominated_exponential(self):
        """delta >= 100*y0: y ~ y0*exp(-2*gamma*t/delta^(a/2)) to 1 percent."""
        y0, gamma, delta, alpha, t = 1.0, 0.7, 100.0, 0.5, 2.0
        value = ode_oracle_regularized(y0, alpha, gamma, delta, t)
        approx = y0 * np.exp(-2.0 * gamma * t / delta ** (0.5 * alpha))
        assert value == pytest.approx(approx, rel=1e-2)

    @pytest.mark.parametrize("alpha", [0.5, 1.0])
    def test_converges_to_exact_as_delta_drops(self, alpha):
        """Errors against the closed form decrease monotonically in delta."""
        y0, gamma, t = 1.0, 1.0, 0.4
        exact = ode_oracle_exact(y0, alpha, gamma, t)
        errors = [
            abs(ode_oracle_regularized(y0, alpha, gamma, delta, t) - exact)
            for delta in (1e-2, 1e-4, 1e-6)
        ]
        assert errors[0] > errors[1] > errors[2]

    def test_past_tc_error_also_shrinks(self):
        """Beyond t_c the exact solution is 0 and y_delta itself is the error."""
        values = [
            ode_oracle_regularized(1.0, 1.0, 1.0, delta, 1.2)
            for delta in (1e-2, 1e-4, 1e-6)
        ]
        assert values[0] > values[1] > values[2] > 0.0

    def test_array_times(self):
        ts = np.array([0.0, 0.3, 1.2])
        out = ode_oracle_regularized(2.0, 0.5, 1.0, 0.1, ts)
        assert out.shape == ts.shape
        assert out[0] == 2.0
        assert np.all(np.diff(out) < 0.0)

    def test_validation(self):
        with pytest.raises(ValueError):
            ode_oracle_regularized(1.0, 1.0, 1.0, 0.0, 1.0)
        with pytest.raises(ValueError):
            ode_oracle_regularized(-1.0, 1.0, 1.0, 0.1, 1.0)
        with pytest.raises(ValueError):
            ode_oracle_regularized(1.0, 1.0, 1.0, 0.1, -1.0)
