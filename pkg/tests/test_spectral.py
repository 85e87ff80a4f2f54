"""Grid construction, transforms, and norm evaluations.

Derived expectations are computed by independent routes: plain-Python
quadrature loops for L^p sums, closed forms for constants and plane waves.
"""

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st
from numpy.testing import assert_allclose

from torusdamp.errors import ConfigError, ZeroFieldError
from torusdamp.spectral import (
    ComplexField,
    constant_field,
    laplacian_apply,
    lp_norm,
    make_field,
    make_grid,
    plane_wave,
    random_field,
    sobolev_norm,
    to_physical,
    to_spectral,
)

from conftest import random_values


class TestMakeGrid:
    def test_1d_cell_count_and_volume(self):
        """(1, [8], [2*pi]) -> 8 cells with volume element 2*pi/8."""
        grid = make_grid(1, [8], [2.0 * np.pi])
        assert grid.n_cells == 8
        assert_allclose(grid.cell_volume, 2.0 * np.pi / 8.0, rtol=1e-15)

    def test_2d_cell_count_and_volume(self):
        """(2, [4,4], [1,1]) -> 16 cells with volume element 1/16."""
        grid = make_grid(2, [4, 4], [1.0, 1.0])
        assert grid.n_cells == 16
        assert_allclose(grid.cell_volume, 1.0 / 16.0, rtol=1e-15)

    def test_odd_point_count_rejected(self):
        with pytest.raises(ConfigError):
            make_grid(1, [7], [1.0])

    def test_too_few_points_rejected(self):
        with pytest.raises(ConfigError):
            make_grid(1, [2], [1.0])

    def test_dimension_mismatch_rejected(self):
        with pytest.raises(ConfigError):
            make_grid(2, [8], [1.0, 1.0])
        with pytest.raises(ConfigError):
            make_grid(2, [8, 8], [1.0])

    def test_nonpositive_length_rejected(self):
        with pytest.raises(ConfigError):
            make_grid(1, [8], [0.0])

    def test_bad_dim_rejected(self):
        with pytest.raises(ConfigError):
            make_grid(4, [8, 8, 8, 8], [1.0] * 4)

    def test_nyquist_assigned_to_negative_side(self):
        grid = make_grid(1, [8], [2.0 * np.pi])
        k = grid.wavenumbers[0]
        assert k[4] == pytest.approx(-4.0)
        # the lattice is closed under negation away from Nyquist
        assert_allclose(sorted(k[1:4]), sorted(-k[5:]), rtol=1e-15)

    def test_wavenumber_spacing_uses_axis_length(self):
        grid = make_grid(1, [8], [4.0])
        assert grid.wavenumbers[0][1] == pytest.approx(2.0 * np.pi / 4.0)


class TestFieldConstruction:
    def test_make_field_rejects_nan(self, grid1d):
        values = np.ones(grid1d.shape, dtype=complex)
        values[3] = np.nan
        with pytest.raises(ConfigError):
            make_field(grid1d, values)

    def test_size_mismatch_rejected(self, grid1d):
        with pytest.raises(ConfigError):
            make_field(grid1d, np.ones(5, dtype=complex))

    def test_values_are_frozen(self, grid1d):
        field = constant_field(grid1d, 1.0)
        with pytest.raises(ValueError):
            field.values[0] = 0.0

    def test_make_field_copies(self, grid1d):
        values = np.ones(grid1d.shape, dtype=complex)
        field = make_field(grid1d, values)
        values[0] = 5.0
        assert field.values[0] == 1.0

    def test_normalized_random_field_peak(self, grid1d):
        field = random_field(grid1d, decay=1.5, seed=0, normalize_max=0.7)
        assert field.max_modulus() == pytest.approx(0.7, rel=1e-12)

    def test_random_field_band_limit(self, grid1d):
        field = random_field(grid1d, decay=1.5, seed=0, band_limit=4)
        coeffs = to_spectral(field)
        modes = np.rint(np.fft.fftfreq(64) * 64).astype(int)
        assert np.all(np.abs(coeffs[np.abs(modes) > 4]) < 1e-14)


class TestTransforms:
    def test_constant_maps_to_zero_mode(self, grid1d):
        coeffs = to_spectral(constant_field(grid1d, 2.5 - 1.0j))
        assert coeffs.flat[0] == pytest.approx(2.5 - 1.0j, rel=1e-14)
        rest = np.abs(coeffs.ravel()[1:])
        assert rest.max() < 1e-13

    def test_plane_wave_is_single_mode(self, grid1d):
        field = plane_wave(grid1d, mode=3, amplitude=1.5)
        coeffs = to_spectral(field)
        assert coeffs[3] == pytest.approx(1.5, rel=1e-12)
        others = np.delete(np.abs(coeffs), 3)
        assert others.max() < 1e-12

    @pytest.mark.parametrize("dims,points", [(1, [64]), (2, [16, 16]), (3, [8, 8, 8])])
    def test_round_trip_identity(self, rng, dims, points):
        """to_physical(to_spectral(f)) == f within 1e-12 relative L^2 error."""
        grid = make_grid(dims, points, [2.0 * np.pi] * dims)
        field = make_field(grid, random_values(rng, grid))
        back = to_physical(to_spectral(field), grid)
        err = np.linalg.norm(back.values - field.values) / np.linalg.norm(field.values)
        assert err < 1e-12

    def test_size_mismatch_is_an_error(self, grid1d):
        with pytest.raises(ValueError):
            to_physical(np.zeros(5, dtype=complex), grid1d)


class TestLpNorm:
    def test_constant_field_any_p(self):
        """Constant 2 on a volume-1 torus has every L^p norm equal to 2."""
        grid = make_grid(1, [8], [1.0])
        assert lp_norm(constant_field(grid, 2.0), 1.5) == pytest.approx(2.0, rel=1e-14)

    def test_zero_field(self, grid1d):
        assert lp_norm(constant_field(grid1d, 0.0), 3.0) == 0.0

    def test_single_cell_quadrature(self, grid1d):
        """One cell of modulus a: hand evaluation gives a*sqrt(w) at p=2."""
        values = np.zeros(grid1d.shape, dtype=complex)
        values[5] = 0.75j
        field = make_field(grid1d, values)
        w = grid1d.cell_volume
        assert lp_norm(field, 2.0) == pytest.approx(0.75 * np.sqrt(w), rel=1e-14)

    @pytest.mark.parametrize("p", [1.0, 1.5, 2.0, 3.7])
    def test_matches_plain_python_quadrature(self, rng, grid1d, p):
        field = make_field(grid1d, random_values(rng, grid1d))
        total = 0.0
        for z in field.values.ravel():
            total += abs(z) ** p * grid1d.cell_volume
        assert lp_norm(field, p) == pytest.approx(total ** (1.0 / p), rel=1e-12)

    def test_p_below_one_rejected(self, grid1d):
        with pytest.raises(ValueError):
            lp_norm(constant_field(grid1d, 1.0), 0.5)

    @settings(max_examples=25, deadline=None)
    @given(
        scale=st.floats(min_value=1e-6, max_value=1e6),
        seed=st.integers(min_value=0, max_value=2**31),
    )
    def test_homogeneity(self, scale, seed):
        """lp_norm(c*f, p) = c * lp_norm(f, p) within 1e-12 relative."""
        grid = make_grid(1, [16], [2.0 * np.pi])
        gen = np.random.default_rng(seed)
        base = gen.standard_normal(16) + 1j * gen.standard_normal(16)
        f = make_field(grid, base)
        g = make_field(grid, scale * base)
        for p in (1.0, 2.0, 2.5):
            assert lp_norm(g, p) == pytest.approx(scale * lp_norm(f, p), rel=1e-12)

    @pytest.mark.parametrize("alpha", [0.25, 0.5, 1.0])
    def test_embedding_into_l2(self, rng, grid1d, alpha):
        """||f||_(2-a) <= V^(a/(2(2-a))) * ||f||_2 (finite-volume Hoelder)."""
        field = make_field(grid1d, random_values(rng, grid1d))
        lhs = lp_norm(field, 2.0 - alpha)
        v = grid1d.volume
        rhs = v ** (alpha / (2.0 * (2.0 - alpha))) * lp_norm(field, 2.0)
        assert lhs <= rhs + 1e-10


class TestSobolevNorm:
    @pytest.mark.parametrize("s", [0.0, 1.0, 2.0, 3.5])
    def test_constant_field(self, grid1d, s):
        """Constant c: only the zero mode contributes, giving |c|*sqrt(V)."""
        field = constant_field(grid1d, -2.0 + 1.0j)
        expected = abs(-2.0 + 1.0j) * np.sqrt(grid1d.volume)
        assert sobolev_norm(field, s) == pytest.approx(expected, rel=1e-12)

    def test_plane_wave(self, grid1d):
        field = plane_wave(grid1d, mode=4)
        k2 = 16.0
        expected = np.sqrt((1.0 + k2) * grid1d.volume)
        assert sobolev_norm(field, 1.0) == pytest.approx(expected, rel=1e-12)

    def test_s_zero_is_l2(self, rng, grid2d):
        field = make_field(grid2d, random_values(rng, grid2d))
        assert sobolev_norm(field, 0.0) == pytest.approx(
            lp_norm(field, 2.0), rel=1e-12
        )

    def test_monotone_in_s(self, rng, grid1d):
        field = make_field(grid1d, random_values(rng, grid1d))
        norms = [sobolev_norm(field, s) for s in (0.0, 0.5, 1.0, 2.0)]
        for lo, hi in zip(norms[:-1], norms[1:]):
            assert lo <= hi + 1e-12

    def test_negative_s_rejected(self, grid1d):
        with pytest.raises(ValueError):
            sobolev_norm(constant_field(grid1d, 1.0), -1.0)


class TestLaplacian:
    def test_constant_in_kernel(self, grid1d):
        out = laplacian_apply(constant_field(grid1d, 3.0))
        assert np.max(np.abs(out.values)) < 1e-12

    def test_plane_wave_eigenfunction(self, grid1d):
        field = plane_wave(grid1d, mode=5)
        out = laplacian_apply(field)
        assert_allclose(out.values, -25.0 * field.values, atol=1e-10)

    def test_linearity(self, rng, grid2d):
        f = make_field(grid2d, random_values(rng, grid2d))
        g = make_field(grid2d, random_values(rng, grid2d))
        a, b = 1.7, -0.3 + 0.2j
        combo = make_field(grid2d, a * f.values + b * g.values)
        lhs = laplacian_apply(combo).values
        rhs = a * laplacian_apply(f).values + b * laplacian_apply(g).values
        scale = np.max(np.abs(rhs)) + 1.0
        assert np.max(np.abs(lhs - rhs)) / scale < 1e-12
