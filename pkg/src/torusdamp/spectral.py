"""Flat-torus grids, complex fields, Fourier transforms and norms.

The torus T^d = prod_j R/(L_j Z) is discretized by a uniform rectangular
grid. All spectral calculus follows FFT mode ordering, with the Nyquist
frequency assigned to the negative side (`numpy.fft.fftfreq` convention);
since fields are complex the full symmetric mode lattice is used and the
Laplacian multiplier at Nyquist uses the negative-side wavenumber.

Spectral coefficients are normalized so that a constant field c has a single
zero-mode coefficient equal to c.
"""

from __future__ import annotations

from dataclasses import dataclass, replace

import numpy as np

from .errors import ConfigError, ZeroFieldError

__all__ = [
    "TorusGrid",
    "ComplexField",
    "make_grid",
    "make_field",
    "constant_field",
    "plane_wave",
    "random_field",
    "to_spectral",
    "to_physical",
    "lp_norm",
    "sobolev_norm",
    "sobolev_norm_from_coeffs",
    "laplacian_apply",
]


@dataclass(frozen=True)
class TorusGrid:
    """Uniform grid on a flat torus: cell counts, periods and wavenumbers.

    Attributes
    ----------
    dim : int
        Spatial dimension, 1 to 3.
    points_per_axis : tuple of int
        Even cell counts per axis, each >= 4.
    axis_lengths : tuple of float
        Torus periods L_j > 0 (dimensionless length units).
    """

    dim: int
    points_per_axis: tuple[int, ...]
    axis_lengths: tuple[float, ...]

    def __post_init__(self):
        if self.dim not in (1, 2, 3):
            raise ConfigError(f"dim must be 1, 2 or 3, got {self.dim}")
        if len(self.points_per_axis) != self.dim:
            raise ConfigError(
                f"points_per_axis has {len(self.points_per_axis)} entries for dim {self.dim}"
            )
        if len(self.axis_lengths) != self.dim:
            raise ConfigError(
                f"axis_lengths has {len(self.axis_lengths)} entries for dim {self.dim}"
            )
        for n in self.points_per_axis:
            if n < 4 or n % 2 != 0:
                raise ConfigError(f"points per axis must be even and >= 4, got {n}")
        for length in self.axis_lengths:
            if not length > 0.0:
                raise ConfigError(f"axis lengths must be positive, got {length}")

        # wavenumbers k_j = 2*pi*m_j/L_j in FFT order, Nyquist on the negative side
        wavenumbers = tuple(
            2.0 * np.pi * np.fft.fftfreq(n, d=length / n)
            for n, length in zip(self.points_per_axis, self.axis_lengths)
        )
        k_squared = np.zeros(self.shape)
        for axis, k in enumerate(wavenumbers):
            shape = [1] * self.dim
            shape[axis] = k.size
            k_squared = k_squared + (k.reshape(shape)) ** 2
        object.__setattr__(self, "wavenumbers", wavenumbers)
        object.__setattr__(self, "k_squared", k_squared)

    @property
    def shape(self) -> tuple[int, ...]:
        return self.points_per_axis

    @property
    def n_cells(self) -> int:
        return int(np.prod(self.points_per_axis))

    @property
    def volume(self) -> float:
        return float(np.prod(self.axis_lengths))

    @property
    def cell_volume(self) -> float:
        return self.volume / self.n_cells

    def axes(self) -> tuple[np.ndarray, ...]:
        """Physical coordinates of cell centers... cell corners x_i = i*L/N."""
        return tuple(
            np.arange(n) * (length / n)
            for n, length in zip(self.points_per_axis, self.axis_lengths)
        )


@dataclass(frozen=True)
class ComplexField:
    """Complex state u sampled on a torus grid, immutable from the outside.

    `values` is reshaped to the grid shape and frozen; construct through
    `make_field` (which copies and checks finiteness) or the field factories
    below. Flows build fields from freshly-allocated arrays directly.
    """

    grid: TorusGrid
    values: np.ndarray
    extinct: bool = False

    def __post_init__(self):
        values = np.asarray(self.values, dtype=np.complex128)
        if values.size != self.grid.n_cells:
            raise ConfigError(
                f"field has {values.size} values for a grid of {self.grid.n_cells} cells"
            )
        values = np.ascontiguousarray(values.reshape(self.grid.shape))
        values.flags.writeable = False
        object.__setattr__(self, "values", values)

    def max_modulus(self) -> float:
        return float(np.max(np.abs(self.values)))

    def mark_extinct(self) -> "ComplexField":
        return replace(self, extinct=True)


def make_grid(dim: int, points_per_axis, axis_lengths) -> TorusGrid:
    """Validate and build a torus grid with its wavenumber lattice."""
    return TorusGrid(
        dim=int(dim),
        points_per_axis=tuple(int(n) for n in points_per_axis),
        axis_lengths=tuple(float(length) for length in axis_lengths),
    )


def make_field(grid: TorusGrid, values) -> ComplexField:
    """Copy `values` into a new field, rejecting NaN/Inf entries."""
    arr = np.array(values, dtype=np.complex128, copy=True)
    if not np.all(np.isfinite(arr.view(np.float64))):
        raise ConfigError("field values must be finite")
    return ComplexField(grid, arr)


def constant_field(grid: TorusGrid, value: complex) -> ComplexField:
    return make_field(grid, np.full(grid.shape, value, dtype=np.complex128))


def plane_wave(grid: TorusGrid, mode, amplitude: complex = 1.0) -> ComplexField:
    """Single Fourier mode amplitude*exp(i k.x) for integer mode indices."""
    mode = np.atleast_1d(np.asarray(mode, dtype=int))
    if mode.size != grid.dim:
        raise ConfigError(f"mode has {mode.size} indices for dim {grid.dim}")
    phase = np.zeros(grid.shape)
    for axis, (m, n, length) in enumerate(
        zip(mode, grid.points_per_axis, grid.axis_lengths)
    ):
        if not -n // 2 <= m < n // 2 + (n % 2):
            raise ConfigError(f"mode index {m} not representable on {n} points")
        x = np.arange(n) * (length / n)
        shape = [1] * grid.dim
        shape[axis] = n
        phase = phase + (2.0 * np.pi * m / length) * x.reshape(shape)
    return make_field(grid, amplitude * np.exp(1j * phase))


def random_field(
    grid: TorusGrid,
    decay: float,
    seed: int,
    band_limit: int | None = None,
    normalize_max: float | None = None,
) -> ComplexField:
    """Random smooth field: |c_k| = (1+|k|^2)^(-decay), uniform random phases.

    `band_limit` truncates to integer mode indices |m_j| <= band_limit per
    axis; `normalize_max` rescales so the largest modulus equals it.
    """
    rng = np.random.default_rng(seed)
    phases = rng.uniform(0.0, 2.0 * np.pi, size=grid.shape)
    coeffs = (1.0 + grid.k_squared) ** (-decay) * np.exp(1j * phases)
    if band_limit is not None:
        for axis, n in enumerate(grid.points_per_axis):
            m = np.rint(np.fft.fftfreq(n) * n).astype(int)
            shape = [1] * grid.dim
            shape[axis] = n
            coeffs = coeffs * (np.abs(m).reshape(shape) <= band_limit)
    field = to_physical(coeffs, grid)
    if normalize_max is not None:
        peak = field.max_modulus()
        if peak == 0.0:
            raise ZeroFieldError("cannot normalize an identically-zero field")
        field = ComplexField(grid, field.values * (normalize_max / peak))
    return field


def to_spectral(f: ComplexField) -> np.ndarray:
    """Forward transform; the zero-mode coefficient of a constant c is c."""
    return np.fft.fftn(f.values) / f.grid.n_cells


def to_physical(coeffs: np.ndarray, grid: TorusGrid) -> ComplexField:
    coeffs = np.asarray(coeffs, dtype=np.complex128)
    if coeffs.size != grid.n_cells:
        raise ValueError(
            f"coefficient array has {coeffs.size} entries for a grid of {grid.n_cells} cells"
        )
    return ComplexField(grid, np.fft.ifftn(coeffs.reshape(grid.shape)) * grid.n_cells)


def lp_norm(f: ComplexField, p: float) -> float:
    """L^p norm by the rectangle rule, (sum |f|^p * cell_volume)^(1/p)."""
    if p < 1.0:
        raise ValueError(f"p must be >= 1, got {p}")
    total = float(np.sum(np.abs(f.values) ** p)) * f.grid.cell_volume
    return total ** (1.0 / p)


def sobolev_norm(f: ComplexField, s: float) -> float:
    """H^s norm, (V * sum_k (1+|k|^2)^s |c_k|^2)^(1/2); equals the L^2 norm at s=0."""
    if s < 0.0:
        raise ValueError(f"s must be >= 0, got {s}")
    return sobolev_norm_from_coeffs(to_spectral(f), f.grid, s)


def sobolev_norm_from_coeffs(coeffs: np.ndarray, grid: TorusGrid, s: float) -> float:
    weights = (1.0 + grid.k_squared) ** s if s != 0.0 else 1.0
    total = float(np.sum(weights * (coeffs.real**2 + coeffs.imag**2)))
    return float(np.sqrt(grid.volume * total))


def laplacian_apply(f: ComplexField) -> ComplexField:
    """Spectral Laplacian: multiplier -|k|^2 per mode."""
    coeffs = np.fft.fftn(f.values)
    coeffs *= -f.grid.k_squared
    return ComplexField(f.grid, np.fft.ifftn(coeffs))
