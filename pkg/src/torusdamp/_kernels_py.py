"""Pure-numpy implementations of the pointwise update kernels.

Same API and arithmetic as the compiled `_kernels` extension; used as the
import-time fallback and as the reference side of the backend parity tests.
All functions take and return flat, C-contiguous complex128 arrays.
"""

from __future__ import annotations

import numpy as np

# Cash-Karp 5(4) embedded pair
_A21 = 1.0 / 5.0
_A31, _A32 = 3.0 / 40.0, 9.0 / 40.0
_A41, _A42, _A43 = 3.0 / 10.0, -9.0 / 10.0, 6.0 / 5.0
_A51, _A52, _A53, _A54 = -11.0 / 54.0, 5.0 / 2.0, -70.0 / 27.0, 35.0 / 27.0
_A61, _A62, _A63, _A64, _A65 = (
    1631.0 / 55296.0,
    175.0 / 512.0,
    575.0 / 13824.0,
    44275.0 / 110592.0,
    253.0 / 4096.0,
)
_C1, _C3, _C4, _C6 = 37.0 / 378.0, 250.0 / 621.0, 125.0 / 594.0, 512.0 / 1771.0
_E1 = _C1 - 2825.0 / 27648.0
_E3 = _C3 - 18575.0 / 48384.0
_E4 = _C4 - 13525.0 / 55296.0
_E5 = -277.0 / 14336.0
_E6 = _C6 - 1.0 / 4.0

_SAFETY = 0.9
_PGROW = -0.2
_PSHRNK = -0.25
_MAX_GROW = 5.0
_MIN_SHRINK = 0.1


def damp_exact(values: np.ndarray, alpha: float, gamma: float, dt: float) -> np.ndarray:
    """Closed-form sublinear damping: |z| -> max(|z|^a - a*g*dt, 0)^(1/a), phase kept."""
    r = np.abs(values)
    drop = alpha * gamma * dt
    ra = (r - drop) if alpha == 1.0 else (r**alpha - drop)
    out = np.zeros_like(values)
    alive = ra > 0.0
    if np.any(alive):
        r_new = ra[alive] if alpha == 1.0 else ra[alive] ** (1.0 / alpha)
        out[alive] = values[alive] * (r_new / r[alive])
    return out


def phase_rotate(values: np.ndarray, lam: float, sigma: float, dt: float) -> np.ndarray:
    """Conservative power nonlinearity: z -> z * exp(-i*lam*|z|^(2*sigma)*dt)."""
    if lam == 0.0 or dt == 0.0:
        return values.copy()
    angle = (-lam * dt) * np.abs(values) ** (2.0 * sigma)
    return values * (np.cos(angle) + 1j * np.sin(angle))


def _rate(r: np.ndarray, gamma: float, delta: float, half_alpha: float) -> np.ndarray:
    return -gamma * r / (r * r + delta) ** half_alpha


def damp_reg_adaptive(
    values: np.ndarray,
    alpha: float,
    gamma: float,
    delta: float,
    dt: float,
    rtol: float,
    atol: float,
    max_iter: int,
) -> tuple[np.ndarray, int]:
    """Regularized damping via embedded Cash-Karp steps on each cell's modulus.

    Returns (new values, failing flat cell index or -1). Every cell integrates
    dr/dt = -gamma*r/(r^2+delta)^(alpha/2) over [0, dt] with its own step-size
    sequence; phases are carried over unchanged.
    """
    r0 = np.abs(values)
    r_final, fail = _advance_moduli(r0, alpha, gamma, delta, dt, rtol, atol, max_iter)
    out = np.zeros_like(values)
    pos = r0 > 0.0
    out[pos] = values[pos] * (r_final[pos] / r0[pos])
    return out, fail


def _advance_moduli(r0, alpha, gamma, delta, dt, rtol, atol, max_iter):
    half_alpha = 0.5 * alpha
    r = r0.copy()
    idx = np.flatnonzero(r > 0.0)
    y = r[idx]
    rem = np.full(idx.size, dt)
    h = np.full(idx.size, dt)
    h_floor = 1e-15 * dt

    iteration = 0
    while idx.size:
        iteration += 1
        if iteration > max_iter:
            return r, int(idx[0])

        final = h >= rem
        h = np.where(final, rem, h)

        k1 = _rate(y, gamma, delta, half_alpha)
        k2 = _rate(y + h * (_A21 * k1), gamma, delta, half_alpha)
        k3 = _rate(y + h * (_A31 * k1 + _A32 * k2), gamma, delta, half_alpha)
        k4 = _rate(y + h * (_A41 * k1 + _A42 * k2 + _A43 * k3), gamma, delta, half_alpha)
        k5 = _rate(
            y + h * (_A51 * k1 + _A52 * k2 + _A53 * k3 + _A54 * k4),
            gamma,
            delta,
            half_alpha,
        )
        k6 = _rate(
            y + h * (_A61 * k1 + _A62 * k2 + _A63 * k3 + _A64 * k4 + _A65 * k5),
            gamma,
            delta,
            half_alpha,
        )
        y5 = y + h * (_C1 * k1 + _C3 * k3 + _C4 * k4 + _C6 * k6)
        err = np.abs(h * (_E1 * k1 + _E3 * k3 + _E4 * k4 + _E5 * k5 + _E6 * k6))
        tol = atol + rtol * np.maximum(np.abs(y), np.abs(y5))
        ratio = err / tol

        accept = ratio <= 1.0
        y_new = np.where(accept, np.minimum(np.maximum(y5, 0.0), y), y)
        rem_new = np.where(accept, rem - h, rem)

        # step-size controller, identical on accept (grow) and reject (shrink)
        safe = np.maximum(ratio, 1e-30)
        grow = np.minimum(_MAX_GROW, _SAFETY * safe**_PGROW)
        shrink = np.maximum(_MIN_SHRINK, _SAFETY * safe**_PSHRNK)
        h_new = h * np.where(accept, grow, shrink)

        done = (accept & final) | (y_new == 0.0)
        if np.any(done):
            r[idx[done]] = y_new[done]
        stalled = ~accept & (h_new < h_floor)
        if np.any(stalled):
            return r, int(idx[np.flatnonzero(stalled)[0]])

        keep = ~done
        idx = idx[keep]
        y = y_new[keep]
        rem = rem_new[keep]
        h = np.minimum(h_new[keep], rem)
    return r, -1


def damp_reg_fixed(
    values: np.ndarray,
    alpha: float,
    gamma: float,
    delta: float,
    dt: float,
    n_substeps: int,
) -> np.ndarray:
    """Regularized damping with n fixed RK4 substeps on each cell's modulus."""
    half_alpha = 0.5 * alpha
    h = dt / n_substeps
    r0 = np.abs(values)
    r = r0.copy()
    for _ in range(n_substeps):
        k1 = _rate(r, gamma, delta, half_alpha)
        k2 = _rate(r + 0.5 * h * k1, gamma, delta, half_alpha)
        k3 = _rate(r + 0.5 * h * k2, gamma, delta, half_alpha)
        k4 = _rate(r + h * k3, gamma, delta, half_alpha)
        step = (h / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4)
        r = np.minimum(np.maximum(r + step, 0.0), r)
    out = np.zeros_like(values)
    pos = r0 > 0.0
    out[pos] = values[pos] * (r[pos] / r0[pos])
    return out
