# cython: boundscheck=False, wraparound=False, cdivision=True
"""Compiled pointwise update kernels (hot loops of the split-step integrator).

Mirrors `_kernels_py` cell for cell: same Cash-Karp tableau, same step-size
controller, same clamps, so both backends agree to rounding error.
"""

import numpy as np

from libc.math cimport cos, fabs, hypot, pow, sin

cdef double A21 = 1.0 / 5.0
cdef double A31 = 3.0 / 40.0, A32 = 9.0 / 40.0
cdef double A41 = 3.0 / 10.0, A42 = -9.0 / 10.0, A43 = 6.0 / 5.0
cdef double A51 = -11.0 / 54.0, A52 = 5.0 / 2.0, A53 = -70.0 / 27.0, A54 = 35.0 / 27.0
cdef double A61 = 1631.0 / 55296.0, A62 = 175.0 / 512.0, A63 = 575.0 / 13824.0
cdef double A64 = 44275.0 / 110592.0, A65 = 253.0 / 4096.0
cdef double C1 = 37.0 / 378.0, C3 = 250.0 / 621.0, C4 = 125.0 / 594.0, C6 = 512.0 / 1771.0
cdef double E1 = C1 - 2825.0 / 27648.0
cdef double E3 = C3 - 18575.0 / 48384.0
cdef double E4 = C4 - 13525.0 / 55296.0
cdef double E5 = -277.0 / 14336.0
cdef double E6 = C6 - 1.0 / 4.0

cdef double SAFETY = 0.9
cdef double PGROW = -0.2
cdef double PSHRNK = -0.25
cdef double MAX_GROW = 5.0
cdef double MIN_SHRINK = 0.1


def damp_exact(const double complex[::1] values, double alpha, double gamma, double dt):
    """Closed-form sublinear damping: |z| -> max(|z|^a - a*g*dt, 0)^(1/a), phase kept."""
    cdef Py_ssize_t n = values.shape[0]
    out_arr = np.zeros(n, dtype=np.complex128)
    cdef double complex[::1] out = out_arr
    cdef double drop = alpha * gamma * dt
    cdef double inv_alpha = 1.0 / alpha
    cdef bint coulomb = alpha == 1.0
    cdef Py_ssize_t i
    cdef double r, ra, r_new, scale
    cdef double complex z
    for i in range(n):
        z = values[i]
        r = hypot(z.real, z.imag)
        ra = (r - drop) if coulomb else (pow(r, alpha) - drop)
        if ra > 0.0:
            r_new = ra if coulomb else pow(ra, inv_alpha)
            scale = r_new / r
            out[i] = z * scale
    return out_arr


def phase_rotate(const double complex[::1] values, double lam, double sigma, double dt):
    """Conservative power nonlinearity: z -> z * exp(-i*lam*|z|^(2*sigma)*dt)."""
    cdef Py_ssize_t n = values.shape[0]
    out_arr = np.empty(n, dtype=np.complex128)
    cdef double complex[::1] out = out_arr
    cdef Py_ssize_t i
    cdef double angle, c, s
    cdef double two_sigma = 2.0 * sigma
    cdef double complex z
    if lam == 0.0 or dt == 0.0:
        for i in range(n):
            out[i] = values[i]
        return out_arr
    for i in range(n):
        z = values[i]
        angle = (-lam * dt) * pow(hypot(z.real, z.imag), two_sigma)
        c = cos(angle)
        s = sin(angle)
        out[i] = z * (c + 1j * s)
    return out_arr


cdef inline double _rate(double r, double gamma, double delta, double half_alpha) nogil:
    return -gamma * r / pow(r * r + delta, half_alpha)


cdef int _advance_one(
    double r0,
    double* r_out,
    double gamma,
    double delta,
    double half_alpha,
    double dt,
    double rtol,
    double atol,
    long max_iter,
) nogil:
    """Cash-Karp integration of one cell's modulus over [0, dt]. 0 on success."""
    cdef double y = r0
    cdef double rem = dt
    cdef double h = dt
    cdef double h_floor = 1e-15 * dt
    cdef double k1, k2, k3, k4, k5, k6, y5, err, tol, ratio, safe, y_new
    cdef bint final, accept
    cdef long iteration = 0

    while True:
        iteration += 1
        if iteration > max_iter:
            r_out[0] = y
            return 1
        final = h >= rem
        if final:
            h = rem
        k1 = _rate(y, gamma, delta, half_alpha)
        k2 = _rate(y + h * (A21 * k1), gamma, delta, half_alpha)
        k3 = _rate(y + h * (A31 * k1 + A32 * k2), gamma, delta, half_alpha)
        k4 = _rate(y + h * (A41 * k1 + A42 * k2 + A43 * k3), gamma, delta, half_alpha)
        k5 = _rate(
            y + h * (A51 * k1 + A52 * k2 + A53 * k3 + A54 * k4),
            gamma, delta, half_alpha,
        )
        k6 = _rate(
            y + h * (A61 * k1 + A62 * k2 + A63 * k3 + A64 * k4 + A65 * k5),
            gamma, delta, half_alpha,
        )
        y5 = y + h * (C1 * k1 + C3 * k3 + C4 * k4 + C6 * k6)
        err = fabs(h * (E1 * k1 + E3 * k3 + E4 * k4 + E5 * k5 + E6 * k6))
        tol = atol + rtol * (fabs(y) if fabs(y) > fabs(y5) else fabs(y5))
        ratio = err / tol
        accept = ratio <= 1.0
        safe = ratio if ratio > 1e-30 else 1e-30
        if accept:
            y_new = y5
            if y_new < 0.0:
                y_new = 0.0
            if y_new > y:
                y_new = y
            rem = rem - h
            y = y_new
            if final or y == 0.0:
                r_out[0] = y
                return 0
            h = h * (MAX_GROW if SAFETY * pow(safe, PGROW) > MAX_GROW else SAFETY * pow(safe, PGROW))
            if h > rem:
                h = rem
        else:
            h = h * (MIN_SHRINK if SAFETY * pow(safe, PSHRNK) < MIN_SHRINK else SAFETY * pow(safe, PSHRNK))
            if h < h_floor:
                r_out[0] = y
                return 1


def damp_reg_adaptive(
    const double complex[::1] values,
    double alpha,
    double gamma,
    double delta,
    double dt,
    double rtol,
    double atol,
    long max_iter,
):
    """Regularized damping via embedded Cash-Karp steps on each cell's modulus.

    Returns (new values, failing flat cell index or -1).
    """
    cdef Py_ssize_t n = values.shape[0]
    out_arr = np.zeros(n, dtype=np.complex128)
    cdef double complex[::1] out = out_arr
    cdef double half_alpha = 0.5 * alpha
    cdef Py_ssize_t i
    cdef Py_ssize_t fail = -1
    cdef double r0, r_new
    cdef double complex z
    for i in range(n):
        z = values[i]
        r0 = hypot(z.real, z.imag)
        if r0 == 0.0:
            continue
        if _advance_one(r0, &r_new, gamma, delta, half_alpha, dt, rtol, atol, max_iter):
            fail = i
            break
        out[i] = z * (r_new / r0)
    return out_arr, fail


def damp_reg_fixed(
    const double complex[::1] values,
    double alpha,
    double gamma,
    double delta,
    double dt,
    long n_substeps,
):
    """Regularized damping with n fixed RK4 substeps on each cell's modulus."""
    cdef Py_ssize_t n = values.shape[0]
    out_arr = np.zeros(n, dtype=np.complex128)
    cdef double complex[::1] out = out_arr
    cdef double half_alpha = 0.5 * alpha
    cdef double h = dt / n_substeps
    cdef Py_ssize_t i
    cdef long j
    cdef double r0, r, k1, k2, k3, k4, step, r_next
    cdef double complex z
    for i in range(n):
        z = values[i]
        r0 = hypot(z.real, z.imag)
        if r0 == 0.0:
            continue
        r = r0
        for j in range(n_substeps):
            k1 = _rate(r, gamma, delta, half_alpha)
            k2 = _rate(r + 0.5 * h * k1, gamma, delta, half_alpha)
            k3 = _rate(r + 0.5 * h * k2, gamma, delta, half_alpha)
            k4 = _rate(r + h * k3, gamma, delta, half_alpha)
            step = (h / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4)
            r_next = r + step
            if r_next < 0.0:
                r_next = 0.0
            if r_next > r:
                r_next = r
            r = r_next
        out[i] = z * (r / r0)
    return out_arr
