"""Backend selection for the pointwise hot-loop kernels.

The compiled Cython extension `torusdamp._kernels` is preferred; the
pure-numpy module `torusdamp._kernels_py` is the drop-in fallback. Selection
happens once at import and can be forced with the environment variable
TORUSDAMP_KERNELS=python|compiled (anything else, or unset, means "compiled
if available").
"""

from __future__ import annotations

import os

import numpy as np

from . import _kernels_py
from .errors import ConfigError, IntegrationError

REG_RTOL = 1e-10
REG_ATOL = 1e-14
REG_MAX_ITER = 10_000

_requested = os.environ.get("TORUSDAMP_KERNELS", "auto").strip().lower()
if _requested == "python":
    _backend = _kernels_py
    BACKEND = "python"
elif _requested in ("auto", "", "compiled"):
    try:
        from . import _kernels as _backend  # type: ignore[no-redef]

        BACKEND = "compiled"
    except ImportError:
        if _requested == "compiled":
            raise
        _backend = _kernels_py
        BACKEND = "python"
else:
    raise ConfigError(f"unknown TORUSDAMP_KERNELS value {_requested!r}")


def _flat(values: np.ndarray) -> np.ndarray:
    return np.ascontiguousarray(values, dtype=np.complex128).reshape(-1)


def damp_exact(values: np.ndarray, alpha: float, gamma: float, dt: float) -> np.ndarray:
    out = _backend.damp_exact(_flat(values), alpha, gamma, dt)
    return np.asarray(out).reshape(values.shape)


def damp_reg(
    values: np.ndarray,
    alpha: float,
    gamma: float,
    delta: float,
    dt: float,
    substeps: str | int = "adaptive",
    rtol: float = REG_RTOL,
    atol: float = REG_ATOL,
) -> np.ndarray:
    flat = _flat(values)
    if substeps == "adaptive":
        out, fail = _backend.damp_reg_adaptive(
            flat, alpha, gamma, delta, dt, rtol, atol, REG_MAX_ITER
        )
        if fail >= 0:
            raise IntegrationError(int(fail), float(np.abs(flat[fail])))
    else:
        out = _backend.damp_reg_fixed(flat, alpha, gamma, delta, dt, int(substeps))
    return np.asarray(out).reshape(values.shape)


def phase_rotate(values: np.ndarray, lam: float, sigma: float, dt: float) -> np.ndarray:
    out = _backend.phase_rotate(_flat(values), lam, sigma, dt)
    return np.asarray(out).reshape(values.shape)
