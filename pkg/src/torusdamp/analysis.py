"""Numerical diagnostics: dissipation laws, contraction, interpolation
inequalities, persistence and equicontinuity checks, and extinction bounds.

Everything here is a pure function of recorded trajectories or fields; the
recorders below are the glue between `dynamics.run_simulation` and the checks.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .dynamics import DampingParams, NlsParams
from .errors import ZeroFieldError
from .spectral import (
    ComplexField,
    lp_norm,
    sobolev_norm,
    sobolev_norm_from_coeffs,
    to_spectral,
)

__all__ = [
    "TimeSeriesRecord",
    "TimeSeriesRecorder",
    "StateStash",
    "MultiRecorder",
    "ExtinctionReport",
    "mass_law_residual",
    "contraction_check",
    "trajectory_l2_distance",
    "pointwise_monotonicity",
    "nash_ratio",
    "nash_constant_estimate",
    "extinction_bound_1d",
    "extinction_bound_23d",
    "extinction_bound_check",
    "holder_continuity_check",
    "h2_persistence_check",
    "H2PersistenceResult",
    "dtu_monotonicity_check",
    "nls_energy",
    "gn_ratio_check",
    "fit_log_mass_slope",
    "mass_monotonicity_violation",
    "h1_monotonicity_violation",
]


@dataclass(frozen=True)
class TimeSeriesRecord:
    """Per-sample diagnostics of one trajectory.

    `l2ma_pow` is the damping-dissipation density sum(|u|^(2-alpha))*dV, i.e.
    the L^(2-alpha) norm raised to the power 2-alpha. `mass_law_residual`
    compares the discrete mass decay rate since the previous record with the
    trapezoidal average of 2*gamma*l2ma_pow (absent on the first record).
    `dtu_l2` is the centered-difference L^2 norm of du/dt (absent at the
    endpoints or when not requested).
    """

    t: float
    mass_sq: float
    l2ma_pow: float
    h1: float
    h2: float
    linf: float
    mass_law_residual: float | None = None
    dtu_l2: float | None = None
    nls_energy: float | None = None


def _mass_sq(field: ComplexField) -> float:
    v = field.values
    return float(np.sum(v.real**2 + v.imag**2)) * field.grid.cell_volume


def _l2_distance(a: ComplexField, b: ComplexField) -> float:
    diff = a.values - b.values
    total = float(np.sum(diff.real**2 + diff.imag**2)) * a.grid.cell_volume
    return math.sqrt(total)


def mass_law_residual(
    rec1: TimeSeriesRecord, rec2: TimeSeriesRecord, gamma: float, alpha: float
) -> float:
    """Residual of d/dt||u||^2 + 2*gamma*||u||^(2-a)_(2-a) = 0 between two records.

    Trapezoidal in time, normalized by (1 + mass at the earlier record).
    """
    del alpha  # the density is already recorded; kept for call-site clarity
    if not rec2.t > rec1.t:
        raise ValueError(f"records must be increasing in time, got {rec1.t} -> {rec2.t}")
    rate = (rec2.mass_sq - rec1.mass_sq) / (rec2.t - rec1.t)
    dissipation = gamma * (rec1.l2ma_pow + rec2.l2ma_pow)
    return abs(rate + dissipation) / (1.0 + rec1.mass_sq)


class TimeSeriesRecorder:
    """Builds `TimeSeriesRecord` entries at a fixed step cadence.

    Must be fed every step (`run_simulation` does). With `compute_dtu=True`
    each cadence record's du/dt norm is the centered difference of the
    step-adjacent states, so the record is finished one step late.
    """

    def __init__(
        self,
        damping: DampingParams,
        nls: NlsParams | None = None,
        cadence: int = 1,
        compute_dtu: bool = False,
    ):
        if cadence < 1:
            raise ValueError(f"cadence must be >= 1, got {cadence}")
        self.damping = damping
        self.nls = nls if nls is not None and nls.enabled else None
        self.cadence = cadence
        self.compute_dtu = compute_dtu
        self.records: list[TimeSeriesRecord] = []
        self._prev: tuple[float, ComplexField] | None = None
        self._pending: tuple[dict, float, ComplexField] | None = None
        self._last_seen: tuple[int, float, ComplexField] | None = None
        self._last_recorded_step: int | None = None

    def __call__(self, step: int, t: float, field: ComplexField):
        if self._pending is not None:
            kwargs, t_minus, field_minus = self._pending
            dtu = _l2_distance(field, field_minus) / (t - t_minus)
            self._pending = None
            self._append(kwargs, dtu)
        if step % self.cadence == 0:
            kwargs = self._measure(t, field)
            if self.compute_dtu and self._prev is not None:
                self._pending = (kwargs, self._prev[0], self._prev[1])
                self._last_recorded_step = step
            else:
                self._append(kwargs, None)
                self._last_recorded_step = step
        self._prev = (t, field)
        self._last_seen = (step, t, field)

    def finalize(self):
        if self._pending is not None:
            kwargs, _, _ = self._pending
            self._pending = None
            self._append(kwargs, None)
        if self._last_seen is not None:
            step, t, field = self._last_seen
            if self._last_recorded_step != step:
                self._append(self._measure(t, field), None)
                self._last_recorded_step = step

    def _measure(self, t: float, field: ComplexField) -> dict:
        v = field.values
        w = field.grid.cell_volume
        moduli_sq = v.real**2 + v.imag**2
        coeffs = to_spectral(field)
        entry = {
            "t": t,
            "mass_sq": float(np.sum(moduli_sq)) * w,
            "l2ma_pow": float(np.sum(moduli_sq ** (0.5 * (2.0 - self.damping.alpha))))
            * w,
            "h1": sobolev_norm_from_coeffs(coeffs, field.grid, 1.0),
            "h2": sobolev_norm_from_coeffs(coeffs, field.grid, 2.0),
            "linf": float(np.sqrt(np.max(moduli_sq))),
            "nls_energy": None,
        }
        if self.nls is not None:
            grad_sq = float(
                np.sum(field.grid.k_squared * (coeffs.real**2 + coeffs.imag**2))
            ) * field.grid.volume
            power = 2.0 * self.nls.sigma + 2.0
            entry["nls_energy"] = grad_sq + (self.nls.lam / (self.nls.sigma + 1.0)) * (
                float(np.sum(moduli_sq ** (0.5 * power))) * w
            )
        return entry

    def _append(self, kwargs: dict, dtu: float | None):
        residual = None
        if self.records:
            prev = self.records[-1]
            rate = (kwargs["mass_sq"] - prev.mass_sq) / (kwargs["t"] - prev.t)
            dissipation = self.damping.gamma * (prev.l2ma_pow + kwargs["l2ma_pow"])
            residual = abs(rate + dissipation) / (1.0 + prev.mass_sq)
        self.records.append(
            TimeSeriesRecord(mass_law_residual=residual, dtu_l2=dtu, **kwargs)
        )


class StateStash:
    """Keeps (t, field) references at a step cadence, plus the final state."""

    def __init__(self, cadence: int = 1):
        if cadence < 1:
            raise ValueError(f"cadence must be >= 1, got {cadence}")
        self.cadence = cadence
        self.times: list[float] = []
        self.fields: list[ComplexField] = []
        self._last_seen = None
        self._last_stashed_step = None

    def __call__(self, step: int, t: float, field: ComplexField):
        if step % self.cadence == 0:
            self.times.append(t)
            self.fields.append(field)
            self._last_stashed_step = step
        self._last_seen = (step, t, field)

    def finalize(self):
        if self._last_seen is not None:
            step, t, field = self._last_seen
            if self._last_stashed_step != step:
                self.times.append(t)
                self.fields.append(field)
                self._last_stashed_step = step


class MultiRecorder:
    """Fans one recorder slot out to several recorders."""

    def __init__(self, *recorders):
        self.recorders = recorders

    def __call__(self, step, t, field):
        for rec in self.recorders:
            rec(step, t, field)

    def finalize(self):
        for rec in self.recorders:
            if hasattr(rec, "finalize"):
                rec.finalize()


def _common_samples(states_a: StateStash, states_b: StateStash):
    # pair samples by time; runs may stop at different steps (extinction)
    key = lambda t: round(t, 9)
    b_map = {key(t): f for t, f in zip(states_b.times, states_b.fields)}
    pairs = [
        (t, fa, b_map[key(t)])
        for t, fa in zip(states_a.times, states_a.fields)
        if key(t) in b_map
    ]
    if not pairs:
        raise ValueError("trajectories share no sample times")
    if pairs[0][1].grid != pairs[0][2].grid:
        raise ValueError("trajectories live on different grids")
    return pairs


def contraction_check(states_a: StateStash, states_b: StateStash) -> float:
    """Worst increase of m(t) = ||uA - uB||^2 between consecutive common samples."""
    pairs = _common_samples(states_a, states_b)
    m = [_l2_distance(fa, fb) ** 2 for _, fa, fb in pairs]
    if len(m) < 2:
        return 0.0
    return float(max(m2 - m1 for m1, m2 in zip(m[:-1], m[1:])))


def trajectory_l2_distance(states_a: StateStash, states_b: StateStash) -> float:
    """Max over common sample times of the L^2 distance between two runs."""
    pairs = _common_samples(states_a, states_b)
    return max(_l2_distance(fa, fb) for _, fa, fb in pairs)


def _damping_term(z: np.ndarray, alpha: float) -> np.ndarray:
    # z/|z|^alpha, extended by 0 at z = 0 (the zero-set convention of the
    # exact flow)
    r = np.abs(z)
    out = np.zeros_like(z)
    nz = r > 0.0
    out[nz] = z[nz] * r[nz] ** (-alpha)
    return out


def pointwise_monotonicity(z1, z2, alpha: float):
    """Re((z1/|z1|^a - z2/|z2|^a) * conj(z1 - z2)); nonnegative for a in (0,1]."""
    scalar_input = np.ndim(z1) == 0 and np.ndim(z2) == 0
    z1 = np.atleast_1d(np.asarray(z1, dtype=np.complex128))
    z2 = np.atleast_1d(np.asarray(z2, dtype=np.complex128))
    value = np.real(
        (_damping_term(z1, alpha) - _damping_term(z2, alpha)) * np.conj(z1 - z2)
    )
    return float(value[0]) if scalar_input else value


def nash_ratio(f: ComplexField, alpha: float, s: int) -> float:
    """LHS/RHS ratio of the L^2 interpolation inequality at Sobolev order s.

    ratio = ||f||_2^(a*d + 2*s*(2-a)) / ( (||f||_(2-a)^(2-a))^(2*s) * ||f||_{H^s}^(a*d) );
    amplitude-invariant, and any finite upper bound over a field class is an
    admissible inequality constant for that class.
    """
    if s not in (1, 2):
        raise ValueError(f"s must be 1 or 2, got {s}")
    d = f.grid.dim
    l2 = lp_norm(f, 2.0)
    if l2 == 0.0:
        raise ZeroFieldError("interpolation ratio undefined for the zero field")
    l2ma_pow = lp_norm(f, 2.0 - alpha) ** (2.0 - alpha)
    hs = sobolev_norm(f, float(s))
    return l2 ** (alpha * d + 2.0 * s * (2.0 - alpha)) / (
        l2ma_pow ** (2.0 * s) * hs ** (alpha * d)
    )


def nash_constant_estimate(states: StateStash, alpha: float, s: int) -> float | None:
    """Max interpolation ratio over the stashed trajectory, skipping zero fields."""
    best = None
    for field in states.fields:
        if field.max_modulus() == 0.0:
            continue
        value = nash_ratio(field, alpha, s)
        if best is None or value > best:
            best = value
    return best


def extinction_bound_1d(
    mass0_sq: float, h1_sup: float, gamma: float, alpha: float, nash_c: float
) -> float:
    """Upper bound on the extinction time from the s=1 interpolation constant.

    Integrating d(mass)/dt <= -2*gamma*nash_c^(-1/2)*h1_sup^(-a/2)*mass^(1-a/4)
    gives T <= (2/(a*gamma)) * nash_c^(1/2) * ||u0||_2^(a/2) * h1_sup^(a/2).
    """
    l2_0 = math.sqrt(mass0_sq)
    return (2.0 / (alpha * gamma)) * math.sqrt(nash_c) * l2_0 ** (0.5 * alpha) * h1_sup ** (
        0.5 * alpha
    )


def extinction_bound_23d(
    mass0_sq: float, h2_sup: float, gamma: float, alpha: float, d: int, nash_c: float
) -> float:
    """Upper bound on the extinction time from the s=2 interpolation constant.

    Integrating d(mass)/dt <= -2*gamma*nash_c^(-1/4)*h2_sup^(-a*d/4)*mass^(1-b)
    with b = (1-d/4)*a/2 gives
    T <= nash_c^(1/4) * h2_sup^(a*d/4) * ||u0||_2^((1-d/4)*a) / (gamma*a*(1-d/4)).
    """
    if d not in (2, 3):
        raise ValueError(f"this bound applies to d in {{2, 3}}, got {d}")
    l2_0 = math.sqrt(mass0_sq)
    return (
        nash_c**0.25
        * h2_sup ** (alpha * d / 4.0)
        * l2_0 ** ((1.0 - d / 4.0) * alpha)
        / (gamma * alpha * (1.0 - d / 4.0))
    )


@dataclass(frozen=True)
class ExtinctionReport:
    """Detected extinction time, final norms, and data-driven time bounds."""

    extinct: bool
    t_v: float | None
    mass_at_end: float
    linf_at_end: float
    bound_1d: float | None
    bound_23d: float | None
    nash_constant_estimate: float | None


def build_extinction_report(
    sim_result,
    states: StateStash,
    records: list[TimeSeriesRecord],
    gamma: float,
    alpha: float,
) -> ExtinctionReport:
    d = sim_result.field.grid.dim
    s = 1 if d == 1 else 2
    nash_c = nash_constant_estimate(states, alpha, s)
    mass0_sq = records[0].mass_sq
    bound_1d = bound_23d = None
    if nash_c is not None:
        if d == 1:
            h1_sup = max(rec.h1 for rec in records)
            bound_1d = extinction_bound_1d(mass0_sq, h1_sup, gamma, alpha, nash_c)
        else:
            h2_sup = max(rec.h2 for rec in records)
            bound_23d = extinction_bound_23d(mass0_sq, h2_sup, gamma, alpha, d, nash_c)
    return ExtinctionReport(
        extinct=sim_result.extinct,
        t_v=sim_result.t_extinct,
        mass_at_end=records[-1].mass_sq,
        linf_at_end=records[-1].linf,
        bound_1d=bound_1d,
        bound_23d=bound_23d,
        nash_constant_estimate=nash_c,
    )


def extinction_bound_check(
    report: ExtinctionReport,
    u0_norms: dict,
    gamma: float,
    alpha: float,
    d: int,
    nash_c: float,
    h_sup: float | None = None,
) -> bool:
    """True when the detected extinction time obeys the data-driven bound."""
    if not report.extinct or report.t_v is None:
        raise ValueError("extinction bound check requires an extinct trajectory")
    mass0_sq = u0_norms["l2"] ** 2
    if d == 1:
        bound = extinction_bound_1d(
            mass0_sq, h_sup if h_sup is not None else u0_norms["h1"], gamma, alpha, nash_c
        )
    else:
        bound = extinction_bound_23d(
            mass0_sq,
            h_sup if h_sup is not None else u0_norms["h2"],
            gamma,
            alpha,
            d,
            nash_c,
        )
    return report.t_v <= bound


def holder_continuity_check(states: StateStash) -> float:
    """Max over sample pairs of ||u(t)-u(t')||_2 / |t-t'|^(1/2)."""
    n = len(states.fields)
    if n < 3:
        raise ValueError("need at least 3 samples")
    worst = 0.0
    for i in range(n):
        for j in range(i + 1, n):
            gap = states.times[j] - states.times[i]
            if gap <= 0.0:
                continue
            ratio = _l2_distance(states.fields[i], states.fields[j]) / math.sqrt(gap)
            worst = max(worst, ratio)
    return worst


@dataclass(frozen=True)
class H2PersistenceResult:
    passed: bool
    sup_h2: float
    first_quarter_max: float
    last_quarter_max: float


def h2_persistence_check(
    records: list[TimeSeriesRecord],
    u0_h2: float,
    t_v: float | None = None,
    trend_tolerance: float = 0.05,
) -> H2PersistenceResult:
    """Boundedness of the H^2 norm with no upward trend before extinction.

    Trend: the max over the last quarter of pre-extinction samples must not
    exceed the first-quarter max by more than `trend_tolerance` relative.
    """
    window = [r for r in records if t_v is None or r.t <= t_v]
    if not window:
        raise ValueError("no records before extinction")
    h2 = [r.h2 for r in window]
    sup_h2 = max(h2)
    quarter = max(1, len(h2) // 4)
    first = max(h2[:quarter])
    last = max(h2[-quarter:])
    passed = math.isfinite(sup_h2) and last <= first * (1.0 + trend_tolerance)
    return H2PersistenceResult(passed, sup_h2, first, last)


def dtu_monotonicity_check(records: list[TimeSeriesRecord]) -> float:
    """Worst increase of the recorded ||du/dt||_2 between consecutive samples."""
    dtu = [r.dtu_l2 for r in records if r.dtu_l2 is not None]
    if len(dtu) < 2:
        raise ValueError("need at least two records with du/dt norms")
    return float(max(b - a for a, b in zip(dtu[:-1], dtu[1:])))


def nls_energy(f: ComplexField, q: NlsParams) -> float:
    """Gradient energy plus lam/(sigma+1) * ||u||^(2s+2)_(2s+2)."""
    if not q.enabled:
        raise ValueError("energy requested with the nonlinearity disabled")
    coeffs = to_spectral(f)
    grad_sq = float(
        np.sum(f.grid.k_squared * (coeffs.real**2 + coeffs.imag**2))
    ) * f.grid.volume
    power = 2.0 * q.sigma + 2.0
    potential = lp_norm(f, power) ** power
    return grad_sq + (q.lam / (q.sigma + 1.0)) * potential


def gn_ratio_check(f: ComplexField) -> float:
    """d=1 Gagliardo-Nirenberg ratio ||f||_inf / sqrt(||f||_2 * ||f||_H1)."""
    if f.grid.dim != 1:
        raise ValueError("this ratio is computed in one dimension only")
    linf = f.max_modulus()
    if linf == 0.0:
        raise ZeroFieldError("ratio undefined for the zero field")
    return linf / math.sqrt(lp_norm(f, 2.0) * sobolev_norm(f, 1.0))


def fit_log_mass_slope(
    records: list[TimeSeriesRecord],
    lo_frac: float = 1e-8,
    hi_frac: float = 1e-2,
) -> float:
    """Least-squares slope of log(mass) over the decade window [lo, hi]*initial.

    The window avoids the initial transient and the floating-point floor when
    fitting exponential decay rates.
    """
    m0 = records[0].mass_sq
    ts, logs = [], []
    for rec in records:
        if lo_frac * m0 <= rec.mass_sq <= hi_frac * m0:
            ts.append(rec.t)
            logs.append(math.log(rec.mass_sq))
    if len(ts) < 3:
        raise ValueError(
            f"only {len(ts)} records inside the fit window [{lo_frac}, {hi_frac}]*m0"
        )
    slope, _ = np.polyfit(np.asarray(ts), np.asarray(logs), 1)
    return float(slope)


def mass_monotonicity_violation(records: list[TimeSeriesRecord]) -> float:
    """Worst relative increase of mass between consecutive records."""
    if len(records) < 2:
        return 0.0
    m0 = records[0].mass_sq
    return max(
        (b.mass_sq - a.mass_sq) / (1.0 + m0)
        for a, b in zip(records[:-1], records[1:])
    )


def h1_monotonicity_violation(records: list[TimeSeriesRecord]) -> float:
    """Worst increase of the H^1 norm between consecutive records."""
    if len(records) < 2:
        return 0.0
    return max(b.h1 - a.h1 for a, b in zip(records[:-1], records[1:]))
