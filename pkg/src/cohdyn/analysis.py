"""Time-sweep engine and post-processing: exponential decay-rate fits
(semilog and envelope-of-maxima), revival detection, steady-state detection,
and monogamy-sign tracking."""

from __future__ import annotations

import math
from dataclasses import dataclass
from enum import Enum

import numpy as np

from .coherence import Partition, local_coherence, partition_global, pairwise_global, total_coherence
from .qlinalg import DensityMatrix, ValidationError
from .reservoir import BathParams, CouplingMask, HForm, apply_channels, h_closed
from .states import PureState, density_of

ENVELOPE_FLOOR = 1e-10
SEMILOG_FLOOR = 1e-12
REVIVAL_HYSTERESIS = 10.0


@dataclass(frozen=True)
class CoherenceRecord:
    """Every coherence quantity at one time point, in bits."""

    c_total: float
    c_local: float
    c_global: float
    c12: float
    c13: float
    c23: float
    c_1_23: float
    c_tg: float
    c_bg: float
    m: float


# Public field names (as used in CSV headers and CLI flags) -> record attribute.
FIELD_NAMES = {
    "C_total": "c_total",
    "C_L": "c_local",
    "C_G": "c_global",
    "C_12": "c12",
    "C_13": "c13",
    "C_23": "c23",
    "C_1_23": "c_1_23",
    "C_TG": "c_tg",
    "C_BG": "c_bg",
    "M": "m",
}


@dataclass(frozen=True, eq=False)
class TimeSeries:
    times: np.ndarray
    h_values: np.ndarray
    records: tuple[CoherenceRecord, ...]
    params: BathParams
    mask: CouplingMask
    state_name: str
    h_form: HForm

    def __post_init__(self):
        if not (len(self.times) == len(self.h_values) == len(self.records)):
            raise ValidationError("times, h_values and records must have equal length")
        if len(self.times) > 1 and not np.all(np.diff(self.times) > 0.0):
            raise ValidationError("times must be strictly ascending")

    def field(self, name: str) -> np.ndarray:
        """Samples of one quantity, by public name (also 't' and 'abs_h')."""
        if name == "t":
            return np.asarray(self.times, dtype=float)
        if name == "abs_h":
            return np.abs(self.h_values)
        if name == "h_re":
            return np.real(self.h_values)
        if name == "h_im":
            return np.imag(self.h_values)
        attr = FIELD_NAMES.get(name)
        if attr is None:
            raise ValidationError(f"unknown field {name!r}; expected one of {sorted(FIELD_NAMES)}")
        return np.array([getattr(r, attr) for r in self.records], dtype=float)

    def __len__(self) -> int:
        return len(self.times)


@dataclass(frozen=True)
class DecayFit:
    rate: float
    intercept: float  # natural-log intercept of the fitted line
    window: tuple[float, float]
    method: str
    r_squared: float


@dataclass(frozen=True)
class RevivalEvent:
    death_time: float
    revival_time: float
    peak_after: float


class SignClass(Enum):
    ALWAYS_NON_POSITIVE = "always_non_positive"
    ALWAYS_NON_NEGATIVE = "always_non_negative"
    MIXED = "mixed"


def evaluate_record(rho: DensityMatrix) -> CoherenceRecord:
    """All coherence quantities of a 3-qubit state."""
    c = total_coherence(rho)
    c_local = local_coherence(rho)
    c12 = pairwise_global(rho, 1, 2)
    c13 = pairwise_global(rho, 1, 3)
    c23 = pairwise_global(rho, 2, 3)
    c_1_23 = partition_global(rho, Partition(((1,), (2, 3))))
    return CoherenceRecord(
        c_total=c,
        c_local=c_local,
        c_global=c - c_local,
        c12=c12,
        c13=c13,
        c23=c23,
        c_1_23=c_1_23,
        c_tg=c23 + c_1_23,
        c_bg=c12 + c13 + c23,
        m=c12 + c13 - c_1_23,
    )


def sweep(
    state: PureState,
    params: BathParams,
    mask,
    t_max: float = 20.0,
    n_points: int = 2000,
    form: HForm = HForm.STANDARD,
    state_name: str = "custom",
) -> TimeSeries:
    """Evolve ``state`` on a uniform grid over [0, t_max] (gamma0*t units) and
    record every coherence quantity at each sample.

    The masked qubits are damped with the shared closed-form amplitude h(t);
    unmasked qubits evolve freely.  Deterministic for identical inputs.
    """
    if state.n_qubits != 3:
        raise ValidationError("sweeps record tripartite quantities; need a 3-qubit state")
    if t_max <= 0.0:
        raise ValidationError(f"t_max must be > 0, got {t_max}")
    if n_points < 2:
        raise ValidationError(f"n_points must be >= 2, got {n_points}")
    mask = mask if isinstance(mask, CouplingMask) else CouplingMask(tuple(mask))
    mask.validate_for(state.n_qubits)

    rho0 = density_of(state)
    times = np.linspace(0.0, t_max, n_points)
    h_values = np.empty(n_points, dtype=complex)
    records = []
    for i, t in enumerate(times):
        h = h_closed(float(t), params, form)
        h_values[i] = h
        rho_t = apply_channels(rho0, mask, h)  # raises on |h| > 1 + 1e-9
        records.append(evaluate_record(rho_t))
    return TimeSeries(times, h_values, tuple(records), params, mask, state_name, form)


def _loglinear(ts: np.ndarray, ys: np.ndarray) -> tuple[float, float, float]:
    ln = np.log(ys)
    slope, intercept = np.polyfit(ts, ln, 1)
    pred = slope * ts + intercept
    ss_res = float(np.sum((ln - pred) ** 2))
    ss_tot = float(np.sum((ln - np.mean(ln)) ** 2))
    r2 = 1.0 if ss_tot == 0.0 else 1.0 - ss_res / ss_tot
    return -float(slope), float(intercept), min(1.0, max(0.0, r2))


def fit_semilog(series: TimeSeries, field: str, window: tuple[float, float]) -> DecayFit:
    """Least-squares line through (t, log field) inside ``window``; the decay
    rate is minus the slope.  Every field value in the window must be
    positive (above 1e-12), otherwise the fit is undefined."""
    t_lo, t_hi = float(window[0]), float(window[1])
    if not t_lo < t_hi:
        raise ValidationError(f"window must satisfy t_lo < t_hi, got {window}")
    t = series.field("t")
    y = series.field(field)
    sel = (t >= t_lo) & (t <= t_hi)
    if int(np.sum(sel)) < 2:
        raise ValidationError(f"window {window} contains fewer than 2 samples")
    if np.min(y[sel]) <= SEMILOG_FLOOR:
        raise ValidationError(
            f"window {window} contains non-positive values of {field}; trim the window"
        )
    rate, intercept, r2 = _loglinear(t[sel], y[sel])
    return DecayFit(rate, intercept, (t_lo, t_hi), "semilog", r2)


def _interior_maxima(y: np.ndarray) -> list[int]:
    # Strict three-point maxima with ties broken toward the earlier time and
    # a 1e-10 prominence floor to reject round-off wiggles.
    idx = []
    for i in range(1, len(y) - 1):
        if y[i] > y[i - 1] and y[i] >= y[i + 1]:
            if y[i] > ENVELOPE_FLOOR and y[i] - min(y[i - 1], y[i + 1]) > ENVELOPE_FLOOR:
                idx.append(i)
    return idx


def fit_envelope(series: TimeSeries, field: str) -> DecayFit:
    """Decay rate of an oscillating quantity from the semilog fit through its
    interior local maxima.  Requires at least 3 maxima; with fewer the fit
    errs rather than degrading to a plain semilog fit."""
    t = series.field("t")
    y = series.field(field)
    peaks = _interior_maxima(y)
    if len(peaks) < 3:
        raise ValidationError(
            f"envelope fit needs >= 3 interior maxima of {field}, found {len(peaks)}"
        )
    tp = t[peaks]
    rate, intercept, r2 = _loglinear(tp, y[peaks])
    return DecayFit(rate, intercept, (float(tp[0]), float(tp[-1])), "envelope", r2)


def detect_revivals(series: TimeSeries, field: str, eps: float = 1e-3) -> list[RevivalEvent]:
    """Death/revival events of a quantity: the value drops below ``eps`` and
    later exceeds 10*eps (hysteresis suppresses noise near zeros).  Events
    are ordered by death time."""
    if eps <= 0.0:
        raise ValidationError(f"eps must be > 0, got {eps}")
    t = series.field("t")
    y = series.field(field)
    spans: list[tuple[int, int]] = []
    alive = True
    death_idx = 0
    for i in range(len(y)):
        if alive and y[i] < eps:
            alive = False
            death_idx = i
        elif not alive and y[i] > REVIVAL_HYSTERESIS * eps:
            spans.append((death_idx, i))
            alive = True
    events = []
    for k, (d, r) in enumerate(spans):
        end = spans[k + 1][0] if k + 1 < len(spans) else len(y)
        peak = float(np.max(y[r:end]))
        events.append(RevivalEvent(float(t[d]), float(t[r]), peak))
    return events


def steady_state(series: TimeSeries, field: str, tol: float = 1e-4):
    """Mean of the last 10% of samples if they vary by less than ``tol``
    (max - min), else None."""
    y = series.field(field)
    count = max(2, int(math.ceil(0.1 * len(y))))
    window = y[-count:]
    if float(np.max(window) - np.min(window)) < tol:
        return float(np.mean(window))
    return None


def monogamy_sign(series: TimeSeries, tol: float = 1e-6) -> SignClass:
    """Classify the sign of M(t) over the sweep, treating |M| < tol as zero.
    An identically zero series counts as non-positive (zero is sign-neutral),
    never as mixed."""
    m = series.field("M")
    has_pos = bool(np.any(m > tol))
    has_neg = bool(np.any(m < -tol))
    if has_pos and has_neg:
        return SignClass.MIXED
    if has_pos:
        return SignClass.ALWAYS_NON_NEGATIVE
    return SignClass.ALWAYS_NON_POSITIVE
