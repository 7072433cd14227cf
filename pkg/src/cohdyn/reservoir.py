"""Exact single-qubit amplitude damping from a zero-temperature Lorentzian
bath, lifted to a qubit register via independent per-site channels.

The damping amplitude h(t) obeys the memory-kernel equation

    dh/dt = -int_0^t f(t - s) h(s) ds,    h(0) = 1,

whose kernel is the Fourier transform of a Lorentzian spectral density of
width ``lam`` centred at detuning ``delta`` (rates in units of the coupling
``gamma0``):

    f(s) = (gamma0 * lam / 2) * exp((i*delta - lam) * s),   s >= 0,

obtained by closing the frequency integral in the lower half plane.  With
g(t) = int_0^t exp((i*delta - lam)(t - s)) h(s) ds the memory kernel is
equivalent to the local system

    dh/dt = -(gamma0 * lam / 2) g,    dg/dt = h + (i*delta - lam) g,

with h(0) = 1, g(0) = 0, which :func:`h_oracle` integrates directly.  The
closed-form solution (``HForm.STANDARD``) follows from the characteristic
equation s^2 + (lam - i*delta) s + gamma0*lam/2 = 0:

    h(t) = exp(-(lam - i*delta) t / 2)
           * [cosh(Omega t / 2) + ((lam - i*delta) / Omega) sinh(Omega t / 2)],
    Omega = sqrt((lam - i*delta)^2 - 2 gamma0 lam).

``HForm.PAPER_VERBATIM`` is a variant often quoted in the literature that
doubles the exponent and squares the bracket (i.e. the square of the
standard form).  It shares the endpoints h(0) = 1 and the gamma0 = 0
collapse but does not satisfy the memory-kernel equation; it is retained
behind a flag for comparison, and :func:`h_oracle` discriminates the two.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass
from enum import Enum
import numpy as np

from .qlinalg import DensityMatrix, ValidationError, kron_all

ABS_H_TOL = 1e-9

# Closed-form evaluation thresholds: below SERIES_CUTOFF the sinh(x)/x factor
# is evaluated by series (finite Omega -> 0 limit); above EXP_SPLIT_CUTOFF the
# bracket is split into its two exponentials so cosh cannot overflow.
SERIES_CUTOFF = 1e-4
EXP_SPLIT_CUTOFF = 350.0


class ModelViolationError(RuntimeError):
    """The dynamical model produced an inadmissible value (|h| > 1)."""


class HForm(Enum):
    STANDARD = "standard"
    PAPER_VERBATIM = "paper-verbatim"


class Regime(Enum):
    MARKOVIAN = "Markovian"
    NON_MARKOVIAN = "NonMarkovian"
    BOUNDARY = "Boundary"


@dataclass(frozen=True)
class BathParams:
    """Lorentzian bath parameters, all in units of the coupling rate gamma0.

    ``gamma0`` sets the time unit (gamma0*t is the dimensionless time used
    everywhere); ``lam`` is the spectral width, ``delta`` the detuning.
    """

    gamma0: float = 1.0
    lam: float = 1.0
    delta: float = 0.0

    def __post_init__(self):
        # gamma0 = 0 is admitted as the exact no-coupling limit (h == 1).
        if not (self.gamma0 >= 0.0 and math.isfinite(self.gamma0)):
            raise ValidationError(f"gamma0 must be >= 0, got {self.gamma0}")
        if not (self.lam > 0.0 and math.isfinite(self.lam)):
            raise ValidationError(f"lam must be > 0, got {self.lam}")
        if not math.isfinite(self.delta):
            raise ValidationError(f"delta must be finite, got {self.delta}")


@dataclass(frozen=True)
class CouplingMask:
    """Subset of qubit sites attached to reservoirs ("channels")."""

    coupled: tuple[int, ...]

    def __post_init__(self):
        idx = tuple(sorted({int(q) for q in self.coupled}))
        if idx and idx[0] < 1:
            raise ValidationError(f"qubit indices must be >= 1, got {idx}")
        object.__setattr__(self, "coupled", idx)

    @classmethod
    def full(cls, n: int) -> "CouplingMask":
        return cls(tuple(range(1, n + 1)))

    @classmethod
    def none(cls) -> "CouplingMask":
        return cls(())

    def validate_for(self, n: int) -> None:
        if self.coupled and self.coupled[-1] > n:
            raise ValidationError(f"mask {self.coupled} exceeds qubit count {n}")

    def __iter__(self):
        return iter(self.coupled)

    def __len__(self) -> int:
        return len(self.coupled)


def _mask_indices(mask) -> tuple[int, ...]:
    if isinstance(mask, CouplingMask):
        return mask.coupled
    return CouplingMask(tuple(mask)).coupled


def regime(params: BathParams) -> Regime:
    """Weak coupling (gamma0 < lam/2) is Markovian, strong coupling is not;
    points within 1e-9 relative of the threshold are reported as Boundary."""
    half = 0.5 * params.lam
    eps = 1e-9 * max(params.gamma0, half)
    if params.gamma0 < half - eps:
        return Regime.MARKOVIAN
    if params.gamma0 > half + eps:
        return Regime.NON_MARKOVIAN
    return Regime.BOUNDARY


def h_closed(t: float, params: BathParams, form: HForm = HForm.STANDARD) -> complex:
    """Closed-form damping amplitude h(t) for t >= 0.

    Both variants return exactly 1 at t = 0 and collapse to 1 for all t when
    gamma0 = 0.  The Omega -> 0 point is handled by a series expansion of
    sinh(Omega t/2)/Omega.
    """
    if t < 0:
        raise ValidationError(f"t must be >= 0, got {t}")
    z = complex(params.lam, -params.delta)
    omega = cmath.sqrt(z * z - 2.0 * params.gamma0 * params.lam)
    x = 0.5 * omega * t
    if abs(x) < SERIES_CUTOFF:
        x2 = x * x
        sinhc = 1.0 + x2 / 6.0 + x2 * x2 / 120.0
        amp = cmath.exp(-0.5 * z * t) * (cmath.cosh(x) + z * (0.5 * t) * sinhc)
    elif x.real < EXP_SPLIT_CUTOFF:
        amp = cmath.exp(-0.5 * z * t) * (cmath.cosh(x) + (z / omega) * cmath.sinh(x))
    else:
        a_plus = 0.5 * (1.0 + z / omega)
        a_minus = 0.5 * (1.0 - z / omega)
        amp = a_plus * cmath.exp(0.5 * (omega - z) * t) + a_minus * cmath.exp(-0.5 * (omega + z) * t)
    return amp * amp if form is HForm.PAPER_VERBATIM else amp


def h_oracle(params: BathParams, t_grid) -> np.ndarray:
    """Damping amplitude on a time grid via direct integration of the
    memory-kernel dynamics (see module docstring), independent of the closed
    form.  Fixed-step classical RK4 with step <= min(0.001/gamma0, 0.05/lam,
    grid spacing); the result is grid- and scheduling-independent."""
    t = np.asarray(t_grid, dtype=float)
    if t.ndim != 1 or t.size < 1:
        raise ValidationError("t_grid must be a 1-d array of times")
    if t[0] != 0.0:
        raise ValidationError(f"t_grid must start at 0, got {t[0]}")
    if t.size > 1 and not np.all(np.diff(t) > 0.0):
        raise ValidationError("t_grid must be strictly ascending")

    caps = [0.05 / params.lam]
    if params.gamma0 > 0.0:
        caps.append(0.001 / params.gamma0)
    h_max = min(caps)

    coupling = 0.5 * params.gamma0 * params.lam
    drift = complex(-params.lam, params.delta)

    def deriv(h: complex, g: complex) -> tuple[complex, complex]:
        return -coupling * g, h + drift * g

    out = np.empty(t.size, dtype=complex)
    out[0] = 1.0
    h, g = 1.0 + 0.0j, 0.0 + 0.0j
    for i in range(t.size - 1):
        span = t[i + 1] - t[i]
        n_sub = max(1, int(math.ceil(span / h_max)))
        dt = span / n_sub
        if not (dt > 0.0) or n_sub > 50_000_000:
            raise ValidationError(f"step-size underflow on grid interval {i}")
        for _ in range(n_sub):
            k1h, k1g = deriv(h, g)
            k2h, k2g = deriv(h + 0.5 * dt * k1h, g + 0.5 * dt * k1g)
            k3h, k3g = deriv(h + 0.5 * dt * k2h, g + 0.5 * dt * k2g)
            k4h, k4g = deriv(h + dt * k3h, g + dt * k3g)
            h += dt * (k1h + 2.0 * k2h + 2.0 * k3h + k4h) / 6.0
            g += dt * (k1g + 2.0 * k2g + 2.0 * k3g + k4g) / 6.0
        out[i + 1] = h
    return out


def kraus_pair(h: complex) -> tuple[np.ndarray, np.ndarray]:
    """Kraus pair of the damping channel with amplitude h:
    K0 = diag(1, h), K1 = sqrt(1 - |h|^2) |0><1|.

    |h| may exceed 1 by at most 1e-9 (clamped); anything larger is a model
    violation and raises rather than being silently repaired.
    """
    h = complex(h)
    a = abs(h)
    if a > 1.0 + ABS_H_TOL:
        raise ModelViolationError(f"|h| = {a} exceeds 1 beyond tolerance")
    if a > 1.0:
        h /= a
        a = 1.0
    k0 = np.array([[1.0, 0.0], [0.0, h]], dtype=complex)
    k1 = np.array([[0.0, math.sqrt(max(0.0, 1.0 - a * a))], [0.0, 0.0]], dtype=complex)
    return k0, k1


def choi_of_pair(k0: np.ndarray, k1: np.ndarray) -> np.ndarray:
    """Unnormalized Choi matrix of the channel {k0, k1}; PSD iff the channel
    is completely positive."""
    d = k0.shape[0]
    choi = np.zeros((d * d, d * d), dtype=complex)
    for i in range(d):
        for j in range(d):
            e_ij = np.zeros((d, d), dtype=complex)
            e_ij[i, j] = 1.0
            out = k0 @ e_ij @ k0.conj().T + k1 @ e_ij @ k1.conj().T
            choi += np.kron(e_ij, out)
    return choi


def _lift(op: np.ndarray, site: int, n: int) -> np.ndarray:
    return kron_all(np.eye(2 ** (site - 1)), op, np.eye(2 ** (n - site)))


def apply_channels(rho: DensityMatrix, mask, h) -> DensityMatrix:
    """Apply the damping channel with amplitude ``h`` on every masked qubit
    and the identity elsewhere.

    ``h`` is a single amplitude shared by all coupled sites, or a sequence
    with one amplitude per coupled site (ascending site order) for
    heterogeneous baths.
    """
    sites = _mask_indices(mask)
    n = rho.n_qubits
    if sites and sites[-1] > n:
        raise ValidationError(f"mask {sites} exceeds qubit count {n}")
    if isinstance(h, (int, float, complex)):
        amps = [complex(h)] * len(sites)
    else:
        amps = [complex(v) for v in h]
        if len(amps) != len(sites):
            raise ValidationError(
                f"got {len(amps)} amplitudes for {len(sites)} coupled site(s)"
            )
    m = rho.matrix
    for site, amp in zip(sites, amps):
        k0, k1 = kraus_pair(amp)
        a = _lift(k0, site, n)
        b = _lift(k1, site, n)
        m = a @ m @ a.conj().T + b @ m @ b.conj().T
    return DensityMatrix(m, n)


def probe(rho: DensityMatrix, site: int) -> DensityMatrix:
    """Infinite-time decay map on one qubit (Kraus |0><0| and |0><1|):
    the h = 0 limit of the damping channel.  Idempotent per site."""
    return apply_channels(rho, (site,), 0.0)
