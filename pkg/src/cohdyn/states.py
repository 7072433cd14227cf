"""Initial-state factory: named multi-qubit states, seeded random states, and
amplitude files (one "re im" pair per line, in binary label order)."""

from __future__ import annotations

from dataclasses import dataclass
from pathlib import Path

import numpy as np

from .qlinalg import DensityMatrix, ValidationError

NORM_TOL = 1e-12

NAMED_STATES = ("W", "WBAR", "GHZ", "WWBAR")


@dataclass(frozen=True, eq=False)
class PureState:
    """Normalized amplitude vector over the computational basis."""

    n_qubits: int
    amplitudes: np.ndarray

    def __post_init__(self):
        if self.n_qubits < 1:
            raise ValidationError("n_qubits must be >= 1")
        a = np.asarray(self.amplitudes, dtype=complex).reshape(-1)
        if a.size != 2 ** self.n_qubits:
            raise ValidationError(
                f"{a.size} amplitudes do not fit {self.n_qubits} qubit(s)"
            )
        norm_sq = float(np.sum(np.abs(a) ** 2))
        if abs(norm_sq - 1.0) > NORM_TOL:
            raise ValidationError(f"state norm^2 = {norm_sq} is not 1 within 1e-12")
        a = a.copy()
        a.flags.writeable = False
        object.__setattr__(self, "amplitudes", a)

    @property
    def dim(self) -> int:
        return 2 ** self.n_qubits


def named_state(name: str, n: int = 3) -> PureState:
    """W / WBAR / GHZ for n >= 2, WWBAR (the balanced W + WBAR superposition)
    for n = 3.  All amplitudes are real and nonnegative, fixing the global phase."""
    key = name.strip().upper().replace("-", "").replace("_", "")
    if key not in NAMED_STATES:
        raise ValidationError(f"unknown state name {name!r}; expected one of {NAMED_STATES}")
    if key == "WWBAR" and n != 3:
        raise ValidationError("WWBAR is defined for exactly 3 qubits")
    if n < 2:
        raise ValidationError(f"{key} needs at least 2 qubits")
    dim = 2 ** n
    amps = np.zeros(dim, dtype=complex)
    if key == "W":
        amps[[1 << k for k in range(n)]] = 1.0 / np.sqrt(n)
    elif key == "WBAR":
        amps[[(dim - 1) ^ (1 << k) for k in range(n)]] = 1.0 / np.sqrt(n)
    elif key == "GHZ":
        amps[[0, dim - 1]] = 1.0 / np.sqrt(2.0)
    else:  # WWBAR
        singles = [1 << k for k in range(n)]
        doubles = [(dim - 1) ^ (1 << k) for k in range(n)]
        amps[singles + doubles] = 1.0 / np.sqrt(6.0)
    return PureState(n, amps)


def density_of(psi: PureState) -> DensityMatrix:
    """Rank-1 projector |psi><psi|."""
    a = psi.amplitudes
    return DensityMatrix(np.outer(a, a.conj()), psi.n_qubits)


def random_pure_state(n: int, seed: int) -> PureState:
    """Haar-distributed pure state from normalized complex-Gaussian amplitudes.

    Deterministic per seed.
    """
    if n < 1:
        raise ValidationError("n must be >= 1")
    rng = np.random.default_rng(seed)
    dim = 2 ** n
    v = rng.standard_normal(dim) + 1j * rng.standard_normal(dim)
    v /= np.linalg.norm(v)
    return PureState(n, v)


def load_amplitude_file(path) -> PureState:
    """Read a pure state from a text file: one amplitude per line as "re im",
    lines ordered by binary basis label.  Blank lines and '#' comments are
    skipped.  The amplitude count must be a power of two and the state must
    be normalized within 1e-12."""
    path = Path(path)
    amps = []
    for lineno, raw in enumerate(path.read_text(encoding="utf-8").splitlines(), start=1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        parts = line.split()
        if len(parts) != 2:
            raise ValidationError(f"{path}:{lineno}: expected 're im', got {raw!r}")
        try:
            re, im = float(parts[0]), float(parts[1])
        except ValueError as exc:
            raise ValidationError(f"{path}:{lineno}: non-numeric amplitude {raw!r}") from exc
        amps.append(complex(re, im))
    count = len(amps)
    n = count.bit_length() - 1
    if count < 2 or 2 ** n != count:
        raise ValidationError(f"{path}: {count} amplitudes is not a power of two >= 2")
    return PureState(n, np.array(amps, dtype=complex))
