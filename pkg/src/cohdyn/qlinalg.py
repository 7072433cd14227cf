"""Dense complex linear algebra for qubit-register density matrices.

Conventions used throughout the package:

* qubit 1 is the most significant bit of a computational-basis label, so
  on three qubits ``|100>`` sits at index 4;
* entropies are in bits (base-2 logarithms);
* eigenvalues below ``EIG_CLAMP`` are treated as exact zeros before any
  ``x log x`` evaluation, which keeps round-off from producing NaNs.

States are small (at most ten qubits in practice), so everything is dense
and eigendecomposition-based.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Iterable

import numpy as np

HERMITICITY_TOL = 1e-10
TRACE_TOL = 1e-10
PSD_TOL = 1e-10
SUPPORT_TOL = 1e-10
EIG_CLAMP = 1e-12


class ValidationError(ValueError):
    """A state, parameter set, or config failed its consistency checks."""


def _as_complex_matrix(matrix) -> np.ndarray:
    m = np.asarray(matrix, dtype=complex)
    if m.ndim != 2:
        raise ValidationError(f"expected a matrix, got array of ndim={m.ndim}")
    return m


@dataclass(frozen=True, eq=False)
class DensityMatrix:
    """Trace-one, Hermitian, positive-semidefinite matrix on ``n_qubits`` qubits.

    Construction validates all three properties (tolerance 1e-10) so that
    every state produced anywhere in the package is checked at the boundary.
    The wrapped array is frozen; treat instances as immutable values.
    """

    matrix: np.ndarray
    n_qubits: int

    def __post_init__(self):
        if self.n_qubits < 1:
            raise ValidationError("n_qubits must be >= 1")
        m = _as_complex_matrix(self.matrix)
        dim = 2 ** self.n_qubits
        if m.shape != (dim, dim):
            raise ValidationError(
                f"matrix shape {m.shape} does not match {self.n_qubits} qubit(s)"
            )
        if np.max(np.abs(m - m.conj().T)) > HERMITICITY_TOL:
            raise ValidationError("matrix is not Hermitian within 1e-10")
        tr = complex(np.trace(m))
        if abs(tr - 1.0) > TRACE_TOL:
            raise ValidationError(f"trace {tr} is not 1 within 1e-10")
        if float(np.linalg.eigvalsh(m)[0]) < -PSD_TOL:
            raise ValidationError("matrix has an eigenvalue below -1e-10")
        m = m.copy()
        m.flags.writeable = False
        object.__setattr__(self, "matrix", m)

    @classmethod
    def from_array(cls, matrix) -> "DensityMatrix":
        """Wrap a 2^n x 2^n array, inferring the qubit count from its shape."""
        m = _as_complex_matrix(matrix)
        n = int(round(math.log2(m.shape[0]))) if m.shape[0] > 0 else 0
        if n < 1 or 2 ** n != m.shape[0]:
            raise ValidationError(f"dimension {m.shape[0]} is not a power of 2")
        return cls(m, n)

    @property
    def dim(self) -> int:
        return 2 ** self.n_qubits

    def eigenvalues(self) -> np.ndarray:
        return np.linalg.eigvalsh(self.matrix)


def tensor_product(a, b) -> np.ndarray:
    """Kronecker product; the first factor is the most significant subsystem."""
    return np.kron(_as_complex_matrix(a), _as_complex_matrix(b))


def kron_all(*factors) -> np.ndarray:
    out = np.array([[1.0 + 0.0j]])
    for f in factors:
        out = np.kron(out, _as_complex_matrix(f))
    return out


def product_density(*states: DensityMatrix) -> DensityMatrix:
    """Tensor product of density matrices, in the order given."""
    if not states:
        raise ValidationError("need at least one factor")
    n = sum(s.n_qubits for s in states)
    return DensityMatrix(kron_all(*(s.matrix for s in states)), n)


def partial_trace(rho: DensityMatrix, keep: Iterable[int]) -> DensityMatrix:
    """Reduced state on the kept qubits (1-based indices, order preserved)."""
    kept = sorted({int(k) for k in keep})
    n = rho.n_qubits
    if not kept:
        raise ValidationError("keep must be a nonempty set of qubit indices")
    if kept[0] < 1 or kept[-1] > n:
        raise ValidationError(f"qubit indices must lie in 1..{n}, got {kept}")
    drop = [q for q in range(1, n + 1) if q not in kept]
    t = rho.matrix.reshape([2] * (2 * n))
    # Trace the highest positions first so lower axis numbers stay valid.
    remaining = n
    for q in sorted(drop, reverse=True):
        ax = q - 1
        t = np.trace(t, axis1=ax, axis2=ax + remaining)
        remaining -= 1
    d = 2 ** len(kept)
    return DensityMatrix(t.reshape(d, d), len(kept))


def dephase(rho: DensityMatrix) -> DensityMatrix:
    """Zero all off-diagonal entries in the computational basis."""
    return DensityMatrix(np.diag(np.diag(rho.matrix)), rho.n_qubits)


def entropy_of_spectrum(eigs) -> float:
    """Shannon entropy in bits of a probability spectrum, clamping tiny values."""
    lam = np.asarray(eigs, dtype=float)
    lam = np.where(lam < EIG_CLAMP, 0.0, lam)
    nz = lam[lam > 0.0]
    if nz.size == 0:
        return 0.0
    return float(-np.sum(nz * np.log2(nz)))


def von_neumann_entropy(rho: DensityMatrix) -> float:
    """-sum(lam * log2 lam) over the spectrum of ``rho``, in bits."""
    return entropy_of_spectrum(np.linalg.eigvalsh(rho.matrix))


def relative_entropy(rho: DensityMatrix, sigma: DensityMatrix) -> float:
    """Quantum relative entropy S(rho || sigma) in bits.

    Returns ``math.inf`` when the support of ``rho`` is not contained in the
    support of ``sigma`` (the defined value, not an error).
    """
    if rho.n_qubits != sigma.n_qubits:
        raise ValidationError("relative entropy needs states of equal dimension")
    s_eigs, s_vecs = np.linalg.eigh(sigma.matrix)
    # weight of rho along each eigenvector of sigma
    w = np.einsum("ij,ji->i", s_vecs.conj().T @ rho.matrix, s_vecs).real
    null = s_eigs < EIG_CLAMP
    if float(np.sum(w[null])) > SUPPORT_TOL:
        return math.inf
    tr_rho_log_rho = -von_neumann_entropy(rho)
    tr_rho_log_sigma = float(np.sum(w[~null] * np.log2(s_eigs[~null])))
    return max(0.0, tr_rho_log_rho - tr_rho_log_sigma)
