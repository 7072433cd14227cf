"""Coherence functionals in the computational basis.

The total coherence of a state is the entropy gap S(rho_d) - S(rho) between
the dephased and the original state.  It splits exactly into a local part
(carried by single-qubit marginals) and a global, inter-qubit part, and the
global part further resolves into pairwise and genuinely tripartite
contributions.  A seven-component tuple collects the full distribution for
three qubits, and can be reconstructed operationally by comparing the total
coherence left after decaying qubits to their ground state in all subset
combinations.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .qlinalg import (
    DensityMatrix,
    ValidationError,
    entropy_of_spectrum,
    partial_trace,
    product_density,
)
from .reservoir import probe

NONNEG_SLACK = 1e-9


@dataclass(frozen=True)
class Partition:
    """Disjoint blocks of qubit indices covering the register, e.g.
    ``Partition(((1,), (2, 3)))`` for the 1|23 bipartition."""

    blocks: tuple[tuple[int, ...], ...]

    def __post_init__(self):
        blocks = tuple(tuple(sorted(int(q) for q in b)) for b in self.blocks)
        if not blocks or any(not b for b in blocks):
            raise ValidationError("partition blocks must be nonempty")
        flat = [q for b in blocks for q in b]
        if len(set(flat)) != len(flat):
            raise ValidationError(f"partition blocks overlap: {blocks}")
        object.__setattr__(self, "blocks", blocks)

    def validate_for(self, n: int) -> None:
        flat = sorted(q for b in self.blocks for q in b)
        if flat != list(range(1, n + 1)):
            raise ValidationError(f"partition {self.blocks} does not cover 1..{n}")


def total_coherence(rho: DensityMatrix) -> float:
    """S(rho_d) - S(rho) in bits; the relative entropy to the nearest
    incoherent (diagonal) state."""
    diag = np.diag(rho.matrix).real
    s_diag = entropy_of_spectrum(diag)
    s_rho = entropy_of_spectrum(np.linalg.eigvalsh(rho.matrix))
    return max(0.0, s_diag - s_rho)


def _marginals(rho: DensityMatrix) -> list[DensityMatrix]:
    return [partial_trace(rho, (q,)) for q in range(1, rho.n_qubits + 1)]


def local_coherence(rho: DensityMatrix) -> float:
    """Coherence of the product of single-qubit marginals.  Equals the sum of
    the marginal coherences by additivity over tensor products."""
    return total_coherence(product_density(*_marginals(rho)))


def global_coherence(rho: DensityMatrix) -> float:
    """Inter-qubit coherence: total minus local."""
    return total_coherence(rho) - local_coherence(rho)


def partition_global(rho: DensityMatrix, partition: Partition) -> float:
    """Coherence not accounted for by the blocks of ``partition``:
    C(rho) - C(tensor of block marginals).  Nonnegative up to round-off."""
    partition.validate_for(rho.n_qubits)
    factors = [partial_trace(rho, block) for block in partition.blocks]
    return total_coherence(rho) - total_coherence(product_density(*factors))


def pairwise_global(rho: DensityMatrix, i: int, j: int) -> float:
    """Global coherence of the reduced state on qubits i and j."""
    if i == j:
        raise ValidationError("pairwise coherence needs two distinct qubits")
    reduced = partial_trace(rho, (i, j))
    return global_coherence(reduced)


def _require_three(rho: DensityMatrix) -> None:
    if rho.n_qubits != 3:
        raise ValidationError(f"operation is defined for 3 qubits, got {rho.n_qubits}")


def aggregates(rho: DensityMatrix) -> tuple[float, float]:
    """(C_TG, C_BG): the tripartite aggregate C_{2:3} + C_{1:23} and the
    bipartite aggregate C_{1:2} + C_{1:3} + C_{2:3}."""
    _require_three(rho)
    c23 = pairwise_global(rho, 2, 3)
    c12 = pairwise_global(rho, 1, 2)
    c13 = pairwise_global(rho, 1, 3)
    c1_23 = partition_global(rho, Partition(((1,), (2, 3))))
    return c23 + c1_23, c12 + c13 + c23


def monogamy(rho: DensityMatrix, focus: int = 1) -> float:
    """Monogamy of coherence M = C_{f:a} + C_{f:b} - C_{f:ab} for the focus
    qubit f.  M <= 0 marks a monogamous state, M > 0 a polygamous one."""
    _require_three(rho)
    if focus not in (1, 2, 3):
        raise ValidationError(f"focus must be 1, 2 or 3, got {focus}")
    a, b = [q for q in (1, 2, 3) if q != focus]
    pair_sum = pairwise_global(rho, focus, a) + pairwise_global(rho, focus, b)
    rest = partition_global(rho, Partition(((focus,), (a, b))))
    return pair_sum - rest


def classify_monogamy(m: float, tol: float = 1e-9) -> str:
    """'monogamous', 'polygamous', or 'degenerate' when |M| < tol (all the
    contributing coherences vanish)."""
    if abs(m) < tol:
        return "degenerate"
    return "polygamous" if m > 0 else "monogamous"


@dataclass(frozen=True)
class CoherenceTuple:
    """Seven-component distribution of coherence over a 3-qubit register:
    three local terms, three pairwise global terms, and a tripartite term
    defined as the remainder C - sum(locals) - sum(pairwise), which may be
    negative.  ``residual`` is the reconstruction inconsistency (zero for the
    direct constructor)."""

    c1: float
    c2: float
    c3: float
    c12: float
    c13: float
    c23: float
    c123: float
    residual: float = 0.0

    def as_dict(self) -> dict[str, float]:
        return {
            "c1": self.c1,
            "c2": self.c2,
            "c3": self.c3,
            "c12": self.c12,
            "c13": self.c13,
            "c23": self.c23,
            "c123": self.c123,
            "residual": self.residual,
        }


def tuple_direct(rho: DensityMatrix) -> CoherenceTuple:
    """Tuple from direct evaluation on the state and its reductions."""
    _require_three(rho)
    locals_ = [total_coherence(m) for m in _marginals(rho)]
    pairs = [pairwise_global(rho, i, j) for i, j in ((1, 2), (1, 3), (2, 3))]
    c123 = total_coherence(rho) - sum(locals_) - sum(pairs)
    return CoherenceTuple(*locals_, *pairs, c123, 0.0)


# Probe subsets and the component index sets of the additive model, in the
# fixed order (c1, c2, c3, c12, c13, c23, c123).
_PROBE_SUBSETS = ((), (1,), (2,), (3,), (1, 2), (1, 3), (2, 3), (1, 2, 3))
_COMPONENTS = ({1}, {2}, {3}, {1, 2}, {1, 3}, {2, 3}, {1, 2, 3})


def tuple_probe(rho: DensityMatrix) -> CoherenceTuple:
    """Tuple reconstructed from probe measurements alone.

    Decaying a subset S of qubits to the ground state destroys every
    coherence component that touches S.  The total coherence after each of
    the 8 subset probes therefore constrains the additive model
    C = sum(c_j) + sum(c_ij) + c123; the over-determined linear system is
    solved by least squares and the largest absolute inconsistency is
    reported as ``residual`` rather than assumed to vanish.
    """
    _require_three(rho)
    observations = np.empty(len(_PROBE_SUBSETS))
    design = np.zeros((len(_PROBE_SUBSETS), len(_COMPONENTS)))
    for row, subset in enumerate(_PROBE_SUBSETS):
        state = rho
        for site in subset:
            state = probe(state, site)
        observations[row] = total_coherence(state)
        for col, comp in enumerate(_COMPONENTS):
            if not comp & set(subset):
                design[row, col] = 1.0
    solution, *_ = np.linalg.lstsq(design, observations, rcond=None)
    residual = float(np.max(np.abs(design @ solution - observations)))
    return CoherenceTuple(*(float(v) for v in solution), residual)
