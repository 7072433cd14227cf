from pathlib import Path

import numpy as np

from cohdyn import DensityMatrix

REPO_ROOT = Path(__file__).resolve().parents[1]
CONFIG_DIR = REPO_ROOT / "configs"
ARTIFACT_DIR = REPO_ROOT / "test-artifacts"


def random_mixed_density(n: int, seed: int, rank: int | None = None) -> DensityMatrix:
    """Seeded random mixed state from a Ginibre factor of the given rank."""
    rng = np.random.default_rng(seed)
    d = 2 ** n
    r = rank if rank is not None else d
    g = rng.standard_normal((d, r)) + 1j * rng.standard_normal((d, r))
    m = g @ g.conj().T
    return DensityMatrix.from_array(m / np.trace(m).real)
