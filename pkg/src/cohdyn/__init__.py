"""Coherence dynamics of qubit registers damped by independent Lorentzian
reservoirs: exact amplitude-damping evolution, the full local/global/
bipartite/tripartite decomposition of relative-entropy coherence, monogamy
tracking, decay-rate fits, and revival detection."""

from .analysis import (
    CoherenceRecord,
    DecayFit,
    RevivalEvent,
    SignClass,
    TimeSeries,
    detect_revivals,
    evaluate_record,
    fit_envelope,
    fit_semilog,
    monogamy_sign,
    steady_state,
    sweep,
)
from .coherence import (
    CoherenceTuple,
    Partition,
    aggregates,
    classify_monogamy,
    global_coherence,
    local_coherence,
    monogamy,
    pairwise_global,
    partition_global,
    total_coherence,
    tuple_direct,
    tuple_probe,
)
from .qlinalg import (
    DensityMatrix,
    ValidationError,
    dephase,
    kron_all,
    partial_trace,
    product_density,
    relative_entropy,
    tensor_product,
    von_neumann_entropy,
)
from .reservoir import (
    BathParams,
    CouplingMask,
    HForm,
    ModelViolationError,
    Regime,
    apply_channels,
    choi_of_pair,
    h_closed,
    h_oracle,
    kraus_pair,
    probe,
    regime,
)
from .states import (
    PureState,
    density_of,
    load_amplitude_file,
    named_state,
    random_pure_state,
)

__version__ = "0.1.0"
