import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from cohdyn import (
    DensityMatrix,
    Partition,
    PureState,
    ValidationError,
    aggregates,
    classify_monogamy,
    dephase,
    density_of,
    global_coherence,
    local_coherence,
    monogamy,
    named_state,
    pairwise_global,
    partial_trace,
    partition_global,
    probe,
    product_density,
    random_pure_state,
    total_coherence,
    tuple_direct,
    tuple_probe,
    von_neumann_entropy,
)
from conftest import random_mixed_density

LOG2_3 = math.log2(3.0)
LOG2_6 = math.log2(6.0)
H_FIVE_SIXTHS = -(5 / 6) * math.log2(5 / 6) - (1 / 6) * math.log2(1 / 6)
WWBAR_LOCAL = 3.0 * (1.0 - H_FIVE_SIXTHS)

seeds = st.integers(min_value=0, max_value=10**6)


def rho_of(name):
    return density_of(named_state(name))


def random_product_state(seed) -> DensityMatrix:
    factors = [density_of(random_pure_state(1, seed + k)) for k in range(3)]
    return product_density(*factors)


# --- total / local / global on the named states ---

def test_total_coherence_values():
    assert total_coherence(rho_of("GHZ")) == pytest.approx(1.0, abs=1e-9)
    assert total_coherence(rho_of("W")) == pytest.approx(LOG2_3, abs=1e-9)
    assert total_coherence(rho_of("WWBAR")) == pytest.approx(LOG2_6, abs=1e-9)


def test_local_coherence_values():
    assert local_coherence(rho_of("W")) == pytest.approx(0.0, abs=1e-9)
    assert local_coherence(rho_of("GHZ")) == pytest.approx(0.0, abs=1e-9)
    assert local_coherence(rho_of("WWBAR")) == pytest.approx(WWBAR_LOCAL, abs=1e-9)


def test_global_coherence_values():
    assert global_coherence(random_product_state(40)) == pytest.approx(0.0, abs=1e-9)
    assert global_coherence(rho_of("W")) == pytest.approx(LOG2_3, abs=1e-9)
    assert global_coherence(rho_of("WWBAR")) == pytest.approx(LOG2_6 - WWBAR_LOCAL, abs=1e-9)


def test_wwbar_marginal_matches_closed_form():
    r1 = partial_trace(rho_of("WWBAR"), (1,))
    assert np.allclose(r1.matrix, [[0.5, 1 / 3], [1 / 3, 0.5]], atol=1e-12)
    assert np.allclose(np.linalg.eigvalsh(r1.matrix), [1 / 6, 5 / 6], atol=1e-12)


# --- partition-resolved coherence ---

def test_partition_validation():
    rho = rho_of("W")
    with pytest.raises(ValidationError):
        Partition(((1, 2), (2, 3)))  # overlap
    with pytest.raises(ValidationError):
        partition_global(rho, Partition(((1,), (2,))))  # does not cover


def test_finest_partition_equals_global():
    for seed in (1, 2, 3):
        rho = density_of(random_pure_state(3, seed))
        fine = partition_global(rho, Partition(((1,), (2,), (3,))))
        assert fine == pytest.approx(global_coherence(rho), abs=1e-10)


def test_one_vs_rest_on_w():
    value = partition_global(rho_of("W"), Partition(((1,), (2, 3))))
    assert value == pytest.approx(LOG2_3 - 2.0 / 3.0, abs=1e-9)


def test_partition_of_actual_product_is_zero():
    r1 = density_of(random_pure_state(1, 50))
    r23 = density_of(random_pure_state(2, 51))
    rho = product_density(r1, r23)
    value = partition_global(rho, Partition(((1,), (2, 3))))
    assert value == pytest.approx(0.0, abs=1e-10)


def test_partition_global_equals_mutual_information_gap():
    # independent route: C(rho) - C(prod of marginals) equals
    # I(rho) - I(dephase(rho)) across the same split
    for seed in (60, 61, 62):
        rho = random_mixed_density(3, seed, rank=2 + seed % 4)
        value = partition_global(rho, Partition(((1,), (2, 3))))

        def mutual(r):
            s1 = von_neumann_entropy(partial_trace(r, (1,)))
            s23 = von_neumann_entropy(partial_trace(r, (2, 3)))
            return s1 + s23 - von_neumann_entropy(r)

        assert value == pytest.approx(mutual(rho) - mutual(dephase(rho)), abs=1e-9)


def test_pairwise_global_values():
    w = rho_of("W")
    for i, j in ((1, 2), (1, 3), (2, 3)):
        assert pairwise_global(w, i, j) == pytest.approx(2.0 / 3.0, abs=1e-9)
    ghz = rho_of("GHZ")
    assert pairwise_global(ghz, 1, 2) == pytest.approx(0.0, abs=1e-9)
    assert pairwise_global(random_product_state(70), 1, 2) == pytest.approx(0.0, abs=1e-9)
    with pytest.raises(ValidationError):
        pairwise_global(w, 2, 2)


def test_aggregates():
    assert aggregates(rho_of("GHZ")) == pytest.approx((1.0, 0.0), abs=1e-9)
    c_tg, c_bg = aggregates(rho_of("W"))
    assert c_tg == pytest.approx(LOG2_3, abs=1e-9)
    assert c_bg == pytest.approx(2.0, abs=1e-9)
    assert aggregates(random_product_state(80)) == pytest.approx((0.0, 0.0), abs=1e-9)


# --- monogamy ---

def test_monogamy_values():
    assert monogamy(rho_of("GHZ")) == pytest.approx(-1.0, abs=1e-9)
    assert monogamy(rho_of("W")) == pytest.approx(2.0 - LOG2_3, abs=1e-9)


def test_monogamy_of_diagonal_times_pair():
    r1 = DensityMatrix.from_array(np.diag([0.7, 0.3]))
    bell = np.zeros(4, complex)
    bell[[0, 3]] = 1.0 / math.sqrt(2.0)
    r23 = DensityMatrix.from_array(np.outer(bell, bell.conj()))
    rho = product_density(r1, r23)
    assert monogamy(rho) == pytest.approx(0.0, abs=1e-9)


def test_monogamy_focus():
    # focusing on an undamaged symmetry axis of W gives the same value
    w = rho_of("W")
    assert monogamy(w, focus=2) == pytest.approx(monogamy(w, focus=1), abs=1e-10)
    with pytest.raises(ValidationError):
        monogamy(w, focus=4)


def test_classify_monogamy():
    assert classify_monogamy(-0.5) == "monogamous"
    assert classify_monogamy(0.5) == "polygamous"
    assert classify_monogamy(1e-12) == "degenerate"


# --- structural invariants ---

@given(seeds)
@settings(max_examples=30, deadline=None)
def test_complementarity_and_nonnegativity(seed):
    rho = density_of(random_pure_state(3, seed))
    c = total_coherence(rho)
    cl = local_coherence(rho)
    cg = global_coherence(rho)
    assert cl + cg == pytest.approx(c, abs=1e-12)
    assert cl >= -1e-9 and cg >= -1e-9


@given(seeds)
@settings(max_examples=30, deadline=None)
def test_chain_rule(seed):
    rho = random_mixed_density(3, seed, rank=1 + seed % 8)
    cg = global_coherence(rho)
    c1_23 = partition_global(rho, Partition(((1,), (2, 3))))
    c23 = pairwise_global(rho, 2, 3)
    assert cg == pytest.approx(c1_23 + c23, abs=1e-9)


@given(seeds, st.integers(1, 3))
@settings(max_examples=30, deadline=None)
def test_probing_never_increases_coherence(seed, site):
    rho = density_of(random_pure_state(3, seed))
    assert total_coherence(probe(rho, site)) <= total_coherence(rho) + 1e-9


def test_symmetry_of_symmetric_states():
    for name in ("W", "GHZ", "WWBAR"):
        t = tuple_direct(rho_of(name))
        assert abs(t.c1 - t.c2) < 1e-10 and abs(t.c2 - t.c3) < 1e-10
        assert abs(t.c12 - t.c13) < 1e-10 and abs(t.c13 - t.c23) < 1e-10


# --- seven-component tuple ---

def test_tuple_direct_ghz():
    t = tuple_direct(rho_of("GHZ"))
    assert t.c123 == pytest.approx(1.0, abs=1e-9)
    for v in (t.c1, t.c2, t.c3, t.c12, t.c13, t.c23):
        assert v == pytest.approx(0.0, abs=1e-9)
    assert t.residual == 0.0


def test_tuple_direct_w():
    t = tuple_direct(rho_of("W"))
    for v in (t.c12, t.c13, t.c23):
        assert v == pytest.approx(2.0 / 3.0, abs=1e-9)
    assert t.c123 == pytest.approx(LOG2_3 - 2.0, abs=1e-9)  # negative, recorded as-is


def test_tuple_direct_product():
    rho = random_product_state(90)
    t = tuple_direct(rho)
    marg = [total_coherence(partial_trace(rho, (q,))) for q in (1, 2, 3)]
    assert (t.c1, t.c2, t.c3) == pytest.approx(tuple(marg), abs=1e-9)
    for v in (t.c12, t.c13, t.c23, t.c123):
        assert v == pytest.approx(0.0, abs=1e-9)


def test_tuple_probe_recovers_product():
    rho = random_product_state(91)
    direct = tuple_direct(rho)
    probed = tuple_probe(rho)
    assert probed.residual < 1e-9
    for a, b in zip(direct.as_dict().values(), probed.as_dict().values()):
        assert a == pytest.approx(b, abs=1e-9)


def test_tuple_probe_bell_pair():
    amps = np.zeros(8, complex)
    amps[[1, 2]] = 1.0 / math.sqrt(2.0)  # |0> (x) (|01> + |10>)/sqrt(2)
    t = tuple_probe(density_of(PureState(3, amps)))
    assert t.c23 == pytest.approx(1.0, abs=1e-9)
    for v in (t.c1, t.c2, t.c3, t.c12, t.c13, t.c123):
        assert v == pytest.approx(0.0, abs=1e-9)
    assert t.residual < 1e-9


def test_tuple_probe_reports_residual_on_named_states():
    for name in ("W", "GHZ", "WWBAR"):
        t = tuple_probe(rho_of(name))
        assert math.isfinite(t.residual)
        direct = tuple_direct(rho_of(name))
        assert t.c123 == pytest.approx(direct.c123, abs=1e-9)


def test_tuple_requires_three_qubits():
    bell = np.zeros(4, complex)
    bell[[0, 3]] = 1.0 / math.sqrt(2.0)
    rho = DensityMatrix.from_array(np.outer(bell, bell.conj()))
    with pytest.raises(ValidationError):
        tuple_direct(rho)
    with pytest.raises(ValidationError):
        tuple_probe(rho)
