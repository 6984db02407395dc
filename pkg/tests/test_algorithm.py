"""The one-query classifier: Fourier matrices, runs, phases, query counts."""

import json

import numpy as np
import pytest

from quditcycle.algorithm import (
    FourierKind,
    FourierVariant,
    NotCyclicError,
    initial_index,
    one_query_insufficient,
    phase_table,
    qft,
    run_classical,
    run_quantum,
    sample_measurement,
)
from quditcycle.linalg import basis_state, equal_up_to_global_phase
from quditcycle.permutations import (
    Chirality,
    Permutation,
    classify_cyclic,
    enumerate_cyclic,
    oracle_unitary,
    reflection,
    relabel,
    rotation,
)

W3 = np.exp(2j * np.pi / 3)

# Hand-frozen reference matrices.  The four-level Fourier transform:
QFT4 = 0.5 * np.array(
    [
        [1, 1, 1, 1],
        [1, 1j, -1, -1j],
        [1, -1, 1, -1],
        [1, -1j, -1, 1j],
    ]
)

# The three-level transform over spin labels m = +1, 0, -1:
QFT3_SPIN = np.array(
    [
        [W3, 1, W3.conjugate()],
        [1, 1, 1],
        [W3.conjugate(), 1, W3],
    ]
) / np.sqrt(3)

# Index form (m = +1,0,-1 mapped to labels 1,2,3) of the six three-element
# permutations, in their conventional even-then-odd order.
QUTRIT_FAMILY = [(1, 2, 3), (2, 3, 1), (3, 1, 2), (3, 2, 1), (2, 1, 3), (1, 3, 2)]

# The eight four-element cyclic permutations with the final-state phases the
# one-query circuit produces (positive rotations by 0..3, then the four
# reflections in decreasing-offset order).
D4_PHASES = [
    ((1, 2, 3, 4), 1),
    ((2, 3, 4, 1), -1j),
    ((3, 4, 1, 2), -1),
    ((4, 1, 2, 3), 1j),
    ((4, 3, 2, 1), -1j),
    ((3, 2, 1, 4), -1),
    ((2, 1, 4, 3), 1j),
    ((1, 4, 3, 2), 1),
]


def test_qft4_matches_frozen_matrix():
    assert np.max(np.abs(qft(4) - QFT4)) < 1e-12


def test_qft2_is_hadamard():
    h = np.array([[1, 1], [1, -1]]) / np.sqrt(2)
    assert np.max(np.abs(qft(2) - h)) < 1e-12


def test_qutrit_spin_matrix_frozen():
    f = qft(3, FourierKind.qutrit_spin())
    assert np.max(np.abs(f - QFT3_SPIN)) < 1e-12
    # middle level m = 0 row is uniform
    assert np.max(np.abs(f[1] - 1 / np.sqrt(3))) < 1e-12


def test_qft_unitarity():
    for d in range(2, 13):
        f = qft(d)
        assert np.max(np.abs(f @ f.conj().T - np.eye(d))) < 1e-10
    f = qft(3, FourierKind.qutrit_spin())
    assert np.max(np.abs(f @ f.conj().T - np.eye(3))) < 1e-12


def test_qft_validation():
    with pytest.raises(ValueError):
        qft(1)
    with pytest.raises(ValueError):
        qft(4, FourierKind.qutrit_spin())
    with pytest.raises(ValueError):
        qft(4, FourierKind.standard(Permutation((1, 3, 2))))


def test_spin_variant_columns_match_standard_up_to_phase():
    spin = qft(3, FourierKind.qutrit_spin())
    std = qft(3)
    matched = set()
    for k in range(3):
        hits = [
            j
            for j in range(3)
            if equal_up_to_global_phase(spin[:, k], std[:, j], 1e-10)
        ]
        assert len(hits) == 1
        matched.add(hits[0])
    assert matched == {0, 1, 2}  # a bijection, not three hits on one column


def test_run_quantum_d4_indices_and_phases():
    for img, want_phase in D4_PHASES:
        rep = run_quantum(Permutation(img))
        truth = classify_cyclic(Permutation(img))
        assert rep.classification is truth.chirality
        assert rep.measured_index == (2 if truth.chirality is Chirality.POSITIVE else 4)
        assert abs(rep.phase - want_phase) < 1e-10
        assert rep.oracle_queries == 1


def test_run_quantum_qutrit_variant_exhaustive():
    kind = FourierKind.qutrit_spin()
    for i, img in enumerate(QUTRIT_FAMILY):
        rep = run_quantum(Permutation(img), kind)
        assert rep.oracle_queries == 1
        if i < 3:  # even
            assert rep.measured_index == 1
            assert rep.classification is Chirality.POSITIVE
        else:  # odd
            assert rep.measured_index == 3
            assert rep.classification is Chirality.NEGATIVE
        # the middle level never fires
        assert abs(rep.final_state[1]) ** 2 <= 1e-9


def test_qutrit_phase_chain_relations():
    # After the oracle the three even (odd) cases give the same state up to
    # the cube roots of unity: psi_1 = e^{-i2pi/3} psi_2 = e^{+i2pi/3} psi_3,
    # and likewise for psi_4..psi_6; psi_4 is the third Fourier column exactly.
    f = qft(3, FourierKind.qutrit_spin())
    psi1 = f @ basis_state(3, 1)
    states = [oracle_unitary(Permutation(img)) @ psi1 for img in QUTRIT_FAMILY]
    assert np.max(np.abs(states[0] - np.exp(-2j * np.pi / 3) * states[1])) < 1e-12
    assert np.max(np.abs(states[0] - np.exp(+2j * np.pi / 3) * states[2])) < 1e-12
    assert np.max(np.abs(states[3] - np.exp(-2j * np.pi / 3) * states[4])) < 1e-12
    assert np.max(np.abs(states[3] - np.exp(+2j * np.pi / 3) * states[5])) < 1e-12
    assert np.max(np.abs(states[3] - f @ basis_state(3, 3))) < 1e-12


def test_run_quantum_rejects_non_cyclic():
    with pytest.raises(NotCyclicError):
        run_quantum(Permutation((1, 3, 2, 4)))
    with pytest.raises(NotCyclicError):
        run_quantum(Permutation((2, 1, 3, 4, 5)))


def test_run_quantum_deterministic_across_dims():
    for d in range(3, 13):
        table = phase_table(d)
        for p in enumerate_cyclic(d):
            truth = classify_cyclic(p)
            rep = run_quantum(p)
            assert rep.classification is truth.chirality
            want_idx = 2 if truth.chirality is Chirality.POSITIVE else d
            assert rep.measured_index == want_idx
            assert abs(rep.final_state[want_idx - 1]) ** 2 >= 1 - 1e-9
            assert equal_up_to_global_phase(rep.final_state, basis_state(d, want_idx), 1e-9)
            assert abs(rep.phase - table[(truth.chirality, truth.shift)]) < 1e-10


def test_run_quantum_d5_rotation_example():
    rep = run_quantum(rotation(5, 2))
    assert rep.measured_index == 2
    assert rep.classification is Chirality.POSITIVE


def test_phase_table_frozen_values():
    t4 = phase_table(4)
    assert abs(t4[(Chirality.POSITIVE, 0)] - 1) < 1e-12
    assert abs(t4[(Chirality.POSITIVE, 1)] - (-1j)) < 1e-12
    assert abs(t4[(Chirality.POSITIVE, 2)] - (-1)) < 1e-12
    assert abs(t4[(Chirality.POSITIVE, 3)] - 1j) < 1e-12
    # reflections, keyed by offset: the (4,3,2,1)-first tabulation order is
    # offsets (0, 3, 2, 1) with phases (-i, -1, i, 1)
    for img, want in D4_PHASES[4:]:
        r = classify_cyclic(Permutation(img)).shift
        assert abs(t4[(Chirality.NEGATIVE, r)] - want) < 1e-12
    t3 = phase_table(3)
    assert abs(t3[(Chirality.POSITIVE, 0)] - 1) < 1e-12
    assert abs(t3[(Chirality.POSITIVE, 1)] - np.exp(-2j * np.pi / 3)) < 1e-12
    assert abs(t3[(Chirality.POSITIVE, 2)] - np.exp(+2j * np.pi / 3)) < 1e-12
    with pytest.raises(ValueError):
        phase_table(2)


def test_run_classical_examples():
    rep = run_classical(Permutation((2, 3, 4, 1)))
    assert rep.classification is Chirality.POSITIVE
    assert rep.oracle_queries == 2
    assert rep.measured_index is None and rep.phase is None and rep.final_state is None

    rep = run_classical(Permutation.identity(5))
    assert rep.classification is Chirality.POSITIVE

    rep = run_classical(Permutation((3, 2, 1, 4)))
    assert rep.classification is Chirality.NEGATIVE

    # f(1) = 1, f(2) = 3 is consistent with no cyclic permutation
    rep = run_classical(Permutation((1, 3, 2, 4)))
    assert rep.classification is Chirality.NOT_CYCLIC

    with pytest.raises(ValueError):
        run_classical(Permutation((2, 1)))


def test_classical_matches_quantum_on_promise():
    for d in range(3, 9):
        for p in enumerate_cyclic(d):
            cl = run_classical(p)
            qu = run_quantum(p)
            assert cl.classification is qu.classification
            assert cl.oracle_queries == 2 and qu.oracle_queries == 1


def test_one_query_insufficient_range():
    for d in range(3, 9):
        assert one_query_insufficient(d) is True
    with pytest.raises(ValueError):
        one_query_insufficient(2)
    with pytest.raises(ValueError):
        one_query_insufficient(9)


def test_one_query_membership_detail():
    # spot-check the counting argument behind the sweep: each (x, y) pair is
    # consistent with exactly one rotation and one reflection
    for d in (3, 4, 5):
        fam = enumerate_cyclic(d)
        for x in range(1, d + 1):
            for y in range(1, d + 1):
                hits = [p for p in fam if p(x) == y]
                chis = {classify_cyclic(p).chirality for p in hits}
                assert len(hits) == 2
                assert chis == {Chirality.POSITIVE, Chirality.NEGATIVE}


def test_relabeled_run_and_initial_superposition():
    sigma = Permutation((1, 3, 2, 4))
    kind = FourierKind.standard(relabeling=sigma)
    init = qft(4, kind) @ basis_state(4, initial_index(kind))
    want = np.array([1, -1, 1j, -1j]) / 2
    assert equal_up_to_global_phase(init, want, 1e-12)

    for r in range(4):
        pos = relabel(rotation(4, r), sigma)
        rep = run_quantum(pos, kind)
        assert rep.classification is Chirality.POSITIVE and rep.measured_index == 2
        assert abs(rep.phase - phase_table(4)[(Chirality.POSITIVE, r)]) < 1e-10
        neg = relabel(reflection(4, r), sigma)
        rep = run_quantum(neg, kind)
        assert rep.classification is Chirality.NEGATIVE and rep.measured_index == 4
        assert abs(rep.phase - phase_table(4)[(Chirality.NEGATIVE, r)]) < 1e-10

    # plain rotations are generally not cyclic in the relabeled convention
    with pytest.raises(NotCyclicError):
        run_quantum(rotation(4, 1), kind)


def test_relabeled_family_tabulation_matches_convention():
    # the conjugated families, written over the base order (1,3,2,4), are the
    # rotations of that sequence and of its reversal
    sigma = Permutation((1, 3, 2, 4))
    pos_seqs = [tuple(relabel(rotation(4, r), sigma).compose(sigma).image) for r in range(4)]
    assert pos_seqs == [(1, 3, 2, 4), (3, 2, 4, 1), (2, 4, 1, 3), (4, 1, 3, 2)]
    neg_seqs = {tuple(relabel(reflection(4, r), sigma).compose(sigma).image) for r in range(4)}
    assert {(4, 2, 3, 1), (2, 3, 1, 4), (3, 1, 4, 2)} <= neg_seqs


def test_report_json_shape():
    rep = run_quantum(Permutation((2, 3, 4, 1)))
    blob = json.loads(json.dumps(rep.to_json()))
    assert blob["dim"] == 4
    assert blob["permutation"] == {"dim": 4, "image": [2, 3, 4, 1]}
    assert blob["oracle_queries"] == 1
    assert blob["classification"] == "positive-cyclic"
    assert blob["measured_index"] == 2
    assert abs(blob["phase"]["re"] - 0) < 1e-10 and abs(blob["phase"]["im"] + 1) < 1e-10
    assert blob["final_state"]["dim"] == 4

    cl = run_classical(Permutation((2, 3, 4, 1))).to_json()
    assert cl["measured_index"] is None and cl["phase"] is None and cl["final_state"] is None


def test_sample_measurement_is_seeded_and_consistent():
    psi = np.array([0, np.sqrt(0.25), 0, np.sqrt(0.75)])
    draws = {sample_measurement(psi, seed=s) for s in range(40)}
    assert draws <= {2, 4}
    assert sample_measurement(psi, seed=3) == sample_measurement(psi, seed=3)
    rep = run_quantum(Permutation((2, 3, 4, 1)))
    assert sample_measurement(rep.final_state, seed=0) == rep.measured_index
