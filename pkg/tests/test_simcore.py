import logging

import numpy as np
import pytest
from scipy.stats import unitary_group

from simcore import (
    H,
    X,
    RegisterLayout,
    RngStream,
    StateVector,
    apply_gate,
    apply_hadamard_all,
    apply_qft,
    apply_qft_inverse,
    apply_register_gate,
    grid_label,
    grid_values,
    is_unitary,
    measure_all,
    measure_shots,
    named_gate,
    qft_matrix,
    streams,
)
from utils.errors import NormalizationError, RegisterError, UnitaryError
from utils.logger import sim_logger


def random_state(layout, seed=0):
    rng = np.random.default_rng(seed)
    dim = 2 ** layout.total_width
    amps = rng.normal(size=dim) + 1j * rng.normal(size=dim)
    return StateVector(amps / np.linalg.norm(amps), layout)


def test_grid_points():
    assert np.allclose(grid_values(1), [-0.25, 0.25])
    assert np.allclose(grid_values(2), [-0.375, -0.125, 0.125, 0.375])
    for n in (1, 3, 5):
        points = grid_values(n)
        assert np.isclose(points.sum(), 0.0)
        assert [grid_label(v, n) for v in points] == list(range(2 ** n))


def test_grid_label_out_of_range():
    with pytest.raises(RegisterError):
        grid_label(0.6, 2)


def test_layout_labels_low_register_first():
    layout = RegisterLayout.from_widths([("a", 2), ("b", 1)])
    assert layout.total_width == 3
    assert layout["b"].qubits == [2]
    assert layout.label_of(5, "a") == 1
    assert layout.label_of(5, "b") == 1
    state = StateVector.basis(layout, {"a": 2, "b": 1})
    assert state.amplitudes[6] == 1.0


def test_layout_rejects_duplicates_and_unknown_names():
    with pytest.raises(RegisterError):
        RegisterLayout.from_widths([("a", 1), ("a", 2)])
    layout = RegisterLayout.from_widths([("a", 1)])
    with pytest.raises(RegisterError):
        layout["missing"]


def test_tensor_places_first_register_on_low_bits():
    layout = RegisterLayout.from_widths([("a", 1), ("b", 1)])
    state = StateVector.tensor(layout, {"a": np.array([0, 1]), "b": np.array([1, 0])})
    assert np.isclose(abs(state.amplitudes[1]), 1.0)


def test_single_qubit_gate_and_cnot():
    layout = RegisterLayout.from_widths([("q", 2)])
    flipped = apply_gate(StateVector.zero(layout), X, [1])
    assert np.isclose(abs(flipped.amplitudes[2]), 1.0)

    state = StateVector.basis(layout, {"q": 1})
    out = apply_gate(state, X, targets=[1], controls=[0])
    assert np.isclose(abs(out.amplitudes[3]), 1.0)

    # control qubit 1 is 0, nothing happens
    state = StateVector.basis(layout, {"q": 1})
    out = apply_gate(state, X, targets=[0], controls=[1])
    assert np.isclose(abs(out.amplitudes[1]), 1.0)


def test_two_qubit_gate_first_target_is_low_bit():
    layout = RegisterLayout.from_widths([("q", 2)])
    out = apply_gate(StateVector.zero(layout), np.kron(X, np.eye(2)), [0, 1])
    assert np.isclose(abs(out.amplitudes[2]), 1.0)


def test_hadamard_all_matches_dense_gate():
    layout = RegisterLayout.from_widths([("a", 1), ("b", 2), ("c", 1)])
    state = random_state(layout)
    fast = apply_hadamard_all(state, "b")
    dense = apply_gate(state, np.kron(H, H), layout["b"].qubits)
    assert np.allclose(fast.amplitudes, dense.amplitudes)


def test_gate_errors():
    layout = RegisterLayout.from_widths([("q", 2)])
    state = StateVector.zero(layout)
    with pytest.raises(UnitaryError):
        apply_gate(state, np.array([[1, 1], [0, 1]]), [0])
    with pytest.raises(RegisterError):
        apply_gate(state, X, [0], controls=[0])
    with pytest.raises(RegisterError):
        apply_gate(state, X, [2])
    with pytest.raises(UnitaryError):
        named_gate("foo")


def test_norm_is_checked():
    layout = RegisterLayout.from_widths([("q", 1)])
    with pytest.raises(NormalizationError):
        StateVector(np.array([1.0, 1.0]), layout)
    loose = StateVector(np.array([1.0, 1.0]), layout, check=False)
    with pytest.raises(NormalizationError):
        measure_shots(loose, np.random.default_rng(0), 1)


def test_norm_failures_are_logged(caplog, monkeypatch):
    monkeypatch.setattr(sim_logger, "propagate", True)
    layout = RegisterLayout.from_widths([("q", 1)])
    with caplog.at_level(logging.ERROR, logger=sim_logger.name):
        with pytest.raises(NormalizationError):
            StateVector(np.array([1.0, 1.0]), layout)
        with pytest.raises(NormalizationError):
            measure_shots(StateVector(np.array([1.0, 1.0]), layout, check=False), np.random.default_rng(0), 1)
    messages = [r.getMessage() for r in caplog.records if r.name == sim_logger.name]
    assert any(m.startswith("Norm check failed on 1 qubits") for m in messages)
    assert any(m.startswith("Refusing to measure") for m in messages)


@pytest.mark.parametrize("n", [1, 2, 3, 4])
def test_qft_matrix_is_unitary_and_symmetric(n):
    matrix = qft_matrix(n)
    assert is_unitary(matrix)
    assert np.allclose(matrix, matrix.T)
    assert np.allclose(qft_matrix(n, inverse=True), matrix.conj().T)


@pytest.mark.parametrize("n", [2, 3])
def test_qft_matches_explicit_matrix(n):
    layout = RegisterLayout.from_widths([("low", 1), ("k", n), ("high", 1)])
    state = random_state(layout, seed=n)
    fast = apply_qft(state, "k")
    dense = apply_register_gate(state, qft_matrix(n), "k")
    assert np.allclose(fast.amplitudes, dense.amplitudes)
    back = apply_qft_inverse(fast, "k")
    assert np.allclose(back.amplitudes, state.amplitudes)


@pytest.mark.parametrize("n,label", [(2, 1), (3, 5), (4, 12)])
def test_inverse_qft_recovers_grid_phase(n, label):
    layout = RegisterLayout.from_widths([("k", n)])
    k0 = grid_values(n)[label]
    amps = np.exp(2j * np.pi * 2 ** n * grid_values(n) * k0) / np.sqrt(2 ** n)
    out = apply_qft_inverse(StateVector(amps, layout), "k")
    assert np.isclose(out.probabilities("k")[label], 1.0)


def test_measurement_is_deterministic_per_stream():
    layout = RegisterLayout.from_widths([("q", 1)])
    plus = apply_gate(StateVector.zero(layout), H, [0])
    first = measure_shots(plus, RngStream(7, 3), 2000)
    second = measure_shots(plus, RngStream(7, 3), 2000)
    other = measure_shots(plus, RngStream(7, 4), 2000)
    assert np.array_equal(first, second)
    assert not np.array_equal(first, other)
    assert abs(first.mean() - 0.5) < 0.05


def test_measure_all_decodes_grid_values():
    layout = RegisterLayout.from_widths([("x", 2), ("y", 1)])
    state = StateVector.basis(layout, {"x": 3, "y": 0})
    outcome = measure_all(state, np.random.default_rng(0))
    assert outcome["x"].label == 3
    assert np.isclose(outcome["x"].value, 0.375)
    assert np.isclose(outcome["y"].value, -0.25)


def test_streams_are_consecutive():
    ids = [s.stream_id for s in streams(5, 3, start=10)]
    assert ids == [10, 11, 12]
    a = RngStream(5, 0).generator().random(4)
    b = RngStream(5, 1).generator().random(4)
    assert not np.allclose(a, b)


def _random_circuit(num_qubits, depth, seed):
    rng = np.random.default_rng(seed)
    gates = []
    for _ in range(depth):
        width = int(rng.integers(1, 3))
        qubits = [int(q) for q in rng.permutation(num_qubits)]
        targets = qubits[:width]
        controls = qubits[width:width + int(rng.integers(0, num_qubits - width + 1))]
        gates.append((unitary_group.rvs(2 ** width, random_state=rng), targets, controls))
    return gates


def test_random_circuit_followed_by_adjoint_is_identity():
    layout = RegisterLayout.from_widths([("q", 3)])
    start = random_state(layout, seed=5)
    gates = _random_circuit(3, 12, seed=11)
    state = start
    for gate, targets, controls in gates:
        state = apply_gate(state, gate, targets, controls)
    assert not np.allclose(state.amplitudes, start.amplitudes)
    for gate, targets, controls in reversed(gates):
        state = apply_gate(state, gate.conj().T, targets, controls)
    assert np.allclose(state.amplitudes, start.amplitudes, atol=1e-12)


def test_controlled_gate_leaves_control_zero_amplitudes_bit_identical():
    layout = RegisterLayout.from_widths([("q", 4)])
    state = random_state(layout, seed=3)
    gate = unitary_group.rvs(4, random_state=7)
    out = apply_gate(state, gate, [0, 2], controls=[1, 3])
    index = np.arange(2 ** 4)
    untouched = ((index >> 1) & 1) & ((index >> 3) & 1) == 0
    assert np.array_equal(out.amplitudes[untouched], state.amplitudes[untouched])
    assert not np.allclose(out.amplitudes[~untouched], state.amplitudes[~untouched])
