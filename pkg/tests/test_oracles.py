import numpy as np
import pytest

from gradient import solve_plan_uniform
from operators import Observable, ObservableSet
from oracles import (
    HadamardVariant,
    OracleKind,
    OracleMode,
    ParameterizedUnitary,
    PhaseOracle,
    ProbabilityOracle,
    ResourceLedger,
    StatePrepOracle,
    apply_phase_oracle,
    build_F,
    build_probability_oracle,
    build_U_of_x,
    conversion_multiplier,
    f_analytic,
    f_batch,
    grid_points,
    shift_angles,
)
from simcore import RegisterLayout, StateVector
from utils.errors import BudgetError, ConfigError, NormalizationError, PlanError, RegisterError

PSI = np.array([0.8, 0.6])


@pytest.fixture
def xz_set():
    return ObservableSet([Observable("X", "X"), Observable("Z", "Z")])


@pytest.fixture
def psi_oracle():
    return StatePrepOracle.from_amplitudes(PSI)


def test_ledger_charges_and_merges():
    ledger = ResourceLedger()
    ledger.charge_probability_oracle({"X": 3}, {"X": 0.5}, times=2)
    assert ledger.u_psi_queries == 2
    assert ledger.probability_oracle_queries == 2
    assert ledger.controlled_evolution_count == {"X": 6}
    assert ledger.total_evolution_duration == {"X": 1.0}

    other = ResourceLedger(qubit_high_water=9)
    other.charge_phase_oracle(2, 3, {"X": 1, "Z": 1}, {"X": 0.1, "Z": 0.2})
    merged = ledger.merge(other)
    assert merged.phase_oracle_queries == 6
    assert merged.u_psi_queries == 8
    assert merged.controlled_evolution_count == {"X": 12, "Z": 6}
    assert merged.qubit_high_water == 9

    with pytest.raises(BudgetError):
        ledger.charge_u_psi(-1)


def test_conversion_multiplier():
    assert conversion_multiplier(100, 0.1) == 10
    assert conversion_multiplier(0.05, 0.1) == 1
    with pytest.raises(BudgetError):
        conversion_multiplier(0, 0.1)


def test_state_prep_constructors():
    assert np.allclose(StatePrepOracle.from_basis("01").psi, [0, 0, 1, 0])
    assert np.allclose(StatePrepOracle.from_amplitudes(PSI).psi, PSI)

    bell = StatePrepOracle.from_gates(2, [
        {"gate": "H", "targets": [0]},
        {"gate": "X", "targets": [1], "controls": [0]},
    ])
    assert np.allclose(bell.psi, np.array([1, 0, 0, 1]) / np.sqrt(2))

    with pytest.raises(NormalizationError):
        StatePrepOracle.from_amplitudes([1.0, 1.0])
    with pytest.raises(RegisterError):
        StatePrepOracle.from_basis("012")


def test_state_prep_from_description():
    oracle = StatePrepOracle.from_description({"kind": "amplitudes", "data": {"real": [0.6, 0.8]}})
    assert np.allclose(oracle.psi, [0.6, 0.8])
    oracle = StatePrepOracle.from_description({"kind": "unitary", "data": [[0, 1], [1, 0]]})
    assert np.allclose(oracle.psi, [0, 1])
    with pytest.raises(ConfigError, match="state"):
        StatePrepOracle.from_description({"kind": "basis"})
    with pytest.raises(ConfigError, match="unknown kind"):
        StatePrepOracle.from_description({"kind": "mystery"})
    with pytest.raises(ConfigError):
        StatePrepOracle.from_description({"kind": "unitary", "data": [[1, 1], [0, 1]]})


def test_f_at_origin(xz_set, psi_oracle):
    assert np.isclose(f_analytic(xz_set, psi_oracle, [0, 0]), 0.5)
    assert np.isclose(f_analytic(xz_set, psi_oracle, [0, 0], HadamardVariant.REAL), 0.0)
    ledger = ResourceLedger()
    f_analytic(xz_set, psi_oracle, [0.1, 0.2], ledger=ledger)
    assert ledger.u_psi_queries == 1


def test_gradient_of_f_is_expectation(xz_set, psi_oracle):
    h = 1e-5
    grad = []
    for j in range(2):
        step = np.zeros(2)
        step[j] = h
        grad.append((f_analytic(xz_set, psi_oracle, step) - f_analytic(xz_set, psi_oracle, -step)) / (2 * h))
    assert np.allclose(grad, [0.96, 0.28], atol=1e-6)


def test_u_of_x_ordering(xz_set):
    x = [0.3, -0.2]
    expected = xz_set[0].evolve(0.6) @ xz_set[1].evolve(-0.4)
    assert np.allclose(build_U_of_x(xz_set, x), expected)
    with pytest.raises(PlanError):
        build_U_of_x(xz_set, [0.1])


@pytest.mark.parametrize("variant", [HadamardVariant.IMAGINARY, HadamardVariant.REAL])
def test_hadamard_circuit_matches_analytic_f(xz_set, psi_oracle, variant):
    for x in ([0.0, 0.0], [0.4, -1.1], [2.0, 0.7]):
        circuit = build_F(xz_set, psi_oracle, x, variant).probability_one()
        assert np.isclose(circuit, f_analytic(xz_set, psi_oracle, x, variant), atol=1e-12)


def test_batched_overlaps_match_pointwise(xz_set, psi_oracle):
    unitary = ParameterizedUnitary.from_observables(xz_set)
    points = np.random.default_rng(3).uniform(-1, 1, size=(37, 2))
    batch = f_batch(unitary, PSI, points)
    single = [f_analytic(unitary, psi_oracle, p) for p in points]
    assert np.allclose(batch, single, atol=1e-12)
    chunked = unitary.overlaps(PSI, points, chunk_size=4)
    assert np.allclose(chunked, unitary.overlaps(PSI, points))


def test_shift_angles_sum_to_grid_value():
    n, scale = 4, 0.3
    angles = shift_angles(scale, n)
    for label in range(2 ** n):
        bits = [(label >> b) & 1 for b in range(n)]
        total = angles[-1] + sum(a for a, bit in zip(angles[:-1], bits) if bit)
        x = label / 2 ** n - 0.5 + 1 / 2 ** (n + 1)
        assert np.isclose(total, 2 * scale * x)


@pytest.fixture
def small_plan():
    return solve_plan_uniform(2, 0.5, 1 / 3, num_system_qubits=1)


@pytest.mark.parametrize("ell", [1, -2])
def test_probability_oracle_readout_matches_f(xz_set, psi_oracle, small_plan, ell):
    oracle = ProbabilityOracle(ParameterizedUnitary.from_observables(xz_set), psi_oracle, small_plan, ell)
    readout = oracle.readout()
    expected = f_batch(xz_set, PSI, ell * small_plan.r * grid_points(small_plan))
    assert np.allclose(readout, expected, atol=1e-10)


def test_probability_oracle_on_one_index_state(xz_set, psi_oracle, small_plan):
    oracle = ProbabilityOracle(ParameterizedUnitary.from_observables(xz_set), psi_oracle, small_plan, 1)
    labels = {"x1": 5, "x2": 40}
    ledger = ResourceLedger()
    state = oracle.run_on_index(labels, ledger)
    point = [5 / 2 ** small_plan.n[0] - 0.5 + 0.5 / 2 ** small_plan.n[0],
             40 / 2 ** small_plan.n[1] - 0.5 + 0.5 / 2 ** small_plan.n[1]]
    expected = f_analytic(xz_set, psi_oracle, small_plan.r * np.array(point))
    assert np.isclose(state.probabilities("ancilla")[1], expected, atol=1e-10)
    assert ledger.u_psi_queries == 1
    assert ledger.controlled_evolution_count == {"X": small_plan.n[0], "Z": small_plan.n[1]}
    assert ledger.qubit_high_water == small_plan.total_qubits


def test_probability_oracle_rejects_bad_scale(xz_set, psi_oracle, small_plan):
    with pytest.raises(PlanError):
        ProbabilityOracle(ParameterizedUnitary.from_observables(xz_set), psi_oracle, small_plan, small_plan.m + 1)


def test_phase_tables_agree_across_modes(xz_set, psi_oracle, small_plan):
    analytic = PhaseOracle.build(xz_set, psi_oracle, small_plan, OracleMode(OracleKind.ANALYTIC))
    ledger = ResourceLedger()
    circuit = PhaseOracle.build(xz_set, psi_oracle, small_plan, OracleMode(OracleKind.CIRCUIT), ledger=ledger)
    assert np.allclose(analytic.table, circuit.table, atol=1e-9)
    assert ledger.extraction.circuit_readouts == len(small_plan.nonzero_coefficients())
    assert ledger.u_psi_queries == 0


def test_phase_table_of_linear_function(small_plan):
    g = np.array([0.3, -0.7])
    oracle = PhaseOracle.from_function(small_plan, lambda points: points @ g)
    assert np.allclose(oracle.table, small_plan.r * grid_points(small_plan) @ g, atol=1e-12)


def test_phase_oracle_application_and_charge(small_plan):
    oracle = PhaseOracle.from_function(small_plan, lambda points: points.sum(axis=1))
    power = 2 * np.pi * small_plan.S
    units = oracle.unit_queries(power)
    assert units == int(np.ceil(small_plan.S * small_plan.coefficient_l1() - 1e-9))
    ledger = ResourceLedger()
    oracle.charge(power, ledger)
    assert ledger.phase_oracle_queries == units * oracle.multiplier(power)
    assert ledger.u_psi_queries == ledger.phase_oracle_queries


def test_phase_error_needs_a_stream(small_plan):
    with pytest.raises(PlanError):
        OracleMode(phase_error=0.5)
    oracle = PhaseOracle.from_function(
        small_plan, lambda points: points.sum(axis=1), OracleMode(phase_error=0.01)
    )
    with pytest.raises(PlanError):
        oracle.phases(1.0)
    noisy = oracle.phases(1.0, np.random.default_rng(0))
    assert np.max(np.abs(noisy - oracle.table)) <= 0.01


def test_build_probability_oracle_accepts_observable_sets(xz_set, psi_oracle, small_plan):
    built = build_probability_oracle(xz_set, psi_oracle, small_plan, -1, HadamardVariant.REAL)
    expected = f_batch(xz_set, PSI, -small_plan.r * grid_points(small_plan), HadamardVariant.REAL)
    assert np.allclose(built.readout(), expected, atol=1e-10)


def test_apply_phase_oracle_kicks_back_table(small_plan):
    oracle = PhaseOracle.from_function(small_plan, lambda points: points.sum(axis=1))
    labels = {"x1": 3, "x2": 17}
    state = StateVector.basis(oracle.layout, labels)
    index = 3 | (17 << small_plan.n[0])
    ledger = ResourceLedger()
    out = apply_phase_oracle(state, oracle, 0.7, ledger)
    assert np.isclose(out.amplitudes[index], np.exp(0.7j * oracle.table[index]))
    assert np.isclose(state.amplitudes[index], 1.0)
    assert ledger.phase_oracle_queries > 0

    other = StateVector.zero(RegisterLayout.from_widths([("x1", 1)]))
    with pytest.raises(RegisterError):
        apply_phase_oracle(other, oracle, 0.7)


def _random_observable_set(rng, M, N):
    observables = []
    for j in range(M):
        g = rng.normal(size=(2 ** N, 2 ** N)) + 1j * rng.normal(size=(2 ** N, 2 ** N))
        h = g + g.conj().T
        h *= rng.uniform(0.2, 0.99) / np.max(np.abs(np.linalg.eigvalsh(h)))
        observables.append(Observable(f"O{j}", h))
    return ObservableSet(observables)


def _random_psi(rng, N):
    psi = rng.normal(size=2 ** N) + 1j * rng.normal(size=2 ** N)
    return psi / np.linalg.norm(psi)


def test_hadamard_circuit_matches_analytic_f_on_random_instances():
    rng = np.random.default_rng(2022)
    for _ in range(50):
        N = int(rng.integers(1, 4))
        M = int(rng.integers(1, 4))
        obs_set = _random_observable_set(rng, M, N)
        psi_oracle = StatePrepOracle.from_amplitudes(_random_psi(rng, N))
        x = rng.uniform(-1.0, 1.0, size=M)
        for variant in HadamardVariant:
            circuit = build_F(obs_set, psi_oracle, x, variant).probability_one()
            assert abs(circuit - f_analytic(obs_set, psi_oracle, x, variant)) < 1e-10

        h = 1e-4
        expected = [obs.expectation(psi_oracle.psi) for obs in obs_set]
        for j in range(M):
            step = np.zeros(M)
            step[j] = h
            slope = (f_analytic(obs_set, psi_oracle, step) - f_analytic(obs_set, psi_oracle, -step)) / (2 * h)
            assert abs(slope - expected[j]) < 1e-6


# central differences for derivative orders 0-3: (offsets, weights) at unit step
_STENCILS = {
    0: ([0], [1.0]),
    1: ([-1, 1], [-0.5, 0.5]),
    2: ([-1, 0, 1], [1.0, -2.0, 1.0]),
    3: ([-2, -1, 1, 2], [-0.5, 1.0, -1.0, 0.5]),
}


def _mixed_derivative(obs_set, psi, alpha, steps):
    grids = [np.array(_STENCILS[a][0]) * h for a, h in zip(alpha, steps)]
    weights = [np.array(_STENCILS[a][1]) / h ** a for a, h in zip(alpha, steps)]
    points = np.array(np.meshgrid(*grids, indexing="ij")).reshape(len(alpha), -1).T
    w = weights[0]
    for extra in weights[1:]:
        w = np.multiply.outer(w, extra)
    return float(np.dot(w.reshape(-1), f_batch(obs_set, psi, points)))


def _exact_derivative(obs_set, psi, alpha):
    product = np.eye(len(psi), dtype=complex)
    for obs, a in zip(obs_set, alpha):
        product = product @ np.linalg.matrix_power(-2j * obs.matrix, a)
    return -0.5 * np.vdot(psi, product @ psi).imag


_MULTI_INDICES = [(1, 0), (0, 1), (2, 0), (1, 1), (0, 2), (3, 0), (2, 1), (1, 2), (0, 3)]


def test_derivatives_at_origin_obey_unit_norm_bound():
    rng = np.random.default_rng(7)
    for _ in range(5):
        obs_set = _random_observable_set(rng, 2, 2)
        psi = _random_psi(rng, 2)
        for alpha in _MULTI_INDICES:
            k = sum(alpha)
            exact = _exact_derivative(obs_set, psi, alpha)
            numeric = _mixed_derivative(obs_set, psi, alpha, [0.01, 0.01])
            assert abs(numeric - exact) < 1e-3 * 2 ** k
            assert abs(exact) <= 2 ** (k - 1) + 1e-12
            assert abs(numeric) <= 2 ** (k - 1) * (1 + 1e-3)


def test_derivatives_at_origin_obey_scaled_bounds():
    bounds = (1.0, 4.0)
    obs_set = ObservableSet([Observable("X", "X"), Observable("Z4", "4*Z", norm_bound=4.0)])
    for alpha in _MULTI_INDICES:
        limit = 0.5 * np.prod([(2 * b) ** a for b, a in zip(bounds, alpha)])
        exact = _exact_derivative(obs_set, PSI, alpha)
        numeric = _mixed_derivative(obs_set, PSI, alpha, [0.01 / b for b in bounds])
        assert abs(numeric - exact) < 1e-3 * limit
        assert abs(numeric) <= limit * (1 + 1e-3)
        assert abs(numeric) <= np.prod([(2 * b) ** a for b, a in zip(bounds, alpha)])


def test_state_prep_counters_follow_hadamard_runs(xz_set, psi_oracle):
    ledger = ResourceLedger()
    test = build_F(xz_set, psi_oracle, [0.1, -0.2])
    test.run(ledger)
    test.probability_one(ledger)
    assert psi_oracle.forward == 2
    assert psi_oracle.inverse == 0
    assert psi_oracle.queries == ledger.u_psi_queries == 2


def test_state_prep_counters_follow_probability_oracle(xz_set, psi_oracle, small_plan):
    oracle = ProbabilityOracle(ParameterizedUnitary.from_observables(xz_set), psi_oracle, small_plan, 1)
    ledger = ResourceLedger()
    oracle.run_on_index({"x1": 1, "x2": 2}, ledger)
    oracle.apply(StateVector.basis(oracle.layout, {"x1": 7, "x2": 0}), ledger)
    assert psi_oracle.queries == ledger.u_psi_queries == 2
    assert ledger.probability_oracle_queries == 2


def test_state_prep_counters_follow_circuit_readouts(xz_set, psi_oracle, small_plan):
    ledger = ResourceLedger()
    PhaseOracle.build(xz_set, psi_oracle, small_plan, OracleMode(OracleKind.CIRCUIT), ledger=ledger)
    assert psi_oracle.queries == ledger.extraction.circuit_readouts
    assert psi_oracle.queries == len(small_plan.nonzero_coefficients())


def test_state_prep_inverse_undoes_forward(psi_oracle):
    layout = RegisterLayout.from_widths([("system", 1), ("ancilla", 1)])
    start = StateVector.zero(layout)
    prepared = psi_oracle.apply(start, "system")
    assert np.allclose(prepared.amplitudes[:2], PSI)
    back = psi_oracle.apply(prepared, "system", inverse=True)
    assert np.allclose(back.amplitudes, start.amplitudes)
    assert (psi_oracle.forward, psi_oracle.inverse, psi_oracle.queries) == (1, 1, 2)
    psi_oracle.reset_counters()
    assert psi_oracle.queries == 0
    with pytest.raises(RegisterError):
        psi_oracle.apply(StateVector.zero(RegisterLayout.from_widths([("system", 2)])), inverse=True)
