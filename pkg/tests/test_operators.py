import numpy as np
import pytest
from scipy.linalg import expm

from operators import (
    Hamiltonian,
    Observable,
    ObservableSet,
    format_pauli_sum,
    parse_pauli_sum,
    pauli_sum_matrix,
    time_evolution,
)
from simcore import I2, X, Y, Z
from utils.errors import BudgetError, ConfigError, PlanError, UnitaryError


def test_parse_pauli_sum_orders_qubits_low_first():
    terms = parse_pauli_sum("1.5*XZ + 0.5*IY")
    assert [t.string for t in terms] == ["XZ", "IY"]
    expected = 1.5 * np.kron(Z, X) + 0.5 * np.kron(Y, I2)
    assert np.allclose(pauli_sum_matrix(terms), expected)


def test_parse_signs_and_implicit_coefficients():
    terms = parse_pauli_sum("ZZ - 2e-1*XX + .5 YY")
    assert [t.coefficient for t in terms] == [1.0, -0.2, 0.5]


@pytest.mark.parametrize("text", ["", "1.5*XZ 0.5*IY", "XZ + Y", "2*AB"])
def test_parse_rejects_malformed_sums(text):
    with pytest.raises(UnitaryError):
        parse_pauli_sum(text)


def test_format_pauli_sum_round_trips_coefficients():
    terms = parse_pauli_sum("0.1234567891234*XZ - 3*IY")
    again = parse_pauli_sum(format_pauli_sum(terms))
    assert again == terms


def test_observable_evolve_matches_expm():
    obs = Observable("h", "0.7*XZ + 0.3*ZY", norm_bound=1.0)
    for x in (0.0, 0.4, -1.3):
        assert np.allclose(obs.evolve(x), expm(-1j * x * obs.matrix))

    dense = Observable("d", np.array([[0.2, 0.5 - 0.1j], [0.5 + 0.1j, -0.4]]), norm_bound=1.0)
    assert np.allclose(dense.evolve(0.9), expm(-0.9j * dense.matrix))


def test_observable_bound_is_enforced():
    with pytest.raises(PlanError):
        Observable("big", "2*Z", norm_bound=1.0)
    obs = Observable("big", "2*Z", norm_bound=2.0)
    assert np.isclose(obs.spectral_norm(), 2.0)
    with pytest.raises(PlanError):
        Observable("zero", "Z", norm_bound=0.0)


def test_non_hermitian_and_bad_shapes_rejected():
    with pytest.raises(UnitaryError):
        Observable("n", np.array([[0, 1], [0, 0]]))
    with pytest.raises(UnitaryError):
        Observable("n", np.eye(3))


def test_dense_cap():
    with pytest.raises(BudgetError):
        Observable("wide", "Z" * 11)


def test_expectation_on_plus_state():
    plus = np.array([1, 1]) / np.sqrt(2)
    assert np.isclose(Observable("x", "X").expectation(plus), 1.0)
    assert np.isclose(Observable("z", "Z").expectation(plus), 0.0)


def test_scaled_observable():
    obs = Observable("z", "Z").scaled(-3.0, "mz")
    assert obs.id == "mz"
    assert obs.norm_bound == 3.0
    assert np.allclose(obs.matrix, -3.0 * Z)


def test_observable_set_from_descriptions():
    obs_set = ObservableSet.from_descriptions([
        {"id": "a", "kind": "pauli", "data": "XI"},
        {"id": "b", "kind": "dense", "data": {"real": np.diag([1, -1, 1, -1]).tolist()}, "norm_bound": 2},
    ])
    assert obs_set.M == 2
    assert obs_set.num_qubits == 2
    assert obs_set.ids == ["a", "b"]
    assert np.allclose(obs_set.bounds, [1.0, 2.0])
    assert not obs_set.unit_bounds


def test_observable_set_errors_carry_field_paths():
    with pytest.raises(ConfigError, match=r"observables\[1\]"):
        ObservableSet.from_descriptions([
            {"id": "a", "kind": "pauli", "data": "X"},
            {"id": "b", "kind": "pauli", "data": "3*Z"},
        ])
    with pytest.raises(PlanError):
        ObservableSet([Observable("a", "X"), Observable("a", "Z")])
    with pytest.raises(PlanError):
        ObservableSet([Observable("a", "X"), Observable("b", "ZZ")])


def test_description_round_trip():
    obs = Observable("a", "0.5*XY - 0.25*ZZ", norm_bound=1.0)
    again = Observable.from_description(obs.to_description())
    assert np.allclose(again.matrix, obs.matrix)
    assert again.norm_bound == obs.norm_bound


def test_time_evolution_depends_on_difference():
    h = Hamiltonian("Z + 0.5*X")
    assert np.allclose(time_evolution(h, 0.2, 0.9), expm(-0.7j * h.matrix))
    assert np.allclose(time_evolution(h, 1.0, 1.0), np.eye(2))


@pytest.mark.parametrize("body", ["0.7*XZ + 0.3*ZY", "0.6*XI + 0.6*ZI", "0.5*ZZ - 0.5*IZ"])
def test_evolve_is_a_one_parameter_group(body):
    obs = Observable("g", body)
    for s, t in [(0.3, 0.9), (-1.1, 0.4), (2.5, -2.5)]:
        assert np.allclose(obs.evolve(s) @ obs.evolve(t), obs.evolve(s + t))
    assert np.allclose(obs.evolve(0.0), np.eye(obs.dimension))


@pytest.mark.parametrize("body", ["0.7*XZ + 0.3*ZY", "0.6*XI + 0.6*ZI", "0.5*ZZ - 0.5*IZ"])
def test_evolve_adjoint_reverses_time_and_commutes_with_operator(body):
    obs = Observable("g", body)
    for x in (0.2, -0.8, 1.7):
        u = obs.evolve(x)
        assert np.allclose(u.conj().T, obs.evolve(-x))
        assert np.allclose(u @ obs.matrix, obs.matrix @ u)
        # conjugation fixes O
        assert np.allclose(u @ obs.matrix @ u.conj().T, obs.matrix)
