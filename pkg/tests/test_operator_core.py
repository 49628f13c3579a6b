import numpy as np
import pytest

from operator_core import (
    DensityOperator,
    DimensionMismatchError,
    InvalidDensityError,
    NotHermitianError,
    NotProjectorError,
    Operator,
    SerializationError,
    StateVector,
    Tolerance,
    ZeroNormError,
    binary_entropy,
    commutator,
    dispersive_event,
    distributive_deviation,
    distributivity_witness,
    eigh_ordered,
    entropy,
    expectation,
    modular_deviation,
    orthomodular_deviation,
    partial_trace_second,
    projector_complement,
    projector_join,
    projector_leq,
    projector_meet,
    tensor,
    trace_distance,
    truncated_oscillator,
    uncertainty,
)
from operator_core.lattice import random_commuting_triple, random_line, random_unitary
from operator_core.pauli import IDENTITY_2, SIGMA_X, SIGMA_Y, SIGMA_Z, basis_projector
from operator_core.serialization import dumps, from_payload, loads

TOL = 1e-12
PLUS = StateVector(np.array([1.0, 1.0]) / np.sqrt(2.0))


class TestOperatorModel:

    def test_rejects_non_square(self):
        with pytest.raises(DimensionMismatchError):
            Operator(np.zeros((2, 3)))

    def test_data_is_read_only(self):
        op = Operator(np.eye(2))
        with pytest.raises(ValueError):
            op.data[0, 0] = 5.0

    def test_arithmetic(self):
        total = SIGMA_X + SIGMA_Z * 2.0 - IDENTITY_2
        np.testing.assert_allclose(total.data, [[1, 1], [1, -3]])
        assert (0.5 * SIGMA_X).allclose(SIGMA_X * 0.5)

    def test_matmul_dimension_mismatch(self):
        with pytest.raises(DimensionMismatchError):
            SIGMA_X @ Operator.identity(3)

    def test_pauli_algebra(self):
        assert (SIGMA_X @ SIGMA_Y).allclose(SIGMA_Z * 1j)
        assert commutator(SIGMA_X, SIGMA_Y).allclose(SIGMA_Z * 2j)

    def test_projector_predicates(self):
        assert basis_projector(3, 1).is_projector()
        assert SIGMA_Z.is_hermitian()
        assert not SIGMA_Z.is_projector()


class TestStateVector:

    def test_normalized(self):
        psi = StateVector(np.array([3.0, 4.0])).normalized()
        assert psi.norm2 == pytest.approx(1.0, abs=TOL)

    def test_zero_vector_cannot_be_normalized(self):
        with pytest.raises(ZeroNormError):
            StateVector(np.zeros(2)).normalized()

    def test_tensor_order(self):
        joint = StateVector.basis(2, 1).tensor(StateVector.basis(2, 0))
        np.testing.assert_array_equal(joint.amplitudes, [0, 0, 1, 0])


class TestDensityOperator:

    def test_from_state(self):
        rho = DensityOperator.from_state(PLUS)
        assert rho.purity() == pytest.approx(1.0, abs=TOL)

    def test_rejects_bad_trace(self):
        with pytest.raises(InvalidDensityError):
            DensityOperator(Operator(np.eye(2)))

    def test_rejects_negative_eigenvalue(self):
        with pytest.raises(InvalidDensityError):
            DensityOperator(Operator(np.diag([1.5, -0.5])))

    def test_eigh_ordered_is_descending_with_real_pivots(self):
        values, vectors = eigh_ordered(Operator(np.diag([0.2, 0.8])))
        np.testing.assert_allclose(values, [0.8, 0.2])
        assert np.all(vectors[np.abs(vectors) > 0.5].imag == 0)


class TestAlgebra:

    def test_expectation_and_uncertainty(self):
        rho = DensityOperator.from_state(PLUS)
        assert expectation(SIGMA_X, rho) == pytest.approx(1.0)
        assert uncertainty(SIGMA_X, rho) == pytest.approx(0.0, abs=1e-7)
        assert uncertainty(SIGMA_Z, rho) == pytest.approx(1.0)

    def test_uncertainty_needs_hermitian(self):
        with pytest.raises(NotHermitianError):
            uncertainty(Operator(np.array([[0, 1], [0, 0]])), DensityOperator.maximally_mixed(2))

    def test_partial_trace_of_product(self):
        joint = DensityOperator(tensor(basis_projector(2, 0), basis_projector(2, 1)))
        reduced = partial_trace_second(joint, (2, 2))
        np.testing.assert_allclose(reduced.matrix, basis_projector(2, 0).data)

    def test_partial_trace_dimension_check(self):
        with pytest.raises(DimensionMismatchError):
            partial_trace_second(DensityOperator.maximally_mixed(4), (3, 2))

    def test_entropy_bits(self):
        assert entropy(DensityOperator.maximally_mixed(2)) == pytest.approx(1.0, abs=TOL)
        assert entropy(DensityOperator.from_state(PLUS)) == pytest.approx(0.0, abs=TOL)
        assert binary_entropy(0.5) == pytest.approx(1.0, abs=TOL)

    def test_trace_distance_of_orthogonal_states(self):
        rho = DensityOperator(basis_projector(2, 0))
        sigma = DensityOperator(basis_projector(2, 1))
        assert trace_distance(rho, sigma) == pytest.approx(1.0)

    def test_truncated_oscillator_commutator(self):
        Q, P = truncated_oscillator(6, hbar=2.0)
        block = commutator(Q, P).data[:5, :5]
        np.testing.assert_allclose(block, 2.0j * np.eye(5), atol=1e-12)


class TestLattice:

    def test_complement_and_order(self):
        E = basis_projector(3, 0)
        F = Operator(np.diag([1.0, 1.0, 0.0]))
        assert projector_leq(E, F)
        assert not projector_leq(F, E)
        assert projector_complement(E).allclose(Operator(np.diag([0.0, 1.0, 1.0])))

    def test_meet_and_join_of_lines(self):
        E, F = basis_projector(2, 0), DensityOperator.from_state(PLUS).op
        assert projector_meet(E, F).allclose(Operator.zeros(2))
        assert projector_join(E, F).allclose(Operator.identity(2))

    def test_lattice_needs_projectors(self):
        with pytest.raises(NotProjectorError):
            projector_meet(SIGMA_Z, basis_projector(2, 0))

    def test_commuting_triples_satisfy_all_laws(self):
        rng = np.random.default_rng(7)
        for _ in range(50):
            E, F, G = random_commuting_triple(rng, 4)
            assert orthomodular_deviation(E, G) <= 1e-8
            assert modular_deviation(E, F, G) <= 1e-8
            assert distributive_deviation(E, F, G) <= 1e-8

    def test_orthomodular_holds_for_rotated_comparable_pair(self):
        rng = np.random.default_rng(3)
        U = random_unitary(rng, 3)
        E = Operator(U @ np.diag([1.0, 0.0, 0.0]) @ U.conj().T)
        G = Operator(U @ np.diag([1.0, 1.0, 0.0]) @ U.conj().T)
        assert orthomodular_deviation(E, G) <= 1e-8

    def test_distributivity_fails_for_three_lines(self):
        witness = distributivity_witness(np.random.default_rng(11), trials=100)
        assert witness is not None
        assert distributive_deviation(*witness) > 1e-6

    def test_random_line_is_rank_one(self):
        line = random_line(np.random.default_rng(5))
        assert line.is_projector()
        assert line.trace().real == pytest.approx(1.0)

    @pytest.mark.parametrize("dim", [2, 3, 5])
    def test_every_density_has_a_dispersive_event(self, dim):
        rng = np.random.default_rng(dim)
        U = random_unitary(rng, dim)
        rho = DensityOperator(Operator(U @ np.diag(rng.dirichlet(np.ones(dim))) @ U.conj().T), Tolerance(abs_tol=1e-8))
        event, probability = dispersive_event(rho)
        assert event.is_projector(Tolerance(abs_tol=1e-8))
        assert probability == pytest.approx(1.0 / dim)

    def test_dispersive_event_needs_dimension_two(self):
        with pytest.raises(DimensionMismatchError):
            dispersive_event(DensityOperator(Operator(np.eye(1))))


class TestSerialization:

    def test_operator_text(self):
        restored = loads(dumps(SIGMA_Y))
        assert restored.allclose(SIGMA_Y)

    def test_state_payload(self):
        state = from_payload({"kind": "state", "dim": 2, "entries": [[0.6, 0.0], [0.0, 0.8]]})
        np.testing.assert_allclose(state.amplitudes, [0.6, 0.8j])

    def test_wrong_entry_count(self):
        with pytest.raises(SerializationError):
            loads('{"kind": "operator", "dim": 2, "entries": [[1, 0]]}')
