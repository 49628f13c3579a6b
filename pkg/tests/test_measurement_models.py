import numpy as np
import pytest

from measurement_models import (
    CatSystem,
    Instrument,
    InstrumentNotNormalizedError,
    LudersOutcome,
    MeasurementError,
    NotBlockSupportedError,
    UnnormalizedStateError,
    ZeroProbabilityError,
    bayes_condition,
    cat_conditional_family,
    cat_interact,
    commutes_on_state,
    computational_instrument,
    decohere,
    decohered_density,
    dumps_instrument,
    gaussian_pointer_instrument,
    identity_instrument,
    instrument_apply,
    loads_instrument,
    luders_update,
    nondemolition_check,
    outcome_distribution,
    outcome_weights,
    pointer_observable,
    project_postulate,
    projective_instrument,
    sample_outcomes,
    schmidt_weights,
    unsharp_sigma_x_instrument,
)
from operator_core import DensityOperator, NotProjectorError, Operator, StateVector, binary_entropy, entropy
from operator_core.pauli import SIGMA_X, SIGMA_Z, basis_projector

TOL = 1e-12
HALF = 1.0 / np.sqrt(2.0)
PLUS = StateVector(np.array([HALF, HALF]))
ZERO = StateVector.basis(2, 0)


def atom(a, b):
    return StateVector(np.array([a, b], dtype=complex))


class TestCat:

    def test_interaction_is_a_permutation(self):
        assert CatSystem(PLUS).is_unitary()

    def test_interaction_correlates_pointer(self):
        chi = cat_interact(PLUS)
        np.testing.assert_allclose(chi.amplitudes, [HALF, 0.0, 0.0, HALF], atol=TOL)

    def test_rejects_unnormalized_atom(self):
        with pytest.raises(UnnormalizedStateError):
            cat_interact(StateVector(np.array([1.0, 1.0])))

    def test_schmidt_weights_are_the_populations(self):
        chi = cat_interact(atom(np.sqrt(0.8), np.sqrt(0.2)))
        np.testing.assert_allclose(schmidt_weights(chi), [0.8, 0.2], atol=TOL)

    @pytest.mark.parametrize("p", [0.5, 0.8, 0.1])
    def test_reduced_entropy_is_binary_entropy(self, p):
        result = decohere(cat_interact(atom(np.sqrt(p), np.sqrt(1.0 - p))))
        np.testing.assert_allclose(result.probabilities, [p, 1.0 - p], atol=TOL)
        np.testing.assert_allclose(result.reduced.matrix, np.diag([p, 1.0 - p]), atol=TOL)
        assert entropy(result.reduced) == pytest.approx(binary_entropy(p), abs=TOL)

    def test_equal_superposition_gives_one_bit(self):
        result = decohere(cat_interact(PLUS))
        assert entropy(result.reduced) == pytest.approx(1.0, abs=TOL)

    def test_decohere_needs_block_support(self):
        with pytest.raises(NotBlockSupportedError):
            decohere(PLUS.tensor(ZERO))

    def test_decohere_needs_two_qubits(self):
        with pytest.raises(NotBlockSupportedError):
            decohere(PLUS)


class TestBayes:

    def test_posteriors_are_pointer_states(self):
        joint = decohere(cat_interact(atom(np.sqrt(0.3), np.sqrt(0.7)))).joint
        family = cat_conditional_family(joint)
        assert family[0].trace().real == pytest.approx(0.3, abs=TOL)
        assert family[1].trace().real == pytest.approx(0.7, abs=TOL)
        for tau in (0, 1):
            posterior = bayes_condition(family, tau)
            np.testing.assert_allclose(posterior.matrix, basis_projector(2, tau).data, atol=TOL)

    def test_zero_probability_outcome(self):
        family = cat_conditional_family(decohere(cat_interact(ZERO)).joint)
        with pytest.raises(ZeroProbabilityError):
            bayes_condition(family, 1)

    def test_unknown_outcome(self):
        family = cat_conditional_family(decohere(cat_interact(PLUS)).joint)
        with pytest.raises(ZeroProbabilityError):
            bayes_condition(family, "dead")


class TestProjection:

    def test_postulate_removes_coherences(self):
        rho = DensityOperator.from_state(PLUS)
        mixed = project_postulate(rho, basis_projector(2, 0))
        np.testing.assert_allclose(mixed.matrix, 0.5 * np.eye(2), atol=TOL)

    def test_postulate_needs_projector(self):
        with pytest.raises(NotProjectorError):
            project_postulate(DensityOperator.from_state(PLUS), SIGMA_Z)

    def test_luders_branches(self):
        F = basis_projector(2, 0)
        up = luders_update(PLUS, F, LudersOutcome.F_TRUE)
        down = luders_update(PLUS, F, LudersOutcome.E_FALSE)
        np.testing.assert_allclose(np.abs(up.amplitudes), [1.0, 0.0], atol=TOL)
        np.testing.assert_allclose(np.abs(down.amplitudes), [0.0, 1.0], atol=TOL)

    def test_luders_repeat_is_stable(self):
        F = basis_projector(2, 1)
        once = luders_update(PLUS, F, LudersOutcome.F_TRUE)
        twice = luders_update(once, F, LudersOutcome.F_TRUE)
        np.testing.assert_allclose(twice.amplitudes, once.amplitudes, atol=TOL)

    def test_luders_zero_branch(self):
        with pytest.raises(ZeroProbabilityError):
            luders_update(ZERO, basis_projector(2, 0), "E-false")


class TestInstruments:

    def test_unsharp_completeness_and_weights(self):
        inst = unsharp_sigma_x_instrument()
        assert inst.completeness_deviation() <= 1e-12
        distribution = outcome_distribution(inst, PLUS)
        assert distribution["+"] == pytest.approx(0.9, abs=TOL)
        assert distribution["-"] == pytest.approx(0.1, abs=TOL)

    def test_identity_instrument_keeps_the_state(self):
        outcome = instrument_apply(identity_instrument(2), PLUS, 0.5)
        assert outcome.label == "id"
        np.testing.assert_allclose(outcome.posterior.amplitudes, PLUS.amplitudes, atol=TOL)

    @pytest.mark.parametrize("draw, label", [(0.0, 0), (0.25, 0), (0.5, 1), (0.75, 1)])
    def test_apply_inverts_cumulative_weights(self, draw, label):
        outcome = instrument_apply(computational_instrument(2), PLUS, draw)
        assert outcome.label == label
        assert outcome.probability == pytest.approx(0.5, abs=TOL)
        np.testing.assert_allclose(np.abs(outcome.posterior.amplitudes), np.eye(2)[label], atol=TOL)

    def test_apply_skips_zero_weight_outcomes(self):
        outcome = instrument_apply(computational_instrument(2), ZERO, 0.999)
        assert outcome.label == 0

    def test_draw_outside_unit_interval(self):
        with pytest.raises(MeasurementError):
            instrument_apply(computational_instrument(2), PLUS, 1.0)

    def test_unnormalized_state(self):
        with pytest.raises(UnnormalizedStateError):
            outcome_weights(computational_instrument(2), StateVector(np.array([1.0, 1.0])))

    def test_dimension_mismatch(self):
        with pytest.raises(MeasurementError):
            outcome_weights(computational_instrument(3), PLUS)

    def test_sampled_frequencies(self):
        rng = np.random.default_rng(2024)
        indices = sample_outcomes(unsharp_sigma_x_instrument(), PLUS, rng, 20000)
        assert np.mean(indices == 0) == pytest.approx(0.9, abs=0.01)

    def test_decohered_density(self):
        rho = decohered_density(computational_instrument(2), PLUS)
        np.testing.assert_allclose(rho.matrix, 0.5 * np.eye(2), atol=TOL)

    def test_non_normalized_family_is_rejected(self):
        with pytest.raises(InstrumentNotNormalizedError):
            Instrument(("a",), (Operator(2.0 * np.eye(2)),), [1.0])

    def test_mismatched_lengths(self):
        with pytest.raises(MeasurementError):
            Instrument(("a", "b"), (Operator.identity(2),), [1.0])

    def test_projective_labels(self):
        inst = projective_instrument([basis_projector(2, 0), basis_projector(2, 1)], labels=["up", "down"])
        assert outcome_distribution(inst, ZERO) == {"up": 1.0, "down": 0.0}


class TestGaussianPointer:

    def test_readout_is_centred_on_eigenvalue(self):
        inst = gaussian_pointer_instrument(SIGMA_Z, 0.5)
        weights = outcome_weights(inst, ZERO)
        grid = np.array(inst.labels)
        assert weights.sum() == pytest.approx(1.0, abs=1e-8)
        assert float(grid @ weights) == pytest.approx(1.0, abs=1e-8)

    def test_posterior_leans_towards_readout(self):
        inst = gaussian_pointer_instrument(SIGMA_Z, 0.5)
        index = int(np.argmin(np.abs(np.array(inst.labels) - 1.0)))
        posterior = inst.kraus[index] @ PLUS
        probabilities = np.abs(posterior.normalized().amplitudes) ** 2
        assert probabilities[0] > 0.9

    def test_nonpositive_width(self):
        with pytest.raises(MeasurementError):
            gaussian_pointer_instrument(SIGMA_Z, 0.0)

    def test_bad_grid(self):
        with pytest.raises(MeasurementError):
            gaussian_pointer_instrument(SIGMA_Z, 0.5, grid=np.array([0.0, 0.0]))


class TestNondemolition:

    @staticmethod
    def g(k):
        return float(k)

    def test_sigma_z_commutes_with_pointer(self):
        report = nondemolition_check(SIGMA_Z, self.g)
        assert report.commutes_on_initial
        assert report.initial_defect <= TOL
        assert report.reduced_commute

    def test_sigma_x_is_disturbed(self):
        report = nondemolition_check(SIGMA_X, self.g)
        assert not report.commutes_on_initial
        assert report.initial_defect >= 0.5

    def test_reduced_pair(self):
        X0, Y0 = nondemolition_check(SIGMA_Z, self.g).reduced_pair
        assert X0.allclose(SIGMA_Z)
        assert Y0.allclose(basis_projector(2, 1))

    def test_single_state_commutation(self):
        G = pointer_observable(self.g)
        assert commutes_on_state(SIGMA_Z, G, PLUS)
        assert not commutes_on_state(SIGMA_X, G, ZERO)

    def test_atom_must_be_a_qubit(self):
        with pytest.raises(MeasurementError):
            nondemolition_check(Operator.identity(3), self.g)


class TestInstrumentSerialization:

    def test_text_form_restores_kraus_and_labels(self):
        inst = unsharp_sigma_x_instrument()
        restored = loads_instrument(dumps_instrument(inst))
        assert restored.labels == ("+", "-")
        assert restored.name == inst.name
        for original, copy in zip(inst.kraus, restored.kraus):
            assert copy.allclose(original)

    def test_empty_outcomes(self):
        with pytest.raises(MeasurementError):
            loads_instrument('{"name": "empty", "outcomes": []}')
