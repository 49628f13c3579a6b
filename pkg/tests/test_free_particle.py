import numpy as np
import pytest

from free_particle import (
    AccuracyGuardError,
    ClosedFormUnavailableError,
    InvalidParticleError,
    NonUniformGridError,
    ObservedParticle,
    ObservedPath,
    SampledPathError,
    analytic_deviation,
    appendix_q,
    collapse_envelope,
    consistency_check,
    deviation_solve,
    dispersion_relaxation,
    free_drift,
    grid_tracking,
    relative_error,
    second_differences,
    zero_crossings,
)

U, Q, V0 = 0.5, 1.0, 5.5


@pytest.fixture
def particle():
    return ObservedParticle.with_kappa(1.0, v0=V0)


def plotted_curve(t):
    return np.exp(-t) * (np.cos(t) + 6.0 * np.sin(t)) + 0.5 * t - 1.0


class TestObservedParticle:

    def test_rates(self):
        particle = ObservedParticle(mass=1.0, lam=2.0)
        assert particle.kappa == pytest.approx(1.0)
        assert particle.dispersion_limit == pytest.approx(0.5)

    def test_with_kappa(self):
        particle = ObservedParticle.with_kappa(2.0, mass=0.5)
        assert particle.lam == pytest.approx(8.0)
        assert particle.kappa == pytest.approx(2.0)

    def test_unobserved_particle_never_settles(self):
        assert ObservedParticle(1.0, 0.0).dispersion_limit == float("inf")

    @pytest.mark.parametrize("mass, lam", [(0.0, 1.0), (1.0, -1.0)])
    def test_invalid_parameters(self, mass, lam):
        with pytest.raises(InvalidParticleError):
            ObservedParticle(mass, lam)


class TestObservedPath:

    def test_linear_path_has_no_gravitation(self):
        path = ObservedPath.linear(U, Q)
        np.testing.assert_allclose(path.y([0.0, 2.0]), [-1.0, 0.0])
        np.testing.assert_array_equal(path.g([0.0, 2.0]), [0.0, 0.0])

    def test_second_differences_are_exact_for_quadratics(self):
        t = 0.1 * np.arange(10)
        np.testing.assert_allclose(second_differences(t ** 2, 0.1), 2.0, atol=1e-9)

    def test_sampled_path(self):
        t = np.linspace(0.0, 1.0, 101)
        path = ObservedPath.sampled(t, 3.0 * t ** 2)
        assert path.y(0.505) == pytest.approx(3.0 * 0.505 ** 2, abs=1e-4)
        np.testing.assert_allclose(path.g(t), 6.0, atol=1e-6)

    def test_finite_difference_gravitation(self):
        path = ObservedPath(trajectory=np.sin)
        t = np.linspace(0.0, 3.0, 7)
        np.testing.assert_allclose(path.g(t), -np.sin(t), atol=1e-5)

    def test_non_uniform_samples(self):
        with pytest.raises(NonUniformGridError):
            ObservedPath.sampled([0.0, 0.1, 0.3, 0.4], [0.0, 1.0, 2.0, 3.0])

    def test_values_must_match_times(self):
        with pytest.raises(SampledPathError):
            ObservedPath.sampled([0.0, 0.1, 0.2, 0.3], [0.0, 1.0, 2.0])

    def test_missing_samples(self):
        with pytest.raises(NonUniformGridError):
            ObservedPath()


class TestDeviation:

    def test_free_deviation_matches_closed_form(self, particle):
        solution = deviation_solve(particle, ObservedPath.linear(U, Q), z0=Q, dz0=V0 - U, t_end=6.0, dt=1e-3)
        expected = analytic_deviation(particle, Q, V0 - U, solution.times)
        np.testing.assert_allclose(solution.z, expected, atol=1e-9)

    def test_constant_gravitation_shifts_the_rest_point(self, particle):
        path = ObservedPath(trajectory=lambda t: t ** 2, gravitation=lambda t: np.full_like(t, 2.0))
        solution = deviation_solve(particle, path, z0=0.0, dz0=0.0, t_end=20.0, dt=1e-2)
        assert solution.z[-1] == pytest.approx(-1.0, abs=1e-6)

    def test_accuracy_guard(self, particle):
        with pytest.raises(AccuracyGuardError):
            deviation_solve(particle, ObservedPath.linear(U, Q), 0.0, 0.0, t_end=1.0, dt=0.5)

    def test_ballistic_without_observation(self):
        particle = ObservedParticle(1.0, 0.0)
        np.testing.assert_allclose(analytic_deviation(particle, 1.0, 2.0, [0.0, 1.5]), [1.0, 4.0])

    def test_zero_crossings(self):
        t = np.linspace(0.0, 7.0, 7001)
        np.testing.assert_allclose(zero_crossings(t, np.sin(t)), [np.pi, 2.0 * np.pi], atol=1e-6)


class TestClosedForm:

    def test_plotted_curve(self, particle):
        t = np.linspace(0.0, 6.0, 61)
        np.testing.assert_allclose(appendix_q(particle, U, Q, t), plotted_curve(t), atol=1e-12)

    def test_initial_conditions(self, particle):
        assert appendix_q(particle, U, Q, 0.0) == pytest.approx(0.0, abs=1e-15)
        h = 1e-6
        slope = (appendix_q(particle, U, Q, h) - appendix_q(particle, U, Q, -h)) / (2.0 * h)
        assert slope == pytest.approx(V0, abs=1e-6)

    def test_envelope_bounds_the_deviation(self, particle):
        t = np.linspace(0.0, 6.0, 601)
        deviation = np.abs(appendix_q(particle, U, Q, t) - (U * t - Q))
        assert np.all(deviation <= collapse_envelope(particle, U, Q, t) + 1e-12)

    def test_unobserved_particle_drifts(self):
        particle = ObservedParticle(1.0, 0.0, q0=1.0, v0=2.0)
        np.testing.assert_allclose(free_drift(particle, [0.0, 3.0]), [1.0, 7.0])
        with pytest.raises(ClosedFormUnavailableError):
            appendix_q(particle, U, Q, 1.0)
        with pytest.raises(ClosedFormUnavailableError):
            collapse_envelope(particle, U, Q, 1.0)

    def test_ode_reconstruction(self, particle):
        report = consistency_check(particle, U, Q, t_end=6.0, dt=1e-3)
        assert report.max_relative_error <= 1e-6
        np.testing.assert_allclose(report.q_numeric, report.z + report.y)

    def test_relative_error_against_zero_reference(self):
        assert relative_error(np.array([0.5, -0.25]), np.zeros(2)) == pytest.approx(0.5)


class TestGridFilter:

    def test_antithetic_tracking(self, particle):
        report = grid_tracking(particle, U, Q, pairs=2, t_end=3.0)
        assert report.pairs == 2
        assert report.max_relative_error <= 1e-2
        np.testing.assert_allclose(report.dispersion, particle.dispersion_limit, rtol=0.05)

    @pytest.mark.slow
    def test_tracking_over_the_collapse_window(self, particle):
        report = grid_tracking(particle, U, Q)
        assert 2 * report.pairs >= 100
        assert report.times[-1] == pytest.approx(5.0 / particle.kappa)
        assert report.max_relative_error <= 1e-2

    def test_dispersion_settles(self, particle):
        report = dispersion_relaxation(particle)
        assert report.dispersion[0] == pytest.approx(1.0, rel=1e-6)
        assert report.settle_time == pytest.approx(5.0)
        assert report.max_relative_deviation() <= 0.05

    def test_tracking_needs_observation(self):
        with pytest.raises(InvalidParticleError):
            grid_tracking(ObservedParticle(1.0, 0.0), U, Q)

    def test_tracking_needs_a_pair(self, particle):
        with pytest.raises(InvalidParticleError):
            grid_tracking(particle, U, Q, pairs=0)
