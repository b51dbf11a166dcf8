import cmath

import numpy as np
import pytest
from hypothesis import given, strategies as st

from levysheet import exponent as ex
from levysheet.verify import cf_match, empirical_cf


def one_atom_cpp():
    return ex.cpp_from_atoms([(1.0, 1.0)])


def symmetric_cpp():
    return ex.cpp_from_atoms([(1.0, 0.5), (-1.0, 0.5)])


class TestEvalPsi:
    def test_brownian(self):
        assert ex.eval_psi(ex.brownian(1), 1.0) == pytest.approx(-0.5 + 0j)

    def test_zero_is_exact(self):
        for triplet in (ex.brownian(3), one_atom_cpp(),
                        ex.cpp(2.0, ex.UniformJumps(0.7))):
            assert ex.eval_psi(triplet, np.zeros(triplet.dim)) == 0j

    def test_one_atom_at_pi(self):
        # drift zero, single unit jump: psi(z) = e^{iz} - 1
        assert ex.eval_psi(one_atom_cpp(), np.pi) == pytest.approx(-2.0 + 0j, abs=1e-14)

    def test_one_atom_against_poisson_mc(self):
        rng = np.random.default_rng(10)
        samples = rng.poisson(1.0, size=200_000).astype(float)
        emp = empirical_cf(samples, np.pi)
        target = cmath.exp(ex.eval_psi(one_atom_cpp(), np.pi))
        assert cf_match(emp, target).passed

    def test_discrete_matches_bruteforce_sum(self):
        rng = np.random.default_rng(11)
        atoms = [(rng.normal(size=2), float(rng.uniform(0.1, 2.0))) for _ in range(5)]
        triplet = ex.LevyTriplet(np.array([0.3, -0.2]), 0.1 * np.eye(2),
                                 ex.DiscreteJumps.from_atoms(atoms))
        for _ in range(20):
            z = rng.normal(size=2)
            brute = 1j * np.dot(triplet.gamma, z) - 0.5 * z @ triplet.gaussian @ z
            for point, mass in atoms:
                cut = 1.0 if np.linalg.norm(point) <= 1 else 0.0
                brute += mass * (cmath.exp(1j * np.dot(z, point)) - 1
                                 - 1j * np.dot(z, point) * cut)
            assert ex.eval_psi(triplet, z) == pytest.approx(brute, abs=1e-14)

    def test_scaled_uniform_and_gaussian(self):
        trip = ex.cpp(3.0, ex.UniformJumps(0.5))
        z = 1.3
        expected = 3.0 * (np.sin(0.5 * z) / (0.5 * z) - 1.0)
        assert ex.eval_psi(trip, z) == pytest.approx(expected, abs=1e-14)
        trip2 = ex.cpp(2.0, ex.GaussianJumps(0.8))
        expected2 = 2.0 * (np.exp(-0.5 * 0.64 * z * z) - 1.0)
        assert ex.eval_psi(trip2, z) == pytest.approx(expected2, abs=1e-14)

    def test_rejects_bad_z(self):
        with pytest.raises(ValueError):
            ex.eval_psi(ex.brownian(1), np.inf)
        with pytest.raises(ValueError):
            ex.eval_psi(ex.brownian(2), np.array([1.0]))

    @given(st.floats(-20.0, 20.0))
    def test_hermitian_symmetry(self, z):
        for triplet in (ex.brownian(1), one_atom_cpp(),
                        ex.cpp(1.5, ex.UniformJumps(1.2), drift=0.4)):
            left = ex.eval_psi(triplet, -z)
            right = ex.eval_psi(triplet, z).conjugate()
            assert left == pytest.approx(right, abs=1e-12)


class TestPredicates:
    def test_symmetry(self):
        assert ex.is_symmetric(ex.brownian(1))
        assert not ex.is_symmetric(one_atom_cpp())
        sym = symmetric_cpp()
        assert ex.is_symmetric(sym)
        rng = np.random.default_rng(12)
        for z in rng.normal(size=10):
            gap = abs(ex.eval_psi(sym, z) - ex.eval_psi(sym, -z))
            assert gap < 1e-12

    def test_symmetric_scaled_flag(self):
        assert ex.is_symmetric(ex.cpp(1.0, ex.TwoPoint(1.0)))
        assert not ex.is_symmetric(ex.cpp(1.0, ex.PointMass(1.0)))

    def test_deterministic(self):
        assert ex.is_deterministic(ex.pure_drift(3.0))
        assert not ex.is_deterministic(ex.brownian(1))
        cppt = one_atom_cpp()
        assert not ex.is_deterministic(cppt)
        # psi(z) + psi(-z) != 0 somewhere for a nondeterministic law
        zs = np.linspace(0.1, 5.0, 40)
        assert max(abs(ex.eval_psi(cppt, z) + ex.eval_psi(cppt, -z)) for z in zs) > 1e-3

    def test_deterministic_exponent_odd_imaginary(self):
        trip = ex.pure_drift(2.0)
        for z in (0.3, 1.7):
            val = ex.eval_psi(trip, z)
            assert val.real == 0.0
            assert val == -ex.eval_psi(trip, -z)


class TestSymmetrize:
    def test_single_atom_gains_mirror(self):
        sym = ex.symmetrize(one_atom_cpp())
        assert sorted(sym.jumps.points[:, 0].tolist()) == [-1.0, 1.0]
        assert np.allclose(sym.jumps.masses, [1.0, 1.0])

    def test_symmetric_input_doubles_masses(self):
        sym = ex.symmetrize(symmetric_cpp())
        assert np.allclose(sorted(sym.jumps.masses), [1.0, 1.0])
        assert ex.is_symmetric(sym)

    def test_scaled_point_mass_becomes_two_point(self):
        sym = ex.symmetrize(ex.cpp(1.5, ex.PointMass(0.7)))
        assert isinstance(sym.jumps.dist, ex.TwoPoint)
        assert sym.jumps.rate == pytest.approx(3.0)

    @given(st.floats(-8.0, 8.0))
    def test_exponent_identity(self, z):
        for triplet in (ex.brownian(1), one_atom_cpp(),
                        ex.cpp_from_atoms([(0.4, 1.0), (-1.3, 0.2)], drift=0.7),
                        ex.cpp(2.0, ex.PointMass(0.7), drift=-0.1)):
            lhs = ex.eval_psi(ex.symmetrize(triplet), z)
            rhs = ex.eval_psi(triplet, z) + ex.eval_psi(triplet, -z)
            assert lhs == pytest.approx(rhs, abs=1e-12)


class TestConstruction:
    def test_gaussian_must_be_psd(self):
        with pytest.raises(ValueError):
            ex.LevyTriplet(np.zeros(2), np.array([[1.0, 0.0], [0.0, -1.0]]))

    def test_gaussian_symmetrized_on_input(self):
        trip = ex.LevyTriplet(np.zeros(2), np.array([[1.0, 0.2], [0.2, 1.0]]))
        assert np.array_equal(trip.gaussian, trip.gaussian.T)

    def test_no_atom_at_zero(self):
        with pytest.raises(ValueError):
            ex.DiscreteJumps.from_atoms([(0.0, 1.0)])
        with pytest.raises(ValueError):
            ex.PointMass(0.0)

    def test_masses_positive(self):
        with pytest.raises(ValueError):
            ex.DiscreteJumps.from_atoms([(1.0, -0.5)])

    def test_scaled_needs_cf(self):
        class NoCF:
            has_finite_mean = True
            dim = 1

        with pytest.raises(TypeError):
            ex.ScaledJumps(1.0, NoCF())

    def test_scaled_needs_finite_mean_flag(self):
        class NoMean:
            dim = 1

            def cf(self, z):
                return 1.0

        with pytest.raises(ValueError):
            ex.ScaledJumps(1.0, NoMean())

    def test_drift_accessor(self):
        trip = one_atom_cpp()
        assert trip.drift[0] == pytest.approx(0.0)
        assert trip.gamma[0] == pytest.approx(1.0)  # truncated first moment of delta_1
        assert trip.mean11[0] == pytest.approx(1.0)

    def test_variance11(self):
        trip = ex.cpp_from_atoms([(2.0, 0.5)])
        assert trip.variance11 == pytest.approx(2.0)
        assert ex.brownian(1).variance11 == pytest.approx(1.0)


class TestSerialization:
    def test_round_trip_discrete(self):
        trip = ex.cpp_from_atoms([(1.0, 2.0), (-0.5, 0.7)], drift=0.3)
        spec = ex.triplet_to_dict(trip)
        back = ex.triplet_from_dict(spec)
        assert ex.triplet_to_dict(back) == spec

    def test_round_trip_scaled(self):
        for dist in (ex.PointMass([0.5, -0.5]), ex.TwoPoint(1.0),
                     ex.UniformJumps(0.9), ex.GaussianJumps(0.4, 2),
                     ex.Categorical([[1.0], [-2.0]], [0.25, 0.75])):
            trip = ex.cpp(1.5, dist)
            spec = ex.triplet_to_dict(trip)
            back = ex.triplet_from_dict(spec)
            assert ex.triplet_to_dict(back) == spec

    def test_missing_field_named(self):
        with pytest.raises(ValueError, match="gamma"):
            ex.triplet_from_dict({"gaussian": [[1.0]]})
        with pytest.raises(ValueError, match="name"):
            ex.dist_from_dict({"params": {}})

    def test_jump_samplers_match_declared_moments(self):
        rng = np.random.default_rng(13)
        for dist in (ex.TwoPoint(1.0), ex.UniformJumps(1.5), ex.GaussianJumps(0.7),
                     ex.Categorical([[1.0], [-2.0]], [0.5, 0.5])):
            draws = dist.sample(rng, 100_000)
            assert draws.shape == (100_000, 1)
            m2 = float(np.mean(np.sum(draws ** 2, axis=1)))
            assert m2 == pytest.approx(dist.abs_second_moment, rel=0.05)
