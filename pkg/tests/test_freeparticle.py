import numpy as np
import pytest

from hftlab import (DomainError, FreeParticleConfig, delta_overlap,
                    free_particle_map, gauss_laguerre_grid, phase_slope,
                    schrodinger_residual, smeared_energy_eigenfunction,
                    time_eigenfunction, time_representation, uniform_grid)
from hftlab.freeparticle import time_eigen_residual

T_NODES = np.arange(-5.0, 5.0 + 1e-9, 0.005)


class TestTimeEigenfunction:
    def test_zero_time_is_constant(self):
        g = uniform_grid(100, 10.0)
        f = time_eigenfunction(0.0, g)
        assert np.allclose(f.values, 1.0)

    def test_direct_value(self):
        # t' = 1, E = pi -> e^{-i pi} = -1
        g = uniform_grid(1000, 10.0)
        f = time_eigenfunction(1.0, g)
        k = np.argmin(np.abs(g.nodes - np.pi))
        want = np.exp(-1j * g.nodes[k])
        assert f.values[k] == pytest.approx(want, rel=1e-12)

    @pytest.mark.parametrize("t_prime", [0.5, 1.0, 2.0])
    def test_eigen_residual(self, t_prime):
        g = uniform_grid(4000, 40.0)
        assert time_eigen_residual(t_prime, g) < 1e-6


class TestSmearedEigenfunction:
    def test_unit_norm(self):
        for sigma in (0.2, 0.1, 0.05):
            f = smeared_energy_eigenfunction(2.0, sigma)
            assert f.norm() == pytest.approx(1.0, abs=1e-10)

    def test_overlap_with_coordinate(self):
        # oracle: Gaussian moments, <delta_sigma|E> = E' exactly
        f = smeared_energy_eigenfunction(2.0, 0.05)
        got = delta_overlap(f, lambda e: e)
        assert got == pytest.approx(2.0, abs=1e-8)

    def test_second_moment_law(self):
        # oracle: <delta_sigma|E^2> = E'^2 + 2 sigma^2 -> error ~ sigma^2
        errs = []
        for sigma in (0.1, 0.05):
            f = smeared_energy_eigenfunction(2.0, sigma)
            errs.append(abs(delta_overlap(f, lambda e: e * e) - 4.0))
        assert errs[0] / errs[1] == pytest.approx(4.0, rel=0.05)

    def test_support_guard(self):
        with pytest.raises(DomainError):
            smeared_energy_eigenfunction(0.1, 0.05)

    def test_explicit_grid_leak_guard(self):
        g = uniform_grid(64, 2.2)
        with pytest.raises(DomainError, match="leak"):
            smeared_energy_eigenfunction(2.0, 0.3, g)


class TestTimeRepresentation:
    def test_phase_slope(self):
        sample = time_representation(1.0, 0.05, T_NODES)
        assert abs(phase_slope(sample) - 1.0) < 1e-2

    def test_slope_scales_with_energy(self):
        sample = time_representation(2.0, 0.05, T_NODES)
        assert abs(phase_slope(sample) - 2.0) < 1e-2

    def test_sigma_trend(self):
        errs = [abs(phase_slope(time_representation(1.0, s, T_NODES)) - 1.0)
                for s in (0.2, 0.1, 0.05)]
        assert errs[0] > errs[1] > errs[2]

    def test_small_energy_flat_phase(self):
        # E' -> 0 limit: sigma must stay under E'/4, phase slope ~ E'
        sample = time_representation(0.05, 0.01, T_NODES)
        assert abs(phase_slope(sample)) < 0.06


class TestEvolutionIdentity:
    def test_residual_small(self):
        assert schrodinger_residual(1.0, T_NODES) < 1e-8

    def test_zero_energy_exact(self):
        assert schrodinger_residual(0.0, T_NODES) == 0.0

    def test_sign_flip_leaves_order_one(self):
        # oracle: +i hbar d/dt - E' on e^{i E' t} leaves 2 E' phi
        resid = schrodinger_residual(1.0, T_NODES, sign=+1.0)
        assert resid == pytest.approx(2.0, rel=1e-2)


class TestFreeParticleMap:
    def test_energy(self):
        out = free_particle_map(FreeParticleConfig(mass=1.0, momentum=2.0))
        assert out["energy"] == 2.0

    def test_degeneracy_exact(self):
        for p in (0.5, 1.0, 3.7):
            ep = free_particle_map(
                FreeParticleConfig(mass=1.3, momentum=p))["energy"]
            em = free_particle_map(
                FreeParticleConfig(mass=1.3, momentum=-p))["energy"]
            assert ep == em
        assert free_particle_map(
            FreeParticleConfig(mass=1.3, momentum=1.0))["degeneracy"] == 2

    def test_zero_momentum_collapses(self):
        out = free_particle_map(FreeParticleConfig(mass=1.0, momentum=0.0))
        assert out["energy"] == 0.0
        assert out["degeneracy"] == 1

    def test_config_validation(self):
        with pytest.raises(DomainError):
            FreeParticleConfig(mass=-1.0)
