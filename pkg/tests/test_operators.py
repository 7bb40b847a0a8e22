import numpy as np
import pytest

from hftlab import (InputError, PreconditionError, Representation,
                    SampledHalfLineFunction, apply_S, apply_Z, boundary_value,
                    commutator_residual, domain_membership, forward_hft_line,
                    sample_profile, symmetry_defect, uniform_grid)
from hftlab.profiles import SUITE, get_profile

import oracles

PAIRS = [(a, b) for a in SUITE for b in SUITE]


class TestApplyS:
    def test_multiplication(self, suite_op, op_grid):
        got = apply_S(suite_op["exp"])
        idx = np.argmin(np.abs(op_grid.nodes - 2.0))
        s = op_grid.nodes[idx]
        assert got.values[idx] == pytest.approx(s * np.exp(-s), rel=1e-12)

    def test_zero(self, op_grid):
        f = SampledHalfLineFunction(op_grid, np.zeros(op_grid.size))
        assert np.all(apply_S(f).values == 0)

    def test_line_derivative_matches_next_profile(self, suite_gl):
        # -i hbar d/dz of the exp transform equals the sexp transform
        x = np.arange(-10.0, 10.0 + 1e-9, 0.0125)
        phi = forward_hft_line(suite_gl["exp"], x, 1.0)
        got = apply_S(phi, Representation.Z)
        want = oracles.phi_sexp(x + 1j)
        inner = slice(2, -2)
        assert np.abs(got.values[inner] - want[inner]).max() < 1e-8

    def test_rep_mismatch_rejected(self, suite_op, suite_gl):
        with pytest.raises(InputError):
            apply_S(suite_op["exp"], Representation.Z)
        x = np.arange(-5, 5.01, 0.1)
        phi = forward_hft_line(suite_gl["exp"], x, 1.0)
        with pytest.raises(InputError):
            apply_S(phi, Representation.S)

    def test_too_few_nodes_for_derivative(self, suite_gl):
        x = np.array([-0.2, -0.1, 0.0, 0.1])
        phi = forward_hft_line(suite_gl["exp"], x, 1.0)
        with pytest.raises(InputError):
            apply_S(phi, Representation.Z)


class TestApplyZ:
    def test_exp_eigenrelation(self, suite_op, op_grid):
        # i hbar d/ds e^{-s} = -i e^{-s}
        got = apply_Z(suite_op["exp"])
        inner = slice(2, -2)
        want = -1j * np.exp(-op_grid.nodes)
        assert np.abs(got.values[inner] - want[inner]).max() < 1e-8

    def test_gauss_derivative(self, suite_op, op_grid):
        # oracle: d/ds e^{-(s-3)^2} = -2 (s-3) e^{-(s-3)^2}
        got = apply_Z(suite_op["gauss"])
        s = op_grid.nodes
        want = 1j * (-2.0 * (s - 3.0)) * np.exp(-((s - 3.0) ** 2))
        inner = slice(2, -2)
        assert np.abs(got.values[inner] - want[inner]).max() < 1e-8

    def test_line_multiplication(self, suite_gl):
        x = np.arange(-5.0, 5.01, 0.1)
        phi = forward_hft_line(suite_gl["exp"], x, 1.0)
        ones = phi.with_values(np.ones_like(phi.values))
        got = apply_Z(ones, Representation.Z)
        k = np.argmin(np.abs(x - 1.0))
        assert got.values[k] == pytest.approx(1.0 + 1.0j, rel=1e-12)

    def test_nonuniform_grid_derivative(self, suite_gl, gl_grid):
        # Fornberg stencils on the Laguerre nodes, away from coarse far field
        got = apply_Z(suite_gl["gauss"])
        s = gl_grid.nodes
        want = 1j * (-2.0 * (s - 3.0)) * np.exp(-((s - 3.0) ** 2))
        sel = (s > 1.0) & (s < 6.0)
        assert np.abs(got.values[sel] - want[sel]).max() < 1e-5


class TestCommutator:
    @pytest.mark.parametrize("name", ["sexp", "gauss", "sqexp"])
    def test_s_representation(self, suite_op, name):
        assert commutator_residual(suite_op[name]) < 1e-8

    @pytest.mark.parametrize("name", ["sexp", "gauss", "sqexp"])
    def test_z_representation(self, suite_op, name):
        resid = commutator_residual(suite_op[name], Representation.Z)
        assert resid < 1e-6

    def test_zero_function_convention(self, op_grid):
        f = SampledHalfLineFunction(op_grid, np.zeros(op_grid.size))
        assert commutator_residual(f) == 0.0

    def test_out_of_domain_rejected(self, op_grid):
        f = sample_profile(get_profile("slow"), op_grid)
        with pytest.raises(PreconditionError) as exc:
            commutator_residual(f)
        assert exc.value.report is not None
        assert "D(S)" not in exc.value.report.member_of


class TestSymmetryDefect:
    @pytest.mark.parametrize("f,g", PAIRS)
    def test_S_defect_vanishes(self, suite_op, f, g):
        assert abs(symmetry_defect("S", suite_op[f], suite_op[g])) < 1e-8

    @pytest.mark.parametrize("f,g", PAIRS)
    def test_Z_defect_is_boundary_term(self, suite_op, f, g):
        got = symmetry_defect("Z", suite_op[f], suite_op[g])
        want = 1j * oracles.BOUNDARY_VALUES[f] * oracles.BOUNDARY_VALUES[g]
        assert abs(got - want) < 1e-6

    def test_exp_exp_is_i(self, suite_op):
        # boundary term i * 1 * 1
        got = symmetry_defect("Z", suite_op["exp"], suite_op["exp"])
        assert got == pytest.approx(1j, abs=1e-7)

    def test_sexp_defect_zero(self, suite_op):
        assert abs(symmetry_defect("Z", suite_op["sexp"], suite_op["sexp"])) < 1e-8

    def test_mismatched_grids_rejected(self, suite_op):
        other = uniform_grid(800, 20.0)
        g = sample_profile(get_profile("exp"), other)
        with pytest.raises(InputError):
            symmetry_defect("Z", suite_op["exp"], g)

    def test_unknown_operator(self, suite_op):
        with pytest.raises(InputError):
            symmetry_defect("X", suite_op["exp"], suite_op["exp"])


class TestDomains:
    def test_exp(self, suite_op):
        rep = domain_membership(suite_op["exp"])
        assert rep.member_of == {"D(S)", "D(Z+)"}
        assert rep.boundary_value_at_zero == pytest.approx(1.0, abs=1e-6)

    def test_sexp_in_all(self, suite_op):
        rep = domain_membership(suite_op["sexp"])
        assert rep.member_of == {"D(S)", "D(Z)", "D(Z+)"}
        assert abs(rep.boundary_value_at_zero) < 1e-6

    def test_slow_only_adjoint(self, op_grid):
        # oracle: int s^2/(1+s)^2 diverges linearly, int |f'|^2 converges
        f = sample_profile(get_profile("slow"), op_grid)
        rep = domain_membership(f)
        assert "D(S)" not in rep.member_of
        assert "D(Z)" not in rep.member_of
        assert "D(Z+)" in rep.member_of

    def test_dz_subset_dzplus(self, suite_op, op_grid):
        fns = list(suite_op.values()) + [
            sample_profile(get_profile("slow"), op_grid)]
        for f in fns:
            rep = domain_membership(f)
            assert ("D(Z)" not in rep.member_of) or ("D(Z+)" in rep.member_of)

    def test_json_keys(self, suite_op):
        d = domain_membership(suite_op["exp"]).to_dict()
        assert set(d) == {"in_L2", "abs_cont", "f0", "domains"}


class TestBoundaryValue:
    @pytest.mark.parametrize("name", SUITE)
    def test_extrapolation(self, suite_op, name):
        got = boundary_value(suite_op[name])
        assert got == pytest.approx(oracles.BOUNDARY_VALUES[name], abs=1e-7)

    def test_on_laguerre_nodes(self, suite_gl):
        got = boundary_value(suite_gl["exp"])
        assert got == pytest.approx(1.0, abs=1e-7)
