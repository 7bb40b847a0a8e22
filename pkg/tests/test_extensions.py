import numpy as np
import pytest
from scipy.linalg import eigh_tridiagonal

from hftlab import (InputError, PositivityError, build_friedrichs_zsq,
                    deficiency_indices, noncommutation_witness,
                    residual_membership_Z, spectrum_report, sqrt_friedrichs)
from hftlab.extensions import SpectralDecomposition, TridiagonalOperator


class TestDeficiency:
    def test_S_essentially_selfadjoint(self):
        rep = deficiency_indices("S")
        assert (rep.d_plus, rep.d_minus) == (0, 0)
        assert rep.kernel_candidates == ()

    def test_Z_indices(self):
        rep = deficiency_indices("Z")
        assert (rep.d_plus, rep.d_minus) == (0, 1)
        member = [c for c in rep.kernel_candidates if c.l2_member]
        assert len(member) == 1
        assert member[0].description == "exp(-s/hbar)"

    def test_Zsq_indices(self):
        rep = deficiency_indices("Z2")
        assert (rep.d_plus, rep.d_minus) == (1, 1)

    def test_member_trace_cauchy(self):
        rep = deficiency_indices("Z")
        member = next(c for c in rep.kernel_candidates if c.l2_member)
        tr = member.truncation_norm_trace
        # oracle: int_0^L e^{-2s} = (1 - e^{-2L})/2 -> 1/2
        assert tr[-1] == pytest.approx(0.5, rel=1e-12)
        incs = np.abs(np.diff(tr))
        assert all(b <= a / 10 for a, b in zip(incs, incs[1:]))

    def test_nonmember_trace_grows(self):
        rep = deficiency_indices("Z")
        grower = next(c for c in rep.kernel_candidates if not c.l2_member)
        tr = grower.truncation_norm_trace
        assert all(b >= 10 * a for a, b in zip(tr, tr[1:]))

    def test_hbar_scaling(self):
        rep = deficiency_indices("Z", hbar=0.5)
        member = next(c for c in rep.kernel_candidates if c.l2_member)
        # oracle: int_0^inf e^{-2s/hbar} = hbar/2
        assert member.truncation_norm_trace[-1] == pytest.approx(0.25, rel=1e-9)

    def test_window_validation(self):
        with pytest.raises(InputError):
            deficiency_indices("Z", windows=(5.0, 10.0))
        with pytest.raises(InputError):
            deficiency_indices("Q")


class TestResidualMembership:
    def test_upper_half_plane_member(self):
        member, trace, flag = residual_membership_Z(1j)
        assert member and flag == ""
        # oracle: |u| = e^{-s}, norm over (0, inf) = 1/2
        assert trace[-1] == pytest.approx(0.5, rel=1e-9)

    def test_lower_half_plane_not_member(self):
        member, trace, _ = residual_membership_Z(-1j)
        assert not member
        assert trace[-1] > trace[0] * 1e6

    def test_real_axis_flagged(self):
        member, trace, flag = residual_membership_Z(0.0)
        assert not member
        assert "boundary" in flag
        # |u| = 1: truncated norms equal the window lengths
        assert trace == pytest.approx((5.0, 10.0, 20.0, 40.0))

    def test_real_part_irrelevant(self):
        m1, t1, _ = residual_membership_Z(5.0 + 1j)
        m2, t2, _ = residual_membership_Z(-5.0 + 1j)
        assert m1 and m2
        assert t1 == pytest.approx(t2)


class TestFriedrichs:
    def test_analytic_eigenvalues_small(self):
        # oracle: tridiagonal (-1, 2, -1)/h^2 with Dirichlet ends has
        # eigenvalues (2/h^2)(1 - cos(k pi/(N+1)))
        op = build_friedrichs_zsq(np.pi, 3)
        lam = eigh_tridiagonal(op.diagonal, op.off_diagonal, eigvals_only=True)
        h = np.pi / 4
        want = (2.0 / h ** 2) * (1.0 - np.cos(np.arange(1, 4) * np.pi / 4))
        assert lam == pytest.approx(want, rel=1e-12)

    def test_continuum_convergence(self):
        # k-th eigenvalue -> (hbar k pi / L)^2 at O(h^2)
        L = 10.0
        errs = []
        for n in (100, 200, 400):
            op = build_friedrichs_zsq(L, n)
            lam = eigh_tridiagonal(op.diagonal, op.off_diagonal,
                                   eigvals_only=True)
            exact = (np.arange(1, 4) * np.pi / L) ** 2
            errs.append(np.abs(lam[:3] - exact))
        r1 = np.median(errs[0] / errs[1])
        r2 = np.median(errs[1] / errs[2])
        assert 3.0 < r1 < 5.2 and 3.0 < r2 < 5.2

    def test_rayleigh_nonnegative(self):
        op = build_friedrichs_zsq(10.0, 200)
        assert op.min_rayleigh(trials=1000, seed=0) >= -1e-12

    def test_mesh_and_metadata(self):
        op = build_friedrichs_zsq(10.0, 99)
        assert op.mesh == pytest.approx(0.1)
        assert op.boundary == "dirichlet"
        assert op.interior_nodes()[0] == pytest.approx(0.1)

    def test_parameter_validation(self):
        with pytest.raises(InputError):
            build_friedrichs_zsq(10.0, 2)
        with pytest.raises(InputError):
            build_friedrichs_zsq(-1.0, 10)


class TestSqrt:
    def test_diagonal_example(self):
        op = TridiagonalOperator(diagonal=np.array([0.0, 1.0, 4.0]),
                                 off_diagonal=np.zeros(2), mesh=1.0,
                                 length=4.0, hbar=1.0)
        root = sqrt_friedrichs(op)
        assert np.allclose(np.sort(root.eigenvalues), [0.0, 1.0, 2.0])
        assert np.allclose(root.as_matrix(), np.diag([0.0, 1.0, 2.0]),
                           atol=1e-12)

    def test_square_reproduces_operator(self):
        op = build_friedrichs_zsq(10.0, 300)
        root = sqrt_friedrichs(op)
        a = op.as_matrix()
        b = root.as_matrix()
        resid = np.linalg.norm(b @ b - a, 2) / np.linalg.norm(a, 2)
        assert resid < 1e-10

    def test_eigenvalues_match_continuum_root(self):
        L = 20.0
        op = build_friedrichs_zsq(L, 600)
        root = sqrt_friedrichs(op)
        want = np.arange(1, 6) * np.pi / L
        assert root.eigenvalues[:5] == pytest.approx(want, rel=1e-3)
        assert root.eigenvalues.min() >= 0.0

    def test_first_eigenvector_identity(self):
        op = build_friedrichs_zsq(10.0, 300)
        root = sqrt_friedrichs(op)
        v1 = root.decomposition.eigenvectors[:, 0]
        lam1 = root.eigenvalues[0]
        assert np.abs(root.apply(v1) - lam1 * v1).max() < 1e-12
        assert lam1 == pytest.approx(np.pi / 10.0, rel=1e-3)

    def test_positivity_guard(self):
        op = TridiagonalOperator(diagonal=np.array([1.0, -2.0, 1.0]),
                                 off_diagonal=np.zeros(2), mesh=1.0,
                                 length=4.0, hbar=1.0)
        with pytest.raises(PositivityError):
            sqrt_friedrichs(op)

    def test_decomposition_invariants(self):
        op = build_friedrichs_zsq(5.0, 100)
        dec = sqrt_friedrichs(op).decomposition
        assert dec.orthonormality_defect() < 1e-10
        assert dec.residual < 1e-10
        assert (np.diff(dec.eigenvalues) >= 0).all()
        with pytest.raises(ValueError):
            SpectralDecomposition(dec.eigenvalues[::-1].copy(),
                                  dec.eigenvectors, dec.residual)


class TestWitness:
    def test_positive_witness(self):
        assert noncommutation_witness(10.0, 300) > 0.1

    def test_eigenvector_distinguishes(self):
        # on the ground eigenvector the root acts by hbar pi / L while the
        # derivative operator produces something entirely different
        op = build_friedrichs_zsq(10.0, 300)
        root = sqrt_friedrichs(op)
        v1 = root.decomposition.eigenvectors[:, 0]
        from hftlab.operators import differentiate
        zv = 1j * differentiate(v1.astype(complex), op.interior_nodes())
        rv = root.apply(v1)
        assert np.linalg.norm(rv - zv) / np.linalg.norm(v1) > 0.1


class TestSpectrumReports:
    @pytest.mark.parametrize("op,continuous", [
        ("S", "[0, inf)"), ("Z2F", "[0, inf)"), ("Zsqrt", "[0, inf)")])
    def test_continuous_halfline(self, op, continuous):
        rep = spectrum_report(op)
        assert rep.continuous == continuous
        assert all(passed for _, _, passed in rep.numerical_evidence)

    def test_Z_residual_halfplane(self):
        rep = spectrum_report("Z")
        assert "half-plane" in rep.residual
        assert rep.point == "empty"
        assert all(passed for _, _, passed in rep.numerical_evidence)

    def test_every_claim_has_evidence(self):
        for op in ("S", "Z", "Z2F", "Zsqrt"):
            rep = spectrum_report(op)
            assert len(rep.numerical_evidence) >= 3
            d = rep.to_dict()
            assert {"operator", "point", "residual", "continuous",
                    "evidence"} <= set(d)

    def test_unknown_operator(self):
        with pytest.raises(InputError):
            spectrum_report("W")
