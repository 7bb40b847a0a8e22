import numpy as np
import pytest

from hftlab import QuadratureGrid, gauss_laguerre_grid, uniform_grid


class TestGaussLaguerre:
    @pytest.mark.parametrize("n,scale", [(16, 1.0), (64, 1.0), (64, 4.0),
                                         (256, 1.0), (512, 10.0)])
    def test_exponential_moments(self, n, scale):
        g = gauss_laguerre_grid(n, scale)
        # int_0^inf e^{-2s} ds = 1/2, int s e^{-2s} = 1/4
        assert g.integrate(np.exp(-2 * g.nodes)) == pytest.approx(0.5, rel=1e-9)
        assert g.integrate(g.nodes * np.exp(-2 * g.nodes)) == pytest.approx(
            0.25, rel=1e-9)

    def test_gamma_integral(self):
        g = gauss_laguerre_grid(512, 10.0)
        # int s^4 e^{-s} ds = Gamma(5) = 24
        assert g.integrate(g.nodes ** 4 * np.exp(-g.nodes)) == pytest.approx(
            24.0, rel=1e-9)

    def test_weights_positive_at_large_n(self):
        # classical weights underflow past t ~ 700; total weights must not
        g = gauss_laguerre_grid(512, 1.0)
        assert g.nodes.max() > 1000
        assert (g.weights > 0).all()
        assert np.isfinite(g.weights).all()

    def test_matches_reference_weights_small_n(self):
        # against numpy's laggauss where no underflow occurs
        from numpy.polynomial.laguerre import laggauss
        t, w = laggauss(32)
        g = gauss_laguerre_grid(32, 1.0)
        assert np.allclose(g.nodes, t, rtol=1e-12)
        assert np.allclose(g.weights, w * np.exp(t), rtol=1e-10)

    def test_invariants(self):
        g = gauss_laguerre_grid(64, 2.0)
        assert (np.diff(g.nodes) > 0).all()
        assert (g.nodes > 0).all()
        assert g.scheme_tag == "gauss_laguerre"


class TestUniform:
    def test_fourth_order(self):
        # corrected midpoint: halving h shrinks the error ~16x
        errs = []
        for n in (200, 400):
            g = uniform_grid(n, 10.0)
            val = g.integrate(np.exp(-g.nodes))
            errs.append(abs(val - (1.0 - np.exp(-10.0))))
        assert errs[0] / errs[1] > 12.0

    def test_excludes_zero_keeps_positive_weights(self):
        g = uniform_grid(100, 5.0)
        assert g.nodes[0] == pytest.approx(0.025)
        assert (g.weights > 0).all()
        assert g.scheme_tag == "truncated_uniform"

    def test_polynomial_exactness(self):
        # the corrected rule integrates cubics exactly
        g = uniform_grid(64, 2.0)
        for k in range(4):
            want = 2.0 ** (k + 1) / (k + 1)
            assert g.integrate(g.nodes ** k) == pytest.approx(want, rel=1e-13)


class TestValidation:
    def test_rejects_unsorted_nodes(self):
        with pytest.raises(ValueError, match="increasing"):
            QuadratureGrid(np.array([2.0, 1.0, 3.0]), np.ones(3),
                           "truncated_uniform")

    def test_rejects_nonpositive_nodes(self):
        with pytest.raises(ValueError, match="positive"):
            QuadratureGrid(np.array([0.0, 1.0, 2.0]), np.ones(3),
                           "truncated_uniform")

    def test_rejects_negative_weights(self):
        with pytest.raises(ValueError, match="weights"):
            QuadratureGrid(np.array([1.0, 2.0]), np.array([1.0, -1.0]),
                           "truncated_uniform")

    def test_rejects_unknown_scheme(self):
        with pytest.raises(ValueError, match="scheme"):
            QuadratureGrid(np.array([1.0, 2.0]), np.ones(2), "chebyshev")

    def test_rejects_mismatched_lengths(self):
        with pytest.raises(ValueError):
            QuadratureGrid(np.array([1.0, 2.0, 3.0]), np.ones(2),
                           "truncated_uniform")

    def test_rejects_bad_build_parameters(self):
        with pytest.raises(ValueError):
            gauss_laguerre_grid(1)
        with pytest.raises(ValueError):
            gauss_laguerre_grid(16, -1.0)
        with pytest.raises(ValueError):
            uniform_grid(4, 1.0)
