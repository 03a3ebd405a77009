import math

import numpy as np
import pytest

from mixdec.expsum import (CoefficientVector, default_grid, direct_sum, expsum_ratio,
                           growth_fit, make_coefficients, synthesize_expsum, torus_grid)


class TestCoefficients:
    def test_rules(self):
        assert make_coefficients(4, 1, "ones").l2 == 2.0
        assert make_coefficients(4, 2, "single").l2 == 1.0
        a = make_coefficients(5, 2, "random", seed=3)
        np.testing.assert_allclose(np.abs(a.a), 1.0)
        np.testing.assert_array_equal(a.a, make_coefficients(5, 2, "random", seed=3).a)
        assert not np.array_equal(a.a, make_coefficients(5, 2, "random", seed=4).a)

    def test_rejects(self):
        with pytest.raises(ValueError):
            make_coefficients(4, 1, "gaussian")
        with pytest.raises(ValueError):
            CoefficientVector(2, 1, np.zeros(2))
        with pytest.raises(ValueError):
            CoefficientVector(2, 1, np.ones(3))


class TestSynthesis:
    def test_single_mode_unimodular(self):
        f = synthesize_expsum(make_coefficients(1, 1, "ones"), torus_grid(4, 8))
        np.testing.assert_allclose(np.abs(f.samples), 1.0, rtol=1e-14)
        x, t = np.meshgrid(f.grid.x_nodes(), f.grid.t_nodes())
        np.testing.assert_allclose(f.samples, np.exp(2j * np.pi * (x + t)), atol=1e-14)

    def test_single_nonzero(self):
        c = np.zeros((3, 3), complex)
        c[1, 2] = 0.5 - 0.5j
        f = synthesize_expsum(CoefficientVector(3, 2, c), torus_grid(12, 144, 2))
        np.testing.assert_allclose(np.abs(f.samples), abs(c[1, 2]), rtol=1e-13)

    def test_origin_value(self):
        f = synthesize_expsum(make_coefficients(2, 1, "ones"), torus_grid(8, 32))
        assert direct_sum(make_coefficients(2, 1, "ones"), [0.0, 0.0]) == pytest.approx(2)
        # x-node 0 is exactly 0; first time node is h_t / 2
        t0 = f.grid.t_nodes()[0]
        assert f.samples[0, 0] == pytest.approx(np.exp(2j * np.pi * t0) + np.exp(8j * np.pi * t0))

    @pytest.mark.parametrize("N,d", [(1, 1), (5, 1), (8, 1), (3, 2), (8, 2)])
    def test_direct_agreement(self, N, d):
        c = make_coefficients(N, d, "random", seed=N)
        grid = default_grid(N, d)
        f = synthesize_expsum(c, grid)
        rng = np.random.default_rng(N * 10 + d)
        it = rng.integers(0, grid.n_t, 100)
        ix = [rng.integers(0, n, 100) for n in grid.n_x]
        pts = np.stack([grid.x_nodes(a)[i] for a, i in enumerate(ix)] + [grid.t_nodes()[it]], -1)
        ref = direct_sum(c, pts)
        got = f.samples[(it, *ix)]
        assert np.max(np.abs(got - ref)) <= 1e-10 * np.max(np.abs(ref))

    @pytest.mark.parametrize("X,T", [(31, 512), (32, 511)])
    def test_rejects_undersampled(self, X, T):
        with pytest.raises(ValueError, match="undersampled"):
            synthesize_expsum(make_coefficients(8, 1), torus_grid(X, T))

    def test_rejects_non_periodic(self):
        from mixdec.mixed_norm import GridSpec
        with pytest.raises(ValueError):
            synthesize_expsum(make_coefficients(2, 1), GridSpec((0.0,), (1.0,), 0, 1, 1 / 8, 1 / 32))


class TestRatios:
    @pytest.mark.parametrize("N", [1, 4, 16, 64])
    @pytest.mark.parametrize("q", [2, math.inf])
    def test_parseval(self, N, q):
        s = expsum_ratio(make_coefficients(N, 1, "random", seed=N), q, 2)
        assert abs(s.ratio - 1) <= 1e-9

    def test_parseval_two_dims(self):
        s = expsum_ratio(make_coefficients(6, 2, "random", seed=1), 2, 2)
        assert abs(s.ratio - 1) <= 1e-9

    @pytest.mark.parametrize("q,r", [(4, 4), (6, 6), (10, 10), (2, 10), (math.inf, 6)])
    def test_refinement(self, q, r):
        c = make_coefficients(8, 1, "ones")
        a = expsum_ratio(c, q, r, oversample=4).ratio
        b = expsum_ratio(c, q, r, oversample=8).ratio
        assert abs(a / b - 1) < 1e-3

    def test_sup_norm_ones(self):
        # |F(0, 0)| = N is attained at x = 0 only in the limit; the t-midpoints get close
        s = expsum_ratio(make_coefficients(8, 1, "ones"), math.inf, math.inf)
        assert 0.9 * math.sqrt(8) <= s.ratio <= math.sqrt(8) + 1e-12

    def test_dominates_two_two(self):
        c = make_coefficients(16, 1, "random", seed=2)
        assert expsum_ratio(c, 4, 6).ratio >= 1 - 1e-9


class TestGrowth:
    def test_parseval_slope(self):
        fit = growth_fit("random", [4, 8, 16], 2, 2, seed=5)
        assert abs(fit.slope) <= 1e-6

    def test_rejects_short_ladder(self):
        with pytest.raises(ValueError):
            growth_fit("ones", [4, 8, 8], 2, 2)

    @pytest.mark.slow
    def test_ten_ten_slope(self):
        fit = growth_fit("ones", [8, 16, 32, 64], 10, 10)
        assert 0.1 <= fit.slope <= 0.3

    @pytest.mark.slow
    def test_six_six_slope(self):
        fit = growth_fit("ones", [8, 16, 32, 64], 6, 6)
        assert fit.slope <= 0.15
