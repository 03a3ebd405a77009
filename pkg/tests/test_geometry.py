import itertools

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from mixdec.geometry import (Cap, ShearMap, Tube, TunedLattice, ball_in_tube, build_net,
                             cap_contains, min_separation, shear_apply, tube_contains,
                             tubes_disjoint, tuned_ball_membership,
                             tuned_tubes_pairwise_disjoint)


class TestNet:
    def test_unit_delta(self):
        net = build_net(1.0, 1)
        assert sorted(net.points[:, 0]) == [-1.0, 0.0, 1.0]

    @pytest.mark.parametrize("delta,dim,count", [(0.5, 1, 5), (0.5, 2, 25), (0.25, 1, 9),
                                                 (0.3, 1, 7), (0.4, 1, 6)])
    def test_cardinality(self, delta, dim, count):
        assert len(build_net(delta, dim)) == count == (int(2 / delta + 1e-9) + 1) ** dim

    @pytest.mark.parametrize("delta", [0.0, -0.1, 1.5])
    def test_rejects_bad_delta(self, delta):
        with pytest.raises(ValueError):
            build_net(delta, 1)

    @pytest.mark.parametrize("delta", [1 / 2, 1 / 4, 1 / 8, 1 / 16])
    @pytest.mark.parametrize("dim", [1, 2])
    def test_separation_and_counting(self, delta, dim):
        net = build_net(delta, dim)
        assert min_separation(net.points) >= delta - 1e-12
        assert np.all(np.abs(net.points) <= 1)
        assert delta**-dim <= len(net) <= 3**dim * delta**-dim


class TestCap:
    def test_center(self):
        assert cap_contains(Cap([0.0], 0.1), [0.0], 0.0)

    def test_vertical_boundary(self):
        # |eta| = 2 d delta^2 exactly, d = 1
        assert cap_contains(Cap([0.0], 0.1), [0.1], 2 * 0.1**2)

    def test_outside(self):
        assert not cap_contains(Cap([0.0], 0.1), [0.2], 0.0)

    def test_contains_paraboloid_piece(self):
        rng = np.random.default_rng(1)
        delta = 0.05
        for _ in range(1000):
            d = int(rng.integers(1, 4))
            w = rng.uniform(-1, 1 - delta, d)
            xi = w + rng.uniform(0, delta, d)
            eta = xi @ xi + rng.uniform(-delta**2, delta**2)
            assert cap_contains(Cap(w, delta), xi, eta)


class TestShear:
    def test_identity_at_zero(self):
        p = np.array([0.3, -2.0, 5.0])
        for mode in ("forward", "inverse", "transpose", "inverse_transpose"):
            np.testing.assert_array_equal(shear_apply(ShearMap([0.0, 0.0]), p, mode), p)

    def test_forward_bottom_row(self):
        np.testing.assert_array_equal(shear_apply(ShearMap([1.0]), [1.0, 0.0]), [1.0, 2.0])

    def test_matches_matrix(self):
        rng = np.random.default_rng(2)
        sm = ShearMap(rng.uniform(-1, 1, 3))
        m = sm.matrix
        p = rng.normal(size=4)
        np.testing.assert_allclose(sm.apply(p, "forward"), m @ p, atol=1e-14)
        np.testing.assert_allclose(sm.apply(p, "inverse"), np.linalg.solve(m, p), atol=1e-14)
        np.testing.assert_allclose(sm.apply(p, "transpose"), m.T @ p, atol=1e-14)
        np.testing.assert_allclose(sm.apply(p, "inverse_transpose"), np.linalg.solve(m.T, p),
                                   atol=1e-14)
        assert np.linalg.det(m) == pytest.approx(1.0)

    def test_group_law(self):
        rng = np.random.default_rng(3)
        for _ in range(1000):
            d = int(rng.integers(1, 4))
            sm = ShearMap(rng.uniform(-1, 1, d))
            p = rng.normal(size=d + 1) * 10
            for a, b in (("forward", "inverse"), ("inverse", "forward"),
                         ("transpose", "inverse_transpose")):
                assert np.max(np.abs(sm.apply(sm.apply(p, a), b) - p)) <= 1e-12

    def test_rejects_unknown_mode(self):
        with pytest.raises(ValueError):
            shear_apply(ShearMap([0.0]), [0.0, 0.0], "sideways")


class TestTube:
    def test_boundary_of_axis_tube(self):
        assert tube_contains(Tube([0.0], 0.1), [10.0, 0.0])

    def test_tilt(self):
        # |0 + 2 * 50| > 10
        assert not tube_contains(Tube([1.0], 0.1), [0.0, 50.0])

    @given(st.floats(-1, 1), st.floats(0.01, 0.99), st.floats(1, 10),
           st.lists(st.floats(-1e4, 1e4), min_size=2, max_size=2))
    def test_own_shift_inside(self, w, delta, dil, shift):
        assert tube_contains(Tube([w], delta, dil, shift), shift)

    def test_disjoint_identical(self):
        assert not tubes_disjoint([0.3], 0.25, 1.0, [1.0, 2.0], [1.0, 2.0])

    def test_disjoint_interval(self):
        assert tubes_disjoint([0.0], 0.25, 1.0, [0.0, 0.0], [100.0, 0.0])

    @settings(max_examples=200, deadline=None)
    @given(st.floats(-1, 1), st.sampled_from([1 / 4, 1 / 8]), st.floats(1, 3),
           st.lists(st.floats(-100, 100), min_size=2, max_size=2))
    def test_disjoint_matches_sampling(self, w, delta, dil, shift):
        """If a sampled point lies in both tubes, the exact predicate must say they meet."""
        a = np.zeros(2)
        b = np.asarray(shift)
        ta, tb = Tube([w], delta, dil, a), Tube([w], delta, dil, b)
        # the midpoint of the shifts is in both tubes iff the difference lies in the difference body
        mid = 0.5 * (a + b)
        both = tube_contains(ta, mid) and tube_contains(tb, mid)
        assert both == (not tubes_disjoint([w], delta, dil, a, b))


class TestBallInTube:
    def test_tiny_ball_at_center(self):
        for w in build_net(1 / 8, 2).points:
            assert ball_in_tube(w, 1 / 8, 1.0, np.zeros(3), np.zeros(3), 1e-10)

    def test_degenerate_ball(self):
        assert ball_in_tube([0.5], 0.25, 1.0, [1.0, 1.0], [1.5, 1.2], 0.0)

    def test_ball_too_wide(self):
        assert not ball_in_tube([0.0], 0.25, 1.0, [0.0, 0.0], [0.0, 0.0], 2 / 0.25)

    def test_against_boundary_sampling(self):
        rng = np.random.default_rng(4)
        w, delta = np.array([0.7]), 0.25
        tube = Tube(w, delta)
        for _ in range(200):
            center = rng.uniform(-8, 8, 2)
            radius = rng.uniform(0, 3)
            inside = ball_in_tube(w, delta, 1.0, [0, 0], center, radius)
            angles = np.linspace(0, 2 * np.pi, 2000, endpoint=False)
            ring = center + radius * np.stack([np.cos(angles), np.sin(angles)], -1)
            sampled = all(tube_contains(tube, p) for p in ring)
            if inside:
                assert sampled
            elif sampled:
                # a missed violation must be a sliver thinner than the sample spacing
                assert not ball_in_tube(w, delta, 1.0, [0, 0], center, radius * 0.999)


class TestTunedLattice:
    def test_center_count(self):
        for delta, d in itertools.product([1 / 2, 1 / 4, 1 / 8, 0.3], [1, 2]):
            lat = TunedLattice(delta, d)
            first = int(np.ceil(delta**-2 - 1e-9))
            rest = int(np.ceil(1 / delta - 1e-9))
            assert len(lat.centers) == len(lat) == first * rest ** (d - 1)

    def test_centers_layout(self):
        lat = TunedLattice(1 / 4, 2)
        c = lat.centers
        k = lat.indices
        np.testing.assert_allclose(c[:, :2], k * 4**1.5)
        np.testing.assert_array_equal(c[:, 2], k[:, 0])

    def test_balls_disjoint(self):
        c = TunedLattice(1 / 8, 2).centers
        assert min_separation(c) > 2 * 1e-10

    @pytest.mark.parametrize("delta", [1 / 8, 1 / 16])
    @pytest.mark.parametrize("d", [1, 2])
    def test_own_ball_in_own_tube(self, delta, d):
        lat = TunedLattice(delta, d)
        centers = lat.centers
        for w in build_net(delta, d).points:
            own, _ = tuned_ball_membership(lat, w, 1.0)
            assert own
        # the literal per-centre statement for a handful of centres
        for c in centers[:: max(1, len(centers) // 7)]:
            assert ball_in_tube(np.ones(d) * -1, delta, 1.0, c, c, 1e-10)

    def test_exhaustive_pairs_agree_with_differences(self):
        """Checking index differences equals checking every pair, at a small scale."""
        lat = TunedLattice(1 / 4, 1)
        dil = 4**0.25
        centers = lat.centers
        for w in build_net(1 / 4, 1).points:
            pairwise = all(tubes_disjoint(w, lat.delta, dil, a, b)
                           for a, b in itertools.combinations(centers, 2))
            assert pairwise == tuned_tubes_pairwise_disjoint(lat, w, dil)

    def test_disjoint_at_small_delta(self):
        delta = 1 / 32
        lat = TunedLattice(delta, 1)
        for w in build_net(delta, 1).points:
            assert tuned_tubes_pairwise_disjoint(lat, w, delta**-0.25)

    def test_disjointness_with_unit_dilation(self):
        for delta, d in itertools.product([1 / 8, 1 / 16], [1, 2]):
            lat = TunedLattice(delta, d)
            for w in build_net(delta, d).points:
                assert tuned_tubes_pairwise_disjoint(lat, w, 1.0)
