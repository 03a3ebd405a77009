import math

import numpy as np
import pytest
from hypothesis import given, strategies as st

from mixdec.envelope import (EnvelopeParams, WavepacketSpec, envelope_value, phi,
                             phi_tail_bound, sinc, wavepacket_value)
from mixdec.geometry import ShearMap, shear_apply

P4 = EnvelopeParams(4)


def test_norm_const_m4():
    # sinc(1/8)^-8, computed by hand: sin(pi/8) = 0.38268343236508984
    s = 0.38268343236508984 / (math.pi / 8)
    assert P4.norm_const == pytest.approx(s**-8, rel=1e-14)
    assert P4.norm_const == pytest.approx(1.2297, abs=1e-3)


def test_sinc_series_branch_continuous():
    u = np.array([0.0, 0.9e-4 / math.pi, 1.1e-4 / math.pi])
    np.testing.assert_allclose(sinc(u), [1.0, 1 - (0.9e-4) ** 2 / 6, 1 - (1.1e-4) ** 2 / 6],
                               rtol=1e-15)


class TestPhi:
    def test_origin(self):
        assert phi(0.0, P4) == pytest.approx(P4.norm_const, rel=1e-15)

    def test_unit_point(self):
        assert phi(1.0, P4) >= 1 - 1e-12
        assert phi(1.0, P4) == pytest.approx(1.0, rel=1e-12)

    def test_far_point(self):
        assert phi(100.0, P4) <= P4.norm_const * (8 / (math.pi * 100)) ** 8

    @pytest.mark.parametrize("m", [1, 2, 4, 6])
    def test_majorant(self, m):
        p = EnvelopeParams(m)
        t = np.linspace(-1, 1, 10_000)
        assert phi(t, p).min() >= 1 - 1e-12
        assert p.norm_const >= 1

    def test_even(self):
        t = np.random.default_rng(0).normal(size=5000) * 50
        assert np.array_equal(phi(t, P4), phi(-t, P4))

    def test_zeros(self):
        np.testing.assert_allclose(phi(np.array([8.0, 16.0, -24.0]), P4), 0, atol=1e-30)

    def test_tail_bound(self):
        t = np.linspace(-500, 500, 20_001)
        assert np.all(phi(t, P4) <= phi_tail_bound(t, P4) * (1 + 1e-12))

    def test_fourier_support(self):
        h = 1 / 64
        t = np.arange(-256, 256, h)
        spec = np.abs(np.fft.fftshift(np.fft.fft(phi(t, P4))))
        freq = np.fft.fftshift(np.fft.fftfreq(t.size, h))
        outside = np.abs(freq) > 1
        assert spec[outside].max() / spec.max() < 1e-6

    def test_fourier_support_is_half_band(self):
        # the transform is actually supported in [-1/2, 1/2]; leakage past 0.55 is tail truncation only
        h = 1 / 64
        t = np.arange(-256, 256, h)
        spec = np.abs(np.fft.fft(phi(t, P4)))
        freq = np.fft.fftfreq(t.size, h)
        assert spec[np.abs(freq) > 0.55].max() / spec.max() < 1e-6

    def test_invalid_m(self):
        with pytest.raises(ValueError):
            EnvelopeParams(0)


class TestEnvelope:
    def test_origin_value(self):
        for d in (1, 2, 3):
            spec = WavepacketSpec(np.zeros(d), 0.25, params=P4)
            assert envelope_value(spec, np.zeros(d + 1)) == pytest.approx(P4.norm_const ** (d + 1))

    def test_tube_boundary(self):
        spec = WavepacketSpec([0.0], 0.25, params=P4)
        v = envelope_value(spec, [4.0, 0.0])
        assert v == pytest.approx(P4.norm_const * phi(1.0, P4))
        assert v >= 1

    def test_translation_covariance(self):
        rng = np.random.default_rng(5)
        for _ in range(100):
            w, s, p = rng.uniform(-1, 1, 2), rng.normal(size=3) * 30, rng.normal(size=3) * 30
            a = envelope_value(WavepacketSpec(w, 0.125, s, P4), p)
            b = envelope_value(WavepacketSpec(w, 0.125, None, P4), p - s)
            assert a == pytest.approx(b, rel=1e-12)

    def test_at_least_one_on_tube(self):
        rng = np.random.default_rng(6)
        delta, d = 0.125, 2
        w = rng.uniform(-1, 1, d)
        # uniform points of the sheared box, mapped back to space-time
        box = rng.uniform(-1, 1, (2000, d + 1)) * np.array([1 / delta] * d + [1 / (2 * d * delta**2)])
        pts = shear_apply(ShearMap(w), box, "inverse_transpose")
        assert envelope_value(WavepacketSpec(w, delta, params=P4), pts).min() >= 1 - 1e-12

    @pytest.mark.parametrize("d", [1, 2])
    def test_shell_decay(self, d):
        rng = np.random.default_rng(7 + d)
        delta, m = 0.125, 4
        cm = P4.norm_const
        const = cm ** (d + 1) * (4 * m / math.pi) ** (2 * m)
        half = np.array([1 / delta] * d + [1 / (2 * d * delta**2)])
        for n in range(1, 7):
            w = rng.uniform(-1, 1, d)
            spec = WavepacketSpec(w, delta, params=P4)
            # sample the shell 2^{n+1} T \ 2^n T in sheared coordinates
            box = rng.uniform(-1, 1, (20_000, d + 1)) * 2 ** (n + 1)
            box = box[np.max(np.abs(box), axis=1) > 2**n]
            pts = shear_apply(ShearMap(w), box * half, "inverse_transpose")
            v = envelope_value(spec, pts)
            assert v.max() <= const * (1 + 2**n) ** (-2 * m)

    def test_positive_off_zeros(self):
        spec = WavepacketSpec([0.3], 0.25, params=P4)
        pts = np.random.default_rng(8).normal(size=(1000, 2)) * 3
        assert np.all(envelope_value(spec, pts) > 0)


class TestWavepacket:
    def test_zero_frequency_real(self):
        spec = WavepacketSpec([0.0, 0.0], 0.25, params=P4)
        pts = np.random.default_rng(9).normal(size=(100, 3)) * 10
        v = wavepacket_value(spec, pts)
        np.testing.assert_array_equal(v.imag, 0)
        np.testing.assert_allclose(v.real, envelope_value(spec, pts))

    def test_half_turn_phase(self):
        spec = WavepacketSpec([0.5], 0.25, params=P4)
        v = wavepacket_value(spec, [1.0, 0.0])
        assert v == pytest.approx(-envelope_value(spec, [1.0, 0.0]), abs=1e-14)

    @given(st.floats(-1, 1), st.floats(-1e3, 1e3), st.floats(-1e3, 1e3))
    def test_modulus(self, w, x, t):
        spec = WavepacketSpec([w], 0.25, [1.0, -2.0], P4)
        p = np.array([x, t])
        assert abs(wavepacket_value(spec, p)) == pytest.approx(envelope_value(spec, p), rel=1e-12)

    def test_bad_shift_shape(self):
        with pytest.raises(ValueError):
            WavepacketSpec([0.0], 0.25, [0.0, 0.0, 0.0])
