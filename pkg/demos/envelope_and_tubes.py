"""
The majorant and the tilted tube it lives on
============================================

phi is a sinc power, so its Fourier transform is a box convolved with itself
2m times.  Here we check phi >= 1 on [-1, 1], look at its spectrum, and walk a
wavepacket envelope out of its tube shell by shell.
"""
import math

import numpy as np

from mixdec.envelope import EnvelopeParams, WavepacketSpec, envelope_value, phi
from mixdec.geometry import ShearMap, Tube, shear_apply, tube_contains

p = EnvelopeParams(m=4)
print("c_4 =", p.norm_const)
print("phi(0), phi(1), phi(8) =", phi(np.array([0.0, 1.0, 8.0]), p))

t = np.arange(-256, 256, 1 / 64)
spec = np.abs(np.fft.fft(phi(t, p)))
freq = np.fft.fftfreq(t.size, 1 / 64)
for band in (0.25, 0.5, 0.55, 1.0):
    print(f"largest |phi_hat| beyond {band}: {spec[np.abs(freq) > band].max() / spec.max():.2e}")

# a tube tilted by velocity -2 omega
delta, w = 0.125, np.array([0.5])
tube = Tube(w, delta)
print(tube_contains(tube, [0.0, 0.0]), tube_contains(tube, [-32.0, 32.0]), tube_contains(tube, [0.0, 32.0]))

packet = WavepacketSpec(w, delta, params=p)
half = np.array([1 / delta, 1 / (2 * delta**2)])
for n in range(7):
    box = np.array([[2.0 ** n * 1.3, 0.0], [0.0, 2.0 ** n * 1.3]])
    pts = shear_apply(ShearMap(w), box * half, "inverse_transpose")
    bound = p.norm_const**2 * (4 * p.m / math.pi) ** (2 * p.m) * (1 + 2**n) ** -8
    print(n, envelope_value(packet, pts), "bound", bound)
