"""Band-limited majorant ``phi`` and the wavepackets built from it.

``phi(t) = c_m * sinc(t / 2m)^(2m)`` with ``sinc(u) = sin(pi u) / (pi u)``.
Its Fourier transform is the ``2m``-fold self-convolution of a box of width
``1/(2m)``, so it is supported in ``[-1/2, 1/2]``.  The constant
``c_m = sinc(1/2m)^(-2m)`` makes ``phi(+-1) = 1``; since ``sinc`` decreases on
``[0, 1/2m]``, ``phi >= 1`` on ``[-1, 1]``.  Away from the origin
``phi(t) <= c_m (2m / (pi |t|))^(2m)``, i.e. decay of order ``2m``.
"""
from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .geometry import ShearMap, _as_freq, _check_delta, shear_apply

_SERIES_CUTOFF = 1e-4


def sinc(u):
    """Normalized sinc with a Taylor branch near the removable singularity."""
    u = np.asarray(u, dtype=float)
    z = np.pi * u
    small = np.abs(z) < _SERIES_CUTOFF
    safe = np.where(small, 1.0, z)
    z2 = z * z
    return np.where(small, 1.0 - z2 / 6.0 + z2 * z2 / 120.0, np.sin(safe) / safe)


@dataclass(frozen=True)
class EnvelopeParams:
    m: int = 4

    def __post_init__(self):
        if int(self.m) != self.m or self.m < 1:
            raise ValueError("m must be a positive integer")

    @property
    def decay(self) -> int:
        return 2 * self.m

    @property
    def norm_const(self) -> float:
        s = math.sin(math.pi / (2 * self.m)) / (math.pi / (2 * self.m))
        return s ** (-2 * self.m)


def phi(t, params: EnvelopeParams = EnvelopeParams()):
    m = params.m
    return params.norm_const * sinc(np.asarray(t, float) / (2 * m)) ** (2 * m)


def phi_tail_bound(t, params: EnvelopeParams = EnvelopeParams()):
    """``c_m * min(1, (2m / (pi |t|))^(2m))``, from ``|sin| <= 1``."""
    t = np.abs(np.asarray(t, float))
    m = params.m
    with np.errstate(divide="ignore"):
        ratio = np.where(t > 0, 2 * m / (np.pi * np.maximum(t, 1e-300)), np.inf)
    return params.norm_const * np.minimum(1.0, ratio) ** (2 * m)


@dataclass(frozen=True)
class WavepacketSpec:
    """``f(p) = e((omega, |omega|^2) . (p - shift)) * phi_T(p - shift)``."""

    omega: np.ndarray
    delta: float
    shift: np.ndarray | None = None
    params: EnvelopeParams = EnvelopeParams()

    def __post_init__(self):
        w = _as_freq(self.omega)
        object.__setattr__(self, "omega", w)
        object.__setattr__(self, "delta", _check_delta(self.delta))
        s = np.zeros(w.size + 1) if self.shift is None else np.asarray(self.shift, float)
        if s.shape != (w.size + 1,):
            raise ValueError("shift must be a point in R^{d+1}")
        object.__setattr__(self, "shift", s)

    @property
    def dim(self) -> int:
        return self.omega.size


def envelope_value(spec: WavepacketSpec, point):
    """``phi(2d delta^2 t') * prod_i phi(delta x'_i)`` with ``(x', t') = M^T (p - shift)``.

    ``point`` may carry any leading batch shape ``(..., d+1)``.
    """
    d, delta = spec.dim, spec.delta
    p = np.asarray(point, float) - spec.shift
    sheared = shear_apply(ShearMap(spec.omega), p, "transpose")
    val = phi(2 * d * delta**2 * sheared[..., d], spec.params)
    for i in range(d):
        val = val * phi(delta * sheared[..., i], spec.params)
    return val


def phase(spec: WavepacketSpec, point):
    p = np.asarray(point, float) - spec.shift
    w = spec.omega
    arg = p[..., :-1] @ w + np.dot(w, w) * p[..., -1]
    return np.exp(2j * np.pi * arg)


def wavepacket_value(spec: WavepacketSpec, point):
    return phase(spec, point) * envelope_value(spec, point)
