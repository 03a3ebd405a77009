"""Quadratic exponential sums on ``T^d x [0, 1]`` and their norm growth in ``N``.

The sum ``F(x, t) = sum_{n in {1..N}^d} a_n e(n.x + |n|^2 t)`` is a
trigonometric polynomial in ``x``; on each time slice it is produced exactly
at the grid points by an inverse FFT of size ``X`` per axis.
"""
from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .fitting import FitResult, fit_line
from .mixed_norm import (GridSpec, SampledField, check_exponent, inner_norms,
                         outer_norm, slice_power_sums)

RULES = ("ones", "single", "random")
_CHUNK_SAMPLES = 1 << 22


@dataclass(frozen=True)
class CoefficientVector:
    N: int
    dim: int
    a: np.ndarray  # shape (N,)*dim, entry a[n-1] for n in {1..N}^d
    rule: str = "custom"
    seed: int | None = None

    def __post_init__(self):
        if self.a.shape != (self.N,) * self.dim:
            raise ValueError("coefficient array must have shape (N,)*dim")
        if not np.any(self.a != 0):
            raise ValueError("coefficients must not all vanish")

    @property
    def l2(self) -> float:
        return float(np.sqrt(np.sum(np.abs(self.a) ** 2)))


def make_coefficients(N: int, dim: int = 1, rule: str = "ones", seed: int = 0) -> CoefficientVector:
    if N < 1 or dim < 1:
        raise ValueError("need N >= 1 and dim >= 1")
    shape = (N,) * dim
    if rule == "ones":
        a = np.ones(shape, complex)
    elif rule == "single":
        a = np.zeros(shape, complex)
        a[(0,) * dim] = 1.0
    elif rule in ("random", "random_unimodular"):
        rng = np.random.default_rng(seed)
        a = np.exp(2j * np.pi * rng.random(shape))
        rule = "random"
    else:
        raise ValueError(f"unknown coefficient rule {rule!r}; expected one of {RULES}")
    return CoefficientVector(N, dim, a, rule, seed if rule == "random" else None)


def torus_grid(X: int, T: int, dim: int = 1) -> GridSpec:
    return GridSpec((0.0,) * dim, (1.0,) * dim, 0.0, 1.0, 1.0 / X, 1.0 / T, periodic=True)


def default_grid(N: int, dim: int = 1, oversample: int = 4) -> GridSpec:
    """``X = oversample * N`` points per axis and ``T = 2 * oversample * d * N^2`` slices."""
    return torus_grid(oversample * N, 2 * oversample * dim * N * N, dim)


def _check_grid(coeffs: CoefficientVector, grid: GridSpec):
    if not grid.periodic or grid.dim != coeffs.dim:
        raise ValueError("need a periodic grid of matching dimension")
    if abs(grid.t_min) > 1e-12 or abs(grid.t_max - 1.0) > 1e-12:
        raise ValueError("time window must be [0, 1]")
    X, T, N, d = grid.n_x[0], grid.n_t, coeffs.N, coeffs.dim
    if any(n != X for n in grid.n_x):
        raise ValueError("all spatial axes must have the same resolution")
    if X < 4 * N or T < 8 * d * N * N:
        raise ValueError(f"undersampled grid: need X >= {4 * N} and T >= {8 * d * N * N}, "
                         f"got X={X}, T={T}")


def _slices(coeffs: CoefficientVector, grid: GridSpec, start: int, stop: int) -> np.ndarray:
    N, d = coeffs.N, coeffs.dim
    X = grid.n_x[0]
    n = np.arange(1, N + 1)
    grids = np.meshgrid(*([n] * d), indexing="ij")
    sq = sum(g * g for g in grids)
    t = grid.t_nodes()[start:stop]
    spectrum = np.zeros((len(t),) + (X,) * d, complex)
    # quadratic phase at each slice, then placed at frequency n (mod X)
    modes = coeffs.a[None] * np.exp(2j * np.pi * np.multiply.outer(t, sq))
    idx = (slice(None),) + tuple(np.ix_(*([n % X] * d)))
    spectrum[idx] = modes
    axes = tuple(range(1, d + 1))
    return np.fft.ifftn(spectrum, axes=axes) * X**d


def synthesize_expsum(coeffs: CoefficientVector, grid: GridSpec) -> SampledField:
    _check_grid(coeffs, grid)
    return SampledField(grid, _slices(coeffs, grid, 0, grid.n_t))


def direct_sum(coeffs: CoefficientVector, points) -> np.ndarray:
    """Brute-force evaluation at points of shape ``(..., d+1)``."""
    pts = np.asarray(points, float)
    d = coeffs.dim
    out = np.zeros(pts.shape[:-1], complex)
    for idx in np.ndindex(*coeffs.a.shape):
        n = np.asarray(idx) + 1
        arg = pts[..., :d] @ n + np.dot(n, n) * pts[..., d]
        out += coeffs.a[idx] * np.exp(2j * np.pi * arg)
    return out


@dataclass(frozen=True)
class GrowthSample:
    N: int
    q: float
    r: float
    ratio: float


def expsum_ratio(coeffs: CoefficientVector, q, r, oversample: int = 4) -> GrowthSample:
    """``||F||_{L^q_t L^r_x(T^d x [0,1])} / ||a||_2``, streamed over time chunks."""
    q, r = check_exponent(q), check_exponent(r)
    grid = default_grid(coeffs.N, coeffs.dim, oversample)
    _check_grid(coeffs, grid)
    per_slice = grid.size // grid.n_t
    chunk = max(1, _CHUNK_SAMPLES // per_slice)
    sums = np.empty(grid.n_t)
    for start in range(0, grid.n_t, chunk):
        stop = min(start + chunk, grid.n_t)
        sums[start:stop] = slice_power_sums(_slices(coeffs, grid, start, stop), r)
    norm = outer_norm(inner_norms(sums, r, grid.cell_volume_x), q, grid.h_t)
    return GrowthSample(coeffs.N, q, r, norm / coeffs.l2)


def growth_samples(rule: str, N_ladder, q, r, dim: int = 1, seed: int = 0,
                   oversample: int = 4) -> list[GrowthSample]:
    ladder = list(N_ladder)
    return [expsum_ratio(make_coefficients(N, dim, rule, seed), q, r, oversample)
            for N in ladder]


def growth_fit(rule: str, N_ladder, q, r, dim: int = 1, seed: int = 0,
               oversample: int = 4, samples: list | None = None) -> FitResult:
    """Least-squares slope of ``log ratio`` against ``log N``."""
    ladder = list(N_ladder)
    if len(set(ladder)) < 3:
        raise ValueError("need a ladder of at least three distinct N")
    if samples is None:
        samples = growth_samples(rule, ladder, q, r, dim, seed, oversample)
    return fit_line([math.log(s.N) for s in samples], [math.log(s.ratio) for s in samples])
