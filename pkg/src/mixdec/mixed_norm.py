"""Midpoint-rule quadrature for ``L^q_t L^r_x`` norms on rectangular grids."""
from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction

import numpy as np

INF = math.inf


def parse_exponent(text) -> float:
    """Parse ``"inf"``, ``"10/3"``, ``"2.5"`` or a number into a float exponent >= 1."""
    if isinstance(text, str):
        s = text.strip().lower()
        if s in ("inf", "infinity", "oo"):
            value = INF
        else:
            try:
                value = float(Fraction(s))
            except (ValueError, ZeroDivisionError) as exc:
                raise ValueError(f"malformed exponent {text!r}") from exc
    else:
        value = float(text)
    return check_exponent(value)


def check_exponent(value) -> float:
    value = float(value)
    if math.isnan(value) or value < 1:
        raise ValueError(f"exponent must be >= 1 (or inf), got {value}")
    return value


def _cell_count(extent: float, h: float) -> int:
    return max(1, math.ceil(extent / h - 1e-9))


@dataclass(frozen=True)
class GridSpec:
    """Cell-centred space-time grid.

    Non-periodic axes sample cell midpoints.  Periodic grids describe the torus
    ``[x_min, x_min + 1)^d`` and sample the left endpoints ``x_min + k h_x``;
    time is always sampled at midpoints.
    """

    x_min: tuple
    x_max: tuple
    t_min: float
    t_max: float
    h_x: float
    h_t: float
    periodic: bool = False

    def __post_init__(self):
        object.__setattr__(self, "x_min", tuple(float(v) for v in np.atleast_1d(self.x_min)))
        object.__setattr__(self, "x_max", tuple(float(v) for v in np.atleast_1d(self.x_max)))
        if len(self.x_min) != len(self.x_max):
            raise ValueError("x_min and x_max must have the same length")
        if self.h_x <= 0 or self.h_t <= 0:
            raise ValueError("spacings must be positive")
        if self.t_max <= self.t_min or any(b <= a for a, b in zip(self.x_min, self.x_max)):
            raise ValueError("extents must be positive")
        if self.periodic and any(abs(b - a - 1.0) > 1e-12 for a, b in zip(self.x_min, self.x_max)):
            raise ValueError("periodic grids need unit spatial period")

    @property
    def dim(self) -> int:
        return len(self.x_min)

    @property
    def n_x(self) -> tuple[int, ...]:
        return tuple(_cell_count(b - a, self.h_x) for a, b in zip(self.x_min, self.x_max))

    @property
    def n_t(self) -> int:
        return _cell_count(self.t_max - self.t_min, self.h_t)

    @property
    def shape(self) -> tuple[int, ...]:
        return (self.n_t,) + self.n_x

    @property
    def size(self) -> int:
        return int(np.prod(self.shape, dtype=np.int64))

    @property
    def cell_volume_x(self) -> float:
        return self.h_x**self.dim

    def x_nodes(self, axis: int = 0) -> np.ndarray:
        offset = 0.0 if self.periodic else 0.5
        return self.x_min[axis] + (np.arange(self.n_x[axis]) + offset) * self.h_x

    def t_nodes(self) -> np.ndarray:
        return self.t_min + (np.arange(self.n_t) + 0.5) * self.h_t


@dataclass
class SampledField:
    grid: GridSpec
    samples: np.ndarray

    def __post_init__(self):
        self.samples = np.asarray(self.samples)
        if self.samples.shape != self.grid.shape:
            raise ValueError(f"samples shape {self.samples.shape} != grid shape {self.grid.shape}")


def slice_power_sums(slices: np.ndarray, r: float) -> np.ndarray:
    """Per time slice: ``sum |f|^r`` over the spatial samples, or ``max |f|`` if ``r = inf``.

    ``slices`` has shape ``(n_t, ...)``; the spatial reduction uses numpy's
    pairwise summation over a contiguous buffer.
    """
    a = np.abs(np.asarray(slices)).reshape(len(slices), -1)
    if math.isinf(r):
        return a.max(axis=1) if a.shape[1] else np.zeros(len(a))
    if r == 2:
        p = a * a
    elif float(r).is_integer():
        p = a ** int(r)
    else:
        p = a**r
    return np.ascontiguousarray(p).sum(axis=1)


def inner_norms(power_sums: np.ndarray, r: float, cell_volume: float) -> np.ndarray:
    """Turn per-slice power sums into per-slice ``L^r_x`` norms."""
    s = np.asarray(power_sums, float)
    if math.isinf(r):
        return s
    return (s * cell_volume) ** (1.0 / r)


def outer_norm(inner: np.ndarray, q: float, h_t: float) -> float:
    inner = np.asarray(inner, float)
    if inner.size == 0:
        return 0.0
    if math.isinf(q):
        return float(inner.max())
    top = inner.max()
    if top == 0:
        return 0.0
    # rescale before powering to keep large q in range
    return float(top * (np.sum((inner / top) ** q) * h_t) ** (1.0 / q))


def mixed_norm(field: SampledField, q, r) -> float:
    q, r = check_exponent(q), check_exponent(r)
    if field.samples.size == 0:
        raise ValueError("empty field")
    grid = field.grid
    sums = slice_power_sums(field.samples, r)
    return outer_norm(inner_norms(sums, r, grid.cell_volume_x), q, grid.h_t)


def l2_aggregate(norms) -> float:
    v = np.asarray(norms, float)
    if np.any(v < 0):
        raise ValueError("norms must be non-negative")
    return float(np.sqrt(np.sum(v * v)))


def homogeneity_check(field: SampledField, q, r, c: complex) -> tuple[float, float]:
    scaled = SampledField(field.grid, c * field.samples)
    return mixed_norm(scaled, q, r), abs(c) * mixed_norm(field, q, r)
