"""Caps, shear maps, dual tubes and the frequency/center lattices.

Frequencies live in ``[-1, 1]^d``; space-time points are ``(x_1, ..., x_d, t)``
with time last.  All predicates use non-strict comparisons, so boundary
points count as inside.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field
from functools import lru_cache
from itertools import product

import numpy as np

_MODES = ("forward", "inverse", "transpose", "inverse_transpose")


def _as_freq(omega) -> np.ndarray:
    w = np.atleast_1d(np.asarray(omega, dtype=float))
    if w.ndim != 1:
        raise ValueError("frequency must be a 1-d vector")
    if np.any(np.abs(w) > 1.0):
        raise ValueError(f"frequency {w} outside [-1, 1]^d")
    return w


def _check_delta(delta: float) -> float:
    if not 0.0 < delta < 1.0:
        raise ValueError(f"delta must lie in (0, 1), got {delta}")
    return float(delta)


@dataclass(frozen=True)
class Cap:
    """The parallelepiped ``theta_{omega, delta}`` over the paraboloid."""

    omega: np.ndarray
    delta: float

    def __post_init__(self):
        object.__setattr__(self, "omega", _as_freq(self.omega))
        object.__setattr__(self, "delta", _check_delta(self.delta))

    @property
    def dim(self) -> int:
        return self.omega.size

    def contains(self, xi, eta) -> bool:
        return cap_contains(self, xi, eta)


def cap_contains(cap: Cap, xi, eta) -> bool:
    xi = np.atleast_1d(np.asarray(xi, dtype=float))
    w, delta, d = cap.omega, cap.delta, cap.dim
    if np.any(np.abs(xi - w) > delta):
        return False
    vertical = eta - 2.0 * np.dot(w, xi - w) - np.dot(w, w)
    return bool(abs(vertical) <= 2 * d * delta**2)


@dataclass(frozen=True)
class ShearMap:
    """The unimodular matrix with identity block and bottom row ``(2 omega, 1)``."""

    omega: np.ndarray

    def __post_init__(self):
        object.__setattr__(self, "omega", _as_freq(self.omega))

    @property
    def dim(self) -> int:
        return self.omega.size

    @property
    def matrix(self) -> np.ndarray:
        d = self.dim
        m = np.eye(d + 1)
        m[d, :d] = 2.0 * self.omega
        return m

    def apply(self, point, mode: str = "forward") -> np.ndarray:
        return shear_apply(self, point, mode)


def shear_apply(shear: ShearMap, point, mode: str = "forward") -> np.ndarray:
    """Apply ``M``, ``M^{-1}``, ``M^T`` or ``M^{-T}`` to points of shape ``(..., d+1)``.

    Works on any leading batch shape without forming the matrix.
    """
    if mode not in _MODES:
        raise ValueError(f"mode must be one of {_MODES}")
    p = np.asarray(point, dtype=float)
    w = shear.omega
    out = np.array(p, dtype=float, copy=True)
    if mode in ("forward", "inverse"):
        # acts on (xi, eta): only the last coordinate changes
        sign = 1.0 if mode == "forward" else -1.0
        out[..., -1] = p[..., -1] + sign * 2.0 * (p[..., :-1] @ w)
    else:
        # acts on (x, t): spatial coordinates pick up the time coordinate
        sign = 1.0 if mode == "transpose" else -1.0
        out[..., :-1] = p[..., :-1] + sign * 2.0 * p[..., -1:] * w
    return out


def tube_halfwidths(delta: float, dim: int, dilation: float = 1.0) -> tuple[float, float]:
    """Half-widths ``(spatial, temporal)`` of ``dilation * T_delta``."""
    return dilation / delta, dilation / (2 * dim * delta**2)


@dataclass(frozen=True)
class Tube:
    """``dilation * T_omega^0 + shift`` in space-time."""

    omega: np.ndarray
    delta: float
    dilation: float = 1.0
    shift: np.ndarray | None = None

    def __post_init__(self):
        w = _as_freq(self.omega)
        object.__setattr__(self, "omega", w)
        object.__setattr__(self, "delta", _check_delta(self.delta))
        if self.dilation < 1.0:
            raise ValueError("dilation must be >= 1")
        s = np.zeros(w.size + 1) if self.shift is None else np.asarray(self.shift, float)
        if s.shape != (w.size + 1,):
            raise ValueError("shift must be a point in R^{d+1}")
        object.__setattr__(self, "shift", s)

    @property
    def dim(self) -> int:
        return self.omega.size

    def contains(self, point) -> bool:
        return tube_contains(self, point)


def tube_contains(tube: Tube, point) -> bool:
    p = np.asarray(point, dtype=float) - tube.shift
    x, t = p[:-1], p[-1]
    wx, wt = tube_halfwidths(tube.delta, tube.dim, tube.dilation)
    return bool(np.all(np.abs(x + 2.0 * tube.omega * t) <= wx) and abs(t) <= wt)


def tubes_disjoint(omega, delta: float, dilation: float, shift_a, shift_b) -> bool:
    """Exact disjointness of two translates of ``dilation * T_omega^0``.

    The translates meet iff ``M^T (a - b)`` lies in the difference body of the
    axis box, i.e. the box with doubled half-widths.
    """
    w = _as_freq(omega)
    diff = np.asarray(shift_a, float) - np.asarray(shift_b, float)
    return not _differences_intersect(w, delta, dilation, diff[None, :])[0]


def _differences_intersect(w, delta, dilation, diffs) -> np.ndarray:
    d = w.size
    wx, wt = tube_halfwidths(delta, d, dilation)
    x = diffs[:, :d] + 2.0 * diffs[:, d:] * w
    return np.all(np.abs(x) <= 2 * wx, axis=1) & (np.abs(diffs[:, d]) <= 2 * wt)


def ball_in_tube(omega, delta: float, dilation: float, tube_shift, ball_center,
                 radius: float) -> bool:
    """Whether the closed Euclidean ball lies inside ``dilation * T_omega^0 + shift``.

    Each defining constraint is a slab ``|n . p - c| <= h``; the ball fits in the
    slab iff the centre's margin is at least ``radius * |n|``.
    """
    if radius < 0:
        raise ValueError("radius must be non-negative")
    w = _as_freq(omega)
    diff = np.asarray(ball_center, float) - np.asarray(tube_shift, float)
    return bool(_balls_inside(w, delta, dilation, diff[None, :], radius)[0])


def _balls_inside(w, delta, dilation, diffs, radius) -> np.ndarray:
    d = w.size
    wx, wt = tube_halfwidths(delta, d, dilation)
    x = diffs[:, :d] + 2.0 * diffs[:, d:] * w
    normals = np.sqrt(1.0 + 4.0 * w**2)
    ok_x = np.all(wx - np.abs(x) >= radius * normals, axis=1)
    ok_t = wt - np.abs(diffs[:, d]) >= radius
    return ok_x & ok_t


@dataclass(frozen=True)
class FrequencyNet:
    delta: float
    dim: int
    points: np.ndarray = field(repr=False)

    def __len__(self) -> int:
        return len(self.points)


def build_net(delta: float, dim: int) -> FrequencyNet:
    """The lattice ``-1 + delta * Z`` (per axis) intersected with ``[-1, 1]^d``.

    For dyadic ``delta`` this is ``delta Z^d`` restricted to the cube.
    """
    if not 0.0 < delta <= 1.0:
        raise ValueError(f"delta must lie in (0, 1], got {delta}")
    if dim < 1:
        raise ValueError("dim must be >= 1")
    count = math.floor(2.0 / delta + 1e-9) + 1
    axis = np.minimum(-1.0 + delta * np.arange(count), 1.0)
    grids = np.meshgrid(*([axis] * dim), indexing="ij")
    pts = np.stack([g.ravel() for g in grids], axis=-1)
    return FrequencyNet(delta=float(delta), dim=dim, points=pts)


def min_separation(points: np.ndarray) -> float:
    """Smallest pairwise Euclidean distance (brute force)."""
    pts = np.asarray(points, float)
    if len(pts) < 2:
        return math.inf
    diff = pts[:, None, :] - pts[None, :, :]
    dist = np.sqrt(np.sum(diff**2, axis=-1))
    dist[np.diag_indices(len(pts))] = np.inf
    return float(dist.min())


def _count_below(bound: float) -> int:
    # number of integers k with 0 <= k < bound
    return max(math.ceil(bound - 1e-9), 0)


BALL_RADIUS = 1e-10


@dataclass(frozen=True)
class TunedLattice:
    """Centres ``c_k = (k * delta^{-1-eps0}, k_1)`` and the balls around them."""

    delta: float
    dim: int
    eps0: float = 0.5
    ball_radius: float = BALL_RADIUS

    @property
    def index_ranges(self) -> tuple[int, ...]:
        first = _count_below(self.delta**-2)
        rest = _count_below(1.0 / self.delta)
        return (first,) + (rest,) * (self.dim - 1)

    @property
    def indices(self) -> np.ndarray:
        ranges = [range(n) for n in self.index_ranges]
        return np.array(list(product(*ranges)), dtype=np.int64).reshape(-1, self.dim)

    @property
    def spacing(self) -> float:
        return self.delta ** (-1.0 - self.eps0)

    @property
    def centers(self) -> np.ndarray:
        k = self.indices
        return np.concatenate([k * self.spacing, k[:, :1].astype(float)], axis=1)

    def __len__(self) -> int:
        return int(np.prod(self.index_ranges))


@lru_cache(maxsize=16)
def _differences_for(index_ranges: tuple[int, ...]) -> np.ndarray:
    ranges = [range(-(n - 1), n) for n in index_ranges]
    dk = np.array(list(product(*ranges)), dtype=np.int64).reshape(-1, len(index_ranges))
    dk = dk[np.any(dk != 0, axis=1)]
    dk.setflags(write=False)
    return dk


def _index_differences(lattice: TunedLattice) -> np.ndarray:
    # every distinct nonzero k - k' over the index box
    return _differences_for(tuple(lattice.index_ranges))


def _center_differences(lattice: TunedLattice, dk: np.ndarray) -> np.ndarray:
    return np.concatenate([dk * lattice.spacing, dk[:, :1].astype(float)], axis=1)


def tuned_tubes_pairwise_disjoint(lattice: TunedLattice, omega, dilation: float) -> bool:
    """Exhaustive check that ``dilation * T_omega^0 + c_k`` are pairwise disjoint.

    The predicate depends on ``c_k - c_k'`` only, and centre differences are
    exactly the images of index differences, so every distinct index difference
    is checked once.  This covers all pairs.
    """
    w = _as_freq(omega)
    dk = _index_differences(lattice)
    if len(dk) == 0:
        return True
    diffs = _center_differences(lattice, dk)
    return not bool(np.any(_differences_intersect(w, lattice.delta, dilation, diffs)))


def tuned_ball_membership(lattice: TunedLattice, omega, dilation: float) -> tuple[bool, bool]:
    """``(own, foreign)``: whether ``C_k`` sits in its own dilated tube, and
    whether any ``C_k'`` with ``k' != k`` sits in the tube around ``c_k``.
    """
    w = _as_freq(omega)
    r = lattice.ball_radius
    own = ball_in_tube(w, lattice.delta, dilation, np.zeros(w.size + 1),
                       np.zeros(w.size + 1), r)
    dk = _index_differences(lattice)
    if len(dk) == 0:
        return own, False
    diffs = _center_differences(lattice, dk)
    foreign = bool(np.any(_balls_inside(w, lattice.delta, dilation, diffs, r)))
    return own, foreign
