"""The four extremizer families and their decoupling ratios.

Every family places one or more wavepackets at each frequency of the lattice
net.  The field ``sum_omega f_omega`` is synthesized on a space-time grid one
time slice at a time; the full grid is never held in memory unless asked for.
"""
from __future__ import annotations

import math
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field, replace
from enum import Enum

import numpy as np

from . import _kernels
from .envelope import EnvelopeParams, WavepacketSpec, envelope_value, wavepacket_value
from .exponents import lower_bound_terms
from .fitting import FitResult, fit_line
from .geometry import TunedLattice, build_net, tube_halfwidths
from .mixed_norm import (GridSpec, SampledField, check_exponent, inner_norms,
                         l2_aggregate, outer_norm)

DEFAULT_BUDGET = 1_000_000_000


class BudgetExceeded(ValueError):
    """Raised when a family's grid would exceed the sample budget."""


class FamilyKind(str, Enum):
    BUSH = "bush"
    SPACE = "space"
    TIME = "time"
    TUNED = "tunedbush"


# which lower-bound term each family realises
_TERM_INDEX = {FamilyKind.BUSH: 0, FamilyKind.SPACE: 1, FamilyKind.TIME: 2, FamilyKind.TUNED: 3}


def predicted_exponent(kind, q, r, d):
    return lower_bound_terms(q, r, d)[_TERM_INDEX[FamilyKind(kind)]]


@dataclass(frozen=True)
class FamilyParams:
    delta: float
    dim: int = 1
    sep_exponent: float = 4.0
    eps0: float = 0.5
    envelope: EnvelopeParams = EnvelopeParams()
    h_x: float = 0.125
    h_t: float | None = None  # defaults to 1/(8d)
    trunc: float = 8.0
    cutoff: float = 1e-8
    budget: int = DEFAULT_BUDGET
    net: str = "lattice"  # or "origin": the single frequency 0

    def __post_init__(self):
        if not 0.0 < self.delta < 1.0:
            raise ValueError(f"delta must lie in (0, 1), got {self.delta}")
        if self.dim not in (1, 2):
            raise ValueError("families support d = 1 or 2")
        if self.sep_exponent < 3:
            raise ValueError("sep_exponent must be >= 3")
        if not 0.0 < self.eps0 < 1.0:
            raise ValueError("eps0 must lie in (0, 1)")
        if self.trunc < 2:
            raise ValueError("trunc must be >= 2")
        if self.net not in ("lattice", "origin"):
            raise ValueError("net must be 'lattice' or 'origin'")

    @property
    def time_step(self) -> float:
        return self.h_t if self.h_t is not None else 1.0 / (8 * self.dim)


@dataclass(frozen=True)
class FamilySpec:
    kind: FamilyKind
    params: FamilyParams
    frequencies: np.ndarray = field(repr=False)
    shifts: list = field(repr=False)  # shifts[g]: (n_g, d+1) array for frequency g
    amplitude: complex = 1.0

    @property
    def n_packets(self) -> int:
        return sum(len(s) for s in self.shifts)

    def packets(self, group: int | None = None):
        groups = range(len(self.frequencies)) if group is None else [group]
        p = self.params
        for g in groups:
            for s in self.shifts[g]:
                yield WavepacketSpec(self.frequencies[g], p.delta, s, p.envelope)

    def scaled(self, c: complex) -> "FamilySpec":
        return replace(self, amplitude=self.amplitude * c)


def _frequencies(params: FamilyParams) -> np.ndarray:
    if params.net == "origin":
        return np.zeros((1, params.dim))
    return build_net(params.delta, params.dim).points


def build_family(kind, params: FamilyParams, check_budget: bool = True) -> FamilySpec:
    kind = FamilyKind(kind)
    freqs = _frequencies(params)
    d, n = params.dim, len(freqs)
    zero = np.zeros((1, d + 1))
    if kind is FamilyKind.BUSH:
        shifts = [zero.copy() for _ in range(n)]
    elif kind in (FamilyKind.SPACE, FamilyKind.TIME):
        step = params.delta ** (-params.sep_exponent)
        axis = 0 if kind is FamilyKind.SPACE else d
        shifts = []
        for g in range(n):
            s = zero.copy()
            s[0, axis] = g * step
            shifts.append(s)
    else:
        centers = TunedLattice(params.delta, d, params.eps0).centers
        shifts = [centers for _ in range(n)]
    spec = FamilySpec(kind, params, freqs, shifts)
    if check_budget:
        auto_grid(spec)
    return spec


def auto_grid(spec: FamilySpec, trunc: float | None = None) -> GridSpec:
    """Smallest grid holding the ``trunc``-dilate of every shifted tube.

    Extents are rounded up to whole cells symmetrically, so a lone packet
    yields a grid centred on its shift.
    """
    p = spec.params
    trunc = p.trunc if trunc is None else trunc
    if trunc < 2:
        raise ValueError("trunc must be >= 2")
    d = p.dim
    wx, wt = tube_halfwidths(p.delta, d, trunc)
    lo = np.full(d + 1, np.inf)
    hi = np.full(d + 1, -np.inf)
    for g, w in enumerate(spec.frequencies):
        s = spec.shifts[g]
        if len(s) == 0:
            continue
        reach = np.append(wx + 2 * np.abs(w) * wt, wt)
        lo = np.minimum(lo, s.min(axis=0) - reach)
        hi = np.maximum(hi, s.max(axis=0) + reach)
    if not np.all(np.isfinite(lo)):
        lo, hi = -np.append(np.full(d, wx), wt), np.append(np.full(d, wx), wt)
    h_x, h_t = p.h_x, p.time_step
    n_x = np.ceil((hi[:d] - lo[:d]) / h_x - 1e-9)
    n_t = math.ceil((hi[d] - lo[d]) / h_t - 1e-9)
    mid = 0.5 * (lo + hi)
    x_min = mid[:d] - 0.5 * n_x * h_x
    x_max = mid[:d] + 0.5 * n_x * h_x
    t_min = mid[d] - 0.5 * n_t * h_t
    grid = GridSpec(tuple(x_min), tuple(x_max), t_min, t_min + n_t * h_t, h_x, h_t)
    if grid.size > p.budget:
        raise BudgetExceeded(
            f"delta={p.delta:g}: grid of {grid.size} samples exceeds budget {p.budget}")
    return grid


def _pack(spec: FamilySpec):
    d = spec.params.dim
    omegas, shifts, starts = [], [], [0]
    for g, w in enumerate(spec.frequencies):
        s = spec.shifts[g]
        for row in s:
            omegas.append([w[0], w[1] if d == 2 else 0.0])
            shifts.append([row[0], row[1] if d == 2 else 0.0, row[d]])
        starts.append(starts[-1] + len(s))
    return (np.asarray(omegas, float).reshape(-1, 2), np.asarray(shifts, float).reshape(-1, 3),
            np.asarray(starts, np.int64))


def _phase_table(freqs: np.ndarray, nodes: np.ndarray) -> np.ndarray:
    return np.exp(2j * np.pi * np.outer(freqs, nodes))


def _split(n: int, workers: int) -> list[tuple[int, int]]:
    workers = max(1, min(workers, n))
    edges = np.linspace(0, n, workers + 1).round().astype(int)
    return [(int(a), int(b)) for a, b in zip(edges[:-1], edges[1:]) if b > a]


def _run(spec: FamilySpec, grid: GridSpec, rs, store: bool, workers: int):
    p = spec.params
    d = p.dim
    if grid.dim != d:
        raise ValueError("grid dimension does not match the family")
    rs = np.asarray(rs, float)
    modes = _kernels.reduction_modes(rs)
    omegas, shifts, starts = _pack(spec)
    n_groups = len(spec.frequencies)
    n1 = grid.n_x[0]
    n2 = grid.n_x[1] if d == 2 else 1
    x0 = np.array([grid.x_min[0], grid.x_min[1] if d == 2 else 0.0])
    tab1 = _phase_table(spec.frequencies[:, 0], grid.x_nodes(0))
    tab2 = _phase_table(spec.frequencies[:, 1], grid.x_nodes(1)) if d == 2 else np.ones((n_groups, 1), complex)
    t_nodes = grid.t_nodes()
    n_t = grid.n_t
    num = np.zeros((n_t, rs.size))
    den = np.zeros((n_t, n_groups, rs.size))
    out = np.zeros((n_t, n1, n2), complex) if store else np.zeros((1, 1, 1), complex)
    env = p.envelope
    args = (t_nodes, x0, grid.h_x, n1, n2, omegas, shifts, starts, tab1, tab2,
            complex(spec.amplitude), p.delta, d, env.m, env.norm_const, p.trunc, p.cutoff,
            rs, modes, num, den, out, store)

    def work(block):
        _kernels.family_slices(block[0], block[1], *args)

    blocks = _split(n_t, workers)
    if len(blocks) == 1:
        work(blocks[0])
    else:
        with ThreadPoolExecutor(max_workers=len(blocks)) as pool:
            list(pool.map(work, blocks))
    return num, den, out


def synthesize_field(spec: FamilySpec, grid: GridSpec | None = None, workers: int = 1) -> SampledField:
    grid = auto_grid(spec) if grid is None else grid
    _, _, out = _run(spec, grid, [2.0], True, workers)
    samples = out[:, :, 0] if spec.params.dim == 1 else out
    return SampledField(grid, samples)


def family_value(spec: FamilySpec, points, truncate: bool = True):
    """Direct pointwise sum of every wavepacket (no grid); a brute-force oracle.

    With ``truncate`` each packet is cut to its ``trunc``-dilated tube and to
    where its envelope exceeds the tail cutoff, as in synthesis.
    """
    p = spec.params
    pts = np.asarray(points, float)
    total = np.zeros(pts.shape[:-1], complex)
    wx, wt = tube_halfwidths(p.delta, p.dim, p.trunc)
    for packet in spec.packets():
        val = wavepacket_value(packet, pts)
        if truncate:
            rel = pts - packet.shift
            x = rel[..., :-1] + 2 * rel[..., -1:] * packet.omega
            inside = np.all(np.abs(x) <= wx, axis=-1) & (np.abs(rel[..., -1]) <= wt)
            inside &= envelope_value(packet, pts) > p.cutoff
            val = np.where(inside, val, 0)
        total += val
    return spec.amplitude * total


@dataclass(frozen=True)
class DecouplingSample:
    delta: float
    q: float
    r: float
    numerator: float
    denominator: float
    ratio: float


def ratios_for_spec(spec: FamilySpec, pairs, grid: GridSpec | None = None,
                    workers: int = 1) -> list[DecouplingSample]:
    """Numerator, denominator and ratio for each ``(q, r)`` in one synthesis pass."""
    pairs = [(check_exponent(q), check_exponent(r)) for q, r in pairs]
    grid = auto_grid(spec) if grid is None else grid
    rs = sorted({r for _, r in pairs})
    num, den, _ = _run(spec, grid, rs, False, workers)
    vol, h_t = grid.cell_volume_x, grid.h_t
    out = []
    for q, r in pairs:
        k = rs.index(r)
        top = outer_norm(inner_norms(num[:, k], r, vol), q, h_t)
        pieces = [outer_norm(inner_norms(den[:, g, k], r, vol), q, h_t)
                  for g in range(den.shape[1])]
        bottom = l2_aggregate(pieces)
        if bottom <= 0:
            raise ValueError("denominator vanished; grid misses every packet")
        out.append(DecouplingSample(spec.params.delta, q, r, top, bottom, top / bottom))
    return out


def decoupling_ratio(kind, params: FamilyParams, q, r, workers: int = 1) -> DecouplingSample:
    return ratios_for_spec(build_family(kind, params), [(q, r)], workers=workers)[0]


def decoupling_ratios(kind, params: FamilyParams, pairs, workers: int = 1) -> list[DecouplingSample]:
    return ratios_for_spec(build_family(kind, params), pairs, workers=workers)


def fit_exponent(samples) -> FitResult:
    samples = list(samples)
    if len(samples) < 2:
        raise ValueError("need at least two samples")
    xs = [math.log(1.0 / s.delta) for s in samples]
    ys = [math.log(s.ratio) for s in samples]
    return fit_line(xs, ys)
