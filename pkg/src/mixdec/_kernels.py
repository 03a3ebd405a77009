"""Compiled slice kernel for wavepacket-family synthesis.

The kernel always works with two spatial axes; a 1-d problem passes a second
axis of length one.  Each call owns a contiguous block of time slices and
writes only to those rows of the outputs, so blocks can run on any number of
threads and produce identical bits.
"""
from __future__ import annotations

import math

import numba as nb
import numpy as np

_SERIES = 1e-4
_BLOCK = 256


@nb.njit(cache=True, inline="always")
def _phi(u, m, cm):
    z = math.pi * u / (2 * m)
    if abs(z) < _SERIES:
        z2 = z * z
        s = 1.0 - z2 / 6.0 + z2 * z2 / 120.0
    else:
        s = math.sin(z) / z
    return cm * s ** (2 * m)


@nb.njit(cache=True, inline="always")
def _ipow(x, k):
    out = 1.0
    while k:
        if k & 1:
            out *= x
        x *= x
        k >>= 1
    return out


@nb.njit(cache=True)
def _fill_profile(prof, a, b, u0, du, m, cm, scale):
    """``prof[i] = scale * phi(u0 + (i - a) du)`` for ``a <= i < b``.

    ``sin`` along the arithmetic progression comes from a rotation recurrence,
    re-seeded every 512 steps to bound round-off drift.
    """
    k = 2 * m
    alpha = math.pi * du / k
    ca = math.cos(alpha)
    sa = math.sin(alpha)
    amp = scale * cm
    sn = 0.0
    cs = 1.0
    for i in range(a, b):
        step = i - a
        z = math.pi * (u0 + step * du) / k
        if step % 512 == 0:
            sn = math.sin(z)
            cs = math.cos(z)
        if abs(z) < _SERIES:
            z2 = z * z
            v = 1.0 - z2 / 6.0 + z2 * z2 / 120.0
        else:
            v = sn / z
        prof[i] = amp * _ipow(v, k)
        sn, cs = sn * ca + cs * sa, cs * ca - sn * sa


@nb.njit(cache=True, inline="always")
def _power(a2, r, mode):
    # a2 = |f|^2; mode 0: r == 2, 1: even integer r, 2: general r
    if mode == 0:
        return a2
    if mode == 1:
        return a2 ** int(r // 2)
    return a2 ** (0.5 * r)


@nb.njit(cache=True)
def _reduce(buf, lo1, hi1, lo2, hi2, r, mode, scratch):
    """Fixed-order reduction of ``|buf|^r`` (or max) over a window.

    Values are summed in blocks of ``_BLOCK`` and the block sums are combined
    pairwise.
    """
    if mode == 3:
        top = 0.0
        for i in range(lo1, hi1):
            for j in range(lo2, hi2):
                v = buf[i, j]
                a = math.sqrt(v.real * v.real + v.imag * v.imag)
                if a > top:
                    top = a
        return top
    nb_blocks = 0
    acc = 0.0
    count = 0
    for i in range(lo1, hi1):
        for j in range(lo2, hi2):
            v = buf[i, j]
            acc += _power(v.real * v.real + v.imag * v.imag, r, mode)
            count += 1
            if count == _BLOCK:
                scratch[nb_blocks] = acc
                nb_blocks += 1
                acc = 0.0
                count = 0
    if count:
        scratch[nb_blocks] = acc
        nb_blocks += 1
    n = nb_blocks
    while n > 1:
        half = n // 2
        for k in range(half):
            scratch[k] = scratch[2 * k] + scratch[2 * k + 1]
        if n % 2:
            scratch[half] = scratch[n - 1]
            n = half + 1
        else:
            n = half
    return scratch[0] if nb_blocks else 0.0


@nb.njit(cache=True, nogil=True)
def family_slices(s0, s1, t_nodes, x0, hx, n1, n2,
                  omegas, shifts, group_start, tab1, tab2, amplitude,
                  delta, d, m, cm, trunc, cutoff,
                  rs, modes, num_out, den_out, field_out, store):
    """Synthesize time slices ``s0 <= s < s1`` and reduce them.

    omegas: (P, 2) frequencies, shifts: (P, 3) as (x1, x2, t); packets sorted
    by group, group g spanning ``group_start[g]:group_start[g+1]``.
    tab1/tab2: (G, n1) / (G, n2) spatial phases ``e(omega_i x_j)``.
    num_out[s, k]: reduction of the full sum for exponent ``rs[k]``;
    den_out[s, g, k]: the same for group ``g`` alone.
    """
    n_groups = group_start.size - 1
    n_r = rs.size
    total = np.zeros((n1, n2), dtype=np.complex128)
    part = np.zeros((n1, n2), dtype=np.complex128)
    prof1 = np.empty(n1)
    prof2 = np.empty(n2)
    scratch = np.empty(n1 * n2 // _BLOCK + 2)
    half_x = trunc / delta
    half_t = trunc / (2.0 * d * delta * delta)
    peak_x = cm ** d
    for s in range(s0, s1):
        t = t_nodes[s]
        total[:, :] = 0.0
        for g in range(n_groups):
            lo1, hi1, lo2, hi2 = n1, 0, n2, 0
            for p in range(group_start[g], group_start[g + 1]):
                tt = t - shifts[p, 2]
                if abs(tt) > half_t:
                    continue
                at = _phi(2.0 * d * delta * delta * tt, m, cm)
                if at * peak_x <= cutoff:
                    continue
                w1 = omegas[p, 0]
                w2 = omegas[p, 1]
                arg = -(w1 * shifts[p, 0] + w2 * shifts[p, 1]) + (w1 * w1 + w2 * w2) * tt
                arg -= math.floor(arg)
                ph = amplitude * complex(math.cos(2 * math.pi * arg), math.sin(2 * math.pi * arg))
                # axis 1 window: |x - c| <= half_x around the sheared centre
                c1 = shifts[p, 0] - 2.0 * w1 * tt
                a1 = max(int(math.ceil((c1 - half_x - x0[0]) / hx - 0.5)), 0)
                b1 = min(int(math.floor((c1 + half_x - x0[0]) / hx - 0.5)) + 1, n1)
                if a1 >= b1:
                    continue
                if d == 1:
                    a2, b2 = 0, 1
                    prof2[0] = 1.0
                else:
                    c2 = shifts[p, 1] - 2.0 * w2 * tt
                    a2 = max(int(math.ceil((c2 - half_x - x0[1]) / hx - 0.5)), 0)
                    b2 = min(int(math.floor((c2 + half_x - x0[1]) / hx - 0.5)) + 1, n2)
                    if a2 >= b2:
                        continue
                    _fill_profile(prof2, a2, b2, delta * (x0[1] + (a2 + 0.5) * hx - c2),
                                  delta * hx, m, cm, 1.0)
                _fill_profile(prof1, a1, b1, delta * (x0[0] + (a1 + 0.5) * hx - c1),
                              delta * hx, m, cm, at)
                for i in range(a1, b1):
                    base = ph * tab1[g, i]
                    for j in range(a2, b2):
                        v = prof1[i] * prof2[j]
                        if v > cutoff:
                            part[i, j] += base * tab2[g, j] * v
                lo1 = min(lo1, a1)
                hi1 = max(hi1, b1)
                lo2 = min(lo2, a2)
                hi2 = max(hi2, b2)
            if lo1 >= hi1:
                for k in range(n_r):
                    den_out[s, g, k] = 0.0
                continue
            for k in range(n_r):
                den_out[s, g, k] = _reduce(part, lo1, hi1, lo2, hi2, rs[k], modes[k], scratch)
            for i in range(lo1, hi1):
                for j in range(lo2, hi2):
                    total[i, j] += part[i, j]
                    part[i, j] = 0.0
        for k in range(n_r):
            num_out[s, k] = _reduce(total, 0, n1, 0, n2, rs[k], modes[k], scratch)
        if store:
            field_out[s, :, :] = total


def reduction_modes(rs) -> np.ndarray:
    modes = []
    for r in rs:
        if math.isinf(r):
            modes.append(3)
        elif r == 2:
            modes.append(0)
        elif float(r).is_integer() and int(r) % 2 == 0:
            modes.append(1)
        else:
            modes.append(2)
    return np.asarray(modes, dtype=np.int64)
