"""Fast invariant suites behind ``mixdec selftest``.

Each check returns ``True`` on success.  Checks are small enough to finish in
seconds; the long scaling experiments live in the acceptance tests.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, replace
from fractions import Fraction

import numpy as np

from . import exponents as ex
from .envelope import EnvelopeParams, WavepacketSpec, envelope_value, phi, wavepacket_value
from .expsum import direct_sum, expsum_ratio, make_coefficients, synthesize_expsum, torus_grid
from .families import FamilyParams, build_family, ratios_for_spec, synthesize_field, family_value
from .geometry import (Cap, ShearMap, TunedLattice, build_net, cap_contains, min_separation,
                       shear_apply, tuned_ball_membership, tuned_tubes_pairwise_disjoint)
from .mixed_norm import GridSpec, SampledField, homogeneity_check, mixed_norm


@dataclass(frozen=True)
class SelfTestConfig:
    m: int = 4
    h_x: float = 0.125
    h_t: float | None = None
    trunc: float = 8.0
    cutoff: float = 1e-8
    seed: int = 0


def _geometry(cfg):
    rng = np.random.default_rng(cfg.seed)

    def net_separation():
        return all(min_separation(build_net(dl, d).points) >= dl - 1e-12
                   for dl in (1 / 2, 1 / 4, 1 / 8, 1 / 16) for d in (1, 2))

    def shear_group_law():
        w = rng.uniform(-1, 1, 2)
        pts = rng.normal(size=(1000, 3)) * 100
        sm = ShearMap(w)
        a = shear_apply(sm, shear_apply(sm, pts, "forward"), "inverse")
        b = shear_apply(sm, shear_apply(sm, pts, "transpose"), "inverse_transpose")
        return np.max(np.abs(a - pts)) < 1e-12 and np.max(np.abs(b - pts)) < 1e-12

    def cap_holds_paraboloid_piece():
        delta = 0.1
        for _ in range(1000):
            w = rng.uniform(-1, 1 - delta, 2)
            xi = w + rng.uniform(0, delta, 2)
            eta = xi @ xi + rng.uniform(-delta**2, delta**2)
            if not cap_contains(Cap(w, delta), xi, eta):
                return False
        return True

    def tuned_tubes_small_delta():
        # disjointness at M = delta^{-1/4} needs delta^{-1/4} > 2; 1/32 is the first dyadic scale
        delta = 1 / 32
        dil = delta ** -0.25
        lat = TunedLattice(delta, 1)
        for w in build_net(delta, 1).points:
            own, foreign = tuned_ball_membership(lat, w, dil)
            if not (own and not foreign and tuned_tubes_pairwise_disjoint(lat, w, dil)):
                return False
        return True

    return [("net_separation", net_separation), ("shear_group_law", shear_group_law),
            ("cap_holds_paraboloid_piece", cap_holds_paraboloid_piece),
            ("tuned_tubes_small_delta", tuned_tubes_small_delta)]


def _envelope(cfg):
    params = EnvelopeParams(cfg.m)

    def majorant():
        t = np.linspace(-1, 1, 10_001)
        return float(phi(t, params).min()) >= 1 - 1e-12

    def evenness():
        t = np.linspace(0, 200, 4001)
        return np.array_equal(phi(t, params), phi(-t, params))

    def unimodular_phase():
        rng = np.random.default_rng(cfg.seed)
        spec = WavepacketSpec(rng.uniform(-1, 1, 1), 0.25, rng.normal(size=2), params)
        pts = rng.normal(size=(1000, 2)) * 20
        return np.allclose(np.abs(wavepacket_value(spec, pts)), envelope_value(spec, pts),
                           rtol=1e-12, atol=0)

    return [("majorant", majorant), ("evenness", evenness), ("unimodular_phase", unimodular_phase)]


def _mixed_norm(cfg):
    rng = np.random.default_rng(cfg.seed)
    grid = GridSpec((0.0,), (1.0,), 0.0, 1.0, 1 / 16, 1 / 16)

    def homogeneity():
        f = SampledField(grid, rng.normal(size=grid.shape) + 1j * rng.normal(size=grid.shape))
        pairs = [(1, 1), (2, 3), (math.inf, 4), (3, math.inf)]
        return all(math.isclose(*homogeneity_check(f, q, r, 2 - 3j), rel_tol=1e-12)
                   for q, r in pairs)

    def gaussian():
        g = GridSpec((-8.0,), (8.0,), -8.0, 8.0, 1 / 16, 1 / 16)
        x, t = np.meshgrid(g.x_nodes(), g.t_nodes())
        f = SampledField(g, np.exp(-np.pi * (x**2 + t**2)))
        return math.isclose(mixed_norm(f, 2, 2), 2**-0.5, rel_tol=1e-3)

    return [("homogeneity", homogeneity), ("gaussian", gaussian)]


def _exponents(cfg):
    def corners():
        pts = [(1, 6, 6), (1, 2, 6), (1, 2, 2), (2, 4, 4)]
        pts += [(d, 2, Fraction(2 * (d + 2), d)) for d in range(3, 8)]
        return all(ex.in_region(q, r, d) and ex.sharp_exponent(q, r, d) == 0 for d, q, r in pts)

    def dominance():
        rng = np.random.default_rng(cfg.seed)
        for _ in range(2000):
            d = int(rng.integers(1, 6))
            q, r = 2 / rng.uniform(0, 1), 2 / rng.uniform(0, 1)
            if ex.lower_bound_exponent(q, r, d) > ex.sharp_exponent(q, r, d) + 1e-12:
                return False
        return True

    return [("figure_corners", corners), ("dominance", dominance)]


def _expsum(cfg):
    def direct_agreement():
        c = make_coefficients(8, 1, "random", cfg.seed)
        f = synthesize_expsum(c, torus_grid(32, 512))
        rng = np.random.default_rng(cfg.seed)
        it, ix = rng.integers(0, 512, 100), rng.integers(0, 32, 100)
        pts = np.stack([f.grid.x_nodes()[ix], f.grid.t_nodes()[it]], -1)
        ref = direct_sum(c, pts)
        return np.max(np.abs(f.samples[it, ix] - ref)) <= 1e-10 * np.max(np.abs(ref))

    return [("direct_agreement", direct_agreement)]


def _family_params(cfg, delta):
    return FamilyParams(delta=delta, envelope=EnvelopeParams(cfg.m), h_x=cfg.h_x, h_t=cfg.h_t,
                        trunc=cfg.trunc, cutoff=cfg.cutoff)


def _l2_packet_norm(delta, d, params):
    # ||f_omega||_2^2 = (2d delta^2)^{-1} delta^{-d} (int phi^2)^{d+1}, phi^2 integrated on a fine grid
    u = np.linspace(-4 * params.m, 4 * params.m, 200_001)
    int_phi2 = float(np.sum(phi(u, params) ** 2) * (u[1] - u[0]))
    return math.sqrt(int_phi2 ** (d + 1) / (2 * d * delta**2 * delta**d))


def _parseval(cfg):
    def expsum_parseval():
        c = make_coefficients(16, 1, "random", cfg.seed)
        return all(abs(expsum_ratio(c, q, 2).ratio - 1) <= 1e-9 for q in (2, math.inf))

    def family_plancherel():
        params = _family_params(cfg, 0.25)
        spec = build_family("bush", params)
        s = ratios_for_spec(spec, [(2, 2)])[0]
        expected = _l2_packet_norm(0.25, 1, params.envelope) * math.sqrt(len(spec.frequencies))
        return (abs(s.ratio - 1) <= 1e-6 and abs(s.denominator / expected - 1) <= 1e-4)

    return [("expsum_parseval", expsum_parseval), ("family_plancherel", family_plancherel)]


def _families(cfg):
    def synthesis_matches_direct():
        spec = build_family("tunedbush", _family_params(cfg, 0.25))
        f = synthesize_field(spec)
        rng = np.random.default_rng(cfg.seed)
        it, ix = rng.integers(0, f.grid.n_t, 200), rng.integers(0, f.grid.n_x[0], 200)
        pts = np.stack([f.grid.x_nodes()[ix], f.grid.t_nodes()[it]], -1)
        return np.max(np.abs(f.samples[it, ix] - family_value(spec, pts))) < 1e-9

    def scale_invariance():
        spec = build_family("bush", _family_params(cfg, 0.25))
        a = ratios_for_spec(spec, [(4, 6)])[0].ratio
        b = ratios_for_spec(spec.scaled(3 - 1j), [(4, 6)])[0].ratio
        return math.isclose(a, b, rel_tol=1e-10)

    def single_frequency():
        params = replace(_family_params(cfg, 0.25), net="origin")
        return math.isclose(ratios_for_spec(build_family("bush", params), [(3, 5)])[0].ratio,
                            1.0, rel_tol=1e-12)

    return [("synthesis_matches_direct", synthesis_matches_direct),
            ("scale_invariance", scale_invariance), ("single_frequency", single_frequency)]


SUITES = {
    "geometry": _geometry,
    "envelope": _envelope,
    "mixed_norm": _mixed_norm,
    "exponents": _exponents,
    "expsum": _expsum,
    "parseval": _parseval,
    "families": _families,
}


def run_suites(names=None, cfg: SelfTestConfig = SelfTestConfig()) -> dict[str, list[tuple[str, bool]]]:
    names = list(SUITES) if not names else list(names)
    unknown = [n for n in names if n not in SUITES]
    if unknown:
        raise ValueError(f"unknown suite(s) {unknown}; choose from {sorted(SUITES)}")
    results = {}
    for name in names:
        outcomes = []
        for check, fn in SUITES[name](cfg):
            try:
                ok = bool(fn())
            except Exception:  # a crashing check is a failed check
                ok = False
            outcomes.append((check, ok))
        results[name] = outcomes
    return results
