"""Closed forms for the decoupling exponents of ``L^q_t L^r_x`` on the paraboloid.

Exponents ``q, r`` may be ints, ``Fraction``s, floats or ``math.inf``.  With
rational inputs every quantity is an exact ``Fraction``; ``1/inf`` is 0.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from enum import Enum
from fractions import Fraction
from numbers import Rational


class Case(str, Enum):
    IN_REGION = "InRegion"
    Q_LE_R = "CaseQleR"
    Q_GE_R = "CaseQgeR"


def _inv(x):
    if x == math.inf:
        return 0
    if isinstance(x, Rational):
        return Fraction(1) / Fraction(x)
    return 1.0 / x


def _check(q, r, d):
    for name, v in (("q", q), ("r", r)):
        if v != math.inf and v < 1:
            raise ValueError(f"{name} must be >= 1, got {v}")
    if int(d) != d or d < 1:
        raise ValueError("d must be a positive integer")


def critical_r(d: int) -> Fraction:
    return Fraction(2 * (d + 2), d)


def strichartz_value(q, r, d):
    """``2/q + d/r``; the region needs this to be at least ``d/2``."""
    return 2 * _inv(q) + d * _inv(r)


def in_region(q, r, d: int) -> bool:
    _check(q, r, d)
    return (q >= 2 and 2 <= r <= critical_r(d)
            and strichartz_value(q, r, d) >= Fraction(d, 2))


def lower_bound_terms(q, r, d: int) -> tuple:
    """The four lower-bound exponents, one per extremizer family.

    Order: bush, space-separated, time-separated, tuned bush.
    """
    _check(q, r, d)
    iq, ir = _inv(q), _inv(r)
    half = Fraction(d, 2)
    return (
        half - d * ir - 2 * iq,
        d * (ir - Fraction(1, 2)),
        d * (iq - Fraction(1, 2)),
        half - (d + 2) * ir,
    )


def lower_bound_exponent(q, r, d: int):
    return max(*lower_bound_terms(q, r, d), 0)


def _branch_qler(q, r, d):
    return Fraction(d, 2) - (d + 2) * _inv(r)


def _branch_qger(q, r, d):
    return Fraction(d, 2) - d * _inv(r) - 2 * _inv(q)


def applicable_cases(q, r, d: int) -> list[Case]:
    """Every case whose defining conditions hold, in tie-break order."""
    out = []
    if in_region(q, r, d):
        out.append(Case.IN_REGION)
    if q <= r and r >= critical_r(d):
        out.append(Case.Q_LE_R)
    if q >= r and strichartz_value(q, r, d) <= Fraction(d, 2):
        out.append(Case.Q_GE_R)
    return out


def case_value(case: Case, q, r, d: int):
    if case is Case.IN_REGION:
        return 0
    if case is Case.Q_LE_R:
        return _branch_qler(q, r, d)
    return _branch_qger(q, r, d)


def classify_case(q, r, d: int) -> Case:
    _check(q, r, d)
    if q < 2 or r < 2:
        raise ValueError("cases are defined for q, r >= 2")
    cases = applicable_cases(q, r, d)
    if not cases:  # pragma: no cover - exhaustive for q, r >= 2
        raise AssertionError(f"no case applies to (q, r, d) = {(q, r, d)}")
    return cases[0]


def sharp_exponent(q, r, d: int):
    _check(q, r, d)
    if q < 2 or r < 2:
        raise ValueError("sharp exponent needs q, r >= 2")
    return case_value(classify_case(q, r, d), q, r, d)


def discres_bounds(q, r, d: int):
    """Proven growth exponent in ``N`` for normalized torus exponential sums.

    0 inside the region, ``2/d`` at ``(q, r) = (2, 2d/(d-2))`` for ``d >= 3``,
    ``None`` where nothing is claimed.
    """
    _check(q, r, d)
    if in_region(q, r, d):
        return 0
    if d >= 3 and q == 2:
        special = Fraction(2 * d, d - 2)
        exact = isinstance(r, Rational)
        if (r == special) if exact else math.isclose(r, float(special), rel_tol=1e-12):
            return Fraction(2, d)
    return None


@dataclass(frozen=True)
class ExponentReport:
    q: object
    r: object
    d: int
    in_region: bool
    lower_bound: object
    sharp: object | None
    case: Case | None

    def as_dict(self) -> dict:
        def num(v):
            return None if v is None else float(v)

        return {
            "d": self.d,
            "q": float(self.q),
            "r": float(self.r),
            "in_region": self.in_region,
            "lower_bound": num(self.lower_bound),
            "sharp": num(self.sharp),
            "case": None if self.case is None else self.case.value,
        }


def classify(q, r, d: int) -> ExponentReport:
    _check(q, r, d)
    region = in_region(q, r, d)
    lower = lower_bound_exponent(q, r, d)
    if q >= 2 and r >= 2:
        case = classify_case(q, r, d)
        sharp = case_value(case, q, r, d)
    else:
        case, sharp = None, None
    return ExponentReport(q=q, r=r, d=d, in_region=region, lower_bound=lower,
                          sharp=sharp, case=case)
