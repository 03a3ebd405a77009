"""Least-squares slopes of log-log scaling ladders."""
from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np


@dataclass(frozen=True)
class FitResult:
    slope: float
    intercept: float
    max_residual: float
    points: list = field(default_factory=list)


def fit_line(xs, ys) -> FitResult:
    x = np.asarray(xs, float)
    y = np.asarray(ys, float)
    if x.size < 2:
        raise ValueError("need at least two points to fit a slope")
    if np.unique(x).size != x.size:
        raise ValueError("abscissae must be distinct")
    design = np.stack([x, np.ones_like(x)], axis=1)
    (slope, intercept), *_ = np.linalg.lstsq(design, y, rcond=None)
    resid = y - (slope * x + intercept)
    return FitResult(float(slope), float(intercept), float(np.max(np.abs(resid))),
                     list(zip(x.tolist(), y.tolist())))
