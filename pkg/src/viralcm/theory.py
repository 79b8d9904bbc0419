"""Analytic predictions: roots of H and H-bar, component fractions, extinction."""

from __future__ import annotations

import math
import warnings
from dataclasses import asdict, dataclass

import numpy as np

from .degree_model import (
    JointDegreeDistribution,
    NearCriticalWarning,
    Regime,
    H_bar,
    H_forward,
    criticality,
    criticality_margin,
    g_bar,
    pgf_g,
    size_biased,
)

DEFAULT_TOL = 1e-10
BRACKET = (1e-12, 1.0 - 1e-12)
MAX_BISECTIONS = 200
NEAR_CRITICAL_BAND = 1e-9
MAX_FIXED_POINT_ITERS = 10**6


class NotSupercritical(ValueError):
    pass


class NoSignChange(RuntimeError):
    pass


class NoConvergence(RuntimeError):
    pass


@dataclass(frozen=True)
class TheoryPrediction:
    xi: float
    xi_bar: float
    tau: float
    tau_bar: float
    influenced_fraction: float
    pioneer_fraction: float
    p_ext_tilde: float
    p_ext: float

    def as_dict(self) -> dict:
        return asdict(self)


def _require_supercritical(dist: JointDegreeDistribution) -> None:
    if criticality(dist) is not Regime.SUPERCRITICAL:
        raise NotSupercritical("E[D_t D] <= E[D_t + D]: no big component is predicted")
    margin = criticality_margin(dist)
    if margin < NEAR_CRITICAL_BAND:
        warnings.warn(
            f"criticality margin {margin:.3g} is inside the near-critical band; refusing to solve",
            NearCriticalWarning,
            stacklevel=3,
        )
        raise NotSupercritical(f"near-critical law (margin {margin:.3g})")


def _bisect(fn, tol: float) -> float:
    lo, hi = BRACKET
    f_lo, f_hi = fn(lo), fn(hi)
    if not (f_lo < 0.0 < f_hi):
        raise NoSignChange(f"no sign change on [{lo:g}, {hi:g}] (f = {f_lo:.3g}, {f_hi:.3g})")
    for _ in range(MAX_BISECTIONS):
        if hi - lo <= tol:
            break
        mid = 0.5 * (lo + hi)
        if fn(mid) < 0.0:
            lo = mid
        else:
            hi = mid
    return 0.5 * (lo + hi)


def solve_xi(dist: JointDegreeDistribution, tol: float = DEFAULT_TOL) -> float:
    """Unique root of H in (0, 1); H < 0 below it and H > 0 above it."""
    _require_supercritical(dist)
    return _bisect(lambda x: H_forward(dist, x), tol)


def solve_xi_bar(dist: JointDegreeDistribution, tol: float = DEFAULT_TOL) -> float:
    """Unique root of H-bar in (0, 1)."""
    _require_supercritical(dist)
    return _bisect(lambda x: H_bar(dist, x), tol)


def branching_extinction(dist: JointDegreeDistribution, tol: float = DEFAULT_TOL) -> tuple[float, float]:
    """Extinction probabilities of the two-stage branching approximation.

    Returns ``(p_ext_tilde, p_ext)``: the smallest fixed point of the
    size-biased transmitter pgf (offspring of non-root vertices), and the
    root's extinction probability ``E[p_ext_tilde ** D_t]``.
    """
    tilde = size_biased(dist).transmitter_marginal()
    powers = np.arange(tilde.size)
    mean = float((powers * tilde).sum())
    deterministic = np.count_nonzero(tilde) == 1
    if mean < 1.0 - 1e-12 or (abs(mean - 1.0) <= 1e-12 and not deterministic):
        return 1.0, 1.0

    # the iterates rise monotonically to the root, so step / (1 - slope) bounds the remaining error
    slope_coef = powers[1:] * tilde[1:]
    x = 0.0
    for _ in range(MAX_FIXED_POINT_ITERS):
        nxt = float((tilde * x**powers).sum())
        slope = float((slope_coef * nxt ** powers[:-1]).sum())
        if abs(nxt - x) <= tol * max(1.0 - slope, 0.0):
            x = nxt
            break
        x = nxt
    else:
        raise NoConvergence(f"fixed-point iteration did not settle to {tol:g}")
    return x, float(g_bar(dist, x))


def predict(dist: JointDegreeDistribution, tol: float = DEFAULT_TOL) -> TheoryPrediction:
    xi = solve_xi(dist, tol)
    xi_bar = solve_xi_bar(dist, tol)
    p_tilde, p_ext = branching_extinction(dist, tol)
    return TheoryPrediction(
        xi=xi,
        xi_bar=xi_bar,
        tau=-math.log(xi),
        tau_bar=-math.log(xi_bar),
        influenced_fraction=1.0 - float(pgf_g(dist, xi, xi)),
        pioneer_fraction=1.0 - float(g_bar(dist, xi_bar)),
        p_ext_tilde=p_tilde,
        p_ext=p_ext,
    )
