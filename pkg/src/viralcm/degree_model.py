"""Joint (receiver, transmitter) degree laws and their generating functions.

A distribution is a finite table of probabilities ``p[k, l]`` where ``k`` is
the receiver degree and ``l`` the transmitter degree of a typical vertex.
All sums are evaluated directly over the support, ordered by total degree.
"""

from __future__ import annotations

import enum
import math
import warnings
from dataclasses import dataclass
from typing import Iterable, Mapping

import numpy as np
from scipy.stats import poisson

PROB_ATOL = 1e-12
TRUNCATION_BUDGET = 1e-9
NEAR_CRITICAL_ATOL = 1e-12


class DistributionError(ValueError):
    """Invalid degree table or truncation."""


class ConditionViolation(DistributionError):
    """The law puts no mass on total degree one, which the theory requires."""


class NearCriticalWarning(UserWarning):
    pass


class Regime(enum.Enum):
    SUPERCRITICAL = "Supercritical"
    SUB_OR_CRITICAL = "SubOrCritical"


@dataclass(frozen=True)
class MomentSummary:
    lambda_r: float
    lambda_t: float
    lam: float
    e_dt_d: float
    e_d2: float
    p_d1: float

    def as_dict(self) -> dict:
        return {
            "lambda_r": self.lambda_r,
            "lambda_t": self.lambda_t,
            "lambda": self.lam,
            "e_dt_d": self.e_dt_d,
            "e_d2": self.e_d2,
            "p_d1": self.p_d1,
        }


@dataclass(frozen=True, eq=False)
class JointDegreeDistribution:
    """Finite-support joint pmf of (receiver degree k, transmitter degree l).

    Build instances with :func:`make_from_table` or :func:`make_thinned_poisson`;
    the arrays are sorted by ``k + l`` then ``k`` and hold only positive mass.
    """

    k: np.ndarray
    l: np.ndarray
    p: np.ndarray

    def __post_init__(self):
        for arr in (self.k, self.l, self.p):
            arr.setflags(write=False)

    @property
    def support_bound(self) -> int:
        return int((self.k + self.l).max())

    @property
    def p_d1(self) -> float:
        return float(self.p[(self.k + self.l) == 1].sum())

    @property
    def satisfies_degree_one(self) -> bool:
        return self.p_d1 > 0.0

    def items(self) -> list[tuple[tuple[int, int], float]]:
        return [((int(a), int(b)), float(c)) for a, b, c in zip(self.k, self.l, self.p)]

    def as_dict(self) -> dict[tuple[int, int], float]:
        return dict(self.items())

    def prob(self, k: int, l: int) -> float:
        hit = (self.k == k) & (self.l == l)
        return float(self.p[hit].sum())

    def transmitter_marginal(self) -> np.ndarray:
        """``out[l] = P(D_t = l)``."""
        out = np.zeros(int(self.l.max()) + 1)
        np.add.at(out, self.l, self.p)
        return out

    def top_cells(self, count: int) -> list[tuple[int, int]]:
        # stable sort keeps the (k+l, k) order among ties
        order = np.argsort(-self.p, kind="stable")[:count]
        return [(int(self.k[i]), int(self.l[i])) for i in order]

    def __repr__(self) -> str:
        return f"JointDegreeDistribution(cells={self.p.size}, support_bound={self.support_bound})"


def _build(cells: Mapping[tuple[int, int], float], positive_mean: bool = True) -> JointDegreeDistribution:
    keys = sorted((kl for kl, pr in cells.items() if pr > 0.0), key=lambda kl: (kl[0] + kl[1], kl[0]))
    if not keys:
        raise DistributionError("degree table has no positive mass")
    k = np.array([kl[0] for kl in keys], dtype=np.int64)
    l = np.array([kl[1] for kl in keys], dtype=np.int64)
    p = np.array([cells[kl] for kl in keys], dtype=float)
    p = p / p.sum()
    if abs(p.sum() - 1.0) > PROB_ATOL:
        raise DistributionError("probabilities do not normalise")
    if positive_mean and float(((k + l) * p).sum()) <= 0.0:
        raise DistributionError("mean total degree must be positive")
    return JointDegreeDistribution(k, l, p)


def make_from_table(entries: Mapping[tuple[int, int], float] | Iterable[Iterable[float]]) -> JointDegreeDistribution:
    """Validate and normalise a table given as ``{(k, l): p}`` or ``[[k, l, p], ...]`` rows."""
    cells: dict[tuple[int, int], float] = {}
    rows = entries.items() if isinstance(entries, Mapping) else ((tuple(r[:2]), r[2]) for r in map(list, entries))
    for key, pr in rows:
        if len(key) != 2:
            raise DistributionError(f"bad cell {key!r}")
        k, l = key
        if int(k) != k or int(l) != l or k < 0 or l < 0:
            raise DistributionError(f"degrees must be non-negative integers, got {key!r}")
        pr = float(pr)
        if not math.isfinite(pr) or pr < 0.0:
            raise DistributionError(f"probability for {key!r} must be finite and >= 0, got {pr}")
        cells[(int(k), int(l))] = cells.get((int(k), int(l)), 0.0) + pr
    total = sum(cells.values())
    if total <= 0.0:
        raise DistributionError("degree table has no positive mass")
    if abs(total - 1.0) > 1e-6:
        raise DistributionError(f"probabilities sum to {total}, expected 1")
    return _build(cells)


def make_thinned_poisson(mu: float, q: float, cutoff: int) -> JointDegreeDistribution:
    """Total degree Poisson(mu), each half-edge a transmitter independently with probability q.

    Equivalently receiver ~ Poisson(mu (1-q)) independent of transmitter ~ Poisson(mu q),
    truncated to ``k + l <= cutoff`` and renormalised.
    """
    if not mu > 0:
        raise DistributionError("mu must be positive")
    if not 0.0 <= q <= 1.0:
        raise DistributionError("q must lie in [0, 1]")
    cutoff = int(cutoff)
    degs = np.arange(cutoff + 1)
    pr = poisson.pmf(degs, mu * (1.0 - q))
    pt = poisson.pmf(degs, mu * q)
    cells = {}
    kept = 0.0
    for total in range(cutoff + 1):
        for k in range(total + 1):
            v = float(pr[k] * pt[total - k])
            kept += v
            cells[(k, total - k)] = v
    discarded = 1.0 - kept
    if discarded > TRUNCATION_BUDGET:
        raise DistributionError(
            f"cutoff {cutoff} discards mass {discarded:.3g} > {TRUNCATION_BUDGET:g}; raise the cutoff"
        )
    return _build(cells)


def from_spec(spec: Mapping) -> JointDegreeDistribution:
    """Build from a config mapping: ``family = "thinned_poisson"`` or ``family = "table"``."""
    family = spec.get("family")
    if family == "thinned_poisson":
        try:
            return make_thinned_poisson(float(spec["mu"]), float(spec["q"]), int(spec.get("cutoff", 30)))
        except KeyError as exc:
            raise DistributionError(f"thinned_poisson needs key {exc.args[0]!r}") from None
    if family == "table":
        rows = spec.get("rows")
        if not rows:
            raise DistributionError("table family needs non-empty 'rows' of [k, l, p]")
        return make_from_table(rows)
    raise DistributionError(f"unknown distribution family {family!r}")


def moments(dist: JointDegreeDistribution) -> MomentSummary:
    k, l, p = dist.k, dist.l, dist.p
    d = k + l
    lambda_r = float((k * p).sum())
    lambda_t = float((l * p).sum())
    return MomentSummary(
        lambda_r=lambda_r,
        lambda_t=lambda_t,
        lam=lambda_r + lambda_t,
        e_dt_d=float((l * d * p).sum()),
        e_d2=float((d * d * p).sum()),
        p_d1=dist.p_d1,
    )


def _unit(x, name="x"):
    arr = np.asarray(x, dtype=float)
    if np.any(~np.isfinite(arr)) or np.any(arr < 0.0) or np.any(arr > 1.0):
        raise ValueError(f"{name} must lie in [0, 1]")
    return arr


def _powsum(weights: np.ndarray, base: np.ndarray, expo: np.ndarray):
    # sum_i weights[i] * base**expo[i]; weights sharing an exponent are pooled first
    coef = np.bincount(expo, weights=weights)
    vals = (coef * np.power(base[..., None], np.arange(coef.size))).sum(axis=-1)
    return vals if vals.ndim else float(vals)


def pgf_g(dist: JointDegreeDistribution, x, y):
    """E[x^{D_r} y^{D_t}]."""
    x = _unit(x, "x")
    y = _unit(y, "y")
    x, y = np.broadcast_arrays(x, y)
    vals = (dist.p * np.power(x[..., None], dist.k) * np.power(y[..., None], dist.l)).sum(axis=-1)
    return vals if vals.ndim else float(vals)


def h_forward(dist: JointDegreeDistribution, x):
    """E[D_t x^D]."""
    return _powsum(dist.l * dist.p, _unit(x), dist.k + dist.l)


def H_forward(dist: JointDegreeDistribution, x):
    m = moments(dist)
    x = _unit(x)
    return m.lam * x * x - m.lambda_r * x - h_forward(dist, x)


def g_bar(dist: JointDegreeDistribution, x):
    """E[x^{D_t}]."""
    return _powsum(dist.p, _unit(x), dist.l)


def h_bar(dist: JointDegreeDistribution, x):
    """E[D_t x^{D_t}] + x E[D_r x^{D_t}]."""
    x = _unit(x)
    return _powsum(dist.l * dist.p, x, dist.l) + x * _powsum(dist.k * dist.p, x, dist.l)


def H_bar(dist: JointDegreeDistribution, x):
    x = _unit(x)
    return moments(dist).lam * x * x - h_bar(dist, x)


def size_biased(dist: JointDegreeDistribution) -> JointDegreeDistribution:
    """Law of (receiver, transmitter) degrees of a vertex reached along an edge, parent stub removed."""
    lam = moments(dist).lam
    if lam <= 0.0:
        raise DistributionError("size-biasing needs a positive mean degree")
    cells: dict[tuple[int, int], float] = {}
    for (k, l), pr in dist.items():
        if k > 0:
            cells[(k - 1, l)] = cells.get((k - 1, l), 0.0) + k * pr / lam
        if l > 0:
            cells[(k, l - 1)] = cells.get((k, l - 1), 0.0) + l * pr / lam
    # the size-biased law may legitimately put all mass on (0, 0)
    return _build(cells, positive_mean=False)


def criticality_margin(dist: JointDegreeDistribution) -> float:
    """E[D_t D] - E[D_t + D]; positive exactly in the supercritical regime."""
    m = moments(dist)
    return m.e_dt_d - (m.lambda_t + m.lam)


def criticality(dist: JointDegreeDistribution) -> Regime:
    if not dist.satisfies_degree_one:
        raise ConditionViolation("P(D = 1) = 0: the law violates the degree-one condition")
    margin = criticality_margin(dist)
    if abs(margin) <= NEAR_CRITICAL_ATOL:
        warnings.warn(f"near-critical law (margin {margin:.3g})", NearCriticalWarning, stacklevel=2)
        return Regime.SUB_OR_CRITICAL
    return Regime.SUPERCRITICAL if margin > 0.0 else Regime.SUB_OR_CRITICAL
