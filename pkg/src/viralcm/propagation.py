"""Forward influence sets, backward source sets, big components and duality statistics.

The big influenced set is identified with ``core | OUT`` of the bow-tie around
the largest strongly connected component, and the big source set with
``core | IN``.  Membership of the "large" classes is assigned structurally and
checked on a uniform sample with exact searches.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np
from scipy.sparse import csgraph

from .graph import InfluenceDigraph, make_rng


def _reach(mat, x: int) -> np.ndarray:
    return np.sort(csgraph.breadth_first_order(mat, int(x), directed=True, return_predecessors=False))


def forward_set(digraph: InfluenceDigraph, x: int) -> np.ndarray:
    """Sorted ids of every vertex ``x`` can influence, ``x`` included."""
    return _reach(digraph.forward, x)


def backward_set(digraph: InfluenceDigraph, y: int) -> np.ndarray:
    """Sorted ids of every vertex that can influence ``y``, ``y`` included."""
    return _reach(digraph.reverse, y)


def _mask(n: int, ids: np.ndarray) -> np.ndarray:
    out = np.zeros(n, dtype=bool)
    out[ids] = True
    return out


@dataclass(frozen=True, eq=False)
class BowTie:
    core: np.ndarray
    in_set: np.ndarray
    out_set: np.ndarray


def bow_tie(digraph: InfluenceDigraph) -> BowTie:
    """Largest SCC (ties -> smallest contained id), plus the sets reaching it and reached from it."""
    n = digraph.n
    _, labels = csgraph.connected_components(digraph.forward, directed=True, connection="strong")
    sizes = np.bincount(labels)
    min_id = np.full(sizes.size, n, dtype=np.int64)
    np.minimum.at(min_id, labels, np.arange(n))
    # largest size first, then smallest member id
    best = np.lexsort((min_id, -sizes))[0]
    root = int(min_id[best])
    core_mask = labels == best
    down = _mask(n, csgraph.breadth_first_order(digraph.forward, root, return_predecessors=False))
    up = _mask(n, csgraph.breadth_first_order(digraph.reverse, root, return_predecessors=False))
    return BowTie(
        core=np.flatnonzero(core_mask),
        in_set=np.flatnonzero(up & ~core_mask),
        out_set=np.flatnonzero(down & ~core_mask),
    )


@dataclass(eq=False)
class ComponentReport:
    n: int
    epsilon: float
    core_size: int
    in_size: int
    out_size: int
    big_component: bool
    c_star_size: int
    c_bar_star_size: int
    count_small: int
    count_large: int
    count_small_bar: int
    count_large_bar: int
    sample_size: int
    sample_violations: int
    sample_violations_bar: int
    unclassified: int = 0
    # per-sample exact verdicts, consumed by duality_stats
    sample_ids: np.ndarray = field(default=None, repr=False)
    sample_exact_large: np.ndarray = field(default=None, repr=False)
    sample_exact_large_bar: np.ndarray = field(default=None, repr=False)
    sample_forward_sizes: np.ndarray = field(default=None, repr=False)
    c_star_mask: np.ndarray = field(default=None, repr=False)
    c_bar_star_mask: np.ndarray = field(default=None, repr=False)

    def summary(self) -> dict:
        keys = (
            "n epsilon core_size in_size out_size big_component c_star_size c_bar_star_size "
            "count_small count_large count_small_bar count_large_bar unclassified sample_size "
            "sample_violations sample_violations_bar"
        ).split()
        return {k: getattr(self, k) for k in keys}


def _symdiff_size(a_mask: np.ndarray, ids: np.ndarray) -> int:
    # |A xor B| with A a mask and B sorted ids
    inside = int(a_mask[ids].sum())
    return int(a_mask.sum()) - inside + (ids.size - inside)


def classify(digraph: InfluenceDigraph, epsilon: float, sample_size: int, seed) -> ComponentReport:
    if not 0.0 < epsilon < 1.0:
        raise ValueError("epsilon must lie in (0, 1)")
    n = digraph.n
    bt = bow_tie(digraph)
    core, in_m, out_m = _mask(n, bt.core), _mask(n, bt.in_set), _mask(n, bt.out_set)
    c_star = core | out_m
    c_bar_star = core | in_m
    big = int(c_star.sum()) >= epsilon * n

    large = c_bar_star if big else np.zeros(n, dtype=bool)
    large_bar = c_star if big else np.zeros(n, dtype=bool)

    rng = make_rng(seed)
    size = min(int(sample_size), n)
    ids = np.sort(rng.choice(n, size=size, replace=False)) if size else np.zeros(0, dtype=np.int64)
    exact_large = np.zeros(size, dtype=bool)
    exact_large_bar = np.zeros(size, dtype=bool)
    fwd_sizes = np.zeros(size, dtype=np.int64)
    violations = violations_bar = 0
    cut = epsilon * n
    for i, x in enumerate(ids.tolist()):
        fwd = forward_set(digraph, x)
        bwd = backward_set(digraph, x)
        fwd_sizes[i] = fwd.size
        if big:
            exact_large[i] = _symdiff_size(c_star, fwd) < cut
            exact_large_bar[i] = _symdiff_size(c_bar_star, bwd) < cut
        small, small_bar = fwd.size < cut, bwd.size < cut
        violations += bool(exact_large[i] != large[x] or (not large[x] and not small))
        violations_bar += bool(exact_large_bar[i] != large_bar[x] or (not large_bar[x] and not small_bar))

    count_large, count_large_bar = int(large.sum()), int(large_bar.sum())
    return ComponentReport(
        n=n,
        epsilon=float(epsilon),
        core_size=int(bt.core.size),
        in_size=int(bt.in_set.size),
        out_size=int(bt.out_set.size),
        big_component=big,
        c_star_size=int(c_star.sum()),
        c_bar_star_size=int(c_bar_star.sum()),
        count_small=n - count_large,
        count_large=count_large,
        count_small_bar=n - count_large_bar,
        count_large_bar=count_large_bar,
        sample_size=size,
        sample_violations=violations,
        sample_violations_bar=violations_bar,
        sample_ids=ids,
        sample_exact_large=exact_large,
        sample_exact_large_bar=exact_large_bar,
        sample_forward_sizes=fwd_sizes,
        c_star_mask=c_star,
        c_bar_star_mask=c_bar_star,
    )


@dataclass(frozen=True)
class DualityReport:
    epsilon: float
    theorem5_lhs: float
    corollary6_lhs: float
    big_component: bool

    def as_dict(self) -> dict:
        return {
            "epsilon": self.epsilon,
            "theorem5_lhs": self.theorem5_lhs,
            "corollary6_lhs": self.corollary6_lhs,
            "big_component": self.big_component,
        }


def duality_stats(digraph: InfluenceDigraph, epsilon: float, report: ComponentReport) -> DualityReport:
    """Duality statistics from the exact big sets and the sampled exact class verdicts.

    ``C*`` and ``C-bar*`` are exact (reachability from a core vertex).  The
    large classes are estimated by their structural counterparts plus a
    sampled correction: for a uniform sample, the fraction of vertices whose
    exact class disagrees with the structural one estimates the symmetric
    difference, and the signed disagreement corrects the class size.
    """
    if not report.big_component:
        return DualityReport(float(epsilon), 0.0, 0.0, False)
    n = report.n
    ids = report.sample_ids
    s = max(ids.size, 1)

    in_cbar = report.c_bar_star_mask[ids]
    ex = report.sample_exact_large
    symdiff_frac = float(np.count_nonzero(ex != in_cbar)) / s
    large_frac = report.c_bar_star_size / n + float(np.count_nonzero(ex & ~in_cbar) - np.count_nonzero(~ex & in_cbar)) / s

    in_c = report.c_star_mask[ids]
    exb = report.sample_exact_large_bar
    large_bar_frac = report.c_star_size / n + float(np.count_nonzero(exb & ~in_c) - np.count_nonzero(~exb & in_c)) / s

    t5 = large_bar_frac * abs(report.c_bar_star_size / n - large_frac)
    return DualityReport(
        epsilon=float(epsilon),
        theorem5_lhs=float(min(max(t5, 0.0), 1.0)),
        corollary6_lhs=symdiff_frac,
        big_component=True,
    )


def tautology_check(digraph: InfluenceDigraph, pairs: int | None = None, seed=0) -> int:
    """Count pairs violating ``y in C(x)  <=>  x in C-bar(y)``.

    With ``pairs=None`` every ordered pair is checked (n forward and n backward searches).
    """
    n = digraph.n
    if pairs is None:
        fwd = np.zeros((n, n), dtype=bool)
        bwd = np.zeros((n, n), dtype=bool)
        for v in range(n):
            fwd[v, forward_set(digraph, v)] = True
            bwd[v, backward_set(digraph, v)] = True
        return int(np.count_nonzero(fwd != bwd.T))
    rng = make_rng(seed)
    xs = rng.integers(n, size=pairs)
    ys = rng.integers(n, size=pairs)
    fcache: dict[int, np.ndarray] = {}
    bcache: dict[int, np.ndarray] = {}
    bad = 0
    for x, y in zip(xs.tolist(), ys.tolist()):
        if x not in fcache:
            fcache[x] = _mask(n, forward_set(digraph, x))
        if y not in bcache:
            bcache[y] = _mask(n, backward_set(digraph, y))
        bad += bool(fcache[x][y] != bcache[y][x])
    return bad


def uniqueness_sample(digraph: InfluenceDigraph, report: ComponentReport, pairs: int, seed) -> np.ndarray:
    """``|C(x) xor C(x')| / n`` for uniformly drawn pairs of large-class members."""
    members = np.flatnonzero(report.c_bar_star_mask) if report.big_component else np.zeros(0, dtype=np.int64)
    if members.size < 2:
        return np.zeros(0)
    rng = make_rng(seed)
    out = np.empty(pairs)
    for i in range(pairs):
        x, x2 = rng.choice(members, size=2, replace=False)
        a = _mask(digraph.n, forward_set(digraph, x))
        b = forward_set(digraph, x2)
        out[i] = _symdiff_size(a, b) / digraph.n
    return out
