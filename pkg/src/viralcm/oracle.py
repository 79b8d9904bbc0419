"""Brute-force ground truth: exhaustive matchings on tiny sequences, Galton-Watson Monte Carlo."""

from __future__ import annotations

from collections import Counter, deque
from dataclasses import dataclass

import numpy as np

from .degree_model import JointDegreeDistribution, size_biased
from .graph import DegreeSequence, make_rng

MAX_HALF_EDGES = 16
# trees this large are counted as surviving; their extinction mass is below p_ext_tilde**cap
POPULATION_CAP = 200
GW_BATCH = 20_000


class TooLarge(ValueError):
    pass


def double_factorial(k: int) -> int:
    out = 1
    while k > 1:
        out *= k
        k -= 2
    return out


def all_matchings(total: int):
    """Yield every perfect matching of ``range(total)`` as a tuple of sorted pairs."""

    def rec(free: tuple[int, ...]):
        if not free:
            yield ()
            return
        a, rest = free[0], free[1:]
        for i, b in enumerate(rest):
            for tail in rec(rest[:i] + rest[i + 1:]):
                yield ((a, b),) + tail

    if total % 2:
        return
    yield from rec(tuple(range(total)))


def _closure(n: int, adj: list[list[int]]) -> list[set[int]]:
    out = []
    for s in range(n):
        seen = {s}
        todo = deque([s])
        while todo:
            u = todo.popleft()
            for v in adj[u]:
                if v not in seen:
                    seen.add(v)
                    todo.append(v)
        out.append(seen)
    return out


@dataclass
class ExactSummary:
    n: int
    matchings: int
    reach_prob: np.ndarray  # [x, y] = P(y in C(x))
    source_prob: np.ndarray  # [y, x] = P(x in C-bar(y))
    matching_keys: list

    @property
    def expected_forward_size(self) -> np.ndarray:
        return self.reach_prob.sum(axis=1)

    @property
    def expected_backward_size(self) -> np.ndarray:
        return self.source_prob.sum(axis=1)


def enumerate_exact(seq: DegreeSequence) -> ExactSummary:
    """Average reachability over all (2m-1)!! matchings, each with equal weight."""
    total = seq.total_half_edges
    if total > MAX_HALF_EDGES:
        raise TooLarge(f"{total} half-edges exceed the enumeration cap of {MAX_HALF_EDGES}")
    n = seq.n
    owner = []
    is_t = []
    for v, (r, t) in enumerate(seq.pairs()):
        owner += [v] * (r + t)
        is_t += [True] * t + [False] * r
    fwd = np.zeros((n, n))
    bwd = np.zeros((n, n))
    keys = []
    for pairing in all_matchings(total):
        keys.append(pairing)
        out_adj = [[] for _ in range(n)]
        in_adj = [[] for _ in range(n)]
        for a, b in pairing:
            for s, d in ((a, b), (b, a)):
                if is_t[s]:
                    out_adj[owner[s]].append(owner[d])
                    in_adj[owner[d]].append(owner[s])
        for x, reach in enumerate(_closure(n, out_adj)):
            fwd[x, list(reach)] += 1
        for y, src in enumerate(_closure(n, in_adj)):
            bwd[y, list(src)] += 1
    count = len(keys)
    return ExactSummary(n, count, fwd / count, bwd / count, keys)


def matching_frequencies(keys) -> Counter:
    return Counter(keys)


def gw_survival(dist: JointDegreeDistribution, max_generations: int, reps: int, seed) -> float:
    """Fraction of two-stage Galton-Watson trees alive after ``max_generations``.

    The root has ``D_t`` children; every later individual has a size-biased
    transmitter count.  Populations past ``POPULATION_CAP`` are frozen there.
    """
    if reps < 1:
        raise ValueError("reps must be >= 1")
    rng = make_rng(seed)
    root = dist.transmitter_marginal()
    tilde = size_biased(dist).transmitter_marginal()
    alive_total = 0
    for lo in range(0, reps, GW_BATCH):
        pop = rng.choice(root.size, size=min(GW_BATCH, reps - lo), p=root).astype(np.int64)
        for _ in range(max_generations):
            alive = np.flatnonzero((pop > 0) & (pop < POPULATION_CAP))
            if alive.size == 0:
                break
            sizes = pop[alive]
            kids = rng.choice(tilde.size, size=int(sizes.sum()), p=tilde)
            bounds = np.concatenate(([0], np.cumsum(sizes)[:-1]))
            pop[alive] = np.minimum(np.add.reduceat(kids, bounds), POPULATION_CAP)
        alive_total += int(np.count_nonzero(pop > 0))
    return alive_total / reps
