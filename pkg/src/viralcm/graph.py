"""Enhanced configuration multigraph: degree sequences, half-edge matching, influence arcs."""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import cached_property
from pathlib import Path

import numpy as np
from scipy import sparse

from .degree_model import JointDegreeDistribution


def make_rng(seed) -> np.random.Generator:
    """Counter-based (Philox) generator; an existing Generator is passed through."""
    if isinstance(seed, np.random.Generator):
        return seed
    return np.random.Generator(np.random.Philox(seed))


@dataclass(frozen=True, eq=False)
class DegreeSequence:
    d_r: np.ndarray
    d_t: np.ndarray
    parity_vertex: int | None = None

    @classmethod
    def from_pairs(cls, pairs) -> "DegreeSequence":
        """``pairs`` is a list of (receiver, transmitter) degrees, one per vertex."""
        arr = np.asarray(pairs, dtype=np.int64).reshape(-1, 2)
        if arr.size and arr.min() < 0:
            raise ValueError("degrees must be non-negative")
        return cls(arr[:, 0].copy(), arr[:, 1].copy())

    @property
    def n(self) -> int:
        return int(self.d_r.size)

    @property
    def degrees(self) -> np.ndarray:
        return self.d_r + self.d_t

    @property
    def total_half_edges(self) -> int:
        return int(self.degrees.sum())

    @property
    def m(self) -> int:
        return self.total_half_edges // 2

    @property
    def d_max(self) -> int:
        return int(self.degrees.max()) if self.n else 0

    def counts(self) -> dict[tuple[int, int], int]:
        keys, cnt = np.unique(np.stack([self.d_r, self.d_t], axis=1), axis=0, return_counts=True)
        return {(int(k), int(l)): int(c) for (k, l), c in zip(keys, cnt)}

    def pairs(self) -> list[tuple[int, int]]:
        return list(zip(self.d_r.tolist(), self.d_t.tolist()))

    @cached_property
    def half_edges(self) -> tuple[np.ndarray, np.ndarray]:
        """``(owner, is_transmitter)`` per half-edge; each vertex lists transmitters first."""
        deg = self.degrees
        owner = np.repeat(np.arange(self.n, dtype=np.int64), deg)
        first = np.concatenate(([0], np.cumsum(deg)[:-1])) if self.n else np.zeros(0, dtype=np.int64)
        rank = np.arange(owner.size) - first[owner]
        return owner, rank < self.d_t[owner]


def sample_degree_sequence(dist: JointDegreeDistribution, n: int, seed) -> DegreeSequence:
    """i.i.d. draws from ``dist``; an odd total gets one extra receiver stub on a uniform vertex."""
    if n < 1:
        raise ValueError("n must be >= 1")
    rng = make_rng(seed)
    idx = rng.choice(dist.p.size, size=n, p=dist.p)
    d_r = dist.k[idx].astype(np.int64)
    d_t = dist.l[idx].astype(np.int64)
    parity_vertex = None
    if (d_r.sum() + d_t.sum()) % 2:
        parity_vertex = int(rng.integers(n))
        d_r[parity_vertex] += 1
    return DegreeSequence(d_r, d_t, parity_vertex)


@dataclass(frozen=True, eq=False)
class EnhancedMultigraph:
    seq: DegreeSequence
    mate: np.ndarray = field(repr=False)

    @property
    def owner(self) -> np.ndarray:
        return self.seq.half_edges[0]

    @property
    def is_transmitter(self) -> np.ndarray:
        return self.seq.half_edges[1]

    @property
    def n(self) -> int:
        return self.seq.n

    def matching_key(self) -> tuple[tuple[int, int], ...]:
        """Canonical sorted pair list, for comparing matchings."""
        h = np.arange(self.mate.size)
        lo = h < self.mate
        return tuple(zip(h[lo].tolist(), self.mate[lo].tolist()))


def check_matching(mate: np.ndarray) -> None:
    h = np.arange(mate.size)
    if np.any(mate == h) or np.any(mate[mate] != h):
        raise ValueError("mate is not a fixed-point-free involution")


def uniform_matching(seq: DegreeSequence, seed) -> EnhancedMultigraph:
    """Shuffle all half-edges and pair consecutive entries."""
    total = seq.total_half_edges
    if total % 2:
        raise ValueError("odd number of half-edges")
    perm = make_rng(seed).permutation(total)
    mate = np.empty(total, dtype=np.int64)
    mate[perm[0::2]] = perm[1::2]
    mate[perm[1::2]] = perm[0::2]
    return EnhancedMultigraph(seq, mate)


def from_matching(seq: DegreeSequence, mate) -> EnhancedMultigraph:
    mate = np.asarray(mate, dtype=np.int64)
    if mate.size != seq.total_half_edges:
        raise ValueError("matching size does not match the half-edge count")
    check_matching(mate)
    return EnhancedMultigraph(seq, mate)


class InfluenceDigraph:
    """Arc x -> y for every transmitter stub of x matched to any stub of y."""

    def __init__(self, n: int, src: np.ndarray, dst: np.ndarray):
        self.n = int(n)
        self.src = np.asarray(src, dtype=np.int64)
        self.dst = np.asarray(dst, dtype=np.int64)

    @classmethod
    def from_arcs(cls, n: int, arcs) -> "InfluenceDigraph":
        arr = np.asarray(list(arcs), dtype=np.int64).reshape(-1, 2)
        return cls(n, arr[:, 0], arr[:, 1])

    @property
    def arc_count(self) -> int:
        return int(self.src.size)

    def _csr(self, rows, cols) -> sparse.csr_matrix:
        data = np.ones(rows.size, dtype=np.float64)  # the dtype csgraph works in, so searches skip a copy
        mat = sparse.csr_matrix((data, (rows, cols)), shape=(self.n, self.n))
        mat.sum_duplicates()
        return mat

    @cached_property
    def forward(self) -> sparse.csr_matrix:
        return self._csr(self.src, self.dst)

    @cached_property
    def reverse(self) -> sparse.csr_matrix:
        return self._csr(self.dst, self.src)

    def out_degree(self) -> np.ndarray:
        return np.bincount(self.src, minlength=self.n)


def influence_digraph(g: EnhancedMultigraph) -> InfluenceDigraph:
    owner, is_t = g.owner, g.is_transmitter
    tx = np.flatnonzero(is_t)
    return InfluenceDigraph(g.n, owner[tx], owner[g.mate[tx]])


@dataclass(frozen=True)
class MultigraphStats:
    self_loops: int
    multi_edges: int
    d_max: int


def multigraph_stats(g: EnhancedMultigraph) -> MultigraphStats:
    """Self-loops, and surplus parallel edges between distinct vertex pairs."""
    h = np.arange(g.mate.size)
    lo = h < g.mate
    a = g.owner[h[lo]]
    b = g.owner[g.mate[lo]]
    loops = int(np.count_nonzero(a == b))
    u = np.minimum(a, b)[a != b]
    v = np.maximum(a, b)[a != b]
    distinct = np.unique(u * g.n + v).size if u.size else 0
    return MultigraphStats(self_loops=loops, multi_edges=int(u.size - distinct), d_max=g.seq.d_max)


def write_edge_list(g: EnhancedMultigraph, path) -> None:
    """One line per edge: ``u v tu tv`` with 0/1 transmitter flags per side."""
    h = np.arange(g.mate.size)
    lo = h[h < g.mate]
    hi = g.mate[lo]
    owner, is_t = g.owner, g.is_transmitter.astype(np.int64)
    rows = np.stack([owner[lo], owner[hi], is_t[lo], is_t[hi]], axis=1)
    with Path(path).open("w") as fh:
        for u, v, tu, tv in rows.tolist():
            fh.write(f"{u} {v} {tu} {tv}\n")


def read_edge_list(path) -> tuple[DegreeSequence, EnhancedMultigraph]:
    """Inverse of :func:`write_edge_list` (vertex ids must be 0..n-1)."""
    rows = np.loadtxt(path, dtype=np.int64, ndmin=2).reshape(-1, 4)
    n = int(rows[:, :2].max()) + 1 if rows.size else 0
    d_t = np.zeros(n, dtype=np.int64)
    d_r = np.zeros(n, dtype=np.int64)
    for col, flag in ((0, 2), (1, 3)):
        np.add.at(d_t, rows[:, col], rows[:, flag])
        np.add.at(d_r, rows[:, col], 1 - rows[:, flag])
    seq = DegreeSequence(d_r, d_t)
    owner, is_t = seq.half_edges
    # hand out stub slots per (vertex, kind) in file order
    nxt_t = np.concatenate(([0], np.cumsum(seq.degrees)[:-1]))
    nxt_r = nxt_t + d_t
    mate = np.empty(seq.total_half_edges, dtype=np.int64)
    for u, v, tu, tv in rows.tolist():
        ends = []
        for vert, flag in ((u, tu), (v, tv)):
            if flag:
                ends.append(nxt_t[vert])
                nxt_t[vert] += 1
            else:
                ends.append(nxt_r[vert])
                nxt_r[vert] += 1
        mate[ends[0]], mate[ends[1]] = ends[1], ends[0]
    return seq, from_matching(seq, mate)
