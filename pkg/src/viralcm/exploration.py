"""Continuous-time joint exploration of the multigraph and the influence.

Both processes pair half-edges one at a time.  Half-edge lifetimes are i.i.d.
Exp(1), realised sequentially: after a stub is killed, the waiting time to the
next spontaneous death is Exp(#living) and the dying stub is uniform among the
living ones.

Forward: a sleeping vertex is woken (step "C1") whenever no active transmitter
stub remains; an active transmitter is killed and paired with the next dying
stub, whose owner wakes up whatever the stub kind.

Reverse: the wake step fires when no active stub of any kind remains; any
active stub may be killed; only a dying *transmitter* stub wakes its sleeping
owner, while dying receiver stubs are paired without waking anybody.

Besides the sleeping counts V, each trace carries the counts V-tilde that
ignore the wake step: a vertex leaves V-tilde when the first of its stubs
(forward) or of its transmitter stubs (reverse) reaches the end of its Exp(1)
lifetime.  Observed spontaneous deaths give those lifetimes directly; a stub
killed at time u, or still alive when the run stops, gets u + Exp(1), which is
exact by memorylessness.
"""

from __future__ import annotations

import math
import random
from dataclasses import dataclass, field

import numpy as np

from .degree_model import (
    JointDegreeDistribution,
    H_bar,
    H_forward,
    h_bar,
    h_forward,
    moments,
)
from .graph import DegreeSequence
from .theory import TheoryPrediction

FORWARD = "forward"
REVERSE = "reverse"
WINDOW_MARGIN = 0.1
FULL_RECORD_LIMIT = 10**6


class NoWindow(RuntimeError):
    pass


class _Pool:
    """Set with O(1) insert, delete and uniform pick."""

    __slots__ = ("items", "pos")

    def __init__(self, size: int, items=()):
        self.items = list(items)
        self.pos = [-1] * size
        for i, x in enumerate(self.items):
            self.pos[x] = i

    def add(self, x: int) -> None:
        self.pos[x] = len(self.items)
        self.items.append(x)

    def remove(self, x: int) -> None:
        i = self.pos[x]
        last = self.items.pop()
        if last != x:
            self.items[i] = last
            self.pos[last] = i
        self.pos[x] = -1

    def __contains__(self, x: int) -> bool:
        return self.pos[x] >= 0

    def __len__(self) -> int:
        return len(self.items)


@dataclass(eq=False)
class ExplorationTrace:
    direction: str
    n: int
    total_half_edges: int
    t: np.ndarray
    L: np.ndarray
    S: np.ndarray
    A: np.ndarray
    sleeping: np.ndarray
    R: np.ndarray | None
    c1_times: np.ndarray
    c1_vertices: np.ndarray
    c1_order: np.ndarray
    wake_stamp: np.ndarray = field(repr=False)
    wake_order: np.ndarray = field(repr=False)
    cell_k: np.ndarray = field(repr=False)
    cell_l: np.ndarray = field(repr=False)
    mate: np.ndarray = field(repr=False)
    tilde_exit: np.ndarray = field(default=None, repr=False)
    watch: list[tuple[int, int]] = field(default_factory=list)
    posthoc_pairs: int = 0
    degenerate: bool = False
    literal: bool = False
    stride: int = 1

    @property
    def pairing_events(self) -> int:
        return int(self.t.size) - 1

    @property
    def end_time(self) -> float:
        return float(self.t[-1])

    def V(self, k: int, l: int) -> np.ndarray:
        """Sleeping vertices with initial degrees (k, l), one value per record."""
        cell = (self.cell_k == k) & (self.cell_l == l)
        stamps = self.wake_stamp[cell]
        stamps = stamps[stamps >= 0]
        woke = np.cumsum(np.bincount(stamps, minlength=self.t.size)[: self.t.size])
        return int(cell.sum()) - woke

    def V_tilde(self, k: int, l: int) -> np.ndarray:
        """Vertices with initial degrees (k, l) whose relevant stubs all outlive each record time."""
        exits = np.sort(self.tilde_exit[(self.cell_k == k) & (self.cell_l == l)])
        return exits.size - np.searchsorted(exits, self.t, side="right")

    def watch_series(self) -> dict[tuple[int, int], np.ndarray]:
        return {cell: self.V(*cell) for cell in self.watch}

    def columns(self) -> dict[str, np.ndarray]:
        if self.direction == FORWARD:
            return {"t": self.t, "L": self.L, "R": self.R, "S_T": self.S, "A_T": self.A, "sleeping": self.sleeping}
        return {"t": self.t, "L": self.L, "S": self.S, "A": self.A, "sleeping": self.sleeping}

    def write_csv(self, path) -> None:
        cols = self.columns()
        names = list(cols)
        with open(path, "w") as fh:
            fh.write(",".join(names) + "\n")
            for row in zip(*(cols[c].tolist() for c in names)):
                fh.write(",".join(repr(v) for v in row) + "\n")


def _explore(seq: DegreeSequence, seed, direction: str, watch, literal: bool, stride) -> ExplorationTrace:
    rng = random.Random(seed)
    rand = rng.random
    expo = rng.expovariate

    n = seq.n
    owner_arr, is_t_arr = seq.half_edges
    owner = owner_arr.tolist()
    is_t = is_t_arr.tolist()
    total = len(owner)
    deg = seq.degrees.tolist()
    start = np.concatenate(([0], np.cumsum(seq.degrees)[:-1])).astype(np.int64).tolist() if n else []
    forward = direction == FORWARD
    if stride is None:
        stride = max(1, math.ceil(n / FULL_RECORD_LIMIT))

    living = _Pool(total, range(total))
    active = _Pool(total)
    living_t = _Pool(total, (h for h in range(total) if is_t[h])) if literal else None
    sleepers = _Pool(n, range(n))
    awake = [False] * n
    mate = [-1] * total
    # spontaneous death time, or kill time for stubs in `killed`
    death = [math.nan] * total
    killed = [False] * total
    wake_stamp = [-1] * n
    wake_order = [-1] * n
    order = 0

    n_tx = sum(is_t)
    L = total
    R = total - n_tx
    S = n_tx if forward else total
    A = 0
    t = 0.0
    rec_t, rec_L, rec_R, rec_S, rec_A, rec_sl = [0.0], [L], [R], [S], [A], [n]
    c1_t, c1_v, c1_o = [], [], []
    events = 0

    def wake(v: int) -> None:
        nonlocal S, A, order
        awake[v] = True
        sleepers.remove(v)
        wake_stamp[v] = len(rec_t)
        wake_order[v] = order
        order += 1
        for j in range(start[v], start[v] + deg[v]):
            if living.pos[j] >= 0 and (is_t[j] or not forward):
                active.add(j)
                S -= 1
                A += 1

    while True:
        if A == 0:
            if not sleepers.items:
                break
            v = sleepers.items[int(rand() * len(sleepers.items))]
            c1_t.append(t)
            c1_v.append(v)
            c1_o.append(order)
            wake(v)
            continue

        h = active.items[int(rand() * len(active.items))]
        if literal:
            left = len(living_t.items) - (1 if is_t[h] else 0)
            if left == 0:
                break
        active.remove(h)
        living.remove(h)
        killed[h] = True
        death[h] = t
        A -= 1
        L -= 1
        if is_t[h]:
            if literal:
                living_t.remove(h)
        elif forward:
            R -= 1

        if literal:
            t += expo(len(living_t.items))
            d = living_t.items[int(rand() * len(living_t.items))]
        else:
            t += expo(L)
            d = living.items[int(rand() * len(living.items))]
        living.remove(d)
        death[d] = t
        L -= 1
        if literal and is_t[d]:
            living_t.remove(d)
        o = owner[d]
        if forward:
            if is_t[d]:
                if awake[o]:
                    active.remove(d)
                    A -= 1
                else:
                    S -= 1
            else:
                R -= 1
        else:
            if awake[o]:
                active.remove(d)
                A -= 1
            else:
                S -= 1
        mate[h] = d
        mate[d] = h
        if not awake[o] and (forward or is_t[d]):
            wake(o)

        events += 1
        if events % stride == 0:
            rec_t.append(t)
            rec_L.append(L)
            rec_R.append(R)
            rec_S.append(S)
            rec_A.append(A)
            rec_sl.append(len(sleepers.items))

    # leftovers (forward: receiver-only stubs) are matched uniformly after the run
    rest = list(living.items)
    for h in rest:
        killed[h] = True
        death[h] = t
    rng.shuffle(rest)
    for a, b in zip(rest[0::2], rest[1::2]):
        mate[a] = b
        mate[b] = a

    life = np.array(death, dtype=float)
    cut = np.array(killed, dtype=bool)
    life[cut] += np.random.Generator(np.random.Philox(rng.getrandbits(64))).exponential(size=int(cut.sum()))
    counted = np.ones(total, dtype=bool) if forward else is_t_arr
    tilde_exit = np.full(n, np.inf)
    np.minimum.at(tilde_exit, owner_arr[counted], life[counted])

    return ExplorationTrace(
        direction=direction,
        n=n,
        total_half_edges=total,
        t=np.array(rec_t),
        L=np.array(rec_L, dtype=np.int64),
        S=np.array(rec_S, dtype=np.int64),
        A=np.array(rec_A, dtype=np.int64),
        sleeping=np.array(rec_sl, dtype=np.int64),
        R=np.array(rec_R, dtype=np.int64) if forward else None,
        c1_times=np.array(c1_t),
        c1_vertices=np.array(c1_v, dtype=np.int64),
        c1_order=np.array(c1_o, dtype=np.int64),
        wake_stamp=np.array(wake_stamp, dtype=np.int64),
        wake_order=np.array(wake_order, dtype=np.int64),
        cell_k=seq.d_r,
        cell_l=seq.d_t,
        mate=np.array(mate, dtype=np.int64),
        tilde_exit=tilde_exit,
        watch=list(watch),
        posthoc_pairs=len(rest) // 2,
        degenerate=n_tx == 0,
        literal=literal,
        stride=stride,
    )


def _default_watch(seq: DegreeSequence, watch, dist: JointDegreeDistribution | None):
    if watch is not None:
        return [tuple(c) for c in watch]
    if dist is not None:
        return dist.top_cells(10)
    counts = sorted(seq.counts().items(), key=lambda kv: (-kv[1], kv[0][0] + kv[0][1], kv[0][0]))
    return [kl for kl, _ in counts[:10]]


def run_forward(seq: DegreeSequence, seed, watch=None, dist: JointDegreeDistribution | None = None,
                stride: int | None = None) -> ExplorationTrace:
    return _explore(seq, seed, FORWARD, _default_watch(seq, watch, dist), False, stride)


def run_reverse(seq: DegreeSequence, seed, watch=None, dist: JointDegreeDistribution | None = None,
                stride: int | None = None, literal: bool = False) -> ExplorationTrace:
    """Reverse exploration; ``literal=True`` lets only transmitter stubs die spontaneously (experimental)."""
    return _explore(seq, seed, REVERSE, _default_watch(seq, watch, dist), literal, stride)


@dataclass
class FluidDeviation:
    direction: str
    sup_dev: dict[str, float]
    window_dev: dict[str, float | None]
    window_end: float | None

    def as_dict(self) -> dict:
        return {
            "direction": self.direction,
            "sup_dev": dict(self.sup_dev),
            "window_dev": dict(self.window_dev),
            "window_end": self.window_end,
        }


FORWARD_OBSERVABLES = ("L", "R", "S_T", "A_T")
REVERSE_OBSERVABLES = ("L", "S", "A")


def fluid_deviation(trace: ExplorationTrace, dist: JointDegreeDistribution,
                    prediction: TheoryPrediction | None = None, observables=None) -> FluidDeviation:
    """Sup-norm gaps between ``X(t)/n`` and its deterministic limit, over record times.

    ``window_dev`` restricts to ``t <= tau - 0.1`` (``tau_bar`` for the reverse
    run) and is ``None`` when no prediction is available.
    """
    forward = trace.direction == FORWARD
    known = FORWARD_OBSERVABLES if forward else REVERSE_OBSERVABLES
    if observables is None:
        observables = list(known) + [f"{tag}[{k},{l}]" for tag in ("V", "Vt") for k, l in trace.watch]
    mom = moments(dist)
    t = trace.t
    x = np.exp(-t)
    n = trace.n

    limits = {"L": lambda: mom.lam * x * x}
    if forward:
        limits.update(
            R=lambda: mom.lambda_r * x,
            S_T=lambda: h_forward(dist, x),
            A_T=lambda: H_forward(dist, x),
        )
        series = {"L": trace.L, "R": trace.R, "S_T": trace.S, "A_T": trace.A}
    else:
        limits.update(S=lambda: h_bar(dist, x), A=lambda: H_bar(dist, x))
        series = {"L": trace.L, "S": trace.S, "A": trace.A}

    window_end = None
    if prediction is not None:
        window_end = (prediction.tau if forward else prediction.tau_bar) - WINDOW_MARGIN
    in_window = t <= window_end if window_end is not None else None

    sup, win = {}, {}
    for name in observables:
        if name.startswith(("V[", "Vt[")):
            tag, cell = name[:-1].split("[")
            k, l = (int(s) for s in cell.split(","))
            limit = dist.prob(k, l) * (x ** (k + l) if forward else x**l)
            values = trace.V(k, l) if tag == "V" else trace.V_tilde(k, l)
        elif name in known:
            limit = limits[name]()
            values = series[name]
        else:
            raise ValueError(f"observable {name!r} is not recorded by a {trace.direction} trace")
        gap = np.abs(values / n - limit)
        sup[name] = float(gap.max())
        win[name] = float(gap[in_window].max()) if in_window is not None and in_window.any() else None
    return FluidDeviation(trace.direction, sup, win, window_end)


@dataclass(frozen=True)
class BigWindow:
    T1: float
    T2: float
    c_double_prime_size: int
    x_n: int

    def as_dict(self) -> dict:
        return {"T1": self.T1, "T2": self.T2, "c_double_prime_size": self.c_double_prime_size, "x_n": self.x_n}


def big_window(trace: ExplorationTrace, prediction: TheoryPrediction) -> BigWindow:
    """Last wake step before tau/2, the next one after it, and the vertices woken in between.

    The count includes the vertex woken at T1 and excludes the one woken at T2.
    """
    if trace.direction != FORWARD:
        raise ValueError("big_window needs a forward trace")
    half = prediction.tau / 2.0
    before = np.flatnonzero(trace.c1_times < half)
    if before.size == 0:
        raise NoWindow(f"no wake step before tau/2 = {half:.4g}")
    i = int(before[-1])
    first = int(trace.c1_order[i])
    if i + 1 < trace.c1_times.size:
        T2 = float(trace.c1_times[i + 1])
        last = int(trace.c1_order[i + 1])
    else:
        T2 = trace.end_time
        last = int((trace.wake_order >= 0).sum())
    return BigWindow(float(trace.c1_times[i]), T2, last - first, int(trace.c1_vertices[i]))
