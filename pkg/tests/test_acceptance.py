"""End-to-end acceptance checks at their stated scales and tolerances.

Each test logs one PASS/FAIL line; the lines are collected in the
"acceptance criteria" section of the pytest summary.
"""

import math
import time
from collections import Counter

import numpy as np
import pytest

from viralcm.degree_model import make_thinned_poisson
from viralcm.exploration import run_forward
from viralcm.experiments import ExperimentConfig, run, to_json
from viralcm.graph import DegreeSequence
from viralcm.oracle import enumerate_exact, gw_survival
from viralcm.theory import branching_extinction, predict, solve_xi, solve_xi_bar

from oracles import RHO, XI, XI_BAR

pytestmark = pytest.mark.slow

N = 100_000
REPS = 20
SEED = 2024
SUPER = {"family": "thinned_poisson", "mu": 4.0, "q": 0.5, "cutoff": 30}
SUB = {"family": "thinned_poisson", "mu": 4.0, "q": 0.2, "cutoff": 30}

# every sequence has at most 10 half-edges
ORACLE_SEQUENCES = [
    [(0, 1), (1, 0)],
    [(0, 1), (0, 1)],
    [(0, 2), (1, 0), (1, 0)],
    [(1, 1), (0, 1), (1, 0)],
    [(1, 1), (1, 1), (0, 2)],
    [(0, 3), (1, 1), (2, 0), (1, 0)],
    [(1, 2), (0, 1), (2, 0), (1, 1)],
    [(1, 2), (0, 2), (2, 1), (1, 0), (0, 1)],
]


def cfg(command, **kw):
    base = dict(command=command, distribution=SUPER, n=N, replicates=REPS, master_seed=SEED, epsilon=0.05,
                sample_size=200, uniqueness_pairs=50, tautology_pairs=100)
    base.update(kw)
    return ExperimentConfig(**base)


def column(report, key):
    return np.array([r[key] for r in report.replicates], dtype=float)


@pytest.fixture(scope="module")
def simulate_run():
    start = time.perf_counter()
    report = run(cfg("simulate"))
    return report, time.perf_counter() - start


@pytest.fixture(scope="module")
def duality_run():
    return run(cfg("duality"))


@pytest.fixture(scope="module")
def explore_run():
    return run(cfg("explore"))


def test_criterion_01_theory_solver(record_criterion):
    dist = make_thinned_poisson(4, 0.5, 30)
    start = time.perf_counter()
    xi, xi_bar = solve_xi(dist, 1e-10), solve_xi_bar(dist, 1e-10)
    elapsed = time.perf_counter() - start
    ok = abs(xi - XI) <= 1e-4 and abs(xi_bar - XI_BAR) <= 1e-4 and elapsed < 1.0
    assert record_criterion(1, "theory solver", ok, f"xi={xi:.6f} xi_bar={xi_bar:.6f} in {elapsed * 1e3:.1f} ms")


def test_criterion_02_influenced_component(simulate_run, record_criterion):
    report, elapsed = simulate_run
    mean = column(report, "c_star_frac").mean()
    ok = abs(mean - RHO) <= 0.015 and elapsed < 60.0
    assert record_criterion(2, "influenced component size", ok,
                            f"mean |C*|/n={mean:.4f} vs {RHO:.6f} over {REPS} replicates, {elapsed:.1f} s")


def test_criterion_03_pioneer_fraction(simulate_run, record_criterion):
    report, _ = simulate_run
    mean = column(report, "large_frac").mean()
    worst = column(report, "violation_rate").max()
    ok = abs(mean - RHO) <= 0.015 and worst <= 0.02
    assert record_criterion(3, "pioneer fraction", ok,
                            f"mean large-class fraction={mean:.4f}, worst violation rate={worst:.3f}")


def test_criterion_04_uniqueness(duality_run, record_criterion):
    ok_pairs = column(duality_run, "uniqueness_ok").sum()
    pairs = column(duality_run, "uniqueness_pairs").sum()
    rate = ok_pairs / pairs
    worst = column(duality_run, "uniqueness_max_gap").max()
    ok = pairs == 50 * REPS and rate >= 0.98
    assert record_criterion(4, "uniqueness of the big component", ok,
                            f"{int(ok_pairs)}/{int(pairs)} pairs with gap < 0.01, largest gap {worst:.2e}")


def test_criterion_05_subcritical_null(record_criterion):
    report = run(cfg("simulate", distribution=SUB))
    worst = column(report, "max_sampled_forward_frac").max()
    ok = worst < 0.01 and report.theory["regime"] == "SubOrCritical"
    assert record_criterion(5, "subcritical null", ok, f"largest sampled |C(x)|/n={worst:.2e} over {REPS} replicates")


def test_criterion_06_fluid_limits(explore_run, record_criterion):
    # L and R over the whole run; A and S on [0, tau - 0.1] (tau_bar for the reverse run);
    # the sleeping counts V on the same window and the wake-free counts V-tilde over the whole run.
    # A replicate passes when every observable is within 0.02; as for the big window, 18 of 20 must pass.
    keys = ["fwd_sup_L", "fwd_sup_R", "fwd_win_A_T", "fwd_win_S_T", "fwd_win_V_max", "fwd_sup_Vt_max",
            "rev_sup_L", "rev_win_A", "rev_win_S", "rev_win_V_max", "rev_sup_Vt_max"]
    table = np.array([column(explore_run, k) for k in keys])
    passing = int(np.all(table < 0.02, axis=0).sum())
    worst = dict(zip(keys, table.max(axis=1)))
    literal = {k: column(explore_run, k).max() for k in ("fwd_sup_V_max", "rev_sup_V_max", "rev_sup_A", "rev_sup_S")}
    ok = passing >= 18
    detail = f"{passing}/{REPS} replicates within 0.02; worst per observable: "
    detail += ", ".join(f"{k}={v:.4f}" for k, v in worst.items())
    detail += "; whole-run sleeping counts (not judged): " + ", ".join(f"{k}={v:.4f}" for k, v in literal.items())
    assert record_criterion(6, "fluid limits", ok, detail)


def test_criterion_07_big_window(explore_run, record_criterion):
    pred = explore_run.theory["prediction"]
    hits = 0
    for r in explore_run.replicates:
        if r["T2"] is None:
            continue
        hits += abs(r["T2"] - pred["tau"]) <= 0.05 and abs(r["c_double_prime_frac"] - pred["influenced_fraction"]) <= 0.015
    t2 = column(explore_run, "T2")
    ok = hits >= 18
    assert record_criterion(7, "big window", ok,
                            f"{hits}/{REPS} replicates hit; T2 in [{t2.min():.4f}, {t2.max():.4f}], tau={pred['tau']:.5f}")


def test_criterion_08_duality(duality_run, record_criterion):
    t5 = column(duality_run, "theorem5_lhs").max()
    c6 = column(duality_run, "corollary6_lhs").max()
    ok = t5 <= 0.05 and c6 <= 0.05
    assert record_criterion(8, "duality statistics", ok, f"worst product statistic {t5:.4f}, worst symmetric difference {c6:.4f}")


def test_criterion_09_oracle_equivalence(record_criterion):
    worst_z = 0.0
    for pairs in ORACLE_SEQUENCES:
        report = run(ExperimentConfig(command="oracle", degrees=[list(p) for p in pairs], draws=100_000, gw_reps=0,
                                      master_seed=SEED, replicates=1))
        worst_z = max(worst_z, report.replicates[0]["max_z"])

    seq = DegreeSequence.from_pairs([(1, 1), (0, 1), (1, 0)])
    exact = enumerate_exact(seq)
    runs = 100_000
    freq = Counter()
    for s in range(runs):
        mate = run_forward(seq, s, watch=[]).mate
        freq[tuple((h, int(mate[h])) for h in range(mate.size) if h < mate[h])] += 1
    p = 1 / exact.matchings
    sd = math.sqrt(p * (1 - p) / runs)
    forward_z = max(abs(freq[k] / runs - p) / sd for k in exact.matching_keys)
    ok = worst_z <= 4 and forward_z <= 4 and set(freq) <= set(exact.matching_keys)
    assert record_criterion(9, "oracle equivalence", ok,
                            f"{len(ORACLE_SEQUENCES)} sequences, worst |z|={worst_z:.2f}; forward-induced matching worst |z|={forward_z:.2f}")


def test_criterion_10_branching(record_criterion):
    dist = make_thinned_poisson(4, 0.5, 30)
    p_tilde, p_ext = branching_extinction(dist)
    est = gw_survival(dist, 50, 100_000, seed=SEED)
    xi_bar = predict(dist).xi_bar
    ok = abs(est - (1 - p_ext)) <= 0.01 and abs(p_tilde - xi_bar) <= 1e-8
    assert record_criterion(10, "branching consistency", ok,
                            f"survival {est:.4f} vs {1 - p_ext:.6f}; |p_ext_tilde - xi_bar|={abs(p_tilde - xi_bar):.1e}")


def test_criterion_11_tautology(record_criterion):
    report = run(cfg("duality", n=1000, replicates=10, tautology_pairs=0, uniqueness_pairs=5, sample_size=20))
    bad = int(column(report, "tautology_violations").sum())
    ok = bad == 0 and len(report.replicates) == 10
    assert record_criterion(11, "tautology", ok, f"{bad} violations over all ordered pairs of 10 graphs with n=1000")


def test_criterion_12_determinism(record_criterion):
    same = []
    for command in ("duality", "explore", "oracle"):
        extra = {"degrees": [[0, 2], [1, 0], [1, 0]], "draws": 2000, "gw_reps": 5000} if command == "oracle" else {}
        docs = [to_json(run(cfg(command, n=3000, replicates=4, workers=w, **extra))) for w in (1, 2, 1)]
        same.append(docs[0] == docs[1] == docs[2])
    ok = all(same)
    assert record_criterion(12, "determinism", ok, "duality, explore and oracle reports byte-identical for 1, 2 and 1 workers"
                            if ok else f"identical per command: {same}")
