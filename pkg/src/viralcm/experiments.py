"""Replicated experiments: config parsing, seeding, pipelines, aggregation and report output."""

from __future__ import annotations

import json
import math
import os
import re
import warnings
from concurrent.futures import ProcessPoolExecutor
from dataclasses import asdict, dataclass, field, fields
from pathlib import Path

import numpy as np

try:
    import tomllib
except ModuleNotFoundError:  # Python < 3.11
    import tomli as tomllib

from . import __version__
from .degree_model import (
    DistributionError,
    NearCriticalWarning,
    Regime,
    criticality,
    criticality_margin,
    from_spec,
    moments,
)
from .exploration import big_window, fluid_deviation, run_forward, run_reverse, NoWindow
from .graph import DegreeSequence, influence_digraph, multigraph_stats, sample_degree_sequence, uniform_matching
from .oracle import enumerate_exact, gw_survival
from .propagation import classify, duality_stats, forward_set, tautology_check, uniqueness_sample
from .theory import NotSupercritical, branching_extinction, predict

COMMANDS = ("theory", "simulate", "explore", "duality", "oracle", "sweep")
MASK64 = (1 << 64) - 1

DEFAULT_TOLERANCES = {
    "fraction": 0.015,
    "violation_rate": 0.02,
    "fluid": 0.02,
    "window_T2": 0.05,
    "window_hit_rate": 0.9,
    "duality": 0.05,
    "uniqueness_gap": 0.01,
    "uniqueness_rate": 0.98,
    "subcritical_max": 0.01,
    "gw": 0.01,
}


class ConfigError(ValueError):
    pass


def splitmix64(x: int) -> int:
    z = (x + 0x9E3779B97F4A7C15) & MASK64
    z = ((z ^ (z >> 30)) * 0xBF58476D1CE4E5B9) & MASK64
    z = ((z ^ (z >> 27)) * 0x94D049BB133111EB) & MASK64
    return z ^ (z >> 31)


def replicate_seed(master_seed: int, index: int) -> int:
    return splitmix64((master_seed + index) & MASK64)


def _sub(seed: int, k: int) -> int:
    return splitmix64((seed + k) & MASK64)


@dataclass
class ExperimentConfig:
    command: str = "theory"
    distribution: dict = field(default_factory=lambda: {"family": "thinned_poisson", "mu": 4.0, "q": 0.5, "cutoff": 30})
    n: int = 100_000
    replicates: int = 1
    master_seed: int = 0
    epsilon: float = 0.05
    tol: float = 1e-10
    sample_size: int = 200
    uniqueness_pairs: int = 50
    tautology_pairs: int | None = 1000
    watch: list | None = None
    max_generations: int = 50
    gw_reps: int = 100_000
    degrees: list | None = None
    draws: int = 0
    sweep: dict = field(default_factory=dict)
    tolerances: dict = field(default_factory=dict)
    workers: int | None = None
    out: str | None = None
    format: str = "summary-text"

    def validate(self) -> None:
        if self.command not in COMMANDS:
            raise ConfigError(f"unknown command {self.command!r}; expected one of {', '.join(COMMANDS)}")
        if self.n < 1:
            raise ConfigError("n must be >= 1")
        if self.replicates < 1:
            raise ConfigError("replicates must be >= 1")
        if not 0.0 < self.epsilon < 1.0:
            raise ConfigError("epsilon must lie in (0, 1)")
        unknown = set(self.tolerances) - set(DEFAULT_TOLERANCES)
        if unknown:
            raise ConfigError(f"unknown tolerance keys: {sorted(unknown)}")
        try:
            from_spec(self.distribution)
        except DistributionError as exc:
            raise ConfigError(f"distribution: {exc}") from None

    def tolerance(self, name: str) -> float:
        return float(self.tolerances.get(name, DEFAULT_TOLERANCES[name]))

    def echo(self) -> dict:
        """Everything that determines the results (worker count and output paths excluded)."""
        d = asdict(self)
        for key in ("workers", "out", "format"):
            d.pop(key)
        return d


_FIELD_NAMES = {f.name for f in fields(ExperimentConfig)}


def _line_of(text: str, key: str) -> str:
    for i, line in enumerate(text.splitlines(), 1):
        if re.match(rf"\s*{re.escape(key)}\s*=", line) or line.strip() == f"[{key}]":
            return f"line {i}: "
    return ""


def config_from_mapping(data: dict, text: str = "") -> ExperimentConfig:
    data = dict(data)
    data.pop("__line__", None)
    unknown = set(data) - _FIELD_NAMES
    if unknown:
        key = sorted(unknown)[0]
        raise ConfigError(f"{_line_of(text, key)}unknown config key {key!r}")
    try:
        cfg = ExperimentConfig(**data)
        for name, cast in (("n", int), ("replicates", int), ("master_seed", int), ("sample_size", int),
                           ("epsilon", float), ("tol", float)):
            value = getattr(cfg, name)
            if isinstance(value, bool) or not isinstance(value, (int, float)):
                raise ConfigError(f"{_line_of(text, name)}{name} must be a number, got {value!r}")
            setattr(cfg, name, cast(value))
        cfg.validate()
    except ConfigError as exc:
        msg = str(exc)
        if text and not msg.startswith("line"):
            key = msg.split()[0]
            msg = _line_of(text, key) + msg
        raise ConfigError(msg) from None
    return cfg


def load_config(path) -> ExperimentConfig:
    text = Path(path).read_text()
    try:
        data = tomllib.loads(text)
    except tomllib.TOMLDecodeError as exc:
        raise ConfigError(f"{path}: {exc}") from None
    try:
        return config_from_mapping(data, text)
    except ConfigError as exc:
        raise ConfigError(f"{path}: {exc}") from None


@dataclass
class AggregateReport:
    command: str
    config: dict
    theory: dict | None
    replicates: list[dict]
    aggregate: dict
    checks: list[dict]
    extra: dict = field(default_factory=dict)
    version: str = __version__
    traces: dict = field(default_factory=dict, repr=False, compare=False)

    @property
    def passed(self) -> bool:
        return all(c["passed"] for c in self.checks)

    def to_dict(self) -> dict:
        return {
            "version": self.version,
            "command": self.command,
            "config": self.config,
            "theory": self.theory,
            "replicates": self.replicates,
            "aggregate": self.aggregate,
            "checks": self.checks,
            "extra": self.extra,
        }

    @classmethod
    def from_dict(cls, data: dict) -> "AggregateReport":
        return cls(
            command=data["command"],
            config=data["config"],
            theory=data["theory"],
            replicates=data["replicates"],
            aggregate=data["aggregate"],
            checks=data["checks"],
            extra=data.get("extra", {}),
            version=data.get("version", __version__),
        )


def _plain(obj):
    """Convert numpy scalars and tuples so that a JSON round trip is the identity."""
    if isinstance(obj, dict):
        return {str(k): _plain(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [_plain(v) for v in obj]
    if isinstance(obj, np.generic):
        return obj.item()
    if isinstance(obj, float) and not math.isfinite(obj):
        return None
    return obj


def theory_block(cfg: ExperimentConfig) -> dict:
    dist = from_spec(cfg.distribution)
    mom = moments(dist)
    block = {"moments": mom.as_dict(), "criticality_margin": criticality_margin(dist), "degree_one_ok": dist.satisfies_degree_one}
    with warnings.catch_warnings(record=True) as caught:
        warnings.simplefilter("always")
        try:
            regime = criticality(dist)
        except DistributionError as exc:
            regime = None
            block["error"] = str(exc)
        prediction = None
        if regime is Regime.SUPERCRITICAL:
            try:
                prediction = predict(dist, cfg.tol).as_dict()
            except NotSupercritical as exc:
                block["error"] = str(exc)
    block["near_critical"] = any(issubclass(w.category, NearCriticalWarning) for w in caught)
    block["regime"] = regime.value if regime is not None else None
    block["prediction"] = prediction
    p_tilde, p_ext = branching_extinction(dist, cfg.tol)
    block["branching"] = {"p_ext_tilde": p_tilde, "p_ext": p_ext}
    return _plain(block)


def _build_graph(cfg: ExperimentConfig, dist, seed: int):
    seq = sample_degree_sequence(dist, cfg.n, _sub(seed, 1))
    g = uniform_matching(seq, _sub(seed, 2))
    return seq, g, influence_digraph(g)


def _simulate_stats(cfg, g, digraph, seed) -> tuple[dict, object]:
    n = cfg.n
    rep = classify(digraph, cfg.epsilon, cfg.sample_size, _sub(seed, 3))
    ms = multigraph_stats(g)
    sample = max(rep.sample_size, 1)
    stats = {
        "big_component": rep.big_component,
        "core_frac": rep.core_size / n,
        "in_frac": rep.in_size / n,
        "out_frac": rep.out_size / n,
        "c_star_frac": rep.c_star_size / n,
        "c_bar_star_frac": rep.c_bar_star_size / n,
        "large_frac": rep.count_large / n,
        "small_frac": rep.count_small / n,
        "large_bar_frac": rep.count_large_bar / n,
        "violation_rate": rep.sample_violations / sample,
        "violation_rate_bar": rep.sample_violations_bar / sample,
        "max_sampled_forward_frac": float(rep.sample_forward_sizes.max()) / n if rep.sample_size else 0.0,
        "self_loops": ms.self_loops,
        "multi_edges": ms.multi_edges,
        "d_max": ms.d_max,
    }
    return stats, rep


def _replicate(args) -> dict | tuple[dict, dict]:
    cfg_dict, index, theory = args
    cfg = ExperimentConfig(**cfg_dict)
    dist = from_spec(cfg.distribution)
    seed = replicate_seed(cfg.master_seed, index)
    out = {"replicate": index, "seed": seed}
    traces = {}

    if cfg.command in ("simulate", "duality"):
        _, g, digraph = _build_graph(cfg, dist, seed)
        stats, rep = _simulate_stats(cfg, g, digraph, seed)
        out.update(stats)
        if cfg.command == "duality":
            out.update({k: v for k, v in duality_stats(digraph, cfg.epsilon, rep).as_dict().items() if k != "epsilon"})
            pairs = None if cfg.tautology_pairs in (None, 0) else cfg.tautology_pairs
            out["tautology_violations"] = tautology_check(digraph, pairs, _sub(seed, 4))
            gaps = uniqueness_sample(digraph, rep, cfg.uniqueness_pairs, _sub(seed, 5))
            gap_cut = cfg.tolerance("uniqueness_gap")
            out["uniqueness_pairs"] = int(gaps.size)
            out["uniqueness_ok"] = int(np.count_nonzero(gaps < gap_cut))
            out["uniqueness_max_gap"] = float(gaps.max()) if gaps.size else 0.0

    elif cfg.command == "explore":
        seq = sample_degree_sequence(dist, cfg.n, _sub(seed, 1))
        pred = _prediction(theory)
        fwd = run_forward(seq, _sub(seed, 6), watch=cfg.watch, dist=dist)
        rev = run_reverse(seq, _sub(seed, 7), watch=cfg.watch, dist=dist)
        traces = {"forward": fwd, "reverse": rev}
        for tag, tr in (("fwd", fwd), ("rev", rev)):
            dev = fluid_deviation(tr, dist, pred)
            for name, value in dev.sup_dev.items():
                out[f"{tag}_sup_{name}"] = value
            for name, value in dev.window_dev.items():
                out[f"{tag}_win_{name}"] = value
            vnames = [k for k in dev.window_dev if k.startswith("V[")]
            if vnames:
                out[f"{tag}_sup_V_max"] = max(dev.sup_dev[k] for k in vnames)
                out[f"{tag}_sup_Vt_max"] = max(dev.sup_dev["Vt" + k[1:]] for k in vnames)
                if pred is not None:
                    out[f"{tag}_win_V_max"] = max(dev.window_dev[k] or 0.0 for k in vnames)
            out[f"{tag}_events"] = tr.pairing_events
            out[f"{tag}_posthoc_pairs"] = tr.posthoc_pairs
            out[f"{tag}_wake_steps"] = int(tr.c1_times.size)
        if pred is not None:
            try:
                win = big_window(fwd, pred)
                out.update({"T1": win.T1, "T2": win.T2, "c_double_prime_frac": win.c_double_prime_size / cfg.n})
            except NoWindow:
                out.update({"T1": None, "T2": None, "c_double_prime_frac": None})

    elif cfg.command == "oracle":
        if cfg.degrees:
            seq = DegreeSequence.from_pairs(cfg.degrees)
            if cfg.draws > 0:
                exact = enumerate_exact(seq)
                emp = empirical_reach(seq, cfg.draws, _sub(seed, 8))
                sd = np.sqrt(np.maximum(exact.reach_prob * (1 - exact.reach_prob), 1e-300) / cfg.draws)
                z = np.where(exact.reach_prob * (1 - exact.reach_prob) > 0, np.abs(emp - exact.reach_prob) / sd,
                             np.where(emp == exact.reach_prob, 0.0, np.inf))
                out["max_z"] = float(z.max())
        if cfg.gw_reps > 0:
            out["gw_survival"] = gw_survival(dist, cfg.max_generations, cfg.gw_reps, _sub(seed, 9))

    return _plain(out), traces


def _prediction(theory: dict | None):
    from .theory import TheoryPrediction

    if theory and theory.get("prediction"):
        return TheoryPrediction(**theory["prediction"])
    return None


def empirical_reach(seq: DegreeSequence, draws: int, seed) -> np.ndarray:
    """Monte Carlo ``P(y in C(x))`` over uniform matchings (distinct matchings are searched once)."""
    from .graph import make_rng, EnhancedMultigraph

    rng = make_rng(seed)
    counts: dict = {}
    for _ in range(draws):
        g = uniform_matching(seq, rng)
        key = g.matching_key()
        if key in counts:
            counts[key][1] += 1
        else:
            counts[key] = [g.mate, 1]
    n = seq.n
    acc = np.zeros((n, n))
    for mate, c in counts.values():
        dg = influence_digraph(EnhancedMultigraph(seq, mate))
        for x in range(n):
            acc[x, forward_set(dg, x)] += c
    return acc / draws


def _aggregate(rows: list[dict]) -> dict:
    agg = {}
    keys = [k for k in rows[0] if k not in ("replicate", "seed")] if rows else []
    for key in keys:
        vals = [r.get(key) for r in rows]
        if any(v is None or isinstance(v, (str, list, dict)) for v in vals):
            continue
        arr = np.asarray(vals, dtype=float)
        agg[key] = {
            "mean": float(arr.mean()),
            "std": float(arr.std(ddof=1)) if arr.size > 1 else 0.0,
            "min": float(arr.min()),
            "max": float(arr.max()),
        }
    return agg


def _check(name: str, value, bound: float, ok: bool) -> dict:
    return {"name": name, "value": value, "bound": bound, "passed": bool(ok)}


def _checks(cfg: ExperimentConfig, theory: dict | None, rows: list[dict], agg: dict) -> list[dict]:
    pred = (theory or {}).get("prediction")
    out = []
    if cfg.command in ("simulate", "duality"):
        if pred:
            tol = cfg.tolerance("fraction")
            gap = abs(agg["c_star_frac"]["mean"] - pred["influenced_fraction"])
            out.append(_check("c_star_frac_vs_influenced_fraction", gap, tol, gap <= tol))
            gap = abs(agg["large_frac"]["mean"] - pred["pioneer_fraction"])
            out.append(_check("large_frac_vs_pioneer_fraction", gap, tol, gap <= tol))
            worst = agg["violation_rate"]["max"]
            out.append(_check("violation_rate", worst, cfg.tolerance("violation_rate"),
                              worst <= cfg.tolerance("violation_rate")))
        else:
            worst = agg["max_sampled_forward_frac"]["max"]
            out.append(_check("subcritical_max_forward_frac", worst, cfg.tolerance("subcritical_max"),
                              worst < cfg.tolerance("subcritical_max")))
    if cfg.command == "duality" and pred:
        bound = cfg.tolerance("duality")
        for key in ("theorem5_lhs", "corollary6_lhs"):
            worst = agg[key]["max"]
            out.append(_check(key, worst, bound, worst <= bound))
        bad = sum(r["tautology_violations"] for r in rows)
        out.append(_check("tautology_violations", bad, 0, bad == 0))
        total = sum(r["uniqueness_pairs"] for r in rows)
        rate = sum(r["uniqueness_ok"] for r in rows) / total if total else 1.0
        out.append(_check("uniqueness_rate", rate, cfg.tolerance("uniqueness_rate"), rate >= cfg.tolerance("uniqueness_rate")))
    if cfg.command == "explore":
        bound = cfg.tolerance("fluid")
        keys = ["fwd_sup_L", "fwd_sup_R", "rev_sup_L", "fwd_sup_Vt_max", "rev_sup_Vt_max"]
        if pred:
            keys += ["fwd_win_A_T", "fwd_win_S_T", "fwd_win_V_max", "rev_win_A", "rev_win_S", "rev_win_V_max"]
        for key in keys:
            if key in agg:
                worst = agg[key]["max"]
                out.append(_check(key, worst, bound, worst < bound))
        if pred:
            hits = 0
            for r in rows:
                if r.get("T2") is None:
                    continue
                hits += (abs(r["T2"] - pred["tau"]) <= cfg.tolerance("window_T2")
                         and abs(r["c_double_prime_frac"] - pred["influenced_fraction"]) <= cfg.tolerance("fraction"))
            rate = hits / len(rows)
            out.append(_check("big_window_hit_rate", rate, cfg.tolerance("window_hit_rate"),
                              rate >= cfg.tolerance("window_hit_rate")))
    if cfg.command == "oracle":
        if "max_z" in agg:
            worst = agg["max_z"]["max"]
            out.append(_check("oracle_max_z", worst, 4.0, worst <= 4.0))
        if "gw_survival" in agg and theory:
            target = 1.0 - theory["branching"]["p_ext"]
            gap = abs(agg["gw_survival"]["mean"] - target)
            out.append(_check("gw_survival_vs_branching", gap, cfg.tolerance("gw"), gap <= cfg.tolerance("gw")))
    return out


def _map_replicates(cfg: ExperimentConfig, theory: dict | None, count: int):
    jobs = [(asdict(cfg), i, theory) for i in range(count)]
    workers = cfg.workers if cfg.workers is not None else (os.cpu_count() or 1)
    if workers <= 1 or count == 1:
        return [_replicate(j) for j in jobs]
    with ProcessPoolExecutor(max_workers=min(workers, count)) as pool:
        return list(pool.map(_replicate, jobs))


def _sweep(cfg: ExperimentConfig) -> tuple[list[dict], list[dict]]:
    param = cfg.sweep.get("param", "q")
    values = cfg.sweep.get("values")
    if not values:
        raise ConfigError("sweep needs a non-empty 'values' list")
    if param not in cfg.distribution:
        raise ConfigError(f"sweep parameter {param!r} is not a key of the distribution")
    table, rows = [], []
    for value in values:
        sub = ExperimentConfig(**{**asdict(cfg), "distribution": {**cfg.distribution, param: value}})
        th = theory_block(sub)
        pred = th["prediction"]
        entry = {
            param: value,
            "regime": th["regime"],
            "criticality_margin": th["criticality_margin"],
            "near_critical": th["near_critical"],
            "influenced_fraction": pred["influenced_fraction"] if pred else 0.0,
            "pioneer_fraction": pred["pioneer_fraction"] if pred else 0.0,
        }
        if cfg.sweep.get("simulate"):
            sim = ExperimentConfig(**{**asdict(sub), "command": "simulate"})
            results = [r for r, _ in _map_replicates(sim, th, cfg.replicates)]
            for r in results:
                r[param] = value
            rows += results
            agg = _aggregate(results)
            entry["c_star_frac_mean"] = agg["c_star_frac"]["mean"]
            entry["large_frac_mean"] = agg["large_frac"]["mean"]
        table.append(entry)
    return table, rows


def run(config: ExperimentConfig) -> AggregateReport:
    config.validate()
    if config.command == "sweep":
        table, rows = _sweep(config)
        return AggregateReport("sweep", _plain(config.echo()), None, rows, _aggregate(rows) if rows else {}, [],
                               extra={"sweep": _plain(table)})

    theory = theory_block(config)
    if config.command == "theory":
        return AggregateReport("theory", _plain(config.echo()), theory, [], {}, [])

    extra = {}
    if config.command == "oracle" and config.degrees:
        seq = DegreeSequence.from_pairs(config.degrees)
        exact = enumerate_exact(seq)
        extra["exact"] = _plain({
            "matchings": exact.matchings,
            "reach_prob": exact.reach_prob.tolist(),
            "expected_forward_size": exact.expected_forward_size.tolist(),
            "expected_backward_size": exact.expected_backward_size.tolist(),
        })

    results = _map_replicates(config, theory, config.replicates)
    rows = [r for r, _ in results]
    traces = {f"{name}_r{r['replicate']}": tr for (r, trs) in results for name, tr in trs.items()}
    agg = _aggregate(rows)
    report = AggregateReport(config.command, _plain(config.echo()), theory, rows, agg,
                             _checks(config, theory, rows, agg), extra)
    report.traces = traces
    return report


FORMATS = {
    "summary-text": "summary-text", "text": "summary-text",
    "machine-structured": "machine-structured", "json": "machine-structured",
    "csv-trajectories": "csv-trajectories", "csv": "csv-trajectories",
}


def to_json(report: AggregateReport) -> str:
    return json.dumps(report.to_dict(), indent=2)


def parse_json(text: str) -> AggregateReport:
    return AggregateReport.from_dict(json.loads(text))


def summary_text(report: AggregateReport) -> str:
    lines = [f"command: {report.command}", f"version: {report.version}"]
    dist = report.config.get("distribution", {})
    lines.append("distribution: " + ", ".join(f"{k}={v}" for k, v in dist.items()))
    if report.theory:
        th = report.theory
        lines.append(f"regime: {th['regime']}" + (" (near-critical)" if th.get("near_critical") else ""))
        lines.append(f"criticality_margin: {th['criticality_margin']:.10g}")
        for k, v in th["moments"].items():
            lines.append(f"{k}: {v:.10g}")
        pred = th.get("prediction")
        if pred:
            for k in ("xi", "xi_bar", "tau", "tau_bar", "influenced_fraction", "pioneer_fraction",
                      "p_ext_tilde", "p_ext"):
                lines.append(f"{k}: {pred[k]:.10g}")
        else:
            lines.append("xi: none (no big component predicted)")
            lines.append("influenced_fraction: 0")
            lines.append("pioneer_fraction: 0")
        lines.append(f"branching p_ext_tilde: {th['branching']['p_ext_tilde']:.10g}")
        lines.append(f"branching p_ext: {th['branching']['p_ext']:.10g}")
    if report.extra.get("sweep"):
        table = report.extra["sweep"]
        cols = list(table[0])
        lines.append("sweep:")
        lines.append("  " + "  ".join(cols))
        for row in table:
            lines.append("  " + "  ".join(f"{row[c]:.6g}" if isinstance(row[c], float) else str(row[c]) for c in cols))
    if report.extra.get("exact"):
        ex = report.extra["exact"]
        lines.append(f"exact matchings: {ex['matchings']}")
        for x, row in enumerate(ex["reach_prob"]):
            lines.append(f"  P(y in C({x})): " + " ".join(f"{p:.6f}" for p in row))
    for i, row in enumerate(report.replicates):
        body = ", ".join(f"{k}={_fmt(v)}" for k, v in row.items() if k not in ("replicate",))
        lines.append(f"replicate {i}: {body}")
    if report.aggregate:
        lines.append("aggregate (mean +- std over replicates):")
        for k, v in report.aggregate.items():
            lines.append(f"  {k}: {v['mean']:.6g} +- {v['std']:.3g}")
    for c in report.checks:
        lines.append(f"check {c['name']}: {'PASS' if c['passed'] else 'FAIL'} (value {_fmt(c['value'])}, bound {c['bound']})")
    return "\n".join(lines) + "\n"


def _fmt(v) -> str:
    return f"{v:.6g}" if isinstance(v, float) else str(v)


def emit(report: AggregateReport, fmt: str, out_dir=None) -> list[Path] | str:
    """Write the report in ``fmt``; without ``out_dir`` the text is returned instead."""
    kind = FORMATS.get(fmt)
    if kind is None:
        raise ValueError(f"unknown format {fmt!r}")
    if kind == "csv-trajectories":
        if out_dir is None:
            raise ValueError("csv-trajectories needs an output directory")
        out = Path(out_dir)
        out.mkdir(parents=True, exist_ok=True)
        paths = []
        for name, tr in sorted(report.traces.items()):
            path = out / f"{name}.csv"
            tr.write_csv(path)
            paths.append(path)
        return paths
    text = to_json(report) if kind == "machine-structured" else summary_text(report)
    if out_dir is None:
        return text
    out = Path(out_dir)
    out.mkdir(parents=True, exist_ok=True)
    path = out / ("report.json" if kind == "machine-structured" else "report.txt")
    path.write_text(text)
    return [path]
