"""Command line front end: ``viralcm {theory,simulate,explore,duality,oracle,sweep}``.

Exit codes: 0 success, 1 configuration error, 2 a declared tolerance failed
under ``--check``.
"""

from __future__ import annotations

import argparse
import sys
from dataclasses import asdict

from .experiments import (
    COMMANDS,
    FORMATS,
    ConfigError,
    ExperimentConfig,
    config_from_mapping,
    emit,
    load_config,
    run,
)


def _degrees(text: str) -> list[list[int]]:
    """``"0,2;1,0;1,0"`` -> ``[[0, 2], [1, 0], [1, 0]]`` (receiver, transmitter per vertex)."""
    try:
        out = [[int(v) for v in chunk.split(",")] for chunk in text.split(";") if chunk.strip()]
    except ValueError:
        raise argparse.ArgumentTypeError(f"bad degree list {text!r}") from None
    if any(len(p) != 2 for p in out):
        raise argparse.ArgumentTypeError("each vertex needs 'receiver,transmitter'")
    return out


def _floats(text: str) -> list[float]:
    return [float(v) for v in text.split(",") if v.strip()]


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="viralcm", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)
    for name in COMMANDS:
        p = sub.add_parser(name)
        p.add_argument("--config", help="TOML experiment file")
        p.add_argument("--seed", type=int, dest="master_seed")
        p.add_argument("--n", type=int)
        p.add_argument("--replicates", type=int)
        p.add_argument("--epsilon", type=float)
        p.add_argument("--sample-size", type=int, dest="sample_size")
        p.add_argument("--workers", type=int)
        p.add_argument("--mu", type=float)
        p.add_argument("--q", type=float)
        p.add_argument("--cutoff", type=int)
        p.add_argument("--out", help="output directory")
        p.add_argument("--format", choices=sorted(FORMATS), default=None)
        p.add_argument("--check", action="store_true", help="exit 2 if a tolerance check fails")
        if name == "oracle":
            p.add_argument("--degrees", type=_degrees, help='e.g. "0,2;1,0;1,0"')
            p.add_argument("--draws", type=int)
            p.add_argument("--gw-reps", type=int, dest="gw_reps")
            p.add_argument("--max-generations", type=int, dest="max_generations")
        if name == "sweep":
            p.add_argument("--param", default=None)
            p.add_argument("--values", type=_floats)
            p.add_argument("--simulate", action="store_true")
    return parser


def config_from_args(args: argparse.Namespace) -> ExperimentConfig:
    base = load_config(args.config) if args.config else ExperimentConfig()
    data = asdict(base)
    data["command"] = args.command
    for key in ("master_seed", "n", "replicates", "epsilon", "sample_size", "workers", "out", "format",
                "degrees", "draws", "gw_reps", "max_generations"):
        value = getattr(args, key, None)
        if value is not None:
            data[key] = value
    dist = dict(data["distribution"])
    for key in ("mu", "q", "cutoff"):
        value = getattr(args, key)
        if value is not None:
            if dist.get("family") != "thinned_poisson":
                raise ConfigError(f"--{key} only applies to the thinned_poisson family")
            dist[key] = value
    data["distribution"] = dist
    if args.command == "sweep":
        sweep = dict(data["sweep"])
        if args.param:
            sweep["param"] = args.param
        if args.values:
            sweep["values"] = args.values
        if args.simulate:
            sweep["simulate"] = True
        sweep.setdefault("param", "q")
        sweep.setdefault("values", [round(0.1 * i, 10) for i in range(1, 10)])
        data["sweep"] = sweep
    return config_from_mapping(data)


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        cfg = config_from_args(args)
    except (ConfigError, OSError) as exc:
        print(f"config error: {exc}", file=sys.stderr)
        return 1
    report = run(cfg)
    fmt = cfg.format
    if cfg.out:
        emit(report, "machine-structured", cfg.out)
        emit(report, "summary-text", cfg.out)
        if report.traces:
            emit(report, "csv-trajectories", cfg.out)
    if FORMATS.get(fmt) == "csv-trajectories":
        fmt = "summary-text"
    sys.stdout.write(emit(report, fmt))
    if args.check and not report.passed:
        return 2
    return 0


if __name__ == "__main__":
    raise SystemExit(main())
