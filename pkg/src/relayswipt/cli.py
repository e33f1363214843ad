"""Command line interface: tradeoff curves, outage sweeps, and MC runs as CSV.

Subcommands map one-to-one to the bundled figure presets:

* ``tradeoff-capacity`` (fig3, fig4): capacity-energy tradeoff of all schemes
  plus the numerically computed Pareto frontier.
* ``tradeoff-outage`` (fig5): no-outage probability versus transferred energy.
* ``capacity-vs-snr`` (fig6): per-scheme capacity over an SNR grid for fixed
  tradeoff factors.
* ``outage-vs-snr`` (fig7, fig8): outage probability versus the SNR-to-
  threshold ratio.
* ``montecarlo``: a single simulation run with full estimates.

All numeric CSV fields are written with round-trip precision; rerunning a
command with the same flags (including ``--seed``) reproduces the output
byte for byte.  Exit codes: 0 success, 2 usage error, 1 numerical failure.
"""

from __future__ import annotations

import argparse
import csv
import math
import sys

import numpy as np

from . import closedform as cf
from .frontier import (
    BracketError,
    ToleranceNotMetError,
    capacity_frontier,
    pareto_capacity_point,
    solve_zeta_for_energy,
)
from .model import SystemConfig, load_config_file, snr_from_db
from .schemes import (
    Metric,
    ParetoOptimal,
    SchemeParam,
    ThresholdChecking,
    TimeSharing,
    WeightedDifference,
)
from .simulate import MonteCarloConfig, run

_LN2 = math.log(2.0)

_PRESETS = {
    "fig3": {"command": "tradeoff-capacity", "mean_snr_db": 20.0, "x_axis": "energy"},
    "fig4": {"command": "tradeoff-capacity", "mean_snr_db": 10.0, "x_axis": "delta"},
    "fig5": {"command": "tradeoff-outage"},
    "fig6": {"command": "capacity-vs-snr"},
    "fig7": {"command": "outage-vs-snr", "n_relays": 2, "deltas": "0,0.5,1"},
    "fig8": {"command": "outage-vs-snr", "n_relays": 3, "deltas": "0.01,0.5,1"},
}


def _fmt(value) -> str:
    """Round-trip text for a cell; empty cells stay empty."""
    if value is None:
        return ""
    if isinstance(value, (bool, int, str)):
        return str(value)
    return repr(float(value))


def _write_csv(path: str, header: list[str], rows: list[list]) -> None:
    if path in (None, "-"):
        writer = csv.writer(sys.stdout, lineterminator="\n")
        writer.writerow(header)
        writer.writerows([[_fmt(v) for v in row] for row in rows])
        return
    with open(path, "w", encoding="utf-8", newline="") as fh:
        writer = csv.writer(fh, lineterminator="\n")
        writer.writerow(header)
        writer.writerows([[_fmt(v) for v in row] for row in rows])


def _write_gnuplot(out_path: str, header: list[str], x_column: str, y_columns: list[str],
                   logscale_y: bool = False) -> None:
    script = out_path + ".gp"
    xi = header.index(x_column) + 1
    lines = [
        "set datafile separator ','",
        f"set xlabel '{x_column}'",
        "set key outside",
    ]
    if logscale_y:
        lines.append("set logscale y")
    plots = [
        f"'{out_path}' using {xi}:{header.index(col) + 1} with lines title '{col}'"
        for col in y_columns
        if col in header
    ]
    lines.append("plot " + ", \\\n     ".join(plots))
    with open(script, "w", encoding="utf-8") as fh:
        fh.write("\n".join(lines) + "\n")


def _parse_grid(text: str) -> np.ndarray:
    """Parse 'start:stop:num' into a uniform grid."""
    parts = text.split(":")
    if len(parts) != 3:
        raise ValueError(f"grid must be 'start:stop:num', got {text!r}")
    start, stop, num = float(parts[0]), float(parts[1]), int(parts[2])
    if num < 2 or stop <= start:
        raise ValueError(f"grid needs stop > start and num >= 2, got {text!r}")
    return np.linspace(start, stop, num)


def _parse_deltas(text: str) -> list[float]:
    deltas = [float(tok) for tok in text.split(",") if tok.strip() != ""]
    if not deltas or any(not 0.0 <= d <= 1.0 for d in deltas):
        raise ValueError(f"deltas must be a comma list within [0, 1], got {text!r}")
    return deltas


def _add_config_flags(sub: argparse.ArgumentParser) -> None:
    sub.add_argument("--config", help="key-value config file; flags override it")
    sub.add_argument("--n-relays", type=int, default=None)
    group = sub.add_mutually_exclusive_group()
    group.add_argument("--mean-snr", type=float, default=None, help="mean per-hop SNR, linear")
    group.add_argument("--mean-snr-db", type=float, default=None, help="mean per-hop SNR, dB")
    sub.add_argument("--mean-energy", type=float, default=None)
    thr = sub.add_mutually_exclusive_group()
    thr.add_argument("--outage-threshold", type=float, default=None, help="linear SNR threshold")
    thr.add_argument("--rate", type=float, default=None, help="rate r; threshold = 2^(2r) - 1")
    sub.add_argument("--seed", type=int, default=None)
    sub.add_argument("--out", default="-", help="CSV output path, '-' for stdout")
    sub.add_argument("--gnuplot", action="store_true",
                     help="also write a <out>.gp plot script (needs --out)")


def _build_config(args, preset: dict) -> tuple[SystemConfig, int]:
    """Resolve the scenario: built-in defaults < preset < config file < flags."""
    values = {
        "n_relays": 2,
        "mean_snr": None,
        "mean_snr_db": 10.0,
        "mean_energy": 1.0,
        "outage_threshold": 1.0,
        "rate": None,
        "seed": 0,
    }
    values.update({k: v for k, v in preset.items() if k in values})
    if args.config:
        file_config, file_seed = load_config_file(args.config)
        values["n_relays"] = file_config.n_relays
        values["mean_snr"] = file_config.mean_snr
        values["mean_snr_db"] = None
        values["mean_energy"] = file_config.mean_energy
        values["outage_threshold"] = file_config.outage_threshold
        if file_seed is not None:
            values["seed"] = file_seed
    for key in ("n_relays", "mean_energy", "seed"):
        flag = getattr(args, key, None)
        if flag is not None:
            values[key] = flag
    if args.mean_snr is not None:
        values["mean_snr"], values["mean_snr_db"] = args.mean_snr, None
    elif args.mean_snr_db is not None:
        values["mean_snr"], values["mean_snr_db"] = None, args.mean_snr_db
    if getattr(args, "rate", None) is not None:
        values["rate"] = args.rate
    elif getattr(args, "outage_threshold", None) is not None:
        values["outage_threshold"], values["rate"] = args.outage_threshold, None

    mean_snr = values["mean_snr"]
    if mean_snr is None:
        mean_snr = snr_from_db(values["mean_snr_db"])
    if values["rate"] is not None:
        config = SystemConfig.from_rate(
            values["n_relays"], mean_snr, values["mean_energy"], values["rate"]
        )
    else:
        config = SystemConfig(
            values["n_relays"], mean_snr, values["mean_energy"], values["outage_threshold"]
        )
    return config, int(values["seed"])


def _checked_grid(grid: int) -> int:
    if grid < 2:
        raise ValueError(f"--grid needs at least 2 points, got {grid}")
    return grid


def _preset_for(args) -> dict:
    name = getattr(args, "preset", None)
    if not name:
        return {}
    preset = _PRESETS[name]
    if preset["command"] != args.command:
        raise ValueError(f"preset {name!r} belongs to command {preset['command']!r}")
    return preset


# ---------------------------------------------------------------------------
#  Subcommand handlers
# ---------------------------------------------------------------------------


def _mc_overlay(config, scheme: SchemeParam, frames: int, seed: int):
    result = run(config, scheme, MonteCarloConfig(n_frames=frames, seed=seed,
                                                  batch_size=min(frames, 100_000)))
    return result


def cmd_tradeoff_capacity(args) -> int:
    preset = _preset_for(args)
    config, seed = _build_config(args, preset)
    x_axis = args.x_axis or preset.get("x_axis", "energy")
    deltas = np.linspace(0.0, 1.0, _checked_grid(args.grid))
    frontier = capacity_frontier(config, deltas)
    header = ["delta", "energy", "c_ts", "c_tc", "c_wd", "c_pareto"]
    if args.with_mc:
        for name in ("ts", "tc", "wd", "pareto"):
            header += [f"mc_c_{name}", f"mc_c_{name}_stderr",
                       f"mc_e_{name}", f"mc_e_{name}_stderr"]
    rows = []
    for delta, point in zip(deltas, frontier.points):
        delta = float(delta)
        energy = cf.energy_from_delta(config, delta)
        row = [
            delta,
            energy,
            cf.c_ts(config, energy),
            cf.c_tc(config, energy),
            cf.c_wd(config, energy),
            point.value,
        ]
        if args.with_mc:
            energy_only = delta >= 1.0
            if energy_only or delta <= 0.0:
                zeta = 0.0
            else:
                zeta = solve_zeta_for_energy(config, energy, Metric.CAPACITY)
            schemes = [
                TimeSharing(mu=cf.mu_from_energy(config, energy)),
                ThresholdChecking(tau=cf.tau_from_energy(config, energy)),
                WeightedDifference(nu=0.0 if energy_only else cf.nu_from_energy(config, energy),
                                   energy_only=energy_only),
                ParetoOptimal(zeta=zeta, metric=Metric.CAPACITY, energy_only=energy_only),
            ]
            for scheme in schemes:
                result = _mc_overlay(config, scheme, args.frames, seed)
                row += [
                    result.capacity.mean, result.capacity.std_error,
                    result.energy.mean, result.energy.std_error,
                ]
        rows.append(row)
    _write_csv(args.out, header, rows)
    if args.gnuplot and args.out not in (None, "-"):
        x_col = "energy" if x_axis == "energy" else "delta"
        _write_gnuplot(args.out, header, x_col, ["c_ts", "c_tc", "c_wd", "c_pareto"])
    return 0


def cmd_tradeoff_outage(args) -> int:
    preset = _preset_for(args)
    if args.mean_snr is None and args.mean_snr_db is None and not args.config:
        # default geometry maximizes the Pareto policy's feasible delta range
        threshold = args.outage_threshold
        if threshold is None and args.rate is not None:
            threshold = 2.0 ** (2.0 * args.rate) - 1.0
        if threshold is None:
            threshold = 1.0
        preset = dict(preset)
        preset["mean_snr"] = 2.0 * threshold / _LN2
        preset["mean_snr_db"] = None
    config, _ = _build_config(args, preset)
    deltas = np.linspace(0.0, 1.0, _checked_grid(args.grid))
    delta_lo, _ = cf.delta_range_outage(config)
    floor = cf.pareto_outage_energy_min(config)
    header = ["delta", "energy", "noout_ts", "noout_tc", "noout_wd", "noout_pareto"]
    rows = []
    for delta in deltas:
        delta = float(delta)
        energy = cf.energy_from_delta(config, delta)
        pareto = None
        if delta >= delta_lo - 1e-12:
            if delta >= 1.0:
                zeta = math.inf
            elif energy <= floor + 1e-9 * config.mean_energy:
                zeta = 0.0
            else:
                zeta = solve_zeta_for_energy(config, energy, Metric.OUTAGE_INDICATOR)
            pareto = cf.pareto_no_outage(config, zeta)
        rows.append([
            delta,
            energy,
            1.0 - cf.outage_ts(config, delta),
            1.0 - cf.outage_tc(config, delta),
            1.0 - cf.outage_wd(config, delta),
            pareto,
        ])
    _write_csv(args.out, header, rows)
    if args.gnuplot and args.out not in (None, "-"):
        _write_gnuplot(args.out, header, "delta",
                       ["noout_ts", "noout_tc", "noout_wd", "noout_pareto"])
    return 0


def cmd_capacity_vs_snr(args) -> int:
    preset = _preset_for(args)
    config, _ = _build_config(args, preset)
    snr_db_grid = _parse_grid(args.snr_db or preset.get("snr_db", "0:30:16"))
    deltas = _parse_deltas(args.deltas or preset.get("deltas", "0,0.5,1"))
    header = ["snr_db"]
    for delta in deltas:
        for name in ("ts", "tc", "wd", "pareto"):
            header.append(f"c_{name}_d{delta:g}")
    rows = []
    for snr_db in snr_db_grid:
        point_config = SystemConfig(
            config.n_relays, snr_from_db(snr_db), config.mean_energy, config.outage_threshold
        )
        row = [float(snr_db)]
        for delta in deltas:
            energy = cf.energy_from_delta(point_config, delta)
            row.append(cf.c_ts(point_config, energy))
            row.append(cf.c_tc(point_config, energy))
            row.append(cf.c_wd(point_config, energy))
            if delta <= 0.0:
                row.append(cf.c_max(point_config))
            elif delta >= 1.0:
                row.append(cf.c_min(point_config))
            else:
                zeta = solve_zeta_for_energy(point_config, energy, Metric.CAPACITY)
                row.append(pareto_capacity_point(point_config, zeta).value)
        rows.append(row)
    _write_csv(args.out, header, rows)
    if args.gnuplot and args.out not in (None, "-"):
        _write_gnuplot(args.out, header, "snr_db", header[1:])
    return 0


def cmd_outage_vs_snr(args) -> int:
    preset = _preset_for(args)
    config, _ = _build_config(args, preset)
    ratio_db_grid = _parse_grid(args.ratio_db or preset.get("ratio_db", "0:30:16"))
    deltas = _parse_deltas(args.deltas or preset.get("deltas", "0,0.5,1"))
    two_relay = config.n_relays == 2
    header = ["ratio_db"]
    for delta in deltas:
        header += [f"out_ts_d{delta:g}", f"out_tc_d{delta:g}"]
        if two_relay:
            header += [f"out_wd_d{delta:g}", f"out_pareto_d{delta:g}"]
    rows = []
    for ratio_db in ratio_db_grid:
        gbar = config.outage_threshold * snr_from_db(ratio_db)
        point_config = SystemConfig(
            config.n_relays, gbar, config.mean_energy, config.outage_threshold
        )
        row = [float(ratio_db)]
        for delta in deltas:
            row.append(cf.outage_ts(point_config, delta))
            row.append(cf.outage_tc(point_config, delta))
            if two_relay:
                row.append(cf.outage_wd(point_config, delta))
                row.append(_pareto_outage_at_delta(point_config, delta))
        rows.append(row)
    _write_csv(args.out, header, rows)
    if args.gnuplot and args.out not in (None, "-"):
        _write_gnuplot(args.out, header, "ratio_db", header[1:], logscale_y=True)
    return 0


def _pareto_outage_at_delta(config: SystemConfig, delta: float) -> float:
    """Outage of the outage-metric Pareto policy at a requested factor.

    Factors below the policy's feasible lower bound are lifted to it: the
    policy then transfers more energy than requested at no outage cost.
    """
    delta_lo, _ = cf.delta_range_outage(config)
    delta_eff = max(delta, delta_lo)
    if delta_eff >= 1.0:
        zeta = math.inf
    else:
        energy = cf.energy_from_delta(config, delta_eff)
        floor = cf.pareto_outage_energy_min(config)
        if energy <= floor + 1e-9 * config.mean_energy:
            zeta = 0.0
        else:
            zeta = solve_zeta_for_energy(config, energy, Metric.OUTAGE_INDICATOR)
    return 1.0 - cf.pareto_no_outage(config, zeta)


def cmd_montecarlo(args) -> int:
    config, seed = _build_config(args, {})
    if args.seed is not None:
        seed = args.seed
    scheme = _scheme_from_args(args)
    mc = MonteCarloConfig(
        n_frames=args.frames,
        seed=seed,
        batch_size=min(args.frames, args.batch_size),
        n_workers=args.workers,
    )
    result = run(config, scheme, mc)
    header = [
        "scheme", "n_frames", "seed",
        "capacity_mean", "capacity_stderr",
        "energy_mean", "energy_stderr",
        "outage_mean", "outage_stderr",
        "low_confidence",
    ] + [f"count_relay{i + 1}" for i in range(config.n_relays)]
    row = [
        args.scheme, args.frames, seed,
        result.capacity.mean, result.capacity.std_error,
        result.energy.mean, result.energy.std_error,
        result.outage.mean, result.outage.std_error,
        result.low_confidence,
    ] + list(result.selection_counts)
    _write_csv(args.out, header, [row])
    return 0


def _scheme_from_args(args) -> SchemeParam:
    if args.scheme == "time-sharing":
        if args.mu is None:
            raise ValueError("--mu is required for --scheme time-sharing")
        return TimeSharing(mu=args.mu)
    if args.scheme == "threshold-checking":
        if args.tau is None:
            raise ValueError("--tau is required for --scheme threshold-checking")
        return ThresholdChecking(tau=args.tau)
    if args.scheme == "weighted-difference":
        if args.energy_only:
            return WeightedDifference(nu=0.0, energy_only=True)
        if args.nu is None:
            raise ValueError("--nu is required for --scheme weighted-difference")
        return WeightedDifference(nu=args.nu)
    metric = Metric.CAPACITY if args.metric == "capacity" else Metric.OUTAGE_INDICATOR
    if args.energy_only:
        return ParetoOptimal(zeta=0.0, metric=metric, energy_only=True)
    if args.zeta is None:
        raise ValueError("--zeta is required for --scheme pareto")
    return ParetoOptimal(zeta=args.zeta, metric=metric)


# ---------------------------------------------------------------------------
#  Parser
# ---------------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="relayswipt",
        description="Capacity/outage versus wireless energy transfer tradeoffs "
                    "for relay selection over two-hop Rayleigh links.",
    )
    subs = parser.add_subparsers(dest="command", required=True)

    cap = subs.add_parser("tradeoff-capacity", help="capacity-energy tradeoff curves")
    _add_config_flags(cap)
    cap.add_argument("--preset", choices=["fig3", "fig4"])
    cap.add_argument("--grid", type=int, default=21, help="number of delta grid points")
    cap.add_argument("--x-axis", choices=["energy", "delta"], default=None)
    cap.add_argument("--with-mc", action="store_true", help="add Monte Carlo overlay columns")
    cap.add_argument("--frames", type=int, default=100_000, help="MC frames per overlay point")
    cap.set_defaults(handler=cmd_tradeoff_capacity)

    out = subs.add_parser("tradeoff-outage", help="no-outage versus energy tradeoff curves")
    _add_config_flags(out)
    out.add_argument("--preset", choices=["fig5"])
    out.add_argument("--grid", type=int, default=21)
    out.set_defaults(handler=cmd_tradeoff_outage)

    cvs = subs.add_parser("capacity-vs-snr", help="scheme capacities over an SNR grid")
    _add_config_flags(cvs)
    cvs.add_argument("--preset", choices=["fig6"])
    cvs.add_argument("--snr-db", default=None, help="SNR grid 'start:stop:num' in dB")
    cvs.add_argument("--deltas", default=None, help="comma list of tradeoff factors")
    cvs.set_defaults(handler=cmd_capacity_vs_snr)

    ovs = subs.add_parser("outage-vs-snr", help="scheme outage over an SNR/threshold grid")
    _add_config_flags(ovs)
    ovs.add_argument("--preset", choices=["fig7", "fig8"])
    ovs.add_argument("--ratio-db", default=None,
                     help="mean SNR over threshold, 'start:stop:num' in dB")
    ovs.add_argument("--deltas", default=None)
    ovs.set_defaults(handler=cmd_outage_vs_snr)

    mc = subs.add_parser("montecarlo", help="one Monte Carlo run, single CSV row")
    _add_config_flags(mc)
    mc.add_argument("--scheme", required=True,
                    choices=["time-sharing", "threshold-checking",
                             "weighted-difference", "pareto"])
    mc.add_argument("--mu", type=float, default=None)
    mc.add_argument("--tau", type=float, default=None)
    mc.add_argument("--nu", type=float, default=None)
    mc.add_argument("--zeta", type=float, default=None)
    mc.add_argument("--metric", choices=["capacity", "outage"], default="capacity")
    mc.add_argument("--energy-only", action="store_true",
                    help="use the infinite-weight (best-energy) limit")
    mc.add_argument("--frames", type=int, default=1_000_000)
    mc.add_argument("--batch-size", type=int, default=100_000)
    mc.add_argument("--workers", type=int, default=1)
    mc.set_defaults(handler=cmd_montecarlo)

    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.handler(args)
    except (ToleranceNotMetError, BracketError) as exc:
        print(f"numerical failure: {exc}", file=sys.stderr)
        return 1
    except (ValueError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
