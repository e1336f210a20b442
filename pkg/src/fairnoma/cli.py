"""Command-line front end.

Three subcommands: ``region`` prints the fair allocation interval and the
capacities at its endpoints for one channel pair, ``figure`` sweeps a grid
and writes one CSV per canonical figure (closed forms next to Monte Carlo
estimates) together with a JSON manifest that reproduces the run, and
``multiuser`` prints the K-user minimum and full power vectors with their
fairness slacks.

Decibels exist only at this boundary: every flag named ``--xi-db`` is
converted to linear SNR on entry and echoed in both forms. CSV cells carry
17 significant digits so doubles round-trip. Exit codes: 0 ok, 1 domain
error, 2 usage error, 3 I/O error.
"""

from __future__ import annotations

import argparse
import datetime
import json
import math
import os
import sys

import numpy as np

from . import __version__
from .errors import DomainError
from .ergodic import ergodic_curve_point, high_snr_ergodic_approx
from .mcsim import (
    SimConfig,
    run_ergodic_pair,
    run_multiuser_power,
    run_outage,
    run_pairing,
)
from .multiuser import (
    ChannelSet,
    full_alloc_a,
    min_alloc_b,
    noma_capacity_k,
    oma_capacity_k,
    verify_fairness,
)
from .outage import outage_point
from .pairing import expected_gain_asup
from .twouser import (
    ChannelPair,
    SystemParams,
    fair_region,
    noma_capacity_strong,
    noma_capacity_weak,
    oma_capacity,
)

OUT_DIR_ENV = "FAIRNOMA_OUT_DIR"

_FIGURE_IDS = (1, 2, 3, 4, 5, 6)

# grid/parameter defaults per figure; xi_db is a sweep except for the
# K-sweep figures 3 and 5, which pin a single SNR
_XI_SWEEP = tuple(float(d) for d in range(0, 61, 2))
_K_SWEEP = tuple(range(2, 31))
_FIG_DEFAULTS = {
    1: {"xi_db": _XI_SWEEP},
    2: {"xi_db": _XI_SWEEP, "r0": 2.0},
    3: {"xi_db": (50.0,), "k_grid": _K_SWEEP},
    4: {"xi_db": _XI_SWEEP, "k": 10, "fixed_share": 0.2},
    5: {"xi_db": (50.0,), "k_grid": _K_SWEEP, "fixed_share": 0.2},
    6: {"xi_db": _XI_SWEEP, "k": 5},
}
_COMMON_DEFAULTS = {"trials": 1_000_000, "seed": 12345, "beta": 1.0}

_FIG1_HEADER = ("xi_db,e_c1_oma,e_c2_oma,e_c1_noma_ainf_cf,e_c2_noma_asup_cf,"
                "e_c1_noma_ainf_mc,e_c2_noma_asup_mc,approx_c1,approx_c2")


def _fmt(x: float) -> str:
    return format(float(x), ".17g")


def _txt(x: float) -> str:
    return format(float(x), ".12g")


def _db_to_linear(db: float) -> float:
    return 10.0 ** (db / 10.0)


def _linear_to_db(xi: float) -> float:
    return 10.0 * math.log10(xi)


def _parse_float_list(text: str) -> tuple:
    try:
        return tuple(float(tok) for tok in text.split(","))
    except ValueError as exc:
        raise argparse.ArgumentTypeError(str(exc))


def _parse_int_list(text: str) -> tuple:
    try:
        return tuple(int(tok) for tok in text.split(","))
    except ValueError as exc:
        raise argparse.ArgumentTypeError(str(exc))


def _write_text(path: str, text: str) -> None:
    with open(path, "w", encoding="utf-8", newline="") as fh:
        fh.write(text)


def _csv_text(header: str, rows: list) -> str:
    lines = [header]
    for row in rows:
        lines.append(",".join(_fmt(c) if isinstance(c, float) else str(c)
                              for c in row))
    return "\n".join(lines) + "\n"


# ---------------------------------------------------------------------------
# region


def cmd_region(args: argparse.Namespace) -> int:
    xi = _db_to_linear(args.xi_db) if args.xi is None else args.xi
    g1, g2 = args.g1, args.g2
    if not (math.isfinite(g1) and g1 > 0.0):
        raise DomainError(f"g1 must be positive, got {g1!r}")
    if not (math.isfinite(g2) and g2 > 0.0):
        raise DomainError(f"g2 must be positive, got {g2!r}")
    if g1 > g2:
        print("warning: g1 > g2, swapping so g1 is the weaker user",
              file=sys.stderr)
        g1, g2 = g2, g1
    params = SystemParams(xi=xi, beta=args.beta)
    region = fair_region(params, ChannelPair(g1=g1, g2=g2))

    lines = [
        f"xi = {_txt(xi)} ({_txt(_linear_to_db(xi))} dB)",
        f"g1 = {_txt(g1)}",
        f"g2 = {_txt(g2)}",
        f"a_inf = {_txt(region.a_inf)}",
        f"a_sup = {_txt(region.a_sup)}",
        f"width = {_txt(region.width)}",
    ]
    if g1 == g2:
        lines.append("note: degenerate region (g1 = g2), a_inf = a_sup")
    lines.append("capacities (b/s/Hz):")
    lines.append("share    c1_weak            c2_strong")
    rows = [
        ("oma", oma_capacity(xi, g1), oma_capacity(xi, g2)),
        ("a_inf", noma_capacity_weak(xi, g1, region.a_inf),
         noma_capacity_strong(xi, g2, region.a_inf)),
        ("a_sup", noma_capacity_weak(xi, g1, region.a_sup),
         noma_capacity_strong(xi, g2, region.a_sup)),
    ]
    for name, c1, c2 in rows:
        lines.append(f"{name:<8} {_txt(c1):<18} {_txt(c2)}")
    print("\n".join(lines))
    return 0


# ---------------------------------------------------------------------------
# figure


def _resolve_figure_params(args: argparse.Namespace) -> dict:
    """Defaults, then config file, then explicit flags; strict on keys."""
    cfg = {}
    if args.config is not None:
        with open(args.config, "r", encoding="utf-8") as fh:
            data = json.load(fh)
        if isinstance(data, dict) and "command" in data:
            # a manifest: unwrap its config echo
            data = data.get("config", {})
        if not isinstance(data, dict):
            raise DomainError("config file must hold a JSON object")
        cfg = data

    figure = args.figure
    if figure is None:
        figure = cfg.get("figure")
    if figure not in _FIGURE_IDS:
        raise _Usage(f"figure must be one of {list(_FIGURE_IDS)}, "
                     f"got {figure!r}")

    resolved = dict(_COMMON_DEFAULTS)
    resolved["figure"] = figure
    resolved.update(_FIG_DEFAULTS[figure])
    for key in resolved:
        if key != "figure" and cfg.get(key) is not None:
            resolved[key] = cfg[key]
    for key in resolved:
        flag = getattr(args, key, None)
        if key != "figure" and flag is not None:
            resolved[key] = flag

    if isinstance(resolved["xi_db"], (int, float)):
        resolved["xi_db"] = (float(resolved["xi_db"]),)
    resolved["xi_db"] = tuple(float(d) for d in resolved["xi_db"])
    if "k_grid" in resolved:
        resolved["k_grid"] = tuple(int(k) for k in resolved["k_grid"])
        if len(resolved["xi_db"]) != 1:
            raise _Usage(f"figure {figure} sweeps K at a single --xi-db")
    if not isinstance(resolved["trials"], int) or resolved["trials"] < 1:
        raise _Usage(f"trials must be a positive integer, "
                     f"got {resolved['trials']!r}")
    return resolved


def _xi_grid(p: dict) -> tuple:
    return tuple(_db_to_linear(d) for d in p["xi_db"])


def _fig1_rows(p: dict, workers) -> tuple:
    grid = _xi_grid(p)
    base = dict(trials=p["trials"], seed=p["seed"], xi_grid=grid,
                beta=p["beta"], scenario="pair_iid")
    mc_inf = run_ergodic_pair(SimConfig(a_policy="inf", **base), workers)
    mc_sup = run_ergodic_pair(SimConfig(a_policy="sup", **base), workers)
    rows = []
    for db, pt_inf, pt_sup in zip(p["xi_db"], mc_inf, mc_sup):
        params = SystemParams(xi=pt_inf.xi, beta=p["beta"])
        cf = ergodic_curve_point(params)
        ap1, ap2 = high_snr_ergodic_approx(params)
        rows.append([db, cf.e_c1_oma, cf.e_c2_oma,
                     cf.e_c1_noma_ainf, cf.e_c2_noma_asup,
                     pt_inf.measures["c1_noma"].mean,
                     pt_sup.measures["c2_noma"].mean, ap1, ap2])
    return _FIG1_HEADER, rows


def _fig2_rows(p: dict, workers) -> tuple:
    grid = _xi_grid(p)
    config = SimConfig(trials=p["trials"], seed=p["seed"], xi_grid=grid,
                       beta=p["beta"], r0=p["r0"], scenario="pair_iid")
    mc = run_outage(config, workers)
    rows = []
    for db, pt in zip(p["xi_db"], mc):
        params = SystemParams(xi=pt.xi, beta=p["beta"], r0=p["r0"])
        cf = outage_point(params)
        m = pt.measures
        rows.append([db, cf.p_oma_weak, cf.p_oma_strong,
                     cf.p_noma_weak_ainf, cf.p_noma_strong_asup,
                     m["p_oma_weak"].mean, m["p_oma_strong"].mean,
                     m["p_noma_weak_ainf"].mean, m["p_noma_strong_asup"].mean,
                     m["p_noma_weak_mid"].mean, m["p_noma_strong_mid"].mean])
    header = ("xi_db,p_oma_weak_cf,p_oma_strong_cf,p_noma_weak_ainf_cf,"
              "p_noma_strong_asup_cf,p_oma_weak_mc,p_oma_strong_mc,"
              "p_noma_weak_ainf_mc,p_noma_strong_asup_mc,p_noma_weak_mid_mc,"
              "p_noma_strong_mid_mc")
    return header, rows


def _pairing_points(p: dict, workers) -> list:
    k_grid = p["k_grid"] if "k_grid" in p else (p["k"],)
    config = SimConfig(trials=p["trials"], seed=p["seed"], xi_grid=_xi_grid(p),
                       beta=p["beta"], k_users=2,
                       a_policy=p.get("fixed_share", 0.2),
                       scenario="pair_minmax", k_grid=k_grid)
    return run_pairing(config, workers)


def _fig3_rows(p: dict, workers) -> tuple:
    rows = []
    for pt in _pairing_points(p, workers):
        m = pt.measures
        rows.append([pt.k, m["c_min_oma"].mean, m["c_max_oma"].mean,
                     m["c_min_ainf"].mean, m["c_max_ainf"].mean,
                     m["c_min_asup"].mean, m["c_max_asup"].mean])
    header = ("k,c_min_oma_mc,c_max_oma_mc,c_min_ainf_mc,c_max_ainf_mc,"
              "c_min_asup_mc,c_max_asup_mc")
    return header, rows


def _fig4_rows(p: dict, workers) -> tuple:
    rows = []
    for db, pt in zip(p["xi_db"], _pairing_points(p, workers)):
        m = pt.measures
        rows.append([db, m["s_oma"].mean, m["s_ainf"].mean,
                     m["s_asup"].mean, m["s_fixed"].mean])
    return "xi_db,s_oma_mc,s_ainf_mc,s_asup_mc,s_fixed_mc", rows


def _fig5_rows(p: dict, workers) -> tuple:
    rows = []
    for pt in _pairing_points(p, workers):
        m = pt.measures
        rows.append([pt.k, m["ds_ainf"].mean, m["ds_asup"].mean,
                     m["ds_fixed"].mean, expected_gain_asup(pt.k)])
    return "k,ds_ainf_mc,ds_asup_mc,ds_fixed_mc,gain_asup_cf", rows


def _fig6_rows(p: dict, workers) -> tuple:
    config = SimConfig(trials=p["trials"], seed=p["seed"], xi_grid=_xi_grid(p),
                       beta=p["beta"], k_users=p["k"], scenario="multiuser")
    mc = run_multiuser_power(config, workers)
    rows = [[db, pt.measures["sum_b"].mean] for db, pt in zip(p["xi_db"], mc)]
    return "xi_db,e_sum_b_mc", rows


_FIG_BUILDERS = {1: _fig1_rows, 2: _fig2_rows, 3: _fig3_rows,
                 4: _fig4_rows, 5: _fig5_rows, 6: _fig6_rows}

_PLOT_STYLE = {
    2: ("semilogy", "outage probability"),
    6: ("plot", "mean total power fraction"),
}


def _plot_script(figure: int, csv_name: str, header: str) -> str:
    cols = header.split(",")
    plot_fn, ylabel = _PLOT_STYLE.get(figure, ("plot", "b/s/Hz"))
    return f'''"""Plot {csv_name}."""

import csv
from pathlib import Path

import matplotlib.pyplot as plt

rows = list(csv.DictReader(Path(__file__).with_name("{csv_name}").open()))
x = [float(r["{cols[0]}"]) for r in rows]
fig, ax = plt.subplots()
for col in {cols[1:]!r}:
    ax.{plot_fn}(x, [float(r[col]) for r in rows], label=col)
ax.set_xlabel("{cols[0]}")
ax.set_ylabel("{ylabel}")
ax.legend(fontsize=8)
fig.tight_layout()
fig.savefig(Path(__file__).with_name("figure{figure}.png"), dpi=150)
'''


def cmd_figure(args: argparse.Namespace) -> int:
    p = _resolve_figure_params(args)
    figure = p["figure"]
    out_dir = args.out_dir or os.environ.get(OUT_DIR_ENV) or "."
    os.makedirs(out_dir, exist_ok=True)

    header, rows = _FIG_BUILDERS[figure](p, args.workers)

    csv_name = f"figure{figure}.csv"
    csv_path = os.path.join(out_dir, csv_name)
    _write_text(csv_path, _csv_text(header, rows))
    outputs = [csv_name]

    if args.plot:
        plot_name = f"figure{figure}_plot.py"
        _write_text(os.path.join(out_dir, plot_name),
                    _plot_script(figure, csv_name, header))
        outputs.append(plot_name)

    manifest = {
        "command": "figure",
        "config": {k: list(v) if isinstance(v, tuple) else v
                   for k, v in sorted(p.items())},
        "tool_version": __version__,
        "timestamp": datetime.datetime.now(
            datetime.timezone.utc).isoformat(timespec="seconds"),
        "output_paths": outputs,
    }
    manifest_path = os.path.join(out_dir, f"figure{figure}_manifest.json")
    _write_text(manifest_path, json.dumps(manifest, indent=2) + "\n")

    print(f"wrote {csv_path} ({len(rows)} rows) and {manifest_path}")
    return 0


# ---------------------------------------------------------------------------
# multiuser


def cmd_multiuser(args: argparse.Namespace) -> int:
    xi = _db_to_linear(args.xi_db) if args.xi is None else args.xi
    k = args.k
    if args.gains is not None:
        if len(args.gains) != k:
            raise _Usage(f"--gains lists {len(args.gains)} values but --k is {k}")
        gains = tuple(sorted(args.gains))
    else:
        rng = np.random.default_rng(args.seed)
        gains = tuple(np.sort(rng.exponential(args.beta, k)))
    channels = ChannelSet(gains=gains, beta=args.beta)

    b = min_alloc_b(xi, channels)
    a = full_alloc_a(xi, channels)
    sum_a = math.fsum(a.coeffs)
    lines = [
        f"k = {k}, xi = {_txt(xi)} ({_txt(_linear_to_db(xi))} dB), "
        f"beta = {_txt(args.beta)}",
        "gains (ascending) = " + ",".join(_txt(g) for g in gains),
        "b = " + ",".join(_txt(c) for c in b.coeffs),
        f"sum_b = {_txt(math.fsum(b.coeffs))}  residual_b = {_txt(b.residual)}",
        "a = " + ",".join(_txt(c) for c in a.coeffs),
        f"sum_a = {_txt(sum_a)}  residual_a = {_txt(a.residual)}",
        f"sum_a <= 1: {'OK' if sum_a <= 1.0 + 1e-12 else 'VIOLATED'}",
    ]
    if k == 2:
        region = fair_region(SystemParams(xi=xi, beta=args.beta),
                             ChannelPair(g1=gains[0], g2=gains[1]))
        lines.append(f"pair check: 1 - a_1 = {_txt(1.0 - a.coeffs[0])} "
                     f"(two-user a_sup = {_txt(region.a_sup)})")
    lines += [
        "user  c_oma              c_noma_b           slack_b            "
        "c_noma_a           slack_a",
    ]
    slack_b = verify_fairness(xi, channels, b)
    slack_a = verify_fairness(xi, channels, a)
    for i in range(1, k + 1):
        co = oma_capacity_k(xi, channels, i)
        cb = noma_capacity_k(xi, channels, b, i)
        ca = noma_capacity_k(xi, channels, a, i)
        lines.append(f"{i:<5} {_txt(co):<18} {_txt(cb):<18} "
                     f"{_txt(slack_b[i - 1]):<18} {_txt(ca):<18} "
                     f"{_txt(slack_a[i - 1])}")
    print("\n".join(lines))
    return 0


# ---------------------------------------------------------------------------
# parser / entry point


class _Usage(Exception):
    """Invalid flag combination detected after argparse."""


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="fairnoma",
        description="Fair power allocation for downlink NOMA: allocation "
                    "regions, capacity and outage curves, pairing gains, "
                    "K-user power vectors.")
    parser.add_argument("--version", action="version", version=__version__)
    sub = parser.add_subparsers(dest="command", required=True)

    region = sub.add_parser(
        "region", help="fair allocation interval for one channel pair")
    snr = region.add_mutually_exclusive_group(required=True)
    snr.add_argument("--xi-db", type=float, help="transmit SNR in dB")
    snr.add_argument("--xi", type=float, help="transmit SNR, linear")
    region.add_argument("--g1", type=float, required=True,
                        help="weaker channel SNR gain")
    region.add_argument("--g2", type=float, required=True,
                        help="stronger channel SNR gain")
    region.add_argument("--beta", type=float, default=1.0)
    region.set_defaults(func=cmd_region)

    figure = sub.add_parser(
        "figure", help="write one canonical figure as CSV plus manifest")
    figure.add_argument("figure", type=int, choices=_FIGURE_IDS, nargs="?",
                        help="figure id (may come from --config instead)")
    figure.add_argument("--trials", type=int)
    figure.add_argument("--seed", type=int)
    figure.add_argument("--beta", type=float)
    figure.add_argument("--r0", type=float, help="target rate, figure 2")
    figure.add_argument("--k", type=int, help="user count, figures 4 and 6")
    figure.add_argument("--k-grid", type=_parse_int_list, dest="k_grid",
                        help="comma list of K values, figures 3 and 5")
    figure.add_argument("--xi-db", type=_parse_float_list, dest="xi_db",
                        help="comma list of SNR points in dB")
    figure.add_argument("--fixed-share", type=float, dest="fixed_share",
                        help="benchmark strong-user share, figures 4 and 5")
    figure.add_argument("--config", help="JSON config or manifest to re-run")
    figure.add_argument("--out-dir", dest="out_dir",
                        help=f"output directory (default ${OUT_DIR_ENV} or .)")
    figure.add_argument("--workers", type=int)
    figure.add_argument("--plot", action="store_true",
                        help="also write a matplotlib script")
    figure.set_defaults(func=cmd_figure)

    multi = sub.add_parser(
        "multiuser", help="K-user minimum and full power vectors")
    multi.add_argument("--k", type=int, required=True)
    snr = multi.add_mutually_exclusive_group(required=True)
    snr.add_argument("--xi-db", type=float)
    snr.add_argument("--xi", type=float)
    gains = multi.add_mutually_exclusive_group(required=True)
    gains.add_argument("--gains", type=_parse_float_list,
                       help="comma list of K channel gains")
    gains.add_argument("--random", action="store_true",
                       help="draw K exponential gains")
    multi.add_argument("--seed", type=int, default=12345)
    multi.add_argument("--beta", type=float, default=1.0)
    multi.set_defaults(func=cmd_multiuser)

    return parser


def main(argv=None) -> int:
    parser = _build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return 2 if exc.code is None else int(exc.code)
    try:
        return args.func(args)
    except _Usage as exc:
        print(f"usage error: {exc}", file=sys.stderr)
        return 2
    except DomainError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    except OSError as exc:
        print(f"io error: {exc}", file=sys.stderr)
        return 3


if __name__ == "__main__":
    sys.exit(main())
