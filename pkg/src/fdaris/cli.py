"""Command-line front end.

Subcommands:

* ``report``   - secrecy report for one eavesdropper location
* ``heatmap``  - per-technique rate grid over 2-D eavesdropper positions (CSV)
* ``sweep``    - closed-form (and optional Monte-Carlo) curves along a sweep (CSV)
* ``optimize`` - optimal subset sizes plus the objective sweeps (CSV)
* ``verify``   - oracle suites (moments | snr | bounds | all) as JSON lines

Exit codes: 0 success, 1 configuration/validation error, 2 verification
failure. CSV output is deterministic for a fixed config and seed: fixed
column order, C-locale numbers, rows emitted in input order.
"""

from __future__ import annotations

import argparse
import dataclasses
import json
import math
import sys

import numpy as np

from . import oracle
from .beamforming import SelectionSizes
from .channel import FdaPlan
from .config import ConfigError, ScenarioConfig, bundled_scenario_path, load_config
from .geometry import GeometryError, PolarLocation, circle_trajectory, \
    path_loss_linear, to_polar
from .optimize import EquidistantEveError, InfeasibleIncrementError, \
    auxiliary_coefficients, cut_objective, optimal_delta_f, optimal_m_s, \
    optimal_n_s, secrecy_upper_bound
from .secrecy import CombineRule, SecrecyReport, eve_snr_fda_grid, \
    eve_snr_ribes_grid, eve_upper_bounds, in_wiretap, secrecy_rate, \
    snr_bob_fda, snr_bob_ribes, snr_eve_fda, snr_eve_ribes, wiretap_region
from .stats import kernels_at, scaling_stats
from .units import linear_to_db


def _fmt(value) -> str:
    if isinstance(value, bool):
        return str(value).lower()
    if isinstance(value, (int, np.integer)):
        return str(int(value))
    return format(float(value), ".12g")


def _write_csv(out, header: list[str], rows) -> None:
    out.write(",".join(header) + "\n")
    for row in rows:
        out.write(",".join(_fmt(v) for v in row) + "\n")


def _conventional_plan(plan: FdaPlan) -> FdaPlan:
    return FdaPlan(f0_hz=plan.f0_hz, delta_f_hz=0.0, m_antennas=plan.m_antennas)


def _eve_polar_points(cfg: ScenarioConfig):
    """Materialize the eavesdropper spec into (label columns, polar points)."""
    mode = cfg.eve.mode
    params = cfg.eve.params
    bob = cfg.bob_polar()
    if mode == "fixed":
        loc = to_polar(cfg.placement, params["point_xy"])
        return ["r_e_m", "theta_e_rad"], [((loc.range_m, loc.aoa_rad), loc)]
    if mode == "range-sweep":
        lo, hi = params["range_m"]
        aoa = bob.aoa_rad if params["aoa_rad"] == "bob" else params["aoa_rad"]
        points = []
        for r in np.linspace(lo, hi, params["count"]):
            loc = PolarLocation(range_m=float(r), aoa_rad=aoa)
            points.append(((loc.range_m,), loc))
        return ["r_e_m"], points
    if mode == "angle-sweep":
        lo, hi = params["aoa_rad"]
        r = bob.range_m if params["range_m"] == "bob" else params["range_m"]
        points = []
        for th in np.linspace(lo, hi, params["count"]):
            loc = PolarLocation(range_m=r, aoa_rad=float(th))
            points.append(((loc.aoa_rad,), loc))
        return ["theta_e_rad"], points
    if mode == "circle":
        points = []
        for phi in np.linspace(0.0, 2.0 * math.pi, params["count"]):
            xy = circle_trajectory(cfg.placement.bob_xy, params["radius_m"],
                                   float(phi))
            loc = to_polar(cfg.placement, xy)
            points.append(((float(phi), xy[0], xy[1]), loc))
        return ["phi_rad", "x_e_m", "y_e_m"], points
    raise ConfigError("eve.mode", f"{mode!r} is not a point sweep")


def build_report(cfg: ScenarioConfig, eve: PolarLocation) -> dict:
    """Full secrecy report for one eavesdropper location, as a plain dict."""
    plan = cfg.plan
    sizes = cfg.resolved_sizes()
    bob = cfg.bob_polar()
    pl_g = cfg.pathloss_g()
    pl_hb = cfg.pathloss_h_bob()
    pl_he = path_loss_linear(cfg.pathloss, eve.range_m)
    m, n = plan.m_antennas, cfg.geom.n_elements

    technique = cfg.technique
    extra: dict = {}
    if technique == "conventional":
        plan_used = _conventional_plan(plan)
        gamma_b = snr_bob_fda(cfg.budget, pl_g, pl_hb, m, n)
        kernels = kernels_at(plan_used, cfg.geom, bob, eve)
        gamma_e = snr_eve_fda(cfg.budget, pl_g, pl_he, kernels, m)
        rate = secrecy_rate(gamma_b, gamma_e)
    elif technique == "fda":
        plan_used = plan
        gamma_b = snr_bob_fda(cfg.budget, pl_g, pl_hb, m, n)
        kernels = kernels_at(plan_used, cfg.geom, bob, eve)
        gamma_e = snr_eve_fda(cfg.budget, pl_g, pl_he, kernels, m)
        rate = secrecy_rate(gamma_b, gamma_e)
    elif technique == "fda+ribes":
        plan_used = plan
        gamma_b = snr_bob_ribes(cfg.budget, pl_g, pl_hb, m, n, sizes)
        kernels = kernels_at(plan_used, cfg.geom, bob, eve)
        stats = scaling_stats(pl_g, pl_he, plan_used, cfg.geom, sizes, kernels)
        gamma_e = snr_eve_ribes(stats, cfg.budget)
        rate = secrecy_rate(gamma_b, gamma_e)
        ub1, ub2, lam = eve_upper_bounds(sizes, m, cfg.geom, bob.aoa_rad)
        extra = {"ub1": ub1, "ub2": ub2, "lambda": lam}
    elif technique == "optimal-df":
        df_star = optimal_delta_f(plan, bob, eve)
        plan_used = FdaPlan(f0_hz=plan.f0_hz, delta_f_hz=df_star,
                            m_antennas=m)
        gamma_b = snr_bob_ribes(cfg.budget, pl_g, pl_hb, m, n, sizes)
        gamma_e = 0.0  # range null placed exactly on the eavesdropper
        rate = math.log2(1.0 + gamma_b)
        extra = {"delta_f_star_hz": df_star}
    else:  # pragma: no cover - config validation rejects unknown techniques
        raise ConfigError("run.technique", f"unknown technique {technique!r}")

    region = wiretap_region(plan_used, cfg.geom, bob, cfg.combine)
    report = SecrecyReport(
        gamma_bob=gamma_b, gamma_eve=gamma_e, rate_bits=rate,
        technique=technique, in_wiretap=in_wiretap(region, bob, eve),
        ub1=extra.get("ub1"), ub2=extra.get("ub2"),
        rate_upper_bound=secrecy_upper_bound(cfg.budget, pl_g, pl_hb, m, n),
    )
    out = dataclasses.asdict(report)
    out.update({k: v for k, v in extra.items() if k not in out})
    out["eve_range_m"] = eve.range_m
    out["eve_theta_rad"] = eve.aoa_rad
    out["m_s"] = sizes.m_s
    out["n_s"] = sizes.n_s
    out["combine"] = cfg.combine.value
    return out


def cmd_report(cfg: ScenarioConfig, args) -> int:
    if args.eve is not None:
        eve = to_polar(cfg.placement, (args.eve[0], args.eve[1]))
    elif cfg.eve.mode == "fixed":
        eve = to_polar(cfg.placement, cfg.eve.params["point_xy"])
    else:
        raise ConfigError("eve.mode",
                          "report needs a fixed eavesdropper (or pass --eve X Y)")
    report = build_report(cfg, eve)
    if args.json:
        print(json.dumps(report, indent=2, default=_json_default))
        return 0
    print(f"technique        : {report['technique']}")
    print(f"eve (polar)      : R_E = {report['eve_range_m']:.4f} m, "
          f"theta_E = {report['eve_theta_rad']:.4f} rad")
    print(f"gamma_bob        : {report['gamma_bob']:.6g} "
          f"({linear_to_db(report['gamma_bob']):.2f} dB)")
    ge = report["gamma_eve"]
    ge_db = "-inf" if ge == 0.0 else f"{linear_to_db(ge):.2f}"
    print(f"gamma_eve        : {ge:.6g} ({ge_db} dB)")
    print(f"secrecy rate     : {report['rate_bits']:.4f} bits/s/Hz")
    print(f"rate ceiling     : {report['rate_upper_bound']:.4f} bits/s/Hz")
    print(f"in wiretap area  : {report['in_wiretap']} "
          f"(combine={report['combine']})")
    if report.get("ub1") is not None:
        print(f"eve SNR bounds   : range cut {report['ub1']:.6g}, "
              f"angle cut {report['ub2']:.6g} (lambda = {report['lambda']:.4f})")
    if report.get("delta_f_star_hz") is not None:
        print(f"optimal increment: {report['delta_f_star_hz']:.6g} Hz")
    return 0


def cmd_heatmap(cfg: ScenarioConfig, args) -> int:
    if cfg.eve.mode != "grid":
        raise ConfigError("eve.mode", "heatmap requires eve.mode = grid")
    p = cfg.eve.params
    xs = np.linspace(p["x_m"][0], p["x_m"][1], p["nx"])
    ys = np.linspace(p["y_m"][0], p["y_m"][1], p["ny"])
    gx, gy = np.meshgrid(xs, ys)  # row per y scanline
    dx = gx.ravel() - cfg.placement.ris_xy[0]
    dy = gy.ravel() - cfg.placement.ris_xy[1]
    ranges = np.maximum(np.hypot(dx, dy), 1e-6)  # guard the RIS cell
    thetas = np.arctan2(dy, dx)

    plan = cfg.plan
    plan0 = _conventional_plan(plan)
    sizes = cfg.resolved_sizes()
    bob = cfg.bob_polar()
    pl_g = cfg.pathloss_g()
    pl_hb = cfg.pathloss_h_bob()
    m, n = plan.m_antennas, cfg.geom.n_elements

    gamma_b = snr_bob_fda(cfg.budget, pl_g, pl_hb, m, n)
    gamma_b_star = snr_bob_ribes(cfg.budget, pl_g, pl_hb, m, n, sizes)
    ge_conv = eve_snr_fda_grid(cfg.budget, pl_g, plan0, cfg.geom, bob,
                               ranges, thetas, cfg.pathloss)
    ge_fda = eve_snr_fda_grid(cfg.budget, pl_g, plan, cfg.geom, bob,
                              ranges, thetas, cfg.pathloss)
    ge_ribes = eve_snr_ribes_grid(cfg.budget, pl_g, plan, cfg.geom, sizes,
                                  bob, ranges, thetas, cfg.pathloss)

    def rate_of(gb, ge):
        return np.maximum(0.0, np.log2(1.0 + gb) - np.log2(1.0 + ge))

    rate_conv = rate_of(gamma_b, ge_conv)
    rate_fda = rate_of(gamma_b, ge_fda)
    rate_ribes = rate_of(gamma_b_star, ge_ribes)
    rate_ub = secrecy_upper_bound(cfg.budget, pl_g, pl_hb, m, n)

    rows = (
        (gx.ravel()[i], gy.ravel()[i], rate_conv[i], rate_fda[i],
         rate_ribes[i], rate_ub)
        for i in range(gx.size)
    )
    with _open_out(args.out) as out:
        _write_csv(out, ["x_m", "y_m", "rate_conv", "rate_fda", "rate_ribes",
                         "rate_ub"], rows)
    return 0


def cmd_sweep(cfg: ScenarioConfig, args) -> int:
    if cfg.eve.mode not in ("range-sweep", "angle-sweep", "circle"):
        raise ConfigError("eve.mode", "sweep requires a sweep-style eve spec "
                          "(range-sweep | angle-sweep | circle)")
    label_cols, points = _eve_polar_points(cfg)
    plan = cfg.plan
    plan0 = _conventional_plan(plan)
    sizes = cfg.resolved_sizes()
    bob = cfg.bob_polar()
    pl_g = cfg.pathloss_g()
    pl_hb = cfg.pathloss_h_bob()
    m, n = plan.m_antennas, cfg.geom.n_elements

    gamma_b = snr_bob_fda(cfg.budget, pl_g, pl_hb, m, n)
    gamma_b_star = snr_bob_ribes(cfg.budget, pl_g, pl_hb, m, n, sizes)

    header = list(label_cols) + [
        "snr_bob_fda_db", "snr_bob_ribes_db", "snr_eve_conv_db",
        "snr_eve_fda_db", "snr_eve_ribes_db", "rate_conv_bits",
        "rate_fda_bits", "rate_ribes_bits",
    ]
    mc = args.samples > 0
    if mc:
        header += ["mc_snr_eve_ribes", "mc_std_error"]

    def _db(x):
        return -math.inf if x <= 0.0 else float(linear_to_db(x))

    rows = []
    for labels, eve in points:
        pl_he = path_loss_linear(cfg.pathloss, eve.range_m)
        k0 = kernels_at(plan0, cfg.geom, bob, eve)
        k1 = kernels_at(plan, cfg.geom, bob, eve)
        ge_conv = snr_eve_fda(cfg.budget, pl_g, pl_he, k0, m)
        ge_fda = snr_eve_fda(cfg.budget, pl_g, pl_he, k1, m)
        stats = scaling_stats(pl_g, pl_he, plan, cfg.geom, sizes, k1)
        ge_ribes = snr_eve_ribes(stats, cfg.budget)
        row = list(labels) + [
            _db(gamma_b), _db(gamma_b_star), _db(ge_conv), _db(ge_fda),
            _db(ge_ribes),
            secrecy_rate(gamma_b, ge_conv),
            secrecy_rate(gamma_b, ge_fda),
            secrecy_rate(gamma_b_star, ge_ribes),
        ]
        if mc:
            mc_report = oracle.monte_carlo_eve_snr(
                plan, cfg.geom, cfg.placement, cfg.budget, cfg.pathloss,
                sizes, eve, samples=args.samples, seed=args.seed,
                threads=args.threads)
            row += [mc_report.empirical_snr, mc_report.std_error]
        rows.append(row)

    with _open_out(args.out) as out:
        _write_csv(out, header, rows)
    return 0


def cmd_optimize(cfg: ScenarioConfig, args) -> int:
    plan = cfg.plan
    m, n = plan.m_antennas, cfg.geom.n_elements
    bob = cfg.bob_polar()
    m_s_cfg = m if cfg.m_s == "auto" else int(cfg.m_s)
    n_s_cfg = n if cfg.n_s == "auto" else int(cfg.n_s)
    coefs = auxiliary_coefficients(cfg.budget, cfg.pathloss_g(),
                                   cfg.pathloss_h_bob(), plan, cfg.geom,
                                   m_s=m_s_cfg, n_s=n_s_cfg,
                                   theta_b=bob.aoa_rad)
    res_m = optimal_m_s(coefs, m)
    # The element subproblem sees the optimized antenna subset.
    coefs_n = auxiliary_coefficients(cfg.budget, cfg.pathloss_g(),
                                     cfg.pathloss_h_bob(), plan, cfg.geom,
                                     m_s=res_m.subset_size, n_s=n_s_cfg,
                                     theta_b=bob.aoa_rad)
    res_n = optimal_n_s(coefs_n, n)

    rows = []
    for s in range(m // 2 + 1, m + 1):
        rows.append(["m_s", s, cut_objective(m, s, coefs.eta_b, coefs.eta_e)])
    for s in range(n // 2 + 1, n + 1):
        rows.append(["n_s", s, cut_objective(n, s, coefs_n.zeta_b,
                                             coefs_n.zeta_e)])
    if args.out:
        with _open_out(args.out) as out:
            _write_csv(out, ["param", "size", "objective_bits"], rows)

    summary = {
        "m_s_star": res_m.subset_size,
        "m_s_method": res_m.method.value,
        "m_s_objective_bits": res_m.objective_bits,
        "n_s_star": res_n.subset_size,
        "n_s_method": res_n.method.value,
        "n_s_objective_bits": res_n.objective_bits,
        "eta_b": coefs.eta_b, "eta_e": coefs.eta_e,
        "zeta_b": coefs_n.zeta_b, "zeta_e": coefs_n.zeta_e,
    }
    if args.json:
        print(json.dumps(summary, indent=2, default=_json_default))
    else:
        print(f"optimal m_s      : {res_m.subset_size} of {m} "
              f"({res_m.method.value}), objective "
              f"{res_m.objective_bits:.4f} bits/s/Hz")
        print(f"optimal n_s      : {res_n.subset_size} of {n} "
              f"({res_n.method.value}), objective "
              f"{res_n.objective_bits:.4f} bits/s/Hz")
    return 0


def cmd_verify(cfg: ScenarioConfig, args) -> int:
    records = run_verification(cfg, args.suite, samples=args.samples,
                               seed=args.seed, threads=args.threads)
    with _open_out(args.out) as out:
        for rec in records:
            out.write(json.dumps(rec, default=_json_default) + "\n")
    failed = [r for r in records if not r.get("pass", True)]
    checked = [r for r in records if not r.get("skipped", False)]
    print(f"verify: {len(checked) - len(failed)}/{len(checked)} checks passed"
          + (f", {len(records) - len(checked)} skipped"
             if len(records) != len(checked) else ""),
          file=sys.stderr)
    return 2 if failed else 0


def run_verification(cfg: ScenarioConfig, suite: str, samples: int, seed: int,
                     threads: int = 1) -> list[dict]:
    """Oracle suites as JSON-ready records."""
    if suite not in ("moments", "snr", "bounds", "all"):
        raise ConfigError("suite", f"unknown suite {suite!r}")
    records: list[dict] = []
    if suite in ("moments", "all"):
        records += _moment_checks(cfg, seed)
    if suite in ("snr", "all"):
        records += _snr_checks(cfg, samples, seed, threads)
    if suite in ("bounds", "all"):
        records += _bound_checks(cfg)
    return records


def _record(check: str, closed, value, tol: float, ok: bool, **extra) -> dict:
    rec = {"check": check, "closed_form": closed, "oracle": value,
           "error": abs(value - closed) if None not in (value, closed) else None,
           "tolerance": tol, "pass": bool(ok)}
    rec.update(extra)
    return rec


def _moment_checks(cfg: ScenarioConfig, seed: int) -> list[dict]:
    from .channel import RisGeometry

    rng = np.random.default_rng(seed)
    bob = cfg.bob_polar()
    records = []
    for m in (4, 5, 6, 8):
        plan = FdaPlan(f0_hz=cfg.plan.f0_hz, delta_f_hz=1e6, m_antennas=m)
        for m_s in (m // 2 + 1, m):
            offset = float(rng.uniform(-60.0, 60.0))
            eve = PolarLocation(range_m=bob.range_m + offset, aoa_rad=bob.aoa_rad)
            rep = oracle.enumerate_u_moments(
                plan, bob, eve, SelectionSizes(m_s=m_s, n_s=1))
            records.append(_record(
                f"u-moments M={m} Ms={m_s}", 0.0, rep.max_rel_error, 1e-12,
                rep.max_rel_error < 1e-12, subsets=rep.subset_count))
    for n_h, n_v in ((2, 2), (2, 3), (2, 4)):
        geom = RisGeometry.from_plan(cfg.plan, n_h, n_v)
        n = geom.n_elements
        for n_s in (n // 2 + 1, n):
            theta = float(rng.uniform(-1.2, 1.2))
            eve = PolarLocation(range_m=bob.range_m, aoa_rad=theta)
            rep = oracle.enumerate_v_moments(
                cfg.plan, geom, cfg.bs_leg().aoa_rad, bob, eve,
                SelectionSizes(m_s=cfg.plan.m_antennas, n_s=n_s))
            records.append(_record(
                f"v-moments N={n_h}x{n_v} Ns={n_s}", 0.0, rep.max_rel_error,
                1e-12, rep.max_rel_error < 1e-12, subsets=rep.subset_count))
    return records


def _snr_checks(cfg: ScenarioConfig, samples: int, seed: int,
                threads: int) -> list[dict]:
    from .beamforming import draw_mask

    sizes = cfg.resolved_sizes()
    m, n = cfg.plan.m_antennas, cfg.geom.n_elements
    records = []

    closed = snr_bob_ribes(cfg.budget, cfg.pathloss_g(), cfg.pathloss_h_bob(),
                           m, n, sizes)
    closed_db = float(linear_to_db(closed))
    rng = np.random.default_rng(seed)
    worst = 0.0
    for _ in range(20):
        mask = draw_mask(rng, sizes, m, n)
        snr = oracle.synthesized_bob_snr(
            cfg.plan, cfg.geom, cfg.placement, cfg.budget, cfg.pathloss,
            sizes, mask.element_signs(n), mask.antenna_signs(m))
        worst = max(worst, abs(float(linear_to_db(snr)) - closed_db))
    records.append(_record("bob-signal-20-masks-db", 0.0, worst, 0.1,
                           worst < 0.1))

    if cfg.eve.mode == "fixed":
        eve = to_polar(cfg.placement, cfg.eve.params["point_xy"])
    else:
        bob = cfg.bob_polar()
        eve = PolarLocation(range_m=50.0, aoa_rad=bob.aoa_rad)
    rep = oracle.monte_carlo_eve_snr(cfg.plan, cfg.geom, cfg.placement,
                                     cfg.budget, cfg.pathloss, sizes, eve,
                                     samples=max(samples, 100), seed=seed,
                                     threads=threads)
    tol = 3.0 * rep.std_error + 1e-12
    err = abs(rep.empirical_snr - rep.closed_form_snr)
    records.append(_record("eve-mc-snr", rep.closed_form_snr,
                           rep.empirical_snr, tol, err <= tol,
                           samples=rep.samples, std_error=rep.std_error))
    return records


def _bound_checks(cfg: ScenarioConfig) -> list[dict]:
    sizes = cfg.resolved_sizes()
    m = cfg.plan.m_antennas
    bob = cfg.bob_polar()
    ub1, ub2, lam = eve_upper_bounds(sizes, m, cfg.geom, bob.aoa_rad)
    records = []
    try:
        rep = oracle.grid_max_eve_snr(cfg.budget, cfg.pathloss,
                                      cfg.pathloss_g(), cfg.plan, cfg.geom,
                                      sizes, bob, "range", 1.0, 200.0, 2000)
        records.append(_record("bound-range-cut", ub1, rep.max_snr, 0.0,
                               rep.max_snr <= ub1, points=rep.points))
    except ValueError as exc:
        records.append({"check": "bound-range-cut", "skipped": True,
                        "reason": str(exc), "pass": True})
    rep = oracle.grid_max_eve_snr(cfg.budget, cfg.pathloss, cfg.pathloss_g(),
                                  cfg.plan, cfg.geom, sizes, bob, "angle",
                                  -0.5 * math.pi, 0.5 * math.pi, 2000)
    records.append(_record("bound-angle-cut", ub2, rep.max_snr, 0.0,
                           rep.max_snr <= ub2, points=rep.points,
                           lam=lam))
    return records


class _open_out:
    """Context manager: file path or stdout."""

    def __init__(self, path):
        self.path = path
        self.fh = None

    def __enter__(self):
        if self.path in (None, "-"):
            return sys.stdout
        self.fh = open(self.path, "w", encoding="utf-8", newline="")
        return self.fh

    def __exit__(self, *exc):
        if self.fh is not None:
            self.fh.close()
        return False


def _json_default(obj):
    if isinstance(obj, (np.floating, np.integer)):
        return obj.item()
    if isinstance(obj, complex):
        return {"re": obj.real, "im": obj.imag}
    raise TypeError(f"not JSON serializable: {type(obj)}")


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="fdaris",
        description="Secrecy-rate toolkit for RIS-assisted links with a "
                    "frequency diverse array and randomized subset selection.")
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p):
        p.add_argument("--config", default=None,
                       help="scenario YAML (default: bundled paper-baseline)")
        p.add_argument("--seed", type=int, default=None,
                       help="override the scenario seed")
        p.add_argument("--threads", type=int, default=1)
        p.add_argument("--combine", choices=["conjunction", "union"],
                       default=None, help="override the wiretap combine rule")
        p.add_argument("--json", action="store_true",
                       help="machine-readable output where applicable")
        p.add_argument("--out", default=None, help="output path (default stdout)")

    p = sub.add_parser("report", help="secrecy report at one location")
    common(p)
    p.add_argument("--eve", type=float, nargs=2, metavar=("X", "Y"),
                   help="override the eavesdropper position")

    p = sub.add_parser("heatmap", help="rate grid CSV over 2-D positions")
    common(p)

    p = sub.add_parser("sweep", help="curve CSV along the configured sweep")
    common(p)
    p.add_argument("--samples", type=int, default=0,
                   help="add Monte-Carlo columns with this many symbols")

    p = sub.add_parser("optimize", help="optimal subset sizes + objective sweeps")
    common(p)

    p = sub.add_parser("verify", help="run oracle suites")
    common(p)
    p.add_argument("suite", nargs="?", default="all",
                   choices=["moments", "snr", "bounds", "all"])
    p.add_argument("--samples", type=int, default=100_000)
    return parser


def main(argv=None) -> int:
    args = _build_parser().parse_args(argv)
    try:
        path = args.config or bundled_scenario_path("paper-baseline")
        cfg = load_config(path)
        if args.seed is not None:
            cfg = dataclasses.replace(cfg, seed=args.seed)
        if args.combine is not None:
            cfg = dataclasses.replace(cfg, combine=CombineRule(args.combine))
        if args.seed is None:
            args.seed = cfg.seed
        handler = {
            "report": cmd_report,
            "heatmap": cmd_heatmap,
            "sweep": cmd_sweep,
            "optimize": cmd_optimize,
            "verify": cmd_verify,
        }[args.command]
        return handler(cfg, args)
    except (ConfigError, GeometryError, EquidistantEveError,
            InfeasibleIncrementError, FileNotFoundError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
