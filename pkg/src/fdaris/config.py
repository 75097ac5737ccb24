"""Scenario configuration: YAML loading, validation, and derived quantities.

A scenario file fully describes one experiment: node placement, the FDA
frequency plan, RIS dimensions, link budget (dBm at this boundary, watts
everywhere else), path loss, subset sizes, technique, eavesdropper
specification, and the RNG seed. Validation failures name the offending
field with a dotted path. The bundled scenarios live under
``fdaris/scenarios/``; see SCHEMA.md there for the field reference.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from importlib import resources
from pathlib import Path
from typing import Any

import yaml

from .beamforming import SelectionSizes
from .channel import FdaPlan, PlanError, RisGeometry
from .geometry import GeometryError, PathLossModel, Placement, PolarLocation, \
    bs_to_ris_polar, path_loss_linear, to_polar
from .secrecy import CombineRule, LinkBudget

TECHNIQUES = ("conventional", "fda", "fda+ribes", "optimal-df")
_TECHNIQUE_ALIASES = {
    "optimal-delta-f": "optimal-df",
    "optimal-Δf": "optimal-df",
    "optimal-ΔF": "optimal-df",
}
EVE_MODES = ("fixed", "range-sweep", "angle-sweep", "circle", "grid")


class ConfigError(ValueError):
    """Invalid scenario; the message names the offending field path."""

    def __init__(self, field_path: str, message: str):
        self.field_path = field_path
        super().__init__(f"{field_path}: {message}")


def _get(section: dict, path: str, key: str, kind, required: bool = True,
         default=None):
    if key not in section:
        if required:
            raise ConfigError(f"{path}.{key}", "missing required field")
        return default
    value = section[key]
    try:
        if kind is float:
            return float(value)
        if kind is int:
            if isinstance(value, float) and not value.is_integer():
                raise ValueError
            return int(value)
        if kind is str:
            return str(value)
        if kind is list:
            return list(value)
    except (TypeError, ValueError):
        pass
    raise ConfigError(f"{path}.{key}", f"expected {kind.__name__}, got {value!r}")


def _pair(section: dict, path: str, key: str) -> tuple[float, float]:
    raw = _get(section, path, key, list)
    if len(raw) != 2:
        raise ConfigError(f"{path}.{key}", "expected a pair [x, y]")
    try:
        return float(raw[0]), float(raw[1])
    except (TypeError, ValueError):
        raise ConfigError(f"{path}.{key}", f"expected numeric pair, got {raw!r}")


@dataclass(frozen=True)
class EveSpec:
    """Eavesdropper placement: a point, a 1-D sweep, a circle, or a 2-D grid."""

    mode: str
    params: dict = field(default_factory=dict)


@dataclass(frozen=True)
class ScenarioConfig:
    placement: Placement
    plan: FdaPlan
    geom: RisGeometry
    budget: LinkBudget
    pathloss: PathLossModel
    m_s: int | str  # int or "auto"
    n_s: int | str
    technique: str
    seed: int
    combine: CombineRule
    eve: EveSpec
    raw: dict

    # -- derived geometry -------------------------------------------------
    def bs_leg(self) -> PolarLocation:
        return bs_to_ris_polar(self.placement)

    def bob_polar(self) -> PolarLocation:
        return to_polar(self.placement, self.placement.bob_xy)

    def pathloss_g(self) -> float:
        return path_loss_linear(self.pathloss, self.bs_leg().range_m)

    def pathloss_h_bob(self) -> float:
        return path_loss_linear(self.pathloss, self.bob_polar().range_m)

    def resolved_sizes(self) -> SelectionSizes:
        """Concrete subset sizes, resolving "auto" via the closed-form optima.

        The antenna size resolves first (with the element side at full
        selection, where its coefficient is largest); the element size then
        resolves against the concrete antenna size. At high SNR the two
        decouple, which is the regime the closed forms target.
        """
        from .optimize import auxiliary_coefficients, optimal_m_s, optimal_n_s

        m, n = self.plan.m_antennas, self.geom.n_elements
        m_s = self.m_s
        n_s = self.n_s
        theta_b = self.bob_polar().aoa_rad
        if m_s == "auto":
            coefs = auxiliary_coefficients(
                self.budget, self.pathloss_g(), self.pathloss_h_bob(),
                self.plan, self.geom, m_s=m, n_s=n if n_s == "auto" else int(n_s),
                theta_b=theta_b)
            m_s = optimal_m_s(coefs, m).subset_size
        if n_s == "auto":
            coefs = auxiliary_coefficients(
                self.budget, self.pathloss_g(), self.pathloss_h_bob(),
                self.plan, self.geom, m_s=int(m_s), n_s=n, theta_b=theta_b)
            n_s = optimal_n_s(coefs, n).subset_size
        sizes = SelectionSizes(m_s=int(m_s), n_s=int(n_s))
        sizes.validate_for(m, n)
        return sizes

    def to_dict(self) -> dict:
        return self.raw

    def dumps(self) -> str:
        return yaml.safe_dump(self.raw, sort_keys=False)


def _parse_eve(section: dict) -> EveSpec:
    mode = _get(section, "eve", "mode", str)
    if mode not in EVE_MODES:
        raise ConfigError("eve.mode", f"must be one of {EVE_MODES}, got {mode!r}")
    params: dict[str, Any] = {}
    path = "eve"
    if mode == "fixed":
        params["point_xy"] = _pair(section, path, "point_xy")
    elif mode == "range-sweep":
        lo, hi = _pair(section, path, "range_m")
        if not (0.0 < lo < hi):
            raise ConfigError("eve.range_m", "requires 0 < lo < hi")
        params["range_m"] = (lo, hi)
        params["count"] = _get(section, path, "count", int)
        aoa = section.get("aoa_rad", "bob")
        params["aoa_rad"] = aoa if aoa == "bob" else float(aoa)
    elif mode == "angle-sweep":
        lo, hi = _pair(section, path, "aoa_rad")
        if not lo < hi:
            raise ConfigError("eve.aoa_rad", "requires lo < hi")
        params["aoa_rad"] = (lo, hi)
        params["count"] = _get(section, path, "count", int)
        rng_m = section.get("range_m", "bob")
        params["range_m"] = rng_m if rng_m == "bob" else float(rng_m)
    elif mode == "circle":
        params["radius_m"] = _get(section, path, "radius_m", float)
        if params["radius_m"] <= 0.0:
            raise ConfigError("eve.radius_m", "must be positive")
        params["count"] = _get(section, path, "count", int)
    elif mode == "grid":
        params["x_m"] = _pair(section, path, "x_m")
        params["y_m"] = _pair(section, path, "y_m")
        params["nx"] = _get(section, path, "nx", int)
        params["ny"] = _get(section, path, "ny", int)
        if params["nx"] < 1 or params["ny"] < 1:
            raise ConfigError("eve.nx", "grid dimensions must be >= 1")
    if mode in ("range-sweep", "angle-sweep", "circle") and params["count"] < 1:
        raise ConfigError("eve.count", "sweep needs at least one point")
    return EveSpec(mode=mode, params=params)


def _section(data: dict, name: str) -> dict:
    sec = data.get(name)
    if not isinstance(sec, dict):
        raise ConfigError(name, "missing or not a mapping")
    return sec


def parse_config(data: dict) -> ScenarioConfig:
    if not isinstance(data, dict):
        raise ConfigError("<root>", "config must be a mapping")

    placement_sec = _section(data, "placement")
    if "bs_xy" in placement_sec and tuple(placement_sec["bs_xy"]) != (0.0, 0.0):
        raise ConfigError("placement.bs_xy", "the BS is pinned to the origin")
    try:
        placement = Placement(ris_xy=_pair(placement_sec, "placement", "ris_xy"),
                              bob_xy=_pair(placement_sec, "placement", "bob_xy"))
    except GeometryError as exc:
        raise ConfigError("placement", str(exc))

    plan_sec = _section(data, "plan")
    try:
        plan = FdaPlan(f0_hz=_get(plan_sec, "plan", "f0_hz", float),
                       delta_f_hz=_get(plan_sec, "plan", "delta_f_hz", float),
                       m_antennas=_get(plan_sec, "plan", "m_antennas", int))
    except PlanError as exc:
        raise ConfigError("plan", str(exc))

    ris_sec = _section(data, "ris")
    try:
        geom = RisGeometry.from_plan(plan, n_h=_get(ris_sec, "ris", "n_h", int),
                                     n_v=_get(ris_sec, "ris", "n_v", int))
    except PlanError as exc:
        raise ConfigError("ris", str(exc))

    budget_sec = _section(data, "budget")
    try:
        budget = LinkBudget.from_dbm(
            power_dbm=_get(budget_sec, "budget", "power_dbm", float),
            noise_bob_dbm=_get(budget_sec, "budget", "noise_bob_dbm", float),
            noise_eve_dbm=_get(budget_sec, "budget", "noise_eve_dbm", float))
    except ValueError as exc:
        raise ConfigError("budget", str(exc))

    pl_sec = _section(data, "pathloss")
    try:
        pathloss = PathLossModel(l0_db=_get(pl_sec, "pathloss", "l0_db", float),
                                 alpha=_get(pl_sec, "pathloss", "alpha", float))
    except GeometryError as exc:
        raise ConfigError("pathloss", str(exc))

    sel_sec = _section(data, "selection")

    def _size(key: str, limit: int):
        value = sel_sec.get(key)
        if value == "auto":
            return "auto"
        size = _get(sel_sec, "selection", key, int)
        if not (limit / 2.0 < size <= limit):
            raise ConfigError(f"selection.{key}",
                              f"must satisfy {limit}/2 < {key} <= {limit}, got {size}")
        return size

    m_s = _size("m_s", plan.m_antennas)
    n_s = _size("n_s", geom.n_elements)

    run_sec = _section(data, "run")
    technique = _get(run_sec, "run", "technique", str).lower()
    technique = _TECHNIQUE_ALIASES.get(technique, technique)
    if technique not in TECHNIQUES:
        raise ConfigError("run.technique",
                          f"must be one of {TECHNIQUES}, got {technique!r}")
    seed = _get(run_sec, "run", "seed", int)
    combine_raw = _get(run_sec, "run", "combine", str, required=False,
                       default="conjunction").lower()
    try:
        combine = CombineRule(combine_raw)
    except ValueError:
        raise ConfigError("run.combine",
                          f"must be 'conjunction' or 'union', got {combine_raw!r}")

    eve = _parse_eve(_section(data, "eve"))

    # Cross-field check: a fixed eavesdropper must not sit on the RIS.
    if eve.mode == "fixed":
        try:
            to_polar(placement, eve.params["point_xy"])
        except GeometryError as exc:
            raise ConfigError("eve.point_xy", str(exc))

    return ScenarioConfig(placement=placement, plan=plan, geom=geom,
                          budget=budget, pathloss=pathloss, m_s=m_s, n_s=n_s,
                          technique=technique, seed=seed, combine=combine,
                          eve=eve, raw=data)


def load_config(path: str | Path) -> ScenarioConfig:
    """Parse and validate a scenario file."""
    with open(path, "r", encoding="utf-8") as fh:
        try:
            data = yaml.safe_load(fh)
        except yaml.YAMLError as exc:
            raise ConfigError("<file>", f"not valid YAML: {exc}")
    return parse_config(data)


def loads_config(text: str) -> ScenarioConfig:
    return parse_config(yaml.safe_load(text))


def bundled_scenario_path(name: str) -> Path:
    """Path of a scenario shipped with the package (e.g. 'paper-baseline')."""
    return Path(str(resources.files("fdaris") / "scenarios" / f"{name}.yaml"))
