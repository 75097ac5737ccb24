"""Receiver SNRs, secrecy rates, the protected/wiretap regions, and bounds.

Four transmission modes are covered: a conventional phased array (zero
frequency increment), the frequency diverse array alone, the diverse array
with randomized subsets, and the per-eavesdropper optimal increment. SNR
expressions are the closed forms; the signal-level and grid oracles that
validate them live in the oracle module.
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass

import numpy as np

from .beamforming import SelectionSizes
from .channel import FdaPlan, RisGeometry
from .geometry import PolarLocation
from .stats import DirichletKernels, ScalingStats, dirichlet
from .units import SPEED_OF_LIGHT, dbm_to_watts


@dataclass(frozen=True)
class LinkBudget:
    """Transmit power and receiver noise powers, all in watts."""

    power_w: float
    noise_bob_w: float
    noise_eve_w: float

    def __post_init__(self):
        if self.power_w <= 0.0 or self.noise_bob_w <= 0.0 or self.noise_eve_w < 0.0:
            raise ValueError("power and noise levels must be positive "
                             "(noise_eve_w may be 0 for the noise-free limit)")

    @classmethod
    def from_dbm(cls, power_dbm: float, noise_bob_dbm: float,
                 noise_eve_dbm: float) -> "LinkBudget":
        return cls(
            power_w=float(dbm_to_watts(power_dbm)),
            noise_bob_w=float(dbm_to_watts(noise_bob_dbm)),
            noise_eve_w=float(dbm_to_watts(noise_eve_dbm)),
        )


class CombineRule(enum.Enum):
    """How the range and angle exceedance conditions form the wiretap set."""

    CONJUNCTION = "conjunction"
    UNION = "union"


def snr_bob_fda(budget: LinkBudget, pathloss_g: float, pathloss_h_bob: float,
                m: int, n: int) -> float:
    """Intended receiver's SNR with full MRT and co-phased elements: P/sigma^2 * L * M * N^2."""
    return budget.power_w / budget.noise_bob_w * pathloss_g * pathloss_h_bob \
        * m * n * n


def snr_bob_ribes(budget: LinkBudget, pathloss_g: float, pathloss_h_bob: float,
                  m: int, n: int, sizes: SelectionSizes) -> float:
    """Intended receiver's SNR under randomized subsets (mask-independent)."""
    sizes.validate_for(m, n)
    return budget.power_w / budget.noise_bob_w * pathloss_g * pathloss_h_bob \
        * (2.0 * sizes.m_s - m) ** 2 / m * (2.0 * sizes.n_s - n) ** 2


def snr_eve_fda(budget: LinkBudget, pathloss_g: float, pathloss_h_eve: float,
                kernels: DirichletKernels, m: int) -> float:
    """Eavesdropper SNR without randomization: P/sigma^2 * L * mu1^2/M * mu2^2 * mu3^2.

    With a zero frequency increment mu1 = M and this reduces to the
    conventional-array expression M * mu2^2 * mu3^2.
    """
    return budget.power_w / budget.noise_eve_w * pathloss_g * pathloss_h_eve \
        * kernels.mu1 ** 2 / m * kernels.mu2 ** 2 * kernels.mu3 ** 2


def snr_eve_ribes(stats: ScalingStats, budget: LinkBudget) -> float:
    """Eavesdropper SNR under randomization: P|E[beta]|^2 / (P V[beta] + sigma^2)."""
    num = budget.power_w * abs(stats.mean_beta) ** 2
    den = budget.power_w * stats.var_beta + budget.noise_eve_w
    if den == 0.0:
        return math.inf if num > 0.0 else 0.0
    return num / den


def secrecy_rate(gamma_bob: float, gamma_eve: float) -> float:
    """[log2(1+gamma_B) - log2(1+gamma_E)]^+ in bits/s/Hz."""
    if gamma_bob < 0.0 or gamma_eve < 0.0:
        raise ValueError("SNRs must be nonnegative")
    return max(0.0, math.log2(1.0 + gamma_bob) - math.log2(1.0 + gamma_eve))


@dataclass(frozen=True)
class WiretapRegion:
    """First-null exceedance thresholds around the intended receiver.

    delta_r_m is infinite for a zero frequency increment (no range
    protection). delta_theta_rad is the smaller of the horizontal and
    vertical first-null angular distances.
    """

    delta_r_m: float
    delta_theta1_rad: float
    delta_theta2_rad: float
    combine: CombineRule = CombineRule.CONJUNCTION

    @property
    def delta_theta_rad(self) -> float:
        return min(self.delta_theta1_rad, self.delta_theta2_rad)


def _first_null_angle(theta_abs: float, trig: str, step: float) -> float:
    """Angular distance from theta_abs to the nearest kernel null.

    Evaluates both branches cos/sin(theta) +- step, skipping arguments
    outside [-1, 1] (no null on that side).
    """
    candidates = []
    for sign in (1.0, -1.0):
        if trig == "cos":
            arg = math.cos(theta_abs) + sign * step
            if -1.0 <= arg <= 1.0:
                candidates.append(abs(math.acos(arg) - theta_abs))
        else:
            arg = math.sin(theta_abs) + sign * step
            if -1.0 <= arg <= 1.0:
                candidates.append(abs(math.asin(arg) - theta_abs))
    if not candidates:
        return math.inf
    return min(candidates)


def wiretap_region(plan: FdaPlan, geom: RisGeometry, bob: PolarLocation,
                   combine: CombineRule = CombineRule.CONJUNCTION) -> WiretapRegion:
    """Region boundaries: range null at c/(M*dF), angle nulls from the kernels.

    The angle thresholds use |theta_B|; the whole scene is mirror-symmetric,
    so the distances are identical for a receiver below the axis.
    """
    if plan.delta_f_hz > 0.0:
        delta_r = SPEED_OF_LIGHT / (plan.m_antennas * plan.delta_f_hz)
    else:
        delta_r = math.inf
    theta_abs = abs(bob.aoa_rad)
    d1 = _first_null_angle(theta_abs, "cos", 2.0 / geom.n_h)
    d2 = _first_null_angle(theta_abs, "sin", 2.0 / geom.n_v)
    return WiretapRegion(delta_r_m=delta_r, delta_theta1_rad=d1,
                         delta_theta2_rad=d2, combine=combine)


def _wrap_angle(x: float) -> float:
    return math.atan2(math.sin(x), math.cos(x))


def in_wiretap(region: WiretapRegion, bob: PolarLocation,
               eve: PolarLocation) -> bool:
    """Membership under the configured combine rule."""
    range_cond = abs(eve.range_m - bob.range_m) >= region.delta_r_m
    angle_cond = abs(_wrap_angle(eve.aoa_rad - bob.aoa_rad)) >= region.delta_theta_rad
    if region.combine is CombineRule.UNION:
        return range_cond or angle_cond
    return range_cond and angle_cond


def lambda_approx(geom: RisGeometry, theta_b: float) -> float:
    """Approximate max of |mu2*mu3| over the wiretap angles.

    Evaluates the kernel product at the first-sidelobe midpoints of each
    angle kernel (where that kernel's magnitude peaks at 1/sin(3*pi/2K)),
    skipping branches whose arccos/arcsin argument is infeasible, and takes
    the largest candidate.
    """
    theta_abs = abs(theta_b)
    candidates = []
    for sign in (1.0, -1.0):
        arg = math.cos(theta_abs) + sign * 3.0 / geom.n_h
        if -1.0 <= arg <= 1.0:
            theta_e = math.acos(arg)
            candidates.append(_mu23_mag(geom, theta_abs, theta_e))
        arg = math.sin(theta_abs) + sign * 3.0 / geom.n_v
        if -1.0 <= arg <= 1.0:
            theta_e = math.asin(arg)
            candidates.append(_mu23_mag(geom, theta_abs, theta_e))
    if not candidates:
        return 0.0
    return max(candidates)


def _mu23_mag(geom: RisGeometry, theta_b: float, theta_e: float) -> float:
    mu2 = dirichlet(0.5 * math.pi * (math.cos(theta_b) - math.cos(theta_e)), geom.n_h)
    mu3 = dirichlet(0.5 * math.pi * (math.sin(theta_e) - math.sin(theta_b)), geom.n_v)
    return abs(mu2 * mu3)


def eve_upper_bounds(sizes: SelectionSizes, m: int, geom: RisGeometry,
                     theta_b: float) -> tuple[float, float, float]:
    """Wiretap-area SNR bounds (range cut, angle cut) plus the lambda used.

    Returns (ub1, ub2, lam). ub1 applies on the equal-angle cut and depends
    only on (M, Ms); ub2 applies on the equal-range cut through lambda. A
    degenerate size (m_s = M or n_s = N) removes the randomization that the
    corresponding bound divides by, so that bound is +inf.
    """
    n = geom.n_elements
    sizes.validate_for(m, n)
    lam = lambda_approx(geom, theta_b)

    if sizes.m_s == m:
        ub1 = math.inf
    else:
        kernel = m * m * math.sin(1.5 * math.pi / m) ** 2 - 1.0
        ub1 = (2.0 * sizes.m_s - m) ** 2 * (m - 1.0) / (
            4.0 * sizes.m_s * (m - sizes.m_s) * kernel)

    if sizes.n_s == n:
        ub2 = math.inf
    else:
        ub2 = (2.0 * sizes.n_s - n) ** 2 * (n - 1.0) * lam * lam / (
            4.0 * sizes.n_s * (n - sizes.n_s) * (n * n - lam * lam))

    return ub1, ub2, lam


@dataclass(frozen=True)
class WorstCaseReport:
    """Worst-case rate against each cut's bound and the combined floor."""

    rate_range_cut: float
    rate_angle_cut: float
    rate_bits: float
    ub1: float
    ub2: float
    lam: float


def worst_case_secrecy(budget: LinkBudget, pathloss_g: float,
                       pathloss_h_bob: float, plan: FdaPlan, geom: RisGeometry,
                       sizes: SelectionSizes, bob: PolarLocation) -> WorstCaseReport:
    """Bob's rate minus the bounded worst eavesdropper rate in the wiretap area.

    The combined floor charges Eve the larger of the two cut bounds. With no
    randomization at all (m_s = M and n_s = N) both bounds are vacuous; the
    caller should fall back to the grid-search oracle for the deterministic
    worst case.
    """
    gamma_b = snr_bob_ribes(budget, pathloss_g, pathloss_h_bob,
                            plan.m_antennas, geom.n_elements, sizes)
    ub1, ub2, lam = eve_upper_bounds(sizes, plan.m_antennas, geom, bob.aoa_rad)
    rate_b = math.log2(1.0 + gamma_b)
    r1 = rate_b - (math.log2(1.0 + ub1) if math.isfinite(ub1) else math.inf)
    r2 = rate_b - (math.log2(1.0 + ub2) if math.isfinite(ub2) else math.inf)
    combined = min(r1, r2)
    return WorstCaseReport(rate_range_cut=max(r1, -math.inf),
                           rate_angle_cut=max(r2, -math.inf),
                           rate_bits=combined, ub1=ub1, ub2=ub2, lam=lam)


@dataclass(frozen=True)
class SecrecyReport:
    """Per-location outcome for one transmission technique."""

    gamma_bob: float
    gamma_eve: float
    rate_bits: float
    technique: str
    in_wiretap: bool
    ub1: float | None = None
    ub2: float | None = None
    rate_upper_bound: float | None = None


def _kernel_arrays(plan: FdaPlan, geom: RisGeometry, bob: PolarLocation,
                   ranges: np.ndarray, thetas: np.ndarray):
    mu1 = dirichlet(np.pi * plan.delta_f_hz * (ranges - bob.range_m)
                    / SPEED_OF_LIGHT, plan.m_antennas)
    mu2 = dirichlet(0.5 * np.pi * (np.cos(bob.aoa_rad) - np.cos(thetas)), geom.n_h)
    mu3 = dirichlet(0.5 * np.pi * (np.sin(thetas) - np.sin(bob.aoa_rad)), geom.n_v)
    return np.asarray(mu1, dtype=float), np.asarray(mu2 * mu3, dtype=float)


def eve_snr_fda_grid(budget: LinkBudget, pathloss_g: float, plan: FdaPlan,
                     geom: RisGeometry, bob: PolarLocation,
                     ranges: np.ndarray, thetas: np.ndarray,
                     pathloss) -> np.ndarray:
    """Vectorized non-randomized Eve SNR over paired (R, theta) arrays."""
    from .geometry import path_loss_linear

    mu1, mu23 = _kernel_arrays(plan, geom, bob, ranges, thetas)
    loss_h = path_loss_linear(pathloss, ranges)
    return budget.power_w / budget.noise_eve_w * pathloss_g * loss_h \
        * mu1 * mu1 / plan.m_antennas * mu23 * mu23


def eve_snr_ribes_grid(budget: LinkBudget, pathloss_g: float, plan: FdaPlan,
                       geom: RisGeometry, sizes: SelectionSizes,
                       bob: PolarLocation, ranges: np.ndarray,
                       thetas: np.ndarray, pathloss) -> np.ndarray:
    """Vectorized closed-form randomized-mode Eve SNR over paired (R, theta) arrays."""
    from .geometry import path_loss_linear

    m, n = plan.m_antennas, geom.n_elements
    mu1, mu23 = _kernel_arrays(plan, geom, bob, ranges, thetas)

    e_u = (2.0 * sizes.m_s - m) / m * mu1
    e_v = (2.0 * sizes.n_s - n) / n * mu23
    if sizes.m_s == m:
        v_u = np.zeros_like(mu1)
    else:
        v_u = 4.0 * sizes.m_s * (m - sizes.m_s) / (m * (m - 1.0)) \
            * (m - mu1 * mu1 / m)
    if sizes.n_s == n:
        v_v = np.zeros_like(mu23)
    else:
        v_v = 4.0 * sizes.n_s * (n - sizes.n_s) / (n * (n - 1.0)) \
            * (n - mu23 * mu23 / n)

    loss_h = path_loss_linear(pathloss, ranges)
    scale = pathloss_g * loss_h / m
    mean_sq = scale * (e_u * e_v) ** 2
    var = scale * (v_u * v_v + v_v * e_u * e_u + v_u * e_v * e_v)
    return budget.power_w * mean_sq / (budget.power_w * var + budget.noise_eve_w)


_gamma_eve_grid = eve_snr_ribes_grid  # used by the grid-search oracle
