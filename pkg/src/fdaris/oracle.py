"""Independent verification engines for every closed form in the package.

Three kinds of oracle, none of which share code paths with the closed forms
they check:

* exhaustive subset enumeration for the exact moments of the antenna- and
  element-side gains (guarded by a combination-count cap);
* per-symbol signal synthesis straight from the channel equations, giving
  empirical SNRs for both receivers without the small-shift approximation
  the closed forms carry;
* dense grid search over the wiretap-area cuts for region maxima.

Each check can be emitted as a JSON-line record (name, closed form, oracle
value, error, pass flag) for the CLI verification driver.
"""

from __future__ import annotations

import itertools
import math
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass

import numpy as np

from .beamforming import SelectionSizes
from .channel import FdaPlan, RisGeometry, tau_tilde_elements
from .geometry import PathLossModel, Placement, PolarLocation, bs_to_ris_polar, \
    path_loss_linear
from .secrecy import LinkBudget, snr_eve_ribes, wiretap_region
from .stats import kernels_at, moments_u, moments_v, scaling_stats
from .units import SPEED_OF_LIGHT

ENUMERATION_GUARD = 10 ** 6


class EnumerationGuardError(ValueError):
    """Requested subset count exceeds the exhaustive-enumeration cap."""


@dataclass(frozen=True)
class EnumerationReport:
    """Exhaustive subset moments next to the closed forms they validate.

    max_rel_error is |difference| / max(1, |exact|, |closed|): relative for
    order-one-and-larger values, absolute below that scale (both sides of a
    near-null mean cancel to ~1e-15, where a bare ratio would be noise).
    """

    exact_mean: complex
    exact_variance: float
    subset_count: int
    closed_form_mean: complex
    closed_form_variance: float
    max_rel_error: float


def _comb_count(n: int, k: int) -> int:
    return math.comb(n, k)


def _moment_report(phasors: np.ndarray, subset_size: int, closed_mean: float,
                   closed_var: float) -> EnumerationReport:
    """Exact mean/variance of 2*sum(subset) - sum(all) over all subsets."""
    total = complex(np.sum(phasors))
    count = _comb_count(len(phasors), subset_size)
    if count > ENUMERATION_GUARD:
        raise EnumerationGuardError(
            f"C({len(phasors)},{subset_size}) = {count} exceeds the "
            f"{ENUMERATION_GUARD} enumeration guard")
    acc = 0.0 + 0.0j
    acc_sq = 0.0
    for subset in itertools.combinations(range(len(phasors)), subset_size):
        value = 2.0 * complex(np.sum(phasors[list(subset)])) - total
        acc += value
        acc_sq += abs(value) ** 2
    mean = acc / count
    variance = acc_sq / count - abs(mean) ** 2
    err = max(
        abs(mean - closed_mean) / max(1.0, abs(mean), abs(closed_mean)),
        abs(variance - closed_var) / max(1.0, abs(variance), abs(closed_var)),
    )
    return EnumerationReport(
        exact_mean=mean, exact_variance=variance, subset_count=count,
        closed_form_mean=complex(closed_mean), closed_form_variance=closed_var,
        max_rel_error=err,
    )


def enumerate_u_moments(plan: FdaPlan, bob: PolarLocation, eve: PolarLocation,
                        sizes: SelectionSizes) -> EnumerationReport:
    """Exact antenna-side moments from the defining phasor sum."""
    from .stats import dirichlet

    delta_r = eve.range_m - bob.range_m
    phasors = np.exp(2j * np.pi * plan.freq_offsets() * delta_r / SPEED_OF_LIGHT)
    mu1 = dirichlet(np.pi * plan.delta_f_hz * delta_r / SPEED_OF_LIGHT,
                    plan.m_antennas)
    e_u, v_u = moments_u(plan, sizes, mu1)
    return _moment_report(phasors, sizes.m_s, e_u, v_u)


def enumerate_v_moments(plan: FdaPlan, geom: RisGeometry, theta_tx: float,
                        bob: PolarLocation, eve: PolarLocation,
                        sizes: SelectionSizes) -> EnumerationReport:
    """Exact element-side moments, with phasors built from the delay module."""
    tau_diff = tau_tilde_elements(geom, theta_tx, eve) \
        - tau_tilde_elements(geom, theta_tx, bob)
    phasors = np.exp(2j * np.pi * plan.f0_hz * tau_diff)
    kernels = kernels_at(plan, geom, bob, eve)
    e_v, v_v = moments_v(geom, sizes, kernels.mu2, kernels.mu3)
    return _moment_report(phasors, sizes.n_s, e_v, v_v)


@dataclass(frozen=True)
class McReport:
    samples: int
    empirical_snr: float
    closed_form_snr: float
    std_error: float
    seed: int


def _inner_matrices(plan: FdaPlan, geom: RisGeometry, theta_tx: float,
                    bob: PolarLocation, eve: PolarLocation):
    """Per-element phasor matrices for the exact per-symbol synthesis.

    a_mat[n, m]: Bob-side phasor after the base RIS phase cancels the center
    frequency, leaving only the frequency-shift wobble. b_mat[n, m]: Eve-side
    conjugate phasor carrying the element angle mismatch plus wobble.
    c_vec[m]: antenna-frequency phasor of the range offset.
    """
    offsets = plan.freq_offsets()
    tb = tau_tilde_elements(geom, theta_tx, bob)
    te = tau_tilde_elements(geom, theta_tx, eve)
    a_mat = np.exp(-2j * np.pi * offsets[None, :] * tb[:, None])
    b_mat = np.exp(2j * np.pi * (offsets[None, :] * te[:, None]
                                 + plan.f0_hz * (te - tb)[:, None]))
    cycles = plan.frequencies() * (eve.range_m - bob.range_m) / SPEED_OF_LIGHT
    c_vec = np.exp(2j * np.pi * (cycles - np.rint(cycles)))
    return a_mat, b_mat, c_vec


def _sign_masks(rng: np.random.Generator, count: int, total: int,
                subset: int) -> np.ndarray:
    """(count, total) matrix of +-1 rows with exactly `subset` entries at +1."""
    ranks = rng.random((count, total)).argpartition(subset - 1, axis=1)
    signs = -np.ones((count, total))
    np.put_along_axis(signs, ranks[:, :subset], 1.0, axis=1)
    return signs


def _mc_batch(args):
    (plan, geom, theta_tx, bob, eve, sizes, seed, batch_index, batch_size) = args
    a_mat, b_mat, c_vec = _inner_matrices(plan, geom, theta_tx, bob, eve)
    rng = np.random.default_rng(np.random.SeedSequence((seed, batch_index)))
    sa = _sign_masks(rng, batch_size, plan.m_antennas, sizes.m_s)
    se = _sign_masks(rng, batch_size, geom.n_elements, sizes.n_s)
    inner_b = se @ a_mat
    inner_e = se @ b_mat
    numer = ((sa * c_vec[None, :]) * inner_e * inner_b).sum(axis=1)
    denom = np.sqrt((np.abs(inner_b) ** 2).sum(axis=1))
    beta = numer / denom  # path-loss amplitude applied by the caller
    return beta.sum(), float((np.abs(beta) ** 2).sum()), batch_size


def monte_carlo_eve_snr(plan: FdaPlan, geom: RisGeometry, placement: Placement,
                        budget: LinkBudget, pathloss: PathLossModel,
                        sizes: SelectionSizes, eve: PolarLocation,
                        samples: int, seed: int, batches: int = 50,
                        threads: int = 1) -> McReport:
    """Empirical randomized-mode Eve SNR from exact per-symbol synthesis.

    Draws fresh antenna/element subsets each symbol, synthesizes the received
    sample from the full channel equations (no small-shift approximation),
    and forms P|mean|^2 / (P var + sigma^2) from the per-symbol gains. The
    standard error comes from a leave-one-batch-out jackknife, so the
    nonlinearity of the SNR estimator is accounted for. Results are
    bit-identical for any thread count: batch streams are keyed by
    (seed, batch index) and reduced in index order.
    """
    if samples < 100:
        raise ValueError("samples must be >= 100")
    sizes.validate_for(plan.m_antennas, geom.n_elements)
    leg = bs_to_ris_polar(placement)
    bob = _bob_polar(placement)

    base = samples // batches
    batch_sizes = [base + (1 if i < samples % batches else 0)
                   for i in range(batches)]
    jobs = [(plan, geom, leg.aoa_rad, bob, eve, sizes, seed, i, b)
            for i, b in enumerate(batch_sizes) if b > 0]
    if threads > 1:
        with ProcessPoolExecutor(max_workers=threads) as pool:
            parts = list(pool.map(_mc_batch, jobs))
    else:
        parts = [_mc_batch(job) for job in jobs]

    amp = math.sqrt(path_loss_linear(pathloss, leg.range_m)
                    * path_loss_linear(pathloss, eve.range_m))
    sums = np.array([p[0] for p in parts]) * amp
    sq_sums = np.array([p[1] for p in parts]) * amp * amp
    counts = np.array([p[2] for p in parts], dtype=float)

    def snr_from(total, total_sq, n):
        mean = total / n
        var = max((total_sq - n * abs(mean) ** 2) / (n - 1.0), 0.0)
        return budget.power_w * abs(mean) ** 2 / (
            budget.power_w * var + budget.noise_eve_w)

    n_all = counts.sum()
    snr_hat = snr_from(sums.sum(), sq_sums.sum(), n_all)
    loo = np.array([
        snr_from(sums.sum() - sums[i], sq_sums.sum() - sq_sums[i],
                 n_all - counts[i])
        for i in range(len(parts))
    ])
    b = len(parts)
    std_error = math.sqrt(max((b - 1.0) / b * np.sum((loo - loo.mean()) ** 2), 0.0))

    kernels = kernels_at(plan, geom, bob, eve)
    stats = scaling_stats(path_loss_linear(pathloss, leg.range_m),
                          path_loss_linear(pathloss, eve.range_m),
                          plan, geom, sizes, kernels)
    closed = snr_eve_ribes(stats, budget)
    return McReport(samples=int(n_all), empirical_snr=float(snr_hat),
                    closed_form_snr=float(closed), std_error=float(std_error),
                    seed=seed)


def synthesized_bob_snr(plan: FdaPlan, geom: RisGeometry, placement: Placement,
                        budget: LinkBudget, pathloss: PathLossModel,
                        sizes: SelectionSizes, element_signs: np.ndarray,
                        antenna_signs: np.ndarray) -> float:
    """Noise-free |y_B|^2/sigma_B^2 for one mask, from exact synthesis."""
    leg = bs_to_ris_polar(placement)
    bob = _bob_polar(placement)
    a_mat, _, _ = _inner_matrices(plan, geom, leg.aoa_rad, bob, bob)
    inner_b = element_signs @ a_mat  # (M,)
    power_per_ant = np.abs(inner_b) ** 2
    amp = (antenna_signs * power_per_ant).sum() / math.sqrt(power_per_ant.sum())
    gain = path_loss_linear(pathloss, leg.range_m) \
        * path_loss_linear(pathloss, bob.range_m)
    return budget.power_w * gain * amp * amp / budget.noise_bob_w


def _bob_polar(placement: Placement) -> PolarLocation:
    from .geometry import to_polar

    return to_polar(placement, placement.bob_xy)


@dataclass(frozen=True)
class GridMaxReport:
    max_snr: float
    arg_range_m: float
    arg_aoa_rad: float
    points: int


def grid_max_eve_snr(budget: LinkBudget, pathloss: PathLossModel,
                     pathloss_g: float, plan: FdaPlan, geom: RisGeometry,
                     sizes: SelectionSizes, bob: PolarLocation, cut: str,
                     lo: float, hi: float, points: int) -> GridMaxReport:
    """Dense-grid max of the randomized-mode Eve SNR on one wiretap cut.

    cut="range" sweeps R_E at theta_E = theta_B keeping |R_E - R_B| beyond
    the first range null; cut="angle" sweeps theta_E at R_E = R_B beyond the
    first angle null.
    """
    from .secrecy import _gamma_eve_grid

    if points < 1:
        raise ValueError("grid needs at least one point")
    region = wiretap_region(plan, geom, bob)
    grid = np.linspace(lo, hi, points)
    if cut == "range":
        keep = np.abs(grid - bob.range_m) >= region.delta_r_m
        ranges = grid[keep]
        thetas = np.full(ranges.shape, bob.aoa_rad)
    elif cut == "angle":
        keep = np.abs(np.arctan2(np.sin(grid - bob.aoa_rad),
                                 np.cos(grid - bob.aoa_rad))) \
            >= region.delta_theta_rad
        thetas = grid[keep]
        ranges = np.full(thetas.shape, bob.range_m)
    else:
        raise ValueError(f"unknown cut {cut!r}")
    if ranges.size == 0:
        raise ValueError("grid does not intersect the wiretap region "
                         "(degenerate cut, e.g. zero frequency increment)")
    gammas = _gamma_eve_grid(budget, pathloss_g, plan, geom, sizes, bob,
                             ranges, thetas, pathloss)
    i = int(np.argmax(gammas))
    return GridMaxReport(max_snr=float(gammas[i]), arg_range_m=float(ranges[i]),
                         arg_aoa_rad=float(thetas[i]), points=int(ranges.size))


def lambda_exact_grid(geom: RisGeometry, bob: PolarLocation, plan: FdaPlan,
                      points: int = 20000) -> float:
    """Grid-search max of |mu2*mu3| over the wiretap angles (exact lambda)."""
    from .stats import dirichlet

    region = wiretap_region(plan, geom, bob)
    thetas = np.linspace(-0.5 * np.pi, 0.5 * np.pi, points)
    keep = np.abs(thetas - bob.aoa_rad) >= region.delta_theta_rad
    thetas = thetas[keep]
    mu2 = dirichlet(0.5 * np.pi * (np.cos(bob.aoa_rad) - np.cos(thetas)), geom.n_h)
    mu3 = dirichlet(0.5 * np.pi * (np.sin(thetas) - np.sin(bob.aoa_rad)), geom.n_v)
    return float(np.max(np.abs(mu2 * mu3)))
