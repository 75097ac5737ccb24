"""Optimal subset sizes, optimal frequency increment, and the rate ceiling.

The subset-size optimizers maximize the worst-case secrecy rate on each cut
of the wiretap area. Both sides share one functional form

    f(s) = log2(1 + b*(2s-K)^2) - log2(1 + e*(2s-K)^2 / (4s(K-s))),

with K the array size and (b, e) the Bob/Eve coefficients; the closed form
is the exact stationary point of f, rounded to the nearest integer and
clamped to the feasible majority range. Every closed-form answer can be
cross-checked against the exhaustive integer sweep of the same objective.
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass

from .channel import MAX_SHIFT_FRACTION, FdaPlan, RisGeometry
from .geometry import PolarLocation
from .secrecy import LinkBudget, lambda_approx
from .units import SPEED_OF_LIGHT


class OptimizeError(ValueError):
    pass


class EquidistantEveError(OptimizeError):
    """No range null exists when the eavesdropper is equidistant with Bob."""


class InfeasibleIncrementError(OptimizeError):
    """Even the smallest null-placing increment violates the hardware cap."""


class Method(enum.Enum):
    CLOSED_FORM = "closed-form"
    SIMPLIFIED = "simplified"
    SWEEP = "sweep"


@dataclass(frozen=True)
class AuxiliaryCoefficients:
    """Bob/Eve coefficients of the two subset-size subproblems."""

    eta_b: float
    eta_e: float
    zeta_b: float
    zeta_e: float


@dataclass(frozen=True)
class OptimizationResult:
    subset_size: int
    method: Method
    objective_bits: float


def round_half_away(x: float) -> int:
    """Nearest integer with halves rounded away from zero."""
    return int(math.floor(x + 0.5)) if x >= 0.0 else int(math.ceil(x - 0.5))


def eta_for_antennas(m: int) -> float:
    """Eve-side coefficient of the antenna subproblem; depends on M only."""
    return (m - 1.0) / (m * m * math.sin(1.5 * math.pi / m) ** 2 - 1.0)


def zeta_for_elements(n: int, lam: float) -> float:
    """Eve-side coefficient of the element subproblem."""
    return (n - 1.0) * lam * lam / (n * n - lam * lam)


def auxiliary_coefficients(budget: LinkBudget, pathloss_g: float,
                           pathloss_h_bob: float, plan: FdaPlan,
                           geom: RisGeometry, m_s: int, n_s: int,
                           theta_b: float) -> AuxiliaryCoefficients:
    m, n = plan.m_antennas, geom.n_elements
    base = budget.power_w / (m * budget.noise_bob_w) * pathloss_g * pathloss_h_bob
    lam = lambda_approx(geom, theta_b)
    return AuxiliaryCoefficients(
        eta_b=base * (2.0 * n_s - n) ** 2,
        eta_e=eta_for_antennas(m),
        zeta_b=base * (2.0 * m_s - m) ** 2,
        zeta_e=zeta_for_elements(n, lam),
    )


def _feasible_subsets(count: int) -> range:
    return range(count // 2 + 1, count + 1)


def cut_objective(count: int, subset: int, coef_bob: float,
                  coef_eve: float) -> float:
    """Worst-case secrecy rate of one cut at a candidate subset size."""
    tilde_sq = (2.0 * subset - count) ** 2
    bob = math.log2(1.0 + coef_bob * tilde_sq)
    if subset == count:
        return -math.inf  # bound diverges without randomization
    eve = math.log2(1.0 + coef_eve * tilde_sq / (4.0 * subset * (count - subset)))
    return bob - eve


def _clamp_subset(value: float, count: int) -> int:
    rounded = round_half_away(value)
    low, high = count // 2 + 1, count
    return min(max(rounded, low), high)


def _closed_form_subset(count: int, coef_bob: float, coef_eve: float) -> float | None:
    """Continuous stationary point of the cut objective, or None if out of regime."""
    if coef_eve >= 1.0 or coef_bob <= 0.0 or coef_eve <= 0.0:
        return None
    inner = coef_eve * count * count + coef_eve * (1.0 - coef_eve) / coef_bob
    if inner < 0.0:
        return None
    numer = 1.0 - math.sqrt(inner) / count
    if numer < 0.0 or not (1.0 - coef_eve) > 0.0:
        return None
    tilde = count * math.sqrt(numer / (1.0 - coef_eve))
    return 0.5 * (count + tilde)


def _sweep_subset(count: int, coef_bob: float, coef_eve: float) -> tuple[int, float]:
    feasible = list(_feasible_subsets(count))
    if len(feasible) == 1:
        only = feasible[0]
        return only, cut_objective(count, only, coef_bob, coef_eve)
    best, best_val = feasible[0], -math.inf
    for s in feasible:
        val = cut_objective(count, s, coef_bob, coef_eve)
        if val > best_val:
            best, best_val = s, val
    return best, best_val


def optimal_subset(count: int, coef_bob: float, coef_eve: float) -> OptimizationResult:
    """Closed-form maximizer of the cut objective, with sweep fallback."""
    if count < 2:
        return OptimizationResult(subset_size=count, method=Method.SWEEP,
                                  objective_bits=-math.inf)
    feasible = list(_feasible_subsets(count))
    if len(feasible) == 1:
        return OptimizationResult(subset_size=feasible[0], method=Method.SWEEP,
                                  objective_bits=cut_objective(
                                      count, feasible[0], coef_bob, coef_eve))
    cont = _closed_form_subset(count, coef_bob, coef_eve)
    if cont is None:
        best, val = _sweep_subset(count, coef_bob, coef_eve)
        return OptimizationResult(subset_size=best, method=Method.SWEEP,
                                  objective_bits=val)
    size = _clamp_subset(cont, count)
    return OptimizationResult(subset_size=size, method=Method.CLOSED_FORM,
                              objective_bits=cut_objective(count, size,
                                                           coef_bob, coef_eve))


def optimal_m_s(coefs: AuxiliaryCoefficients, m: int) -> OptimizationResult:
    """Optimal antenna subset size for the equal-angle cut."""
    return optimal_subset(m, coefs.eta_b, coefs.eta_e)


def optimal_n_s(coefs: AuxiliaryCoefficients, n: int) -> OptimizationResult:
    """Optimal element subset size for the equal-range cut."""
    return optimal_subset(n, coefs.zeta_b, coefs.zeta_e)


def _simplified_subset(count: int, coef_eve: float) -> int:
    return _clamp_subset(
        0.5 * count * (1.0 + 1.0 / math.sqrt(1.0 + math.sqrt(coef_eve))), count)


def optimal_m_s_simplified(m: int) -> int:
    """High-SNR antenna optimum; depends only on M."""
    if m < 2:
        return m
    return _simplified_subset(m, eta_for_antennas(m))


def optimal_n_s_simplified(n: int, lam: float) -> int:
    """High-SNR element optimum; depends on N and lambda only."""
    if n < 2:
        return n
    return _simplified_subset(n, zeta_for_elements(n, lam))


def optimal_delta_f(plan: FdaPlan, bob: PolarLocation,
                    eve: PolarLocation) -> float:
    """Smallest increment placing a range null exactly on the eavesdropper.

    Uses the first-order null (i = 1); larger multiples only increase the
    increment and the frequency-flat penalty. Raises if the eavesdropper is
    equidistant with Bob (no null exists) or if the hardware cap rules the
    increment out.
    """
    delta_r = eve.range_m - bob.range_m
    if delta_r == 0.0:
        raise EquidistantEveError(
            "eavesdropper is equidistant with the intended receiver; "
            "no range null can be placed")
    df = SPEED_OF_LIGHT / (plan.m_antennas * abs(delta_r))
    max_shift = (plan.m_antennas - 1) / 2.0 * df
    if max_shift > MAX_SHIFT_FRACTION * plan.f0_hz:
        raise InfeasibleIncrementError(
            f"null-placing increment {df:.6g} Hz needs a max shift of "
            f"{max_shift:.6g} Hz, above the {MAX_SHIFT_FRACTION:g}*f0 cap")
    return df


def secrecy_upper_bound(budget: LinkBudget, pathloss_g: float,
                        pathloss_h_bob: float, m: int, n: int) -> float:
    """Rate ceiling log2(1 + P/sigma_B^2 * L_G * L_H * M * N^2) in bits/s/Hz."""
    gamma = budget.power_w / budget.noise_bob_w * pathloss_g * pathloss_h_bob \
        * m * n * n
    return math.log2(1.0 + gamma)
