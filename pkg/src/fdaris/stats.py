"""Closed-form statistics of the random per-symbol gain at an eavesdropper.

Under randomized subset selection, the eavesdropper's complex gain factors as
an antenna part u and an element part v, drawn independently each symbol. The
first two moments of both reduce to three Dirichlet kernels in the range and
angle offsets from the intended receiver. Means are real because the
frequency and element layouts are centered; variances are complex central
second moments E|x - Ex|^2.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .beamforming import SelectionSizes
from .channel import FdaPlan, RisGeometry
from .geometry import PolarLocation
from .units import SPEED_OF_LIGHT

_SING_EPS = 1e-9  # |sin(x)| below this switches to the l'Hopital limit


def dirichlet(x, count: int):
    """sin(count*x)/sin(x) as a total function.

    The removable singularities at multiples of pi evaluate to the continuous
    limit count*cos(count*x)/cos(x) (= +-count), so grids may hit exact nulls
    and the coincident-receiver point without special-casing.
    """
    if count < 1:
        raise ValueError("count must be >= 1")
    x_arr = np.asarray(x, dtype=float)
    s = np.sin(x_arr)
    singular = np.abs(s) < _SING_EPS
    safe = np.where(singular, 1.0, s)
    out = np.where(
        singular,
        count * np.cos(count * x_arr) / np.cos(x_arr),
        np.sin(count * x_arr) / safe,
    )
    if np.isscalar(x) or x_arr.ndim == 0:
        return float(out)
    return out


@dataclass(frozen=True)
class DirichletKernels:
    """Range kernel mu1 and angle kernels mu2 (horizontal), mu3 (vertical)."""

    mu1: float
    mu2: float
    mu3: float


def kernels_at(plan: FdaPlan, geom: RisGeometry, bob: PolarLocation,
               eve: PolarLocation) -> DirichletKernels:
    """The three kernels for an eavesdropper location.

    Arguments are built from range/angle *differences* to the intended
    receiver; the half-wavelength element pitch cancels the carrier frequency
    out of the angle kernels.
    """
    x1 = math.pi * plan.delta_f_hz * (eve.range_m - bob.range_m) / SPEED_OF_LIGHT
    x2 = 0.5 * math.pi * (math.cos(bob.aoa_rad) - math.cos(eve.aoa_rad))
    x3 = 0.5 * math.pi * (math.sin(eve.aoa_rad) - math.sin(bob.aoa_rad))
    return DirichletKernels(
        mu1=dirichlet(x1, plan.m_antennas),
        mu2=dirichlet(x2, geom.n_h),
        mu3=dirichlet(x3, geom.n_v),
    )


def moments_u(plan: FdaPlan, sizes: SelectionSizes, mu1: float) -> tuple[float, float]:
    """Mean and variance of the antenna-side gain u.

    E[u] = (2*Ms - M)/M * mu1
    V[u] = 4 * Ms*(M-Ms)/(M*(M-1)) * (M - mu1^2/M)
    """
    m, m_s = plan.m_antennas, sizes.m_s
    e_u = (2.0 * m_s - m) / m * mu1
    if m_s == m:
        return e_u, 0.0
    if m < 2:
        raise ValueError("variance of u needs M >= 2 when m_s < M")
    v_u = 4.0 * m_s * (m - m_s) / (m * (m - 1.0)) * (m - mu1 * mu1 / m)
    return e_u, v_u


def moments_v(geom: RisGeometry, sizes: SelectionSizes, mu2: float,
              mu3: float) -> tuple[float, float]:
    """Mean and variance of the element-side gain v (N = n_h * n_v)."""
    n, n_s = geom.n_elements, sizes.n_s
    mu23 = mu2 * mu3
    e_v = (2.0 * n_s - n) / n * mu23
    if n_s == n:
        return e_v, 0.0
    if n < 2:
        raise ValueError("variance of v needs N >= 2 when n_s < N")
    v_v = 4.0 * n_s * (n - n_s) / (n * (n - 1.0)) * (n - mu23 * mu23 / n)
    return e_v, v_v


@dataclass(frozen=True)
class ScalingStats:
    """First two moments of the eavesdropper gain and its u/v components."""

    mean_beta: complex
    var_beta: float
    e_u: float
    v_u: float
    e_v: float
    v_v: float


def scaling_stats(pathloss_g: float, pathloss_h_eve: float, plan: FdaPlan,
                  geom: RisGeometry, sizes: SelectionSizes,
                  kernels: DirichletKernels) -> ScalingStats:
    """Assemble E[beta] and V[beta] from the component moments.

    beta = sqrt(L_G * L_H / M) * u * v with u, v independent, so
    V[beta] = (L_G*L_H/M) * (V[u]V[v] + V[v]|E[u]|^2 + V[u]|E[v]|^2).
    """
    sizes.validate_for(plan.m_antennas, geom.n_elements)
    e_u, v_u = moments_u(plan, sizes, kernels.mu1)
    e_v, v_v = moments_v(geom, sizes, kernels.mu2, kernels.mu3)
    scale = pathloss_g * pathloss_h_eve / plan.m_antennas
    mean = math.sqrt(scale) * e_u * e_v
    var = scale * (v_u * v_v + v_v * e_u * e_u + v_u * e_v * e_v)
    return ScalingStats(mean_beta=complex(mean, 0.0), var_beta=var,
                        e_u=e_u, v_u=v_u, e_v=e_v, v_v=v_v)
