"""FDA frequency plan, LOS channel synthesis, and the cascaded BS-RIS-user link.

Channel entries carry the full geometric phase at each antenna's own radiation
frequency; magnitudes come from the log-distance path loss alone. Matrices are
plain complex ndarrays of shape (M, N) with rows indexed by transmit antenna
and columns by reflective element.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .geometry import GeometryError, PathLossModel, Placement, PolarLocation, \
    bs_to_ris_polar, path_loss_linear
from .units import SPEED_OF_LIGHT

MAX_SHIFT_FRACTION = 1e-3  # hardware cap: max frequency shift below 1e-3 * f0


class PlanError(ValueError):
    """Invalid FDA frequency plan or array geometry."""


@dataclass(frozen=True)
class FdaPlan:
    """Linear FDA plan: antenna m radiates at f0 + (m - (M+1)/2) * delta_f.

    The centered index makes the shifts symmetric around f0, so they sum to
    zero for any M. The largest shift (M-1)/2 * delta_f must stay below
    1e-3 * f0.
    """

    f0_hz: float
    delta_f_hz: float
    m_antennas: int

    def __post_init__(self):
        if self.m_antennas < 1:
            raise PlanError("m_antennas must be >= 1")
        if not self.f0_hz > 0.0:
            raise PlanError("f0_hz must be positive")
        if self.delta_f_hz < 0.0:
            raise PlanError("delta_f_hz must be >= 0")
        max_shift = (self.m_antennas - 1) / 2.0 * self.delta_f_hz
        if max_shift > MAX_SHIFT_FRACTION * self.f0_hz:
            raise PlanError(
                f"max frequency shift {max_shift:.6g} Hz exceeds "
                f"{MAX_SHIFT_FRACTION:g} * f0 = {MAX_SHIFT_FRACTION * self.f0_hz:.6g} Hz"
            )

    def freq_offset(self, m: int) -> float:
        """Shift of antenna m (1-based) relative to f0."""
        if not 1 <= m <= self.m_antennas:
            raise PlanError(f"antenna index {m} out of range 1..{self.m_antennas}")
        return (m - (self.m_antennas + 1) / 2.0) * self.delta_f_hz

    def freq_offsets(self) -> np.ndarray:
        m = np.arange(1, self.m_antennas + 1, dtype=float)
        return (m - (self.m_antennas + 1) / 2.0) * self.delta_f_hz

    def frequencies(self) -> np.ndarray:
        return self.f0_hz + self.freq_offsets()


def antenna_frequency(plan: FdaPlan, m: int) -> float:
    """Radiation frequency of antenna m (1-based)."""
    return plan.f0_hz + plan.freq_offset(m)


@dataclass(frozen=True)
class RisGeometry:
    """Planar RIS of n_h x n_v elements plus the BS antenna spacing.

    Element n (1-based, row-major over rows of n_h elements) splits into a
    horizontal index in 1..n_h and a vertical index in 1..n_v; both offsets
    are centered so mirror elements sit symmetrically about the array center.
    """

    n_h: int
    n_v: int
    d_h_m: float
    d_v_m: float
    d_bs_m: float

    def __post_init__(self):
        if self.n_h < 1 or self.n_v < 1:
            raise PlanError("n_h and n_v must be >= 1")
        if min(self.d_h_m, self.d_v_m, self.d_bs_m) <= 0.0:
            raise PlanError("element and antenna spacings must be positive")

    @classmethod
    def from_plan(cls, plan: FdaPlan, n_h: int, n_v: int) -> "RisGeometry":
        """Half-wavelength spacing at the center frequency for all three pitches."""
        d = SPEED_OF_LIGHT / (2.0 * plan.f0_hz)
        return cls(n_h=n_h, n_v=n_v, d_h_m=d, d_v_m=d, d_bs_m=d)

    @property
    def n_elements(self) -> int:
        return self.n_h * self.n_v

    def split_index(self, n: int) -> tuple[int, int]:
        """(horizontal, vertical) 1-based indices of element n."""
        if not 1 <= n <= self.n_elements:
            raise PlanError(f"element index {n} out of range 1..{self.n_elements}")
        return ((n - 1) % self.n_h) + 1, ((n - 1) // self.n_h) + 1

    def element_offsets(self) -> tuple[np.ndarray, np.ndarray]:
        """Centered (horizontal, vertical) index offsets for all N elements."""
        n = np.arange(self.n_elements)
        off_h = (n % self.n_h) + 1 - (self.n_h + 1) / 2.0
        off_v = (n // self.n_h) + 1 - (self.n_v + 1) / 2.0
        return off_h, off_v


def _antenna_offset(plan: FdaPlan, m: int) -> float:
    if not 1 <= m <= plan.m_antennas:
        raise PlanError(f"antenna index {m} out of range 1..{plan.m_antennas}")
    return m - (plan.m_antennas + 1) / 2.0


def delay_bs_ris(plan: FdaPlan, geom: RisGeometry, r1_m: float,
                 theta_tx: float, m: int, n: int) -> float:
    """Propagation delay from transmit antenna m to reflective element n."""
    if not r1_m > 0.0:
        raise GeometryError("r1_m must be positive")
    nh, nv = geom.split_index(n)
    off_h = nh - (geom.n_h + 1) / 2.0
    off_v = nv - (geom.n_v + 1) / 2.0
    path = (
        r1_m
        - _antenna_offset(plan, m) * geom.d_bs_m * math.sin(theta_tx)
        + off_v * geom.d_v_m * math.sin(theta_tx)
        + off_h * geom.d_h_m * math.cos(theta_tx)
    )
    return path / SPEED_OF_LIGHT


def delay_ris_user(geom: RisGeometry, loc: PolarLocation, n: int) -> float:
    """Propagation delay from reflective element n to the receiver."""
    nh, nv = geom.split_index(n)
    off_h = nh - (geom.n_h + 1) / 2.0
    off_v = nv - (geom.n_v + 1) / 2.0
    path = (
        loc.range_m
        + off_v * geom.d_v_m * math.sin(loc.aoa_rad)
        - off_h * geom.d_h_m * math.cos(loc.aoa_rad)
    )
    return path / SPEED_OF_LIGHT


def tau_tilde_antenna(plan: FdaPlan, geom: RisGeometry, theta_tx: float) -> np.ndarray:
    """Antenna-dependent part of the cascaded delay, sign-matched to delay_bs_ris."""
    m = np.arange(1, plan.m_antennas + 1, dtype=float)
    off = m - (plan.m_antennas + 1) / 2.0
    return -off * geom.d_bs_m * math.sin(theta_tx) / SPEED_OF_LIGHT


def tau_tilde_elements(geom: RisGeometry, theta_tx: float,
                       loc: PolarLocation) -> np.ndarray:
    """Element-dependent part of the cascaded delay for one receiver."""
    off_h, off_v = geom.element_offsets()
    return (
        off_v * geom.d_v_m * (math.sin(theta_tx) + math.sin(loc.aoa_rad))
        + off_h * geom.d_h_m * (math.cos(theta_tx) - math.cos(loc.aoa_rad))
    ) / SPEED_OF_LIGHT


def _unit_phasor(cycles: np.ndarray) -> np.ndarray:
    # Reduce to a fractional cycle before exponentiating; at 60 GHz the raw
    # phase is ~1e5 rad and the reduction keeps the argument small.
    frac = cycles - np.rint(cycles)
    return np.exp(-2j * np.pi * frac)


def synthesize_channels(plan: FdaPlan, geom: RisGeometry, placement: Placement,
                        user_loc: PolarLocation, pathloss: PathLossModel
                        ) -> tuple[np.ndarray, np.ndarray]:
    """Build the BS-RIS matrix G and the per-frequency RIS-user matrix H.

    Returns
    -------
    (G, H) : complex ndarrays of shape (M, N)
        Row m of H is the RIS-user channel at antenna m's frequency.
    """
    leg = bs_to_ris_polar(placement)
    freqs = plan.frequencies()[:, None]  # (M, 1)

    m = np.arange(1, plan.m_antennas + 1, dtype=float)[:, None]
    ant_off = m - (plan.m_antennas + 1) / 2.0
    off_h, off_v = geom.element_offsets()

    path_g = (
        leg.range_m
        - ant_off * geom.d_bs_m * math.sin(leg.aoa_rad)
        + off_v[None, :] * geom.d_v_m * math.sin(leg.aoa_rad)
        + off_h[None, :] * geom.d_h_m * math.cos(leg.aoa_rad)
    )
    path_h = (
        user_loc.range_m
        + off_v[None, :] * geom.d_v_m * math.sin(user_loc.aoa_rad)
        - off_h[None, :] * geom.d_h_m * math.cos(user_loc.aoa_rad)
    )

    amp_g = math.sqrt(path_loss_linear(pathloss, leg.range_m))
    amp_h = math.sqrt(path_loss_linear(pathloss, user_loc.range_m))
    g = amp_g * _unit_phasor(freqs * path_g / SPEED_OF_LIGHT)
    h = amp_h * _unit_phasor(freqs * path_h / SPEED_OF_LIGHT)
    return g, h


def cascaded_channel(g: np.ndarray, h: np.ndarray,
                     ris_phases: np.ndarray) -> np.ndarray:
    """Cascaded channel h_m = sum_n G[m,n] * H[m,n] * exp(j phi_n)."""
    g = np.asarray(g)
    h = np.asarray(h)
    phases = np.asarray(ris_phases, dtype=float)
    if g.shape != h.shape:
        raise PlanError(f"channel shapes differ: {g.shape} vs {h.shape}")
    if phases.shape != (g.shape[1],):
        raise PlanError(
            f"ris_phases has shape {phases.shape}, expected ({g.shape[1]},)"
        )
    return (g * h) @ np.exp(1j * phases)


def cascaded_channel_decomposed(plan: FdaPlan, geom: RisGeometry,
                                placement: Placement, user_loc: PolarLocation,
                                pathloss: PathLossModel,
                                ris_phases: np.ndarray) -> np.ndarray:
    """Cascaded channel via the auxiliary-delay factorization.

    Splits the total delay into (R_1 + R_UE)/c plus the antenna- and
    element-dependent auxiliary terms and sums the element phasors per
    antenna. Must agree with cascaded_channel(synthesize_channels(...)) to
    floating-point accuracy; used as an algebraic cross-check.
    """
    leg = bs_to_ris_polar(placement)
    freqs = plan.frequencies()
    tau_m = tau_tilde_antenna(plan, geom, leg.aoa_rad)
    tau_n = tau_tilde_elements(geom, leg.aoa_rad, user_loc)

    base = (leg.range_m + user_loc.range_m) / SPEED_OF_LIGHT
    prefactor = _unit_phasor(freqs * (base + tau_m))
    inner = _unit_phasor(freqs[:, None] * tau_n[None, :]) @ \
        np.exp(1j * np.asarray(ris_phases, dtype=float))
    amp = math.sqrt(
        path_loss_linear(pathloss, leg.range_m)
        * path_loss_linear(pathloss, user_loc.range_m)
    )
    return amp * prefactor * inner
