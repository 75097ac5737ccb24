"""Transmit beamforming and RIS phase configuration, with randomized subsets.

Two operating modes:

* plain MRT plus the closed-form RIS phases that co-phase the array toward
  the intended receiver at the center frequency;
* the randomized mode, where each symbol draws a fresh antenna subset and a
  fresh element subset; the complements get a pi-inverted weight / phase.

Beamformers are unit-norm complex M-vectors (plain ndarrays). Sign flips
never change the norm, so the randomized beamformer stays unit-norm.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .channel import FdaPlan, PlanError, RisGeometry, tau_tilde_elements
from .geometry import PolarLocation


class SelectionError(ValueError):
    """Subset sizes or masks violating the majority-selection constraint."""


class DegenerateChannelError(ValueError):
    """All-zero cascaded channel; MRT is undefined."""


@dataclass(frozen=True)
class SelectionSizes:
    """Subset sizes (antennas, elements); each must exceed half its array."""

    m_s: int
    n_s: int

    def validate_for(self, m: int, n: int) -> None:
        if not (m / 2.0 < self.m_s <= m):
            raise SelectionError(
                f"m_s must satisfy {m}/2 < m_s <= {m}, got {self.m_s}"
            )
        if not (n / 2.0 < self.n_s <= n):
            raise SelectionError(
                f"n_s must satisfy {n}/2 < n_s <= {n}, got {self.n_s}"
            )


@dataclass(frozen=True)
class SelectionMask:
    """The subsets drawn for one transmit symbol (0-based index arrays)."""

    antenna_subset: np.ndarray
    element_subset: np.ndarray
    symbol_index: int = 0

    def antenna_signs(self, m: int) -> np.ndarray:
        """+1 on the selected antennas, -1 elsewhere."""
        signs = -np.ones(m)
        signs[self.antenna_subset] = 1.0
        return signs

    def element_signs(self, n: int) -> np.ndarray:
        """+1 on the selected elements, -1 elsewhere."""
        signs = -np.ones(n)
        signs[self.element_subset] = 1.0
        return signs


def draw_mask(rng: np.random.Generator, sizes: SelectionSizes, m: int, n: int,
              symbol_index: int = 0) -> SelectionMask:
    """Uniform without-replacement subsets for one symbol; deterministic per rng state."""
    sizes.validate_for(m, n)
    ants = np.sort(rng.permutation(m)[: sizes.m_s])
    elems = np.sort(rng.permutation(n)[: sizes.n_s])
    return SelectionMask(antenna_subset=ants, element_subset=elems,
                         symbol_index=symbol_index)


def ris_phases_closed_form(plan: FdaPlan, geom: RisGeometry, theta_tx: float,
                           bob_loc: PolarLocation) -> np.ndarray:
    """Per-element phases 2*pi*f0*tau_n for the intended receiver, mod 2*pi.

    Cancels the element-dependent phase at the center frequency exactly; the
    residual at the shifted frequencies is the (tiny) frequency-flat penalty.
    """
    tau = tau_tilde_elements(geom, theta_tx, bob_loc)
    return np.mod(2.0 * np.pi * plan.f0_hz * tau, 2.0 * np.pi)


def ris_phases_ribes(base_phases: np.ndarray, mask: SelectionMask) -> np.ndarray:
    """Base phases on the selected elements, base + pi on the complement."""
    phases = np.asarray(base_phases, dtype=float).copy()
    flip = np.ones(phases.shape[0], dtype=bool)
    flip[mask.element_subset] = False
    phases[flip] = np.mod(phases[flip] + np.pi, 2.0 * np.pi)
    return phases


def mrt_beamformer(h_bob: np.ndarray) -> np.ndarray:
    """Matched filter w = h / ||h||."""
    h = np.asarray(h_bob)
    norm = np.linalg.norm(h)
    if norm == 0.0:
        raise DegenerateChannelError("cascaded channel is zero; cannot normalize")
    return h / norm


def ribes_beamformer(h_bob_star: np.ndarray, mask: SelectionMask) -> np.ndarray:
    """MRT on the selected antennas, sign-inverted on the complement."""
    w = mrt_beamformer(h_bob_star)
    return w * mask.antenna_signs(w.shape[0])


def received_sample(h_ue: np.ndarray, w: np.ndarray, power_w: float,
                    symbol: complex, noise: complex = 0.0) -> complex:
    """One received sample y = sqrt(P) h^H w x + n."""
    h = np.asarray(h_ue)
    w = np.asarray(w)
    if h.shape != w.shape:
        raise PlanError(f"channel/beamformer shapes differ: {h.shape} vs {w.shape}")
    return np.sqrt(power_w) * np.vdot(h, w) * symbol + noise
