"""Planar geometry: node placement, polar coordinates, and path loss.

The base station sits at the origin; the RIS and the receivers live in the
same 2-D plane. Receiver locations are expressed relative to the RIS as
(range, angle-of-arrival) pairs. Angles are full-quadrant (atan2-based), so
a receiver below the RIS carries a negative angle; the cosine matches the
arccos convention either way.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

BS_XY = (0.0, 0.0)


class GeometryError(ValueError):
    """Degenerate placement (coincident nodes, non-positive range)."""


@dataclass(frozen=True)
class Placement:
    """BS/RIS/Bob positions in meters. The BS is pinned to the origin."""

    ris_xy: tuple[float, float]
    bob_xy: tuple[float, float]

    def __post_init__(self):
        if tuple(self.ris_xy) == BS_XY:
            raise GeometryError("ris_xy must not coincide with the BS origin")
        if tuple(self.bob_xy) == tuple(self.ris_xy):
            raise GeometryError("bob_xy must not coincide with ris_xy")


@dataclass(frozen=True)
class PolarLocation:
    """Receiver location relative to the RIS: range in meters, AoA in radians."""

    range_m: float
    aoa_rad: float

    def __post_init__(self):
        if not self.range_m > 0.0:
            raise GeometryError(f"range_m must be positive, got {self.range_m}")
        if not (-math.pi < self.aoa_rad <= math.pi):
            raise GeometryError(f"aoa_rad must lie in (-pi, pi], got {self.aoa_rad}")


@dataclass(frozen=True)
class PathLossModel:
    """Log-distance path loss: L(R) = l0_db + 10*alpha*log10(R) in dB at R meters."""

    l0_db: float = 60.0
    alpha: float = 2.0

    def __post_init__(self):
        if self.l0_db < 0.0:
            raise GeometryError("l0_db must be >= 0")
        if not self.alpha > 0.0:
            raise GeometryError("alpha must be > 0")

    def loss_db(self, range_m: float) -> float:
        if not range_m > 0.0:
            raise GeometryError(f"path loss needs range_m > 0, got {range_m}")
        return self.l0_db + 10.0 * self.alpha * math.log10(range_m)


def to_polar(placement: Placement, user_xy: tuple[float, float]) -> PolarLocation:
    """RIS-centered polar coordinates of a receiver position.

    Raises GeometryError if the position coincides with the RIS.
    """
    dx = user_xy[0] - placement.ris_xy[0]
    dy = user_xy[1] - placement.ris_xy[1]
    r = math.hypot(dx, dy)
    if r == 0.0:
        raise GeometryError("user position coincides with the RIS")
    return PolarLocation(range_m=r, aoa_rad=math.atan2(dy, dx))


def polar_to_xy(placement: Placement, loc: PolarLocation) -> tuple[float, float]:
    """Inverse of to_polar."""
    return (
        placement.ris_xy[0] + loc.range_m * math.cos(loc.aoa_rad),
        placement.ris_xy[1] + loc.range_m * math.sin(loc.aoa_rad),
    )


def bs_to_ris_polar(placement: Placement) -> PolarLocation:
    """BS-RIS leg: distance R_1 and departure angle theta_tx seen from the BS."""
    dx = placement.ris_xy[0] - BS_XY[0]
    dy = placement.ris_xy[1] - BS_XY[1]
    return PolarLocation(range_m=math.hypot(dx, dy), aoa_rad=math.atan2(dy, dx))


def path_loss_linear(model: PathLossModel, range_m):
    """Linear power gain 10^(-L(R)/10); strictly decreasing in range.

    Accepts a scalar or an ndarray of ranges (all strictly positive).
    """
    if np.ndim(range_m) == 0:
        return 10.0 ** (-model.loss_db(float(range_m)) / 10.0)
    ranges = np.asarray(range_m, dtype=float)
    if np.any(ranges <= 0.0):
        raise GeometryError("path loss needs all ranges > 0")
    return 10.0 ** (-(model.l0_db + 10.0 * model.alpha * np.log10(ranges)) / 10.0)


def circle_trajectory(
    center: tuple[float, float], radius_m: float, phi_rad: float
) -> tuple[float, float]:
    """Point at angle phi on the circle of given radius around center."""
    if not radius_m > 0.0:
        raise GeometryError("radius_m must be positive")
    return (
        center[0] + radius_m * math.cos(phi_rad),
        center[1] + radius_m * math.sin(phi_rad),
    )
