"""Disk trajectory, pulse-station geometry, and the plate field map."""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .physics import TWO_PI


@dataclass(frozen=True)
class DiskTrajectory:
    """Uniform circular motion of the diamond on the disk edge.

    ``frequency`` is in rotations per second, counterclockwise positive.
    ``tilt`` rotates the whole disk plane rigidly about the y-axis.
    """

    radius: float
    frequency: float
    initial_angle: float = 0.0
    tilt: float = 0.0

    def __post_init__(self):
        if self.radius <= 0.0:
            raise ValueError("disk radius must be positive")
        if self.frequency == 0.0:
            raise ValueError("rotation frequency must be nonzero")

    @property
    def period(self) -> float:
        return 1.0 / abs(self.frequency)


def _tilt_matrix(tilt: float) -> np.ndarray:
    # Transpose of R_y(tilt), for right-multiplication of row vectors:
    # v @ _tilt_matrix == R_y(tilt) @ v, so x-hat maps to -z-hat at tilt = pi/2.
    c, s = np.cos(tilt), np.sin(tilt)
    return np.array([[c, 0.0, -s], [0.0, 1.0, 0.0], [s, 0.0, c]])


def position(traj: DiskTrajectory, t) -> np.ndarray:
    """Lab-frame position in metres; vectorised over t (last axis is xyz)."""
    theta = traj.initial_angle + TWO_PI * traj.frequency * np.asarray(t, dtype=float)
    flat = traj.radius * np.stack(
        [np.cos(theta), np.sin(theta), np.zeros_like(theta)], axis=-1
    )
    if traj.tilt == 0.0:
        return flat
    return flat @ _tilt_matrix(traj.tilt)


def velocity(traj: DiskTrajectory, t) -> np.ndarray:
    """Analytic time derivative of :func:`position`; |v| = 2*pi*f*r."""
    theta = traj.initial_angle + TWO_PI * traj.frequency * np.asarray(t, dtype=float)
    speed = TWO_PI * traj.frequency * traj.radius
    flat = speed * np.stack(
        [-np.sin(theta), np.cos(theta), np.zeros_like(theta)], axis=-1
    )
    if traj.tilt == 0.0:
        return flat
    return flat @ _tilt_matrix(traj.tilt)


@dataclass(frozen=True)
class FieldConfig:
    """Uniform static electric field between idealized infinite plates."""

    magnitude: float
    direction: np.ndarray = field(
        default_factory=lambda: np.array([1.0, 0.0, 0.0])
    )

    def __post_init__(self):
        if self.magnitude < 0.0:
            raise ValueError("field magnitude must be non-negative")
        direction = np.asarray(self.direction, dtype=float)
        if direction.shape != (3,) or abs(np.linalg.norm(direction) - 1.0) > 1e-12:
            raise ValueError("field direction must be a unit 3-vector")
        object.__setattr__(self, "direction", direction)

    @classmethod
    def along_x(cls, magnitude: float) -> "FieldConfig":
        return cls(magnitude=magnitude)


def field_at(cfg: FieldConfig, x) -> np.ndarray:
    """Field vector in V/m at position x; uniform, so independent of x."""
    x = np.asarray(x, dtype=float)
    out = np.broadcast_to(cfg.magnitude * cfg.direction, x.shape).copy()
    return out


@dataclass(frozen=True)
class PulseStations:
    """Antipodal microwave-coil angles on the disk."""

    angle_A: float
    angle_B: float

    def __post_init__(self):
        gap = (self.angle_B - self.angle_A) % TWO_PI
        if abs(gap - np.pi) > 1e-12:
            raise ValueError("stations must be antipodal: angle_B = angle_A + pi")


def default_stations() -> PulseStations:
    """Stations on the y-axis extremes: A at (0, -r), B at (0, +r).

    Antipodal pairs on the y extremes maximize |Delta y| per half rotation,
    which is what makes the rectified phase reach 4*g*mu_B*r*E*n/(hbar*c^2).
    """
    return PulseStations(angle_A=-np.pi / 2.0, angle_B=np.pi / 2.0)


def station_trajectory(radius: float, frequency: float, tilt: float = 0.0) -> DiskTrajectory:
    """Trajectory that sits at station A at t = 0, so station crossings happen
    exactly at multiples of the half period."""
    return DiskTrajectory(
        radius=radius,
        frequency=frequency,
        initial_angle=default_stations().angle_A,
        tilt=tilt,
    )
