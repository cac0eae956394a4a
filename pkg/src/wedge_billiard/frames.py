"""Reference systems and the transforms between them.

Three bases are used throughout:

* the lab (Cartesian) basis, with gravity pointing along ``-y``;
* the wedge basis, fixed, with its two axes lying along the walls, so a
  position splits into arclength-like coordinates ``(x_tilde, y_tilde)`` and
  a momentum into ``(u_tilde, w_tilde)``;
* a particle-local rotating basis parameterized by an angle ``phi``, which on
  a wall collision aligns with that wall.

All transforms are plane rotations, hence norm preserving.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .geometry import Wall, WedgeAngle

# Maximum allowed mismatch between a stored frame angle and the one implied
# by a wall before a rotating-frame value is rejected.
PHI_TOL = 1e-12


@dataclass(frozen=True, slots=True)
class RotatingFrameMomentum:
    """Momentum resolved in the rotating basis at frame angle ``phi``.

    ``u_bar`` is the component along the frame's radial axis and ``w_bar``
    the component along the transverse axis; ``u_bar**2 + w_bar**2`` equals
    the squared Cartesian momentum norm.
    """

    u_bar: float
    w_bar: float
    phi: float


@dataclass(frozen=True, slots=True)
class WedgeCoords:
    """Position and momentum resolved along the two walls."""

    x_tilde: float
    y_tilde: float
    u_tilde: float
    w_tilde: float


def rotation(angle: float) -> np.ndarray:
    """Counterclockwise plane rotation matrix."""
    c, s = math.cos(angle), math.sin(angle)
    return np.array([[c, -s], [s, c]])


def frame_angle(wall: Wall, angle: WedgeAngle) -> float:
    """Rotating-frame angle of a particle sitting on a wall.

    ``pi/2 - theta`` on wall A, ``pi - theta`` on wall B (the polar angle of
    the wall direction).
    """
    if wall is Wall.A:
        return math.pi / 2 - angle.theta
    return math.pi - angle.theta


def cartesian_to_wedge(q, p, angle: WedgeAngle) -> WedgeCoords:
    """Resolve lab-frame position and momentum along the two walls."""
    s, c = angle.sin, angle.cos
    x, y = float(q[0]), float(q[1])
    u, w = float(p[0]), float(p[1])
    return WedgeCoords(
        x_tilde=x * s + y * c,
        y_tilde=-x * c + y * s,
        u_tilde=u * s + w * c,
        w_tilde=-u * c + w * s,
    )


def wedge_to_cartesian(wc: WedgeCoords, angle: WedgeAngle) -> tuple[np.ndarray, np.ndarray]:
    """Inverse of :func:`cartesian_to_wedge`."""
    s, c = angle.sin, angle.cos
    q = np.array([wc.x_tilde * s - wc.y_tilde * c, wc.x_tilde * c + wc.y_tilde * s])
    p = np.array([wc.u_tilde * s - wc.w_tilde * c, wc.u_tilde * c + wc.w_tilde * s])
    return q, p


def cartesian_to_rotating(p, phi: float) -> RotatingFrameMomentum:
    """Resolve a lab-frame momentum in the rotating basis at angle ``phi``."""
    c, s = math.cos(phi), math.sin(phi)
    u, w = float(p[0]), float(p[1])
    return RotatingFrameMomentum(u_bar=u * c + w * s, w_bar=-u * s + w * c, phi=phi)


def rotating_to_wedge(rfm: RotatingFrameMomentum, wall: Wall, angle: WedgeAngle) -> tuple[float, float]:
    """Wedge-basis momentum of a rotating-frame value taken on a wall.

    On wall A the two bases coincide; on wall B they differ by a quarter
    turn, so ``(u_tilde, w_tilde) = (-w_bar, u_bar)``.  The stored ``phi``
    must match the wall's frame angle.
    """
    expected = frame_angle(wall, angle)
    if abs(rfm.phi - expected) > PHI_TOL:
        raise ValueError(
            f"frame angle {rfm.phi!r} does not match wall {wall.value} "
            f"(expected {expected!r})"
        )
    if wall is Wall.A:
        return rfm.u_bar, rfm.w_bar
    return -rfm.w_bar, rfm.u_bar


def wall_momentum(p, wall: Wall, angle: WedgeAngle) -> RotatingFrameMomentum:
    """Momentum resolved against a wall's collision frame.

    ``u_bar`` is the component along the wall pointing away from the vertex
    and ``w_bar`` the component along the inward normal, so outgoing
    (post-collision) momenta carry ``w_bar >= 0`` on either wall.  On wall A
    this equals :func:`cartesian_to_rotating` at the wall's frame angle; on
    wall B the transverse rotating axis points out of the region, so the
    normal component is negated relative to it.
    """
    rfm = cartesian_to_rotating(p, frame_angle(wall, angle))
    if wall is Wall.A:
        return rfm
    return RotatingFrameMomentum(u_bar=rfm.u_bar, w_bar=-rfm.w_bar, phi=rfm.phi)
