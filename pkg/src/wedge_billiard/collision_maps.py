"""Closed-form collision-to-collision momentum maps and their fixed points.

Between two wall hits the momentum change is fully determined by the wedge
angle and the total energy, so the simulator's per-event outgoing momenta
can be reproduced by iterating four algebraic maps, one per (source wall,
target wall) pair.

All map states use the collision-frame convention of
:func:`wedge_billiard.frames.wall_momentum`: ``u_bar`` along the wall away
from the vertex, ``w_bar`` along the inward normal, so post-collision states
always carry ``w_bar >= 0``.  Both walls rise away from the vertex, so with
this orientation the same-wall maps always decelerate the tangential motion,
and the cross-wall maps exchange the roles of the two one-dimensional
energies.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from enum import Enum

from .geometry import Wall, WedgeAngle

# Radicands no worse than this below zero are grazing arrivals and clamp to 0.
RADICAND_TOL = 1e-12


class EnergyViolationError(ValueError):
    """Normal kinetic energy exceeds the total energy beyond tolerance."""


class MapId(Enum):
    """The four maps, tagged by source and target wall.

    FA: A to A, GA: B to B, FB: A to B, GB: B to A.
    """

    FA = "FA"
    GA = "GA"
    FB = "FB"
    GB = "GB"

    @property
    def source(self) -> Wall:
        return Wall.A if self in (MapId.FA, MapId.FB) else Wall.B

    @property
    def target(self) -> Wall:
        return Wall.A if self in (MapId.FA, MapId.GB) else Wall.B


def map_id_for(source: Wall, target: Wall) -> MapId:
    """Map joining consecutive collisions on the given walls."""
    if source is Wall.A:
        return MapId.FA if target is Wall.A else MapId.FB
    return MapId.GB if target is Wall.A else MapId.GA


@dataclass(frozen=True, slots=True)
class MapState:
    """Post-collision momentum in the collision frame, plus total energy.

    The energy rides along because the cross-wall maps are not closed
    without it.
    """

    u_bar: float
    w_bar: float
    energy: float

    def __post_init__(self) -> None:
        if self.energy <= 0.0 or not math.isfinite(self.energy):
            raise ValueError(f"energy must be positive, got {self.energy!r}")
        if self.w_bar < 0.0:
            raise ValueError(
                f"outgoing normal momentum must be nonnegative, got {self.w_bar!r}"
            )
        excess = self.w_bar * self.w_bar - 2.0 * self.energy
        if excess > RADICAND_TOL:
            raise EnergyViolationError(
                f"normal kinetic energy {self.w_bar ** 2 / 2!r} exceeds total {self.energy!r}"
            )


def _opposite_normal(w_bar: float, energy: float) -> float:
    radicand = 2.0 * energy - w_bar * w_bar
    if radicand < -RADICAND_TOL:
        raise EnergyViolationError(
            f"normal kinetic energy {w_bar ** 2 / 2!r} exceeds total {energy!r}"
        )
    return math.sqrt(max(radicand, 0.0))


def apply_map(map_id: MapId, state: MapState, angle: WedgeAngle) -> MapState:
    """Outgoing momentum at the next collision on the map's target wall.

    Same-wall maps shift the tangential momentum by twice the normal
    momentum scaled with cot(theta) (wall A) or tan(theta) (wall B) and keep
    the normal momentum.  Cross-wall maps draw the new normal momentum from
    the conserved energy budget, ``w_bar'**2 = 2E - w_bar**2`` with the
    outgoing (nonnegative) branch.
    """
    u_bar, w_bar, energy = state.u_bar, state.w_bar, state.energy
    tan_t = angle.sin / angle.cos
    if map_id is MapId.FA:
        return MapState(u_bar - 2.0 * w_bar / tan_t, w_bar, energy)
    if map_id is MapId.GA:
        return MapState(u_bar - 2.0 * w_bar * tan_t, w_bar, energy)
    w_next = _opposite_normal(w_bar, energy)
    if map_id is MapId.FB:
        return MapState(w_bar - (u_bar + w_next) * tan_t, w_next, energy)
    return MapState(w_bar - (u_bar + w_next) / tan_t, w_next, energy)


def fixed_point(map_id: MapId, energy: float, angle: WedgeAngle) -> MapState:
    """Fixed point of a cross-wall map's defining equations.

    Only FB and GB admit an isolated fixed point; the same-wall maps have
    the sliding family (c, 0) instead.  At the critical angles
    ``arctan(p/q)`` the two cross-wall fixed points coincide and seed the
    periodic orbits.
    """
    if energy <= 0.0:
        raise ValueError(f"energy must be positive, got {energy!r}")
    root_e = math.sqrt(energy)
    if map_id is MapId.FB:
        tan_t = angle.sin / angle.cos
        return MapState(root_e * (1.0 - tan_t) / (1.0 + tan_t), root_e, energy)
    if map_id is MapId.GB:
        cot_t = angle.cos / angle.sin
        return MapState(root_e * (cot_t - 1.0) / (cot_t + 1.0), root_e, energy)
    raise ValueError(f"{map_id} has no isolated fixed point, only the sliding family")


def reflection_period1_possible(angle: WedgeAngle) -> bool:
    """Whether a single-bounce closed orbit built from full momentum
    reversal exists; true only in the symmetric wedge."""
    return abs(angle.theta - math.pi / 4) <= 1e-12
