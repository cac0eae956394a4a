"""Exact event-driven simulator and analysis toolkit for the rotated
orthogonal gravitational wedge billiard."""

from .collision_maps import (
    EnergyViolationError,
    MapId,
    MapState,
    apply_map,
    fixed_point,
    map_id_for,
    reflection_period1_possible,
)
from .dynamics import (
    CartesianState,
    CollisionEvent,
    Termination,
    TerminationKind,
    Trajectory,
    decoupled_simulate,
    free_flight,
    hamiltonian,
    launch_from_wall,
    next_collision,
    reflect,
    simulate,
    wedge_hamiltonians,
)
from .frames import (
    RotatingFrameMomentum,
    WedgeCoords,
    cartesian_to_rotating,
    cartesian_to_wedge,
    frame_angle,
    rotating_to_wedge,
    rotation,
    wall_momentum,
    wedge_to_cartesian,
)
from .geometry import (
    ConfigBounds,
    Wall,
    WedgeAngle,
    config_bounds,
    contains,
    wall_frame,
    wall_point,
)
from .orbits import (
    BouncePeriods,
    OrbitClass,
    OrbitKind,
    OrbitSpec,
    SweepPoint,
    bounce_periods,
    bounce_times,
    build_periodic_orbit,
    classify_orbit,
    coverage_fraction,
    critical_angle,
    period_ratio,
    periodic_initial_condition,
    sensitivity_probe,
    sweep_periodic_points,
)

__version__ = "0.1.0"

__all__ = [
    "BouncePeriods",
    "CartesianState",
    "CollisionEvent",
    "ConfigBounds",
    "EnergyViolationError",
    "MapId",
    "MapState",
    "OrbitClass",
    "OrbitKind",
    "OrbitSpec",
    "RotatingFrameMomentum",
    "SweepPoint",
    "Termination",
    "TerminationKind",
    "Trajectory",
    "Wall",
    "WedgeAngle",
    "WedgeCoords",
    "apply_map",
    "bounce_periods",
    "bounce_times",
    "build_periodic_orbit",
    "cartesian_to_rotating",
    "cartesian_to_wedge",
    "classify_orbit",
    "config_bounds",
    "contains",
    "coverage_fraction",
    "critical_angle",
    "decoupled_simulate",
    "fixed_point",
    "frame_angle",
    "free_flight",
    "hamiltonian",
    "launch_from_wall",
    "map_id_for",
    "next_collision",
    "period_ratio",
    "periodic_initial_condition",
    "reflect",
    "reflection_period1_possible",
    "rotating_to_wedge",
    "rotation",
    "sensitivity_probe",
    "simulate",
    "sweep_periodic_points",
    "wall_frame",
    "wall_momentum",
    "wall_point",
    "wedge_hamiltonians",
    "wedge_to_cartesian",
]
