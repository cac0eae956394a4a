"""Event-driven simulation of a point mass falling inside the wedge.

Between collisions the particle follows an exact parabola (dimensionless
units: unit mass, unit gravity).  Collisions are elastic specular
reflections.  Collision times are roots of per-wall quadratics, so the whole
simulation is closed form; no time stepping is involved.

Two independent integrators are provided.  :func:`simulate` works in lab
coordinates: it root-solves the signed distance to each wall and reflects
momenta with the wall normal.  :func:`decoupled_simulate` evolves the two
wall-aligned coordinates as independent one-dimensional bouncers (gravity
components ``cos(theta)`` and ``sin(theta)``) and must reproduce
:func:`simulate` event for event; each serves as an oracle for the other.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from enum import Enum

from .frames import RotatingFrameMomentum, frame_angle, wall_momentum
from .geometry import Wall, WedgeAngle, contains, wall_frame, wall_point

# Roots below this are treated as re-detections of the wall just left.
T_EPS = 1e-10
# Landing closer than this to the vertex ends the run: the reflection there
# is ambiguous (two normals).
VERTEX_EPS = 1e-9
# Landing (equivalently outgoing) normal speed below this is a sliding
# state; simulating it would take unboundedly many events.
GRAZING_EPS = 1e-10
# Both walls reached within this window counts as a vertex hit.
TIE_EPS = 1e-12
# How far off a wall a state may sit and still be reflected.
ON_WALL_TOL = 1e-10


class SimulationError(Exception):
    """Base class for event-loop failures."""


class VertexHitError(SimulationError):
    """The flight lands at (or indistinguishably close to) the wedge vertex."""

    def __init__(self, dt: float):
        super().__init__(f"trajectory reaches the vertex after dt={dt!r}")
        self.dt = dt


class DegenerateError(SimulationError):
    """The flight lands with (near-)zero normal speed: a sliding state."""

    def __init__(self, dt: float, normal_speed: float):
        super().__init__(
            f"grazing collision after dt={dt!r} (normal speed {normal_speed!r})"
        )
        self.dt = dt
        self.normal_speed = normal_speed


class NoCollisionError(SimulationError):
    """No positive collision time exists; unreachable from a valid state."""


class NotOnWallError(ValueError):
    """Reflection requested for a state that does not sit on the named wall."""


class OutgoingMomentumError(ValueError):
    """Reflection requested for a state already moving into the region."""


@dataclass(frozen=True, slots=True)
class CartesianState:
    """Lab-frame snapshot: position (x, y), momentum (u, w) and clock t."""

    x: float
    y: float
    u: float
    w: float
    t: float = 0.0

    @property
    def position(self) -> tuple[float, float]:
        return self.x, self.y

    @property
    def momentum(self) -> tuple[float, float]:
        return self.u, self.w


@dataclass(frozen=True, slots=True)
class CollisionEvent:
    """One wall collision.

    ``pre`` and ``post`` share the collision point and clock; ``post`` has
    the reflected momentum.  ``rotating_post`` is the outgoing momentum in
    the wall's collision frame (tangential away from the vertex, normal into
    the region), so its ``w_bar`` is always nonnegative.
    """

    wall: Wall
    t: float
    pre: CartesianState
    post: CartesianState
    rotating_post: RotatingFrameMomentum


class TerminationKind(Enum):
    VERTEX_HIT = "vertex_hit"
    DEGENERATE = "degenerate"


@dataclass(frozen=True, slots=True)
class Termination:
    """Why an event loop stopped before reaching its collision budget."""

    kind: TerminationKind
    t: float
    normal_speed: float | None = None


@dataclass(frozen=True, slots=True)
class Trajectory:
    """A simulated run: launch state, collision events, conserved quantities.

    ``energy`` is the Hamiltonian of the launch state and
    ``wedge_integrals`` the pair of one-dimensional energies; all three are
    conserved along the run up to rounding.
    """

    initial: CartesianState
    theta: WedgeAngle
    events: tuple[CollisionEvent, ...]
    energy: float
    wedge_integrals: tuple[float, float]
    termination: Termination | None = None


def hamiltonian(s: CartesianState) -> float:
    """Total energy: kinetic part plus height."""
    return (s.u * s.u + s.w * s.w) / 2.0 + s.y


def wedge_hamiltonians(s: CartesianState, angle: WedgeAngle) -> tuple[float, float]:
    """The two one-dimensional energies whose sum is the Hamiltonian.

    Each is conserved separately along a trajectory: a wall-A collision
    reverses only ``w_tilde``, a wall-B collision only ``u_tilde``, and free
    flight splits into two independent constant-gravity motions.
    """
    sin_t, cos_t = angle.sin, angle.cos
    x_tilde = s.x * sin_t + s.y * cos_t
    y_tilde = -s.x * cos_t + s.y * sin_t
    u_tilde = s.u * sin_t + s.w * cos_t
    w_tilde = -s.u * cos_t + s.w * sin_t
    return (
        u_tilde * u_tilde / 2.0 + x_tilde * cos_t,
        w_tilde * w_tilde / 2.0 + y_tilde * sin_t,
    )


def free_flight(s: CartesianState, dt: float) -> CartesianState:
    """Parabolic flight for a time dt >= 0."""
    if dt < 0.0:
        raise ValueError(f"flight time must be nonnegative, got {dt!r}")
    return CartesianState(
        x=s.x + s.u * dt,
        y=s.y + s.w * dt - dt * dt / 2.0,
        u=s.u,
        w=s.w - dt,
        t=s.t + dt,
    )


def launch_from_wall(
    wall: Wall, s: float, u_bar: float, w_bar: float, angle: WedgeAngle, t: float = 0.0
) -> CartesianState:
    """Post-collision style launch state on a wall.

    ``u_bar`` is the momentum along the wall away from the vertex and
    ``w_bar`` the momentum along the inward normal.
    """
    tangent, normal = wall_frame(wall, angle)
    q = wall_point(wall, s, angle)
    return CartesianState(
        x=float(q[0]),
        y=float(q[1]),
        u=float(u_bar * tangent[0] + w_bar * normal[0]),
        w=float(u_bar * tangent[1] + w_bar * normal[1]),
        t=t,
    )


def _smallest_root(d0: float, v0: float, g: float) -> float | None:
    """Smallest root above T_EPS of d0 + v0*t - g*t^2/2 = 0, or None.

    The parabola opens downward (g > 0), so from inside the region
    (d0 >= 0) the smaller root is nonpositive and the larger one is the
    physical exit time.  The T_EPS cutoff discards the residual root left
    over when the state sits on the wall it just bounced off.
    """
    disc = v0 * v0 + 2.0 * g * d0
    if disc < 0.0:
        return None
    root = math.sqrt(disc)
    t_small = (v0 - root) / g
    if t_small > T_EPS:
        return t_small
    t_large = (v0 + root) / g
    if t_large > T_EPS:
        return t_large
    return None


def _next_collision_scalar(
    x_tilde: float,
    y_tilde: float,
    u_tilde: float,
    w_tilde: float,
    sin_t: float,
    cos_t: float,
) -> tuple[float, Wall, float, float]:
    """Next collision in wedge scalars: (dt, wall, landing arclength, speed)."""
    # a state resting on a wall with no normal momentum is already sliding
    if y_tilde <= ON_WALL_TOL and abs(w_tilde) < GRAZING_EPS:
        raise DegenerateError(0.0, abs(w_tilde))
    if x_tilde <= ON_WALL_TOL and abs(u_tilde) < GRAZING_EPS:
        raise DegenerateError(0.0, abs(u_tilde))
    t_a = _smallest_root(y_tilde, w_tilde, sin_t)
    t_b = _smallest_root(x_tilde, u_tilde, cos_t)
    if t_a is None and t_b is None:
        raise NoCollisionError("no positive collision time from this state")
    if t_a is not None and t_b is not None and abs(t_a - t_b) <= TIE_EPS:
        raise VertexHitError(min(t_a, t_b))
    if t_b is None or (t_a is not None and t_a < t_b):
        dt, wall = t_a, Wall.A
        s_land = x_tilde + u_tilde * dt - cos_t * dt * dt / 2.0
        v_n = abs(w_tilde - sin_t * dt)
    else:
        dt, wall = t_b, Wall.B
        s_land = y_tilde + w_tilde * dt - sin_t * dt * dt / 2.0
        v_n = abs(u_tilde - cos_t * dt)
    if s_land < VERTEX_EPS:
        raise VertexHitError(dt)
    if v_n < GRAZING_EPS:
        raise DegenerateError(dt, v_n)
    return dt, wall, s_land, v_n


def next_collision(s: CartesianState, angle: WedgeAngle) -> tuple[float, Wall]:
    """Time of flight to the next wall and which wall it is.

    Raises :class:`VertexHitError`, :class:`DegenerateError` or
    :class:`NoCollisionError` when the flight does not end in a clean
    reflection.
    """
    sin_t, cos_t = angle.sin, angle.cos
    x_tilde = s.x * sin_t + s.y * cos_t
    y_tilde = -s.x * cos_t + s.y * sin_t
    u_tilde = s.u * sin_t + s.w * cos_t
    w_tilde = -s.u * cos_t + s.w * sin_t
    dt, wall, _, _ = _next_collision_scalar(x_tilde, y_tilde, u_tilde, w_tilde, sin_t, cos_t)
    return dt, wall


def reflect(s: CartesianState, wall: Wall, angle: WedgeAngle) -> CartesianState:
    """Specular reflection at a wall: flip the normal momentum component.

    The state must sit on the named wall and must not already be moving
    into the region.  A state moving exactly parallel to the wall is left
    unchanged.
    """
    sin_t, cos_t = angle.sin, angle.cos
    if wall is Wall.A:
        dist = -s.x * cos_t + s.y * sin_t
        nx, ny = -cos_t, sin_t
    else:
        dist = s.x * sin_t + s.y * cos_t
        nx, ny = sin_t, cos_t
    if abs(dist) > ON_WALL_TOL:
        raise NotOnWallError(
            f"state sits {dist!r} off wall {wall.value}; cannot reflect"
        )
    p_n = s.u * nx + s.w * ny
    if p_n > 0.0:
        raise OutgoingMomentumError(
            f"normal momentum {p_n!r} already points into the region"
        )
    return CartesianState(
        x=s.x, y=s.y, u=s.u - 2.0 * p_n * nx, w=s.w - 2.0 * p_n * ny, t=s.t
    )


def _validate_launch(initial: CartesianState, angle: WedgeAngle) -> float:
    if not contains(initial.position, angle):
        raise ValueError(f"launch position {initial.position} lies outside the wedge")
    energy = hamiltonian(initial)
    if not math.isfinite(energy) or energy <= 0.0:
        raise ValueError(f"launch energy must be positive and finite, got {energy!r}")
    return energy


def simulate(initial: CartesianState, angle: WedgeAngle, n: int) -> Trajectory:
    """Run the event loop for n collisions.

    Vertex hits and grazing landings are recorded as terminations rather
    than raised, so a truncated trajectory is still returned with every
    event produced up to that point.
    """
    if n < 0:
        raise ValueError(f"collision count must be nonnegative, got {n!r}")
    energy = _validate_launch(initial, angle)
    integrals = wedge_hamiltonians(initial, angle)
    sin_t, cos_t = angle.sin, angle.cos
    phi_a = frame_angle(Wall.A, angle)
    phi_b = frame_angle(Wall.B, angle)

    x, y, u, w, t = initial.x, initial.y, initial.u, initial.w, initial.t
    events: list[CollisionEvent] = []
    termination: Termination | None = None

    x_tilde = x * sin_t + y * cos_t
    y_tilde = -x * cos_t + y * sin_t
    u_tilde = u * sin_t + w * cos_t
    w_tilde = -u * cos_t + w * sin_t

    for _ in range(n):
        try:
            dt, wall, s_land, _ = _next_collision_scalar(
                x_tilde, y_tilde, u_tilde, w_tilde, sin_t, cos_t
            )
        except VertexHitError as exc:
            termination = Termination(TerminationKind.VERTEX_HIT, t + exc.dt)
            break
        except DegenerateError as exc:
            termination = Termination(
                TerminationKind.DEGENERATE, t + exc.dt, exc.normal_speed
            )
            break
        t += dt
        u_land = u
        w_land = w - dt
        # The root has rounding-level residual; place the collision exactly
        # on the wall so on-wall invariants survive arbitrarily long runs.
        if wall is Wall.A:
            x, y = s_land * sin_t, s_land * cos_t
            nx, ny = -cos_t, sin_t
            tx, ty = sin_t, cos_t
            phi = phi_a
        else:
            x, y = -s_land * cos_t, s_land * sin_t
            nx, ny = sin_t, cos_t
            tx, ty = -cos_t, sin_t
            phi = phi_b
        pre = CartesianState(x, y, u_land, w_land, t)
        p_n = u_land * nx + w_land * ny
        u = u_land - 2.0 * p_n * nx
        w = w_land - 2.0 * p_n * ny
        post = CartesianState(x, y, u, w, t)
        rotating = RotatingFrameMomentum(u * tx + w * ty, u * nx + w * ny, phi)
        events.append(CollisionEvent(wall, t, pre, post, rotating))
        x_tilde = x * sin_t + y * cos_t
        y_tilde = -x * cos_t + y * sin_t
        u_tilde = u * sin_t + w * cos_t
        w_tilde = -u * cos_t + w * sin_t

    return Trajectory(
        initial=initial,
        theta=angle,
        events=tuple(events),
        energy=energy,
        wedge_integrals=integrals,
        termination=termination,
    )


def decoupled_simulate(initial: CartesianState, angle: WedgeAngle, n: int) -> Trajectory:
    """Event loop in wall-aligned coordinates: two independent 1-D bouncers.

    The coordinate along wall A falls with gravity ``cos(theta)`` and
    bounces at zero (a wall-B collision); the coordinate along wall B falls
    with gravity ``sin(theta)`` and bounces at zero (a wall-A collision).
    Bounce times are closed form per axis.  Output matches
    :func:`simulate` event for event.
    """
    if n < 0:
        raise ValueError(f"collision count must be nonnegative, got {n!r}")
    energy = _validate_launch(initial, angle)
    integrals = wedge_hamiltonians(initial, angle)
    sin_t, cos_t = angle.sin, angle.cos
    phi_a = frame_angle(Wall.A, angle)
    phi_b = frame_angle(Wall.B, angle)

    t = initial.t
    xt = initial.x * sin_t + initial.y * cos_t
    yt = -initial.x * cos_t + initial.y * sin_t
    ut = initial.u * sin_t + initial.w * cos_t
    wt = -initial.u * cos_t + initial.w * sin_t
    events: list[CollisionEvent] = []
    termination: Termination | None = None

    for _ in range(n):
        if yt <= ON_WALL_TOL and abs(wt) < GRAZING_EPS:
            termination = Termination(TerminationKind.DEGENERATE, t, abs(wt))
            break
        if xt <= ON_WALL_TOL and abs(ut) < GRAZING_EPS:
            termination = Termination(TerminationKind.DEGENERATE, t, abs(ut))
            break
        t_a = _smallest_root(yt, wt, sin_t)
        t_b = _smallest_root(xt, ut, cos_t)
        if t_a is None and t_b is None:
            raise NoCollisionError("no positive bounce time from this state")
        if t_a is not None and t_b is not None and abs(t_a - t_b) <= TIE_EPS:
            termination = Termination(TerminationKind.VERTEX_HIT, t + min(t_a, t_b))
            break
        if t_b is None or (t_a is not None and t_a < t_b):
            dt, wall = t_a, Wall.A
        else:
            dt, wall = t_b, Wall.B
        xt_land = xt + ut * dt - cos_t * dt * dt / 2.0
        yt_land = yt + wt * dt - sin_t * dt * dt / 2.0
        ut_land = ut - cos_t * dt
        wt_land = wt - sin_t * dt
        if wall is Wall.A:
            s_land, v_n = xt_land, abs(wt_land)
            yt_land = 0.0
        else:
            s_land, v_n = yt_land, abs(ut_land)
            xt_land = 0.0
        if s_land < VERTEX_EPS:
            termination = Termination(TerminationKind.VERTEX_HIT, t + dt)
            break
        if v_n < GRAZING_EPS:
            termination = Termination(TerminationKind.DEGENERATE, t + dt, v_n)
            break
        t += dt
        x = xt_land * sin_t - yt_land * cos_t
        y = xt_land * cos_t + yt_land * sin_t
        pre = CartesianState(
            x,
            y,
            ut_land * sin_t - wt_land * cos_t,
            ut_land * cos_t + wt_land * sin_t,
            t,
        )
        if wall is Wall.A:
            wt_land = -wt_land
            rotating = RotatingFrameMomentum(ut_land, wt_land, phi_a)
        else:
            ut_land = -ut_land
            rotating = RotatingFrameMomentum(wt_land, ut_land, phi_b)
        post = CartesianState(
            x,
            y,
            ut_land * sin_t - wt_land * cos_t,
            ut_land * cos_t + wt_land * sin_t,
            t,
        )
        events.append(CollisionEvent(wall, t, pre, post, rotating))
        xt, yt, ut, wt = xt_land, yt_land, ut_land, wt_land

    return Trajectory(
        initial=initial,
        theta=angle,
        events=tuple(events),
        energy=energy,
        wedge_integrals=integrals,
        termination=termination,
    )


def event_wall_momentum(event: CollisionEvent, angle: WedgeAngle) -> RotatingFrameMomentum:
    """Recompute an event's collision-frame momentum from its lab state."""
    return wall_momentum(event.post.momentum, event.wall, angle)
