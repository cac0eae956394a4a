#!/usr/bin/env python3
"""Scan the symmetric wedge for two-collision closed orbits.

The single-bounce closed orbit of the symmetric wedge launches with pure
normal momentum sqrt(E) and shuttles between two mirror points.  This probe
asks whether any *other* launch off the right wall closes after exactly two
collisions, sweeping the tangential momentum and launch arclength and
printing the best closure residuals.  Exploratory; results are printed, not
asserted.
"""

import math

from wedge_billiard import Wall, WedgeAngle, launch_from_wall, simulate, wall_momentum


def closure_residual(s: float, u_bar: float, w_bar: float) -> float | None:
    angle = WedgeAngle(math.pi / 4)
    initial = launch_from_wall(Wall.A, s, u_bar, w_bar, angle)
    traj = simulate(initial, angle, 2)
    if traj.termination is not None or len(traj.events) != 2:
        return None
    last = traj.events[-1]
    if last.wall is not Wall.A:
        return None
    resolved = wall_momentum(last.post.momentum, Wall.A, angle)
    return max(
        abs(last.post.x - initial.x),
        abs(last.post.y - initial.y),
        abs(resolved.u_bar - u_bar),
        abs(resolved.w_bar - w_bar),
    )


def main() -> None:
    best: list[tuple[float, float, float, float]] = []
    n = 60
    for i in range(n):
        u_bar = -1.5 + 3.0 * i / (n - 1)
        for j in range(1, n):
            w_bar = 2.0 * j / (n - 1)
            residual = closure_residual(1.0, u_bar, w_bar)
            if residual is not None:
                best.append((residual, 1.0, u_bar, w_bar))
    best.sort()
    print("closest two-collision closures off wall A at theta = 45 deg")
    print(f"{'residual':>12}  {'s':>6}  {'u_bar':>8}  {'w_bar':>8}")
    for residual, s, u_bar, w_bar in best[:10]:
        print(f"{residual:12.3e}  {s:6.2f}  {u_bar:8.3f}  {w_bar:8.3f}")
    if best and best[0][0] < 1e-8:
        print("found a closed two-collision orbit")
    else:
        print(
            "no two-collision closure below 1e-8 in this grid; the shuttle "
            "orbit (u_bar = 0) revisits its start only every second collision "
            "and is the closest candidate"
        )


if __name__ == "__main__":
    main()
