import math

import numpy as np
import pytest
from hypothesis import HealthCheck, settings

from wedge_billiard import CartesianState, Wall, WedgeAngle, launch_from_wall

settings.register_profile(
    "ci", derandomize=True, suppress_health_check=[HealthCheck.too_slow]
)
settings.load_profile("ci")


def random_angle(rng: np.random.Generator) -> WedgeAngle:
    return WedgeAngle(float(rng.uniform(0.15, math.pi / 2 - 0.15)))


def random_launch(rng: np.random.Generator, angle: WedgeAngle) -> CartesianState:
    """A valid post-collision style launch on a random wall."""
    wall = Wall.A if rng.random() < 0.5 else Wall.B
    return launch_from_wall(
        wall,
        s=float(rng.uniform(0.3, 1.5)),
        u_bar=float(rng.uniform(-1.2, 1.2)),
        w_bar=float(rng.uniform(0.1, 1.5)),
        angle=angle,
    )


@pytest.fixture
def rng() -> np.random.Generator:
    return np.random.default_rng(20260808)
