"""Shared builders for the test suite."""
import random

import pytest

from azbrane.services.azumaya_point import RepPoint
from azbrane.services.exact_linalg import Matrix
from azbrane.services.scalars import GaussianRational, gr

SMALL = ["0", "1", "-1", "i", "-i", "2", "1+i", "1/2"]
DIAGONAL = ["0", "1", "-1", "i", "2"]


@pytest.fixture
def rng():
    return random.Random(0)


def random_scalar(rng: random.Random, choices=SMALL) -> GaussianRational:
    return gr(rng.choice(choices))


def random_matrix(rng: random.Random, r: int, choices=SMALL) -> Matrix:
    return Matrix.of([[random_scalar(rng, choices) for _ in range(r)] for _ in range(r)])


def random_upper_triangular(rng: random.Random, r: int) -> Matrix:
    grid = [[gr(0)] * r for _ in range(r)]
    for i in range(r):
        grid[i][i] = random_scalar(rng, DIAGONAL)
        for j in range(i + 1, r):
            grid[i][j] = random_scalar(rng, ["0", "1", "-1", "i"])
    return Matrix.of(grid)


def random_invertible(rng: random.Random, r: int) -> Matrix:
    """Unit lower times unit upper triangular: determinant one."""
    lower = [[gr(1) if i == j else (random_scalar(rng, ["0", "1", "-1"]) if j < i else gr(0)) for j in range(r)] for i in range(r)]
    upper = [[gr(1) if i == j else (random_scalar(rng, ["0", "1", "i"]) if j > i else gr(0)) for j in range(r)] for i in range(r)]
    return Matrix.of(lower) * Matrix.of(upper)


def point(*grids, variables=()) -> RepPoint:
    return RepPoint(tuple(Matrix.of(g) for g in grids), tuple(variables))
