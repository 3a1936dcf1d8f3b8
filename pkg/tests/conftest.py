"""Shared builders for randomized test instances."""

import numpy as np

from gibbsgap import ConditionalFamily, CostTable, make_finite_measure

#: The tilt parameters exercised throughout the randomized suites.
LAMBDAS = (0.5, -0.5, 1.0, -1.0, 2.0, -2.0)


def y_points(n):
    return [[float(j)] for j in range(n)]


def rand_prob(rng, points):
    """Random strictly positive probability measure on the given points."""
    w = rng.uniform(0.05, 1.0, size=len(points))
    return make_finite_measure(points, w, normalize=True)


def rand_reference(rng, points, probability=False):
    """Random strictly positive reference; sigma-finite unless asked."""
    w = rng.uniform(0.2, 2.0, size=len(points))
    return make_finite_measure(points, w, normalize=probability)


def rand_cost(rng, n_x, points):
    rows = rng.uniform(-1.0, 1.0, size=(n_x, len(points)))
    return CostTable.on_support(y_points(n_x), points, rows)


def rand_family(rng, n_x, points):
    return ConditionalFamily(
        x_points=y_points(n_x),
        members=tuple(rand_prob(rng, points) for _ in range(n_x)),
    )
