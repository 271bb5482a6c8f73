"""Shared point sets and hand-made frameworks."""
from __future__ import annotations

import numpy as np
import pytest

from rigidfan import Configuration, Framework, build_grunbaum_2d

CORPUS_SEEDS = range(100)
CORPUS_RANGE = {2: (4, 50), 3: (5, 40)}


def corpus_points(d: int, seed: int) -> Configuration:
    """Seeded random point set; n drawn from the corpus range for ``d``."""
    rng = np.random.default_rng(1000 * d + seed)
    lo, hi = CORPUS_RANGE[d]
    n = int(rng.integers(lo, hi + 1))
    return Configuration(rng.random((n, d)))


def random_points(n: int, d: int, seed: int) -> Configuration:
    return Configuration(np.random.default_rng(seed).random((n, d)))


def random_rotation(d: int, rng) -> np.ndarray:
    q, r = np.linalg.qr(rng.standard_normal((d, d)))
    return q * np.sign(np.diag(r))


def cycle(n):
    return [(i, (i + 1) % n) for i in range(n)]


def square_cycle() -> Framework:
    pts = np.array([[0, 0], [1, 0], [1, 1], [0, 1]], float)
    return Framework(Configuration(pts), cycle(4))


def two_triangles() -> Framework:
    # rigid but not globally rigid: the apex can reflect across the shared edge
    pts = np.array([[0, 0], [2, 0], [1, 1.5], [1.3, -0.8]], float)
    return Framework(Configuration(pts), [(0, 1), (0, 2), (1, 2), (0, 3), (1, 3)])


def dented_wheel() -> Framework:
    # hub 0 spoked to a nonconvex 5-cycle; the one stress has rank n-3 but is indefinite
    pts = np.array([[2, 2.2], [0, 0], [4, 0], [4, 3], [2, 1.2], [0, 3]], float)
    edges = [(0, i) for i in range(1, 6)] + [(i, i % 5 + 1) for i in range(1, 6)]
    return Framework(Configuration(pts), edges)


def regular_pentagon() -> Configuration:
    t = 2 * np.pi * np.arange(5) / 5
    return Configuration(np.stack([np.cos(t), np.sin(t)], axis=1))


def grunbaum_pentagon() -> Framework:
    return build_grunbaum_2d(regular_pentagon())[0]


def nonconvex_grunbaum() -> Framework:
    # hexagon hull with two interior points: the peripheral chain zigzags
    pts = np.array([
        [0.0, 0.0], [3.0, -0.5], [5.0, 1.0], [4.5, 3.5], [1.5, 4.0], [-0.5, 2.0],
        [2.0, 1.0], [2.6, 2.4],
    ])
    return build_grunbaum_2d(Configuration(pts))[0]


@pytest.fixture
def rng():
    return np.random.default_rng(12345)
