"""
Flexible, rigid, globally rigid, universally rigid
==================================================

Five small frameworks and what the linear algebra says about each.
"""

import numpy as np

from rigidfan import Configuration, Framework, build_grunbaum_2d, superstability_test
from rigidfan.oracle import flex_search_summary, perturbation_flex_search


def ring(n):
    return [(i, (i + 1) % n) for i in range(n)]


t = 2 * np.pi * np.arange(5) / 5
frameworks = {
    # a square bar linkage shears freely
    "square": Framework(Configuration(np.array([[0, 0], [1, 0], [1, 1], [0, 1.0]])), ring(4)),
    # two triangles on a shared bar: rigid, but the apex may reflect
    "two triangles": Framework(
        Configuration(np.array([[0, 0], [2, 0], [1, 1.5], [1.3, -0.8]])),
        [(0, 1), (0, 2), (1, 2), (0, 3), (1, 3)],
    ),
    # a wheel with a dented rim: one stress of full rank, but indefinite
    "dented wheel": Framework(
        Configuration(np.array([[2, 2.2], [0, 0], [4, 0], [4, 3], [2, 1.2], [0, 3]])),
        [(0, i) for i in range(1, 6)] + [(i, i % 5 + 1) for i in range(1, 6)],
    ),
    "convex pentagon fan": build_grunbaum_2d(Configuration(np.stack([np.cos(t), np.sin(t)], axis=1)))[0],
    "nonconvex fan": build_grunbaum_2d(Configuration(np.array([
        [0.0, 0.0], [3.0, -0.5], [5.0, 1.0], [4.5, 3.5], [1.5, 4.0], [-0.5, 2.0], [2.0, 1.0], [2.6, 2.4],
    ])))[0],
}

# %%
# Counting flexes and stresses
# ----------------------------
for name, fw in frameworks.items():
    rep = superstability_test(fw)
    print(f"{name:20s} m={rep.m} s={rep.s} psd={rep.psd!s:5s} -> {rep.classification}")

# %%
# Only the two fans carry a certificate.  The probe in one extra
# dimension finds the square's shear and the hinge of the two triangles.
for name in ("square", "two triangles", "nonconvex fan"):
    fw = frameworks[name]
    s = flex_search_summary(fw, perturbation_flex_search(fw, 3, 30, 0.05, rng=0))
    print(f"{name:20s} non-congruent realizations in 3D: {s['noncongruent']}/{s['converged']}")
