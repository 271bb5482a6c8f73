"""
A minimal universally rigid polygon
===================================

Build a fan-shaped framework on random planar points, certify it, and
watch the fan refold.
"""

# %%
# Random points and the construction
# ----------------------------------
# One hull vertex becomes the center.  Every other node is spoked to it,
# angularly consecutive nodes are chained, and the two hull neighbors of
# the center are joined.  That is 2n - 2 bars, one more than the minimum
# for infinitesimal rigidity.
from pathlib import Path

import numpy as np

from rigidfan import Configuration, build_grunbaum_2d, superstability_test
from rigidfan.oracle import enumerate_fan_2d
from rigidfan.render import render_svg

rng = np.random.default_rng(3)
config = Configuration(rng.random((12, 2)))
fw, fan = build_grunbaum_2d(config)
print("center:", fan.centers[0], "neighbors:", fan.neighbors)
print("edges:", len(fw.edges), "= 2n - 2 =", 2 * fw.n - 2)

# %%
# The certificate
# ---------------
# One selfstress, a positive semidefinite stress matrix of rank n - 3, and
# edge directions that rule out affine motions.
report = superstability_test(fw)
print(report.summary())
print("smallest eigenvalues:", np.round(report.omega_spectrum[:4], 6))

# %%
# Why it works: refolding the fan
# -------------------------------
# Drop the closing bar and every spoke becomes a hinge.  Each of the 2^f
# refoldings keeps all other lengths, and the neighbor distance is largest
# only in the original, fully unfolded placement.
fcs = enumerate_fan_2d(fan, fw.config)
order = np.argsort(fcs.neighbor_distances)[::-1]
print(f"f = {fcs.f}, {len(fcs.sign_vectors)} refoldings")
for k in order[:4]:
    print(fcs.sign_vectors[k], round(float(fcs.neighbor_distances[k]), 6))
print("unfolded is the unique maximum:", fcs.unfolded_is_unique_max())

# %%
# Drawing
# -------
# Thin bars carry positive stress, thick bars negative stress.
out = Path("grunbaum_polygon.svg")
out.write_text(render_svg(fw, fan, report.stress))
print("wrote", out)
