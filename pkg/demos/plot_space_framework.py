"""
Universal rigidity in space
===========================

The 3D construction hangs every node on a central hull edge.  Looking
down that edge flattens it into a planar fan.
"""

# %%
# Build and certify
# -----------------
from pathlib import Path

import numpy as np

from rigidfan import Configuration, build_grunbaum_3d, superstability_test, validate_decomposition
from rigidfan.construction import collapse_central_edge
from rigidfan.oracle import flex_search_summary, perturbation_flex_search
from rigidfan.render import render_svg

rng = np.random.default_rng(11)
fw, fan = build_grunbaum_3d(Configuration(rng.random((10, 3))))
print("central edge:", fan.centers[0], "neighbors:", fan.neighbors)
print("edges:", len(fw.edges), "= 3n - 5 =", 3 * fw.n - 5)
report = superstability_test(fw)
print(report.summary())

# %%
# The view along the central edge
# -------------------------------
# Merging the two central nodes leaves a planar fan on n - 1 nodes.
flat, flat_fan = collapse_central_edge(fw, fan)
print("projected fan valid:", validate_decomposition(flat, flat_fan)[0])

# %%
# Looking for other realizations
# ------------------------------
# Lift into 3, 4 and 5 dimensions, jiggle, and pull the bar lengths back
# into place.  Every configuration that fits the lengths should be a copy
# of the original.
for ambient in (3, 4, 5):
    res = perturbation_flex_search(fw, ambient, 50, 0.01 * fw.config.scale(), rng=ambient)
    s = flex_search_summary(fw, res)
    print(f"ambient {ambient}: {s['converged']}/{s['trials']} converged, {s['noncongruent']} non-congruent")

out = Path("space_framework.svg")
out.write_text(render_svg(fw, fan, report.stress))
print("wrote", out)
