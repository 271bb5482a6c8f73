"""
Keeping a sensor network universally rigid
==========================================

Sensors join, leave and drift.  After every event the link topology is
rebuilt and only the changed links are reported.
"""

import numpy as np

from rigidfan import Session

rng = np.random.default_rng(5)
sess = Session(dim=2)

for i in range(8):
    sess.apply({"op": "add", "id": f"s{i}", "point": rng.random(2).tolist()})
print("after 8 joins:", len(sess.edges()), "links, certified:", sess.certified)

# %%
# A sensor drops out and another drifts
# -------------------------------------
delta = sess.apply({"op": "remove", "id": "s3"})
print("s3 leaves: +", sorted(delta.added), "-", sorted(delta.removed))

p = np.array(sess.nodes["s5"]) + 0.001
delta = sess.apply({"op": "move", "id": "s5", "point": p.tolist()})
print("s5 drifts slightly: links changed?", bool(delta))

# %%
# The event log replays to the same state.
for line in sess.log_lines()[-2:]:
    print(line)
