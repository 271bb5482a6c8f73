"""Builders for minimal universally rigid frameworks.

All builders return ``(Framework, FanDecomposition)``.  For ``n >= d + 2``
the edge count is exactly ``d*n - d*(d+1)/2 + 1``; smaller inputs get the
complete graph.
"""
from __future__ import annotations

import functools
import itertools
import math
from dataclasses import dataclass, field

import numpy as np

from .errors import DegenerateInput, NoValidPartition, ProjectionDegenerate
from .geometry import (
    TOL_GEOM,
    Configuration,
    _as_config,
    affine_rank,
    convex_hull_2d,
    convex_hull_3d,
    select_center_2d,
    select_central_edge_3d,
)

KINDS = ("fan2d", "fan3d", "multifan2d", "simplex")


def _pair(i, j):
    i, j = int(i), int(j)
    return (i, j) if i < j else (j, i)


@dataclass(frozen=True, eq=False)
class Framework:
    """A graph on the nodes of ``config``; edges are normalized to ``i < j``.

    Edge order is preserved (it fixes row order of the rigidity matrix);
    duplicates are kept so that :func:`validate_decomposition` can see them.
    """

    config: Configuration
    edges: tuple[tuple[int, int], ...]

    def __post_init__(self):
        object.__setattr__(self, "config", _as_config(self.config))
        edges = tuple(_pair(i, j) for i, j in self.edges)
        n = self.config.n
        for i, j in edges:
            if not 0 <= i < n or not 0 <= j < n:
                raise ValueError(f"edge ({i}, {j}) refers to a missing node")
        object.__setattr__(self, "edges", edges)

    @property
    def n(self):
        return self.config.n

    @property
    def dim(self):
        return self.config.dim

    @property
    def coords(self):
        return self.config.coords

    def is_simple(self) -> bool:
        return len(set(self.edges)) == len(self.edges) and all(i != j for i, j in self.edges)

    def edge_set(self) -> set:
        return set(self.edges)

    def sorted(self) -> "Framework":
        return Framework(self.config, tuple(sorted(set(self.edges))))

    def squared_lengths(self, coords=None) -> np.ndarray:
        p = self.coords if coords is None else np.asarray(coords)
        if not self.edges:
            return np.zeros(0)
        e = np.array(self.edges)
        diff = p[e[:, 0]] - p[e[:, 1]]
        return np.einsum("ij,ij->i", diff, diff)


@dataclass(frozen=True)
class FanDecomposition:
    """Combinatorial witness of a construction.

    ``centers`` holds node indices for 2D kinds and central edges (pairs)
    for ``fan3d``.  ``peripheral_order`` holds one ordered chain per fan.
    """

    kind: str
    centers: tuple = ()
    neighbors: tuple = ()
    peripheral_order: tuple = ()
    folds: tuple = ()
    closing_edge: tuple = ()
    extra: dict = field(default_factory=dict, compare=False)

    @property
    def fold_count(self) -> int:
        return len(self.folds)

    def to_dict(self) -> dict:
        return {
            "kind": self.kind,
            "centers": [list(c) if isinstance(c, tuple) else c for c in self.centers],
            "neighbors": list(self.neighbors),
            "peripheral_order": [list(ch) for ch in self.peripheral_order],
            "folds": [list(f) for f in self.folds],
            "closing_edge": list(self.closing_edge),
        }

    @classmethod
    def from_dict(cls, d: dict) -> "FanDecomposition":
        return cls(
            kind=d["kind"],
            centers=tuple(tuple(c) if isinstance(c, list) else c for c in d.get("centers", [])),
            neighbors=tuple(d.get("neighbors", [])),
            peripheral_order=tuple(tuple(ch) for ch in d.get("peripheral_order", [])),
            folds=tuple(tuple(f) for f in d.get("folds", [])),
            closing_edge=tuple(d.get("closing_edge", [])),
        )


def minimal_edge_count(n: int, d: int) -> int:
    """Fewest edges of a generically universally rigid framework on n >= d+2 nodes."""
    return d * n - d * (d + 1) // 2 + 1


def _complete(config):
    edges = tuple(itertools.combinations(range(config.n), 2))
    return Framework(config, edges), FanDecomposition(kind="simplex")


def _angular_chain(origin, first, last, others, pts):
    """Order ``others`` by angle around ``origin`` sweeping from ``first`` to ``last``.

    Works in any plane coordinates (``pts`` is (n, 2)).  Angles are taken
    relative to the wedge bisector so nothing wraps around.  Ties: closer
    to the origin first, then lower index.  ``first``/``last`` bracket the
    returned chain.
    """
    o = pts[origin]
    u = pts[first] - o
    w = pts[last] - o
    uh, wh = u / np.linalg.norm(u), w / np.linalg.norm(w)
    bis = uh + wh
    if np.linalg.norm(bis) < 1e-12:
        # straight wedge: bisect toward the side the other points occupy
        bis = np.array([-uh[1], uh[0]])
        if others and np.sum((pts[others] - o) @ bis) < 0:
            bis = -bis
    bis = bis / np.linalg.norm(bis)
    perp = np.array([-bis[1], bis[0]])
    if np.dot(uh, perp) > 0:
        perp = -perp  # sweep runs from first (negative side) to last

    rel = {i: pts[i] - o for i in others}
    ang = {i: math.atan2(float(v @ perp), float(v @ bis)) for i, v in rel.items()}

    def cmp(i, j):
        vi, vj = rel[i], rel[j]
        cross = vi[0] * vj[1] - vi[1] * vj[0]
        same_ray = abs(cross) <= 1e-12 * np.linalg.norm(vi) * np.linalg.norm(vj) and vi @ vj > 0
        if not same_ray and ang[i] != ang[j]:
            return -1 if ang[i] < ang[j] else 1
        di, dj = np.linalg.norm(vi), np.linalg.norm(vj)
        if di != dj:
            return -1 if di < dj else 1
        return -1 if i < j else (1 if i > j else 0)

    return [first] + sorted(others, key=functools.cmp_to_key(cmp)) + [last]


def _check_projection(chain, pts2, scale):
    tol = TOL_GEOM * scale
    for a, b in zip(chain, chain[1:]):
        if np.linalg.norm(pts2[a] - pts2[b]) <= tol:
            raise ProjectionDegenerate(f"nodes {a} and {b} coincide in projection")


def _fan_edges(center, chain):
    edges = [_pair(center, v) for v in chain]
    edges += [_pair(a, b) for a, b in zip(chain, chain[1:])]
    return edges


def build_grunbaum_2d(config) -> tuple[Framework, FanDecomposition]:
    """Nonconvex Grünbaum polygon on the given planar points.

    The center is a hull vertex; every other node is spoked to it, nodes
    angularly adjacent around the center are joined, and the center's two
    hull neighbors get the closing edge.
    """
    config = _as_config(config)
    if config.dim != 2:
        raise ValueError("build_grunbaum_2d needs 2D points")
    if config.n < 3 or affine_rank(config) < 2:
        raise DegenerateInput("points are collinear")
    if config.n <= 3:
        return _complete(config)
    hull = convex_hull_2d(config)
    center, (prev, nxt) = select_center_2d(hull)
    others = [i for i in range(config.n) if i not in (center, prev, nxt)]
    chain = _angular_chain(center, nxt, prev, others, config.coords)
    closing = _pair(prev, nxt)
    edges = sorted(set(_fan_edges(center, chain)) | {closing})
    fan = FanDecomposition(
        kind="fan2d",
        centers=(center,),
        neighbors=(prev, nxt),
        peripheral_order=(tuple(chain),),
        folds=tuple(_pair(center, v) for v in chain[1:-1]),
        closing_edge=closing,
    )
    return Framework(config, tuple(edges)), fan


def project_along(coords: np.ndarray, a: int, b: int) -> np.ndarray:
    """Orthographic projection of 3D points onto the plane normal to ``p_b - p_a``.

    Returned in a fixed in-plane basis with node ``a`` at the origin.
    """
    axis = coords[b] - coords[a]
    axis = axis / np.linalg.norm(axis)
    helper = np.eye(3)[int(np.argmin(np.abs(axis)))]
    e1 = np.cross(axis, helper)
    e1 /= np.linalg.norm(e1)
    e2 = np.cross(axis, e1)
    rel = coords - coords[a]
    return np.stack([rel @ e1, rel @ e2], axis=1)


def build_grunbaum_3d(config) -> tuple[Framework, FanDecomposition]:
    """3D Grünbaum framework around a central hull edge.

    Both central nodes connect to every other node; peripheral nodes are
    chained in angular order about the central edge (so consecutive pairs
    close tetrahedra), plus the neighbor-neighbor closing edge and the
    central edge itself.
    """
    config = _as_config(config)
    if config.dim != 3:
        raise ValueError("build_grunbaum_3d needs 3D points")
    if config.n < 4 or affine_rank(config) < 3:
        raise DegenerateInput("points are coplanar")
    if config.n <= 4:
        return _complete(config)
    hull = convex_hull_3d(config)
    (a, b), (u, v) = select_central_edge_3d(hull)
    flat = project_along(config.coords, a, b)
    scale = config.scale()
    radial = np.linalg.norm(flat, axis=1)
    others = [i for i in range(config.n) if i not in (a, b, u, v)]
    for i in others + [u, v]:
        if radial[i] <= TOL_GEOM * scale:
            raise ProjectionDegenerate(f"node {i} is collinear with the central edge")
    flat_all = np.vstack([flat, np.zeros((1, 2))])
    origin = config.n  # a and b both project to the origin
    chain = _angular_chain(origin, u, v, others, flat_all)
    _check_projection(chain, flat, scale)
    closing = _pair(u, v)
    edges = {_pair(a, b), closing}
    for x in chain:
        edges.add(_pair(a, x))
        edges.add(_pair(b, x))
    edges.update(_pair(p, q) for p, q in zip(chain, chain[1:]))
    fan = FanDecomposition(
        kind="fan3d",
        centers=(_pair(a, b),),
        neighbors=(u, v),
        peripheral_order=(tuple(chain),),
        folds=tuple((a, b, x) for x in chain[1:-1]),
        closing_edge=closing,
    )
    return Framework(config, tuple(sorted(edges))), fan


def _side(p, q, x):
    return (q[0] - p[0]) * (x[1] - p[1]) - (q[1] - p[1]) * (x[0] - p[0])


def _two_fan(config, c1, c2):
    """Two-fan candidate for the center pair, or None if the split is unusable."""
    pts = config.coords
    eps = TOL_GEOM * config.scale() ** 2
    left, right = [], []
    for i in range(config.n):
        if i in (c1, c2):
            continue
        s = _side(pts[c1], pts[c2], pts[i])
        if abs(s) <= eps:
            return None
        (left if s > 0 else right).append(i)
    if not left or not right:
        return None

    def extreme(center, toward, side):
        # node of ``side`` making the widest angle with center->toward
        d = pts[toward] - pts[center]
        d = d / np.linalg.norm(d)

        def ang(i):
            v = pts[i] - pts[center]
            return (math.atan2(abs(d[0] * v[1] - d[1] * v[0]), float(d @ v)), -np.hypot(*v), -i)

        return max(side, key=ang)

    u = extreme(c1, c2, left)
    v = extreme(c2, c1, right)
    chain1 = _angular_chain(c1, c2, u, [i for i in left if i != u], pts)[::-1]
    chain2 = _angular_chain(c2, c1, v, [i for i in right if i != v], pts)
    return (u, v), chain1, chain2


def _opposite_sides(pts, u, v, c1, c2, eps):
    s1 = _side(pts[u], pts[v], pts[c1])
    s2 = _side(pts[u], pts[v], pts[c2])
    return (s1 > eps and s2 < -eps) or (s1 < -eps and s2 > eps)


def build_multifan_2d(config, num_centers: int = 2, centers=None, certify: bool = True):
    """Two fans glued along the segment joining their centers.

    Points left of ``c1 -> c2`` are fanned around ``c1``, points right of
    it around ``c2``; the outermost node of each fan becomes a neighbor and
    the neighbors get the closing edge.  Candidate center pairs are tried
    in index order unless ``centers`` is given; a pair is accepted when the
    centers lie strictly on opposite sides of the closing edge and (with
    ``certify``) the result passes the superstability test.
    """
    config = _as_config(config)
    if num_centers != 2:
        raise ValueError("only the two-fan variant is supported")
    if config.dim != 2:
        raise ValueError("build_multifan_2d needs 2D points")
    if affine_rank(config) < 2:
        raise DegenerateInput("points are collinear")
    if config.n < 5:
        raise ValueError("two fans need at least 5 nodes")
    pts = config.coords
    eps = TOL_GEOM * config.scale() ** 2
    if centers is not None:
        candidates = [tuple(int(c) for c in centers)]
    else:
        candidates = itertools.combinations(range(config.n), 2)

    for c1, c2 in candidates:
        found = _two_fan(config, c1, c2)
        if found is None:
            continue
        (u, v), chain1, chain2 = found
        if not _opposite_sides(pts, u, v, c1, c2, eps):
            continue
        closing = _pair(u, v)
        edges = set(_fan_edges(c1, chain1)) | set(_fan_edges(c2, chain2)) | {closing}
        fw = Framework(config, tuple(sorted(edges)))
        fan = FanDecomposition(
            kind="multifan2d",
            centers=(c1, c2),
            neighbors=(u, v),
            peripheral_order=(tuple(chain1), tuple(chain2)),
            folds=tuple(_pair(c1, x) for x in chain1[1:-1]) + tuple(_pair(c2, x) for x in chain2[1:-1]),
            closing_edge=closing,
        )
        if certify:
            from .rigidity import superstability_test

            try:
                if not superstability_test(fw).superstable:
                    continue
            except Exception:
                continue
        return fw, fan
    raise NoValidPartition("no center pair lies on opposite sides of a closing edge")


def expected_edges(fan: FanDecomposition, n: int) -> set:
    """Edge set implied by a decomposition."""
    if fan.kind == "simplex":
        return set(itertools.combinations(range(n), 2))
    edges = {_pair(*fan.closing_edge)}
    if fan.kind == "fan2d":
        edges |= set(_fan_edges(fan.centers[0], fan.peripheral_order[0]))
    elif fan.kind == "multifan2d":
        for c, chain in zip(fan.centers, fan.peripheral_order):
            edges |= set(_fan_edges(c, chain))
    elif fan.kind == "fan3d":
        a, b = fan.centers[0]
        chain = fan.peripheral_order[0]
        edges |= set(_fan_edges(a, chain)) | set(_fan_edges(b, chain)) | {_pair(a, b)}
    else:
        raise ValueError(f"unknown fan kind {fan.kind!r}")
    return edges


def validate_decomposition(fw: Framework, fan: FanDecomposition) -> tuple[bool, list[str]]:
    """Check that ``fw`` is exactly the framework described by ``fan``.

    Returns ``(ok, reasons)``; ``reasons`` is empty when ``ok``.
    """
    reasons: list[str] = []
    if not fw.is_simple():
        reasons.append("not simple")
    if fan.kind not in KINDS:
        return False, reasons + [f"unknown kind {fan.kind!r}"]
    actual = fw.edge_set()
    expected = expected_edges(fan, fw.n)
    if fan.kind == "simplex":
        if actual != expected:
            reasons.append("not a complete graph")
        return not reasons, reasons

    if fan.kind == "fan3d":
        spoke_centers = set(fan.centers[0])
        chains = [(c, fan.peripheral_order[0]) for c in fan.centers[0]]
    else:
        spoke_centers = set(fan.centers)
        chains = list(zip(fan.centers, fan.peripheral_order))
    for c, chain in chains:
        if any(_pair(c, v) not in actual for v in chain):
            reasons.append("missing center spoke")
            break
    for _, chain in chains:
        if any(_pair(a, b) not in actual for a, b in zip(chain, chain[1:])):
            reasons.append("missing peripheral edge")
            break
    if _pair(*fan.closing_edge) not in actual:
        reasons.append("missing closing edge")
    if set(_pair(*fan.closing_edge)) != set(fan.neighbors):
        reasons.append("closing edge does not join the neighbors")
    if actual - expected:
        reasons.append("unexpected edges")

    if fan.kind == "fan2d":
        chain = fan.peripheral_order[0]
        covered = set(chain) | spoke_centers
        if covered != set(range(fw.n)):
            reasons.append("fan does not cover every node")
        if {chain[0], chain[-1]} != set(fan.neighbors):
            reasons.append("chain does not end at the neighbors")
        want_folds = len(chain) - 2
    elif fan.kind == "fan3d":
        chain = fan.peripheral_order[0]
        if set(chain) | spoke_centers != set(range(fw.n)):
            reasons.append("fan does not cover every node")
        if {chain[0], chain[-1]} != set(fan.neighbors):
            reasons.append("chain does not end at the neighbors")
        want_folds = len(chain) - 2
    else:
        want_folds = sum(len(ch) - 2 for ch in fan.peripheral_order)
        covered = set().union(*map(set, fan.peripheral_order)) | spoke_centers
        if covered != set(range(fw.n)):
            reasons.append("fans do not cover every node")
    if fan.fold_count != want_folds:
        reasons.append("fold count mismatch")
    if fw.n >= fw.dim + 2 and len(fw.edges) != minimal_edge_count(fw.n, fw.dim):
        reasons.append("edge count is not minimal")
    return not reasons, reasons


def build(config, multifan: int | None = None):
    """Dispatch to the right builder for the configuration's dimension."""
    config = _as_config(config)
    if multifan:
        return build_multifan_2d(config, multifan)
    if config.dim == 2:
        return build_grunbaum_2d(config)
    if config.dim == 3:
        return build_grunbaum_3d(config)
    raise ValueError("only 2D and 3D point sets are supported")


def collapse_central_edge(fw: Framework, fan: FanDecomposition) -> tuple[Framework, FanDecomposition]:
    """Project a 3D Grünbaum framework along its central edge.

    The two central nodes merge into one center (the lower index); the
    result is a planar framework on ``n - 1`` nodes together with the
    matching ``fan2d`` decomposition, relabelled to ``0..n-2``.
    """
    if fan.kind != "fan3d":
        raise ValueError("needs a fan3d decomposition")
    a, b = fan.centers[0]
    flat = project_along(fw.coords, a, b)
    keep = [i for i in range(fw.n) if i != b]
    relabel = {old: new for new, old in enumerate(keep)}
    relabel[b] = relabel[a]
    edges = {_pair(relabel[i], relabel[j]) for i, j in fw.edges if relabel[i] != relabel[j]}
    chain = tuple(relabel[x] for x in fan.peripheral_order[0])
    c = relabel[a]
    fan2 = FanDecomposition(
        kind="fan2d",
        centers=(c,),
        neighbors=tuple(relabel[x] for x in fan.neighbors),
        peripheral_order=(chain,),
        folds=tuple(_pair(c, x) for x in chain[1:-1]),
        closing_edge=_pair(relabel[fan.closing_edge[0]], relabel[fan.closing_edge[1]]),
    )
    return Framework(Configuration(flat[keep]), tuple(sorted(edges))), fan2
