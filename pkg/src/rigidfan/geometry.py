"""Point-set primitives: configurations, convex hulls and seed selection.

The 2D hull is Andrew's monotone chain; the 3D hull delegates facet
discovery to Qhull (via :mod:`scipy.spatial`) and then re-triangulates
every planar facet deterministically so output depends only on the input
coordinates, never on Qhull's internal ordering.
"""
from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np
from scipy.spatial import ConvexHull

from .errors import DegenerateInput

TOL_GEOM = 1e-9
TOL_RANK = 1e-9


@dataclass(frozen=True, eq=False)
class Configuration:
    """``n`` points in ``dim``-dimensional space.

    Nodes are identified by their row index; ``labels`` is optional
    decoration (e.g. stable ids from a session).
    """

    coords: np.ndarray
    labels: tuple | None = None

    def __post_init__(self):
        coords = np.array(self.coords, dtype=float)
        if coords.ndim != 2 or coords.shape[0] < 1:
            raise ValueError("coords must be an (n, dim) array with n >= 1")
        if not np.all(np.isfinite(coords)):
            raise ValueError("coordinates must be finite")
        coords.setflags(write=False)
        object.__setattr__(self, "coords", coords)
        if self.labels is not None:
            labels = tuple(self.labels)
            if len(labels) != coords.shape[0]:
                raise ValueError("one label per point required")
            object.__setattr__(self, "labels", labels)

    @property
    def dim(self) -> int:
        return self.coords.shape[1]

    @property
    def n(self) -> int:
        return self.coords.shape[0]

    def __len__(self):
        return self.n

    def scale(self) -> float:
        """Bounding-box diagonal, the length unit for geometric tolerances."""
        span = self.coords.max(axis=0) - self.coords.min(axis=0)
        return float(np.linalg.norm(span))

    def affine_rank(self, tol: float = TOL_RANK) -> int:
        return affine_rank(self, tol)


@dataclass(frozen=True)
class HullResult2D:
    boundary: tuple[int, ...]


@dataclass(frozen=True)
class HullResult3D:
    faces: tuple[tuple[int, int, int], ...]
    adjacency: dict = field(compare=False)

    @property
    def vertices(self) -> tuple[int, ...]:
        return tuple(sorted({v for f in self.faces for v in f}))

    @property
    def edges(self) -> tuple[tuple[int, int], ...]:
        return tuple(sorted(self.adjacency))


def _as_config(config) -> Configuration:
    if isinstance(config, Configuration):
        return config
    return Configuration(config)


def affine_rank(config, tol: float = TOL_RANK) -> int:
    """Dimension of the affine hull of the points.

    Singular values of the centered coordinate matrix below
    ``tol * sigma_max`` count as zero.
    """
    pts = _as_config(config).coords
    if pts.shape[0] < 2:
        return 0
    sv = np.linalg.svd(pts - pts.mean(axis=0), compute_uv=False)
    if sv[0] == 0.0:
        return 0
    return int(np.sum(sv > tol * sv[0]))


def _cross2(o, a, b):
    return (a[0] - o[0]) * (b[1] - o[1]) - (a[1] - o[1]) * (b[0] - o[0])


def _strict_hull_2d(pts: np.ndarray, idx: list[int], eps: float) -> list[int]:
    """Monotone chain over ``pts[idx]``; returns ccw strict vertices."""
    order = sorted(idx, key=lambda i: (pts[i, 0], pts[i, 1], i))

    def half(seq):
        chain: list[int] = []
        for i in seq:
            while len(chain) >= 2 and _cross2(pts[chain[-2]], pts[chain[-1]], pts[i]) <= eps:
                chain.pop()
            chain.append(i)
        return chain

    lower = half(order)
    upper = half(reversed(order))
    hull = lower[:-1] + upper[:-1]
    # exact duplicates of a vertex can survive the chain; keep the first
    seen, out = set(), []
    for i in hull:
        key = tuple(pts[i])
        if key not in seen:
            seen.add(key)
            out.append(i)
    k = out.index(min(out))
    return out[k:] + out[:k]


def convex_hull_2d(config) -> HullResult2D:
    """Counterclockwise strict-vertex hull, starting at the smallest index.

    Points lying on a hull edge (but not at its ends) are left out.
    """
    config = _as_config(config)
    if config.dim != 2:
        raise ValueError("convex_hull_2d needs 2D points")
    if config.n < 3 or affine_rank(config) < 2:
        raise DegenerateInput("points are collinear; no 2D hull")
    pts = config.coords
    eps = TOL_GEOM * config.scale() ** 2
    return HullResult2D(tuple(_strict_hull_2d(pts, list(range(config.n)), eps)))


def _plane_basis(normal):
    normal = normal / np.linalg.norm(normal)
    helper = np.eye(3)[int(np.argmin(np.abs(normal)))]
    e1 = np.cross(normal, helper)
    e1 /= np.linalg.norm(e1)
    e2 = np.cross(normal, e1)
    return e1, e2


def convex_hull_3d(config) -> HullResult3D:
    """Triangulated hull with outward orientation.

    Coplanar hull facets are merged and re-triangulated as a fan from
    their lowest-index vertex; only strict vertices of each facet polygon
    are used.
    """
    config = _as_config(config)
    if config.dim != 3:
        raise ValueError("convex_hull_3d needs 3D points")
    if config.n < 4 or affine_rank(config) < 3:
        raise DegenerateInput("points are coplanar; no 3D hull")
    pts = config.coords
    scale = config.scale()
    qh = ConvexHull(pts)

    # group Qhull triangles into planar facets
    groups: list[tuple[np.ndarray, float, set]] = []
    for simplex, eq in zip(qh.simplices, qh.equations):
        normal, offset = eq[:3], eq[3]
        for g_normal, g_offset, members in groups:
            if np.dot(g_normal, normal) > 1 - 1e-9 and abs(g_offset - offset) <= TOL_GEOM * scale:
                members.update(int(v) for v in simplex)
                break
        else:
            groups.append((normal, offset, {int(v) for v in simplex}))

    faces = []
    for normal, _, members in groups:
        e1, e2 = _plane_basis(normal)
        # e1 x e2 = normal, so ccw in (e1, e2) is ccw seen from outside
        flat = np.zeros_like(pts[:, :2])
        ids = sorted(members)
        flat[ids] = np.stack([pts[ids] @ e1, pts[ids] @ e2], axis=1)
        ring = _strict_hull_2d(flat, ids, TOL_GEOM * scale ** 2)
        for a, b in zip(ring[1:-1], ring[2:]):
            faces.append((ring[0], a, b))
    faces.sort()

    adjacency: dict[tuple[int, int], list[int]] = {}
    for k, (a, b, c) in enumerate(faces):
        for i, j in ((a, b), (b, c), (c, a)):
            adjacency.setdefault((min(i, j), max(i, j)), []).append(k)
    bad = [e for e, fs in adjacency.items() if len(fs) != 2]
    if bad:
        raise DegenerateInput(f"hull is not a closed 2-manifold near edges {bad[:3]}")
    return HullResult3D(tuple(faces), {e: tuple(fs) for e, fs in sorted(adjacency.items())})


def select_center_2d(hull: HullResult2D) -> tuple[int, tuple[int, int]]:
    """Pick the hull vertex with the smallest index as the fan center.

    Returns ``(center, (previous, next))`` where previous/next are the
    center's neighbors along the counterclockwise boundary.
    """
    b = hull.boundary
    if len(b) < 3:
        raise ValueError("hull boundary needs at least 3 vertices")
    k = b.index(min(b))
    return b[k], (b[k - 1], b[(k + 1) % len(b)])


def select_central_edge_3d(hull: HullResult3D) -> tuple[tuple[int, int], tuple[int, int]]:
    """Lexicographically smallest hull edge and the apexes of its two faces."""
    central = min(hull.adjacency)
    apexes = []
    for k in hull.adjacency[central]:
        (apex,) = set(hull.faces[k]) - set(central)
        apexes.append(apex)
    return central, tuple(sorted(apexes))


def orient(points: np.ndarray) -> float:
    """Signed volume (2D: area) determinant of ``d + 1`` points in ``d`` dims."""
    points = np.asarray(points, dtype=float)
    return float(np.linalg.det(points[1:] - points[0]))
