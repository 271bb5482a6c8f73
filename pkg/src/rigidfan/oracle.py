"""Brute-force checks of the fan mechanism and a numerical flex search.

Fan enumeration: with the closing edge removed, a fan with ``f`` folds can
be refolded ``2**f`` ways (first triangle pinned).  Each realization is
produced by accumulating signed angular increments around the center
(2D) or around the central edge (3D); spokes and peripheral edges keep
their lengths exactly, only the neighbor distance moves.
"""
from __future__ import annotations

import itertools
from dataclasses import dataclass

import numpy as np

from .construction import FanDecomposition, Framework
from .errors import TooManyFolds
from .geometry import Configuration, _as_config
from .rigidity import TOL_EQ, rigidity_matrix

F_MAX = 20


def sign_vectors(f: int) -> np.ndarray:
    """All ``2**f`` vectors in {+1, -1}^f, all-plus first."""
    if f == 0:
        return np.ones((1, 0), dtype=int)
    bits = (np.arange(2**f)[:, None] >> np.arange(f - 1, -1, -1)) & 1
    return 1 - 2 * bits


class _Realizations:
    """Lazy sequence of realized configurations, one per sign vector."""

    def __init__(self, owner):
        self._owner = owner

    def __len__(self):
        return len(self._owner.sign_vectors)

    def __getitem__(self, k):
        if isinstance(k, slice):
            return [self[i] for i in range(*k.indices(len(self)))]
        if k < 0:
            k += len(self)
        if not 0 <= k < len(self):
            raise IndexError(k)
        return self._owner.realize(self._owner.sign_vectors[k])

    def __iter__(self):
        for k in range(len(self)):
            yield self[k]


@dataclass
class FanConfigurationSet:
    """All refoldings of one fan.

    ``sign_vectors[k][j]`` is the orientation of fan triangle ``j + 1``
    relative to the pinned first triangle, i.e. whether the fold at
    peripheral node ``chain[j + 1]`` is open (+1) or flipped (-1).
    """

    f: int
    sign_vectors: np.ndarray
    neighbor_distances: np.ndarray
    config: Configuration
    chain: tuple
    neighbors: tuple
    _place: object = None

    @property
    def realizations(self):
        return _Realizations(self)

    def realize(self, signs) -> Configuration:
        return self._place(np.asarray(signs))

    @property
    def unfolded_distance(self) -> float:
        return float(self.neighbor_distances[0])

    def argmax(self, rtol: float = TOL_EQ) -> np.ndarray:
        """Indices of sign vectors attaining the maximum neighbor distance."""
        top = self.neighbor_distances.max()
        return np.flatnonzero(self.neighbor_distances >= top - rtol * top)

    def unfolded_is_unique_max(self, rtol: float = TOL_EQ) -> bool:
        """All-plus (fully unfolded) is the one and only maximizer."""
        return list(self.argmax(rtol)) == [0]


def _chain_turns(radial: np.ndarray, chain) -> np.ndarray:
    """Signed angles between consecutive radial vectors along the chain."""
    v = radial[list(chain)]
    cross = v[:-1, 0] * v[1:, 1] - v[:-1, 1] * v[1:, 0]
    dot = np.einsum("ij,ij->i", v[:-1], v[1:])
    return np.arctan2(cross, dot)


def _signed_spans(turns: np.ndarray, signs: np.ndarray) -> np.ndarray:
    return turns[0] + signs @ turns[1:]


def _enumerate(fan, radial, heights, f_max, place_factory, config):
    chain = tuple(fan.peripheral_order[0])
    f = len(chain) - 2
    if f > f_max:
        raise TooManyFolds(f"{f} folds exceeds the enumeration cap of {f_max}")
    turns = _chain_turns(radial, chain)
    signs = sign_vectors(f)
    spans = _signed_spans(turns, signs)
    first, last = chain[0], chain[-1]
    r0 = np.linalg.norm(radial[first])
    r1 = np.linalg.norm(radial[last])
    dh = heights[first] - heights[last]
    dist = np.sqrt(np.maximum(r0**2 + r1**2 - 2 * r0 * r1 * np.cos(spans) + dh**2, 0.0))
    return FanConfigurationSet(
        f=f,
        sign_vectors=signs,
        neighbor_distances=dist,
        config=config,
        chain=chain,
        neighbors=(first, last),
        _place=place_factory(chain, turns),
    )


def enumerate_fan_2d(fan: FanDecomposition, config, f_max: int = F_MAX) -> FanConfigurationSet:
    """Every refolding of a planar fan about its center."""
    config = _as_config(config)
    if fan.kind != "fan2d":
        raise ValueError("enumerate_fan_2d needs a fan2d decomposition")
    c = fan.centers[0]
    p = config.coords
    radial = p - p[c]

    def factory(chain, turns):
        r = np.linalg.norm(radial[list(chain)], axis=1)
        start = np.arctan2(radial[chain[0], 1], radial[chain[0], 0])

        def place(signs):
            phi = start + np.concatenate([[0.0], np.cumsum(turns * np.concatenate([[1], signs]))])
            q = p.copy()
            q[list(chain)] = p[c] + r[:, None] * np.stack([np.cos(phi), np.sin(phi)], axis=1)
            return Configuration(q)

        return place

    return _enumerate(fan, radial, np.zeros(config.n), f_max, factory, config)


def enumerate_fan_3d(fan: FanDecomposition, config, f_max: int = F_MAX) -> FanConfigurationSet:
    """Every refolding of a 3D fan: tetrahedra swing about the central edge."""
    config = _as_config(config)
    if fan.kind != "fan3d":
        raise ValueError("enumerate_fan_3d needs a fan3d decomposition")
    a, b = fan.centers[0]
    p = config.coords
    axis = (p[b] - p[a]) / np.linalg.norm(p[b] - p[a])
    helper = np.eye(3)[int(np.argmin(np.abs(axis)))]
    e1 = np.cross(axis, helper)
    e1 /= np.linalg.norm(e1)
    e2 = np.cross(axis, e1)
    rel = p - p[a]
    heights = rel @ axis
    radial = np.stack([rel @ e1, rel @ e2], axis=1)

    def factory(chain, turns):
        idx = list(chain)
        r = np.linalg.norm(radial[idx], axis=1)
        start = np.arctan2(radial[chain[0], 1], radial[chain[0], 0])

        def place(signs):
            phi = start + np.concatenate([[0.0], np.cumsum(turns * np.concatenate([[1], signs]))])
            q = p.copy()
            q[idx] = (
                p[a]
                + heights[idx, None] * axis
                + (r * np.cos(phi))[:, None] * e1
                + (r * np.sin(phi))[:, None] * e2
            )
            return Configuration(q)

        return place

    return _enumerate(fan, radial, heights, f_max, factory, config)


def enumerate_fan(fan: FanDecomposition, config, f_max: int = F_MAX) -> FanConfigurationSet:
    if fan.kind == "fan2d":
        return enumerate_fan_2d(fan, config, f_max)
    if fan.kind == "fan3d":
        return enumerate_fan_3d(fan, config, f_max)
    raise ValueError(f"fan enumeration supports single fans only, not {fan.kind!r}")


def max_fan_edge_error(fcs: FanConfigurationSet, fw: Framework) -> float:
    """Largest relative length change over non-closing edges and all realizations."""
    closing = tuple(sorted(fcs.neighbors))
    keep = [k for k, e in enumerate(fw.edges) if e != closing]
    ref = np.sqrt(fw.squared_lengths()[keep])
    worst = 0.0
    for q in fcs.realizations:
        got = np.sqrt(fw.squared_lengths(q.coords)[keep])
        worst = max(worst, float(np.max(np.abs(got - ref) / ref)))
    return worst


def _relative_residual(r, norm):
    return float(np.max(np.abs(r)) / norm) if r.size else 0.0


def _solve_lengths(fw, q0, target, flat_dim, max_iter=10_000, tol=1e-15, window=100, flat_steps=4):
    """Drive ``sum (|q_i - q_j|^2 - l_ij^2)^2`` to zero from ``q0``.

    Gauss-Newton steps with backtracking.  Near a singular root (the case
    for a lower-dimensional framework sitting in a bigger space) GN only
    creeps; when a step fails to halve the energy, flattening ``q`` onto
    its top-``k`` principal subspace (``flat_dim <= k <`` ambient) followed
    by ``flat_steps`` GN steps is offered as an extra candidate, and the
    lowest energy wins.  Every accepted move lowers the energy.
    """
    edges = np.array(fw.edges) if fw.edges else np.zeros((0, 2), dtype=int)
    norm = max(float(target.max()) if target.size else 1.0, np.finfo(float).tiny)
    n, dim = q0.shape

    def residual(q):
        diff = q[edges[:, 0]] - q[edges[:, 1]]
        return np.einsum("ij,ij->i", diff, diff) - target

    def gn_step(q, r):
        step, *_ = np.linalg.lstsq(rigidity_matrix(fw, q), -r, rcond=None)
        return step.reshape(n, dim)

    q = q0.copy()
    r = residual(q)
    energy = float(r @ r)
    history = [energy]
    for _ in range(max_iter):
        if _relative_residual(r, norm) < tol:
            break
        step = gn_step(q, r)
        best = None
        alpha = 1.0
        while alpha > 1e-12:
            trial = q + alpha * step
            rt = residual(trial)
            et = float(rt @ rt)
            if et < energy:
                best = (trial, rt, et)
                break
            alpha *= 0.5
        if best is None or best[2] > 0.5 * energy:
            mean = q.mean(axis=0)
            u, sv, vt = np.linalg.svd(q - mean, full_matrices=False)
            for k in range(flat_dim, dim):
                trial = mean + (u[:, :k] * sv[:k]) @ vt[:k]
                rt = residual(trial)
                for _ in range(flat_steps):
                    trial = trial + gn_step(trial, rt)
                    rt = residual(trial)
                et = float(rt @ rt)
                if best is None or et < best[2]:
                    best = (trial, rt, et)
        if best is None or best[2] >= energy:
            break
        q, r, energy = best
        history.append(energy)
        if len(history) > window and energy > 0.5 * history[-window - 1]:
            break  # stalled in a nonzero local minimum
    return q, _relative_residual(r, norm)


def perturbation_flex_search(
    fw: Framework,
    ambient_dim: int,
    trials: int,
    magnitude: float,
    rng: np.random.Generator | int | None = None,
    max_iter: int = 10_000,
) -> list[tuple[Configuration, float]]:
    """Look for other realizations of the edge lengths near the original.

    Each trial lifts the configuration into ``ambient_dim`` (zero padding),
    adds Gaussian noise with standard deviation ``magnitude`` and drives the
    squared-length residual back to zero.  Residuals are reported relative
    to the longest squared edge length.
    """
    if ambient_dim < fw.dim:
        raise ValueError("ambient_dim must be at least the framework dimension")
    if trials < 1:
        raise ValueError("trials must be positive")
    rng = np.random.default_rng(rng)
    lifted = np.zeros((fw.n, ambient_dim))
    lifted[:, : fw.dim] = fw.coords
    target = fw.squared_lengths()
    out = []
    for _ in range(trials):
        q0 = lifted + magnitude * rng.standard_normal(lifted.shape) if magnitude else lifted.copy()
        q, res = _solve_lengths(fw, q0, target, fw.dim, max_iter=max_iter)
        out.append((Configuration(q), res))
    return out


def flex_search_summary(fw, results, tol_residual=TOL_EQ):
    """Split converged trials into congruent / non-congruent to the original."""
    from .rigidity import congruence_check

    converged = [(q, r) for q, r in results if r < tol_residual]
    bad = [q for q, _ in converged if not congruence_check(fw.config, q)]
    return {"trials": len(results), "converged": len(converged), "noncongruent": len(bad), "witnesses": bad}
