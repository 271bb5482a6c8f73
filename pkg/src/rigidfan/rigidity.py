"""Rigidity-matrix and stress-matrix certificates.

Conventions: the rigidity matrix is the Jacobian of *squared* edge
lengths, so the row of edge ``ij`` carries ``2 (p_i - p_j)`` in node
``i``'s block.  A stress ``w`` is a selfstress when ``R.T @ w == 0``; its
stress matrix is the weighted Laplacian ``sum w_ij (e_i - e_j)(e_i - e_j)^T``.
"""
from __future__ import annotations

import itertools
from dataclasses import asdict, dataclass, field

import numpy as np

from .construction import Framework
from .errors import NotFullDimensional, StressSearchUnsupported
from .geometry import TOL_RANK, Configuration, _as_config, affine_rank

TOL_EQ = 1e-8
TOL_PSD = 1e-8
TOL_CONG = 1e-8


@dataclass
class RigidityReport:
    n: int
    d: int
    e: int
    rank_R: int
    m: int
    s: int
    maxwell_ok: bool
    omega_spectrum: list = field(default_factory=list)
    omega_rank: int = 0
    psd: bool = False
    affine_ok: bool = False
    superstable: bool = False
    classification: str = "flexible"
    stress: list | None = None

    def to_dict(self) -> dict:
        return asdict(self)

    def summary(self) -> str:
        return (
            f"n={self.n} d={self.d} e={self.e} rank={self.rank_R} m={self.m} s={self.s} "
            f"maxwell={'ok' if self.maxwell_ok else 'FAIL'} psd={self.psd} "
            f"rank(Omega)={self.omega_rank} affine={self.affine_ok} -> {self.classification}"
        )


def rigidity_matrix(fw: Framework, coords=None) -> np.ndarray:
    """Dense ``e x (d n)`` Jacobian of squared edge lengths.

    ``coords`` evaluates the same graph at another (possibly higher
    dimensional) placement.
    """
    p = fw.coords if coords is None else np.asarray(coords, dtype=float)
    n, d = p.shape
    R = np.zeros((len(fw.edges), d * n))
    if not fw.edges:
        return R
    e = np.array(fw.edges)
    rows = np.arange(len(e))[:, None]
    cols = np.arange(d)
    diff = 2.0 * (p[e[:, 0]] - p[e[:, 1]])
    R[rows, d * e[:, :1] + cols] = diff
    R[rows, d * e[:, 1:] + cols] = -diff
    return R


def _rank(a: np.ndarray, tol: float = TOL_RANK) -> int:
    if a.size == 0:
        return 0
    sv = np.linalg.svd(a, compute_uv=False)
    if sv[0] == 0.0:
        return 0
    return int(np.sum(sv > tol * sv[0]))


def rigid_motion_count(d: int) -> int:
    return d * (d + 1) // 2


def _require_full_dim(fw):
    if affine_rank(fw.config) < fw.dim:
        raise NotFullDimensional(
            f"affine span of the {fw.n} nodes is lower than {fw.dim}-dimensional"
        )


def count_flexes_and_stresses(fw: Framework) -> tuple[int, int, int]:
    """Return ``(m, s, rank_R)``.

    ``m`` counts the nullspace of ``R`` beyond rigid motions and ``s`` the
    nullspace of ``R.T``; each comes from its own rank computation.
    """
    _require_full_dim(fw)
    R = rigidity_matrix(fw)
    n, d, e = fw.n, fw.dim, len(fw.edges)
    rank_R = _rank(R)
    m = (d * n - _rank(R.T) if e else d * n) - rigid_motion_count(d)
    s = e - rank_R
    return m, s, rank_R


def _normalize_sign(w: np.ndarray) -> np.ndarray:
    w = w / np.linalg.norm(w)
    big = np.flatnonzero(np.abs(w) > TOL_EQ * np.abs(w).max())
    if big.size and w[big[0]] < 0:
        w = -w
    return w


def selfstress_basis(fw: Framework) -> list[np.ndarray]:
    """Orthonormal basis of the selfstresses (nullspace of ``R.T``)."""
    _require_full_dim(fw)
    R = rigidity_matrix(fw)
    e = R.shape[0]
    if e == 0:
        return []
    u, sv, _ = np.linalg.svd(R, full_matrices=True)
    rank = int(np.sum(sv > TOL_RANK * sv[0])) if sv.size and sv[0] > 0 else 0
    basis = u[:, rank:].T
    if len(basis) == 1:
        return [_normalize_sign(basis[0])]
    return [b for b in basis]


def stress_matrix(fw: Framework, w) -> np.ndarray:
    """Weighted Laplacian of the graph with edge weights ``w``."""
    w = np.asarray(w, dtype=float)
    if w.shape != (len(fw.edges),):
        raise ValueError("need one stress value per edge")
    omega = np.zeros((fw.n, fw.n))
    for (i, j), wij in zip(fw.edges, w):
        omega[i, j] -= wij
        omega[j, i] -= wij
        omega[i, i] += wij
        omega[j, j] += wij
    return omega


def equilibrium_residual(fw: Framework, w) -> float:
    """``|R^T w| / (|R| |w|)``; zero for a selfstress."""
    R = rigidity_matrix(fw)
    w = np.asarray(w, dtype=float)
    denom = np.linalg.norm(R) * np.linalg.norm(w)
    return float(np.linalg.norm(R.T @ w) / denom) if denom else 0.0


def affine_motions_blocked(fw: Framework) -> bool:
    """True iff no nontrivial affine motion preserves every edge length.

    Equivalent to the outer products of edge vectors spanning the space of
    symmetric ``d x d`` matrices.
    """
    d = fw.dim
    iu = np.triu_indices(d)
    p = fw.coords
    rows = []
    for i, j in fw.edges:
        v = p[i] - p[j]
        rows.append(np.outer(v, v)[iu])
    if not rows:
        return False
    return _rank(np.array(rows)) == rigid_motion_count(d)


def _psd(eigs: np.ndarray) -> bool:
    return bool(eigs[0] >= -TOL_PSD * max(1.0, eigs[-1]))


def _eig_rank(eigs: np.ndarray) -> int:
    top = np.abs(eigs).max()
    if top == 0:
        return 0
    return int(np.sum(np.abs(eigs) > TOL_RANK * top))


def _is_complete(fw) -> bool:
    return fw.edge_set() == set(itertools.combinations(range(fw.n), 2))


def superstability_test(fw: Framework) -> RigidityReport:
    """Run the full certificate on a framework.

    With exactly one selfstress both signs are tried and the PSD one (if
    any) is reported.  Complete graphs on at most ``d + 1`` nodes are
    simplices: universally rigid by definition.
    """
    n, d, e = fw.n, fw.dim, len(fw.edges)
    m, s, rank_R = count_flexes_and_stresses(fw)
    maxwell_ok = d * n - rigid_motion_count(d) - e == m - s
    report = RigidityReport(n=n, d=d, e=e, rank_R=rank_R, m=m, s=s, maxwell_ok=maxwell_ok)
    if n <= d + 1 and _is_complete(fw):
        report.affine_ok = True
        report.superstable = True
        report.classification = "simplex"
        return report

    report.affine_ok = affine_motions_blocked(fw)
    report.classification = "flexible" if m > 0 else "inf_rigid"
    if s == 0:
        return report
    if s > 1:
        report.classification = "inconclusive"
        raise StressSearchUnsupported(
            f"{s} independent selfstresses; PSD search over the stress cone is not supported",
            report,
        )
    (w,) = selfstress_basis(fw)
    omega = stress_matrix(fw, w)
    eigs = np.linalg.eigvalsh(omega)
    if not _psd(eigs) and _psd(np.sort(-eigs)):
        w, omega, eigs = -w, -omega, np.sort(-eigs)
    report.stress = [float(x) for x in w]
    report.omega_spectrum = [float(x) for x in eigs]
    report.omega_rank = _eig_rank(eigs)
    report.psd = _psd(eigs)
    report.superstable = bool(
        report.psd and report.omega_rank == n - d - 1 and report.affine_ok
    )
    if m == 0 and report.superstable:
        report.classification = "candidate_superstable"
    return report


def congruence_check(p, q, tol: float = TOL_CONG) -> bool:
    """True iff all pairwise distances of ``p`` and ``q`` agree.

    ``q`` may live in a higher dimension.  Tolerance is relative to the
    largest pairwise distance in ``p``.
    """
    p = _as_config(p).coords
    q = _as_config(q).coords
    if p.shape[0] != q.shape[0]:
        raise ValueError("configurations must have the same number of nodes")
    dp = _pairwise(p)
    dq = _pairwise(q)
    scale = dp.max() if dp.size else 0.0
    return bool(np.all(np.abs(dp - dq) <= tol * max(scale, np.finfo(float).tiny)))


def _pairwise(x: np.ndarray) -> np.ndarray:
    i, j = np.triu_indices(x.shape[0], 1)
    return np.linalg.norm(x[i] - x[j], axis=1)


def lateration_edge_count(n: int, d: int) -> int:
    """Edges of a ``(d+1)``-lateration graph on ``n`` nodes."""
    if n < d + 1:
        raise ValueError("needs n >= d + 1")
    return (d + 1) * n - (d + 2) * (d + 1) // 2


def lateration_ratio(n: int, d: int) -> float:
    """How many times more edges lateration uses than the minimal construction."""
    from .construction import minimal_edge_count

    return lateration_edge_count(n, d) / minimal_edge_count(n, d)


def is_certified(report: RigidityReport) -> bool:
    return report.superstable and report.m == 0
