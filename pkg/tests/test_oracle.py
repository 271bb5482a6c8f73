import numpy as np
import pytest

from conftest import random_points, square_cycle
from rigidfan import (
    Configuration,
    Framework,
    TooManyFolds,
    build_grunbaum_2d,
    build_grunbaum_3d,
    congruence_check,
    enumerate_fan_2d,
    enumerate_fan_3d,
    perturbation_flex_search,
)
from rigidfan.oracle import enumerate_fan, flex_search_summary, max_fan_edge_error, sign_vectors


def reflect_2d(x, origin, through):
    """Mirror points ``x`` across the line through ``origin`` and ``through``."""
    d = (through - origin) / np.linalg.norm(through - origin)
    rel = x - origin
    return origin + 2 * np.outer(rel @ d, d) - rel


def reflect_3d(x, a, b, through):
    """Mirror points across the plane spanned by the axis ``ab`` and ``through``."""
    nrm = np.cross(b - a, through - a)
    nrm /= np.linalg.norm(nrm)
    rel = x - a
    return x - 2 * np.outer(rel @ nrm, nrm)


def fold_by_reflection(p, chain, signs, mirror):
    """Realize a sign vector by mirroring chain tails one fold at a time.

    A sign change between consecutive triangles means the tail beyond the
    shared spoke is mirrored across it.
    """
    q = p.copy()
    prev = 1
    for j, s in enumerate(signs, start=1):
        if s != prev:
            tail = list(chain[j + 1:])
            q[tail] = mirror(q[tail], q[chain[j]])
        prev = s
    return q


def test_sign_vectors():
    sv = sign_vectors(3)
    assert sv.shape == (8, 3)
    assert (sv[0] == 1).all()
    assert len({tuple(r) for r in sv}) == 8
    assert sign_vectors(0).shape == (1, 0)


def test_five_point_fan_has_four_realizations():
    fw, fan = build_grunbaum_2d(random_points(5, 2, 0))
    fcs = enumerate_fan_2d(fan, fw.config)
    assert fcs.f == 2
    assert len(fcs.realizations) == 4


@pytest.mark.parametrize("n", [5, 7, 9])
def test_2d_realizations_match_reflection_oracle(n):
    fw, fan = build_grunbaum_2d(random_points(n, 2, n))
    fcs = enumerate_fan_2d(fan, fw.config)
    p = fw.coords
    c = fan.centers[0]
    u, v = fcs.neighbors
    for signs, q, dist in zip(fcs.sign_vectors, fcs.realizations, fcs.neighbor_distances):
        ref = fold_by_reflection(p, fcs.chain, signs, lambda x, t: reflect_2d(x, p[c], t))
        assert np.allclose(q.coords, ref, atol=1e-12)
        assert dist == pytest.approx(np.linalg.norm(ref[u] - ref[v]), rel=1e-12)


@pytest.mark.parametrize("n", [6, 8, 10])
def test_3d_realizations_match_reflection_oracle(n):
    fw, fan = build_grunbaum_3d(random_points(n, 3, n))
    fcs = enumerate_fan_3d(fan, fw.config)
    p = fw.coords
    a, b = fan.centers[0]
    u, v = fcs.neighbors
    for signs, q, dist in zip(fcs.sign_vectors, fcs.realizations, fcs.neighbor_distances):
        ref = fold_by_reflection(p, fcs.chain, signs, lambda x, t: reflect_3d(x, p[a], p[b], t))
        assert np.allclose(q.coords, ref, atol=1e-12)
        assert dist == pytest.approx(np.linalg.norm(ref[u] - ref[v]), rel=1e-12)


def test_3d_counts():
    # f = n - 4 in 3D: the chain holds every node except the central pair
    for n, count in [(5, 2), (6, 4), (8, 16)]:
        fw, fan = build_grunbaum_3d(random_points(n, 3, 40 + n))
        assert len(enumerate_fan_3d(fan, fw.config).realizations) == count


@pytest.mark.parametrize("d,n", [(2, 6), (2, 12), (3, 7), (3, 13)])
def test_unfolded_is_input_and_unique_max(d, n):
    fw, fan = build_grunbaum_2d(random_points(n, 2, n)) if d == 2 else build_grunbaum_3d(random_points(n, 3, n))
    fcs = enumerate_fan(fan, fw.config)
    assert len(fcs.realizations) == 2**fcs.f
    assert congruence_check(fw.config, fcs.realizations[0])
    assert np.allclose(fcs.realizations[0].coords, fw.coords)
    assert fcs.unfolded_is_unique_max()
    others = np.delete(fcs.neighbor_distances, 0)
    assert np.all(others < fcs.unfolded_distance)
    assert max_fan_edge_error(fcs, fw) < 1e-8


def test_collinear_folds_give_duplicates():
    # a chain point on the ray of another: the fold between them has angle zero
    pts = np.array([[0, 0], [2, 0], [1, 1], [2, 2], [0, 2.0]])
    fw, fan = build_grunbaum_2d(Configuration(pts))
    fcs = enumerate_fan_2d(fan, fw.config)
    assert len(fcs.realizations) == 2**fcs.f
    assert len(set(np.round(fcs.neighbor_distances, 12))) < 2**fcs.f


def test_too_many_folds():
    fw, fan = build_grunbaum_2d(random_points(12, 2, 1))
    with pytest.raises(TooManyFolds):
        enumerate_fan_2d(fan, fw.config, f_max=5)


def test_wrong_kind():
    fw, fan = build_grunbaum_3d(random_points(7, 3, 1))
    with pytest.raises(ValueError):
        enumerate_fan_2d(fan, fw.config)


def test_zero_magnitude_is_fixed_point():
    fw, _ = build_grunbaum_2d(random_points(8, 2, 2))
    (q, res), = perturbation_flex_search(fw, 3, 1, 0.0, rng=0)
    assert res == 0.0
    assert np.allclose(q.coords[:, :2], fw.coords) and np.all(q.coords[:, 2] == 0)


def test_square_flex_is_found():
    fw = square_cycle()
    results = perturbation_flex_search(fw, 2, 20, 0.1, rng=1)
    summary = flex_search_summary(fw, results)
    assert summary["converged"] > 0
    assert summary["noncongruent"] > 0
    w = summary["witnesses"][0]
    assert np.allclose(fw.squared_lengths(w.coords), fw.squared_lengths(), atol=1e-8)


def test_hinge_folds_in_space():
    # two triangles sharing an edge are rigid in the plane but hinge in 3D
    pts = np.array([[0, 0], [2, 0], [1, 1.5], [1.3, -0.8]])
    fw = Framework(Configuration(pts), [(0, 1), (0, 2), (1, 2), (0, 3), (1, 3)])
    summary = flex_search_summary(fw, perturbation_flex_search(fw, 3, 10, 0.05, rng=2))
    assert summary["noncongruent"] > 0


@pytest.mark.parametrize("d,n", [(2, 8), (3, 8)])
def test_built_frameworks_have_no_nearby_realizations(d, n):
    fw, _ = (build_grunbaum_2d if d == 2 else build_grunbaum_3d)(random_points(n, d, 77))
    for ambient in (d, d + 1, d + 2):
        res = perturbation_flex_search(fw, ambient, 15, 0.01 * fw.config.scale(), rng=ambient)
        summary = flex_search_summary(fw, res)
        assert summary["noncongruent"] == 0
        assert summary["converged"] > 0


def test_search_validates_arguments():
    fw = square_cycle()
    with pytest.raises(ValueError):
        perturbation_flex_search(fw, 1, 1, 0.1)
    with pytest.raises(ValueError):
        perturbation_flex_search(fw, 2, 0, 0.1)


def test_search_is_seeded():
    fw, _ = build_grunbaum_2d(random_points(7, 2, 3))
    a = perturbation_flex_search(fw, 3, 3, 0.01, rng=5)
    b = perturbation_flex_search(fw, 3, 3, 0.01, rng=5)
    assert all(np.array_equal(x.coords, y.coords) and r == s for (x, r), (y, s) in zip(a, b))
