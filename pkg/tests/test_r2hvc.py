import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from hvclearn.directions import DirectionSet, gen_unv
from hvclearn.errors import ContractViolation
from hvclearn.objective_space import FrontSpec, sample_front
from hvclearn.r2hvc import (
    _g_star_2tch_max_orientation,
    build_length_matrix,
    g_mtch,
    g_star_2tch,
    r2hvc,
)

SQ2 = math.sqrt(2) / 2


def manual_dirs(rows):
    return DirectionSet(np.asarray(rows, dtype=float), "manual")


def test_g_star_2tch_examples():
    assert g_star_2tch([0.25, 0.75], [SQ2, SQ2], [0.5, 0.5]) == pytest.approx(
        0.25 * math.sqrt(2), abs=1e-12
    )
    assert g_star_2tch([0.5, 0.5], [SQ2, SQ2], [0.5, 0.5]) == 0.0
    assert g_star_2tch([0.3, 0.6], [1, 0], [0.5, 0.5]) == math.inf
    # zero-division sign rule: non-positive numerators give -inf terms
    assert g_star_2tch([0.3, 0.4], [1, 0], [0.5, 0.5]) == pytest.approx(-0.2)


def test_g_mtch_examples():
    assert g_mtch([1, 1], [SQ2, SQ2], [0.5, 0.5]) == pytest.approx(
        0.5 * math.sqrt(2), abs=1e-12
    )
    assert g_mtch([1, 1], [1, 0], [0.5, 0.5]) == pytest.approx(0.5)
    assert g_mtch([1, 1], [SQ2, SQ2], [1, 1]) == 0.0


def test_max_orientation_matches_negated_min():
    rng = np.random.default_rng(0)
    for _ in range(20):
        sp, s = rng.uniform(0, 1, (2, 4))
        lam = gen_unv(4, 1, int(rng.integers(1 << 30))).vectors[0]
        assert _g_star_2tch_max_orientation(sp, lam, s) == pytest.approx(
            g_star_2tch(-sp, lam, -s), abs=1e-12
        )


def test_r2hvc_examples():
    lam = manual_dirs([[SQ2, SQ2]])
    assert r2hvc([0.5, 0.5], [], lam, [1, 1]) == pytest.approx(0.5, abs=1e-12)
    s = [[0.25, 0.75], [0.75, 0.25]]
    assert r2hvc([0.5, 0.5], s, lam, [1, 1]) == pytest.approx(0.125, abs=1e-12)
    axis = manual_dirs([[1.0, 0.0]])
    assert r2hvc([0.5, 0.5], s, axis, [1, 1]) == pytest.approx(0.0625, abs=1e-12)


def test_r2hvc_membership_excludes_self():
    s = np.array([[0.25, 0.75], [0.5, 0.5], [0.75, 0.25]])
    lam = manual_dirs([[SQ2, SQ2]])
    inside = r2hvc(s[1], s, lam, [1, 1])
    outside = r2hvc(s[1], np.delete(s, 1, axis=0), lam, [1, 1])
    assert inside == outside


def test_r2hvc_errors():
    with pytest.raises(ContractViolation):
        DirectionSet(np.empty((0, 2)), "manual")  # empty sets are invalid
    with pytest.raises(ContractViolation):
        r2hvc([1.5, 0.5], [], manual_dirs([[SQ2, SQ2]]), [1, 1])


def brute_force_r2hvc(point, points, lam_rows, ref, m):
    """From-scratch indicator via the scalar g functions only."""
    total = 0.0
    for lam in lam_rows:
        cap = g_mtch(ref, lam, point)
        comp = min(
            (g_star_2tch(q, lam, point) for q in points), default=math.inf
        )
        total += min(comp, cap) ** m
    return total / len(lam_rows)


def test_r2hvc_against_bruteforce():
    rng = np.random.default_rng(1)
    for m in (2, 3, 5):
        pts = sample_front(FrontSpec("triangular", 1.4, m), 8, int(rng.integers(1 << 30)))
        dirs = gen_unv(m, 6, int(rng.integers(1 << 30)))
        ref = np.full(m, 1.2)
        cand = pts[0]
        rest = pts[1:]
        expected = brute_force_r2hvc(cand, rest, dirs.vectors, ref, m)
        assert r2hvc(cand, rest, dirs, ref) == pytest.approx(expected, rel=1e-12)


def test_monotone_in_competitors():
    rng = np.random.default_rng(2)
    for _ in range(10):
        m = int(rng.integers(2, 5))
        pts = sample_front(FrontSpec("inverted", 1.0, m), 10, int(rng.integers(1 << 30)))
        dirs = gen_unv(m, 5, int(rng.integers(1 << 30)))
        ref = np.full(m, 1.2)
        cand, pool = pts[0], pts[1:]
        smaller = r2hvc(cand, pool, dirs, ref)
        larger = r2hvc(cand, pool[:4], dirs, ref)
        assert smaller <= larger + 1e-15


@settings(max_examples=30, deadline=None)
@given(st.integers(0, 10**6), st.floats(-5, 5), st.floats(0.1, 7))
def test_translation_and_scaling_invariance(seed, shift, scale):
    m = 3
    pts = sample_front(FrontSpec("triangular", 1.0, m), 6, seed % 1000 + 1)
    dirs = gen_unv(m, 4, seed % 997 + 1)
    ref = np.full(m, 1.2)
    cand, rest = pts[0], pts[1:]
    base = r2hvc(cand, rest, dirs, ref)
    t = np.full(m, shift)
    assert r2hvc(cand + t, rest + t, dirs, ref + t) == pytest.approx(base, rel=1e-9, abs=1e-12)
    scaled = r2hvc(cand * scale, rest * scale, dirs, ref * scale)
    assert scaled == pytest.approx(base * scale**m, rel=1e-9)


def test_build_length_matrix_examples():
    # symmetric two-point set: both lengths are capped by the reference box
    # at 0.25 * sqrt(2) along the diagonal direction (the reference-line scalarizer takes the
    # minimum-coordinate gap to the reference point)
    s = [[0.25, 0.75], [0.75, 0.25]]
    lm = build_length_matrix(s, manual_dirs([[SQ2, SQ2]]), [1, 1])
    np.testing.assert_allclose(lm.lengths, [[0.25 * math.sqrt(2)]] * 2, atol=1e-12)
    # single point: only the reference term
    lm1 = build_length_matrix([[0.4, 0.6]], manual_dirs([[SQ2, SQ2], [1, 0]]), [1, 1])
    np.testing.assert_allclose(
        lm1.lengths, [[0.4 * math.sqrt(2), 0.6]], atol=1e-12
    )


def test_length_matrix_reconstruction():
    pts = sample_front(FrontSpec("triangular", 2.0, 3), 9, 4)
    dirs = gen_unv(3, 7, 5)
    ref = np.full(3, 1.2)
    lm = build_length_matrix(pts, dirs, ref)
    values = lm.r2hvc_values()
    for i in range(len(pts)):
        assert values[i] == pytest.approx(r2hvc(pts[i], pts, dirs, ref), rel=1e-12)
    # internal consistency of the cache
    assert (lm.lengths >= 0).all() and np.isfinite(lm.lengths).all()
    np.testing.assert_allclose(lm.powers, lm.lengths**3, rtol=1e-15)
    np.testing.assert_allclose(lm.row_sums, lm.powers.sum(axis=1), rtol=1e-9)


def test_append_direction():
    pts = sample_front(FrontSpec("inverted", 0.7, 3), 8, 6)
    dirs = gen_unv(3, 5, 7)
    extra = gen_unv(3, 1, 8).vectors[0]
    ref = np.full(3, 1.2)
    lm = build_length_matrix(pts, dirs, ref)
    grown = lm.append_direction(extra)
    assert grown.n_directions == 6
    np.testing.assert_array_equal(grown.lengths[:, :5], lm.lengths)
    full = build_length_matrix(
        pts, DirectionSet(np.vstack([dirs.vectors, extra]), "manual"), ref
    )
    np.testing.assert_array_equal(grown.lengths[:, 5], full.lengths[:, 5])
    np.testing.assert_allclose(
        grown.row_sums, lm.row_sums + grown.powers[:, 5], rtol=1e-15
    )
    # append then drop restores the original
    back = grown.drop_direction(5)
    np.testing.assert_array_equal(back.lengths, lm.lengths)
    np.testing.assert_allclose(back.row_sums, lm.row_sums, rtol=1e-12)


def test_leave_one_out_matches_fresh_recomputation():
    rng = np.random.default_rng(9)
    for trial in range(20):
        m = int(rng.choice([2, 3, 5]))
        n_pts = int(rng.integers(2, 12))
        k = int(rng.integers(2, 8))
        pts = sample_front(
            FrontSpec("triangular", float(rng.uniform(0.5, 2)), m),
            n_pts, int(rng.integers(1 << 30)),
        )
        dirs = gen_unv(m, k, int(rng.integers(1 << 30)))
        ref = np.full(m, 1.2)
        lm = build_length_matrix(pts, dirs, ref)
        for col in range(k):
            reduced = DirectionSet(np.delete(dirs.vectors, col, axis=0), "manual")
            fresh = build_length_matrix(pts, reduced, ref).r2hvc_values()
            np.testing.assert_allclose(
                lm.leave_one_out_values(col), fresh, rtol=1e-9
            )


def test_leave_one_out_edge_cases():
    pts = sample_front(FrontSpec("triangular", 1.0, 2), 5, 3)
    dirs = gen_unv(2, 2, 4)
    ref = np.full(2, 1.2)
    lm = build_length_matrix(pts, dirs, ref)
    np.testing.assert_array_equal(lm.leave_one_out_values(0), lm.powers[:, 1])
    np.testing.assert_array_equal(lm.leave_one_out_values(1), lm.powers[:, 0])
    with pytest.raises(IndexError):
        lm.leave_one_out_values(2)
    one = lm.drop_direction(0)
    with pytest.raises(ContractViolation):
        one.leave_one_out_values(0)


def test_identical_columns_symmetric_leave_one_out():
    pts = sample_front(FrontSpec("triangular", 1.0, 3), 6, 8)
    lam = gen_unv(3, 1, 2).vectors[0]
    dirs = DirectionSet(np.tile(lam, (4, 1)), "manual")
    lm = build_length_matrix(pts, dirs, np.full(3, 1.2))
    base = lm.leave_one_out_values(0)
    for col in range(1, 4):
        np.testing.assert_array_equal(lm.leave_one_out_values(col), base)
