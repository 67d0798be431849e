"""Line-based hypervolume-contribution approximation.

For a candidate point s, a set of unit direction vectors, and a reference
point r, each direction carries the length of the line segment from s that
stays inside s's exclusive region: the segment is truncated either by a
competitor (modified-Tchebycheff scalarizer ``g_star_2tch``) or by the
reference box (``g_mtch``). The indicator value is the mean of the m-th
powers of these lengths.

``LengthMatrix`` caches the per-(solution, direction) lengths for a whole
solution set so that leave-one-direction-out evaluations cost O(N) each.

Division-by-zero convention for boundary directions (some lambda_j = 0):
t/0 = +inf for t > 0 and -inf for t <= 0 inside the max of ``g_star_2tch``;
t/0 = +inf for t >= 0 inside the min of ``g_mtch``. These are the limits as
lambda_j -> 0+, and every direction has a positive component (unit norm), so
``g_mtch`` and hence every cached length stays finite.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import ContractViolation
from .objective_space import check_points, check_reference, check_solution_set


def _ratio_max(diff: np.ndarray, lam: np.ndarray) -> np.ndarray:
    """max_j diff_j / lambda_j over the last axis, with the signed zero rule.
    ``diff`` and ``lam`` may have any mutually broadcastable shapes."""
    with np.errstate(divide="ignore", invalid="ignore"):
        ratio = diff / lam
    zero = lam == 0
    if np.any(zero):
        ratio = np.where(zero, np.where(diff > 0, np.inf, -np.inf), ratio)
    return ratio.max(axis=-1)


def _ratio_min_abs(diff: np.ndarray, lam: np.ndarray) -> np.ndarray:
    """min_j |diff_j| / lambda_j over the last axis, zero components dropping
    out of the min as +inf."""
    with np.errstate(divide="ignore", invalid="ignore"):
        ratio = np.abs(diff) / lam
    zero = lam == 0
    if np.any(zero):
        ratio = np.where(zero, np.inf, ratio)
    return ratio.min(axis=-1)


def g_star_2tch(other, lam, point) -> float:
    """Distance along ``lam`` from ``point`` at which ``other`` truncates the
    exclusive region (minimization form); may be +-inf."""
    other = np.asarray(other, dtype=float)
    point = np.asarray(point, dtype=float)
    lam = np.asarray(lam, dtype=float)
    if not other.shape == point.shape == lam.shape:
        raise ContractViolation("g_star_2tch arguments must share one dimension")
    return float(_ratio_max(other - point, lam))


def _g_star_2tch_max_orientation(other, lam, point) -> float:
    """Maximization-orientation counterpart (internal): the sign of the
    coordinate difference flips."""
    other = np.asarray(other, dtype=float)
    point = np.asarray(point, dtype=float)
    lam = np.asarray(lam, dtype=float)
    return float(_ratio_max(point - other, lam))


def g_mtch(ref, lam, point) -> float:
    """Distance along ``lam`` from ``point`` at which the reference box
    truncates the region; finite whenever ``lam`` has a positive component."""
    ref = np.asarray(ref, dtype=float)
    point = np.asarray(point, dtype=float)
    lam = np.asarray(lam, dtype=float)
    if not ref.shape == point.shape == lam.shape:
        raise ContractViolation("g_mtch arguments must share one dimension")
    return float(_ratio_min_abs(point - ref, lam))


def r2hvc(point, points, directions, ref) -> float:
    """Approximate hypervolume contribution of ``point`` to ``points``.

    If ``point`` coincides with a member (exact coordinate equality), the
    evaluation runs against the set minus that member. The candidate must
    strictly dominate the reference point, and must not be dominated by a
    member of the set.
    """
    lam = directions.vectors
    if lam.shape[0] == 0:
        raise ContractViolation("direction set is empty")
    s = np.asarray(point, dtype=float)
    m = lam.shape[1]
    if s.shape != (m,):
        raise ContractViolation(f"point has shape {s.shape}, directions have m={m}")
    r = np.asarray(ref, dtype=float)
    check_reference(s[None, :], r)
    if points is not None and len(points):
        pts = check_points(points)
        if pts.shape[1] != m:
            raise ContractViolation("solution set and directions disagree on m")
        matches = np.flatnonzero(np.all(pts == s, axis=1))
        if len(matches):
            pts = np.delete(pts, matches[0], axis=0)
    else:
        pts = np.empty((0, m))
    ref_len = _ratio_min_abs((s - r)[None, :], lam)  # (K,)
    if len(pts):
        diff = pts - s  # (C, m)
        comp = _ratio_max(diff[None, :, :], lam[:, None, :])  # (K, C)
        lengths = np.minimum(comp.min(axis=1), ref_len)
    else:
        lengths = ref_len
    return float(np.mean(lengths**m))


@dataclass(frozen=True)
class LengthMatrix:
    """Per-(solution, direction) line-segment lengths for one solution set,
    one reference point, and one direction set, plus the m-th powers and
    their row sums used by leave-one-out evaluation."""

    lengths: np.ndarray  # (N, K)
    powers: np.ndarray  # (N, K), lengths ** m
    row_sums: np.ndarray  # (N,)
    points: np.ndarray  # (N, m)
    ref: np.ndarray  # (m,)

    @property
    def n_points(self) -> int:
        return self.lengths.shape[0]

    @property
    def n_directions(self) -> int:
        return self.lengths.shape[1]

    def r2hvc_values(self) -> np.ndarray:
        """Indicator value of every solution against the rest of the set."""
        return self.row_sums / self.n_directions

    def leave_one_out_values(self, k: int) -> np.ndarray:
        """Indicator values of every solution with direction ``k`` removed,
        in O(N) from the cached row sums."""
        if self.n_directions < 2:
            raise ContractViolation("leave-one-out needs at least two directions")
        if not 0 <= k < self.n_directions:
            raise IndexError(f"direction index {k} out of range")
        if self.n_directions == 2:
            # algebraically (row_sums - c_k) / 1; taking the surviving column
            # directly avoids the add/subtract rounding round-trip
            return self.powers[:, 1 - k].copy()
        return (self.row_sums - self.powers[:, k]) / (self.n_directions - 1)

    def append_direction(self, lam) -> "LengthMatrix":
        """New matrix with one extra direction column; the new column is
        computed from scratch, row sums are updated incrementally."""
        lam = np.asarray(lam, dtype=float)
        m = self.points.shape[1]
        if lam.shape != (m,):
            raise ContractViolation(f"direction has shape {lam.shape}, need ({m},)")
        col = length_column(self.points, lam, self.ref)
        col_pow = col**m
        return LengthMatrix(
            lengths=np.column_stack([self.lengths, col]),
            powers=np.column_stack([self.powers, col_pow]),
            row_sums=self.row_sums + col_pow,
            points=self.points,
            ref=self.ref,
        )

    def drop_direction(self, k: int) -> "LengthMatrix":
        """New matrix without column ``k``; row sums updated incrementally."""
        if not 0 <= k < self.n_directions:
            raise IndexError(f"direction index {k} out of range")
        return LengthMatrix(
            lengths=np.delete(self.lengths, k, axis=1),
            powers=np.delete(self.powers, k, axis=1),
            row_sums=self.row_sums - self.powers[:, k],
            points=self.points,
            ref=self.ref,
        )


def pairwise_diff(points: np.ndarray) -> np.ndarray:
    """(N, N, m) tensor of points[j] - points[i] with +inf on the diagonal so
    a point never truncates itself."""
    diff = points[None, :, :] - points[:, None, :]
    idx = np.arange(len(points))
    diff[idx, idx, :] = np.inf
    return diff


def length_column(points: np.ndarray, lam: np.ndarray, ref: np.ndarray,
                  diff: np.ndarray | None = None) -> np.ndarray:
    """Lengths of all N solutions for a single direction: each solution is
    scored against the other set members, capped by the reference box."""
    if diff is None:
        diff = pairwise_diff(points)
    ref_len = _ratio_min_abs(points - ref, lam)  # (N,)
    if len(points) == 1:
        return ref_len
    g = _ratio_max(diff, lam)  # (N, N), +inf on the diagonal
    return np.minimum(g.min(axis=1), ref_len)


def build_length_matrix(points, directions, ref) -> LengthMatrix:
    """Populate the length cache for a validated non-dominated solution set.

    Cost O(N^2 K m): one pairwise-difference tensor shared by all K
    direction columns.
    """
    pts = check_solution_set(points)
    r = check_reference(pts, ref)
    lam = directions.vectors
    if lam.shape[1] != pts.shape[1]:
        raise ContractViolation("solution set and directions disagree on m")
    n, m = pts.shape
    k = lam.shape[0]
    diff = pairwise_diff(pts)
    lengths = np.empty((n, k), dtype=float)
    for j in range(k):
        lengths[:, j] = length_column(pts, lam[j], r, diff)
    powers = lengths**m
    return LengthMatrix(
        lengths=lengths,
        powers=powers,
        row_sums=powers.sum(axis=1),
        points=pts,
        ref=r,
    )
