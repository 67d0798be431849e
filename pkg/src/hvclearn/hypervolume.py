"""Exact hypervolume and hypervolume contributions.

The exact computation follows the WFG scheme: the hypervolume of a set is the
sum of exclusive contributions, and the exclusive contribution of a point s
against competitors Q is

    inclhv(s) - HV({componentwise-max(s, q) : q in Q})

i.e. the volume of the box [s, r] minus the part of it covered by the limit
set. Limit sets are pruned to their non-dominated subset before recursing.
The recursion bottoms out in closed forms for one and two objectives.

A Monte-Carlo estimator is included as an independent testing oracle only.
"""

from __future__ import annotations

import numpy as np

from .errors import ContractViolation
from .objective_space import as_rng, check_points, check_reference
from ._parallel import parallel_map


def _pareto_filter(points: np.ndarray) -> np.ndarray:
    """Non-dominated subset (minimization); drops duplicates beyond the first."""
    n = len(points)
    if n <= 1:
        return points
    keep = np.ones(n, dtype=bool)
    for i in range(n):
        if not keep[i]:
            continue
        p = points[i]
        le = np.all(p <= points, axis=1)
        lt = np.any(p < points, axis=1)
        dom = le & lt
        dom[i] = False
        keep &= ~dom
        if keep[i]:
            dup = le & ~lt  # le and not lt means equal rows
            dup[: i + 1] = False
            keep &= ~dup
    return points[keep]


def _hv_2d(points: np.ndarray, ref: np.ndarray) -> float:
    """Sweep-line closed form for two objectives (set need not be filtered)."""
    idx = np.lexsort((points[:, 1], points[:, 0]))
    pts = points[idx]
    running = np.minimum.accumulate(pts[:, 1])
    prev = np.concatenate(([ref[1]], running[:-1]))
    heights = np.clip(prev - pts[:, 1], 0.0, None)
    return float(np.sum((ref[0] - pts[:, 0]) * heights))


def _hv_recursive(points: np.ndarray, ref: np.ndarray, use_2d_base: bool = True) -> float:
    """WFG recursion over exclusive contributions of a filtered point set."""
    n, m = points.shape
    if n == 0:
        return 0.0
    if m == 1:
        return float(ref[0] - points[:, 0].min())
    if m == 2 and use_2d_base:
        return _hv_2d(points, ref)
    if n == 1:
        return float(np.prod(ref - points[0]))
    # full lexicographic order (last objective primary) so results do not
    # depend on input row order, even through ties inside limit sets
    pts = points[np.lexsort(points.T)]
    total = 0.0
    for k in range(n):
        p = pts[k]
        incl = float(np.prod(ref - p))
        rest = pts[k + 1 :]
        if rest.size:
            limit = _pareto_filter(np.maximum(rest, p))
            total += incl - _hv_recursive(limit, ref, use_2d_base)
        else:
            total += incl
    return total


def hypervolume(points, ref) -> float:
    """Exact hypervolume of a set against a strictly dominated reference point.

    Parameters
    ----------
    points : (N, m) array of objective vectors, minimization orientation.
    ref : length-m reference point, strictly dominated by every row.

    Returns
    -------
    float
        Lebesgue measure of the union of boxes [point, ref].
    """
    pts = check_points(points)
    r = check_reference(pts, ref)
    return _hv_recursive(_pareto_filter(pts), r)


def _exclusive(point: np.ndarray, competitors: np.ndarray, ref: np.ndarray) -> float:
    """Volume dominated by ``point`` and by no competitor."""
    incl = float(np.prod(ref - point))
    if len(competitors) == 0:
        return incl
    limit = _pareto_filter(np.maximum(competitors, point))
    return incl - _hv_recursive(limit, ref)


def hvc_exact(point, points, ref) -> float:
    """Exact hypervolume contribution of ``point`` to the set ``points``.

    If ``point`` coincides with a member of the set (exact coordinate
    equality) this is HV(S) - HV(S minus the point); otherwise it is
    HV(S plus the point) - HV(S). Both cases reduce to the exclusive volume
    of the point against the other members, which is how the value is
    computed here. The result is always >= 0, and exactly 0 for a point
    dominated by (or duplicating) a member of the set.
    """
    pts = check_points(points)
    s = np.asarray(point, dtype=float)
    if s.shape != (pts.shape[1],):
        raise ContractViolation(
            f"point has dimension {s.shape}, set has m={pts.shape[1]}"
        )
    r = check_reference(pts, ref)
    check_reference(s[None, :], ref)
    matches = np.flatnonzero(np.all(pts == s, axis=1))
    if len(matches):
        competitors = np.delete(pts, matches[0], axis=0)
    else:
        competitors = pts
    return _exclusive(s, competitors, r)


def hvc_all(points, ref, threads: int = 1) -> np.ndarray:
    """Exact contribution of every set member, aligned with row order.

    Entry i equals ``hvc_exact(points[i], points, ref)``. Rows may be
    evaluated in parallel; results are written by index so the output is
    identical for any thread count.
    """
    pts = check_points(points)
    r = check_reference(pts, ref)

    def one(i: int) -> float:
        return _exclusive(pts[i], np.delete(pts, i, axis=0), r)

    return np.asarray(parallel_map(one, range(len(pts)), threads))


def mc_hypervolume(points, ref, samples: int, rng) -> tuple[float, float]:
    """Monte-Carlo hypervolume estimate with its standard error.

    Uniform samples are drawn in the box spanned by the componentwise
    minimum of the set and the reference point; the estimate is the box
    volume times the dominated fraction. Testing oracle only.
    """
    pts = check_points(points)
    r = check_reference(pts, ref)
    if samples < 1000:
        raise ContractViolation(f"need at least 1000 samples, got {samples}")
    gen = as_rng(rng)
    lower = pts.min(axis=0)
    box = float(np.prod(r - lower))
    hits = 0
    chunk = 20_000
    remaining = samples
    while remaining > 0:
        take = min(chunk, remaining)
        draws = gen.uniform(lower, r, size=(take, len(r)))
        dominated = np.zeros(take, dtype=bool)
        for p in pts:
            dominated |= np.all(draws >= p, axis=1)
            if dominated.all():
                break
        hits += int(dominated.sum())
        remaining -= take
    frac = hits / samples
    estimate = box * frac
    stderr = box * float(np.sqrt(frac * (1.0 - frac) / samples))
    return estimate, stderr
