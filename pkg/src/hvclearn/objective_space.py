"""Objective-space geometry: dominance, solution sets, reference points,
and samplers for triangular / inverted-triangular Pareto fronts.

All public collections are plain float64 numpy arrays: a solution set is an
(N, m) matrix with one point per row, a reference point is a length-m vector.
Minimization orientation throughout.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import ContractViolation, SamplingError

FRONT_SHAPES = ("triangular", "inverted")

# Points closer than this in max-norm count as duplicates when sampling.
_DISTINCT_TOL = 1e-12


@dataclass(frozen=True)
class FrontSpec:
    """A scaled-simplex Pareto front: sum_i f_i^p = 1 (triangular) or
    sum_i (1 - f_i)^p = 1 (inverted), with p in [0.5, 2] and all f in [0, 1]."""

    shape: str
    p: float
    m: int

    def __post_init__(self):
        if self.shape not in FRONT_SHAPES:
            raise ContractViolation(f"unknown front shape {self.shape!r}")
        if not 0.5 <= self.p <= 2.0:
            raise ContractViolation(f"curvature p={self.p} outside [0.5, 2]")
        if self.m < 2:
            raise ContractViolation(f"need m >= 2 objectives, got {self.m}")


def as_rng(rng) -> np.random.Generator:
    """Accept an integer seed (or None) and return a fresh Generator; any
    other object (a Generator, or anything implementing its interface) is
    passed through."""
    if rng is None or isinstance(rng, (int, np.integer)):
        return np.random.default_rng(rng)
    return rng


def check_points(points, name="points") -> np.ndarray:
    """Validate an (N, m) objective matrix: 2-d, m >= 2, all finite."""
    arr = np.asarray(points, dtype=float)
    if arr.ndim == 1:
        arr = arr[None, :]
    if arr.ndim != 2:
        raise ContractViolation(f"{name} must be 2-d, got shape {arr.shape}")
    if arr.shape[1] < 2:
        raise ContractViolation(f"{name} needs m >= 2 objectives, got {arr.shape[1]}")
    if not np.isfinite(arr).all():
        raise ContractViolation(f"{name} contains non-finite values")
    return arr


def dominates(a, b) -> bool:
    """Pareto dominance (minimization): a <= b componentwise with at least
    one strict inequality."""
    a = np.asarray(a, dtype=float)
    b = np.asarray(b, dtype=float)
    if a.shape != b.shape or a.ndim != 1:
        raise ContractViolation(
            f"dimension mismatch: {a.shape} vs {b.shape}"
        )
    return bool(np.all(a <= b) and np.any(a < b))


def validate_nondominated(points) -> bool:
    """True iff no point of the set Pareto-dominates another."""
    pts = check_points(points)
    n = len(pts)
    for i in range(n):
        le = np.all(pts[i] <= pts, axis=1)
        lt = np.any(pts[i] < pts, axis=1)
        dom = le & lt
        dom[i] = False
        if dom.any():
            return False
    return True


def check_solution_set(points, validated=True) -> np.ndarray:
    """Validate and return a solution set.

    Checks shape and finiteness always; with ``validated=True`` also checks
    that no two points are identical and that the set is mutually
    non-dominated.
    """
    pts = check_points(points, "solution set")
    if validated:
        order = np.lexsort(pts.T[::-1])
        if len(pts) > 1 and np.any(np.all(np.diff(pts[order], axis=0) == 0, axis=1)):
            raise ContractViolation("solution set contains identical points")
        if not validate_nondominated(pts):
            raise ContractViolation("solution set contains a dominated point")
    return pts


def check_reference(points, ref) -> np.ndarray:
    """Validate that ``ref`` is strictly dominated by every point."""
    pts = check_points(points)
    r = np.asarray(ref, dtype=float)
    if r.shape != (pts.shape[1],):
        raise ContractViolation(
            f"reference point has dimension {r.shape}, set has m={pts.shape[1]}"
        )
    if not np.isfinite(r).all():
        raise ContractViolation("reference point contains non-finite values")
    if not np.all(pts < r):
        raise ContractViolation(
            "reference point must be strictly dominated by every point of the set"
        )
    return r


def reference_from_factor(points, factor: float) -> np.ndarray:
    """Reference point at ``factor`` times the nadir (componentwise maximum).

    Requires factor > 1 and a strictly positive nadir, so that the scaled
    point is strictly dominated by the whole set.
    """
    pts = check_points(points)
    if factor <= 1:
        raise ContractViolation(f"reference factor must exceed 1, got {factor}")
    nadir = pts.max(axis=0)
    if np.any(nadir <= 0):
        raise ContractViolation(
            "nadir has a non-positive coordinate; factor scaling is undefined"
        )
    return factor * nadir


def _simplex_weights(n: int, m: int, rng: np.random.Generator) -> np.ndarray:
    """Uniform samples on the unit simplex via the stick-breaking recursion
    also used by the JAS direction generator."""
    from .directions import jas_weights_from_uniforms

    u = rng.random((n, m - 1))
    return jas_weights_from_uniforms(u)


def front_project(weights: np.ndarray, spec: FrontSpec) -> np.ndarray:
    """Map simplex weight rows onto the front surface of ``spec``."""
    w = np.asarray(weights, dtype=float)
    scale = np.sum(w**spec.p, axis=1) ** (1.0 / spec.p)
    g = w / scale[:, None]
    if spec.shape == "triangular":
        return g
    return 1.0 - g


def sample_front(spec: FrontSpec, n_points: int, rng) -> np.ndarray:
    """Sample ``n_points`` distinct points on the front described by ``spec``.

    Distinct points on a shared front surface are automatically mutually
    non-dominated. Points closer than 1e-12 in max-norm to an already
    accepted point are resampled; after 100 * n_points draws without
    completing the set a SamplingError is raised.
    """
    if n_points < 2:
        raise ContractViolation(f"need N >= 2 points, got {n_points}")
    gen = as_rng(rng)
    accepted: list[np.ndarray] = []
    attempts = 0
    budget = 100 * n_points
    while len(accepted) < n_points:
        remaining = n_points - len(accepted)
        if attempts >= budget:
            raise SamplingError(
                f"could not sample {n_points} distinct points within {budget} draws"
            )
        batch = front_project(_simplex_weights(remaining, spec.m, gen), spec)
        attempts += remaining
        for row in batch:
            if accepted and np.min(
                np.max(np.abs(np.asarray(accepted) - row), axis=1)
            ) < _DISTINCT_TOL:
                continue
            accepted.append(row)
    return np.asarray(accepted)


def write_solution_csv(path, points) -> None:
    """Write a solution set as CSV with header f1,...,fm; floats use the
    shortest decimal representation that round-trips exactly."""
    pts = check_points(points)
    m = pts.shape[1]
    lines = [",".join(f"f{j + 1}" for j in range(m))]
    for row in pts:
        lines.append(",".join(repr(float(v)) for v in row))
    with open(path, "w") as fh:
        fh.write("\n".join(lines) + "\n")


def read_solution_csv(path) -> np.ndarray:
    """Read a solution set written by :func:`write_solution_csv`."""
    with open(path) as fh:
        header = fh.readline().strip()
        names = header.split(",")
        if not all(name.startswith("f") for name in names):
            raise ContractViolation(f"{path}: malformed header {header!r}")
        rows = []
        for lineno, line in enumerate(fh, start=2):
            if not line.strip():
                continue
            tokens = line.strip().split(",")
            if len(tokens) != len(names):
                raise ContractViolation(f"{path}:{lineno}: ragged row")
            try:
                rows.append([float(tok) for tok in tokens])
            except ValueError:
                raise ContractViolation(f"{path}:{lineno}: non-numeric value")
    if not rows:
        raise ContractViolation(f"{path}: no data rows")
    return check_points(np.asarray(rows, dtype=float))
