"""Direction vector set generation.

Six generators produce sets of unit-norm, non-negative direction vectors in
m-dimensional objective space: the simplex-lattice method (``gen_das``),
normalized absolute Gaussians on the unit hypersphere (``gen_unv``), the
stick-breaking simplex filler (``gen_jas``), maximally-sparse greedy
selection from a DAS or UNV base (``gen_mss``), and k-means cluster
representatives of a UNV pool (``gen_kmeans_u``).
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass, field

import numpy as np

from .errors import ContractViolation
from .objective_space import as_rng

GENERATORS = ("das", "unv", "jas", "mss-d", "mss-u", "kmeans-u")

# Largest lattice we are willing to materialize.
_MAX_DAS_COUNT = 20_000_000


@dataclass(frozen=True)
class DirectionSet:
    """An ordered set of unit-norm non-negative direction vectors with the
    provenance (generator name, parameters, seed) that produced it."""

    vectors: np.ndarray
    generator: str
    seed: int | None = None
    params: dict = field(default_factory=dict)

    def __post_init__(self):
        vec = np.asarray(self.vectors, dtype=float)
        if vec.ndim != 2 or vec.shape[0] < 1:
            raise ContractViolation(f"direction set must be (n, m), got {vec.shape}")
        if np.any(vec < 0) or not np.isfinite(vec).all():
            raise ContractViolation("direction vectors must be finite and non-negative")
        norms = np.linalg.norm(vec, axis=1)
        if np.any(np.abs(norms - 1.0) > 1e-12):
            raise ContractViolation("direction vectors must have unit 2-norm")
        object.__setattr__(self, "vectors", vec)

    @property
    def n(self) -> int:
        return self.vectors.shape[0]

    @property
    def m(self) -> int:
        return self.vectors.shape[1]

    def to_dict(self) -> dict:
        out = {
            "m": self.m,
            "n": self.n,
            "generator": self.generator,
            "seed": self.seed,
            "vectors": [[float(v) for v in row] for row in self.vectors],
        }
        if self.params:
            out["params"] = dict(self.params)
        return out

    def save(self, path, extra: dict | None = None) -> None:
        doc = self.to_dict()
        if extra:
            doc.update(extra)
        with open(path, "w") as fh:
            json.dump(doc, fh, indent=2, sort_keys=True)
            fh.write("\n")

    @classmethod
    def load(cls, path) -> "DirectionSet":
        with open(path) as fh:
            doc = json.load(fh)
        try:
            vectors = np.asarray(doc["vectors"], dtype=float)
            ds = cls(
                vectors=vectors,
                generator=str(doc["generator"]),
                seed=doc.get("seed"),
                params=doc.get("params", {}),
            )
        except (KeyError, TypeError, ValueError) as exc:
            raise ContractViolation(f"{path}: not a direction set file ({exc})")
        if ds.n != int(doc["n"]) or ds.m != int(doc["m"]):
            raise ContractViolation(f"{path}: header disagrees with vector shape")
        return ds


def weight_to_direction(w) -> np.ndarray:
    """Normalize a non-negative, non-zero weight vector to unit 2-norm."""
    w = np.asarray(w, dtype=float)
    if np.any(w < 0):
        raise ContractViolation("weights must be non-negative")
    norm = np.linalg.norm(w)
    if norm == 0:
        raise ContractViolation("cannot normalize the zero vector")
    return w / norm


def _normalize_rows(w: np.ndarray) -> np.ndarray:
    return w / np.linalg.norm(w, axis=1, keepdims=True)


def das_weights(m: int, h: int) -> np.ndarray:
    """All lattice weight vectors with coordinates in {0, 1/H, ..., 1}
    summing to one, in ascending lexicographic order."""
    if h < 1:
        raise ContractViolation(f"lattice parameter H must be >= 1, got {h}")
    count = math.comb(h + m - 1, m - 1)
    if count > _MAX_DAS_COUNT:
        raise ContractViolation(
            f"lattice of {count} vectors exceeds the supported size"
        )
    rows = np.empty((count, m), dtype=float)
    idx = 0

    def fill(prefix: list[int], left: int, depth: int):
        nonlocal idx
        if depth == m - 1:
            rows[idx, :-1] = prefix
            rows[idx, -1] = left
            idx += 1
            return
        for v in range(left + 1):
            fill(prefix + [v], left - v, depth + 1)

    fill([], h, 0)
    return rows / h


def gen_das(m: int, h: int) -> DirectionSet:
    """Simplex-lattice direction set: C(H+m-1, m-1) normalized lattice
    weight vectors in deterministic lexicographic order."""
    weights = das_weights(m, h)
    return DirectionSet(_normalize_rows(weights), "das", None, {"H": h})


def unv_vectors(m: int, n: int, rng: np.random.Generator) -> np.ndarray:
    """n draws of lambda = |x| / ||x|| with x standard m-variate normal."""
    out = np.empty((n, m), dtype=float)
    filled = 0
    while filled < n:
        x = rng.standard_normal((n - filled, m))
        norms = np.linalg.norm(x, axis=1)
        ok = norms > 0
        good = np.abs(x[ok]) / norms[ok, None]
        out[filled : filled + len(good)] = good
        filled += len(good)
    return out


def gen_unv(m: int, n: int, rng) -> DirectionSet:
    """Uniform directions on the non-negative part of the unit hypersphere."""
    if n < 1:
        raise ContractViolation(f"need n >= 1 vectors, got {n}")
    gen = as_rng(rng)
    seed = rng if isinstance(rng, int) else None
    return DirectionSet(unv_vectors(m, n, gen), "unv", seed)


def jas_weights_from_uniforms(u: np.ndarray) -> np.ndarray:
    """Stick-breaking simplex weights from an (n, m-1) matrix of uniforms.

    Row-wise: w_1 = 1 - u_1^(1/(m-1)), then
    w_k = (1 - sum_{j<k} w_j)(1 - u_k^(1/(m-k))) for k = 2..m-1, and
    w_m closes the simplex.
    """
    u = np.asarray(u, dtype=float)
    n, m_minus_1 = u.shape
    m = m_minus_1 + 1
    w = np.empty((n, m), dtype=float)
    remaining = np.ones(n)
    for k in range(m - 1):
        frac = 1.0 - u[:, k] ** (1.0 / (m - 1 - k))
        w[:, k] = remaining * frac
        remaining = remaining - w[:, k]
    w[:, m - 1] = remaining
    return w


def gen_jas(m: int, n: int, rng) -> DirectionSet:
    """Probabilistic simplex-filling directions (stick-breaking recursion,
    then unit-norm normalization)."""
    if n < 1 or m < 2:
        raise ContractViolation(f"need n >= 1 and m >= 2, got n={n}, m={m}")
    gen = as_rng(rng)
    seed = rng if isinstance(rng, int) else None
    weights = jas_weights_from_uniforms(gen.random((n, m - 1)))
    return DirectionSet(_normalize_rows(weights), "jas", seed)


def _dedup_rows(vec: np.ndarray) -> np.ndarray:
    """Drop exact duplicate rows, keeping first occurrences in order."""
    seen = set()
    keep = []
    for i, row in enumerate(vec):
        key = row.tobytes()
        if key not in seen:
            seen.add(key)
            keep.append(i)
    return vec[keep]


def gen_mss(base: DirectionSet, n: int) -> DirectionSet:
    """Maximally sparse selection from a base set.

    Starts from the m axis unit vectors (prepended if the base lacks them)
    and greedily appends the base vector with the largest Euclidean distance
    to the already selected set, breaking ties toward the lowest base index,
    until n vectors are selected.
    """
    m = base.m
    if n < m:
        raise ContractViolation(f"need n >= m = {m}, got n={n}")
    axes = np.eye(m)
    pool = _dedup_rows(np.vstack([axes, base.vectors]))
    if len(pool) < n:
        raise ContractViolation(
            f"base supplies only {len(pool)} distinct vectors, need {n}"
        )
    selected = np.empty((n, m), dtype=float)
    selected[:m] = axes
    candidates = pool[m:]
    # min distance from each remaining candidate to the selected set
    min_dist = np.min(
        np.linalg.norm(candidates[:, None, :] - axes[None, :, :], axis=2), axis=1
    )
    taken = np.zeros(len(candidates), dtype=bool)
    for k in range(m, n):
        scores = np.where(taken, -np.inf, min_dist)
        pick = int(np.argmax(scores))
        selected[k] = candidates[pick]
        taken[pick] = True
        dist_new = np.linalg.norm(candidates - candidates[pick], axis=1)
        np.minimum(min_dist, dist_new, out=min_dist)
    name = {"das": "mss-d", "unv": "mss-u"}.get(base.generator, "mss")
    params = {"base": base.generator, **{f"base_{k}": v for k, v in base.params.items()}}
    return DirectionSet(selected, name, base.seed, params)


def _kmeans_plus_plus(pool: np.ndarray, k: int, rng: np.random.Generator) -> np.ndarray:
    centers = np.empty((k, pool.shape[1]), dtype=float)
    centers[0] = pool[int(rng.integers(len(pool)))]
    d2 = np.sum((pool - centers[0]) ** 2, axis=1)
    for i in range(1, k):
        total = d2.sum()
        if total <= 0:
            centers[i] = pool[int(rng.integers(len(pool)))]
        else:
            centers[i] = pool[int(rng.choice(len(pool), p=d2 / total))]
        np.minimum(d2, np.sum((pool - centers[i]) ** 2, axis=1), out=d2)
    return centers


def _lloyd(pool: np.ndarray, centers: np.ndarray, max_iter: int = 300,
           tol: float = 1e-10) -> np.ndarray:
    k = len(centers)
    for _ in range(max_iter):
        d2 = np.sum((pool[:, None, :] - centers[None, :, :]) ** 2, axis=2)
        assign = np.argmin(d2, axis=1)
        new_centers = centers.copy()
        empty = []
        for c in range(k):
            members = pool[assign == c]
            if len(members):
                new_centers[c] = members.mean(axis=0)
            else:
                empty.append(c)
        if empty:
            # re-seed each empty cluster to the pool point farthest from
            # its nearest center, skipping points already used
            nearest = np.min(
                np.sum((pool[:, None, :] - new_centers[None, :, :]) ** 2, axis=2),
                axis=1,
            )
            order = np.argsort(-nearest, kind="stable")
            used = 0
            for c in empty:
                new_centers[c] = pool[order[used]]
                used += 1
        movement = np.max(np.linalg.norm(new_centers - centers, axis=1))
        centers = new_centers
        if movement < tol:
            break
    return centers


def gen_kmeans_u(m: int, n: int, pool: int, rng) -> DirectionSet:
    """Cluster a UNV pool with k-means (k = n) and return the pool member
    nearest to each final centroid; a pool point is used at most once, later
    clusters falling back to their next-nearest unused point."""
    if n < 1:
        raise ContractViolation(f"need n >= 1 vectors, got {n}")
    if pool < 10 * n:
        raise ContractViolation(f"pool must be >= 10 * n = {10 * n}, got {pool}")
    gen = as_rng(rng)
    seed = rng if isinstance(rng, int) else None
    points = unv_vectors(m, pool, gen)
    centers = _lloyd(points, _kmeans_plus_plus(points, n, gen))
    chosen = np.empty((n, m), dtype=float)
    taken = np.zeros(pool, dtype=bool)
    for c in range(n):
        d2 = np.sum((points - centers[c]) ** 2, axis=1)
        d2[taken] = np.inf
        pick = int(np.argmin(d2))
        chosen[c] = points[pick]
        taken[pick] = True
    return DirectionSet(chosen, "kmeans-u", seed, {"pool": pool})


def default_pool_size(n: int) -> int:
    """Default base-pool size for MSS-U and Kmeans-U: 100 * n, capped at 1e5."""
    return min(100 * n, 100_000)


def smallest_das_h(m: int, target: int) -> int:
    """Smallest lattice parameter whose vector count reaches ``target``."""
    h = 1
    while math.comb(h + m - 1, m - 1) < target:
        h += 1
    return h


def generate(method: str, m: int, n: int | None = None, h: int | None = None,
             pool: int | None = None, rng=None) -> DirectionSet:
    """Dispatch on a generator name. ``das`` takes ``h``; the others take
    ``n``; pool-based methods accept ``pool`` (default 100*n capped at 1e5)."""
    if method not in GENERATORS:
        raise ContractViolation(f"unknown generator {method!r}")
    if method == "das":
        if h is None:
            raise ContractViolation("das requires the lattice parameter H")
        return gen_das(m, h)
    if n is None:
        raise ContractViolation(f"{method} requires the set size n")
    if method == "unv":
        return gen_unv(m, n, rng)
    if method == "jas":
        return gen_jas(m, n, rng)
    if method == "mss-d":
        base_h = h if h is not None else smallest_das_h(m, default_pool_size(n))
        return gen_mss(gen_das(m, base_h), n)
    if method == "mss-u":
        base = gen_unv(m, pool if pool is not None else default_pool_size(n), rng)
        return gen_mss(base, n)
    # kmeans-u
    return gen_kmeans_u(m, n, pool if pool is not None else default_pool_size(n), rng)
