"""Training direction vector sets against exact hypervolume contributions.

The objective is the Pearson correlation, averaged over a corpus of solution
sets, between each set's exact contribution column and the line-based
approximation column produced by a candidate direction set. The trainer is a
steady-state loop: per iteration one fresh random direction is proposed, the
correlation is evaluated with every single direction left out (cheap thanks
to cached per-direction length powers), and the direction whose removal
scores best is dropped. Because the proposal itself is always a removal
candidate, the recorded objective can never decrease.

All floating-point reductions on the hot path are arranged so that
re-evaluating an unchanged direction set reproduces the previous objective
bit-for-bit: column statistics use per-column row reductions (never matrix
products), and row-sum commits reuse the exact expression evaluated during
candidate scoring. This makes the no-decrease guarantee exact rather than
approximate.
"""

from __future__ import annotations

import json
import os
from dataclasses import dataclass, field

import numpy as np

from .errors import ContractViolation, CorpusValidationError
from .directions import DirectionSet, unv_vectors
from .hypervolume import hvc_all
from .objective_space import (
    FrontSpec,
    as_rng,
    check_points,
    read_solution_csv,
    sample_front,
    write_solution_csv,
)
from .r2hvc import build_length_matrix, length_column, pairwise_diff
from ._parallel import parallel_map


def _pearson_columns(y: np.ndarray, cols: np.ndarray) -> np.ndarray:
    """Pearson correlation of ``y`` with every column of ``cols``.

    Zero-variance columns (either side) score 0. Reductions go through
    ``sum(axis=0)`` so each column's value depends only on its own bytes,
    not on how many columns share the matrix.
    """
    yc = y - y.mean()
    ss_y = float((yc * yc).sum())
    centered = cols - cols.mean(axis=0)
    num = (yc[:, None] * centered).sum(axis=0)
    ss_c = (centered * centered).sum(axis=0)
    out = np.zeros(cols.shape[1])
    if ss_y > 0:
        ok = ss_c > 0
        out[ok] = num[ok] / np.sqrt(ss_y * ss_c[ok])
    return np.clip(out, -1.0, 1.0)


def pearson_q(exact, approx) -> float:
    """Sample Pearson correlation of two equal-length columns; 0.0 when
    either column has zero variance."""
    a = np.asarray(exact, dtype=float)
    b = np.asarray(approx, dtype=float)
    if a.shape != b.shape or a.ndim != 1:
        raise ContractViolation(f"column shapes differ: {a.shape} vs {b.shape}")
    if len(a) < 2:
        raise ContractViolation("correlation needs at least two rows")
    return float(_pearson_columns(a, b[:, None])[0])


@dataclass
class TrainingSet:
    """One solution set with its cached exact contributions."""

    points: np.ndarray
    hvc: np.ndarray
    ref: np.ndarray
    shape: str | None = None
    p: float | None = None
    seed: int | None = None

    @property
    def n_points(self) -> int:
        return len(self.points)


@dataclass
class TrainingCorpus:
    sets: list[TrainingSet]
    manifest: dict = field(default_factory=dict)

    @property
    def m(self) -> int:
        return self.sets[0].points.shape[1]

    def __len__(self) -> int:
        return len(self.sets)


@dataclass
class TrainingResult:
    learned: DirectionSet
    q_history: np.ndarray  # (iterations + 1, 2) columns: iteration, Q
    config: dict


def q_of_directions(directions: DirectionSet, corpus: TrainingCorpus) -> float:
    """Mean over the corpus of the per-set correlation between exact and
    approximated contribution columns."""
    if directions.n == 0:
        raise ContractViolation("direction set is empty")
    if not corpus.sets:
        raise ContractViolation("corpus is empty")
    per_set = []
    for ts in corpus.sets:
        lm = build_length_matrix(ts.points, directions, ts.ref)
        per_set.append(_pearson_columns(ts.hvc, lm.r2hvc_values()[:, None]))
    return float(np.mean(np.stack(per_set, axis=0), axis=0)[0])


def generate_corpus(m: int, n_sets: int, n_points: int, rng,
                    reference_factor: float = 1.2, threads: int = 1) -> TrainingCorpus:
    """Sample a training corpus and cache exact contributions.

    The first ceil(L/2) sets live on triangular fronts, the rest on inverted
    ones; every set draws a fresh curvature p uniformly from [0.5, 2] and a
    fresh sampling seed, both recorded in the manifest so the corpus can be
    regenerated bit-identically. The reference point is the constant vector
    (reference_factor, ..., reference_factor), valid because all fronts live
    in the unit box.
    """
    if n_sets < 1:
        raise ContractViolation(f"need L >= 1 sets, got {n_sets}")
    if n_points < 2:
        raise ContractViolation(f"need N >= 2 points per set, got {n_points}")
    base = as_rng(rng)
    seed = rng if isinstance(rng, int) else None
    p_values = base.uniform(0.5, 2.0, size=n_sets)
    set_seeds = [int(s) for s in base.integers(0, 2**31 - 1, size=n_sets)]
    n_tri = (n_sets + 1) // 2
    ref = np.full(m, float(reference_factor))
    entries = []
    for i in range(n_sets):
        shape = "triangular" if i < n_tri else "inverted"
        entries.append((i, shape, float(p_values[i]), set_seeds[i]))

    def build(entry):
        i, shape, p, set_seed = entry
        pts = sample_front(FrontSpec(shape, p, m), n_points, set_seed)
        return TrainingSet(
            points=pts,
            hvc=hvc_all(pts, ref),
            ref=ref,
            shape=shape,
            p=p,
            seed=set_seed,
        )

    sets = parallel_map(build, entries, threads)
    manifest = {
        "m": m,
        "L": n_sets,
        "N": n_points,
        "seed": seed,
        "reference_factor": float(reference_factor),
        "sets": [
            {"index": i, "shape": shape, "p": p, "seed": s}
            for i, shape, p, s in entries
        ],
    }
    return TrainingCorpus(sets=sets, manifest=manifest)


def corpus_from_manifest(manifest: dict, threads: int = 1) -> TrainingCorpus:
    """Regenerate a corpus from its manifest; solution sets are
    bit-identical to the original generation."""
    m = int(manifest["m"])
    n_points = int(manifest["N"])
    ref = np.full(m, float(manifest["reference_factor"]))

    def build(entry):
        pts = sample_front(
            FrontSpec(entry["shape"], entry["p"], m), n_points, int(entry["seed"])
        )
        return TrainingSet(
            points=pts, hvc=hvc_all(pts, ref), ref=ref,
            shape=entry["shape"], p=entry["p"], seed=int(entry["seed"]),
        )

    sets = parallel_map(build, manifest["sets"], threads)
    return TrainingCorpus(sets=sets, manifest=dict(manifest))


def save_corpus(corpus: TrainingCorpus, out_dir) -> None:
    """Write manifest.json plus per-set solution and contribution files."""
    os.makedirs(out_dir, exist_ok=True)
    with open(os.path.join(out_dir, "manifest.json"), "w") as fh:
        json.dump(corpus.manifest, fh, indent=2, sort_keys=True)
        fh.write("\n")
    for i, ts in enumerate(corpus.sets):
        write_solution_csv(os.path.join(out_dir, f"set_{i:04d}.csv"), ts.points)
        with open(os.path.join(out_dir, f"set_{i:04d}.hvc.csv"), "w") as fh:
            fh.write("\n".join(repr(float(v)) for v in ts.hvc) + "\n")


def load_corpus(corpus_dir, verify: str = "full", threads: int = 1) -> TrainingCorpus:
    """Load a corpus directory written by :func:`save_corpus`.

    ``verify="structural"`` checks shapes, finiteness, positivity, and
    mutual non-dominance. ``verify="full"`` additionally recomputes every
    exact contribution and requires agreement within 1e-9 relative; corpora
    that fail either check raise CorpusValidationError naming the file.
    """
    if verify not in ("full", "structural"):
        raise ContractViolation(f"unknown verify mode {verify!r}")
    manifest_path = os.path.join(corpus_dir, "manifest.json")
    try:
        with open(manifest_path) as fh:
            manifest = json.load(fh)
    except (OSError, json.JSONDecodeError) as exc:
        raise CorpusValidationError(f"cannot read manifest: {exc}", manifest_path)
    m, n_sets, n_points = int(manifest["m"]), int(manifest["L"]), int(manifest["N"])
    ref = np.full(m, float(manifest["reference_factor"]))

    def load_one(i: int) -> TrainingSet:
        set_path = os.path.join(corpus_dir, f"set_{i:04d}.csv")
        hvc_path = os.path.join(corpus_dir, f"set_{i:04d}.hvc.csv")
        try:
            pts = read_solution_csv(set_path)
        except (OSError, ValueError) as exc:
            raise CorpusValidationError(f"bad solution file: {exc}", set_path)
        try:
            with open(hvc_path) as fh:
                hvc = np.asarray([float(line) for line in fh if line.strip()])
        except (OSError, ValueError) as exc:
            raise CorpusValidationError(f"bad contribution file: {exc}", hvc_path)
        if pts.shape != (n_points, m):
            raise CorpusValidationError(
                f"expected {n_points} x {m} solutions, found {pts.shape}", set_path
            )
        if hvc.shape != (n_points,) or not np.isfinite(hvc).all() or np.any(hvc <= 0):
            raise CorpusValidationError(
                "contribution cache must hold one finite positive value per solution",
                hvc_path,
            )
        entry = manifest["sets"][i]
        ts = TrainingSet(points=pts, hvc=hvc, ref=ref,
                         shape=entry.get("shape"), p=entry.get("p"),
                         seed=entry.get("seed"))
        if verify == "full":
            fresh = hvc_all(pts, ref)
            rel = np.abs(hvc - fresh) / np.maximum(np.abs(fresh), 1e-300)
            if np.any(rel > 1e-9):
                raise CorpusValidationError(
                    "cached contributions disagree with exact recomputation",
                    hvc_path,
                )
        return ts

    sets = parallel_map(load_one, range(n_sets), threads)
    return TrainingCorpus(sets=sets, manifest=manifest)


class _SetState:
    """Per-set training cache: pairwise differences, per-direction length
    powers, and their row sums."""

    __slots__ = ("points", "hvc", "ref", "diff", "powers", "row_sums", "m")

    def __init__(self, ts: TrainingSet, lam: np.ndarray):
        self.points = check_points(ts.points)
        self.hvc = np.asarray(ts.hvc, dtype=float)
        self.ref = np.asarray(ts.ref, dtype=float)
        self.m = self.points.shape[1]
        self.diff = pairwise_diff(self.points)
        n_dirs = lam.shape[0]
        self.powers = np.empty((len(self.points), n_dirs))
        for k in range(n_dirs):
            col = length_column(self.points, lam[k], self.ref, self.diff)
            self.powers[:, k] = col**self.m
        self.row_sums = self.powers.sum(axis=1)

    def new_column(self, lam_new: np.ndarray) -> np.ndarray:
        col = length_column(self.points, lam_new, self.ref, self.diff)
        return col**self.m

    def candidate_q(self, c_new: np.ndarray | None, n_dirs: int) -> np.ndarray:
        """Per-candidate correlation: dropping each held direction (columns
        0..n-1) or the proposal (last column).

        With ``c_new=None`` (initial objective, no proposal yet) the matrix
        is zero-padded to the same (N, n+1) shape, because per-column
        reduction trees depend on the matrix shape: the status-quo column
        must evaluate bit-identically here and in later iterations for the
        no-decrease guarantee to be exact.
        """
        if c_new is None:
            survivors = np.zeros_like(self.powers)
        else:
            survivors = (self.row_sums[:, None] - self.powers) + c_new[:, None]
        cols = np.column_stack([survivors, self.row_sums]) / n_dirs
        return _pearson_columns(self.hvc, cols)

    def commit(self, k: int, c_new: np.ndarray) -> None:
        # Same association as candidate_q's survivor expression, so the
        # recorded objective is reproduced exactly next iteration.
        self.row_sums = (self.row_sums - self.powers[:, k]) + c_new
        self.powers[:, k] = c_new


def learn_directions(corpus: TrainingCorpus, n_dirs: int, max_iteration: int,
                     rng, threads: int = 1) -> TrainingResult:
    """Steady-state direction-set training.

    Initializes with ``n_dirs`` random unit directions, then per iteration
    proposes one more, scores the objective with each of the n+1 directions
    left out (mean over the corpus of per-set Pearson correlations, cached
    row sums making each evaluation O(N)), and keeps the best n. Ties go to
    the lowest column index; the proposal occupies the highest index, so a
    tie with the status quo keeps the status quo. The recorded objective is
    non-decreasing, exactly.
    """
    if n_dirs < 2:
        raise ContractViolation(f"need n >= 2 directions, got {n_dirs}")
    if not corpus.sets:
        raise ContractViolation("corpus is empty")
    gen = as_rng(rng)
    seed = rng if isinstance(rng, int) else None
    m = corpus.m
    lam = unv_vectors(m, n_dirs, gen)
    states = [_SetState(ts, lam) for ts in corpus.sets]

    initial = parallel_map(
        lambda st: st.candidate_q(None, n_dirs), states, threads
    )
    history = np.empty((max_iteration + 1, 2))
    history[0] = (0, float(np.mean(np.stack(initial, axis=0), axis=0)[-1]))
    for it in range(1, max_iteration + 1):
        lam_new = unv_vectors(m, 1, gen)[0]

        def step(st: _SetState):
            col = st.new_column(lam_new)
            return col, st.candidate_q(col, n_dirs)

        results = parallel_map(step, states, threads)
        q_vec = np.mean(np.stack([q for _, q in results], axis=0), axis=0)
        best = int(np.argmax(q_vec))
        if best < n_dirs:
            for st, (col, _) in zip(states, results):
                st.commit(best, col)
            lam[best] = lam_new
        history[it] = (it, float(q_vec[best]))
    learned = DirectionSet(
        lam.copy(), "learned", seed,
        {"n": n_dirs, "max_iteration": max_iteration, "L": len(corpus.sets)},
    )
    config = {
        "n": n_dirs,
        "max_iteration": max_iteration,
        "seed": seed,
        "L": len(corpus.sets),
        "N": [ts.n_points for ts in corpus.sets],
        "m": m,
    }
    return TrainingResult(learned=learned, q_history=history, config=config)


def write_q_history(path, history: np.ndarray) -> None:
    lines = ["iteration,Q"]
    for it, q in history:
        lines.append(f"{int(it)},{repr(float(q))}")
    with open(path, "w") as fh:
        fh.write("\n".join(lines) + "\n")
