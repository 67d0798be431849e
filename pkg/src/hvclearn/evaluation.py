"""Downstream evaluation of direction vector sets.

Two experiments: the correct identification rate (does the approximated
least contributor match the exact one?) and greedy approximated hypervolume
subset selection (how much exact hypervolume does a greedily selected subset
capture?), plus the rank-sum test and fractional-rank aggregation used to
compare methods.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np
from scipy.stats import rankdata

from .errors import ContractViolation
from .directions import DirectionSet
from .hypervolume import hvc_all, hypervolume
from .objective_space import (
    FrontSpec,
    as_rng,
    check_reference,
    check_solution_set,
    sample_front,
)
from .r2hvc import _ratio_max, _ratio_min_abs, build_length_matrix
from ._parallel import parallel_map


@dataclass
class CirReport:
    """Correct-identification-rate result for one direction set on a suite
    of test sets."""

    cir: float
    correct: list[bool]
    n_sets: int
    indicator: str
    provenance: dict = field(default_factory=dict)
    suite: dict = field(default_factory=dict)

    def to_dict(self) -> dict:
        return {
            "cir": self.cir,
            "correct": [bool(b) for b in self.correct],
            "n_sets": self.n_sets,
            "indicator": self.indicator,
            "provenance": self.provenance,
            "suite": self.suite,
        }


@dataclass
class GahssReport:
    """Greedy subset-selection result: selection order and the exact
    hypervolume of the selected subset."""

    selected: list[int]
    hypervolume: float
    n_candidates: int
    provenance: dict = field(default_factory=dict)
    trace: list | None = None  # per-step score arrays, testing hook only

    def to_dict(self) -> dict:
        return {
            "selected": [int(i) for i in self.selected],
            "hypervolume": self.hypervolume,
            "n_candidates": self.n_candidates,
            "k": len(self.selected),
            "provenance": self.provenance,
        }


def make_cir_suite(spec: FrontSpec, n_sets: int, n_points: int, rng,
                   reference_factor: float = 1.2) -> list[tuple[np.ndarray, np.ndarray]]:
    """Sample ``n_sets`` test sets on one front with a shared constant
    reference point (valid: fronts live in the unit box)."""
    gen = as_rng(rng)
    seeds = [int(s) for s in gen.integers(0, 2**31 - 1, size=n_sets)]
    ref = np.full(spec.m, float(reference_factor))
    return [(sample_front(spec, n_points, s), ref) for s in seeds]


def cir(directions: DirectionSet | None, tests, indicator: str = "r2hvc",
        threads: int = 1) -> CirReport:
    """Correct identification rate over ``tests`` (pairs of solution set and
    reference point).

    A test set counts as correct when the approximated least contributor
    (lowest index on ties) lies in the tie-set of exact least contributors.
    ``indicator="exact"`` substitutes the exact contributions for the
    approximation (self-check mode; the result is 1.0 by construction).
    """
    if indicator not in ("r2hvc", "exact"):
        raise ContractViolation(f"unknown indicator {indicator!r}")
    if indicator == "r2hvc" and (directions is None or directions.n == 0):
        raise ContractViolation("r2hvc indicator needs a non-empty direction set")

    def one(test) -> bool:
        points, ref = test
        exact = hvc_all(points, ref)
        if indicator == "exact":
            approx = exact
        else:
            lm = build_length_matrix(points, directions, ref)
            approx = lm.r2hvc_values()
        tie_set = np.flatnonzero(exact == exact.min())
        return int(np.argmin(approx)) in tie_set

    correct = parallel_map(one, list(tests), threads)
    return CirReport(
        cir=float(np.mean(correct)),
        correct=list(correct),
        n_sets=len(correct),
        indicator=indicator,
        provenance=(
            {"generator": directions.generator, "seed": directions.seed,
             "n": directions.n}
            if directions is not None else {}
        ),
    )


def _g_mtch_matrix(points: np.ndarray, lam: np.ndarray, ref: np.ndarray) -> np.ndarray:
    """(N, K) reference-box lengths for every point and direction."""
    diff = points - ref  # (N, m)
    return _ratio_min_abs(diff[:, None, :], lam[None, :, :])


def _g2tch_matrix(points: np.ndarray, member: np.ndarray, lam: np.ndarray,
                  chunk: int = 2048) -> np.ndarray:
    """(N, K) truncation lengths of ``member`` against every point."""
    n = len(points)
    out = np.empty((n, lam.shape[0]))
    for start in range(0, n, chunk):
        stop = min(start + chunk, n)
        diff = member[None, :] - points[start:stop]  # (c, m)
        out[start:stop] = _ratio_max(diff[:, None, :], lam[None, :, :])
    return out


def gahss(candidates, k: int, directions: DirectionSet, ref,
          threads: int = 1, return_trace: bool = False) -> GahssReport:
    """Greedy approximated hypervolume subset selection.

    Starting from an empty subset, each step adds the candidate whose
    approximated contribution to the current subset is largest (lowest index
    on ties). Contributions are maintained as per-candidate running minima
    over directions: adding a member only tightens each remaining
    candidate's per-direction length, an O(N K m) update. Returns the
    selection order and the exact hypervolume of the selected subset.
    """
    pts = check_solution_set(candidates)
    r = check_reference(pts, ref)
    if directions.n == 0:
        raise ContractViolation("direction set is empty")
    if directions.m != pts.shape[1]:
        raise ContractViolation("candidates and directions disagree on m")
    if k > len(pts):
        raise ContractViolation(f"cannot select {k} from {len(pts)} candidates")
    lam = directions.vectors
    m = pts.shape[1]
    lengths = _g_mtch_matrix(pts, lam, r)  # running minima, (N, K)
    remaining = np.ones(len(pts), dtype=bool)
    selected: list[int] = []
    trace: list[np.ndarray] = []
    for step in range(k):
        scores = np.mean(lengths**m, axis=1)
        if return_trace:
            trace.append(np.where(remaining, scores, np.nan))
        scores[~remaining] = -np.inf
        pick = int(np.argmax(scores))
        selected.append(pick)
        remaining[pick] = False
        if step + 1 < k:
            np.minimum(lengths, _g2tch_matrix(pts, pts[pick], lam), out=lengths)
    hv = hypervolume(pts[selected], r)
    return GahssReport(
        selected=selected,
        hypervolume=hv,
        n_candidates=len(pts),
        provenance={"generator": directions.generator, "seed": directions.seed,
                    "n": directions.n},
        trace=trace if return_trace else None,
    )


def wilcoxon_rank_sum(x, y) -> tuple[float, float]:
    """Two-sided rank-sum test via the normal approximation with tie
    correction and continuity correction.

    Returns the standardized statistic and the p-value. Samples that are
    identical across both groups degenerate to (0.0, 1.0).
    """
    x = np.asarray(x, dtype=float)
    y = np.asarray(y, dtype=float)
    if len(x) < 5 or len(y) < 5:
        raise ContractViolation("rank-sum test needs at least 5 values per sample")
    n1, n2 = len(x), len(y)
    n = n1 + n2
    combined = np.concatenate([x, y])
    ranks = rankdata(combined)
    w = float(ranks[:n1].sum())
    mean = n1 * (n + 1) / 2.0
    _, counts = np.unique(combined, return_counts=True)
    tie_term = float(((counts**3 - counts).sum()) / (n * (n - 1)))
    var = n1 * n2 / 12.0 * ((n + 1) - tie_term)
    if var <= 0:
        return 0.0, 1.0
    shift = w - mean
    correction = 0.5 * np.sign(shift)
    z = (shift - correction) / math.sqrt(var)
    p = min(1.0, math.erfc(abs(z) / math.sqrt(2.0)))
    return float(z), float(p)


def rank_methods(scores: dict, higher_is_better: bool = True) -> dict:
    """Fractional ranks per instance (1 = best, ties share the mean rank)
    and the average rank per method.

    ``scores`` maps method name to an equal-length sequence of per-instance
    scores. Returns {"methods", "ranks" (method -> list), "average_rank"}.
    """
    if len(scores) < 1:
        raise ContractViolation("ranking needs at least one method")
    methods = list(scores.keys())
    table = np.asarray([np.asarray(scores[name], dtype=float) for name in methods])
    if table.ndim != 2:
        raise ContractViolation("all methods need equally many instance scores")
    oriented = -table if higher_is_better else table
    ranks = np.column_stack(
        [rankdata(oriented[:, j], method="average") for j in range(table.shape[1])]
    )
    return {
        "methods": methods,
        "ranks": {name: [float(r) for r in ranks[i]] for i, name in enumerate(methods)},
        "average_rank": {
            name: float(ranks[i].mean()) for i, name in enumerate(methods)
        },
    }
