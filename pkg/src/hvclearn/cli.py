"""Command-line frontend.

Subcommands: gen-dirs, gen-corpus, train, eval-cir, gahss, hv, hvc, plot.
All randomized commands either take an explicit --seed or record the one
they generated in their output. Exit codes: 0 success, 2 usage error,
3 file/validation error, 4 numeric or contract error.

JSON artifacts embed the tool version and the fully resolved command
configuration; CSV artifacts keep the plain declared column formats and are
always written alongside a JSON file that carries the provenance.
"""

from __future__ import annotations

import functools
import json
import os
import sys

import click
import numpy as np

from . import __version__
from .errors import ContractViolation, CorpusValidationError, SamplingError
from .directions import GENERATORS, DirectionSet, generate
from .evaluation import cir, gahss, make_cir_suite, rank_methods
from .hypervolume import hvc_all, hypervolume
from .objective_space import (
    FRONT_SHAPES,
    FrontSpec,
    read_solution_csv,
    reference_from_factor,
    write_solution_csv,
)
from .training import (
    generate_corpus,
    load_corpus,
    learn_directions,
    save_corpus,
    write_q_history,
)

EXIT_USAGE = 2
EXIT_VALIDATION = 3
EXIT_NUMERIC = 4


def _fail(code: int, message: str):
    click.echo(f"error: {message}", err=True)
    sys.exit(code)


def mapped_errors(fn):
    """Translate library exceptions into the documented exit codes."""

    @functools.wraps(fn)
    def wrapper(*args, **kwargs):
        try:
            return fn(*args, **kwargs)
        except CorpusValidationError as exc:
            _fail(EXIT_VALIDATION, f"{exc}" + (f" [{exc.path}]" if exc.path else ""))
        except (ContractViolation, SamplingError) as exc:
            _fail(EXIT_NUMERIC, str(exc))
        except OSError as exc:
            _fail(EXIT_VALIDATION, str(exc))

    return wrapper


def _resolve_seed(seed: int | None) -> int:
    if seed is not None:
        return seed
    return int.from_bytes(os.urandom(4), "little")


def _parse_ref(text: str) -> np.ndarray:
    try:
        return np.asarray([float(tok) for tok in text.split(",")])
    except ValueError:
        raise click.UsageError(f"cannot parse reference point {text!r}")


def _write_json(path, doc: dict):
    with open(path, "w") as fh:
        json.dump(doc, fh, indent=2, sort_keys=True)
        fh.write("\n")


@click.group()
@click.version_option(version=__version__)
def main():
    """Hypervolume contributions, line-based approximation, and learned
    direction vector sets."""


@main.command("gen-dirs")
@click.option("--method", required=True, type=click.Choice(GENERATORS))
@click.option("--m", "m", required=True, type=int)
@click.option("--n", "n", type=int, default=None, help="Set size (all methods but das).")
@click.option("--H", "h", type=int, default=None, help="Lattice parameter (das, mss-d base).")
@click.option("--pool", type=int, default=None, help="Base pool size (mss-u, kmeans-u).")
@click.option("--seed", type=int, default=None)
@click.option("--out", required=True, type=click.Path(dir_okay=False))
@mapped_errors
def cmd_gen_dirs(method, m, n, h, pool, seed, out):
    """Generate a direction vector set and write it as JSON."""
    if m < 2:
        raise click.UsageError("need --m >= 2")
    if method == "das":
        if h is None or h < 1:
            raise click.UsageError("das needs --H >= 1")
    elif n is None or n < 1:
        raise click.UsageError(f"{method} needs --n >= 1")
    randomized = method in ("unv", "jas", "mss-u", "kmeans-u")
    seed = _resolve_seed(seed) if randomized else seed
    ds = generate(method, m, n=n, h=h, pool=pool, rng=seed)
    config = {"command": "gen-dirs", "method": method, "m": m, "n": n, "H": h,
              "pool": pool, "seed": seed}
    ds.save(out, extra={"tool_version": __version__, "config": config})
    click.echo(f"wrote {ds.n} direction vectors to {out}")


@main.command("gen-corpus")
@click.option("--m", "m", required=True, type=int)
@click.option("--L", "n_sets", required=True, type=int)
@click.option("--N", "n_points", required=True, type=int)
@click.option("--seed", type=int, default=None)
@click.option("--ref-factor", type=float, default=1.2, show_default=True)
@click.option("--out-dir", required=True, type=click.Path(file_okay=False))
@click.option("--threads", type=int, default=None)
@mapped_errors
def cmd_gen_corpus(m, n_sets, n_points, seed, ref_factor, out_dir, threads):
    """Sample a training corpus with cached exact contributions."""
    if m < 2 or n_sets < 1 or n_points < 2:
        raise click.UsageError("need --m >= 2, --L >= 1, --N >= 2")
    seed = _resolve_seed(seed)
    corpus = generate_corpus(m, n_sets, n_points, seed,
                             reference_factor=ref_factor, threads=threads or 1)
    corpus.manifest["tool_version"] = __version__
    corpus.manifest["config"] = {
        "command": "gen-corpus", "m": m, "L": n_sets, "N": n_points,
        "seed": seed, "ref_factor": ref_factor,
    }
    save_corpus(corpus, out_dir)
    click.echo(f"wrote corpus of {n_sets} sets to {out_dir}")


@main.command("train")
@click.option("--corpus-dir", required=True, type=click.Path(exists=True, file_okay=False))
@click.option("--n", "n_dirs", required=True, type=int)
@click.option("--max-iteration", required=True, type=int)
@click.option("--seed", type=int, default=None)
@click.option("--out", required=True, type=click.Path(dir_okay=False))
@click.option("--q-history", "q_history_path", type=click.Path(dir_okay=False),
              default=None, help="Defaults to <out stem>.q_history.csv")
@click.option("--verify/--no-verify", default=True, show_default=True,
              help="Recompute cached contributions on load.")
@click.option("--threads", type=int, default=None)
@mapped_errors
def cmd_train(corpus_dir, n_dirs, max_iteration, seed, out, q_history_path,
              verify, threads):
    """Learn a direction vector set from a corpus directory."""
    if n_dirs < 2 or max_iteration < 0:
        raise click.UsageError("need --n >= 2 and --max-iteration >= 0")
    seed = _resolve_seed(seed)
    corpus = load_corpus(corpus_dir, verify="full" if verify else "structural",
                         threads=threads or 1)
    result = learn_directions(corpus, n_dirs, max_iteration, seed, threads=threads or 1)
    config = {"command": "train", "corpus_dir": str(corpus_dir), "n": n_dirs,
              "max_iteration": max_iteration, "seed": seed,
              "corpus_seed": corpus.manifest.get("seed")}
    result.learned.save(out, extra={"tool_version": __version__, "config": config})
    if q_history_path is None:
        stem, _ = os.path.splitext(out)
        q_history_path = stem + ".q_history.csv"
    write_q_history(q_history_path, result.q_history)
    final_q = float(result.q_history[-1, 1])
    click.echo(f"wrote learned set to {out} (final Q = {final_q!r})")


def _load_direction_file(path) -> DirectionSet:
    try:
        return DirectionSet.load(path)
    except (ContractViolation, json.JSONDecodeError, OSError) as exc:
        raise CorpusValidationError(f"bad direction file: {exc}", str(path))


def _load_solution_file(path) -> np.ndarray:
    try:
        return read_solution_csv(path)
    except ContractViolation as exc:
        raise CorpusValidationError(f"bad solution file: {exc}", str(path))


@main.command("eval-cir")
@click.option("--dirs", "dir_paths", multiple=True,
              type=click.Path(exists=True, dir_okay=False),
              help="Direction-set JSON file; repeat to compare methods.")
@click.option("--m", "m", required=True, type=int)
@click.option("--M", "n_sets", type=int, default=100, show_default=True)
@click.option("--N", "n_points", type=int, default=100, show_default=True)
@click.option("--shape", type=click.Choice(FRONT_SHAPES), default="triangular",
              show_default=True)
@click.option("--p", "p", type=float, default=1.0, show_default=True)
@click.option("--ref-factor", type=float, default=1.2, show_default=True)
@click.option("--seed", type=int, default=None)
@click.option("--self-check", is_flag=True,
              help="Also score the exact indicator against itself (CIR 1).")
@click.option("--out", required=True, type=click.Path(dir_okay=False))
@click.option("--csv", "csv_path", type=click.Path(dir_okay=False), default=None)
@click.option("--threads", type=int, default=None)
@mapped_errors
def cmd_eval_cir(dir_paths, m, n_sets, n_points, shape, p, ref_factor, seed,
                 self_check, out, csv_path, threads):
    """Correct identification rate of direction sets on a sampled test suite."""
    if not dir_paths and not self_check:
        raise click.UsageError("give at least one --dirs file or --self-check")
    seed = _resolve_seed(seed)
    spec = FrontSpec(shape, p, m)
    suite = make_cir_suite(spec, n_sets, n_points, seed, reference_factor=ref_factor)
    suite_desc = {"shape": shape, "p": p, "m": m, "M": n_sets, "N": n_points,
                  "ref_factor": ref_factor, "seed": seed}
    methods = {}
    for path in dir_paths:
        ds = _load_direction_file(path)
        if ds.m != m:
            raise CorpusValidationError(
                f"direction file has m={ds.m}, suite has m={m}", str(path))
        name = f"{ds.generator}:{os.path.basename(path)}"
        report = cir(ds, suite, threads=threads or 1)
        report.suite = suite_desc
        methods[name] = report
    if self_check:
        report = cir(None, suite, indicator="exact", threads=threads or 1)
        report.suite = suite_desc
        methods["exact:self-check"] = report
    doc = {
        "tool_version": __version__,
        "config": {"command": "eval-cir", **suite_desc,
                   "dirs": [str(x) for x in dir_paths], "self_check": self_check},
        "methods": {name: rep.to_dict() for name, rep in methods.items()},
    }
    if len(methods) >= 2:
        ranking = rank_methods({name: [rep.cir] for name, rep in methods.items()},
                               higher_is_better=True)
        doc["average_rank"] = ranking["average_rank"]
    _write_json(out, doc)
    if csv_path:
        instance = f"{shape}-p{p}-m{m}"
        lines = ["method,instance,cir,rank"]
        if len(methods) >= 2:
            ranks = {name: doc["average_rank"][name] for name in methods}
        else:
            ranks = {name: 1.0 for name in methods}
        for name, rep in methods.items():
            lines.append(f"{name},{instance},{rep.cir!r},{ranks[name]!r}")
        with open(csv_path, "w") as fh:
            fh.write("\n".join(lines) + "\n")
    for name, rep in methods.items():
        click.echo(f"{name}: CIR = {rep.cir!r}")


@main.command("gahss")
@click.option("--candidates", "candidates_path", required=True,
              type=click.Path(exists=True, dir_okay=False))
@click.option("--k", "k", required=True, type=int)
@click.option("--dirs", "dirs_path", required=True,
              type=click.Path(exists=True, dir_okay=False))
@click.option("--ref", "ref_text", default=None,
              help="Explicit reference point 'r1,r2,...'; overrides --ref-factor.")
@click.option("--ref-factor", type=float, default=1.2, show_default=True)
@click.option("--out", required=True, type=click.Path(dir_okay=False))
@click.option("--subset-out", type=click.Path(dir_okay=False), default=None)
@click.option("--threads", type=int, default=None)
@mapped_errors
def cmd_gahss(candidates_path, k, dirs_path, ref_text, ref_factor, out,
              subset_out, threads):
    """Greedy approximated hypervolume subset selection."""
    if k < 1:
        raise click.UsageError("need --k >= 1")
    candidates = _load_solution_file(candidates_path)
    ds = _load_direction_file(dirs_path)
    if ds.m != candidates.shape[1]:
        raise CorpusValidationError(
            f"direction file has m={ds.m}, candidates have m={candidates.shape[1]}",
            str(dirs_path))
    ref = _parse_ref(ref_text) if ref_text else reference_from_factor(candidates, ref_factor)
    report = gahss(candidates, k, ds, ref, threads=threads or 1)
    doc = {
        "tool_version": __version__,
        "config": {"command": "gahss", "candidates": str(candidates_path),
                   "k": k, "dirs": str(dirs_path),
                   "ref": [float(v) for v in ref], "ref_factor": ref_factor},
        "report": report.to_dict(),
    }
    _write_json(out, doc)
    if subset_out:
        write_solution_csv(subset_out, candidates[report.selected])
    click.echo(f"selected {k} of {len(candidates)}; exact hypervolume = "
               f"{report.hypervolume!r}")


@main.command("hv")
@click.option("--set", "set_path", required=True,
              type=click.Path(exists=True, dir_okay=False))
@click.option("--ref", "ref_text", required=True)
@mapped_errors
def cmd_hv(set_path, ref_text):
    """Exact hypervolume of a solution-set CSV."""
    points = _load_solution_file(set_path)
    value = hypervolume(points, _parse_ref(ref_text))
    click.echo(repr(value))


@main.command("hvc")
@click.option("--set", "set_path", required=True,
              type=click.Path(exists=True, dir_okay=False))
@click.option("--ref", "ref_text", required=True)
@click.option("--index", type=int, default=None,
              help="Single solution index; default prints all contributions.")
@click.option("--threads", type=int, default=None)
@mapped_errors
def cmd_hvc(set_path, ref_text, index, threads):
    """Exact hypervolume contributions of a solution-set CSV."""
    points = _load_solution_file(set_path)
    values = hvc_all(points, _parse_ref(ref_text), threads=threads or 1)
    if index is not None:
        if not 0 <= index < len(values):
            raise click.UsageError(f"--index {index} out of range")
        click.echo(repr(float(values[index])))
    else:
        for v in values:
            click.echo(repr(float(v)))


@main.command("plot")
@click.option("--q-history", "q_history_path",
              type=click.Path(exists=True, dir_okay=False), default=None)
@click.option("--cir-report", "cir_report_path",
              type=click.Path(exists=True, dir_okay=False), default=None)
@click.option("--out", required=True, type=click.Path(dir_okay=False))
@mapped_errors
def cmd_plot(q_history_path, cir_report_path, out):
    """Render a q-history curve or a CIR bar summary to SVG."""
    if (q_history_path is None) == (cir_report_path is None):
        raise click.UsageError("give exactly one of --q-history or --cir-report")
    import matplotlib

    matplotlib.use("Agg")
    import matplotlib.pyplot as plt

    fig, ax = plt.subplots(figsize=(6, 4))
    if q_history_path:
        rows = np.loadtxt(q_history_path, delimiter=",", skiprows=1, ndmin=2)
        ax.plot(rows[:, 0], rows[:, 1])
        ax.set_xlabel("iteration")
        ax.set_ylabel("Q")
        ax.set_title("learning curve")
    else:
        with open(cir_report_path) as fh:
            doc = json.load(fh)
        names = list(doc["methods"].keys())
        values = [doc["methods"][name]["cir"] for name in names]
        ax.bar(range(len(names)), values)
        ax.set_xticks(range(len(names)))
        ax.set_xticklabels(names, rotation=30, ha="right", fontsize=8)
        ax.set_ylabel("CIR")
        ax.set_ylim(0, 1)
        ax.set_title("correct identification rate")
    fig.tight_layout()
    fig.savefig(out, format="svg", metadata={"Date": None})
    plt.close(fig)
    click.echo(f"wrote {out}")


if __name__ == "__main__":
    main()
