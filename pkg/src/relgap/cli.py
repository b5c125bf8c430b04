"""Command-line interface: stats, train, predict, baseline, eval.

All subcommands read and write plain files and are deterministic given
identical inputs, flags, and seed.  Exit codes: 0 success, 2 input or parse
error, 3 training error, 4 evaluation error.
"""

from __future__ import annotations

import functools
import logging
import sys
import time
from pathlib import Path

import click

from .candidates import (
    PROPHET_THRESHOLD,
    enumerate_candidates,
    prophet_baseline,
    rank_candidates,
    write_baseline_csv,
    write_candidates_csv,
    wv_baseline,
)
from .classifier import (
    load_model,
    read_training_pairs,
    save_model,
    train_svm,
)
from .embeddings import load_glove
from .errors import EvaluationError, RelgapError, TrainingError
from .evaluation import compare_report, load_judgments, precision, read_predictions
from .features import LabeledPair, extract_features, read_feature_csv
from .graphs import build_class_graph, build_instance_graph
from .ontology import load_ontology, resolve_class, summarize

DEFAULT_MAX_PAIRS = 1_000_000

_in_path = click.Path(exists=True, dir_okay=False)


def _fail(exc: BaseException, code: int) -> None:
    click.echo(f"error: {exc}", err=True)
    sys.exit(code)


def _cli_errors(fn):
    @functools.wraps(fn)
    def wrapper(*args, **kwargs):
        try:
            return fn(*args, **kwargs)
        except TrainingError as exc:
            _fail(exc, 3)
        except EvaluationError as exc:
            _fail(exc, 4)
        except (RelgapError, OSError) as exc:
            _fail(exc, 2)

    return wrapper


@click.group()
@click.option("--verbose", "-v", is_flag=True, help="Log informational messages.")
def main(verbose: bool) -> None:
    """Find relation-gaps in an ontology: class pairs that plausibly should
    be connected by an object property but are not."""
    logging.basicConfig(
        level=logging.INFO if verbose else logging.WARNING,
        format="%(levelname)s: %(message)s",
        stream=sys.stderr,
    )


@main.command()
@click.argument("ontology", type=_in_path)
@_cli_errors
def stats(ontology: str) -> None:
    """Print summary counts for an ontology file."""
    summary = summarize(load_ontology(ontology))
    headers = ("classes", "individuals", "object_properties", "op_without_domain_range")
    values = (
        summary.n_classes,
        summary.n_individuals,
        summary.n_object_properties,
        summary.n_op_without_domain_range,
    )
    click.echo("  ".join(headers))
    click.echo("  ".join(str(v).ljust(len(h)) for v, h in zip(values, headers)).rstrip())


@main.command()
@click.option("--pairs", type=_in_path, help="Training pairs CSV (class_x,class_y,label).")
@click.option("--ontology", type=_in_path, help="Background ontology for --pairs features.")
@click.option("--embeddings", type=_in_path, help="GloVe-format vectors for --pairs features.")
@click.option("--features", "features_csv", type=_in_path, help="Precomputed feature-dump CSV.")
@click.option("-C", "--c", "c", type=float, default=1.0, show_default=True, help="Soft-margin C.")
@click.option("--seed", type=int, default=0, show_default=True, help="Training shuffle seed.")
@click.option("--output", "-o", required=True, type=click.Path(dir_okay=False), help="Model file to write.")
@_cli_errors
def train(pairs, ontology, embeddings, features_csv, c, seed, output) -> None:
    """Train the SVM from a pairs CSV plus background data, or a feature dump."""
    if (pairs is None) == (features_csv is None):
        raise click.UsageError("pass exactly one of --pairs or --features")
    if features_csv is not None:
        rows = read_feature_csv(features_csv)
    else:
        if ontology is None or embeddings is None:
            raise click.UsageError("--pairs needs --ontology and --embeddings")
        onto = load_ontology(ontology)
        graph = build_class_graph(onto)
        store = load_glove(embeddings)
        labels = onto.class_labels()
        rows = []
        for x, y, label in read_training_pairs(pairs):
            rx, ry = resolve_class(onto, x), resolve_class(onto, y)
            rows.append(LabeledPair(rx, ry, extract_features(graph, store, labels, rx, ry), label))
    positive = sum(1 for r in rows if r.label == 1)
    negative = sum(1 for r in rows if r.label == 0)
    model = train_svm(rows, c=c, seed=seed)
    save_model(model, output)
    click.echo(f"training pairs: {len(rows)} (positive {positive}, negative {negative})")
    click.echo(f"objective: {model.objective!r}")
    click.echo(f"model written to {output}")


@main.command()
@click.option("--ontology", required=True, type=_in_path)
@click.option("--embeddings", required=True, type=_in_path)
@click.option("--model", "model_path", required=True, type=_in_path)
@click.option("--output", "-o", required=True, type=click.Path(dir_okay=False))
@click.option("--include-subclass", is_flag=True, help="Keep direct subclass pairs as candidates.")
@click.option("--max-pairs", type=int, default=DEFAULT_MAX_PAIRS, show_default=True, help="Refuse inputs with more class pairs than this.")
@click.option("--preload-report", is_flag=True, help="Also report elapsed time excluding the embedding-file load.")
@_cli_errors
def predict(ontology, embeddings, model_path, output, include_subclass, max_pairs, preload_report) -> None:
    """Rank candidate relation-gaps with a trained model."""
    t_start = time.perf_counter()
    store = load_glove(embeddings)
    t_loaded = time.perf_counter()
    onto = load_ontology(ontology)
    graph = build_class_graph(onto)
    model = load_model(model_path)
    candidate_pairs = enumerate_candidates(
        onto, graph, exclude_subclass=not include_subclass, max_pairs=max_pairs
    )
    ranked = rank_candidates(model, graph, store, onto.class_labels(), candidate_pairs)
    write_candidates_csv(output, ranked)
    t_end = time.perf_counter()
    click.echo(f"candidates: {len(candidate_pairs)}, predicted: {len(ranked)}")
    click.echo(f"elapsed_seconds: {t_end - t_start:.2f}")
    if preload_report:
        click.echo(
            f"elapsed_seconds_excluding_embedding_load: {t_end - t_loaded:.2f}"
        )


@main.command()
@click.argument("system", type=click.Choice(["prophet", "wv"]))
@click.option("--ontology", required=True, type=_in_path)
@click.option("--embeddings", type=_in_path, help="Required for the wv baseline.")
@click.option("--threshold", type=float, default=None, help=f"Score cutoff (strict); prophet default {PROPHET_THRESHOLD}, wv has no default.")
@click.option("--output", "-o", required=True, type=click.Path(dir_okay=False))
@click.option("--include-subclass", is_flag=True, help="Keep direct subclass pairs as candidates.")
@click.option("--max-pairs", type=int, default=DEFAULT_MAX_PAIRS, show_default=True)
@_cli_errors
def baseline(system, ontology, embeddings, threshold, output, include_subclass, max_pairs) -> None:
    """Run a comparison baseline (prophet or wv) over the candidate pairs."""
    t_start = time.perf_counter()
    onto = load_ontology(ontology)
    graph = build_class_graph(onto)
    candidate_pairs = enumerate_candidates(
        onto, graph, exclude_subclass=not include_subclass, max_pairs=max_pairs
    )
    if system == "prophet":
        cutoff = PROPHET_THRESHOLD if threshold is None else threshold
        scored = prophet_baseline(build_instance_graph(onto), onto, candidate_pairs, cutoff)
        rows = [(s.class_x, s.class_y, s.score) for s in scored]
    else:
        if embeddings is None:
            raise click.UsageError("the wv baseline needs --embeddings")
        if threshold is None:
            raise click.UsageError("the wv baseline needs an explicit --threshold")
        store = load_glove(embeddings)
        rows = wv_baseline(store, onto.class_labels(), candidate_pairs, threshold)
    write_baseline_csv(output, rows)
    click.echo(f"candidates: {len(candidate_pairs)}, produced: {len(rows)}")
    click.echo(f"elapsed_seconds: {time.perf_counter() - t_start:.2f}")


@main.command("eval")
@click.option("--judgments", required=True, type=_in_path)
@click.option("--predictions", "prediction_paths", required=True, multiple=True, type=_in_path, help="Prediction CSV; repeat for several systems.")
@click.option("--elapsed", "elapsed_values", multiple=True, type=float, help="Elapsed seconds per prediction file, in order.")
@click.option("--output", "-o", type=click.Path(dir_okay=False), help="Also write the table to a file.")
@_cli_errors
def eval_cmd(judgments, prediction_paths, elapsed_values, output) -> None:
    """Compute precision per prediction file and print a comparison table."""
    if elapsed_values and len(elapsed_values) != len(prediction_paths):
        raise click.UsageError("--elapsed must be given once per --predictions")
    judgment_set = load_judgments(judgments)
    reports = []
    for k, path in enumerate(prediction_paths):
        elapsed = elapsed_values[k] if elapsed_values else None
        reports.append(
            precision(read_predictions(path), judgment_set, Path(path).stem, elapsed)
        )
    table = compare_report(reports)
    click.echo(table, nl=False)
    if output:
        with open(output, "w", encoding="utf-8") as fh:
            fh.write(table)


if __name__ == "__main__":
    main()
