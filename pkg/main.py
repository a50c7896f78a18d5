"""
Main entry point for the referential transparency translation checker.

This script provides a command-line interface to run the detection
pipeline over a parsed corpus, sweep thresholds, evaluate labelled
reports, and run fault-injection experiments.
"""

import sys
from pathlib import Path
from typing import List, Optional

import click

from src import __version__
from src.core.config import Config
from src.core.exceptions import TransparencyCheckError, ValidationError
from src.core.models import FaultKind
from src.core.pipeline import DetectionPipeline, load_corpus
from src.nlp.synthetic import build_dictionary, generate_corpus, write_corpus, write_dictionary
from src.reports.evaluation import (
    category_tally, load_labels, precision, threshold_sweep, unique_erroneous_translations, validate_labels
)
from src.reports.generators import JSONReportGenerator, TableReportGenerator, render_summary
from src.reports.simulation import SIDES, run_fault_injection
from src.translation.mock import load_dictionary
from src.utils.logger import get_logger, logger_setup

logger = get_logger("main")

EXIT_CLEAN = 0
EXIT_ISSUES = 1
EXIT_ERROR = 2

BACKENDS = click.Choice(["replay", "rest", "mock"])


def _load_config(config_path: Optional[str], **overrides) -> Config:
    cfg = Config(config_path).apply_overrides(**overrides)
    logger_setup.configure(cfg.logging)
    return cfg


def parse_d_values(value: str) -> List[int]:
    """``0..5`` (inclusive range) or a comma list such as ``0,1,3``."""
    try:
        if ".." in value:
            low, high = value.split("..", 1)
            values = list(range(int(low), int(high) + 1))
        else:
            values = [int(part) for part in value.split(",") if part.strip()]
    except ValueError:
        raise ValidationError(f"Cannot parse d values from {value!r}")
    if not values or any(v < 0 for v in values):
        raise ValidationError(f"d values must be a non-empty list of non-negative integers: {value!r}")
    return values


def _fail(error: Exception):
    logger.error(f"{type(error).__name__}: {error}")
    sys.exit(EXIT_ERROR)


@click.group()
@click.version_option(version=__version__)
def cli():
    """Referential transparency translation checker - Command Line Interface"""
    pass


@cli.command()
@click.option("--config", "config_path", default=None, help="Path to the settings YAML file")
@click.option("--corpus", "corpus_path", required=True, help="JSONL corpus of {id, text, tree}")
@click.option("--out", "out_path", required=True, help="Where to write the JSON report")
@click.option("--threshold", type=int, default=None, help="Distance threshold d")
@click.option("--backend", type=BACKENDS, default=None, help="Translation backend")
@click.option("--replay-only", is_flag=True, default=None, help="Serve from the cache only")
def run(config_path, corpus_path, out_path, threshold, backend, replay_only):
    """Extract RTIs, translate pairs, and report suspicious issues."""
    try:
        cfg = _load_config(config_path, threshold=threshold, backend=backend, replay_only=replay_only)
        corpus = load_corpus(corpus_path)
        report = DetectionPipeline.from_config(cfg).run(corpus)
        JSONReportGenerator().generate(report, out_path)
    except TransparencyCheckError as e:
        _fail(e)

    click.echo(render_summary(report), err=True)
    sys.exit(EXIT_ISSUES if report.issues else EXIT_CLEAN)


@cli.command()
@click.option("--config", "config_path", default=None, help="Path to the settings YAML file")
@click.option("--corpus", "corpus_path", required=True, help="JSONL corpus of {id, text, tree}")
@click.option("--d", "d_spec", default="0..5", show_default=True, help="Thresholds: 0..5 or 0,1,2")
@click.option("--labels", "labels_path", default=None, help="Optional labels JSON for precision columns")
@click.option("--out", "out_path", default="reports/sweep", show_default=True,
              help="Output base path (.csv and .json are written)")
@click.option("--backend", type=BACKENDS, default=None, help="Translation backend")
@click.option("--replay-only", is_flag=True, default=None, help="Serve from the cache only")
def sweep(config_path, corpus_path, d_spec, labels_path, out_path, backend, replay_only):
    """Count suspicious issues (and precision) across thresholds."""
    try:
        cfg = _load_config(config_path, backend=backend, replay_only=replay_only)
        d_values = parse_d_values(d_spec)
        labels = load_labels(labels_path) if labels_path else None
        pipeline = DetectionPipeline.from_config(cfg)
        translated = pipeline.translate_corpus(load_corpus(corpus_path))
        rows = threshold_sweep(translated, d_values, pipeline.mode, labels)
        TableReportGenerator().generate(
            [row.to_dict() for row in rows], out_path,
            columns=["d", "suspicious_count", "erroneous_count", "precision"]
        )
    except TransparencyCheckError as e:
        _fail(e)

    for row in rows:
        line = f"d={row.d}: {row.suspicious_count} suspicious"
        if row.erroneous_count is not None:
            shown = f"{row.precision:.4f}" if row.precision is not None else "n/a"
            line += f", {row.erroneous_count} erroneous, precision {shown}"
        click.echo(line, err=True)


@cli.command(name="eval")
@click.option("--report", "report_path", required=True, help="JSON report written by `run`")
@click.option("--labels", "labels_path", required=True, help="Labels JSON keyed by issue id")
@click.option("--out", "out_path", default=None, help="Optional base path for the category tally table")
def evaluate(report_path, labels_path, out_path):
    """Precision, unique erroneous translations and category tally for a labelled report."""
    try:
        report = JSONReportGenerator.load(report_path)
        labels = load_labels(labels_path)
        validate_labels(labels, [issue.issue_id for issue in report.issues])
        result = precision(labels, report.issues)
        unique = unique_erroneous_translations(labels, report.issues)
        tally = category_tally(labels)
        if out_path:
            TableReportGenerator().generate(
                [{"category": category.value, "count": count} for category, count in tally.items()],
                out_path
            )
    except TransparencyCheckError as e:
        _fail(e)

    click.echo(f"Precision: {result.true_count}/{result.total_count} = {result.precision:.4f}", err=True)
    click.echo(f"Unique erroneous translations: {unique.count}", err=True)
    for category, count in tally.items():
        click.echo(f"  {category.value}: {count}", err=True)


@cli.command()
@click.option("--config", "config_path", default=None, help="Path to the settings YAML file")
@click.option("--corpus", "corpus_path", required=True, help="JSONL corpus of {id, text, tree}")
@click.option("--dictionary", "dictionary_path", default=None, help="Mock dictionary (defaults to config)")
@click.option("--trials", type=int, default=100, show_default=True, help="Injections per kind and side")
@click.option("--d", "d", type=int, default=0, show_default=True, help="Distance threshold")
@click.option("--seed", type=int, default=0, show_default=True)
@click.option("--out", "out_path", default="reports/simulation", show_default=True)
def simulate(config_path, corpus_path, dictionary_path, trials, d, seed, out_path):
    """Measure detection recall of injected faults with the mock translator."""
    try:
        cfg = _load_config(config_path)
        dictionary = load_dictionary(dictionary_path or cfg.translation.mock.dictionary_path)
        rows = run_fault_injection(
            load_corpus(corpus_path), dictionary, cfg.filter_config(), cfg.tokenization_mode(),
            kinds=list(FaultKind), sides=SIDES, trials=trials, d=d, seed=seed
        )
        TableReportGenerator().generate([row.to_dict() for row in rows], out_path)
    except TransparencyCheckError as e:
        _fail(e)

    for row in rows:
        click.echo(f"{row.kind.value:<18} {row.side:<9} {row.detected}/{row.injected} ({row.recall:.2%})", err=True)


@cli.command(name="make-corpus")
@click.option("--sentences", type=int, default=200, show_default=True)
@click.option("--seed", type=int, default=0, show_default=True)
@click.option("--out-dir", default="data/synthetic", show_default=True)
def make_corpus(sentences, seed, out_dir):
    """Write a synthetic parsed corpus and its mock dictionary."""
    corpus_path = Path(out_dir) / f"corpus_{sentences}_{seed}.jsonl"
    dictionary_path = Path(out_dir) / "dictionary.json"
    try:
        write_corpus(generate_corpus(sentences, seed), str(corpus_path))
        write_dictionary(build_dictionary(), str(dictionary_path))
    except OSError as e:
        _fail(e)
    logger.info(f"Wrote {sentences} sentences to {corpus_path} and dictionary to {dictionary_path}")


@cli.command(name="check-config")
@click.option("--config", "config_path", default=None, help="Path to the settings YAML file")
def check_config(config_path):
    """Check and validate configuration."""
    logger.info("Checking configuration...")
    try:
        cfg = _load_config(config_path)
        cfg.filter_config()
    except TransparencyCheckError as e:
        _fail(e)

    problems = cfg.missing_paths()
    for path in problems:
        logger.warning(f"Missing file: {path}")

    if not Path(cfg.translation.cache_path).exists():
        logger.warning(f"Replay cache {cfg.translation.cache_path} does not exist yet; it will be created")

    if cfg.translation.backend == "rest":
        if not cfg.translation.rest.url_template:
            problems.append("translation.rest.url_template")
            logger.warning("REST backend selected but translation.rest.url_template is empty")
        if not cfg.translation.rest.api_key():
            logger.warning(f"No API key found. Please set {cfg.translation.rest.api_key_env}")

    if problems:
        sys.exit(EXIT_ERROR)
    logger.info("Configuration check completed!")


if __name__ == "__main__":
    cli()
