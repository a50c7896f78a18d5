"""
End-to-end tests for the command line.
"""

import json
import shutil
import sys
import time
from pathlib import Path
from typing import Optional

import pandas as pd
import pytest
from click.testing import CliRunner

# Add src to path for imports
sys.path.append(str(Path(__file__).parent.parent))

from main import EXIT_CLEAN, EXIT_ERROR, EXIT_ISSUES, cli, parse_d_values
from src.core.exceptions import ValidationError
from src.nlp.synthetic import build_dictionary
from src.reports.generators import run_log_path
from tests.helpers import BEIJING_ISSUE_ID, DATA_DIR, DEMO_CORPUS, DEMO_DICTIONARY, STOPWORDS_FILE

BEIJING_CORPUS = DATA_DIR / "corpora" / "beijing_replay.jsonl"
BEIJING_LABELS = DATA_DIR / "labels" / "beijing_labels.json"
FAULTS_EXAMPLE = DATA_DIR / "mock" / "faults_example.json"


def settings_yaml(cache_path: Path, dictionary_path: Path = DEMO_DICTIONARY, backend_id: str = "",
                  faults_path: Optional[Path] = None) -> str:
    backend_line = f"  backend_id: {backend_id}\n" if backend_id else ""
    faults_line = f"    faults_path: {faults_path}\n" if faults_path else ""
    return (
        "pipeline:\n"
        "  threshold: 2\n"
        "  max_in_flight: 4\n"
        "filter:\n"
        f"  stopwords_file: {STOPWORDS_FILE}\n"
        "translation:\n"
        "  backend: replay\n"
        f"{backend_line}"
        f"  cache_path: {cache_path}\n"
        "  mock:\n"
        f"    dictionary_path: {dictionary_path}\n"
        f"{faults_line}"
        "logging:\n"
        "  level: WARNING\n"
        "  file: null\n"
    )


@pytest.fixture
def runner():
    return CliRunner()


@pytest.fixture
def golden_config(tmp_path):
    # Work on a copy so runs never touch the shipped cache
    cache_path = tmp_path / "replay_cache.json"
    shutil.copy(DATA_DIR / "cache" / "replay_cache.json", cache_path)
    path = tmp_path / "settings.yaml"
    path.write_text(settings_yaml(cache_path), encoding="utf-8")
    return str(path)


@pytest.fixture
def mock_config(tmp_path):
    path = tmp_path / "mock_settings.yaml"
    path.write_text(settings_yaml(tmp_path / "mock_cache.json"), encoding="utf-8")
    return str(path)


class TestRunCommand:
    """Test cases for `run`."""

    @pytest.mark.parametrize("threshold", ["0", "1"])
    def test_golden_replay_reports_issue(self, runner, golden_config, tmp_path, threshold):
        out = tmp_path / "report.json"
        result = runner.invoke(cli, [
            "run", "--config", golden_config, "--corpus", str(BEIJING_CORPUS), "--out", str(out),
            "--threshold", threshold, "--replay-only"
        ])

        assert result.exit_code == EXIT_ISSUES
        report = json.loads(out.read_text(encoding="utf-8"))
        assert report["schema"] == 1
        assert report["config"]["threshold"] == int(threshold)
        assert [issue["issue_id"] for issue in report["issues"]] == [BEIJING_ISSUE_ID]
        assert report["issues"][0]["distance"] == 2
        assert report["issues"][0]["missing_tokens"] == ["亲", "切"]
        assert run_log_path(str(out)).exists()

    def test_golden_replay_suppressed_at_default_threshold(self, runner, golden_config, tmp_path):
        out = tmp_path / "report.json"
        result = runner.invoke(cli, [
            "run", "--config", golden_config, "--corpus", str(BEIJING_CORPUS), "--out", str(out)
        ])

        assert result.exit_code == EXIT_CLEAN
        assert json.loads(out.read_text(encoding="utf-8"))["issues"] == []

    def test_clean_mock_corpus(self, runner, mock_config, tmp_path):
        out = tmp_path / "report.json"
        result = runner.invoke(cli, [
            "run", "--config", mock_config, "--corpus", str(DEMO_CORPUS), "--out", str(out),
            "--threshold", "0", "--backend", "mock"
        ])

        assert result.exit_code == EXIT_CLEAN
        report = json.loads(out.read_text(encoding="utf-8"))
        assert report["issues"] == []
        assert report["summary"]["sentences"] == 4

    def test_changed_faults_are_not_served_from_warm_cache(self, runner, tmp_path):
        cache_path = tmp_path / "shared_cache.json"
        clean_config = tmp_path / "clean.yaml"
        clean_config.write_text(settings_yaml(cache_path), encoding="utf-8")
        faulty_config = tmp_path / "faulty.yaml"
        faulty_config.write_text(settings_yaml(cache_path, faults_path=FAULTS_EXAMPLE), encoding="utf-8")

        outputs = {}
        for name, config in (("clean", clean_config), ("faulty", faulty_config)):
            outputs[name] = tmp_path / f"{name}.json"
            result = runner.invoke(cli, [
                "run", "--config", str(config), "--corpus", str(DEMO_CORPUS), "--out", str(outputs[name]),
                "--threshold", "0", "--backend", "mock"
            ])
            assert result.exit_code == (EXIT_CLEAN if name == "clean" else EXIT_ISSUES)

        clean = json.loads(outputs["clean"].read_text(encoding="utf-8"))
        faulty = json.loads(outputs["faulty"].read_text(encoding="utf-8"))
        pair_ids = {issue["pair"]["pair_id"].split("#")[0] for issue in faulty["issues"]}

        assert pair_ids == {"demo-3", "demo-4"}
        assert clean["config"]["translation"]["backend_id"].startswith("mock-")
        assert clean["config"]["translation"]["backend_id"] != faulty["config"]["translation"]["backend_id"]

    def test_mock_entries_are_keyed_by_fingerprint(self, runner, golden_config, tmp_path):
        result = runner.invoke(cli, [
            "run", "--config", golden_config, "--corpus", str(DEMO_CORPUS), "--out", str(tmp_path / "r.json"),
            "--backend", "mock"
        ])
        assert result.exit_code == EXIT_CLEAN

        records = json.loads((tmp_path / "replay_cache.json").read_text(encoding="utf-8"))
        backends = {record["backend"] for record in records}
        report = json.loads((tmp_path / "r.json").read_text(encoding="utf-8"))

        assert sum(record["backend"] == "recorded" for record in records) == 2
        assert backends == {"recorded", report["config"]["translation"]["backend_id"]}

    def test_malformed_dictionary_is_an_error(self, runner, tmp_path):
        dictionary = tmp_path / "dictionary.json"
        dictionary.write_text("{not json", encoding="utf-8")
        config = tmp_path / "settings.yaml"
        config.write_text(settings_yaml(tmp_path / "cache.json", dictionary), encoding="utf-8")

        result = runner.invoke(cli, [
            "run", "--config", str(config), "--corpus", str(DEMO_CORPUS), "--out", str(tmp_path / "r.json"),
            "--backend", "mock"
        ])
        assert result.exit_code == EXIT_ERROR

    def test_unwritable_report_is_an_error(self, runner, mock_config, tmp_path):
        blocker = tmp_path / "blocker"
        blocker.write_text("", encoding="utf-8")

        result = runner.invoke(cli, [
            "run", "--config", mock_config, "--corpus", str(DEMO_CORPUS), "--out", str(blocker / "report.json"),
            "--backend", "mock"
        ])
        assert result.exit_code == EXIT_ERROR

    def test_yield_mismatch_is_an_error(self, runner, mock_config, tmp_path):
        corpus = tmp_path / "bad.jsonl"
        corpus.write_text(json.dumps({
            "id": "bad",
            "text": "The dog barked .",
            "tree": "(S (NP (DT The) (NN dog)) (VP (VBD ran)) (. .))",
        }) + "\n", encoding="utf-8")
        out = tmp_path / "report.json"

        result = runner.invoke(cli, [
            "run", "--config", mock_config, "--corpus", str(corpus), "--out", str(out), "--backend", "mock"
        ])

        assert result.exit_code == EXIT_ERROR
        assert not out.exists()

    def test_cache_miss_in_replay_mode(self, runner, mock_config, tmp_path):
        result = runner.invoke(cli, [
            "run", "--config", mock_config, "--corpus", str(DEMO_CORPUS), "--out", str(tmp_path / "r.json"),
            "--replay-only"
        ])
        assert result.exit_code == EXIT_ERROR

    def test_replay_is_deterministic_and_fast(self, runner, tmp_path):
        corpus_dir = tmp_path / "synthetic"
        result = runner.invoke(cli, ["make-corpus", "--sentences", "200", "--seed", "3", "--out-dir", str(corpus_dir)])
        assert result.exit_code == 0
        corpus = corpus_dir / "corpus_200_3.jsonl"

        config = tmp_path / "settings.yaml"
        config.write_text(
            settings_yaml(tmp_path / "cache.json", corpus_dir / "dictionary.json", backend_id="synthetic"),
            encoding="utf-8"
        )
        seeded = runner.invoke(cli, [
            "run", "--config", str(config), "--corpus", str(corpus), "--out", str(tmp_path / "seed.json"),
            "--backend", "mock"
        ])
        assert seeded.exit_code == EXIT_CLEAN

        outputs = []
        for name in ("first.json", "second.json"):
            started = time.perf_counter()
            result = runner.invoke(cli, [
                "run", "--config", str(config), "--corpus", str(corpus), "--out", str(tmp_path / name),
                "--replay-only"
            ])
            assert time.perf_counter() - started < 5.0
            assert result.exit_code == EXIT_CLEAN
            outputs.append((tmp_path / name).read_bytes())

        assert outputs[0] == outputs[1]
        assert json.loads(outputs[0])["summary"]["sentences"] == 200


class TestSweepAndEval:
    """Test cases for `sweep` and `eval`."""

    def test_sweep_counts(self, runner, golden_config, tmp_path):
        base = tmp_path / "sweep"
        result = runner.invoke(cli, [
            "sweep", "--config", golden_config, "--corpus", str(BEIJING_CORPUS), "--d", "0..2",
            "--labels", str(BEIJING_LABELS), "--out", str(base)
        ])

        assert result.exit_code == 0
        table = pd.read_csv(base.with_suffix(".csv"))
        assert table["d"].tolist() == [0, 1, 2]
        assert table["suspicious_count"].tolist() == [1, 1, 0]
        assert table["precision"].tolist()[:2] == [1.0, 1.0]
        assert json.loads(base.with_suffix(".json").read_text(encoding="utf-8"))[0]["d"] == 0

    def test_sweep_without_labels_drops_precision(self, runner, golden_config, tmp_path):
        base = tmp_path / "sweep"
        result = runner.invoke(cli, [
            "sweep", "--config", golden_config, "--corpus", str(BEIJING_CORPUS), "--d", "0,2", "--out", str(base)
        ])

        assert result.exit_code == 0
        table = pd.read_csv(base.with_suffix(".csv"))
        assert list(table.columns) == ["d", "suspicious_count"]

    def test_eval_on_golden_report(self, runner, golden_config, tmp_path):
        report = tmp_path / "report.json"
        runner.invoke(cli, [
            "run", "--config", golden_config, "--corpus", str(BEIJING_CORPUS), "--out", str(report),
            "--threshold", "0"
        ])
        tally = tmp_path / "tally"
        result = runner.invoke(cli, [
            "eval", "--report", str(report), "--labels", str(BEIJING_LABELS), "--out", str(tally)
        ])

        assert result.exit_code == 0
        assert "1/1" in result.output
        table = pd.read_csv(tally.with_suffix(".csv"))
        assert dict(zip(table["category"], table["count"]))["under_translation"] == 1

    def test_eval_with_unlabeled_issue(self, runner, golden_config, tmp_path):
        report = tmp_path / "report.json"
        runner.invoke(cli, [
            "run", "--config", golden_config, "--corpus", str(BEIJING_CORPUS), "--out", str(report),
            "--threshold", "0"
        ])
        labels = tmp_path / "labels.json"
        labels.write_text("{}", encoding="utf-8")

        result = runner.invoke(cli, ["eval", "--report", str(report), "--labels", str(labels)])
        assert result.exit_code == EXIT_ERROR

    @pytest.mark.parametrize("content", ['{"issues": [{}]}', "{not json", "[1, 2]", '{"sentences": [{"id": "x"}]}'])
    def test_eval_on_malformed_report(self, runner, tmp_path, content):
        report = tmp_path / "report.json"
        report.write_text(content, encoding="utf-8")

        result = runner.invoke(cli, ["eval", "--report", str(report), "--labels", str(BEIJING_LABELS)])
        assert result.exit_code == EXIT_ERROR

    def test_eval_on_missing_report(self, runner, tmp_path):
        result = runner.invoke(cli, [
            "eval", "--report", str(tmp_path / "absent.json"), "--labels", str(BEIJING_LABELS)
        ])
        assert result.exit_code == EXIT_ERROR

    @pytest.mark.parametrize("value, expected", [("0..5", [0, 1, 2, 3, 4, 5]), ("0,2,4", [0, 2, 4]), ("3", [3])])
    def test_parse_d_values(self, value, expected):
        assert parse_d_values(value) == expected

    @pytest.mark.parametrize("value", ["", "a..b", "-1,2", "5..1"])
    def test_parse_d_values_rejects(self, value):
        with pytest.raises(ValidationError):
            parse_d_values(value)


class TestUtilityCommands:
    """Test cases for `simulate`, `make-corpus` and `check-config`."""

    def test_make_corpus(self, runner, tmp_path):
        result = runner.invoke(cli, ["make-corpus", "--sentences", "7", "--seed", "2", "--out-dir", str(tmp_path)])

        assert result.exit_code == 0
        lines = (tmp_path / "corpus_7_2.jsonl").read_text(encoding="utf-8").splitlines()
        assert len(lines) == 7
        assert json.loads((tmp_path / "dictionary.json").read_text(encoding="utf-8")) == build_dictionary()

    def test_simulate(self, runner, mock_config, tmp_path):
        runner.invoke(cli, ["make-corpus", "--sentences", "30", "--seed", "1", "--out-dir", str(tmp_path)])
        base = tmp_path / "simulation"
        result = runner.invoke(cli, [
            "simulate", "--config", mock_config, "--corpus", str(tmp_path / "corpus_30_1.jsonl"),
            "--dictionary", str(tmp_path / "dictionary.json"), "--trials", "20", "--out", str(base)
        ])

        assert result.exit_code == 0
        table = pd.read_csv(base.with_suffix(".csv"))
        assert len(table) == 6
        row = table[(table["kind"] == "under_translation") & (table["side"] == "container")].iloc[0]
        assert row["recall"] == 1.0

    def test_check_config(self, runner, mock_config):
        result = runner.invoke(cli, ["check-config", "--config", mock_config])
        assert result.exit_code == 0

    def test_check_config_missing_file(self, runner, tmp_path):
        result = runner.invoke(cli, ["check-config", "--config", str(tmp_path / "absent.yaml")])
        assert result.exit_code == EXIT_ERROR
