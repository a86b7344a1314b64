"""Command-line behavior: formats, exit codes, file round-trips."""

from __future__ import annotations

import json
from pathlib import Path

import pytest
from click.testing import CliRunner

from argmine.cli import main

FIXTURES = Path(__file__).resolve().parent / "fixtures"
SENTENCES = str(FIXTURES / "sentences.jsonl")


def invoke(*argv: str):
    return CliRunner().invoke(main, list(argv))


def test_usage_error_exits_2():
    result = invoke("kpa", "--no-such-flag")
    assert result.exit_code == 2
    assert "No such option" in result.output


def test_missing_subcommand_shows_help():
    result = invoke()
    assert result.exit_code in (0, 2)
    assert "Usage:" in result.output


def test_runtime_error_exits_1_with_code_on_stderr():
    result = invoke(
        "score",
        "stance",
        "--sentence",
        "The sky is here.",
        "--topic",
        "ban plastic",
        "--target",
        "plastic",
        "--polarity",
        "suppressing",
    )
    assert result.exit_code == 1
    assert "stance.abstain" in result.output


def test_topic_without_polarity_fails_cleanly():
    result = invoke(
        "score", "stance", "--sentence", "Plastic is toxic.", "--topic", "ban plastic"
    )
    assert result.exit_code == 1
    assert "topic.bad-polarity" in result.output


def test_wikify_text_format():
    result = invoke("wikify", "--text", "Recycling saves energy.", "--format", "text")
    assert result.exit_code == 0
    assert "recycling" in result.output
    assert "{" not in result.output


def test_json_is_default_format():
    result = invoke("wikify", "--text", "Recycling saves energy.")
    payload = json.loads(result.output)
    assert payload["mentions"][0]["concept"] == "recycling"


def test_kpa_text_report_shows_coverage_and_matches():
    from importlib import resources

    toy = str(resources.files("argmine.data") / "examples" / "toy_comments.jsonl")
    result = invoke("kpa", "--input", toy, "--k-max", "10", "--format", "text")
    assert result.exit_code == 0
    lines = result.output.splitlines()
    assert lines[0].startswith("coverage: 0.833 (5/6 sentences)")
    assert any(line.startswith("1. ") and "salience=3" in line for line in lines)
    assert any(line.startswith("2. ") and "salience=2" in line for line in lines)
    assert any(line.lstrip().startswith("- ") and "score=" in line for line in lines)


def test_cluster_reads_jsonl_and_reports_assignment():
    result = invoke("cluster", "--input", SENTENCES, "--k", "2", "--restarts", "2")
    payload = json.loads(result.output)
    assert payload["k"] == 2
    assert len(payload["assignment"]) == 24
    first, second = payload["assignment"][0], payload["assignment"][12]
    assert first != second
    assert payload["assignment"][:12] == [first] * 12
    assert payload["assignment"][12:] == [second] * 12


def test_index_build_then_query_file(tmp_path):
    index_path = str(tmp_path / "sentences.sidx")
    built = invoke("index", "build", "--input", SENTENCES, "--out", index_path)
    assert built.exit_code == 0
    assert "indexed 24 sentences" in built.output

    direct = invoke("index", "query", "--input", SENTENCES, "--query", '"solar power"')
    saved = invoke("index", "query", "--index", index_path, "--query", '"solar power"')
    assert direct.exit_code == saved.exit_code == 0
    assert json.loads(direct.output) == json.loads(saved.output)
    ids = [m["sentence_id"] for m in json.loads(saved.output)["matches"]]
    assert ids == ["s12", "s13", "s17", "s20", "s23"]


def test_index_query_needs_exactly_one_source(tmp_path):
    result = invoke("index", "query", "--query", "x")
    assert result.exit_code == 2
    both = invoke(
        "index", "query", "--query", "x", "--input", SENTENCES, "--index", SENTENCES
    )
    assert both.exit_code == 2


def test_bad_input_file_reports_line(tmp_path):
    bad = tmp_path / "bad.jsonl"
    bad.write_text('{"text": "ok"}\nnot json\n')
    result = invoke("cluster", "--input", str(bad), "--k", "2")
    assert result.exit_code == 1
    assert "line 2" in result.output


def test_eval_20ng_text_and_json(tmp_path):
    data = tmp_path / "mini.jsonl"
    rows = []
    fruit = ["ripe apple banana orchard harvest", "banana apple juice orchard press"]
    motor = ["engine piston oil torque garage", "piston engine fuel garage tune"]
    for i in range(6):
        rows.append({"text": fruit[i % 2] + f" extra{i}", "label": 0})
        rows.append({"text": motor[i % 2] + f" extra{i}", "label": 1})
    data.write_text("\n".join(json.dumps(r) for r in rows))

    text = invoke("eval-20ng", "--data", str(data), "--k", "2", "--restarts", "2", "--min-df", "1")
    assert text.exit_code == 0
    assert text.output.startswith("AMI=1.000 ARI=1.000")

    as_json = invoke(
        "eval-20ng",
        "--data",
        str(data),
        "--k",
        "2",
        "--restarts",
        "2",
        "--min-df",
        "1",
        "--format",
        "json",
    )
    payload = json.loads(as_json.output)
    assert payload["sib"]["ami"] == pytest.approx(1.0)
    assert payload["kmeans"]["ami"] == pytest.approx(1.0)


def test_debate_pipeline_deterministic_bytes():
    from importlib import resources

    debate = str(resources.files("argmine.data") / "examples" / "debate_arguments.jsonl")
    argv = [
        "debate-pipeline",
        "--input",
        debate,
        "--topic",
        "this house would ban disposable plastic packaging",
        "--target",
        "plastic packaging",
        "--polarity",
        "suppressing",
        "--stance",
        "pro",
    ]
    first = invoke(*argv)
    second = invoke(*argv)
    assert first.exit_code == 0
    assert first.output == second.output
    payload = json.loads(first.output)
    assert payload["n_stance_matched"] == 28
    assert payload["speech"]["paragraphs"]
    assert payload["key_points"]["key_points"]
