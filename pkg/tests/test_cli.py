"""End-to-end tests for the coring-workbench command line."""

from __future__ import annotations

import json

import pytest

from app.cli import build_parser, main
from app.handlers.check import EXIT_FAILED, EXIT_INPUT, EXIT_OK
from app.initializers import FaultLoader

PARTIAL_UNIT = {
    "rings": {"Q": {"builder": "rational"}, "M2": {"builder": "matrix", "n": 2}},
    "morphisms": {"corner1": {"source": "Q", "target": "M2", "images": {"1": {"E11": "1"}}}},
}


def test_parser_requires_a_command() -> None:
    with pytest.raises(SystemExit):
        build_parser().parse_args([])
    args = build_parser().parse_args(["check", "--select", "coring:laws", "--format", "json"])
    assert args.select == ["coring:laws"]
    assert args.format == "json"


def test_catalog_passes_every_check(capsys) -> None:
    assert main(["check"]) == EXIT_OK
    out = capsys.readouterr().out
    summary = out.strip().splitlines()[-1]
    assert summary.startswith("summary: ")
    assert "0 failed, 0 errors" in summary


@pytest.mark.parametrize("instance", ["swUnit", "trivP", "swP", "splitP"])
def test_catalog_corings_beyond_matrix_rings(instance: str, capsys) -> None:
    assert main(["check", "--select", f"coring:*:{instance}"]) == EXIT_OK
    out = capsys.readouterr().out
    assert f"PASS  coring:laws [{instance}]" in out
    assert f"PASS  coring:counit-morphism [{instance}]" in out


def test_json_report(capsys) -> None:
    assert main(["check", "--select", "ring:verify:M2", "--format", "json"]) == EXIT_OK
    payload = json.loads(capsys.readouterr().out)
    assert [check["instance"] for check in payload["checks"]] == ["M2"]
    assert payload["summary"] == {"checks": 1, "passed": 1, "failed": 0, "errors": 0}


def test_unmatched_selection_is_an_input_error() -> None:
    assert main(["check", "--select", "nothing:here"]) == EXIT_INPUT


def test_missing_file_is_an_input_error(tmp_path) -> None:
    assert main(["check", str(tmp_path / "missing.json")]) == EXIT_INPUT


def test_faults_are_caught(capsys) -> None:
    assert main(["catalog", "--faults"]) == EXIT_OK
    lines = capsys.readouterr().out.splitlines()
    names = [fixture.name for fixture in FaultLoader.get_all_fixtures()]
    assert len(lines) == len(names)
    for line, name in zip(lines, names):
        assert line.startswith(f"CAUGHT {name}: ")


def test_fault_document_fails_its_check(tmp_path, capsys) -> None:
    fixture = FaultLoader.get_fixture("ring-product")
    path = tmp_path / "fault.json"
    path.write_text(json.dumps(fixture.document), encoding="utf-8")
    assert main(["check", str(path), "--select", fixture.select]) == EXIT_FAILED
    out = capsys.readouterr().out
    assert "(E12,E21,E12)" in out


def test_construct_comatrix_round_trip(tmp_path, capsys) -> None:
    assert main(["construct", "comatrix", "--sigma", "Row", "--name", "C"]) == EXIT_OK
    text = capsys.readouterr().out
    document = json.loads(text)
    assert list(document["corings"]) == ["C"]
    assert len(document["corings"]["C"]["counit"]) == 4

    path = tmp_path / "comatrix.json"
    path.write_text(text, encoding="utf-8")
    assert main(["check", str(path)]) == EXIT_OK

    assert main(["construct", "comatrix", "--sigma", "Row", "--name", "C"]) == EXIT_OK
    assert capsys.readouterr().out == text


def test_construct_rejects_failing_morphism(tmp_path, capsys) -> None:
    path = tmp_path / "partial.json"
    path.write_text(json.dumps(PARTIAL_UNIT), encoding="utf-8")
    assert main(["construct", "sweedler", str(path), "--morphism", "corner1"]) == EXIT_INPUT
    captured = capsys.readouterr()
    assert captured.out == ""
    assert "e[2]" in captured.err


def test_construct_requires_its_options() -> None:
    assert main(["construct", "comatrix"]) == EXIT_INPUT
