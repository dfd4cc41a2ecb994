"""Tests for spec documents, workspaces and canonical serialization."""

from __future__ import annotations

import json

import pytest

from app.errors import SpecReferenceError, SpecSyntaxError
from app.core.local_ring import LazyGradedRing, matrix_ring, rational_field
from app.core.unital_module import regular_bimodule, row_module
from app.core.coring_core import check_coring
from app.core.coring_constructors import comatrix_coring, split_coring, trivial_coring
from app.initializers import CatalogLoader
from app.spec_loader import load_workspace, merge_documents, parse_spec, read_document
from app.workspace import coring_document, dump_document

ROW_DOCUMENT = {
    "rings": {"M2": {"builder": "matrix", "n": 2}},
    "modules": {"Row": {"builder": "row", "ring": "M2"}},
}


def test_empty_document_gives_empty_workspace() -> None:
    workspace = parse_spec({})
    assert len(workspace) == 0
    assert workspace.names() == {}


def test_builders_resolve_to_shared_objects() -> None:
    workspace = parse_spec(ROW_DOCUMENT)
    assert len(workspace) == 2
    assert workspace.get("rings", "M2") is matrix_ring(2)
    assert workspace.get("modules", "Row") is row_module(matrix_ring(2))
    assert workspace.origin("rings", "M2").builder == "matrix"


def test_references_resolve_in_any_order() -> None:
    document = {
        "modules": {"Row": {"builder": "row", "ring": "M2"}},
        "corings": {"C": {"builder": "comatrix", "sigma": "Row"}},
        "rings": {"M2": {"builder": "matrix", "n": 2}},
    }
    workspace = parse_spec(document)
    assert workspace.get("corings", "C") is comatrix_coring(row_module(matrix_ring(2)))
    assert workspace.origin("corings", "C").args["sigma"] is workspace.get("modules", "Row")


def test_dangling_reference() -> None:
    with pytest.raises(SpecReferenceError) as excinfo:
        parse_spec({"modules": {"Row": {"builder": "row", "ring": "M3"}}})
    assert excinfo.value.identifier == "M3"
    assert excinfo.value.section == "rings"


def test_workspace_get_unknown_name() -> None:
    with pytest.raises(SpecReferenceError):
        parse_spec(ROW_DOCUMENT).get("corings", "C")


@pytest.mark.parametrize(
    ("document", "location"),
    [
        ({"widgets": {}}, "<document>:widgets"),
        ({"rings": []}, "<document>:rings"),
        ({"rings": {"X": {"builder": "octonion"}}}, "<document>:rings.X"),
        ({"rings": {"M": {"builder": "matrix"}}}, "<document>:rings.M"),
        ({"rings": {"M": {"builder": "matrix", "n": "two"}}}, "<document>:rings.M"),
        (
            {
                "rings": {
                    "X": {
                        "labels": ["1", "2"],
                        "basis": [["e1", "1", "1"], ["e2", "2", "2"], ["a", "1", "2"]],
                        "idempotents": {"1": "e1", "2": "e2"},
                        "products": [["a", "a", {"a": "1"}]],
                    }
                }
            },
            "<document>:rings.X",
        ),
    ],
)
def test_syntax_errors_carry_a_location(document, location: str) -> None:
    with pytest.raises(SpecSyntaxError) as excinfo:
        parse_spec(document)
    assert excinfo.value.location == location


def test_circular_reference() -> None:
    document = {
        "rings": {
            "A": {"builder": "corner", "ring": "B", "idempotent": ["1"]},
            "B": {"builder": "corner", "ring": "A", "idempotent": ["1"]},
        }
    }
    with pytest.raises(SpecSyntaxError, match="circular"):
        parse_spec(document)


def test_lazy_rings_are_cut_at_the_corner() -> None:
    document = {
        "rings": {"Pinf": {"builder": "infinite_path"}},
        "modules": {"RowPinf": {"builder": "row", "ring": "Pinf"}},
    }
    workspace = parse_spec(document, corner=2)
    assert isinstance(workspace.get("rings", "Pinf"), LazyGradedRing)
    assert workspace.corner_labels("Pinf") == ["1", "2"]
    assert workspace.finite_ring("Pinf").dim == 3
    assert workspace.get("modules", "RowPinf").right_ring is workspace.finite_ring("Pinf")


def test_merge_rejects_duplicates() -> None:
    first = ("a.json", {"rings": {"Q": {"builder": "rational"}}})
    second = ("b.json", {"rings": {"Q": {"builder": "rational"}}})
    with pytest.raises(SpecSyntaxError, match="declared twice") as excinfo:
        merge_documents([first, second])
    assert excinfo.value.location == "b.json:rings.Q"
    merged = merge_documents([first, ("c.json", {"modules": {"RegQ": {"builder": "regular", "ring": "Q"}}})])
    assert len(parse_spec(merged)) == 2


@pytest.mark.parametrize(
    "coring",
    [
        lambda: trivial_coring(matrix_ring(2)),
        lambda: comatrix_coring(row_module(matrix_ring(2))),
        lambda: split_coring(rational_field(), regular_bimodule(rational_field())),
    ],
)
def test_coring_document_round_trip(coring) -> None:
    original = coring()
    text = dump_document(coring_document(original, name="C"))
    assert text.endswith("\n")
    assert dump_document(json.loads(text)) == text

    reloaded = parse_spec(json.loads(text)).get("corings", "C")
    assert reloaded.carrier.dim == original.carrier.dim
    assert [b.name for b in reloaded.carrier.basis] == [b.name for b in original.carrier.basis]
    assert reloaded.comult.columns == original.comult.columns
    report = check_coring(reloaded)
    assert report.passed, report.witnesses()


def test_catalog_resolves() -> None:
    workspace = CatalogLoader.build_workspace()
    names = CatalogLoader.get_names()
    for section, entries in names.items():
        assert sorted(workspace.section(section)) == sorted(entries)


@pytest.mark.asyncio
async def test_read_document(tmp_path) -> None:
    empty = tmp_path / "empty.json"
    empty.write_text("  \n", encoding="utf-8")
    assert await read_document(empty) == {}

    broken = tmp_path / "broken.json"
    broken.write_text('{\n  "rings": ,\n}\n', encoding="utf-8")
    with pytest.raises(SpecSyntaxError) as excinfo:
        await read_document(broken)
    assert excinfo.value.location == f"{broken}:2:12"

    with pytest.raises(SpecSyntaxError, match="file not found"):
        await read_document(tmp_path / "missing.json")


@pytest.mark.asyncio
async def test_load_workspace_merges_files(tmp_path) -> None:
    rings = tmp_path / "rings.json"
    modules = tmp_path / "modules.json"
    rings.write_text(json.dumps({"rings": ROW_DOCUMENT["rings"]}), encoding="utf-8")
    modules.write_text(json.dumps({"modules": ROW_DOCUMENT["modules"]}), encoding="utf-8")
    workspace = await load_workspace([modules, rings])
    assert workspace.names() == {"rings": ["M2"], "modules": ["Row"]}
    assert len(await load_workspace([tmp_path / "rings.json"])) == 1
