"""
Check suites over a workspace.

Every suite registers under ``kind:suite``; a run expands it to one target per
object (or per composable pair/triple of 1-cells) and reports under
``kind:suite:instance``.
"""

from __future__ import annotations

import logging
from typing import Iterator, Tuple

from app.core.local_ring import check_morphism, verify_ring
from app.core.unital_module import verify_module
from app.core.tensor_engine import identity_map, theta, upsilon
from app.core.coring_core import (
    check_cofree_adjunction,
    check_comodule,
    check_coring,
    check_coring_isomorphism,
    check_coring_morphism,
    compare_maps,
    regular_comodule,
)
from app.core.coring_constructors import (
    check_comatrix_independence,
    check_rees_counit,
    check_split_unity_independence,
    check_sweedler_unity_independence,
    counit_morphism,
)
from app.core.bicategory import (
    OneCell,
    check_composition_associativity,
    check_composition_units,
    check_induction_functoriality,
    check_one_cell,
    check_two_cell,
    compose_one_cells,
    induce_comodule,
)
from app.core.adjunction import (
    check_dual_tensor_iso,
    check_naturality,
    check_transport_consistency,
    check_triangle_identities,
    check_unit_independence,
)
from app.workspace import Workspace
from models.check_registry import Target, register_check
from models.report import CheckReport

logger = logging.getLogger(__name__)

UNITY_BUILDERS = ("sweedler", "split", "comatrix")


def _by_origin(section: str, *builders: str):
    def targets(workspace: Workspace) -> Iterator[Target]:
        for name in workspace.section(section):
            origin = workspace.origin(section, name)
            if origin is not None and origin.builder in builders:
                yield name, name

    return targets


def _composable_pairs(workspace: Workspace) -> Iterator[Target]:
    cells = workspace.one_cells
    for first, m in cells.items():
        for second, n in cells.items():
            if m.source is n.target:
                yield f"{first}*{second}", (first, second)


def _composable_triples(workspace: Workspace) -> Iterator[Target]:
    cells = workspace.one_cells
    for (pair, (first, second)) in _composable_pairs(workspace):
        n = cells[second]
        for third, p in cells.items():
            if n.source is p.target:
                yield f"{pair}*{third}", (first, second, third)


def _cells(workspace: Workspace, names: Tuple[str, ...]) -> Tuple[OneCell, ...]:
    return tuple(workspace.get("one_cells", name) for name in names)


# Rings, morphisms and modules


@register_check("ring", "verify", "rings", "associativity, gradedness, idempotents and local units")
def run_ring_verify(workspace: Workspace, name: str) -> CheckReport:
    return verify_ring(workspace.get("rings", name), workspace.corner_labels(name))


@register_check("morphism", "check", "morphisms", "multiplicativity and the local-unit condition")
def run_morphism_check(workspace: Workspace, name: str) -> CheckReport:
    return check_morphism(workspace.get("morphisms", name))


@register_check("module", "verify", "modules", "action laws, gradedness and unitality")
def run_module_verify(workspace: Workspace, name: str) -> CheckReport:
    return verify_module(workspace.get("modules", name))


@register_check("module", "upsilon-theta", "modules", "eN and eA ⊗ N are inverse through Υ and Θ")
def run_upsilon_theta(workspace: Workspace, name: str) -> CheckReport:
    module = workspace.get("modules", name)
    report = CheckReport(check="module:upsilon-theta", instance=name)
    for label in module.left_ring.labels:
        there = upsilon([label], module)
        back = theta([label], module)
        compare_maps(report, f"theta.upsilon[{label}]", back @ there, identity_map(there.source))
        compare_maps(report, f"upsilon.theta[{label}]", there @ back, identity_map(there.target))
    return report


# Corings, their morphisms and comodules


@register_check("coring", "laws", "corings", "bilinearity, coassociativity and counitality")
def run_coring_laws(workspace: Workspace, name: str) -> CheckReport:
    return check_coring(workspace.get("corings", name))


@register_check("coring", "counit-morphism", "corings", "ε is a coring morphism onto the trivial coring")
def run_counit_morphism(workspace: Workspace, name: str) -> CheckReport:
    return check_coring_morphism(counit_morphism(workspace.get("corings", name)))


@register_check(
    "coring",
    "unity-independence",
    "corings",
    "Δ does not depend on the local unit or dual basis chosen",
    targets=_by_origin("corings", *UNITY_BUILDERS),
)
def run_unity_independence(workspace: Workspace, name: str) -> CheckReport:
    origin = workspace.origin("corings", name)
    if origin.builder == "sweedler":
        return check_sweedler_unity_independence(origin.args["morphism"])
    if origin.builder == "split":
        return check_split_unity_independence(origin.args["ring"], origin.args["module"])
    return check_comatrix_independence(origin.args["sigma"])


@register_check(
    "coring",
    "rees-counit",
    "corings",
    "counit of the Rees coring is bijective",
    targets=_by_origin("corings", "rees"),
)
def run_rees_counit(workspace: Workspace, name: str) -> CheckReport:
    origin = workspace.origin("corings", name)
    return check_rees_counit(origin.args["ring"], origin.args["idempotent"])


@register_check("coring_morphism", "laws", "coring_morphisms", "bilinear and compatible with Δ and ε")
def run_coring_morphism_laws(workspace: Workspace, name: str) -> CheckReport:
    return check_coring_morphism(workspace.get("coring_morphisms", name))


def _flagged_iso(workspace: Workspace) -> Iterator[Target]:
    for name in workspace.coring_morphisms:
        origin = workspace.origin("coring_morphisms", name)
        if origin is not None and origin.args.get("iso"):
            yield name, name


@register_check(
    "coring_morphism",
    "iso",
    "coring_morphisms",
    "coring morphism that is also bijective",
    targets=_flagged_iso,
)
def run_coring_morphism_iso(workspace: Workspace, name: str) -> CheckReport:
    return check_coring_isomorphism(workspace.get("coring_morphisms", name))


@register_check("comodule", "laws", "comodules", "coassociativity and counitality of the coaction")
def run_comodule_laws(workspace: Workspace, name: str) -> CheckReport:
    return check_comodule(workspace.get("comodules", name))


@register_check("comodule", "cofree-adjunction", "comodules", "the coaction splits the cofree counit")
def run_cofree_adjunction(workspace: Workspace, name: str) -> CheckReport:
    return check_cofree_adjunction(workspace.get("comodules", name))


# Bicategory


@register_check("one_cell", "fks", "one_cells", "bilinear entwining compatible with Δ and ε")
def run_one_cell(workspace: Workspace, name: str) -> CheckReport:
    return check_one_cell(workspace.get("one_cells", name))


@register_check("one_cell", "units", "one_cells", "identity 1-cells are units for composition")
def run_one_cell_units(workspace: Workspace, name: str) -> CheckReport:
    return check_composition_units(workspace.get("one_cells", name))


@register_check("one_cell", "induced-comodule", "one_cells", "inducing the regular comodule gives a comodule")
def run_induced_comodule(workspace: Workspace, name: str) -> CheckReport:
    cell = workspace.get("one_cells", name)
    return check_comodule(induce_comodule(cell, regular_comodule(cell.target)))


@register_check(
    "one_cell", "compose", "one_cells", "composites of composable 1-cells are 1-cells", targets=_composable_pairs
)
def run_one_cell_compose(workspace: Workspace, names: Tuple[str, str]) -> CheckReport:
    return check_one_cell(compose_one_cells(*_cells(workspace, names)))


@register_check(
    "one_cell",
    "induction",
    "one_cells",
    "inducing along m then n matches inducing along m*n",
    targets=_composable_pairs,
)
def run_induction(workspace: Workspace, names: Tuple[str, str]) -> CheckReport:
    m, n = _cells(workspace, names)
    return check_induction_functoriality(m, n, regular_comodule(m.target))


@register_check(
    "one_cell",
    "associativity",
    "one_cells",
    "(m*n)*p and m*(n*p) agree through the associator",
    targets=_composable_triples,
)
def run_associativity(workspace: Workspace, names: Tuple[str, str, str]) -> CheckReport:
    return check_composition_associativity(*_cells(workspace, names))


@register_check("two_cell", "law", "two_cells", "bilinear map compatible with both entwinings")
def run_two_cell(workspace: Workspace, name: str) -> CheckReport:
    return check_two_cell(workspace.get("two_cells", name))


# Adjunction and duals


@register_check("adjunction", "triangle", "adjunctions", "triangle identities of − ⊗ Σ ⊣ − ⊗ Σ†")
def run_triangle(workspace: Workspace, name: str) -> CheckReport:
    entry = workspace.get("adjunctions", name)
    return check_triangle_identities(entry.sigma, entry.dual_bases)


@register_check("adjunction", "unit-independence", "adjunctions", "η does not depend on the local unit")
def run_unit_independence(workspace: Workspace, name: str) -> CheckReport:
    return check_unit_independence(workspace.get("adjunctions", name).sigma)


@register_check("adjunction", "naturality", "adjunctions", "η and ζ are natural on the probe modules")
def run_naturality(workspace: Workspace, name: str) -> CheckReport:
    return check_naturality(workspace.get("adjunctions", name).sigma)


def _with_coring(workspace: Workspace) -> Iterator[Target]:
    for name, entry in workspace.adjunctions.items():
        if entry.coring is not None:
            yield name, name


@register_check(
    "adjunction",
    "transport",
    "adjunctions",
    "base extension matches the coring transported through η",
    targets=_with_coring,
)
def run_transport(workspace: Workspace, name: str) -> CheckReport:
    entry = workspace.get("adjunctions", name)
    return check_transport_consistency(entry.sigma, entry.coring)


@register_check("dual_pair", "iso", "dual_pairs", "(W ⊗ Σ)† ≅ Σ† ⊗ W†")
def run_dual_pair(workspace: Workspace, name: str) -> CheckReport:
    pair = workspace.get("dual_pairs", name)
    return check_dual_tensor_iso(pair.w, pair.sigma)


__all__ = ["UNITY_BUILDERS"]
