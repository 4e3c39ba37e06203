"""Catalog entries carry the published counts and identifications."""

import pytest

from splitops import catalog
from splitops.duality import dual
from splitops.typecore import validate


def test_all_entries_validate_with_published_counts():
    assert len(catalog.list_names()) == 17
    for name in catalog.list_names():
        t = catalog.get(name)
        assert validate(t).valid, name
        assert len(t.relations) == catalog.EXPECTED_RELATION_COUNTS[name], name


def test_entries_are_cached_and_named():
    assert catalog.get("dendriform") is catalog.get("dendriform")
    for name in catalog.list_names():
        assert catalog.get(name).name == name


def test_unknown_name_lists_alternatives():
    with pytest.raises(catalog.UnknownTypeError, match="dendriform"):
        catalog.get("dendroform")


def test_provenance_notes_exist():
    for name in catalog.list_names():
        assert catalog.provenance(name)


def test_dual_identifications():
    dend = catalog.get("dendriform")
    assert (
        dual(dend, search_star=False).relation_subspace
        == catalog.get("assoc_dialgebra").relation_subspace
    )
    ns = catalog.get("ns")
    assert (
        dual(ns, search_star=False).relation_subspace
        == catalog.get("assoc_nijenhuis_tri").relation_subspace
    )
    tri = catalog.get("trialgebra")
    assert (
        dual(tri, search_star=False).relation_subspace
        == catalog.get("assoc_trialgebra").relation_subspace
    )


def test_ns_entry_counts():
    ns = catalog.get("ns")
    assert ns.dim == 3
    assert len(ns.relations) == 4


def test_quadri_lit_matches_published_shape():
    q = catalog.get("quadri_lit")
    assert q.generators.labels == ("ne", "nw", "se", "sw")
    assert set(q.aux) == {"wedge", "vee", "lt", "gt", "st"}
    assert len(q.relations) == 9


def test_recipe_entries_are_products():
    assert catalog.get("quadri").dim == 4
    assert catalog.get("ennea").dim == 9
    assert catalog.get("dendriform_nijenhuis").dim == 9
    assert catalog.get("octo").dim == 8
    assert catalog.get("di_dipterous_anti").dim == 8
    assert catalog.get("m1").generators.labels[0] == "(st|st)"


def test_assoc_trialgebra_found_its_star():
    at = catalog.get("assoc_trialgebra")
    assert at.star is not None
    assert validate(at).valid


def test_latex_symbols():
    assert catalog.latex_symbol("lt") == r"\prec"
    assert catalog.latex_symbol("(lt|gt)") == r"\binom{\prec}{\succ}"
    assert catalog.latex_symbol("bul3") == r"\bullet_{3}"
    assert catalog.latex_symbol("weird") == r"\mathtt{weird}"


def test_table_isomorphism_unknown():
    with pytest.raises(catalog.UnknownTypeError, match="octo"):
        catalog.table_isomorphism("quadri_lit")
