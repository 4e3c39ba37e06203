"""Symbolic operator verification: rewriting, certificates, lemmas."""

import json
from fractions import Fraction

import pytest

import splitops.operatorver as ov
from splitops import catalog
from splitops.exactalg import LAMBDA, RF_ONE, RatFunc

F = Fraction
P = 0  # the only operator symbol in single-law tests


def nf(comb, law, **kwargs):
    return ov.Normalizer((law,), (0,), **kwargs).normalize(comb)


def term2(wx, wy, wout=()):
    return (2, -1, 0, tuple(wx), tuple(wy), (), (), tuple(wout))


def test_rb_single_step():
    # P(x) o P(y) -> P(P(x) o y) + P(x o P(y)) + weight * P(x o y)
    out = nf({term2((P,), (P,)): RF_ONE}, ov.rb(None))
    assert out == {
        term2((P,), (), (P,)): RF_ONE,
        term2((), (P,), (P,)): RF_ONE,
        term2((), (), (P,)): LAMBDA,
    }


def test_rb_weight_zero_single_step():
    out = nf({term2((P,), (P,)): RF_ONE}, ov.rb(0))
    assert out == {
        term2((P,), (), (P,)): RF_ONE,
        term2((), (P,), (P,)): RF_ONE,
    }


def test_no_redex_is_fixed():
    start = {term2((), (P,)): RF_ONE}
    assert nf(start, ov.rb(None)) == start


def test_nijenhuis_single_step():
    out = nf({term2((P,), (P,)): RF_ONE}, ov.nijenhuis())
    assert out == {
        term2((P,), (), (P,)): RF_ONE,
        term2((), (P,), (P,)): RF_ONE,
        term2((), (), (P, P)): -RF_ONE,
    }


def test_one_sided_laws_single_step():
    out = nf({term2((P,), (P,)): RF_ONE}, ov.left_rb())
    assert out == {term2((), (P,), (P,)): RF_ONE}
    out = nf({term2((P,), (P,)): RF_ONE}, ov.right_rb())
    assert out == {term2((P,), (), (P,)): RF_ONE}


def test_three_leaf_case_three_expansion():
    # (P(x) o P(y)) o z normalizes through the inner redex exactly as the
    # proof of the associative case expands it
    start = {(0, 0, 0, (P,), (P,), (), (), ()): RF_ONE}
    out = nf(start, ov.rb(None))
    assert out == {
        (0, 0, 0, (P,), (), (), (P,), ()): RF_ONE,
        (0, 0, 0, (), (P,), (), (P,), ()): RF_ONE,
        (0, 0, 0, (), (), (), (P,), ()): LAMBDA,
    }


def test_case_three_substitution_matches_proof_chain():
    # for the associative type with a formal-weight operator, the relation
    # (star x gt | gt x gt) substitutes to
    #   P(x o P(y)) o z + P(P(x) o y) o z + weight * P(x o y) o z
    # on the left and P(x) o (P(y) o z) on the right, both already normal
    a = catalog.get("associative")
    v = ov._make_verifier(a, [ov.rb(None)], ov.DEFAULT_NESTING_CAP, ov.DEFAULT_STEP_BUDGET)
    rel = v.product.relations[2]
    diff = v.normalizer.normalize(v.substitute(rel))
    assert diff == {
        (0, 0, 0, (), (P,), (), (P,), ()): RF_ONE,
        (0, 0, 0, (P,), (), (), (P,), ()): RF_ONE,
        (0, 0, 0, (), (), (), (P,), ()): LAMBDA,
        (1, 0, 0, (P,), (P,), (), (), ()): -RF_ONE,
    }
    # and the residual is certified by the associativity instance on
    # (P(x), P(y), z): its left half rewrites into the three wrapped terms
    verdict = v.verify_relation(2)
    assert verdict.verified
    tags = [tag for tag, _ in verdict.certificate]
    assert (0, ((P,), (P,), ()), ()) in tags


def test_verifier_substitutions_are_strategy_independent():
    tri = catalog.get("trialgebra")
    law = ov.rb(None)
    inner = ov._make_verifier(tri, [law], ov.DEFAULT_NESTING_CAP, ov.DEFAULT_STEP_BUDGET)
    outer = ov._make_verifier(
        tri, [law], ov.DEFAULT_NESTING_CAP, ov.DEFAULT_STEP_BUDGET, strategy="outermost"
    )
    for index in range(0, len(inner.product.relations), 7):
        comb = inner.substitute(inner.product.relations[index])
        assert inner.normalizer.normalize(comb) == outer.normalizer.normalize(comb)


def test_normalization_strategy_independent():
    inputs = [
        {(0, 0, 0, (P,), (P,), (P,), (), ()): RF_ONE},
        {(1, 0, 0, (P,), (P,), (P,), (), ()): RF_ONE},
        {(0, 0, 0, (P, P), (P,), (P,), (), ()): RF_ONE},
        {term2((P, P), (P, P)): RF_ONE},
    ]
    for law in (ov.rb(None), ov.nijenhuis(), ov.left_rb(), ov.right_rb()):
        for comb in inputs:
            inner = ov.Normalizer((law,), (0,), strategy="innermost").normalize(comb)
            outer = ov.Normalizer((law,), (0,), strategy="outermost").normalize(comb)
            assert inner == outer


def test_normal_forms_have_no_redex():
    law = ov.rb(None)
    comb = {(0, 0, 0, (P, P), (P,), (P,), (), ()): RF_ONE}
    normalizer = ov.Normalizer((law,), (0,))
    for term in normalizer.normalize(comb):
        assert normalizer._find_redex(term) is None


def test_step_budget_guard():
    comb = {(0, 0, 0, (P, P), (P, P), (P, P), (), ()): RF_ONE}
    with pytest.raises(ov.RewriteBudget, match="rewrite budget exhausted"):
        ov.Normalizer((ov.rb(None),), (0,), budget=2).normalize(comb)


def test_nesting_cap_guard():
    with pytest.raises(ov.RewriteBudget, match="nesting cap"):
        ov.Normalizer((ov.nijenhuis(),), (0,), cap=1).normalize(
            {term2((P,), (P,)): RF_ONE}
        )


# -- the theorem ---------------------------------------------------------------


def test_rb_on_associative_builds_trialgebra():
    report = ov.verify_operator_theorem(catalog.get("associative"), ov.rb(None))
    assert report.all_verified
    assert len(report.verdicts) == 7


def test_rb_weight_zero_on_dendriform_builds_quadri():
    report = ov.verify_operator_theorem(catalog.get("dendriform"), ov.rb(0))
    assert report.all_verified
    assert len(report.verdicts) == 9


def test_nijenhuis_on_associative_builds_ns():
    report = ov.verify_operator_theorem(catalog.get("associative"), ov.nijenhuis())
    assert report.all_verified
    assert len(report.verdicts) == 4


def test_one_sided_rb_builds_dipterous_pair():
    a = catalog.get("associative")
    left = ov.verify_operator_theorem(a, ov.left_rb())
    right = ov.verify_operator_theorem(a, ov.right_rb())
    assert left.all_verified and len(left.verdicts) == 3
    assert right.all_verified and len(right.verdicts) == 3
    assert left.product_name == "(associative sq dipterous)"
    assert right.product_name == "(associative sq anti_dipterous)"


def test_every_nonzero_residual_carries_a_certificate():
    report = ov.verify_operator_theorem(catalog.get("ns"), ov.nijenhuis())
    assert report.all_verified
    assert any(v.certificate for v in report.verdicts)


def test_certificates_reproduce_residuals():
    t = catalog.get("dendriform")
    law = ov.rb(None)
    v = ov._make_verifier(t, [law], ov.DEFAULT_NESTING_CAP, ov.DEFAULT_STEP_BUDGET)
    for index in range(len(v.product.relations)):
        verdict = v.verify_relation(index)
        assert verdict.verified
        residual = v.normalizer.normalize(v.substitute(v.product.relations[index]))
        rebuilt = {}
        for tag, coeff in verdict.certificate:
            for term, c in v.instance_vector(tag).items():
                ov._accumulate(rebuilt, term, coeff * c)
        assert rebuilt == residual


def test_specialization_coherence_at_weight_zero():
    # verifying with the formal weight and evaluating at 0 agrees with
    # verifying at weight 0 on the relations the two products share
    a = catalog.get("associative")
    formal = ov._make_verifier(a, [ov.rb(None)], ov.DEFAULT_NESTING_CAP, ov.DEFAULT_STEP_BUDGET)
    at_zero = ov._make_verifier(a, [ov.rb(0)], ov.DEFAULT_NESTING_CAP, ov.DEFAULT_STEP_BUDGET)
    # trialgebra relations 1-3 mirror the dendriform relations
    for t_index, d_index in ((0, 0), (1, 1), (2, 2)):
        formal_residual = formal.normalizer.normalize(
            formal.substitute(formal.product.relations[t_index])
        )
        specialized = {}
        for term, coeff in formal_residual.items():
            value = coeff.evaluate(F(0))
            if value:
                specialized[term] = RatFunc(value)
        zero_residual = at_zero.normalizer.normalize(
            at_zero.substitute(at_zero.product.relations[d_index])
        )
        assert specialized == zero_residual


def test_rb_verifies_on_every_cataloged_star_type():
    for name in ("anti_dipterous", "assoc_dialgebra"):
        report = ov.verify_operator_theorem(catalog.get(name), ov.rb(None))
        assert report.all_verified, name


def test_commuting_families():
    a = catalog.get("associative")
    pairs = [
        ([ov.rb(0), ov.rb(0)], 9),
        ([ov.rb(None), ov.rb(None)], 49),
        ([ov.right_rb(), ov.left_rb()], 9),
        ([ov.left_rb(), ov.left_rb()], 9),
        ([ov.rb(0), ov.rb(0), ov.rb(0)], 27),
    ]
    for laws, want in pairs:
        report = ov.verify_commuting_family(a, laws)
        assert report.all_verified
        assert len(report.verdicts) == want
        assert not report.experimental


def test_family_size_guard():
    with pytest.raises(Exception, match="limited"):
        ov.verify_commuting_family(catalog.get("associative"), [ov.rb(0)] * 4)


def test_mixed_family_is_experimental_but_verifies():
    report = ov.verify_commuting_family(
        catalog.get("associative"), [ov.rb(0), ov.nijenhuis()]
    )
    assert report.experimental
    assert report.all_verified


def test_operator_lemmas():
    reports = ov.verify_operator_lemmas()
    assert len(reports) == 4
    assert all(r.ok for r in reports)
    names = [r.name for r in reports]
    assert any("Rota-Baxter" in n for n in names)
    assert any("Nijenhuis" in n for n in names)


def test_report_json_shape():
    report = ov.verify_operator_theorem(catalog.get("associative"), ov.rb(None))
    data = json.loads(report.to_json())
    assert data["type"] == "associative"
    assert len(data["relations"]) == 7
    assert all(r["verdict"] == "verified" for r in data["relations"])


def test_law_constructors():
    assert ov.rb("formal").weight is None
    assert ov.rb(F(1, 2)).weight == F(1, 2)
    assert ov.law_from_name("rb0").weight == 0
    assert ov.law_from_name("leftrb").kind == "left_rb"
    with pytest.raises(ValueError):
        ov.law_from_name("averaging")
    with pytest.raises(ValueError):
        ov.OperatorLaw("nijenhuis", F(1))
