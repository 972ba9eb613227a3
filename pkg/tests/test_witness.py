import pytest

from ccsf.eqlogic import parse_axioms, shipped_axioms
from ccsf.operators import dispatch, enumerate_admissible, representative, representatives
from ccsf.parser import parse_term
from ccsf.semantics import STORE, equivalent, is_prime
from ccsf.sos import RuleSet, Sync, depth
from ccsf.terms import NIL, Action, plus, prefix
from ccsf.witness import (UnsoundAxioms, family_for, has_witness_summand, ladder, p_proc,
                          q_proc, verify_family, witness_terms, wn_preservation_experiment)

A, B, T = Action.A, Action.ABAR, Action.TAU
P = parse_term
ALL = {A, B, T}
LABAT = RuleSet.of(ALL, (), {Sync.A_ABAR})


def test_ladder():
    assert ladder(A, 0) is NIL
    assert ladder(A, 2) is P("a.0 + a.a.0")
    assert depth(LABAT, ladder(A, 3)) == 3
    with pytest.raises(ValueError):
        ladder(A, -1)


def test_p_and_q():
    assert p_proc(A, 1) is P("a'.0 + a'.a.0")
    assert p_proc(A, 1, start=1) is P("a'.a.0")
    assert q_proc(A, 1) is P("a.0 + a.a'.0")


def test_family_examples():
    f = witness_terms("Labat", 0)
    assert f.witness is P("f(a.0, a'.0)")
    assert f.equation.rhs is P("a.a'.0 + tau.0")
    f = witness_terms("LaRa", 1)
    assert f.witness is P("f(a.0, a.0 + a.a'.0)")
    assert f.equation.rhs is P("a.(a.0 + a.a'.0) + a.(a.0 || 0) + a.(a.0 || a'.0)")
    f = witness_terms("Ltau", 0)
    assert f.equation.lhs is P("f(tau.0, a.0)")
    assert f.equation.rhs is P("tau.a.0 + a.(tau.0 || 0)")


def test_mirrored_and_renamed_families():
    f = witness_terms("Labat", 1, alpha=B, mirrored=True)
    assert f.witness is P("f(a.0 + a.a'.0, a'.0)")
    with pytest.raises(ValueError):
        witness_terms("HennessyLike", 1)
    with pytest.raises(ValueError):
        family_for(RuleSet.of(ALL, ALL, set(Sync)), 1)


@pytest.mark.parametrize("case", ["Labat", "LaRa", "LaRba-sync", "LaRba-nosync", "Ltau"])
def test_families_verify_from_one(case):
    rows = verify_family(representative(case), n_max=4, start=1)
    assert [r["n"] for r in rows] == [1, 2, 3, 4]
    for r in rows:
        assert r["ok"], r
        if case != "LaRa":
            assert r["depth_lhs"] == r["depth_rhs"] == r["n"] + 2


def test_every_operator_with_a_family_verifies():
    for rs in enumerate_admissible():
        if dispatch(rs).has_witness:
            for r in verify_family(rs, n_max=2, start=1):
                assert r["ok"], (rs.label(), r)


def test_labat_family_from_zero():
    assert all(r["ok"] for r in verify_family(LABAT, n_max=5))


def test_lara_q_is_prime():
    assert is_prime(representative("LaRa"), q_proc(A, 3))


def test_mismatched_case_is_detected():
    rs = representative("LaRba-sync")
    rows = verify_family(rs, n_max=1, case=dispatch(LABAT))
    assert any(not r["equivalent"] for r in rows)
    assert "distinguishing" in next(r for r in rows if not r["equivalent"])


def test_has_witness_summand():
    f = witness_terms("Labat", 2)
    w, rhs = f.witness, f.equation.rhs
    assert has_witness_summand(LABAT, w, w)
    assert not has_witness_summand(LABAT, rhs, w)
    assert has_witness_summand(LABAT, plus(w, prefix(A, NIL)), w)


def test_sizes_grow():
    for n in range(6):
        assert p_proc(A, n + 1).size > p_proc(A, n).size >= n
        assert q_proc(A, n + 1).size > q_proc(A, n).size >= n


def test_wn_experiment_small():
    E = shipped_axioms("a1-a4") + shipped_axioms("f-common") + shipped_axioms("l-all_r-none")
    rep = wn_preservation_experiment(LABAT, E, n=6, trials=200, seed=1)
    assert rep.trials == 200 and rep.applicable > 0 and rep.violations == []
    assert rep.lhs_with_witness > 0


def test_wn_property_needs_zero_free_sides():
    # f(x, 0) = x with x bound to the right-hand side of e_n: the f-term is
    # itself a summand bisimilar to the witness, the other side has none
    from ccsf.eqlogic import instance
    E = parse_axioms("F2: f(x, 0) = x")
    fam = witness_terms("Labat", 3)
    pr = instance(E, 0, {"x": fam.equation.rhs})
    p, q = pr.concl.lhs, pr.concl.rhs
    assert equivalent(LABAT, p, fam.witness) and equivalent(LABAT, q, fam.witness)
    assert has_witness_summand(LABAT, p, fam.witness)
    assert not has_witness_summand(LABAT, q, fam.witness)


def test_wn_experiment_trivial_and_gate():
    rep = wn_preservation_experiment(LABAT, parse_axioms("x = x"), trials=50)
    assert rep.violations == []
    with pytest.raises(UnsoundAxioms):
        wn_preservation_experiment(LABAT, parse_axioms("f(x, y) = 0"), trials=10)
