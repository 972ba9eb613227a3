import random

import pytest

from ccsf.eqlogic import (AxiomFileError, AxiomSystem, Equation, bounded_derivable, check_proof,
                          cl, cong_f, cong_par, cong_prefix, cong_sum, hat_proof, hat_system,
                          instance, is_saturated, match, parse_axioms, proof_to_json,
                          random_proof, refl, shipped_axiom_files, shipped_axioms,
                          sound_axioms, sym, symmetric_closure, trans)
from ccsf.operators import enumerate_admissible
from ccsf.parser import parse_term
from ccsf.semantics import SyncTreeEnumerator, equivalent
from ccsf.sos import RuleSet, Sync
from ccsf.terms import Action, apply, has_par, prefix
from ccsf.witness import witness_terms

from conftest import mutate

A, B, T = Action.A, Action.ABAR, Action.TAU
P = parse_term
ALL = {A, B, T}
BASE = shipped_axioms("a1-a4")
F012 = shipped_axioms("f-common") + shipped_axioms("l-all_r-none")
E7 = BASE + F012


def test_parse_axioms_labels_and_comments():
    E = parse_axioms("# c\nA1: x + x = x\n\ny = y  # trailing\n")
    assert E.labels == ("A1", "E2")
    assert E.axioms[1] == Equation(P("y"), P("y"))
    with pytest.raises(AxiomFileError):
        parse_axioms("x + = y", "bad")


def test_shipped_files_parse():
    names = shipped_axiom_files()
    assert "a1-a4.axioms" in names and "f-common.axioms" in names
    for n in names:
        assert len(shipped_axioms(n)) > 0


def test_check_proof_examples():
    E = BASE
    pr = instance(E, 0, {"x": P("a.0")})
    assert pr.concl == Equation(P("a.0 + a.0"), P("a.0"))
    assert check_proof(E, pr)
    assert check_proof(E, refl(P("f(a.0, 0)")))
    child = refl(P("0"))
    from ccsf.eqlogic import CongPrefix
    bad = CongPrefix(Equation(P("a'.0"), P("a.0")), A, child)
    r = check_proof(E, bad)
    assert not r and r.path == () and r.rule == "prefix congruence"


def test_check_proof_reports_path():
    E = BASE
    good = instance(E, 3, {"x": P("a.0")})
    bad = trans(good, refl(P("tau.0")))
    r = check_proof(E, bad)
    assert not r and r.rule == "transitivity"


def test_matching_modulo_ac():
    sols = list(match(P("x + a.0"), P("tau.0 + a.0 + a'.0")))
    assert {"x": P("tau.0 + a'.0")} in sols
    assert list(match(P("f(x, x)"), P("f(a.0, tau.0)"))) == []
    for s in match(P("x + y"), P("a.0 + tau.0 + a'.0")):
        assert apply(s, P("x + y")) is P("a.0 + tau.0 + a'.0")


def test_cl_examples():
    E = AxiomSystem("comm", (Equation(P("x + y"), P("y + x")),))
    got = cl(E).as_set()
    assert got == {Equation(P("x + y"), P("y + x")), Equation(P("y"), P("y")),
                   Equation(P("x"), P("x")), Equation(P("0"), P("0"))}
    assert cl(AxiomSystem("empty")).as_set() == frozenset()
    c = cl(E7)
    assert cl(c).as_set() == c.as_set()
    assert is_saturated(c)


def test_cl_preserves_symmetry_closure():
    E = symmetric_closure(E7)
    assert E.symmetry_closed()
    assert cl(E).symmetry_closed()


def test_cl_rejects_par():
    with pytest.raises(ValueError):
        cl(parse_axioms("x || y = f(x, y) + f(y, x)"))


def test_sound_axioms_examples():
    for rs in enumerate_admissible()[::5]:
        for lab, v in sound_axioms(rs, BASE + shipped_axioms("f-common"), SyncTreeEnumerator(2, 1)):
            assert not v.refuted, lab
    labat = RuleSet.of(ALL, (), {Sync.A_ABAR})
    F1 = parse_axioms("F1: f(0, x) = 0")
    (lab, v), = sound_axioms(labat, F1, SyncTreeEnumerator(2, 2))
    assert not v.refuted
    (lab, v), = sound_axioms(RuleSet.of(ALL, {A}, {Sync.A_ABAR}), F1, SyncTreeEnumerator(1, 3))
    assert v.refuted and v.substitution == {"x": P("a.0")}


def test_bounded_derivable_examples():
    d = bounded_derivable(symmetric_closure(BASE), Equation(P("a.0 + 0 + a.0"), P("a.0")))
    assert d.derivable and check_proof(symmetric_closure(BASE), d.proof)
    assert d.proof.concl == Equation(P("a.0 + 0 + a.0"), P("a.0"))
    d = bounded_derivable(AxiomSystem("none"), Equation(P("a.0"), P("a.0")))
    assert d.derivable and check_proof(AxiomSystem("none"), d.proof)
    E = cl(symmetric_closure(E7))
    e2 = witness_terms("Labat", 2).equation
    assert not bounded_derivable(E, e2, 30, 8).derivable


def test_bounded_derivable_requires_closed_goal():
    with pytest.raises(ValueError):
        bounded_derivable(BASE, Equation(P("x"), P("x + x")))


def test_generated_proofs_check_and_are_sound():
    rng = random.Random(7)
    rs = RuleSet.of(ALL, (), {Sync.A_ABAR})
    starts = [P("a.0 + f(tau.0, 0)"), P("f(a.0 + a.0, 0) + 0"), P("tau.(a'.0 + 0) + a'.0")]
    for k in range(20):
        pr = random_proof(E7, rng.choice(starts), rng)
        assert check_proof(E7, pr)
        assert equivalent(rs, pr.concl.lhs, pr.concl.rhs)
        assert not check_proof(E7, mutate(pr, rng))


def test_hat_lifting():
    E = parse_axioms("P1: x || y = y || x\nA4: x + 0 = x")
    pr = trans(instance(E, 0, {"x": P("a.0 + 0"), "y": P("tau.0")}),
               cong_par(refl(P("tau.0")), instance(E, 1, {"x": P("a.0")})))
    pr = cong_prefix(A, cong_sum(pr, refl(P("a'.(0 || 0)"))))
    assert check_proof(E, pr)
    h = hat_proof(pr)
    H = hat_system(E)
    assert check_proof(H, h)
    assert not has_par(h.concl.lhs) and not has_par(h.concl.rhs)


def test_proof_to_json():
    pr = sym(instance(BASE, 0, {"x": P("a.0")}))
    js = proof_to_json(BASE, pr)
    assert js["rule"] == "symmetry"
    assert js["premises"][0] == {"rule": "axiom", "concl": "a.0 + a.0 = a.0",
                                 "axiom": "A1", "sigma": {"x": "a.0"}}
    assert cong_f(refl(P("0")), refl(P("0"))).concl == Equation(P("f(0, 0)"), P("f(0, 0)"))
