import itertools
import random

import pytest
from hypothesis import given, settings

from ccsf.openterms import (MODES, AuxLabel, DVar, ParLeft, ParRight, Plain, aux_step,
                            blocked_example, check_c2o, check_o2c, check_trt_depth, dvars,
                            extract, instantiate, open_step, par_free_terms, random_instances,
                            trt, trt_matches_aux, trt_relation, trt_table, zero_test)
from ccsf.operators import enumerate_admissible, representatives
from ccsf.parser import parse_term
from ccsf.semantics import STORE, SyncTreeEnumerator, equivalent
from ccsf.sos import RuleSet, Sync, step
from ccsf.terms import ACTIONS, NIL, Action, apply, fop, in_nil_grammar, par, plus, prefix, var

from conftest import open_terms

A, B, T = Action.A, Action.ABAR, Action.TAU
P = parse_term
ALL = {A, B, T}
EXAMPLE = RuleSet.of({A, T}, {B, T}, {Sync.A_ABAR})
TREES = [STORE.tree(c) for c in SyncTreeEnumerator(2, 2).materialize()]


def test_aux_example():
    got = aux_step(EXAMPLE, P("f(x, tau.0)"))
    assert (AuxLabel("x", "l", A), ParLeft(DVar("x"), P("tau.0"))) in got
    assert {str(lab) for lab, _ in got} == {"x_l/a", "x_l/tau", "x_b/tau"}
    only_right = RuleSet.of({B, T}, {A}, {Sync.ABAR_A})
    assert not any(lab.action is A for lab, _ in aux_step(only_right, P("f(x, tau.0)")))
    assert aux_step(EXAMPLE, NIL) == frozenset()


def test_aux_rejects_par():
    with pytest.raises(ValueError):
        aux_step(EXAMPLE, P("x || 0"))


def test_aux_right_argument():
    got = aux_step(EXAMPLE, P("f(a.0, y)"))
    assert (AuxLabel("y", "r", B), ParRight(P("a.0"), DVar("y"))) in got


def test_configuration_printing_and_extract():
    c = ParRight(P("a.0"), ParLeft(DVar("x"), P("tau.0")))
    assert str(c) == "a.0 || (x_d || tau.0)"
    assert dvars(c) == ["x"]
    assert extract(c) == ("x", par(P("tau.0"), P("a.0")))
    assert extract(DVar("y")) == ("y", NIL)
    assert extract(Plain(P("a.0"))) is None


def test_trt_examples():
    t = P("f(x, tau.0)")
    assert trt(EXAMPLE, "x", "l", A, t)
    assert trt(EXAMPLE, "x", "b", T, t)
    assert not trt(EXAMPLE, "x", "r", B, t)
    only_left_a = RuleSet.of(ALL, {T}, {Sync.A_ABAR})
    assert not trt(only_left_a, "x", "r", A, P("f(x, y)"))
    assert not trt(EXAMPLE, "x", "l", A, P("a.x"))
    assert trt_table(EXAMPLE, "x", t) == [("l", A), ("l", T), ("b", T)]


@settings(max_examples=100, deadline=None)
@given(open_terms(max_leaves=5))
def test_trt_sum_clause(u):
    for rs in representatives().values():
        for w, mu in itertools.product(MODES, ACTIONS):
            assert trt(rs, "x", w, mu, plus(var("x"), u)) == (trt(rs, "x", w, mu, var("x"))
                                                           or trt(rs, "x", w, mu, u))


def _brute_par_free(max_size, names=("x", "y")):
    by_size = {0: {var(n) for n in names}, 1: {NIL}}
    for s in range(1, max_size + 1):
        out = by_size.setdefault(s, set())
        for t in by_size[s - 1]:
            out |= {prefix(mu, t) for mu in ACTIONS}
        for a in range(s):
            for b in range(s - a):
                if a + b + 1 == s:
                    for l in by_size[a]:
                        for r in by_size[b]:
                            out.add(fop(l, r))
                            out.add(plus(l, r))
    return set().union(*by_size.values())


def test_term_generator_against_brute_force():
    got = list(par_free_terms(4))
    assert len(got) == len(set(got))
    assert set(got) == {t for t in _brute_par_free(4) if t.size <= 4}
    sizes = [sum(1 for t in got if t.size == s) for s in range(5)]
    assert sizes[:4] == [2, 14, 124, 1364]


def test_trt_matches_aux_small():
    for rs in representatives().values():
        for t in par_free_terms(4):
            assert trt_matches_aux(rs, t) == []


def test_aux_targets_behave_like_derivative_in_parallel():
    rng = random.Random(5)
    for rs, t, sigma in random_instances(enumerate_admissible(), 200, seed=2):
        for lab, c in aux_step(rs, t):
            name, rest = extract(c)
            assert name == lab.variable and dvars(c) == [name]
            p = rng.choice(TREES)
            assert equivalent(rs, instantiate(c, sigma, p), par(p, apply(sigma, rest)))


def test_o2c_and_c2o_example():
    t, sigma = P("f(x, tau.0)"), {"x": P("a.0")}
    assert (A, P("0 || tau.0")) in step(EXAMPLE, apply(sigma, t))
    assert check_o2c(EXAMPLE, t, sigma) == [] and check_c2o(EXAMPLE, t, sigma) == []


def test_c2o_on_closed_terms_uses_term_moves():
    t = P("f(a.0, a'.0)")
    from ccsf.openterms import explain
    for rs in enumerate_admissible()[::6]:
        for mu, p in step(rs, t):
            if mu.visible:
                assert explain(rs, t, {}, mu, p).startswith("term move")


def test_random_decomposition():
    bad = []
    for rs, t, sigma in random_instances(enumerate_admissible(), 300, seed=11):
        bad += check_o2c(rs, t, sigma) + check_c2o(rs, t, sigma)
    assert bad == []


def test_substitution_lemma():
    for rs, t, sigma in random_instances(enumerate_admissible(), 300, seed=4):
        moves = step(rs, apply(sigma, t))
        for mu, t2 in open_step(rs, t):
            assert (mu, apply(sigma, t2)) in moves


def test_blocked_example():
    rs, t, sigma = blocked_example()
    v = check_trt_depth(rs, t, sigma)
    assert (v.precondition, v.depth_term, v.depth_var) == (False, 2, 3)
    assert not v.inequality and v.consistent


def test_trt_depth_on_variable():
    for p in TREES[:40]:
        v = check_trt_depth(EXAMPLE, var("x"), {"x": p})
        assert v.depth_term == v.depth_var


def test_trt_depth_random_positive():
    held = 0
    for rs, t, sigma in random_instances(enumerate_admissible(), 400, seed=8):
        for x in t.vars:
            v = check_trt_depth(rs, t, sigma, x)
            assert v.consistent, v.to_json()
            held += v.precondition
    assert held > 20


def test_zero_test_matches_grammar_without_right_rules():
    labat = RuleSet.of(ALL, (), {Sync.A_ABAR})
    is_zero = zero_test(labat)
    for t in par_free_terms(4):
        assert is_zero(t) == in_nil_grammar(t)


def test_zero_test_differs_with_right_rules():
    lara = representatives()["LaRa"]
    assert not zero_test(lara)(P("f(0, x)"))
    assert in_nil_grammar(P("f(0, x)"))


def test_zero_test_is_semantic():
    for rs in representatives().values():
        is_zero = zero_test(rs)
        for rs2, t, sigma in random_instances([rs], 100, seed=3, max_size=5):
            if is_zero(t):
                assert STORE.of(rs, apply(sigma, t)) == 0
