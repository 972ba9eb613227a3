import json

import pytest
from hypothesis import given, settings

from ccsf.operators import enumerate_admissible
from ccsf.parser import parse_term
from ccsf.sos import (OpenTermError, RuleSet, RuleSetError, StateCapExceeded, Sync, build_lts,
                      depth, initials, is_admissible, maximal_traces, norm, ruleset_from_json,
                      step, traces, validate)
from ccsf.terms import ACTIONS, Action
from ccsf.witness import ladder, p_proc

from conftest import closed_terms

A, B, T = Action.A, Action.ABAR, Action.TAU
P = parse_term
ALL = {A, B, T}


def test_validate_examples():
    assert validate(RuleSet.of(ALL, (), {Sync.A_ABAR})) == []
    assert validate(RuleSet.of(ALL, ALL, ())) == ["no sync rule"]
    assert validate(RuleSet.of({A}, {B}, {Sync.A_ABAR})) == ["τ has no rule"]


def test_ruleset_json_round_trip():
    for rs in enumerate_admissible():
        assert ruleset_from_json(json.loads(rs.dumps())) == rs


def test_ruleset_json_rejects_unknown_keys_and_values():
    with pytest.raises(RuleSetError):
        ruleset_from_json({"left": ["a"], "right": [], "sync": [], "extra": 1})
    with pytest.raises(RuleSetError):
        ruleset_from_json({"left": ["b"], "right": [], "sync": []})
    with pytest.raises(RuleSetError):
        ruleset_from_json({"left": [], "right": [], "sync": ["a/a"]})


def test_step_par():
    for rs in enumerate_admissible()[::7]:
        assert step(rs, P("a.0 || a'.0")) == {
            (A, P("0 || a'.0")), (B, P("a.0 || 0")), (T, P("0 || 0"))}


def test_step_labat():
    rs = RuleSet.of(ALL, (), {Sync.A_ABAR})
    assert step(rs, P("f(a.0, a'.0)")) == {(A, P("0 || a'.0")), (T, P("0 || 0"))}


def test_step_nil_and_open():
    rs = enumerate_admissible()[0]
    assert step(rs, P("0")) == frozenset()
    with pytest.raises(OpenTermError):
        step(rs, P("a.x + y"))
    with pytest.raises(OpenTermError):
        build_lts(rs, P("x"))


def test_step_matches_rule_table():
    p, q = P("a.0 + a'.0 + tau.0"), P("a.a.0 + a'.0 + tau.0")
    for rs in enumerate_admissible():
        moves = step(rs, P(f"f({p.text}, {q.text})"))
        for mu in ACTIONS:
            from_left = any(m is mu and t.right is q for m, t in moves)
            from_right = any(m is mu and t.left is p for m, t in moves)
            assert from_left == (mu in rs.left)
            assert from_right == (mu in rs.right)
        syncs = {(t.left.text, t.right.text) for m, t in moves if m is T and t.left is not p and t.right is not q}
        want = set()
        if Sync.A_ABAR in rs.sync:
            want.add(("0", "0"))      # a from p, a' from q
        if Sync.ABAR_A in rs.sync:
            want.add(("0", "a.0"))    # a' from p, a from q
        assert syncs == want


def test_build_lts_sizes():
    rs = enumerate_admissible()[0]
    lts = build_lts(rs, P("a.0"))
    assert (len(lts.states), len(lts.transitions)) == (2, 1)
    lts = build_lts(rs, P("a.0 || a'.0"))
    assert {s.text for s in lts.states} == {"a.0 || a'.0", "0 || a'.0", "a.0 || 0", "0 || 0"}
    assert len(lts.transitions) == 5


def test_build_lts_is_deterministic():
    rs = enumerate_admissible()[10]
    t = P("f(a.0 + tau.a'.0, a'.a.0) || a.0")
    assert build_lts(rs, t).to_json() == build_lts(rs, t).to_json()


def test_state_cap():
    rs = enumerate_admissible()[0]
    with pytest.raises(StateCapExceeded):
        build_lts(rs, P("a.0 || a.0 || a.0"), cap=4)


def test_labat_witness_depth():
    rs = RuleSet.of(ALL, (), {Sync.A_ABAR})
    t = P(f"f(a.0, {p_proc(A, 1).text})")
    assert depth(rs, t) == 3
    # trace oracle
    assert max(len(tr) for tr in traces(rs, t)) == 3


def test_depth_norm_basics():
    rs = enumerate_admissible()[0]
    assert depth(rs, P("0")) == 0 and norm(rs, P("0")) == 0
    for mu in ACTIONS:
        for m in range(1, 5):
            assert norm(rs, ladder(mu, m)) == 1
            assert depth(rs, ladder(mu, m)) == m


def test_initials():
    rs = RuleSet.of(ALL, (), {Sync.A_ABAR})
    assert initials(rs, P("f(a'.0, a.0)")) == {B}
    assert initials(rs, P("f(a.0, a'.0)")) == {A, T}


@settings(max_examples=60, deadline=None)
@given(closed_terms(max_leaves=5), closed_terms(max_leaves=5))
def test_depth_of_par_and_f(p, q):
    for rs in enumerate_admissible()[::9]:
        assert depth(rs, P(f"({p.text}) || ({q.text})")) == depth(rs, p) + depth(rs, q)
        assert depth(rs, P(f"f({p.text}, {q.text})")) <= depth(rs, p) + depth(rs, q)


@settings(max_examples=60, deadline=None)
@given(closed_terms(max_leaves=5))
def test_depth_and_norm_agree_with_traces(p):
    rs = enumerate_admissible()[40]
    mt = maximal_traces(rs, p)
    assert depth(rs, p) == max(len(t) for t in traces(rs, p))
    assert norm(rs, p) == min(len(t) for t in mt)


def test_admissible_count():
    from itertools import product
    subsets = [frozenset(s) for k in range(4) for s in __import__("itertools").combinations(ACTIONS, k)]
    syncs = [frozenset(s) for k in range(3) for s in __import__("itertools").combinations(Sync, k)]
    n = sum(is_admissible(RuleSet(l, r, s)) for l, r, s in product(subsets, subsets, syncs))
    assert n == 81
