"""Rule sets for f and the transition relation of closed terms."""
from __future__ import annotations

import enum
import json
from collections import deque
from dataclasses import dataclass, field
from functools import lru_cache
from typing import Iterable

from .terms import (ACTIONS, Action, F, Nil, Par, Prefix, Sum, Term, Var,
                    action_from_str, par)


class Sync(str, enum.Enum):
    A_ABAR = "a/a'"  # left argument does a, right does a'
    ABAR_A = "a'/a"

    @property
    def pair(self) -> tuple[Action, Action]:
        if self is Sync.A_ABAR:
            return Action.A, Action.ABAR
        return Action.ABAR, Action.A

    def __str__(self) -> str:
        return self.value


def sync_for(left_action: Action) -> Sync:
    return Sync.A_ABAR if left_action is Action.A else Sync.ABAR_A


@dataclass(frozen=True)
class RuleSet:
    left: frozenset[Action] = frozenset()
    right: frozenset[Action] = frozenset()
    sync: frozenset[Sync] = frozenset()

    @classmethod
    def of(cls, left: Iterable = (), right: Iterable = (), sync: Iterable = ()) -> "RuleSet":
        return cls(frozenset(Action(a) for a in left),
                   frozenset(Action(a) for a in right),
                   frozenset(Sync(s) for s in sync))

    def L(self, mu: Action) -> bool:
        return mu in self.left

    def R(self, mu: Action) -> bool:
        return mu in self.right

    def to_json(self) -> dict:
        order = {a: i for i, a in enumerate(ACTIONS)}
        return {
            "left": [a.value for a in sorted(self.left, key=order.get)],
            "right": [a.value for a in sorted(self.right, key=order.get)],
            "sync": [s.value for s in Sync if s in self.sync],
        }

    def dumps(self) -> str:
        return json.dumps(self.to_json())

    def label(self) -> str:
        j = self.to_json()
        return "L{%s} R{%s} S{%s}" % (",".join(j["left"]), ",".join(j["right"]), ",".join(j["sync"]))

    def mirrored(self) -> "RuleSet":
        """Rule set of ``f'(x, y) = f(y, x)``."""
        flip = {Sync.A_ABAR: Sync.ABAR_A, Sync.ABAR_A: Sync.A_ABAR}
        return RuleSet(self.right, self.left, frozenset(flip[s] for s in self.sync))

    def bar_renamed(self) -> "RuleSet":
        """Rule set after exchanging a and a' everywhere."""
        sw = {Action.A: Action.ABAR, Action.ABAR: Action.A, Action.TAU: Action.TAU}
        flip = {Sync.A_ABAR: Sync.ABAR_A, Sync.ABAR_A: Sync.A_ABAR}
        return RuleSet(frozenset(sw[a] for a in self.left),
                       frozenset(sw[a] for a in self.right),
                       frozenset(flip[s] for s in self.sync))


class RuleSetError(ValueError):
    pass


def ruleset_from_json(obj) -> RuleSet:
    if not isinstance(obj, dict):
        raise RuleSetError("rule set must be a JSON object")
    unknown = set(obj) - {"left", "right", "sync"}
    if unknown:
        raise RuleSetError(f"unknown key(s): {', '.join(sorted(unknown))}")
    try:
        left = [action_from_str(a) for a in obj.get("left", [])]
        right = [action_from_str(a) for a in obj.get("right", [])]
    except (ValueError, TypeError) as e:
        raise RuleSetError(str(e)) from None
    sync = []
    for s in obj.get("sync", []):
        try:
            sync.append(Sync(s))
        except ValueError:
            raise RuleSetError(f"unknown sync rule {s!r}; expected \"a/a'\" or \"a'/a\"") from None
    return RuleSet(frozenset(left), frozenset(right), frozenset(sync))


def load_ruleset(path) -> RuleSet:
    with open(path) as fh:
        try:
            obj = json.load(fh)
        except json.JSONDecodeError as e:
            raise RuleSetError(f"{path}: line {e.lineno} column {e.colno}: {e.msg}") from None
    return ruleset_from_json(obj)


def validate(rs: RuleSet) -> list[str]:
    """Violated admissibility clauses; empty means admissible."""
    problems = []
    for mu in ACTIONS:
        if mu not in rs.left and mu not in rs.right:
            problems.append(f"{'τ' if mu is Action.TAU else mu.value} has no rule")
    if not rs.sync:
        problems.append("no sync rule")
    return problems


def is_admissible(rs: RuleSet) -> bool:
    return not validate(rs)


# ------------------------------------------------------------------ step

class OpenTermError(ValueError):
    pass


@lru_cache(maxsize=1 << 18)
def step(rs: RuleSet, p: Term) -> frozenset[tuple[Action, Term]]:
    """One-step derivatives of a closed term."""
    if isinstance(p, Nil):
        return frozenset()
    if isinstance(p, Var):
        raise OpenTermError(f"variable {p.name} has no transitions; term must be closed")
    if isinstance(p, Prefix):
        return frozenset(((p.action, p.body),))
    if isinstance(p, Sum):
        out: set = set()
        for s in p.args:
            out |= step(rs, s)
        return frozenset(out)
    if isinstance(p, Par):
        ls, rs_ = step(rs, p.left), step(rs, p.right)
        out = {(mu, par(l2, p.right)) for mu, l2 in ls}
        out |= {(mu, par(p.left, r2)) for mu, r2 in rs_}
        for mu, l2 in ls:
            if mu.visible:
                cm = mu.complement()
                out |= {(Action.TAU, par(l2, r2)) for nu, r2 in rs_ if nu is cm}
        return frozenset(out)
    assert isinstance(p, F)
    ls, rs_ = step(rs, p.left), step(rs, p.right)
    out = {(mu, par(l2, p.right)) for mu, l2 in ls if mu in rs.left}
    out |= {(mu, par(p.left, r2)) for mu, r2 in rs_ if mu in rs.right}
    for s in rs.sync:
        lact, ract = s.pair
        for mu, l2 in ls:
            if mu is lact:
                out |= {(Action.TAU, par(l2, r2)) for nu, r2 in rs_ if nu is ract}
    return frozenset(out)


class StateCapExceeded(RuntimeError):
    pass


@dataclass
class Lts:
    states: list[Term]
    transitions: list[tuple[int, Action, int]]
    root: int = 0
    index: dict = field(default_factory=dict, repr=False)

    def successors(self) -> list[list[tuple[Action, int]]]:
        succ: list[list] = [[] for _ in self.states]
        for s, mu, t in self.transitions:
            succ[s].append((mu, t))
        return succ

    def to_json(self) -> dict:
        return {
            "root": self.root,
            "states": [s.text for s in self.states],
            "transitions": [[s, mu.value, t] for s, mu, t in self.transitions],
        }


DEFAULT_STATE_CAP = 10**6


def build_lts(rs: RuleSet, p: Term, cap: int = DEFAULT_STATE_CAP) -> Lts:
    if p.vars:
        raise OpenTermError(f"term has free variables {sorted(p.vars)}")
    index = {p: 0}
    states = [p]
    trans = []
    todo = deque([p])
    while todo:
        s = todo.popleft()
        si = index[s]
        for mu, t in sorted(step(rs, s), key=lambda e: (e[0].value, e[1].text)):
            ti = index.get(t)
            if ti is None:
                if len(states) >= cap:
                    raise StateCapExceeded(f"state space exceeds {cap} states")
                ti = index[t] = len(states)
                states.append(t)
                todo.append(t)
            trans.append((si, mu, ti))
    return Lts(states, trans, 0, index)


def joint_lts(rs: RuleSet, p: Term, q: Term, cap: int = DEFAULT_STATE_CAP) -> tuple[Lts, int, int]:
    """LTS containing both roots; returns (lts, index of p, index of q)."""
    a = build_lts(rs, p, cap)
    index = dict(a.index)
    states = list(a.states)
    trans = list(a.transitions)
    todo = deque()
    if q not in index:
        index[q] = len(states)
        states.append(q)
        todo.append(q)
    while todo:
        s = todo.popleft()
        si = index[s]
        for mu, t in sorted(step(rs, s), key=lambda e: (e[0].value, e[1].text)):
            ti = index.get(t)
            if ti is None:
                if len(states) >= cap:
                    raise StateCapExceeded(f"state space exceeds {cap} states")
                ti = index[t] = len(states)
                states.append(t)
                todo.append(t)
            trans.append((si, mu, ti))
    return Lts(states, trans, 0, index), 0, index[q]


def _longest_shortest(lts: Lts) -> tuple[list[int], list[int]]:
    succ = lts.successors()
    n = len(lts.states)
    longest = [-1] * n
    shortest = [-1] * n
    # the LTS is acyclic; iterative post-order
    for root in range(n):
        if longest[root] >= 0:
            continue
        stack = [(root, False)]
        while stack:
            s, expanded = stack.pop()
            if longest[s] >= 0:
                continue
            if expanded:
                if succ[s]:
                    longest[s] = 1 + max(longest[t] for _, t in succ[s])
                    shortest[s] = 1 + min(shortest[t] for _, t in succ[s])
                else:
                    longest[s] = shortest[s] = 0
                continue
            stack.append((s, True))
            stack.extend((t, False) for _, t in succ[s] if longest[t] < 0)
    return longest, shortest


def depth(rs: RuleSet, p: Term) -> int:
    return _longest_shortest(build_lts(rs, p))[0][0]


def norm(rs: RuleSet, p: Term) -> int:
    return _longest_shortest(build_lts(rs, p))[1][0]


def initials(rs: RuleSet, p: Term) -> frozenset[Action]:
    return frozenset(mu for mu, _ in step(rs, p))


def traces(rs: RuleSet, p: Term) -> set[tuple[Action, ...]]:
    """All traces, including the empty one."""
    lts = build_lts(rs, p)
    succ = lts.successors()
    memo: dict[int, set] = {}

    def go(s):
        if s not in memo:
            out = {()}
            for mu, t in succ[s]:
                out |= {(mu,) + tr for tr in go(t)}
            memo[s] = out
        return memo[s]
    return go(lts.root)


def maximal_traces(rs: RuleSet, p: Term) -> set[tuple[Action, ...]]:
    lts = build_lts(rs, p)
    succ = lts.successors()
    memo: dict[int, set] = {}

    def go(s):
        if s not in memo:
            if not succ[s]:
                memo[s] = {()}
            else:
                memo[s] = {(mu,) + tr for mu, t in succ[s] for tr in go(t)}
        return memo[s]
    return go(lts.root)
