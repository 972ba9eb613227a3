"""Bisimilarity, bounded soundness testing and prime decomposition.

Two independent routes decide bisimilarity of closed terms:

* ``bisim`` builds the joint transition system and runs partition
  refinement on it;
* ``ProcessStore`` evaluates terms compositionally into canonical
  synchronisation trees (sets of ``(action, child)`` pairs, hash-consed to
  integers).  Since every closed term has a finite acyclic LTS and
  bisimilarity is a congruence, two terms are bisimilar exactly when they
  evaluate to the same integer.  This is what bulk checks use.
"""
from __future__ import annotations

import itertools
import math
import time
from dataclasses import dataclass, field
from typing import Iterator, Mapping, Sequence

from .sos import RuleSet, build_lts, joint_lts, step
from .terms import (ACTIONS, NIL, Action, F, Nil, Par, Prefix, Sum, Term, Var,
                    plus, prefix)

# ------------------------------------------------------------ partition refinement


@dataclass
class BisimResult:
    equivalent: bool
    witness: str | None = None
    partition: list[list[str]] | None = None

    def __bool__(self) -> bool:
        return self.equivalent


def refine(succ: Sequence[Sequence[tuple[Action, int]]]) -> list[list[int]]:
    """Naive iterative signature refinement.

    Returns the block assignment after every round; the last entry is the
    coarsest bisimulation.
    """
    n = len(succ)
    blocks = [0] * n
    rounds = [blocks]
    count = 1
    while True:
        sigs: dict = {}
        new = []
        for s in range(n):
            sig = (blocks[s], frozenset((mu, blocks[t]) for mu, t in succ[s]))
            new.append(sigs.setdefault(sig, len(sigs)))
        rounds.append(new)
        blocks = new
        if len(sigs) == count:
            return rounds
        count = len(sigs)


def _distinguish(succ, rounds, s: int, t: int) -> str:
    """Hennessy-Milner formula satisfied by ``s`` and not by ``t``."""
    k = next(i for i, b in enumerate(rounds) if b[s] != b[t])
    prev = rounds[k - 1]
    for x, y, negate in ((s, t, False), (t, s, True)):
        for mu, x2 in succ[x]:
            ys = [y2 for nu, y2 in succ[y] if nu is mu]
            if all(prev[y2] != prev[x2] for y2 in ys):
                parts = list(dict.fromkeys(_distinguish(succ, rounds, x2, y2) for y2 in ys))
                body = " & ".join(parts) if parts else "tt"
                phi = f"<{mu.value}>({body})" if len(parts) > 1 else f"<{mu.value}>{body}"
                return f"!{phi}" if negate else phi
    raise AssertionError("states were not distinguished")


def bisim(rs: RuleSet, p: Term, q: Term, cap: int | None = None) -> BisimResult:
    lts, i, j = joint_lts(rs, p, q, **({"cap": cap} if cap else {}))
    succ = lts.successors()
    rounds = refine(succ)
    final = rounds[-1]
    if final[i] == final[j]:
        groups: dict[int, list[str]] = {}
        for s, b in enumerate(final):
            groups.setdefault(b, []).append(lts.states[s].text)
        return BisimResult(True, None, list(groups.values()))
    return BisimResult(False, _distinguish(succ, rounds, i, j))


def naive_bisimilar(succ: Sequence[Sequence[tuple[Action, int]]], s: int, t: int) -> bool:
    """Greatest fixed point over all state pairs.  Quadratic; use on small LTSs."""
    n = len(succ)
    rel = {(x, y) for x in range(n) for y in range(n)}
    changed = True
    while changed:
        changed = False
        for x, y in list(rel):
            ok = all(any(nu is mu and (x2, y2) in rel for nu, y2 in succ[y]) for mu, x2 in succ[x])
            ok = ok and all(any(nu is mu and (x2, y2) in rel for nu, x2 in succ[x]) for mu, y2 in succ[y])
            if not ok:
                rel.discard((x, y))
                changed = True
    return (s, t) in rel


# ------------------------------------------------------------ canonical trees


class ProcessStore:
    """Hash-consed canonical synchronisation trees.

    A class id stands for a bisimilarity class of finite processes; id 0 is
    the class of 0.  ``succ[c]`` is the set of ``(action, class)`` moves.
    """

    def __init__(self):
        self.succ: list[frozenset[tuple[Action, int]]] = []
        self._index: dict[frozenset, int] = {}
        self._depth: list[int] = []
        self._par: dict[tuple[int, int], int] = {}
        self._f: dict[tuple[RuleSet, int, int], int] = {}
        self._terms: dict[tuple[RuleSet, Term], int] = {}
        self.intern(frozenset())

    def clear_memo(self):
        self._par.clear()
        self._f.clear()
        self._terms.clear()

    def __len__(self):
        return len(self.succ)

    def intern(self, moves: frozenset) -> int:
        c = self._index.get(moves)
        if c is None:
            c = self._index[moves] = len(self.succ)
            self.succ.append(moves)
            self._depth.append(1 + max((self._depth[d] for _, d in moves), default=-1))
        return c

    def depth(self, c: int) -> int:
        return self._depth[c]

    def initials(self, c: int) -> frozenset[Action]:
        return frozenset(mu for mu, _ in self.succ[c])

    def prefix(self, mu: Action, c: int) -> int:
        return self.intern(frozenset(((mu, c),)))

    def sum(self, *cs: int) -> int:
        if len(cs) == 1:
            return cs[0]
        return self.intern(frozenset().union(*(self.succ[c] for c in cs)))

    def par(self, c1: int, c2: int) -> int:
        if c1 == 0:
            return c2
        if c2 == 0:
            return c1
        key = (c1, c2) if c1 <= c2 else (c2, c1)
        r = self._par.get(key)
        if r is None:
            s1, s2 = self.succ[c1], self.succ[c2]
            out = {(mu, self.par(d, c2)) for mu, d in s1}
            out |= {(mu, self.par(c1, d)) for mu, d in s2}
            for mu, d1 in s1:
                if mu is not Action.TAU:
                    cm = mu.complement()
                    out |= {(Action.TAU, self.par(d1, d2)) for nu, d2 in s2 if nu is cm}
            r = self._par[key] = self.intern(frozenset(out))
        return r

    def f(self, rs: RuleSet, c1: int, c2: int) -> int:
        key = (rs, c1, c2)
        r = self._f.get(key)
        if r is None:
            s1, s2 = self.succ[c1], self.succ[c2]
            out = {(mu, self.par(d, c2)) for mu, d in s1 if mu in rs.left}
            out |= {(mu, self.par(c1, d)) for mu, d in s2 if mu in rs.right}
            for sy in rs.sync:
                la, ra = sy.pair
                for mu, d1 in s1:
                    if mu is la:
                        out |= {(Action.TAU, self.par(d1, d2)) for nu, d2 in s2 if nu is ra}
            r = self._f[key] = self.intern(frozenset(out))
        return r

    def of(self, rs: RuleSet, t: Term, env: Mapping[str, int] | None = None) -> int:
        """Class of ``t`` with variables interpreted by ``env``."""
        if not t.vars:
            key = (rs, t)
            c = self._terms.get(key)
            if c is None:
                c = self._terms[key] = self._eval(rs, t, env)
            return c
        if env is None:
            raise ValueError(f"term has free variables {sorted(t.vars)}")
        return self._eval(rs, t, env)

    def _eval(self, rs, t, env):
        if isinstance(t, Nil):
            return 0
        if isinstance(t, Var):
            try:
                return env[t.name]
            except (KeyError, TypeError):
                raise ValueError(f"no value for variable {t.name}") from None
        if isinstance(t, Prefix):
            return self.prefix(t.action, self.of(rs, t.body, env))
        if isinstance(t, Sum):
            return self.sum(*(self.of(rs, a, env) for a in t.args))
        if isinstance(t, Par):
            return self.par(self.of(rs, t.left, env), self.of(rs, t.right, env))
        assert isinstance(t, F)
        return self.f(rs, self.of(rs, t.left, env), self.of(rs, t.right, env))

    def compile(self, rs: RuleSet, t: Term, names: Sequence[str]):
        """Function from a tuple of class ids (one per name) to the class of ``t``."""
        if not t.vars:
            c = self.of(rs, t)
            return lambda env: c
        if isinstance(t, Var):
            i = list(names).index(t.name)
            return lambda env: env[i]
        if isinstance(t, Prefix):
            body, mu = self.compile(rs, t.body, names), t.action
            return lambda env: self.prefix(mu, body(env))
        if isinstance(t, Sum):
            parts = [self.compile(rs, a, names) for a in t.args]
            return lambda env: self.sum(*(g(env) for g in parts))
        left, right = self.compile(rs, t.left, names), self.compile(rs, t.right, names)
        if isinstance(t, Par):
            return lambda env: self.par(left(env), right(env))
        f = self.f
        return lambda env: f(rs, left(env), right(env))

    def tree(self, c: int) -> Term:
        """Canonical synchronisation tree for a class."""
        return plus(*(prefix(mu, self.tree(d)) for mu, d in self.succ[c]))

    def reachable(self, c: int) -> set[int]:
        seen = {c}
        todo = [c]
        while todo:
            for _, d in self.succ[todo.pop()]:
                if d not in seen:
                    seen.add(d)
                    todo.append(d)
        return seen


STORE = ProcessStore()


def equivalent(rs: RuleSet, p: Term, q: Term) -> bool:
    """Fast bisimilarity test through canonical trees."""
    return STORE.of(rs, p) == STORE.of(rs, q)


def expand_par(rs: RuleSet, p: Term) -> Term:
    """Head normal form ``sum mu_i.p_i`` read off the transitions of ``p``."""
    return plus(*(prefix(mu, q) for mu, q in step(rs, p)))


# ------------------------------------------------------------ tree enumeration


@dataclass(frozen=True)
class SyncTreeEnumerator:
    """Synchronisation trees up to bisimilarity.

    A tree has depth at most ``max_depth`` and every node has at most
    ``max_width`` distinct outgoing branches.  Trees are produced by
    increasing depth and, within a depth, by increasing branching at the
    root, so small trees come first.
    """

    max_depth: int = 3
    max_width: int = 3

    def count(self) -> int:
        n = 1
        for _ in range(self.max_depth):
            n = sum(math.comb(len(ACTIONS) * n, k) for k in range(self.max_width + 1))
        return n

    def _layer(self, prev: list[int], fresh_from: int) -> Iterator[int]:
        items = [(mu, c) for c in prev for mu in ACTIONS]
        # items whose child is new at the previous depth start here
        split = fresh_from * len(ACTIONS)
        for k in range(1, self.max_width + 1):
            for combo in itertools.combinations(range(len(items)), k):
                if combo[-1] >= split:
                    yield STORE.intern(frozenset(items[i] for i in combo))

    def classes(self) -> Iterator[int]:
        level = [0]
        yield 0
        for d in range(1, self.max_depth + 1):
            fresh_from = 0 if d == 1 else prev_len
            prev_len = len(level)
            new = []
            for c in self._layer(level, fresh_from):
                new.append(c)
                yield c
            level = level + new

    def materialize(self) -> list[int]:
        return list(self.classes())

    def trees(self) -> Iterator[Term]:
        for c in self.classes():
            yield STORE.tree(c)


# ------------------------------------------------------------ bounded soundness


@dataclass
class SoundVerdict:
    refuted: bool
    substitution: dict[str, Term] | None = None
    checked: int = 0
    complete: bool = True
    lhs_witness: str | None = None

    @property
    def status(self) -> str:
        if self.refuted:
            return "refuted"
        return "no-counterexample" if self.complete else "budget-exhausted"

    def to_json(self) -> dict:
        out = {"status": self.status, "checked": self.checked}
        if self.substitution is not None:
            out["substitution"] = {k: v.text for k, v in sorted(self.substitution.items())}
        return out


def diagonal_tuples(stream: Iterator[int], k: int) -> Iterator[tuple[int, ...]]:
    """All k-tuples over a stream, ordered by the position of their last-seen element."""
    seen: list[int] = []
    for item in stream:
        seen.append(item)
        i = len(seen) - 1
        if k == 0:
            return
        for j in range(k):
            pools = [range(i)] * j + [(i,)] + [range(i + 1)] * (k - j - 1)
            for idx in itertools.product(*pools):
                yield tuple(seen[x] for x in idx)
    if k == 0:
        yield ()


def sound(rs: RuleSet, lhs: Term, rhs: Term, enum: SyncTreeEnumerator | None = None,
          budget: float | None = None, domain: Sequence[int] | None = None) -> SoundVerdict:
    """Search for a closed substitution of trees separating ``lhs`` and ``rhs``.

    ``budget`` is a wall-clock limit in seconds; when it runs out the verdict
    is marked incomplete.  ``domain`` overrides the enumerator with an explicit
    list of class ids.
    """
    enum = enum or SyncTreeEnumerator()
    names = sorted(lhs.vars | rhs.vars)
    stream = iter(domain) if domain is not None else enum.classes()
    deadline = time.monotonic() + budget if budget else None
    checked = 0
    left, right = STORE.compile(rs, lhs, names), STORE.compile(rs, rhs, names)
    for combo in diagonal_tuples(stream, len(names)):
        checked += 1
        if left(combo) != right(combo):
            sigma = {n: STORE.tree(c) for n, c in zip(names, combo)}
            return SoundVerdict(True, sigma, checked)
        if deadline and checked % 512 == 0 and time.monotonic() > deadline:
            return SoundVerdict(False, None, checked, complete=False)
    return SoundVerdict(False, None, checked)


# ------------------------------------------------------------ primes


class BoundsExceeded(ValueError):
    pass


def factor_pairs(c: int) -> list[tuple[int, int]]:
    """Pairs (q, r) of non-trivial classes with ``q || r`` equal to ``c``.

    Any factor of ``c`` is bisimilar to a reachable state of ``c`` (let the
    other factor run to completion), so the reachable classes are a complete
    candidate set.
    """
    dc = STORE.depth(c)
    cands = [d for d in STORE.reachable(c) if d != 0 and STORE.depth(d) < dc]
    by_depth: dict[int, list[int]] = {}
    for d in cands:
        by_depth.setdefault(STORE.depth(d), []).append(d)
    out = []
    for q in cands:
        for r in by_depth.get(dc - STORE.depth(q), ()):
            if q <= r and STORE.par(q, r) == c:
                out.append((q, r))
    return out


def _class_is_prime(c: int) -> bool:
    return c != 0 and not factor_pairs(c)


def is_prime(rs: RuleSet, p: Term, factor_enum: SyncTreeEnumerator | None = None) -> bool:
    """Primality; with ``factor_enum`` the candidate factors are enumerated trees."""
    c = STORE.of(rs, p)
    if c == 0:
        return False
    if factor_enum is None:
        return _class_is_prime(c)
    dc = STORE.depth(c)
    if dc > factor_enum.max_depth + 1:
        raise BoundsExceeded(f"depth {dc} needs factors beyond enumerator depth {factor_enum.max_depth}")
    pool = [d for d in factor_enum.classes() if d != 0 and STORE.depth(d) < dc]
    by_depth: dict[int, list[int]] = {}
    for d in pool:
        by_depth.setdefault(STORE.depth(d), []).append(d)
    for q in pool:
        for r in by_depth.get(dc - STORE.depth(q), ()):
            if STORE.par(q, r) == c:
                return False
    return True


_FACTORISATIONS: dict[int, frozenset[tuple[int, ...]]] = {}


def factorisations(c: int) -> frozenset[tuple[int, ...]]:
    """Every multiset of prime classes (sorted tuples) whose composition is ``c``."""
    r = _FACTORISATIONS.get(c)
    if r is None:
        if c == 0:
            r = frozenset({()})
        else:
            pairs = factor_pairs(c)
            if not pairs:
                r = frozenset({(c,)})
            else:
                out = set()
                for q, s in pairs:
                    for fq in factorisations(q):
                        for fs in factorisations(s):
                            out.add(tuple(sorted(fq + fs)))
                r = frozenset(out)
        _FACTORISATIONS[c] = r
    return r


def prime_decompose(rs: RuleSet, p: Term, factor_enum: SyncTreeEnumerator | None = None) -> list[Term]:
    """Primes whose parallel composition is bisimilar to ``p``.

    A prime input is returned as is; other factors are given as canonical
    synchronisation trees.
    """
    c = STORE.of(rs, p)
    if factor_enum is not None and STORE.depth(c) > factor_enum.max_depth + 1:
        raise BoundsExceeded(f"depth {STORE.depth(c)} beyond enumerator depth {factor_enum.max_depth}")
    if c == 0:
        return []
    if _class_is_prime(c):
        return [p]
    fs = min(factorisations(c))
    return [STORE.tree(d) for d in fs]


def compose(classes: Sequence[int]) -> int:
    out = 0
    for c in classes:
        out = STORE.par(out, c)
    return out
