"""Open terms: configurations, the auxiliary transitions that let a variable's
closed instance drive a move of the surrounding term, and the unguarded
occurrence relation x |>^w_mu t."""
from __future__ import annotations

import itertools
import random
from dataclasses import dataclass
from functools import lru_cache
from typing import Iterator, Mapping, NamedTuple, Union

from .semantics import STORE, SyncTreeEnumerator
from .sos import RuleSet, step
from .terms import (ACTIONS, NIL, Action, F, Nil, Par, Prefix, Sum, Term, Var,
                    apply, fop, par, plus, prefix, var, zero_clean)

MODES = ("l", "r", "b")


# ------------------------------------------------------------ configurations


@dataclass(frozen=True)
class Plain:
    term: Term

    def __str__(self) -> str:
        return self.term.text


@dataclass(frozen=True)
class DVar:
    name: str

    def __str__(self) -> str:
        return f"{self.name}_d"


@dataclass(frozen=True)
class ParLeft:
    conf: "Configuration"
    term: Term

    def __str__(self) -> str:
        return f"{_wrap(self.conf)} || {self.term.wrap(2)}"


@dataclass(frozen=True)
class ParRight:
    term: Term
    conf: "Configuration"

    def __str__(self) -> str:
        return f"{self.term.wrap(1)} || {_wrap(self.conf)}"


Configuration = Union[Plain, DVar, ParLeft, ParRight]


def _wrap(c: "Configuration") -> str:
    return str(c) if isinstance(c, DVar) else f"({c})"


class AuxLabel(NamedTuple):
    variable: str
    mode: str
    action: Action

    def __str__(self) -> str:
        return f"{self.variable}_{self.mode}/{self.action.value}"


@lru_cache(maxsize=None)
def _modes(rs: RuleSet) -> tuple[tuple[str, Action], ...]:
    return tuple((w, mu) for w in MODES for mu in ACTIONS if mode_holds(rs, w, mu))


def mode_holds(rs: RuleSet, mode: str, mu: Action) -> bool:
    if mode == "l":
        return rs.L(mu)
    if mode == "r":
        return rs.R(mu)
    if mode == "b":
        return rs.L(mu) and rs.R(mu)
    raise ValueError(f"unknown mode {mode!r}")


def mode_for(rs: RuleSet, mu: Action) -> str:
    """The single mode matching the rules available for ``mu``."""
    left, right = rs.L(mu), rs.R(mu)
    if left and right:
        return "b"
    if left:
        return "l"
    if right:
        return "r"
    raise ValueError(f"f has no rule for {mu.value}")


def _par_free(t: Term) -> None:
    if isinstance(t, Par) or "||" in t.text:
        raise ValueError(f"term must be free of ||: {t.text}")


def dvars(c: Configuration) -> list[str]:
    if isinstance(c, DVar):
        return [c.name]
    if isinstance(c, Plain):
        return []
    return dvars(c.conf)


def instantiate(c: Configuration, sigma: Mapping[str, Term], p: Term) -> Term:
    """``sigma[x_d -> p](c)``"""
    if isinstance(c, DVar):
        return p
    if isinstance(c, Plain):
        return apply(sigma, c.term)
    if isinstance(c, ParLeft):
        return par(instantiate(c.conf, sigma, p), apply(sigma, c.term))
    return par(apply(sigma, c.term), instantiate(c.conf, sigma, p))


def extract(c: Configuration) -> tuple[str, Term] | None:
    """Read ``c`` as ``x_d || t'`` (up to commutativity and associativity of ||).
    None if ``c`` does not hold exactly one derivative variable.  Agrees with
    ``dvars(c) == [x]`` on whether it succeeds."""
    if isinstance(c, DVar):
        return c.name, NIL
    if isinstance(c, Plain):
        return None
    inner = extract(c.conf)
    if inner is None:
        return None
    name, rest = inner
    return name, c.term if rest is NIL else par(rest, c.term)


# ------------------------------------------------------------ transitions


@lru_cache(maxsize=1 << 16)
def _aux(rs: RuleSet, t: Term) -> tuple[tuple[AuxLabel, Configuration], ...]:
    """One entry per derivation of rules a1-a9."""
    if isinstance(t, Var):
        d = DVar(t.name)
        return tuple((AuxLabel(t.name, w, mu), d) for w, mu in _modes(rs))
    if isinstance(t, Sum):
        return tuple(itertools.chain.from_iterable(_aux(rs, s) for s in t.args))
    if isinstance(t, F):
        right = t.right
        out = [(lab, ParLeft(c, right)) for lab, c in _aux(rs, t.left) if lab.mode != "r"]
        left = t.left
        out += [(lab, ParRight(left, c)) for lab, c in _aux(rs, t.right) if lab.mode != "l"]
        return tuple(out)
    return ()  # 0 and prefixes guard everything below them


def aux_step(rs: RuleSet, t: Term) -> frozenset[tuple[AuxLabel, Configuration]]:
    """All auxiliary transitions ``t --x_w/mu--> c``."""
    _par_free(t)
    return frozenset(_aux(rs, t))


@lru_cache(maxsize=None)
def open_step(rs: RuleSet, t: Term) -> frozenset[tuple[Action, Term]]:
    """Transitions of an open term; variables are inert."""
    if isinstance(t, (Nil, Var)):
        return frozenset()
    if isinstance(t, Prefix):
        return frozenset(((t.action, t.body),))
    if isinstance(t, Sum):
        return frozenset().union(*(open_step(rs, s) for s in t.args))
    ls, rs_ = open_step(rs, t.left), open_step(rs, t.right)
    if isinstance(t, Par):
        out = {(mu, par(l2, t.right)) for mu, l2 in ls}
        out |= {(mu, par(t.left, r2)) for mu, r2 in rs_}
        out |= {(Action.TAU, par(l2, r2)) for mu, l2 in ls if mu.visible
                for nu, r2 in rs_ if nu is mu.complement()}
        return frozenset(out)
    out = {(mu, par(l2, t.right)) for mu, l2 in ls if rs.L(mu)}
    out |= {(mu, par(t.left, r2)) for mu, r2 in rs_ if rs.R(mu)}
    for s in rs.sync:
        la, ra = s.pair
        out |= {(Action.TAU, par(l2, r2)) for mu, l2 in ls if mu is la
                for nu, r2 in rs_ if nu is ra}
    return frozenset(out)


@lru_cache(maxsize=1 << 16)
def _unguarded(t: Term) -> tuple[frozenset, frozenset, frozenset]:
    """Variables reaching the top of ``t`` through sums and, respectively,
    first arguments of f only, second arguments only, or either argument.
    These are the positions allowed by clauses 4-7."""
    if isinstance(t, Var):
        v = frozenset((t.name,))
        return v, v, v
    if isinstance(t, Sum):
        parts = [_unguarded(s) for s in t.args]
        return tuple(frozenset().union(*(p[i] for p in parts)) for i in range(3))
    if isinstance(t, F):
        left, right = _unguarded(t.left), _unguarded(t.right)
        return left[0], right[1], left[2] | right[2]
    if isinstance(t, Par):
        raise ValueError(f"term must be free of ||: {t.text}")
    return frozenset(), frozenset(), frozenset()


def trt(rs: RuleSet, x: str, mode: str, mu: Action, t: Term) -> bool:
    """``x |>^mode_mu t``: clauses 1-3 at the variable, 4 through sums,
    5-7 through the arguments of f."""
    return mode_holds(rs, mode, mu) and x in _unguarded(t)[MODES.index(mode)]


def trt_table(rs: RuleSet, x: str, t: Term) -> list[tuple[str, Action]]:
    return [(w, mu) for w in MODES for mu in ACTIONS if trt(rs, x, w, mu, t)]


def trt_relation(rs: RuleSet, t: Term) -> frozenset[AuxLabel]:
    """Every ``(x, w, mu)`` with ``x |>^w_mu t``."""
    occ = dict(zip(MODES, _unguarded(t)))
    return frozenset(AuxLabel(x, w, mu) for w, mu in _modes(rs) for x in occ[w])


def trt_matches_aux(rs: RuleSet, t: Term) -> list[dict]:
    """Disagreements between |> and the auxiliary transitions whose target
    has the shape ``x_d || t'``."""
    _par_free(t)
    shaped = {lab for lab, c in _aux(rs, t) if dvars(c) == [lab.variable]}
    rel = trt_relation(rs, t)
    return [{"term": t.text, "var": lab.variable, "mode": lab.mode, "action": lab.action.value,
             "trt": lab in rel, "aux": lab in shaped}
            for lab in sorted(rel.symmetric_difference(shaped), key=str)]


UNIVERSAL = plus(prefix(Action.A, NIL), prefix(Action.ABAR, NIL), prefix(Action.TAU, NIL))


def zero_test(rs: RuleSet):
    """Predicate ``t <-> 0`` for every closed instance of ``t``.  Rules have
    no negative premises, so an instance can move initially iff the one
    sending every variable to ``a + a' + tau`` can."""
    def is_zero(t: Term) -> bool:
        sigma = {x: UNIVERSAL for x in t.vars}
        return STORE.initials(STORE.of(rs, apply(sigma, t))) == frozenset()
    return is_zero


# ------------------------------------------------------------ decomposition checks


@dataclass
class Unexplained:
    kind: str
    term: str
    action: str
    target: str
    detail: str = ""

    def to_json(self) -> dict:
        return self.__dict__.copy()


def check_o2c(rs: RuleSet, t: Term, sigma: Mapping[str, Term]) -> list[Unexplained]:
    """Every auxiliary transition combined with a matching move of the
    variable's instance must be a transition of ``sigma(t)``."""
    closed = apply(sigma, t)
    moves = step(rs, closed)
    out = []
    for lab, c in aux_step(rs, t):
        for mu, q in step(rs, sigma[lab.variable]):
            if mu is not lab.action:
                continue
            p = instantiate(c, sigma, q)
            if (mu, p) not in moves:
                out.append(Unexplained("o2c", closed.text, mu.value, p.text, f"{lab} to {c}"))
    return out


def explain(rs: RuleSet, t: Term, sigma: Mapping[str, Term], mu: Action, p: Term) -> str | None:
    """How ``sigma(t) --mu--> p`` arises: from a move of ``t`` itself or
    from an auxiliary transition whose mode matches the rules for ``mu``."""
    for nu, t2 in open_step(rs, t):
        if nu is mu and apply(sigma, t2) is p:
            return f"term move to {t2.text}"
    w = mode_for(rs, mu)
    for lab, c in aux_step(rs, t):
        if lab.action is not mu or lab.mode != w:
            continue
        for nu, q in step(rs, sigma[lab.variable]):
            if nu is mu and instantiate(c, sigma, q) is p:
                return f"{lab} to {c} with {lab.variable} moving to {q.text}"
    return None


def check_c2o(rs: RuleSet, t: Term, sigma: Mapping[str, Term]) -> list[Unexplained]:
    """Every visible transition of ``sigma(t)`` must be explained."""
    _par_free(t)
    closed = apply(sigma, t)
    out = []
    for mu, p in step(rs, closed):
        if mu.visible and explain(rs, t, sigma, mu, p) is None:
            out.append(Unexplained("c2o", closed.text, mu.value, p.text))
    return out


@dataclass
class TrtDepthVerdict:
    variable: str
    modes: dict            # mode -> actions with x |>^mode t
    precondition: bool
    depth_term: int
    depth_var: int

    @property
    def inequality(self) -> bool:
        return self.depth_term >= self.depth_var

    @property
    def consistent(self) -> bool:
        """The depth bound is only promised when the precondition holds."""
        return self.inequality or not self.precondition

    def to_json(self) -> dict:
        return {"variable": self.variable, "modes": self.modes, "precondition": self.precondition,
                "depth_term": self.depth_term, "depth_var": self.depth_var,
                "inequality": self.inequality, "consistent": self.consistent}


def check_trt_depth(rs: RuleSet, t: Term, sigma: Mapping[str, Term], x: str | None = None) -> TrtDepthVerdict:
    """``depth(sigma(t)) >= depth(sigma(x))`` whenever t has no 0 summands or
    factors and the initials of sigma(x) all reach t through one mode."""
    _par_free(t)
    if x is None:
        if len(t.vars) != 1:
            raise ValueError("name the variable to check")
        (x,) = t.vars
    init = STORE.initials(STORE.of(rs, sigma[x]))
    modes = {w: [mu.value for mu in ACTIONS if trt(rs, x, w, mu, t)] for w in MODES}
    pre = zero_clean(t) and any(
        acts and init <= {Action(a) for a in acts} for acts in modes.values())
    return TrtDepthVerdict(x, {w: a for w, a in modes.items() if a}, pre,
                           STORE.depth(STORE.of(rs, apply(sigma, t))),
                           STORE.depth(STORE.of(rs, sigma[x])))


def blocked_example(alpha: Action = Action.A, n: int = 2) -> tuple[RuleSet, Term, dict[str, Term]]:
    """Rules L_alpha, L_tau and R_abar only; ``t = f(x, tau)`` and
    ``sigma(x) = alpha + tau + abar.alpha^n``.  The abar-move of sigma(x)
    is blocked, so sigma(t) is shallower than sigma(x)."""
    from .sos import sync_for
    bar = alpha.complement()
    rs = RuleSet.of({alpha, Action.TAU}, {bar}, {sync_for(alpha)})
    chain = NIL
    for _ in range(n):
        chain = prefix(alpha, chain)
    x = plus(prefix(alpha, NIL), prefix(Action.TAU, NIL), prefix(bar, chain))
    return rs, fop(var("x"), prefix(Action.TAU, NIL)), {"x": x}


# ------------------------------------------------------------ generators


def par_free_terms(max_size: int, names=("x", "y")) -> Iterator[Term]:
    """Every ||-free term of size at most ``max_size`` over ``names``, each once.
    The largest size is streamed rather than stored."""
    names = tuple(names)
    for s in range(max_size + 1):
        yield from (_of_size(s, names) if s < max_size else _gen_size(s, names))


def _gen_heads(s: int, names: tuple[str, ...]) -> Iterator[Term]:
    """Terms of size exactly ``s`` whose head is not +."""
    if s == 0:
        yield from (var(n) for n in names)
        return
    if s == 1:
        yield NIL
    for mu in ACTIONS:
        yield from (prefix(mu, b) for b in _of_size(s - 1, names))
    for s1 in range(s):
        for a in _of_size(s1, names):
            yield from (fop(a, b) for b in _of_size(s - 1 - s1, names))


def _gen_size(s: int, names: tuple[str, ...]) -> Iterator[Term]:
    yield from _gen_heads(s, names)
    # sums of k >= 2 heads whose sizes add up to s - (k - 1); equal sizes
    # are drawn as multisets so every sum appears once
    for k in range(2, s + 2):
        for sizes in _partitions(s - (k - 1), k):
            runs = [(z, len(list(g))) for z, g in itertools.groupby(sizes)]
            pools = [itertools.combinations_with_replacement(_heads(z, names), m) for z, m in runs]
            for combo in itertools.product(*(list(p) for p in pools)):
                yield plus(*itertools.chain.from_iterable(combo))


@lru_cache(maxsize=None)
def _heads(s: int, names: tuple[str, ...]) -> tuple[Term, ...]:
    return tuple(_gen_heads(s, names))


@lru_cache(maxsize=None)
def _of_size(s: int, names: tuple[str, ...]) -> tuple[Term, ...]:
    return tuple(_gen_size(s, names))


def _partitions(total: int, parts: int) -> Iterator[tuple[int, ...]]:
    """Non-decreasing tuples of ``parts`` non-negative ints summing to ``total``."""
    def go(left, k, lo):
        if k == 0:
            if left == 0:
                yield ()
            return
        for v in range(lo, left + 1):
            for rest in go(left - v, k - 1, v):
                yield (v,) + rest
    return go(total, parts, 0)


def random_par_free(rng: random.Random, max_size: int, names=("x", "y")) -> Term:
    """A random ||-free term of size at most ``max_size``."""
    def go(budget: int) -> tuple[Term, int]:
        r = rng.random()
        if budget <= 0 or r < 0.25:
            return var(rng.choice(names)), 0
        if r < 0.3:
            return NIL, 1
        if r < 0.55:
            body, used = go(budget - 1)
            return prefix(rng.choice(ACTIONS), body), used + 1
        left, u1 = go((budget - 1) // 2)
        right, u2 = go(budget - 1 - u1)
        build = fop if r < 0.8 else plus
        return build(left, right), u1 + u2 + 1
    while True:
        t, used = go(max_size)
        if t.size <= max_size:
            return t


def random_instances(rs_pool, count: int, seed: int = 0, max_size: int = 8,
                     tree_depth: int = 2, tree_width: int = 2) -> Iterator[tuple[RuleSet, Term, dict]]:
    rng = random.Random(seed)
    trees = [STORE.tree(c) for c in SyncTreeEnumerator(tree_depth, tree_width).materialize()]
    for _ in range(count):
        rs = rng.choice(rs_pool)
        t = random_par_free(rng, max_size)
        sigma = {x: rng.choice(trees) for x in sorted(t.vars)}
        yield rs, t, sigma
