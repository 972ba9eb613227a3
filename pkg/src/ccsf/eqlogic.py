"""Equations, axiom systems, proof trees, saturation and proof search."""
from __future__ import annotations

import itertools
import json
import random
from dataclasses import dataclass, field
from importlib import resources
from typing import Iterable, Iterator, Mapping, Sequence

from .parser import ParseError, parse_equation
from .semantics import SoundVerdict, SyncTreeEnumerator, sound
from .sos import RuleSet, ruleset_from_json
from .terms import (NIL, Action, F, Nil, Par, Prefix, Sum, Term, Var, apply,
                    fop, has_par, hat, in_nil_grammar, par, plus, prefix,
                    strip_zero, zero_clean, zero_substitutions)


@dataclass(frozen=True)
class Equation:
    lhs: Term
    rhs: Term

    def __str__(self) -> str:
        return f"{self.lhs.text} = {self.rhs.text}"

    @classmethod
    def parse(cls, text: str) -> "Equation":
        return cls(*parse_equation(text))

    def flipped(self) -> "Equation":
        return Equation(self.rhs, self.lhs)

    @property
    def vars(self) -> frozenset[str]:
        return self.lhs.vars | self.rhs.vars

    @property
    def closed(self) -> bool:
        return not self.vars

    @property
    def size(self) -> int:
        return max(self.lhs.size, self.rhs.size)


@dataclass(frozen=True)
class AxiomSystem:
    name: str
    axioms: tuple[Equation, ...] = ()
    labels: tuple[str, ...] = ()

    def __post_init__(self):
        if len(self.labels) != len(self.axioms):
            labels = tuple(self.labels) + tuple(
                f"E{i + 1}" for i in range(len(self.labels), len(self.axioms)))
            object.__setattr__(self, "labels", labels)

    def __len__(self):
        return len(self.axioms)

    def __iter__(self):
        return iter(self.axioms)

    def __add__(self, other: "AxiomSystem") -> "AxiomSystem":
        return AxiomSystem(f"{self.name}+{other.name}", self.axioms + other.axioms,
                           self.labels + other.labels)

    def max_size(self) -> int:
        return max((e.size for e in self.axioms), default=0)

    def as_set(self) -> frozenset[Equation]:
        return frozenset(self.axioms)

    def symmetry_closed(self) -> bool:
        s = self.as_set()
        return all(e.flipped() in s for e in self.axioms)

    def dumps(self) -> str:
        return "".join(f"{lab}: {eq}\n" for lab, eq in zip(self.labels, self.axioms))


def symmetric_closure(E: AxiomSystem) -> AxiomSystem:
    axioms, labels = list(E.axioms), list(E.labels)
    seen = set(axioms)
    for eq, lab in zip(E.axioms, E.labels):
        if eq.flipped() not in seen:
            seen.add(eq.flipped())
            axioms.append(eq.flipped())
            labels.append(lab + "~")
    return AxiomSystem(E.name, tuple(axioms), tuple(labels))


class AxiomFileError(ValueError):
    pass


def parse_axioms(text: str, name: str = "E") -> AxiomSystem:
    """One ``lhs = rhs`` per line, optionally prefixed ``LABEL:``; ``#`` starts a comment."""
    axioms, labels = [], []
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        label = None
        head, sep, rest = line.partition(":")
        if sep and head.strip() and head.strip()[0].isupper():
            label, line = head.strip(), rest
        try:
            eq = Equation.parse(line)
        except ParseError as e:
            raise AxiomFileError(f"{name}:{lineno}: {e}") from None
        axioms.append(eq)
        labels.append(label or f"E{len(axioms)}")
    return AxiomSystem(name, tuple(axioms), tuple(labels))


def load_axioms(path) -> AxiomSystem:
    from pathlib import Path
    p = Path(path)
    return parse_axioms(p.read_text(), p.stem)


def shipped_axiom_files() -> list[str]:
    base = resources.files("ccsf") / "data" / "axioms"
    return sorted(p.name for p in base.iterdir() if p.name.endswith(".axioms"))


def shipped_axioms(filename: str) -> AxiomSystem:
    if not filename.endswith(".axioms"):
        filename += ".axioms"
    base = resources.files("ccsf") / "data" / "axioms"
    return parse_axioms((base / filename).read_text(), filename[: -len(".axioms")])


def heading_rules(filename: str) -> list[RuleSet]:
    """Rule sets named by the ``# rules:`` header of a shipped axiom file.

    A header without a ``sync`` entry stands for every non-empty sync choice.
    Files without a header (sound for every rule set) give an empty list.
    """
    if not filename.endswith(".axioms"):
        filename += ".axioms"
    text = (resources.files("ccsf") / "data" / "axioms" / filename).read_text()
    for line in text.splitlines():
        if line.startswith("# rules:"):
            obj = json.loads(line[len("# rules:"):])
            syncs = [obj["sync"]] if "sync" in obj else [["a/a'"], ["a'/a"], ["a/a'", "a'/a"]]
            return [ruleset_from_json({**obj, "sync": s}) for s in syncs]
    return []


# ------------------------------------------------------------------ proofs


@dataclass(frozen=True)
class Proof:
    concl: Equation

    rule = ""

    def premises(self) -> tuple["Proof", ...]:
        return ()


@dataclass(frozen=True)
class AxiomInstance(Proof):
    index: int = 0
    sigma: tuple[tuple[str, Term], ...] = ()
    rule = "axiom"


@dataclass(frozen=True)
class Reflexivity(Proof):
    rule = "reflexivity"


@dataclass(frozen=True)
class Symmetry(Proof):
    child: Proof = None
    rule = "symmetry"

    def premises(self):
        return (self.child,)


@dataclass(frozen=True)
class Transitivity(Proof):
    first: Proof = None
    second: Proof = None
    rule = "transitivity"

    def premises(self):
        return (self.first, self.second)


@dataclass(frozen=True)
class CongPrefix(Proof):
    action: Action = Action.A
    child: Proof = None
    rule = "prefix congruence"

    def premises(self):
        return (self.child,)


@dataclass(frozen=True)
class _Binary(Proof):
    first: Proof = None
    second: Proof = None

    def premises(self):
        return (self.first, self.second)


class CongSum(_Binary):
    rule = "sum congruence"


class CongF(_Binary):
    rule = "f congruence"


class CongPar(_Binary):
    rule = "parallel congruence"


def refl(t: Term) -> Reflexivity:
    return Reflexivity(Equation(t, t))


def instance(E: AxiomSystem, index: int, sigma: Mapping[str, Term]) -> AxiomInstance:
    ax = E.axioms[index]
    return AxiomInstance(Equation(apply(sigma, ax.lhs), apply(sigma, ax.rhs)),
                         index, tuple(sorted(sigma.items())))


def trans(first: Proof, second: Proof) -> Transitivity:
    return Transitivity(Equation(first.concl.lhs, second.concl.rhs), first, second)


def sym(child: Proof) -> Symmetry:
    return Symmetry(child.concl.flipped(), child)


def cong_prefix(mu: Action, child: Proof) -> CongPrefix:
    c = child.concl
    return CongPrefix(Equation(prefix(mu, c.lhs), prefix(mu, c.rhs)), mu, child)


def cong_sum(a: Proof, b: Proof) -> CongSum:
    return CongSum(Equation(plus(a.concl.lhs, b.concl.lhs), plus(a.concl.rhs, b.concl.rhs)), a, b)


def cong_f(a: Proof, b: Proof) -> CongF:
    return CongF(Equation(fop(a.concl.lhs, b.concl.lhs), fop(a.concl.rhs, b.concl.rhs)), a, b)


def cong_par(a: Proof, b: Proof) -> CongPar:
    return CongPar(Equation(par(a.concl.lhs, b.concl.lhs), par(a.concl.rhs, b.concl.rhs)), a, b)


@dataclass
class ProofCheck:
    ok: bool
    path: tuple[int, ...] = ()
    rule: str = ""
    reason: str = ""

    def __bool__(self):
        return self.ok

    def to_json(self) -> dict:
        if self.ok:
            return {"ok": True}
        return {"ok": False, "path": list(self.path), "rule": self.rule, "reason": self.reason}


def _check_node(E: AxiomSystem, pr: Proof) -> str | None:
    c = pr.concl
    if isinstance(pr, AxiomInstance):
        if not 0 <= pr.index < len(E.axioms):
            return f"no axiom with index {pr.index}"
        ax = E.axioms[pr.index]
        sigma = dict(pr.sigma)
        if apply(sigma, ax.lhs) is not c.lhs or apply(sigma, ax.rhs) is not c.rhs:
            return f"conclusion is not the instance of {E.labels[pr.index]} under the substitution"
        return None
    if isinstance(pr, Reflexivity):
        return None if c.lhs is c.rhs else "sides differ"
    if isinstance(pr, Symmetry):
        ch = pr.child.concl
        return None if (c.lhs is ch.rhs and c.rhs is ch.lhs) else "not the mirror of the premise"
    if isinstance(pr, Transitivity):
        a, b = pr.first.concl, pr.second.concl
        if a.rhs is not b.lhs:
            return "premises do not chain"
        return None if (c.lhs is a.lhs and c.rhs is b.rhs) else "conclusion does not match the chain"
    if isinstance(pr, CongPrefix):
        ch = pr.child.concl
        ok = c.lhs is prefix(pr.action, ch.lhs) and c.rhs is prefix(pr.action, ch.rhs)
        return None if ok else "conclusion is not the prefixed premise"
    if isinstance(pr, (CongSum, CongF, CongPar)):
        build = {CongSum: plus, CongF: fop, CongPar: par}[type(pr)]
        a, b = pr.first.concl, pr.second.concl
        ok = c.lhs is build(a.lhs, b.lhs) and c.rhs is build(a.rhs, b.rhs)
        return None if ok else "conclusion does not combine the premises"
    return f"unknown proof node {type(pr).__name__}"


def check_proof(E: AxiomSystem, pr: Proof) -> ProofCheck:
    """Validate every node; on failure report the first invalid node (pre-order)."""
    stack: list[tuple[Proof, tuple[int, ...]]] = [(pr, ())]
    while stack:
        node, path = stack.pop()
        if node is None or not isinstance(node, Proof):
            return ProofCheck(False, path, "?", "missing premise")
        reason = _check_node(E, node)
        if reason:
            return ProofCheck(False, path, node.rule, reason)
        kids = node.premises()
        for i in reversed(range(len(kids))):
            stack.append((kids[i], path + (i,)))
    return ProofCheck(True)


def proof_size(pr: Proof) -> int:
    return 1 + sum(proof_size(c) for c in pr.premises())


def proof_nodes(pr: Proof) -> Iterator[tuple[tuple[int, ...], Proof]]:
    stack = [((), pr)]
    while stack:
        path, node = stack.pop()
        yield path, node
        for i, c in enumerate(node.premises()):
            stack.append((path + (i,), c))


def proof_to_json(E: AxiomSystem, pr: Proof) -> dict:
    """Nested proof tree; axiom nodes name the axiom and its substitution."""
    out: dict = {"rule": pr.rule, "concl": str(pr.concl)}
    if isinstance(pr, AxiomInstance):
        out["axiom"] = E.labels[pr.index] if 0 <= pr.index < len(E.labels) else pr.index
        out["sigma"] = {k: v.text for k, v in pr.sigma}
    elif isinstance(pr, CongPrefix):
        out["action"] = pr.action.value
    kids = pr.premises()
    if kids:
        out["premises"] = [proof_to_json(E, c) for c in kids]
    return out


# --------------------------------------------------------------- hat lifting


def hat_system(E: AxiomSystem) -> AxiomSystem:
    return AxiomSystem("hat " + E.name, tuple(Equation(hat(e.lhs), hat(e.rhs)) for e in E.axioms), E.labels)


def hat_proof(pr: Proof) -> Proof:
    """Transform a proof from E into one from ``hat_system(E)``."""
    if isinstance(pr, AxiomInstance):
        sigma = tuple((k, hat(v)) for k, v in pr.sigma)
        return AxiomInstance(Equation(hat(pr.concl.lhs), hat(pr.concl.rhs)), pr.index, sigma)
    if isinstance(pr, Reflexivity):
        return refl(hat(pr.concl.lhs))
    if isinstance(pr, Symmetry):
        return sym(hat_proof(pr.child))
    if isinstance(pr, Transitivity):
        return trans(hat_proof(pr.first), hat_proof(pr.second))
    if isinstance(pr, CongPrefix):
        return cong_prefix(pr.action, hat_proof(pr.child))
    if isinstance(pr, CongSum):
        return cong_sum(hat_proof(pr.first), hat_proof(pr.second))
    if isinstance(pr, CongF):
        return cong_f(hat_proof(pr.first), hat_proof(pr.second))
    if isinstance(pr, CongPar):
        a, b = hat_proof(pr.first), hat_proof(pr.second)
        return cong_sum(cong_f(a, b), cong_f(b, a))
    raise TypeError(type(pr).__name__)


# ---------------------------------------------------------------- saturation


def cl(E: AxiomSystem) -> AxiomSystem:
    """Close E under 0-substitutions followed by zero stripping."""
    axioms = list(E.axioms)
    labels = list(E.labels)
    seen = set(axioms)
    for eq, lab in zip(E.axioms, E.labels):
        if has_par(eq.lhs) or has_par(eq.rhs):
            raise ValueError(f"{lab}: saturation is defined for axioms without ||")
        for sigma in zero_substitutions(eq.vars):
            new = Equation(strip_zero(apply(sigma, eq.lhs)), strip_zero(apply(sigma, eq.rhs)))
            if new not in seen:
                seen.add(new)
                axioms.append(new)
                zeroed = ",".join(sorted(sigma)) or "-"
                labels.append(f"{lab}/0[{zeroed}]")
    return AxiomSystem(E.name, tuple(axioms), tuple(labels))


def is_saturated(E: AxiomSystem) -> bool:
    return cl(E).as_set() == E.as_set()


def sound_axioms(rs: RuleSet, E: AxiomSystem, enum: SyncTreeEnumerator | None = None,
                 budget: float | None = None) -> list[tuple[str, SoundVerdict]]:
    return [(lab, sound(rs, eq.lhs, eq.rhs, enum, budget=budget)) for lab, eq in zip(E.labels, E.axioms)]


# ---------------------------------------------------------------- AC matching


def match(pat: Term, t: Term, sigma: dict[str, Term] | None = None) -> Iterator[dict[str, Term]]:
    """All extensions of ``sigma`` with ``apply(result, pat) == t`` modulo AC."""
    sigma = {} if sigma is None else sigma
    if isinstance(pat, Var):
        bound = sigma.get(pat.name)
        if bound is None:
            yield {**sigma, pat.name: t}
        elif bound is t:
            yield sigma
        return
    if not pat.vars:
        if pat is t:
            yield sigma
        return
    if isinstance(pat, Sum):
        targets = list(t.args) if isinstance(t, Sum) else [t]
        yield from _match_sum(list(pat.args), targets, sigma)
        return
    if type(pat) is not type(t):
        return
    if isinstance(pat, Prefix):
        if pat.action is t.action:
            yield from match(pat.body, t.body, sigma)
        return
    for s1 in match(pat.left, t.left, sigma):
        yield from match(pat.right, t.right, s1)


def _remove(pool: list[Term], items: Sequence[Term]) -> list[Term] | None:
    rest = list(pool)
    for it in items:
        for i, x in enumerate(rest):
            if x is it:
                del rest[i]
                break
        else:
            return None
    return rest


def _match_sum(pats: list[Term], targets: list[Term], sigma: dict) -> Iterator[dict]:
    rigid = [p for p in pats if not isinstance(p, Var)]
    flex = [p for p in pats if isinstance(p, Var)]
    if len(rigid) + len(flex) > len(targets) and not flex:
        return
    yield from _match_rigid(rigid, flex, targets, sigma)


def _match_rigid(rigid, flex, targets, sigma):
    if not rigid:
        yield from _match_flex(flex, targets, sigma)
        return
    p, rest = rigid[0], rigid[1:]
    tried = set()
    for i, t in enumerate(targets):
        if t in tried:
            continue
        tried.add(t)
        remaining = targets[:i] + targets[i + 1:]
        for s1 in match(p, t, sigma):
            yield from _match_rigid(rest, flex, remaining, s1)


def _match_flex(flex, targets, sigma):
    if not flex:
        if not targets:
            yield sigma
        return
    v, rest = flex[0], flex[1:]
    bound = sigma.get(v.name)
    if bound is not None:
        rem = _remove(targets, list(bound.args) if isinstance(bound, Sum) else [bound])
        if rem is not None:
            yield from _match_flex(rest, rem, sigma)
        return
    if not rest:
        if targets:
            yield from _match_flex(rest, [], {**sigma, v.name: plus(*targets)})
        return
    seen = set()
    n = len(targets)
    for k in range(1, n - len(rest) + 1):
        for idx in itertools.combinations(range(n), k):
            chosen = tuple(targets[i] for i in idx)
            key = tuple(sorted(c.text for c in chosen))
            if key in seen:
                continue
            seen.add(key)
            remaining = [targets[i] for i in range(n) if i not in idx]
            yield from _match_flex(rest, remaining, {**sigma, v.name: plus(*chosen)})


# ---------------------------------------------------------------- rewriting


@dataclass(frozen=True)
class RewriteStep:
    """Replace a subterm (or, inside a sum, a group of summands) using one axiom.

    ``flipped`` means the axiom was used right to left.
    """

    path: tuple  # items ("arg", i) or ("sub", (i, j, ...))
    index: int
    sigma: tuple[tuple[str, Term], ...]
    flipped: bool = False


def _oriented(E: AxiomSystem, both_ways: bool):
    for i, ax in enumerate(E.axioms):
        yield i, False, ax.lhs, ax.rhs
        if both_ways and ax.lhs is not ax.rhs:
            yield i, True, ax.rhs, ax.lhs


def rewrites(E: AxiomSystem, t: Term, both_ways: bool = True) -> Iterator[tuple[Term, RewriteStep]]:
    """Every term reachable from ``t`` by one axiom application."""
    rules = list(_oriented(E, both_ways))
    for new, path, (i, flipped), sigma in _rewrites(rules, t):
        yield new, RewriteStep(path, i, tuple(sorted(sigma.items())), flipped)


def _at_root(rules, t):
    for i, flipped, lhs, rhs in rules:
        for sigma in match(lhs, t):
            if rhs.vars <= sigma.keys():
                yield apply(sigma, rhs), (i, flipped), sigma


def _rewrites(rules, t):
    for new, key, sigma in _at_root(rules, t):
        yield new, (), key, sigma
    if isinstance(t, Sum):
        args = t.args
        n = len(args)
        for k in range(1, n):
            for idx in itertools.combinations(range(n), k):
                others = [args[j] for j in range(n) if j not in idx]
                group = plus(*(args[j] for j in idx))
                if k == 1:
                    sub = _rewrites(rules, group)
                else:
                    sub = ((new, (), key, s) for new, key, s in _at_root(rules, group))
                for new, path, key, sigma in sub:
                    yield plus(new, *others), (("sub", idx),) + path, key, sigma
    elif isinstance(t, Prefix):
        for new, path, key, sigma in _rewrites(rules, t.body):
            yield prefix(t.action, new), (("arg", 0),) + path, key, sigma
    elif isinstance(t, (F, Par)):
        build = fop if isinstance(t, F) else par
        for new, path, key, sigma in _rewrites(rules, t.left):
            yield build(new, t.right), (("arg", 0),) + path, key, sigma
        for new, path, key, sigma in _rewrites(rules, t.right):
            yield build(t.left, new), (("arg", 1),) + path, key, sigma


def step_proof(E: AxiomSystem, t: Term, st: RewriteStep) -> Proof:
    """Proof of ``t = t'`` for a single rewrite step."""
    if not st.path:
        pr = instance(E, st.index, dict(st.sigma))
        if st.flipped:
            pr = sym(pr)
        assert pr.concl.lhs is t, (pr.concl.lhs, t)
        return pr
    (kind, where), rest = st.path[0], RewriteStep(st.path[1:], st.index, st.sigma, st.flipped)
    if kind == "sub":
        args = t.args
        group = plus(*(args[j] for j in where))
        others = [args[j] for j in range(len(args)) if j not in where]
        inner = step_proof(E, group, rest)
        if not others:
            return inner
        return cong_sum(inner, refl(plus(*others)))
    if isinstance(t, Prefix):
        return cong_prefix(t.action, step_proof(E, t.body, rest))
    cong = cong_f if isinstance(t, F) else cong_par
    if where == 0:
        return cong(step_proof(E, t.left, rest), refl(t.right))
    return cong(refl(t.left), step_proof(E, t.right, rest))


@dataclass
class Derivation:
    derivable: bool
    proof: Proof | None = None
    explored: int = 0
    reason: str = ""

    @property
    def status(self) -> str:
        return "derivable" if self.derivable else "exhausted"


class SearchLimit(RuntimeError):
    pass


def bounded_derivable(E: AxiomSystem, goal: Equation, max_size: int = 30, max_depth: int = 8,
                      zero_clean_only: bool | None = None, max_terms: int = 2_000_000) -> Derivation:
    """Breadth-first search from both sides of a closed goal.

    The axioms are used in both directions.  Intermediate terms are limited
    to ``max_size`` (the goal's own sides are always admitted) and the proof
    is a chain of at most ``max_depth`` rewrite steps.  When the goal sides
    have no 0 summands or factors, the search may stay within such terms
    (``zero_clean_only``, on by default in that case); this is complete for
    saturated axiom systems.
    """
    if not goal.closed:
        raise ValueError("goal must be closed")
    if goal.lhs is goal.rhs:
        return Derivation(True, refl(goal.lhs), 1)
    if zero_clean_only is None:
        zero_clean_only = zero_clean(goal.lhs) and zero_clean(goal.rhs)

    def admissible(u: Term) -> bool:
        return u.size <= max_size and (not zero_clean_only or zero_clean(u))

    # parent maps: term -> (previous term, step from previous to term)
    sides = [{goal.lhs: None}, {goal.rhs: None}]
    frontiers = [[goal.lhs], [goal.rhs]]
    depths = [0, 0]
    explored = 2
    while depths[0] + depths[1] < max_depth:
        live = [i for i in (0, 1) if frontiers[i]]
        if not live:
            break
        side = min(live, key=lambda i: len(frontiers[i]))
        seen, other = sides[side], sides[1 - side]
        nxt = []
        for u in frontiers[side]:
            for v, st in rewrites(E, u):
                if v in seen or (not admissible(v) and v is not goal.lhs and v is not goal.rhs):
                    continue
                seen[v] = (u, st)
                explored += 1
                if explored > max_terms:
                    raise SearchLimit(f"more than {max_terms} terms explored")
                if v in other:
                    return Derivation(True, _assemble(E, goal, sides, v), explored)
                nxt.append(v)
        frontiers[side] = nxt
        depths[side] += 1
    return Derivation(False, None, explored, "no proof within limits")


def _path_to(seen: dict, v: Term) -> list[tuple[Term, RewriteStep]]:
    out = []
    while seen[v] is not None:
        u, st = seen[v]
        out.append((u, st))
        v = u
    out.reverse()
    return out


def _assemble(E: AxiomSystem, goal: Equation, sides, meet: Term) -> Proof:
    proof: Proof | None = None

    def add(pr):
        nonlocal proof
        proof = pr if proof is None else trans(proof, pr)

    for u, st in _path_to(sides[0], meet):
        add(step_proof(E, u, st))
    back = _path_to(sides[1], meet)
    for u, st in reversed(back):
        add(sym(step_proof(E, u, st)))
    return proof or refl(goal.lhs)


# ----------------------------------------------------------- proof generation


def random_proof(E: AxiomSystem, start: Term, rng: random.Random, steps: int = 4,
                 max_size: int = 40) -> Proof:
    """Random rewrite walk from ``start`` turned into a proof; may wrap the
    walk in congruence contexts and symmetry."""
    proof: Proof = refl(start)
    cur = start
    for _ in range(steps):
        options = [(v, st) for v, st in itertools.islice(rewrites(E, cur), 200) if v.size <= max_size]
        if not options:
            break
        v, st = rng.choice(options)
        pr = step_proof(E, cur, st)
        proof = pr if isinstance(proof, Reflexivity) else trans(proof, pr)
        cur = v
    choice = rng.random()
    other = rng.choice([NIL, prefix(Action.A, NIL), prefix(Action.TAU, prefix(Action.ABAR, NIL))])
    if choice < 0.2:
        proof = cong_prefix(rng.choice([Action.A, Action.ABAR, Action.TAU]), proof)
    elif choice < 0.4:
        proof = cong_sum(proof, refl(other))
    elif choice < 0.55:
        proof = cong_f(proof, refl(other)) if rng.random() < 0.5 else cong_f(refl(other), proof)
    elif choice < 0.7:
        proof = cong_par(refl(other), proof)
    if rng.random() < 0.3:
        proof = sym(proof)
    return proof
