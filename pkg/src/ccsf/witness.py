"""Witness processes, the equation families built from them, and the
summand property used to separate the two sides."""
from __future__ import annotations

import random
from dataclasses import dataclass, field

from .eqlogic import (AxiomSystem, Equation, Proof, check_proof, cong_f,
                      cong_prefix, cong_sum, instance, refl, sound_axioms, sym)
from .openterms import zero_test
from .operators import WITNESS_CASES, OperatorClass, dispatch
from .semantics import (STORE, SyncTreeEnumerator, bisim, equivalent,
                        is_prime)
from .sos import RuleSet
from .terms import (NIL, Action, Term, fop, mirror_f, par, plus, prefix,
                    summands, zero_clean)


def ladder(mu: Action, i: int) -> Term:
    """``mu + mu.mu + ... + mu^i``; the empty sum 0 when i is 0."""
    if i < 0:
        raise ValueError("ladder index must be non-negative")
    chains = []
    t = NIL
    for _ in range(i):
        t = prefix(mu, t)
        chains.append(t)
    return plus(*chains)


def p_proc(alpha: Action, n: int, start: int = 0) -> Term:
    """``sum_{i=start..n} abar.alpha^{<=i}``"""
    bar = alpha.complement()
    return plus(*(prefix(bar, ladder(alpha, i)) for i in range(start, n + 1)))


def q_proc(alpha: Action, n: int, start: int = 0) -> Term:
    """``sum_{i=start..n} alpha.abar^{<=i}``"""
    bar = alpha.complement()
    return plus(*(prefix(alpha, ladder(bar, i)) for i in range(start, n + 1)))


@dataclass(frozen=True)
class WitnessFamily:
    case: str
    n: int
    witness: Term
    equation: Equation
    mirrored: bool = False
    alpha: Action = Action.A
    identity: tuple[Term, Term] | None = None  # a Par form the witness should equal
    prime_witness: bool = False


def witness_terms(case: str, n: int, alpha: Action = Action.A, mirrored: bool = False,
                  start: int = 0) -> WitnessFamily:
    if case not in WITNESS_CASES:
        raise ValueError(f"no witness family for case {case!r}")
    if n < 0:
        raise ValueError("n must be non-negative")
    a, bar, tau = alpha, alpha.complement(), Action.TAU
    idx = range(start, n + 1)
    prime = False
    ident_left = None
    if case == "Labat":
        arg, head = p_proc(a, n, start), a
        rhs = plus(prefix(a, arg), *(prefix(tau, ladder(a, i)) for i in idx))
        prime = True
    elif case == "LaRa":
        arg, head = q_proc(a, n, start), a
        rhs = plus(prefix(a, arg), *(prefix(a, par(prefix(a, NIL), ladder(bar, i))) for i in idx))
        ident_left = head
    elif case == "LaRba-sync":
        arg, head = p_proc(a, n, start), a
        rhs = plus(prefix(a, arg),
                   *(prefix(bar, par(prefix(a, NIL), ladder(a, i))) for i in idx),
                   *(prefix(tau, ladder(a, i)) for i in idx))
        ident_left = head
    elif case == "LaRba-nosync":
        arg, head = p_proc(a, n, start), a
        rhs = plus(prefix(a, arg), *(prefix(bar, par(prefix(a, NIL), ladder(a, i))) for i in idx))
        prime = True
    else:  # Ltau
        arg, head = q_proc(a, n, start), tau
        rhs = plus(prefix(tau, arg), *(prefix(a, par(prefix(tau, NIL), ladder(bar, i))) for i in idx))
        ident_left = head
    h = prefix(head, NIL)
    witness = fop(arg, h) if mirrored else fop(h, arg)
    identity = (witness, par(h, arg)) if ident_left is not None else None
    return WitnessFamily(case, n, witness, Equation(witness, rhs), mirrored, alpha, identity, prime)


def family_for(rs: RuleSet, n: int, start: int = 0) -> WitnessFamily:
    oc = dispatch(rs)
    if not oc.has_witness:
        raise ValueError(f"rule set {rs.label()} is {oc.label}; it has no witness family")
    return witness_terms(oc.case, n, oc.alpha, oc.mirrored, start)


def has_witness_summand(rs: RuleSet, p: Term, witness: Term) -> bool:
    w = STORE.of(rs, witness)
    return any(STORE.of(rs, s) == w for s in summands(p))


def verify_family(rs: RuleSet, n_max: int = 5, start: int = 0, case: OperatorClass | None = None) -> list[dict]:
    """Per-n checks for the family matching ``rs`` (or the given case)."""
    oc = case or dispatch(rs)
    out = []
    for n in range(0 if start == 0 else 1, n_max + 1):
        fam = witness_terms(oc.case, n, oc.alpha or Action.A, oc.mirrored, start)
        eq = fam.equation
        res = bisim(rs, eq.lhs, eq.rhs)
        row = {
            "n": n,
            "lhs": eq.lhs.text,
            "rhs": eq.rhs.text,
            "equivalent": res.equivalent,
            "depth_lhs": STORE.depth(STORE.of(rs, eq.lhs)),
            "depth_rhs": STORE.depth(STORE.of(rs, eq.rhs)),
            "lhs_has_witness": has_witness_summand(rs, eq.lhs, fam.witness),
            "rhs_has_witness": has_witness_summand(rs, eq.rhs, fam.witness),
        }
        if not res.equivalent:
            row["distinguishing"] = res.witness
        if fam.identity is not None:
            row["identity"] = f"{fam.identity[0].text} ~ {fam.identity[1].text}"
            row["identity_holds"] = equivalent(rs, *fam.identity)
        if fam.prime_witness:
            row["witness_prime"] = is_prime(rs, fam.witness)
        row["ok"] = (res.equivalent and row["lhs_has_witness"] and not row["rhs_has_witness"]
                     and row.get("identity_holds", True) and row.get("witness_prime", True))
        out.append(row)
    return out


# ------------------------------------------------------------ W_n experiment


class UnsoundAxioms(ValueError):
    pass


@dataclass
class WnReport:
    trials: int = 0
    applicable: int = 0
    lhs_with_witness: int = 0
    violations: list[dict] = field(default_factory=list)
    soundness: list[tuple[str, str]] = field(default_factory=list)
    # instances with a 0 summand or factor lie outside the property's scope
    with_zero: int = 0
    with_zero_mismatches: list[dict] = field(default_factory=list)

    def to_json(self) -> dict:
        return {"trials": self.trials, "applicable": self.applicable,
                "with_witness": self.lhs_with_witness, "violations": self.violations,
                "with_zero": self.with_zero, "with_zero_mismatches": len(self.with_zero_mismatches)}


def _precheck(rs: RuleSet, E: AxiomSystem) -> list[tuple[str, str]]:
    verdicts = []
    for enum in (SyncTreeEnumerator(2, 1), SyncTreeEnumerator(1, 3)):
        for lab, v in sound_axioms(rs, E, enum):
            if v.refuted:
                sub = ", ".join(f"{k} := {t.text}" for k, t in v.substitution.items())
                raise UnsoundAxioms(f"axiom {lab} is not sound: counterexample {sub}")
            verdicts.append((lab, v.status))
    return verdicts


def wn_preservation_experiment(rs: RuleSet, E: AxiomSystem, n: int | None = None,
                               trials: int = 1000, seed: int = 0,
                               family: WitnessFamily | None = None) -> WnReport:
    """Instantiate axioms of E, possibly inside one congruence context, around
    terms bisimilar to the witness, and compare the summand property on both
    sides of every instance whose sides are both bisimilar to the witness.

    The property is only claimed for sides without 0 summands or factors;
    other instances are counted separately and their mismatches kept in
    ``with_zero_mismatches``."""
    report = WnReport()
    report.soundness = _precheck(rs, E)
    if n is None:
        n = E.max_size() + 1
    if n <= E.max_size():
        raise ValueError(f"n={n} must exceed the largest axiom size {E.max_size()}")
    fam = family or family_for(rs, n)
    w, rhs = fam.equation.lhs, fam.equation.rhs
    rng = random.Random(seed)
    head, arg = (w.left, w.right) if not fam.mirrored else (w.right, w.left)
    like = [w, rhs, plus(w, w), plus(w, rhs), fop(w, NIL), plus(w, *summands(rhs)[:2])]
    parts = summands(rhs) + summands(arg) + [head, arg]
    small = [NIL, prefix(Action.A, NIL), prefix(Action.TAU, NIL), fop(NIL, NIL),
             prefix(Action.ABAR, prefix(Action.A, NIL))]
    pools = [like, parts, small]

    def pick() -> Term:
        r = rng.random()
        return rng.choice(pools[0] if r < 0.45 else pools[1] if r < 0.8 else pools[2])

    target = STORE.of(rs, w)
    is_zero = zero_test(rs)
    for _ in range(trials):
        i = rng.randrange(len(E.axioms))
        ax = E.axioms[i]
        sigma = {x: pick() for x in sorted(ax.vars)}
        pr: Proof = instance(E, i, sigma)
        if rng.random() < 0.5:
            pr = sym(pr)
        r = rng.random()
        if r < 0.3:
            pr = cong_sum(pr, refl(rng.choice(parts + small)))
        elif r < 0.4:
            pr = cong_f(pr, refl(NIL))
        elif r < 0.5:
            pr = cong_prefix(rng.choice([Action.A, Action.TAU]), pr)
        assert check_proof(E, pr)
        p, q = pr.concl.lhs, pr.concl.rhs
        report.trials += 1
        if STORE.of(rs, p) != target or STORE.of(rs, q) != target:
            continue
        wp, wq = has_witness_summand(rs, p, w), has_witness_summand(rs, q, w)
        row = {"axiom": E.labels[i], "lhs": p.text, "rhs": q.text,
               "lhs_has_witness": wp, "rhs_has_witness": wq}
        if not (zero_clean(p, is_zero) and zero_clean(q, is_zero)):
            report.with_zero += 1
            if wp != wq:
                report.with_zero_mismatches.append(row)
            continue
        report.applicable += 1
        report.lhs_with_witness += wp
        if wp != wq:
            report.violations.append(row)
    return report
