"""The space of admissible rule sets for f and its case split."""
from __future__ import annotations

import itertools
from dataclasses import dataclass

from .sos import RuleSet, Sync, sync_for, validate
from .terms import ACTIONS, Action

ALL = frozenset(ACTIONS)

SIDES = ("L", "R", "LR")
SYNCS = (frozenset({Sync.A_ABAR}), frozenset({Sync.ABAR_A}), frozenset(Sync))


def enumerate_admissible() -> list[RuleSet]:
    """All 81 admissible rule sets: each action gets L only, R only or both;
    then one of three non-empty sync choices."""
    out = []
    for sides in itertools.product(SIDES, repeat=len(ACTIONS)):
        left = frozenset(mu for mu, s in zip(ACTIONS, sides) if "L" in s)
        right = frozenset(mu for mu, s in zip(ACTIONS, sides) if "R" in s)
        for sync in SYNCS:
            out.append(RuleSet(left, right, sync))
    return out


def count_formula(pairs: int) -> int:
    """Number of admissible operators over ``pairs`` complementary action pairs."""
    return 3 ** (3 * pairs + 1)


def classify_distributivity(rs: RuleSet) -> str:
    """``first`` when f has no right rules, ``second`` when no left rules."""
    if not rs.right:
        return "first"
    if not rs.left:
        return "second"
    return "neither"


WITNESS_CASES = ("Labat", "LaRa", "LaRba-sync", "LaRba-nosync", "Ltau")


@dataclass(frozen=True)
class OperatorClass:
    tag: str          # RenamingOfPar | DistributesFirst | DistributesSecond | NonDistributive
    case: str         # one of WITNESS_CASES, HennessyLike, RenamingOfPar or Unassigned
    alpha: Action | None = None
    mirrored: bool = False
    note: str = ""

    @property
    def label(self) -> str:
        return f"SymmetricVariant({self.case})" if self.mirrored else self.case

    @property
    def has_witness(self) -> bool:
        return self.case in WITNESS_CASES

    def to_json(self) -> dict:
        out = {"tag": self.tag, "case": self.label}
        if self.alpha is not None:
            out["alpha"] = self.alpha.value
        if self.note:
            out["note"] = self.note
        return out


_TAGS = {"first": "DistributesFirst", "second": "DistributesSecond", "neither": "NonDistributive"}


def _base_case(rs: RuleSet) -> OperatorClass | None:
    """Cases stated for the canonical orientation; None if only the mirror fits."""
    dist = classify_distributivity(rs)
    tag = _TAGS[dist]
    if dist == "first" and len(rs.sync) == 1:
        (s,) = rs.sync
        return OperatorClass(tag, "Labat", s.pair[0])
    if dist != "neither":
        return None
    for alpha in (Action.A, Action.ABAR):
        if rs.L(alpha) and rs.R(alpha):
            return OperatorClass(tag, "LaRa", alpha)
    for alpha in (Action.A, Action.ABAR):
        bar = alpha.complement()
        if rs.L(alpha) and not rs.R(alpha) and rs.R(bar) and not rs.L(bar):
            case = "LaRba-sync" if sync_for(alpha) in rs.sync else "LaRba-nosync"
            return OperatorClass(tag, case, alpha)
    visible = (Action.A, Action.ABAR)
    if all(rs.R(a) and not rs.L(a) for a in visible) and rs.L(Action.TAU):
        return OperatorClass(tag, "Ltau", Action.A)
    return None


def dispatch(rs: RuleSet) -> OperatorClass:
    problems = validate(rs)
    if problems:
        return OperatorClass("Inadmissible", "Unassigned", note="; ".join(problems))
    if rs.left == ALL and rs.right == ALL and rs.sync == frozenset(Sync):
        return OperatorClass("RenamingOfPar", "RenamingOfPar")
    dist = classify_distributivity(rs)
    if dist != "neither" and rs.sync == frozenset(Sync):
        return OperatorClass(_TAGS[dist], "HennessyLike")
    base = _base_case(rs)
    if base is not None:
        return base
    mirror = _base_case(rs.mirrored())
    if mirror is not None:
        return OperatorClass(_TAGS[dist], mirror.case, mirror.alpha, mirrored=True)
    return OperatorClass(_TAGS[dist], "Unassigned", note="no case applies")


def tags(rs: RuleSet) -> dict:
    return {"distributivity": classify_distributivity(rs), **dispatch(rs).to_json()}


def representative(case: str, mirrored: bool = False) -> RuleSet:
    """First admissible rule set, in enumeration order, dispatched to ``case``;
    instances with alpha = a are preferred."""
    found = [rs for rs in enumerate_admissible()
             if dispatch(rs).case == case and dispatch(rs).mirrored == mirrored]
    for rs in found:
        if dispatch(rs).alpha in (None, Action.A):
            return rs
    if found:
        return found[0]
    raise ValueError(f"no admissible rule set falls under {case!r}")


def representatives() -> dict[str, RuleSet]:
    """One rule set per witness case."""
    return {case: representative(case) for case in WITNESS_CASES}
