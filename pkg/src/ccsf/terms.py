"""Term representation for CCS with a binary operator f.

Terms are hash-consed: every constructor returns a shared instance, so
structural equality (modulo associativity and commutativity of ``+``) is
plain identity.  Sums are stored n-ary with summands sorted by their printed
form, which gives the canonical AC representative.
"""
from __future__ import annotations

import enum
import weakref
from typing import Callable, Iterable, Mapping


class Action(str, enum.Enum):
    A = "a"
    ABAR = "a'"
    TAU = "tau"

    def complement(self) -> "Action":
        if self is Action.A:
            return Action.ABAR
        if self is Action.ABAR:
            return Action.A
        raise ValueError("tau has no complement")

    @property
    def visible(self) -> bool:
        return self is not Action.TAU

    def __str__(self) -> str:
        return self.value


ACTIONS = (Action.A, Action.ABAR, Action.TAU)


def action_from_str(text: str) -> Action:
    try:
        return Action(text)
    except ValueError:
        raise ValueError(f"unknown action {text!r}") from None


_TABLE: "weakref.WeakValueDictionary[tuple, Term]" = weakref.WeakValueDictionary()

# precedence levels used by the printer
_SUM, _PAR, _PREFIX = 0, 1, 2


class Term:
    """Base class.  Do not instantiate directly; use the factory functions."""

    __slots__ = ("text", "size", "vars", "level", "__weakref__")
    tag = ""

    def __repr__(self) -> str:
        return f"<{self.text}>"

    def __str__(self) -> str:
        return self.text

    def __lt__(self, other: "Term") -> bool:
        return self.text < other.text

    def __reduce__(self):
        from .parser import parse_term
        return (parse_term, (self.text,))

    @property
    def closed(self) -> bool:
        return not self.vars

    def wrap(self, level: int) -> str:
        return self.text if self.level >= level else f"({self.text})"


class Nil(Term):
    __slots__ = ()
    tag = "nil"


class Var(Term):
    __slots__ = ("name",)
    tag = "var"


class Prefix(Term):
    __slots__ = ("action", "body")
    tag = "prefix"


class Sum(Term):
    __slots__ = ("args",)
    tag = "sum"


class Par(Term):
    __slots__ = ("left", "right")
    tag = "par"


class F(Term):
    __slots__ = ("left", "right")
    tag = "f"


def _make(cls, key, init):
    t = _TABLE.get(key)
    if t is None:
        t = object.__new__(cls)
        init(t)
        _TABLE[key] = t
    return t


def _init_nil(t):
    t.text, t.size, t.vars, t.level = "0", 1, frozenset(), _PREFIX


NIL: Nil = _make(Nil, ("nil",), _init_nil)
_keep_nil = NIL


def var(name: str) -> Var:
    def init(t):
        t.name = name
        t.text, t.size, t.vars, t.level = name, 0, frozenset((name,)), _PREFIX
    return _make(Var, ("var", name), init)


def prefix(action: Action, body: Term) -> Prefix:
    def init(t):
        t.action, t.body = action, body
        t.text = f"{action.value}.{body.wrap(_PREFIX)}"
        t.size, t.vars, t.level = body.size + 1, body.vars, _PREFIX
    return _make(Prefix, ("prefix", action, body), init)


def plus(*terms: Term) -> Term:
    """n-ary sum, flattened and sorted.  The empty sum is 0."""
    flat: list[Term] = []
    for t in terms:
        if isinstance(t, Sum):
            flat.extend(t.args)
        else:
            flat.append(t)
    if not flat:
        return NIL
    if len(flat) == 1:
        return flat[0]
    flat.sort(key=lambda s: s.text)
    args = tuple(flat)

    def init(t):
        t.args = args
        t.text = " + ".join(a.wrap(_PAR) for a in args)
        t.size = sum(a.size for a in args) + len(args) - 1
        t.vars = frozenset().union(*(a.vars for a in args))
        t.level = _SUM
    return _make(Sum, ("sum",) + args, init)


def par(left: Term, right: Term) -> Par:
    def init(t):
        t.left, t.right = left, right
        t.text = f"{left.wrap(_PAR)} || {right.wrap(_PREFIX)}"
        t.size = left.size + right.size + 1
        t.vars = left.vars | right.vars
        t.level = _PAR
    return _make(Par, ("par", left, right), init)


def fop(left: Term, right: Term) -> F:
    def init(t):
        t.left, t.right = left, right
        t.text = f"f({left.text}, {right.text})"
        t.size = left.size + right.size + 1
        t.vars = left.vars | right.vars
        t.level = _PREFIX
    return _make(F, ("f", left, right), init)


def seq(*actions: Action, end: Term = NIL) -> Term:
    """``mu1.mu2...muk.end``"""
    t = end
    for mu in reversed(actions):
        t = prefix(mu, t)
    return t


# ---------------------------------------------------------------- utilities

def summands(t: Term) -> list[Term]:
    if isinstance(t, Sum):
        return list(t.args)
    return [t]


def variables(t: Term) -> frozenset[str]:
    return t.vars


def size(t: Term) -> int:
    """Number of operator symbols; 0 counts as a symbol, variables do not."""
    return t.size


def is_closed(t: Term) -> bool:
    return not t.vars


def has_par(t: Term) -> bool:
    return "||" in t.text


def subterms(t: Term) -> Iterable[Term]:
    yield t
    for c in children(t):
        yield from subterms(c)


def children(t: Term) -> tuple[Term, ...]:
    if isinstance(t, Prefix):
        return (t.body,)
    if isinstance(t, Sum):
        return t.args
    if isinstance(t, (Par, F)):
        return (t.left, t.right)
    return ()


def rebuild(t: Term, kids: tuple[Term, ...]) -> Term:
    """Same head constructor as ``t`` with new children."""
    if isinstance(t, Prefix):
        return prefix(t.action, kids[0])
    if isinstance(t, Sum):
        return plus(*kids)
    if isinstance(t, Par):
        return par(*kids)
    if isinstance(t, F):
        return fop(*kids)
    return t


def fold(t: Term, leaf: Callable[[Term], Term]) -> Term:
    """Rebuild ``t`` bottom-up, replacing Nil/Var leaves via ``leaf``."""
    if isinstance(t, (Nil, Var)):
        return leaf(t)
    return rebuild(t, tuple(fold(c, leaf) for c in children(t)))


def apply(sigma: Mapping[str, Term], t: Term) -> Term:
    """Apply a substitution; variables outside its domain are left alone."""
    if not sigma or not (t.vars & sigma.keys()):
        return t
    if isinstance(t, Var):
        return sigma.get(t.name, t)
    return rebuild(t, tuple(apply(sigma, c) for c in children(t)))


def rename_actions(t: Term, mapping: Mapping[Action, Action]) -> Term:
    if isinstance(t, Prefix):
        return prefix(mapping.get(t.action, t.action), rename_actions(t.body, mapping))
    if not children(t):
        return t
    return rebuild(t, tuple(rename_actions(c, mapping) for c in children(t)))


def swap_bar(t: Term) -> Term:
    return rename_actions(t, {Action.A: Action.ABAR, Action.ABAR: Action.A})


def mirror_f(t: Term) -> Term:
    """Swap the arguments of every f occurrence."""
    if isinstance(t, F):
        return fop(mirror_f(t.right), mirror_f(t.left))
    if not children(t):
        return t
    return rebuild(t, tuple(mirror_f(c) for c in children(t)))


def hat(t: Term) -> Term:
    """Replace every ``t || u`` by ``f(t, u) + f(u, t)``."""
    if isinstance(t, Par):
        l, r = hat(t.left), hat(t.right)
        return plus(fop(l, r), fop(r, l))
    if not children(t):
        return t
    return rebuild(t, tuple(hat(c) for c in children(t)))


# --------------------------------------------------------- zero stripping

def in_nil_grammar(t: Term) -> bool:
    """Syntactic class ``NIL ::= 0 | t + t | f(t, u)`` with ``t`` in NIL.

    For rule sets where f only has left rules these are exactly the
    Par-free terms bisimilar to 0 under every substitution.
    """
    if isinstance(t, Nil):
        return True
    if isinstance(t, Sum):
        return all(in_nil_grammar(a) for a in t.args)
    if isinstance(t, F):
        return in_nil_grammar(t.left)
    return False


def strip_zero(t: Term, is_zero: Callable[[Term], bool] = in_nil_grammar) -> Term:
    """Remove 0 summands and 0 factors from a Par-free term.

    ``is_zero`` decides whether a subterm is bisimilar to 0; by default the
    NIL grammar is used.
    """
    if isinstance(t, (Nil, Var)):
        return t
    if isinstance(t, Par):
        raise ValueError("strip_zero is only defined on terms without ||")
    if isinstance(t, Prefix):
        return prefix(t.action, strip_zero(t.body, is_zero))
    if isinstance(t, Sum):
        kept = [a for a in t.args if not is_zero(a)]
        if not kept:
            return NIL
        return plus(*(strip_zero(a, is_zero) for a in kept))
    assert isinstance(t, F)
    if is_zero(t.left):
        return NIL
    if is_zero(t.right):
        return strip_zero(t.left, is_zero)
    return fop(strip_zero(t.left, is_zero), strip_zero(t.right, is_zero))


def zero_clean(t: Term, is_zero: Callable[[Term], bool] = in_nil_grammar) -> bool:
    """No summand and no f-argument is bisimilar to 0 (prefix bodies may be 0)."""
    if isinstance(t, Sum):
        return all(not is_zero(a) and zero_clean(a, is_zero) for a in t.args)
    if isinstance(t, F):
        return (not is_zero(t.left) and not is_zero(t.right)
                and zero_clean(t.left, is_zero) and zero_clean(t.right, is_zero))
    if isinstance(t, Prefix):
        return zero_clean(t.body, is_zero) if not isinstance(t.body, Nil) else True
    if isinstance(t, Par):
        return zero_clean(t.left, is_zero) and zero_clean(t.right, is_zero)
    return True


def zero_substitutions(names: Iterable[str]):
    """All substitutions sending a subset of ``names`` to 0."""
    names = sorted(names)
    for mask in range(1 << len(names)):
        yield {n: NIL for i, n in enumerate(names) if mask >> i & 1}
