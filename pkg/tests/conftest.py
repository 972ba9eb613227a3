import sys
import pytest
from hypothesis import strategies as st

from ccsf.operators import enumerate_admissible, representative
from ccsf.sos import RuleSet, Sync
from ccsf.terms import ACTIONS, NIL, Action, fop, par, plus, prefix, var

A, B, T = Action.A, Action.ABAR, Action.TAU


@pytest.fixture(scope="session")
def labat() -> RuleSet:
    return RuleSet.of({A, B, T}, (), {Sync.A_ABAR})


@pytest.fixture(scope="session")
def lara() -> RuleSet:
    return representative("LaRa")


@pytest.fixture(scope="session")
def all_rules() -> list[RuleSet]:
    return enumerate_admissible()


def closed_terms(max_leaves: int = 6, with_par: bool = True, with_f: bool = True):
    """Hypothesis strategy for small closed terms."""
    ops = [lambda a, b: plus(a, b)]
    if with_par:
        ops.append(par)
    if with_f:
        ops.append(fop)

    def extend(children):
        return st.one_of(
            st.builds(prefix, st.sampled_from(ACTIONS), children),
            st.builds(lambda op, a, b: op(a, b), st.sampled_from(ops), children, children),
        )
    return st.recursive(st.just(NIL), extend, max_leaves=max_leaves)


def open_terms(max_leaves: int = 6, names=("x", "y"), with_par: bool = False):
    ops = [lambda a, b: plus(a, b), fop] + ([par] if with_par else [])

    def extend(children):
        return st.one_of(
            st.builds(prefix, st.sampled_from(ACTIONS), children),
            st.builds(lambda op, a, b: op(a, b), st.sampled_from(ops), children, children),
        )
    leaves = st.one_of(st.just(NIL), st.sampled_from([var(n) for n in names]))
    return st.recursive(leaves, extend, max_leaves=max_leaves)


def mutate(pr, rng):
    """Corrupt one node of a proof: its conclusion gains a summand, so the
    node no longer follows from its premises by its rule."""
    import dataclasses
    from ccsf.eqlogic import Equation, proof_nodes

    nodes = list(proof_nodes(pr))
    path, node = rng.choice(nodes)
    extra = prefix(rng.choice(ACTIONS), NIL)
    c = node.concl
    bad = Equation(c.lhs, plus(c.rhs, extra)) if rng.random() < 0.5 else Equation(plus(c.lhs, extra), c.rhs)
    new = dataclasses.replace(node, concl=bad)

    def rebuild(p, path):
        if not path:
            return new
        i, rest = path[0], path[1:]
        fields = [f.name for f in dataclasses.fields(p) if f.name in ("child", "first", "second")]
        name = fields[i]
        return dataclasses.replace(p, **{name: rebuild(getattr(p, name), rest)})
    return rebuild(pr, path)


def pytest_terminal_summary(terminalreporter):
    mod = sys.modules.get("test_acceptance") or sys.modules.get("tests.test_acceptance")
    lines = [v for k, v in sorted(getattr(mod, "RESULTS", {}).items(), key=str) if isinstance(k, int)]
    if lines:
        terminalreporter.section("acceptance criteria")
        for line in lines:
            terminalreporter.write_line(line)
