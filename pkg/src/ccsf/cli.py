"""``ccsf`` command line: JSON reports on stdout, diagnostics on stderr.

Exit status is 0 for a positive verdict, 1 for a negative one and 2 for
usage or input errors.
"""
from __future__ import annotations

import argparse
import json
import random
import sys
import time
from concurrent.futures import ProcessPoolExecutor
from importlib import resources
from pathlib import Path

from .eqlogic import (AxiomFileError, Equation, bounded_derivable, check_proof, cl,
                      is_saturated, load_axioms, proof_to_json, shipped_axiom_files,
                      shipped_axioms, sound_axioms)
from .openterms import aux_step, open_step, trt_table
from .operators import WITNESS_CASES, OperatorClass, dispatch, enumerate_admissible, tags
from .parser import ParseError, parse_term
from .semantics import (STORE, SyncTreeEnumerator, bisim, factorisations, is_prime,
                        prime_decompose, sound)
from .sos import RuleSet, RuleSetError, StateCapExceeded, build_lts, load_ruleset, ruleset_from_json
from .terms import Action, is_closed
from .witness import verify_family, witness_terms


class UsageError(Exception):
    pass


def _rules(spec: str | None) -> RuleSet:
    """A rule-set file, a shipped rule-set name, or inline JSON."""
    if spec is None:
        raise UsageError("--rules is required")
    if spec.lstrip().startswith("{"):
        try:
            return ruleset_from_json(json.loads(spec))
        except json.JSONDecodeError as e:
            raise UsageError(f"bad rule-set JSON: {e}") from e
    path = Path(spec)
    if not path.exists():
        shipped = resources.files("ccsf") / "data" / "rules" / (path.stem + ".json")
        if not shipped.is_file():
            raise UsageError(f"no rule-set file {spec!r} (shipped: {', '.join(shipped_rule_names())})")
        return ruleset_from_json(json.loads(shipped.read_text()))
    return load_ruleset(path)


def shipped_rule_names() -> list[str]:
    d = resources.files("ccsf") / "data" / "rules"
    return sorted(p.name[:-5] for p in d.iterdir() if p.name.endswith(".json"))


def _axioms(spec: str):
    path = Path(spec)
    if path.exists():
        return load_axioms(path)
    name = spec if spec.endswith(".axioms") else spec + ".axioms"
    if name in shipped_axiom_files():
        return shipped_axioms(name)
    raise UsageError(f"no axiom file {spec!r}")


def _closed(text: str):
    t = parse_term(text)
    if not is_closed(t):
        raise UsageError(f"term must be closed: {t.text}")
    return t


def _enum(args) -> SyncTreeEnumerator:
    return SyncTreeEnumerator(args.depth, args.width)


# ------------------------------------------------------------ commands
# each returns (ok, payload); payload is merged into the report


def cmd_parse(args):
    if args.equation:
        eq = Equation.parse(args.term)
        return True, {"lhs": eq.lhs.text, "rhs": eq.rhs.text, "size": eq.size,
                      "vars": sorted(eq.vars)}
    t = parse_term(args.term)
    return True, {"term": t.text, "size": t.size, "vars": sorted(t.vars), "closed": is_closed(t)}


def cmd_lts(args):
    rs = _rules(args.rules)
    lts = build_lts(rs, _closed(args.term), cap=args.cap)
    return True, {"rules": rs.label(), "lts": lts.to_json()}


def cmd_bisim(args):
    rs = _rules(args.rules)
    res = bisim(rs, _closed(args.p), _closed(args.q))
    out = {"rules": rs.label(), "equivalent": res.equivalent}
    if not res.equivalent:
        out["distinguishing"] = res.witness
    return res.equivalent, out


def cmd_sound(args):
    rs = _rules(args.rules)
    eq = Equation.parse(args.equation)
    v = sound(rs, eq.lhs, eq.rhs, _enum(args), budget=args.budget)
    out = {"rules": rs.label(), "equation": str(eq), **v.to_json()}
    if v.refuted:
        out["counterexamples"] = [out.pop("substitution")]
    return not v.refuted, out


def cmd_axioms(args):
    E = _axioms(args.file)
    out: dict = {"name": E.name, "axioms": [f"{lab}: {eq}" for lab, eq in zip(E.labels, E.axioms)],
                 "saturated": is_saturated(E)}
    if args.closure:
        C = cl(E)
        out["closure"] = [str(eq) for eq in C.axioms]
    ok = True
    if args.rules:
        rs = _rules(args.rules)
        verdicts = sound_axioms(rs, E, _enum(args), budget=args.budget)
        out["rules"] = rs.label()
        out["soundness"] = {lab: v.to_json() for lab, v in verdicts}
        ok = not any(v.refuted for _, v in verdicts)
    return ok, out


def cmd_enumerate(args):
    for rs in enumerate_admissible():
        print(json.dumps({"rules": rs.to_json(), "label": rs.label(), **dispatch(rs).to_json()}))
    return True, None


def cmd_classify(args):
    rs = _rules(args.rules)
    oc = dispatch(rs)
    return oc.tag != "Inadmissible", {"rules": rs.label(), **tags(rs)}


def _family_rows(rs: RuleSet, n: int, start: int, case) -> list[dict]:
    return [r for r in verify_family(rs, n, start, case) if r["n"] == n]


def _case(rs: RuleSet, name: str) -> OperatorClass:
    oc = dispatch(rs)
    if name == "auto":
        if not oc.has_witness:
            raise UsageError(f"{rs.label()} is {oc.label}; it has no witness family")
        return oc
    mirrored = name.startswith("SymmetricVariant(")
    base = name[len("SymmetricVariant("):-1] if mirrored else name
    if base not in WITNESS_CASES:
        raise UsageError(f"unknown case {name!r}")
    return OperatorClass(oc.tag, base, oc.alpha or Action.A, mirrored)


def cmd_witness(args):
    rs = _rules(args.rules)
    oc = _case(rs, args.case)
    first = 0 if args.start == 0 else 1
    if args.jobs > 1:
        k = args.n - first + 1
        with ProcessPoolExecutor(args.jobs) as ex:
            parts = ex.map(_family_rows, [rs] * k, range(first, args.n + 1), [args.start] * k, [oc] * k)
            rows = [r for p in parts for r in p]
    else:
        rows = verify_family(rs, args.n, args.start, oc)
    if not args.emit_terms:
        for r in rows:
            r.pop("lhs"), r.pop("rhs")
    fam = witness_terms(oc.case, args.n, oc.alpha or Action.A, oc.mirrored, args.start)
    return all(r["ok"] for r in rows), {"rules": rs.label(), "case": oc.label,
                                        "witness": fam.witness.text, "verdicts": rows}


def cmd_prove(args):
    parts = [_axioms(name) for name in args.axioms.split(",")]
    E = parts[0]
    for extra in parts[1:]:
        E = E + extra
    eq = Equation.parse(args.equation)
    d = bounded_derivable(E, eq, max_size=args.max_size, max_depth=args.max_depth)
    out = {"equation": str(eq), "status": d.status, "explored": d.explored}
    if d.reason:
        out["reason"] = d.reason
    if d.proof is not None:
        out["checked"] = check_proof(E, d.proof).ok
        out["proof"] = proof_to_json(E, d.proof)
    return d.derivable, out


def cmd_decompose(args):
    rs = _rules(args.rules)
    p = _closed(args.term)
    c = STORE.of(rs, p)
    facts = factorisations(c)
    return True, {"rules": rs.label(), "term": p.text, "prime": is_prime(rs, p),
                  "factors": [q.text for q in prime_decompose(rs, p)],
                  "unique": len(facts) == 1}


def cmd_open_step(args):
    rs = _rules(args.rules)
    t = parse_term(args.term)
    aux = sorted(((str(lab), str(c)) for lab, c in aux_step(rs, t)))
    moves = sorted((mu.value, u.text) for mu, u in open_step(rs, t))
    return True, {"rules": rs.label(), "term": t.text,
                  "aux": [{"label": lab, "target": c} for lab, c in aux],
                  "moves": [{"action": mu, "target": u} for mu, u in moves]}


def cmd_trt(args):
    rs = _rules(args.rules)
    t = parse_term(args.term)
    rel = trt_table(rs, args.var, t)
    return bool(rel), {"rules": rs.label(), "var": args.var, "term": t.text,
                       "trt": [{"mode": w, "action": mu.value} for w, mu in rel]}


# ------------------------------------------------------------ argument parsing


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--json", action="store_true", help="compact one-line JSON")
    common.add_argument("--seed", type=int, default=0)
    common.add_argument("--jobs", type=int, default=1)

    rules = argparse.ArgumentParser(add_help=False)
    rules.add_argument("--rules", metavar="FILE", help="rule-set JSON file, shipped name or inline JSON")

    bounds = argparse.ArgumentParser(add_help=False)
    bounds.add_argument("--depth", type=int, default=2, help="tree depth bound")
    bounds.add_argument("--width", type=int, default=2, help="branches per node")
    bounds.add_argument("--budget", type=float, default=20.0, help="seconds per check")

    ap = argparse.ArgumentParser(prog="ccsf", description="CCS with a binary operator f: "
                                 "semantics, axioms and witness families")
    sub = ap.add_subparsers(dest="command", required=True)

    p = sub.add_parser("parse", parents=[common], help="parse and print a term")
    p.add_argument("term")
    p.add_argument("--equation", action="store_true")
    p.set_defaults(run=cmd_parse)

    p = sub.add_parser("lts", parents=[common, rules], help="reachable transition system")
    p.add_argument("term")
    p.add_argument("--cap", type=int, default=10**6)
    p.set_defaults(run=cmd_lts)

    p = sub.add_parser("bisim", parents=[common, rules], help="bisimilarity of two closed terms")
    p.add_argument("p")
    p.add_argument("q")
    p.set_defaults(run=cmd_bisim)

    p = sub.add_parser("sound", parents=[common, rules, bounds], help="bounded soundness of an equation")
    p.add_argument("equation")
    p.set_defaults(run=cmd_sound)

    p = sub.add_parser("axioms", parents=[common, rules, bounds], help="show, saturate or check an axiom file")
    p.add_argument("file", help="path or shipped name")
    p.add_argument("--closure", action="store_true")
    p.set_defaults(run=cmd_axioms)

    p = sub.add_parser("enumerate", parents=[common], help="the admissible rule sets, one per line")
    p.set_defaults(run=cmd_enumerate)

    p = sub.add_parser("classify", parents=[common, rules], help="distributivity and case")
    p.set_defaults(run=cmd_classify)

    p = sub.add_parser("witness", parents=[common, rules], help="check the witness family")
    p.add_argument("--n", type=int, default=5)
    p.add_argument("--start", type=int, default=0, choices=(0, 1), help="first summand index")
    p.add_argument("--case", default="auto", help="auto or a case name such as Labat")
    p.add_argument("--emit-terms", action="store_true", help="include both sides of every e_n")
    p.set_defaults(run=cmd_witness)

    p = sub.add_parser("prove", parents=[common], help="bounded proof search")
    p.add_argument("--axioms", required=True, help="axiom files or shipped names, comma separated")
    p.add_argument("equation")
    p.add_argument("--max-size", type=int, default=30)
    p.add_argument("--max-depth", type=int, default=8)
    p.set_defaults(run=cmd_prove)

    p = sub.add_parser("decompose", parents=[common, rules], help="prime decomposition")
    p.add_argument("term")
    p.set_defaults(run=cmd_decompose)

    p = sub.add_parser("open-step", parents=[common, rules], help="auxiliary transitions of an open term")
    p.add_argument("term")
    p.set_defaults(run=cmd_open_step)

    p = sub.add_parser("trt", parents=[common, rules], help="modes and actions for which x |> t")
    p.add_argument("var")
    p.add_argument("term")
    p.set_defaults(run=cmd_trt)
    return ap


def main(argv: list[str] | None = None) -> int:
    argv = sys.argv[1:] if argv is None else argv
    ap = build_parser()
    try:
        args = ap.parse_args(argv)
    except SystemExit as e:
        return 0 if e.code == 0 else 2
    random.seed(args.seed)
    t0 = time.perf_counter()
    try:
        ok, payload = args.run(args)
    except (UsageError, ParseError, RuleSetError, AxiomFileError, StateCapExceeded, ValueError) as e:
        print(f"ccsf {args.command}: {e}", file=sys.stderr)
        return 2
    except OSError as e:
        print(f"ccsf {args.command}: {e}", file=sys.stderr)
        return 2
    if payload is not None:
        report = {"command": ["ccsf", *argv], "verdict": "positive" if ok else "negative",
                  **payload, "timing_ms": round((time.perf_counter() - t0) * 1000, 3)}
        print(json.dumps(report, indent=None if args.json else 2))
    return 0 if ok else 1


if __name__ == "__main__":
    sys.exit(main())
