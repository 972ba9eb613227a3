"""CCS extended with a binary operator f given by de Simone rules: terms,
operational semantics, bisimilarity, equational logic and witness families."""
from .eqlogic import AxiomSystem, Equation, bounded_derivable, check_proof
from .operators import dispatch, enumerate_admissible
from .parser import ParseError, parse_term
from .semantics import STORE, SyncTreeEnumerator, bisim, equivalent, sound
from .sos import RuleSet, Sync, step
from .terms import NIL, Action, Term, fop, par, plus, prefix, var

__all__ = [
    "Action", "AxiomSystem", "Equation", "NIL", "ParseError", "RuleSet", "STORE", "Sync",
    "SyncTreeEnumerator", "Term", "bisim", "bounded_derivable", "check_proof", "dispatch",
    "enumerate_admissible", "equivalent", "fop", "par", "parse_term", "plus", "prefix",
    "sound", "step", "var",
]
