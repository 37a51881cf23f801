"""Emptiness of structured languages intersected with quantum cut-point languages."""

from .arith import QMatrix, QVector, parse_rational
from .automaton import QuantumAutomaton, accept_prob, in_cutpoint
from .decide import DecisionReport, RunConfig, decide
from .grammars import enumerate_words, parse_grammar
from .pipeline import ClosureConfig, ClosureReport, closure
from .semialg import SemiAlgSet, probe
from .zariski import PolyIdeal, group_closure, ideal_equal

__all__ = [
    "QMatrix", "QVector", "parse_rational",
    "QuantumAutomaton", "accept_prob", "in_cutpoint",
    "DecisionReport", "RunConfig", "decide",
    "enumerate_words", "parse_grammar",
    "ClosureConfig", "ClosureReport", "closure",
    "SemiAlgSet", "probe",
    "PolyIdeal", "group_closure", "ideal_equal",
]
