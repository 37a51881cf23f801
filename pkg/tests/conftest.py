import sys
from fractions import Fraction
from pathlib import Path

import pytest

from qfa_intersect import automaton, grammars
from qfa_intersect.arith import QMatrix

FIXTURES = Path(__file__).resolve().parent.parent / "src" / "qfa_intersect" / "fixtures"
GRAMMAR_FIXTURES = sorted(p.name for p in FIXTURES.glob("*.json") if not p.name.startswith("qfa_"))
QFA_FIXTURES = sorted(p.name for p in FIXTURES.glob("qfa_*.json"))

R = QMatrix([["3/5", "4/5"], ["-4/5", "3/5"]])
SWAP = QMatrix([[0, 1], [1, 0]])
I2 = QMatrix.identity(2)


def fixture_path(name):
    return FIXTURES / name


def load_qfa(name):
    return automaton.load(FIXTURES / name)


def load_grammar(name):
    return grammars.load(FIXTURES / name)


def linear(*rules, axiom="S"):
    return grammars.from_json({"kind": "linear", "axiom": axiom, "productions": list(rules)})


def rotation_qfa(a=R, b=None, c=None, threshold="1/2", P=((1, 0), (0, 0))):
    return automaton.make(
        "abc", [1, 0],
        {"a": a, "b": b if b is not None else a.T, "c": c if c is not None else I2},
        [list(r) for r in P], Fraction(threshold),
    )


@pytest.fixture
def rot():
    return load_qfa("qfa_rotation.json")


@pytest.fixture
def fin():
    return load_qfa("qfa_finite.json")


def pytest_terminal_summary(terminalreporter):
    acceptance = sys.modules.get("test_acceptance")
    if acceptance is None or not acceptance.RESULTS:
        return
    terminalreporter.section("acceptance criteria")
    for n, (ok, line) in sorted(acceptance.RESULTS.items()):
        terminalreporter.write_line(f"AC{n} {'PASS' if ok else 'FAIL'} {line}")
