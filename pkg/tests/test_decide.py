import shlex
import sys
from fractions import Fraction

import pytest

import importlib

from qfa_intersect.arith import QMatrix
from qfa_intersect.automaton import with_threshold
from qfa_intersect.decide import (
    EMPTY, INCONCLUSIVE, NONEMPTY, RunConfig, brute_force, build_decision_query, decide,
    emit_smtlib, parse_model, recheck_model, run_solver,
)
from qfa_intersect.pipeline import closure
from qfa_intersect.semialg import from_points, from_variety
from qfa_intersect.zariski import group_closure

from conftest import I2, R, linear, load_grammar, rotation_qfa

# the package re-exports the function under the module's name
dec = importlib.import_module("qfa_intersect.decide")

PY = shlex.quote(sys.executable)


def stub(output: str) -> str:
    return f"{PY} -c {shlex.quote(f'import sys; sys.stdin.read(); print({output!r})')}"


def test_point_query_is_ground():
    q = rotation_qfa()
    text = emit_smtlib(build_decision_query(from_points([I2]), q))
    asserts = [l for l in text.splitlines() if l.startswith("(assert")]
    assert len(asserts) == 5
    assert sum("(= " in a for a in asserts) == 4 and asserts[-1].startswith("(assert (> ")
    assert text.count("(check-sat)") == 1 and "(/ 1.0 2.0)" in text


def test_so2_query_structure_and_idempotence():
    q = rotation_qfa()
    query = build_decision_query(from_variety(group_closure([R], 4)), q)
    text = emit_smtlib(query)
    asserts = [l for l in text.splitlines() if l.startswith("(assert")]
    assert len(asserts) == 4 and sum(a.startswith("(assert (= ") for a in asserts) == 3
    assert text == emit_smtlib(query)
    assert text.splitlines()[0] == "(set-logic QF_NRA)"


def test_query_dimension_mismatch():
    with pytest.raises(ValueError):
        build_decision_query(from_points([QMatrix.identity(3)]), rotation_qfa())


def test_acceptance_polynomial_at_identity():
    q = rotation_qfa()
    query = build_decision_query(from_points([I2]), q)
    model = {"X_1_1": Fraction(1), "X_1_2": Fraction(0), "X_2_1": Fraction(0), "X_2_2": Fraction(1)}
    assert recheck_model(query, model)
    model["X_1_1"] = Fraction(1, 2)
    assert not recheck_model(query, model)


def test_run_solver_outcomes():
    assert run_solver("(check-sat)\n", stub("sat"), 10) == ("sat", "sat\n")
    assert run_solver("", stub("unsat"), 10)[0] == "unsat"
    assert run_solver("", stub("segmentation fault"), 10)[0] == "unknown"
    sleeper = f"{PY} -c {shlex.quote('import time; time.sleep(5)')}"
    assert run_solver("", sleeper, 0.5)[0] == "timeout"
    assert run_solver("", "/nonexistent/solver", 1)[0] == "not-run"
    assert run_solver("", None, 1)[0] == "not-run"


def test_parse_model():
    text = """sat
(
  (define-fun X_1_1 () Real
    (/ 3.0 5.0))
  (define-fun X_1_2 () Real
    (- (/ 4.0 5.0)))
  (define-fun X_2_2 () Real 0.25)
)"""
    assert parse_model(text) == {"X_1_1": Fraction(3, 5), "X_1_2": Fraction(-4, 5), "X_2_2": Fraction(1, 4)}
    algebraic = "sat\n((define-fun X_1_1 () Real (root-obj (+ (^ x 2) (- 2)) 1)))"
    assert parse_model(algebraic) is None


def test_brute_force_examples():
    g = linear("S -> a S b | ε")
    assert brute_force(g, rotation_qfa(threshold=-1), 4) == ((), 1)
    assert brute_force(g, rotation_qfa(), 6) == ((), 1)
    assert brute_force(g, rotation_qfa(threshold=1), 8) is None


def test_brute_force_monotone():
    g = linear("S -> a S | b S | ε")
    q = rotation_qfa(P=((0, 0), (0, 1)), threshold="9/10")
    found = None
    for n in range(8):
        hit = brute_force(g, q, n)
        if found is not None:
            assert hit == found
        found = found or hit
    assert found is not None


def test_decide_examples():
    g = linear("S -> a S b | ε")
    r = decide(rotation_qfa(threshold=1), g, RunConfig(smt_cmd=stub("sat")))
    assert r.verdict == EMPTY and r.certified and r.solver_outcome == "not-run"
    r = decide(rotation_qfa(), g, RunConfig(smt_cmd=stub("unknown")))
    assert r.verdict == NONEMPTY and r.witness == () and r.witness_prob == 1
    assert r.exit_code == 1


def test_zero_projection_is_empty():
    q = rotation_qfa(P=((0, 0), (0, 0)), threshold=0)
    r = decide(q, load_grammar("example2_matrix.json"), RunConfig(mode="symbolic"))
    assert r.verdict == EMPTY and r.exit_code == 0


def test_unsat_needs_certified_closure():
    q = rotation_qfa(b=I2, P=((0, 0), (0, 1)), threshold=2)
    q = with_threshold(q, "99/100")
    g = linear("S -> a S b | ε")
    capped = decide(q, g, RunConfig(mode="symbolic", degree_cap=1, smt_cmd=stub("unsat")))
    assert capped.verdict == INCONCLUSIVE and capped.exit_code == 2
    full = decide(q, g, RunConfig(mode="symbolic", smt_cmd=stub("unsat")))
    assert full.verdict == EMPTY and full.certified


def test_sat_without_exact_model_is_inconclusive():
    q = rotation_qfa(b=I2, P=((0, 0), (0, 1)), threshold="1/2")
    g = linear("S -> a S b | ε")
    r = decide(q, g, RunConfig(mode="symbolic", smt_cmd=stub("sat")))
    assert r.verdict == INCONCLUSIVE and r.solver_outcome == "sat"


def _model_text(formula, m, witness):
    table = {name: f"B{k}" for k, (name, _) in enumerate(formula.blocks)}
    vals = {f"X_{i + 1}_{j + 1}": m[i, j] for i in range(m.dim) for j in range(m.dim)}
    for name, w in witness.items():
        if name not in table:
            continue
        vals.update({f"{table[name]}_{i + 1}_{j + 1}": w[i, j] for i in range(w.dim) for j in range(w.dim)})
    lit = lambda c: f"(/ {c.numerator}.0 {c.denominator}.0)" if c >= 0 else f"(- (/ {-c.numerator}.0 {c.denominator}.0))"
    return "sat\n(" + " ".join(f"(define-fun {k} () Real {lit(v)})" for k, v in sorted(vals.items())) + ")"


def test_sat_with_rechecked_model():
    q = rotation_qfa(b=I2, P=((0, 0), (0, 1)), threshold="1/2")
    g = linear("S -> a S b | ε")
    rep = closure(g, q)
    m, wit = rep.samples(2)[("a", "b")]
    model = _model_text(rep.formula, m, wit)
    r = decide(q, g, RunConfig(mode="symbolic", smt_cmd=stub(model)))
    assert r.verdict == NONEMPTY and r.certified and r.witness is None
    assert r.cross_check == "symbolic-only"
    wrong = model.replace("(define-fun X_1_1 () Real (/ 3.0 5.0))", "(define-fun X_1_1 () Real (/ 1.0 5.0))")
    assert wrong != model
    r = decide(q, g, RunConfig(mode="symbolic", smt_cmd=stub(wrong)))
    assert r.verdict == INCONCLUSIVE


def test_conflict_is_reported(monkeypatch):
    def lying(g, q, cfg):
        out = dec._Symbolic()
        out.verdict, out.certified = EMPTY, True
        return out
    monkeypatch.setattr(dec, "symbolic_branch", lying)
    r = decide(rotation_qfa(), linear("S -> a S b | ε"), RunConfig())
    assert r.cross_check == "conflict" and r.exit_code == 4
    assert r.verdict == NONEMPTY and r.witness == ()


def test_brute_only_mode():
    r = decide(rotation_qfa(P=((0, 0), (0, 1)), threshold=0), linear("S -> a S b | ε"),
               RunConfig(mode="brute", max_len=6))
    assert r.verdict == INCONCLUSIVE and r.cross_check == "brute-only"
    assert r.to_json()["branches"] == {"symbolic": "not-run", "brute": "no witness up to length 6"}


def test_run_config_checks():
    with pytest.raises(ValueError):
        RunConfig(mode="fast")
    with pytest.raises(ValueError):
        RunConfig(degree_cap=0)
    with pytest.raises(ValueError):
        RunConfig(chain_cap=0)


def test_default_solver_env(monkeypatch):
    monkeypatch.setenv("QFA_SMT_CMD", "my-solver -in")
    assert dec.default_solver() == "my-solver -in"
