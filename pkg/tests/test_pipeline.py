import pytest

from qfa_intersect import grammars
from qfa_intersect.arith import QMatrix, mat_mul
from qfa_intersect.automaton import phi_of_word
from qfa_intersect.grammars import Metalinear, enumerate_words
from qfa_intersect.pipeline import (
    ClosureConfig, closure, closure_linear, closure_metalinear, closure_monoidal,
)
from qfa_intersect.semialg import probe
from qfa_intersect.zariski import group_closure, ideal_equal

from conftest import GRAMMAR_FIXTURES, I2, QFA_FIXTURES, R, linear, load_grammar, load_qfa, rotation_qfa

R5 = mat_mul(mat_mul(mat_mul(R, R), mat_mul(R, R)), R)


def sound(rep, g, q, n):
    samples = rep.samples(n)
    words = enumerate_words(g, n)
    missing = [w for w in words if w not in samples]
    bad = [w for w in words if w in samples and (
        samples[w][0] != phi_of_word(q, w) or probe(rep.formula, samples[w][0], samples[w][1]) is not True)]
    return missing, bad


def test_linear_epsilon_only():
    rep = closure_linear(linear("S -> ε"), rotation_qfa())
    assert rep.certified and rep.formula.members() == [I2]


def test_linear_telescoping():
    rep = closure_linear(linear("S -> a S b | ε"), rotation_qfa())
    assert rep.certified
    assert probe(rep.formula, I2, rep.samples(4)[("a", "a", "b", "b")][1]) is True


def test_linear_dense_rotation():
    q = rotation_qfa(b=I2)
    rep = closure_linear(linear("S -> a S b | ε"), q)
    assert rep.certified
    m, wit = rep.samples(10)[tuple("aaaaabbbbb")]
    assert m == R5 and probe(rep.formula, R5, wit) is True


def test_metalinear_examples():
    q = rotation_qfa()
    single = Metalinear(((linear("S -> a S b | ε"),),))
    lin = closure_linear(linear("S -> a S b | ε"), q)
    met = closure_metalinear(single, q)
    assert met.formula.to_json() == lin.formula.to_json()
    two = Metalinear(((linear("S -> a"), linear("T -> b", axiom="T")),))
    assert closure_metalinear(two, q).formula.members() == [mat_mul(R, R.T)]
    either = Metalinear(((linear("S -> a"),), (linear("T -> b", axiom="T"),)))
    assert set(closure_metalinear(either, q).formula.members()) == {R, R.T}


def test_matrix_examples():
    g = load_grammar("example2_matrix.json")
    ident = closure(g, rotation_qfa(a=I2, b=I2, c=I2))
    assert ident.certified and ident.formula.members() == [I2]
    rep = closure(g, rotation_qfa(a=R, b=R.T, c=I2))
    assert rep.certified
    assert probe(rep.formula, I2, rep.samples(3)[("a", "b", "c")][1]) is True


def test_square_words_probe():
    g = load_grammar("square_words_matrix.json")
    q = rotation_qfa()
    rep = closure(g, q)
    m, wit = rep.samples(4)[tuple("abab")]
    assert m == phi_of_word(q, "abab") == I2
    assert probe(rep.formula, m, wit) is True


def test_monoidal_examples():
    g = load_grammar("example1_monoidal.json")
    rep = closure_monoidal(g, rotation_qfa())
    assert rep.certified
    assert all(m == I2 for m, _ in rep.samples(8).values())

    depth1 = grammars.MonoidalGrammar(linear("S -> a S b | ε"), (), {"": True})
    mono = closure(depth1, rotation_qfa())
    lin = closure(linear("S -> a S b | ε"), rotation_qfa())
    for w, (m, wit) in mono.samples(6).items():
        assert probe(mono.formula, m, wit) is True
        assert lin.samples(6)[w][0] == m

    dense = closure_monoidal(g, rotation_qfa(b=I2))
    assert dense.certified
    chain = dense.chains[0]
    assert chain.stabilized and chain.steps_used == 1
    m, wit = dense.samples(10)[tuple("aaaaabbbbb")]
    assert m == R5 and probe(dense.formula, R5, wit) is True


def test_missing_irreducibility_flag_warns():
    g = grammars.MonoidalGrammar(linear("S -> a S b | ε"))
    rep = closure(g, rotation_qfa())
    assert "warning" in rep.provenance.detail


def test_empty_language_short_circuits():
    g = grammars.from_json({"kind": "restricted-matrix", "blocks": [["A"]],
                            "matrices": [["S -> a A"], ["A -> a A"]]})
    rep = closure(g, rotation_qfa())
    assert rep.formula.is_empty_formula and rep.certified


def test_uncertified_when_capped():
    rep = closure(linear("S -> a S b | ε"), rotation_qfa(b=I2), ClosureConfig(degree_cap=1))
    assert not rep.certified


def test_general_cfg_rejected():
    from qfa_intersect.pipeline import ClosureError
    g = grammars.CFGrammar(("S",), ("a",), (grammars.Production("S", ("S", "S")),), "S")
    with pytest.raises(ClosureError):
        closure(g, rotation_qfa())


@pytest.mark.parametrize("qname", QFA_FIXTURES)
@pytest.mark.parametrize("gname", GRAMMAR_FIXTURES)
def test_soundness_probes(gname, qname):
    g, q = load_grammar(gname), load_qfa(qname)
    rep = closure(g, q)
    assert rep.certified
    missing, bad = sound(rep, g, q, 6)
    assert not missing and not bad


@pytest.mark.parametrize("gname", GRAMMAR_FIXTURES)
def test_finite_images_match_brute_force(gname):
    g, q = load_grammar(gname), load_qfa("qfa_finite.json")
    rep = closure(g, q)
    image = {phi_of_word(q, w) for w in enumerate_words(g, 10)}
    assert set(rep.formula.members()) == image


def test_report_json_without_timings_is_stable():
    g, q = load_grammar("anbn_linear.json"), load_qfa("qfa_rotation.json")
    a = closure(g, q).to_json(timings=False)
    b = closure(g, q).to_json(timings=False)
    assert a == b and "timings" not in a
