import json

from qfa_intersect import grammars
from qfa_intersect.arith import QMatrix, direct_sum, mat_mul
from qfa_intersect.automaton import make, phi_of_word
from qfa_intersect.cycles import (
    cycle_automaton_linear, cycle_automaton_matrix, group_generators, root_loops,
)
from qfa_intersect.zariski import contains_point, group_closure

from conftest import I2, R, SWAP, fixture_path, linear
from oracles import group_elements

Q4 = make("abcd", [1, 0], {"a": R, "b": R.T, "c": SWAP, "d": QMatrix([[0, 1], [-1, 0]])},
          [[1, 0], [0, 0]], "1/2")


def label(u, v):
    return direct_sum([phi_of_word(Q4, u), phi_of_word(Q4, v).T])


def test_single_rule_loop():
    aut = cycle_automaton_linear(linear("S -> a S b | ε"), Q4, "S")
    assert len(aut.edges) == 1 and aut.edges[0].src == aut.edges[0].dst == "S"
    assert aut.edges[0].label == label("a", "b")
    assert group_generators(aut).generators == (label("a", "b"),)


def test_two_state_cycle():
    g = linear("S -> a T b | ε", "T -> c S d")
    aut = cycle_automaton_linear(g, Q4, "S")
    assert {(e.src, e.dst) for e in aut.edges} == {("S", "T"), ("T", "S")}
    gens = group_generators(aut).generators
    assert gens == (mat_mul(label("a", "b"), label("c", "d")),)
    assert gens[0] == label("ac", "db")


def test_empty_right_context():
    aut = cycle_automaton_linear(linear("S -> a c S | ε"), Q4, "S")
    assert aut.edges[0].label == direct_sum([phi_of_word(Q4, "ac"), I2])


def test_example2_state_loop():
    g = grammars.load(fixture_path("example2_matrix.json"))
    q = make("abc", [1, 0], {"a": R, "b": SWAP, "c": R.T}, [[1, 0], [0, 0]], 0)
    aut = cycle_automaton_matrix(g, q, ("A", "B", "C"))
    assert aut.states == (("A", "B", "C"),) and len(aut.edges) == 1
    assert aut.edges[0].label == direct_sum([R, I2, SWAP, I2, R.T, I2])
    assert aut.dim == 12


def test_no_step_matrices():
    g = grammars.from_json({"kind": "restricted-matrix", "blocks": [["A"]],
                            "matrices": [["S -> a A"], ["A -> ε"]]})
    q = make("a", [1, 0], {"a": R}, [[1, 0], [0, 0]], 0)
    aut = cycle_automaton_matrix(g, q, ("A",))
    assert aut.edges == ()
    assert group_generators(aut).generators == ()


def test_parallel_edges_kept():
    g = grammars.from_json({"kind": "restricted-matrix", "blocks": [["A"], ["B"]],
                            "matrices": [["S -> A B"], ["A -> a A", "B -> a B"],
                                         ["A -> b A", "B -> b B"], ["A -> ε", "B -> ε"]]})
    q = make("ab", [1, 0], {"a": R, "b": SWAP}, [[1, 0], [0, 0]], 0)
    aut = cycle_automaton_matrix(g, q, ("A", "B"))
    assert len(aut.edges) == 2


def test_untrimmed_states_are_recorded():
    g = linear("S -> a S b | a T | ε", "T -> c T | d")
    gs = group_generators(cycle_automaton_linear(g, Q4, "S"))
    assert gs.trimmed == ("T",)


def test_dump_format():
    text = cycle_automaton_linear(linear("S -> a T b | ε", "T -> c S d"), Q4, "S").dump()
    lines = text.splitlines()
    assert lines[0] == "S  --[m0]-->  T" and lines[1] == "T  --[m1]-->  S"
    assert "m0 =" in text


def test_root_loops_lie_in_generated_group():
    g = linear("S -> a T b | c S | ε", "T -> d S c | a T")
    aut = cycle_automaton_linear(g, Q4, "S")
    gens = group_generators(aut)
    closure = group_closure(gens, 4)
    finite = None
    try:
        finite = group_elements(gens.generators, 4, cap=2000)
    except RuntimeError:
        pass
    for _, m in root_loops(aut, 6):
        assert contains_point(closure, m)
        if finite is not None:
            assert m in finite


def test_generator_witnesses_reproduce_generators():
    g = linear("S -> a T b | c S | ε", "T -> d S c | a T")
    aut = cycle_automaton_linear(g, Q4, "S")
    gs = group_generators(aut)
    for gen, (to_src, k, to_dst) in zip(gs.generators, gs.witnesses):
        def path(ks):
            m = QMatrix.identity(aut.dim)
            for i in ks:
                m = mat_mul(m, aut.edges[i].label)
            return m
        assert mat_mul(mat_mul(path(to_src), aut.edges[k].label), path(to_dst).T) == gen
