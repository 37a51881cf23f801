import random

import pytest

from qfa_intersect.arith import QMatrix, direct_sum, mat_mul
from qfa_intersect.semialg import (
    FALSE, TRUE, SemiAlgSet, And, atoms, blocks_product, blocks_product_witness, dsum, empty,
    from_points, from_variety, node_size, probe, product, product_witness, rename, sandwich, union,
    whole,
)
from qfa_intersect.zariski import group_closure, ideal_from, point_ideal

from conftest import I2, R, SWAP
from oracles import signed_permutations

SO2 = from_variety(group_closure([R], 4))
J = QMatrix([[0, 1], [-1, 0]])


def members(s):
    out = s.members()
    assert out is not None
    return set(out)


def test_from_variety_examples():
    pt = from_variety(point_ideal(I2))
    assert len(atoms(pt.body)) == 4 and probe(pt, I2) is True and probe(pt, R) is False
    assert isinstance(SO2.body, And) and len(SO2.body.items) == 3
    assert from_variety(ideal_from([], 4)).body == TRUE


def test_union_and_product_examples():
    u = union(from_points([I2]), from_points([R]))
    assert probe(u, R) is True and members(u) == {I2, R}
    p = product(from_points([R]), from_points([R.T]))
    assert members(p) == {I2} and probe(p, I2) is True
    a = from_points([R, SWAP])
    assert members(product(a, from_points([I2]))) == members(a)


def test_product_of_varieties_uses_bound_blocks():
    p = product(SO2, SO2)
    assert [b for b, _ in p.blocks] == ["Y", "Z"]
    w = product_witness({}, {}, R, mat_mul(R, R))
    assert probe(p, mat_mul(mat_mul(R, R), R), w) is True
    assert probe(p, SWAP, product_witness({}, {}, R, R)) is False


def test_sandwich_examples():
    b = from_points([R, J])
    same = sandwich(from_points([direct_sum([I2, I2])]), b)
    assert members(same) == members(b)
    assert members(sandwich(from_points([direct_sum([R, R.T])]), from_points([I2]))) == {I2}
    assert members(sandwich(from_points([direct_sum([R, I2])]), from_points([R]))) == {mat_mul(R, R)}


def test_dsum_and_blocks_product_examples():
    d = dsum([from_points([I2]), from_points([I2])])
    assert members(d) == {QMatrix.identity(4)}
    bp = blocks_product(from_points([direct_sum([R, R.T])]), 2)
    assert members(bp) == {I2}
    a, b = mat_mul(R, J), SWAP
    assert members(blocks_product(dsum([from_points([a]), from_points([b])]), 2)) == {mat_mul(a, b)}
    with pytest.raises(ValueError):
        dsum([])


def test_blocks_product_transposed_witness():
    bp = blocks_product(dsum([SO2, SO2]), 2, [False, True])
    m = direct_sum([R, mat_mul(R, R)])
    assert probe(bp, mat_mul(R, mat_mul(R, R).T), blocks_product_witness({}, m)) is True


def test_rename_examples():
    pt = from_points([R])
    assert rename({}, pt).body == pt.body
    t = rename(lambda i, j: (j, i), pt)
    assert members(t) == {R.T} and probe(t, R.T) is True
    assert rename(lambda i, j: (j, i), t).body == pt.body
    with pytest.raises(ValueError):
        rename({(0, 0): (0, 1)}, pt)


def test_probe_examples():
    assert probe(from_points([I2]), I2) is True
    p = product(SO2, from_points([R.T]))
    assert probe(p, I2) is True
    pp = product(SO2, SO2)
    assert probe(pp, I2, product_witness({}, {}, R, R.T)) is True
    assert probe(SO2, SWAP) is False
    assert probe(pp, SWAP) is None


def test_empty_and_whole():
    assert empty(2).members() == [] and empty(2).is_empty_formula
    assert probe(whole(2), SWAP) is True
    assert union(empty(2), from_points([R])).body == from_points([R]).body
    assert product(empty(2), SO2).body == FALSE


def test_dimension_mismatch():
    with pytest.raises(ValueError):
        union(from_points([I2]), from_points([QMatrix.identity(3)]))
    with pytest.raises(ValueError):
        sandwich(from_points([I2]), from_points([I2]))


def test_canonical_names_and_json():
    p = product(SO2, product(SO2, SO2))
    c = p.canonical()
    assert [b for b, _ in c.blocks] == [f"B{k}" for k in range(len(p.blocks))]
    js = p.to_json()
    assert js["dim"] == 2 and js["size"] == node_size(p.body)
    assert "∃B0[2x2]" in p.pretty()


ORTH = signed_permutations(2) + [R, R.T, J]


@pytest.mark.parametrize("seed", range(10))
def test_point_calculus_agrees_with_arithmetic(seed):
    rng = random.Random(seed)
    a, b, c = (rng.choice(ORTH) for _ in range(3))
    pa, pb = from_points([a]), from_points([b])
    assert probe(product(pa, pb), mat_mul(a, b), product_witness({}, {}, a, b)) is True
    assert members(product(pa, pb)) == {mat_mul(a, b)}
    A, B, C = from_points([a]), from_points([b, a]), from_points([c])
    left, right = product(product(A, B), C), product(A, product(B, C))
    assert members(left) == members(right)
    assert members(union(union(A, B), C)) == members(union(A, union(B, C)))


def test_formula_size_is_linear():
    sizes = []
    acc = SO2
    for _ in range(5):
        acc = product(acc, SO2)
        sizes.append(node_size(acc.body))
    steps = {b - a for a, b in zip(sizes, sizes[1:])}
    assert len(steps) == 1
