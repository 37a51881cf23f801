import random
import time

import pytest

from qfa_intersect.arith import QMatrix, direct_sum, mat_mul
from qfa_intersect.poly import Poly, matrix_of_vars, matrix_product, transpose
from qfa_intersect.zariski import (
    FINITE, contains_point, group_closure, ideal_equal, ideal_from, image_closure, point_ideal,
    product_chain, product_closure, translation_certificate,
)

from conftest import I2, R, SWAP
from oracles import group_elements, interpolated_ideal, signed_permutations

x11, x12, x21, x22 = (Poly.var(4, i) for i in range(4))
SO2 = ideal_from([x11 - x22, x12 + x21, x11 * x11 + x12 * x12 - 1], 4)


def test_empty_generators_give_identity_point():
    J = group_closure([], dim=2)
    assert ideal_equal(J, ideal_from([x11 - 1, x12, x21, x22 - 1], 4))
    assert J.certified


def test_rotation_closure_is_so2():
    t = time.perf_counter()
    J = group_closure([R], 4)
    assert time.perf_counter() - t < 5
    assert J.certified and ideal_equal(J, SO2)
    assert translation_certificate(J, [R])


def test_swap_closure_is_two_points():
    J = group_closure([SWAP], 4)
    assert J.certified and J.note.startswith(FINITE)
    for p in (x11 - x22, x12 - x21, x11 + x12 - 1, x11 * x12):
        assert J.contains(p)
    assert set(J.points) == {I2, SWAP}


def test_contains_point_examples():
    assert contains_point(SO2, R)
    assert not contains_point(SO2, SWAP)
    assert contains_point(point_ideal(I2), I2)


def test_dump_is_stable():
    text = group_closure([R], 4).dump()
    assert text == group_closure([R], 4).dump()
    assert "x_1_1" in text and text.endswith("\n")


def _random_orthogonal_products(rng, gens, k=6):
    out = []
    for _ in range(k):
        m = QMatrix.identity(gens[0].dim)
        for _ in range(rng.randint(1, 5)):
            m = mat_mul(m, rng.choice(gens))
        out.append(m)
    return out


@pytest.mark.parametrize("gens", [[R], [SWAP], [R, SWAP], [QMatrix([[0, 1], [-1, 0]])]])
def test_closure_invariants(gens):
    J = group_closure(gens, 4)
    assert translation_certificate(J, gens)
    assert contains_point(J, QMatrix.identity(2))
    assert all(contains_point(J, g) for g in gens)
    for m in _random_orthogonal_products(random.Random(3), gens):
        assert contains_point(J, m)
        assert contains_point(J, m.T)


@pytest.mark.parametrize("seed", range(4))
def test_finite_groups_match_interpolation(seed):
    rng = random.Random(seed)
    n = rng.choice([2, 3])
    gens = rng.sample(signed_permutations(n), rng.randint(1, 2))
    pts = group_elements(gens, n)
    J = group_closure(gens, 6)
    assert J.certified and set(J.points) == pts
    assert ideal_equal(J, interpolated_ideal(pts))


def test_image_closure_examples():
    A = QMatrix([["3/5", "4/5"], ["4/5", "-3/5"]])
    ident = [Poly.var(4, i) for i in range(4)]
    assert ideal_equal(image_closure(point_ideal(A), ident), point_ideal(A))

    X = matrix_of_vars(2, 8, 0)
    Y = matrix_of_vars(2, 8, 4)
    psi = [p for row in matrix_product(X, transpose(Y)) for p in row]
    # the 4x4 point A ⊕ B read as (X, Y) with X = A, Y = B
    src = ideal_from([Poly.var(8, k) - v for k, v in enumerate(A.flat() + R.flat())], 8)
    assert ideal_equal(image_closure(src, psi), point_ideal(mat_mul(A, R.T)))

    so2_pair = ideal_from([g.embed(8, range(4)) for g in SO2.gens] +
                          [g.embed(8, range(4, 8)) for g in SO2.gens], 8)
    assert ideal_equal(image_closure(so2_pair, psi), group_closure([R], 4))


def test_product_closure_of_points():
    P = product_closure(point_ideal(R), point_ideal(R.T))
    assert ideal_equal(P, point_ideal(I2))
    assert P.points == (I2,)


def test_product_chain_examples():
    ch = product_chain(point_ideal(I2))
    assert ch.stabilized and ch.steps_used == 1 and len(ch.ideals) == 1

    ch = product_chain(SO2)
    assert ch.stabilized and ch.steps_used == 1 and ideal_equal(ch.union, SO2)

    ch = product_chain(point_ideal(SWAP))
    assert ch.stabilized and ch.steps_used <= 2
    assert set(ch.union.points) == {I2, SWAP}
    assert ideal_equal(ch.union, group_closure([SWAP], 4))


def test_product_chain_varieties_ascend():
    H1 = group_closure([direct_sum([QMatrix([[0, 1], [-1, 0]])])], 4)
    ch = product_chain(H1)
    for a, b in zip(ch.ideals, ch.ideals[1:]):
        for m in a.points or ():
            assert contains_point(b, m)


def test_cap_limited_result_is_flagged():
    J = group_closure([R], 1)
    assert not J.certified and J.note.startswith("upper-approximation")
    assert contains_point(J, R) and contains_point(J, I2)
