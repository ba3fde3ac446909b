import random

import pytest

from exdiv.corpus import (
    ade_matrix,
    all_cyclic_quotients,
    dynkin_edges,
    random_curve_system,
    random_stratified,
    random_toric_divisor,
)
from exdiv.errors import InvalidInput
from exdiv.linalg import det
from exdiv.toric import build_fan
from oracles import cofactor_det


def test_ade_examples():
    a2 = ade_matrix("A", 2)
    assert [list(r) for r in a2.matrix.rows] == [[-2, 1], [1, -2]]
    assert det(a2.matrix) == cofactor_det(a2.matrix.rows) == 3
    d4 = ade_matrix("D", 4)
    assert sorted(sum(1 for x in r if x == 1) for r in d4.matrix.rows) == [1, 1, 1, 3]
    assert det(d4.matrix) == cofactor_det(d4.matrix.rows) == 4
    e8 = ade_matrix("E", 8)
    assert det(e8.matrix) == cofactor_det(e8.matrix.rows) == 1


@pytest.mark.parametrize("family, rank", [("A", 0), ("D", 3), ("E", 5), ("E", 9), ("B", 3)])
def test_ade_invalid(family, rank):
    with pytest.raises(InvalidInput):
        ade_matrix(family, rank)


@pytest.mark.parametrize("family, rank", [("A", 7), ("D", 9), ("E", 6), ("E", 7), ("E", 8)])
def test_dynkin_graphs_are_trees(family, rank):
    edges = dynkin_edges(family, rank)
    assert len(edges) == rank - 1
    seen, stack = {0}, [0]
    while stack:
        v = stack.pop()
        for a, b in edges:
            for x, y in ((a, b), (b, a)):
                if x == v and y not in seen:
                    seen.add(y)
                    stack.append(y)
    assert seen == set(range(rank))


def test_quotient_count():
    assert sum(1 for _ in all_cyclic_quotients(200)) == 12231


def test_generators_are_seeded():
    a = random_curve_system(random.Random(5))
    b = random_curve_system(random.Random(5))
    assert a == b and a.size <= 8
    s1, s2 = random_stratified(random.Random(9)), random_stratified(random.Random(9))
    assert s1 == s2
    fan = build_fan(7, 3)
    D = random_toric_divisor(random.Random(1), fan)
    assert all(abs(c) <= 3 and c.denominator <= 6 for c in D.coeffs)
