import math

import pytest

from gradedpi.combinatorics import Partition, dim_irrep, enumerate_partitions
from gradedpi.graded_algebra import BUILTINS, builtin, component_dims
from gradedpi.multilinear import degree_vectors, partial_codimension
from gradedpi.representation import (HClass, h_classes, multipartitions, multiplicities,
                                     partial_colength, quotient_module, quotient_trace,
                                     verify_multiplicity_bound, verify_rank_character_sum)


def P(*parts):
    return Partition(parts)


def test_h_classes_partition_the_group():
    for dv in [(3,), (2, 2), (1, 2, 1)]:
        order = math.prod(math.factorial(n) for n in dv)
        assert sum(c.size for c in h_classes(dv)) == order
        assert len(multipartitions(dv)) == len(h_classes(dv))


def test_identity_trace_is_codimension():
    A = builtin("M2_Z2")
    for dv in degree_vectors(A, 3):
        e = HClass.of(*[[1] * n for n in dv.parts])
        assert quotient_trace(A, dv, e) == partial_codimension(A, dv)
    with pytest.raises(ValueError):
        quotient_trace(A, (2, 1), HClass.of([1], [1]))


def test_group_algebra_multiplicities():
    A = builtin("group_algebra:Z_2")
    for n in range(1, 5):
        for dv in degree_vectors(A, n):
            t = multiplicities(A, dv)
            assert t.nonzero() == {tuple(P(x) if x else P() for x in dv.parts): 1}
            assert t.colength == 1


def test_matrix_algebra_degree_four_cocharacter():
    # the only identity of degree 4 is the standard polynomial, spanning the sign module
    t = multiplicities(builtin("M2"), (4,), associative=True)
    expect = {lam: dim_irrep(lam) for lam in enumerate_partitions(4)}
    expect[P(1, 1, 1, 1)] = 0
    assert {lams[0]: m for lams, m in t.entries.items()} == expect
    assert t.codimension == 23 and t.colength == 9


def test_cross_product_degree_three():
    t = multiplicities(builtin("cross3"), (3,))
    assert t.nonzero() == {(P(2, 1),): 1}


def test_nilpotent_and_field():
    assert multiplicities(builtin("nilpotent_1"), (3,)).nonzero() == {}
    assert multiplicities(builtin("field"), (4,)).nonzero() == {(P(4),): 1}
    assert partial_colength(builtin("dual_numbers"), (2, 1)) == 1
    assert partial_colength(builtin("dual_numbers"), (1, 2)) == 0


@pytest.mark.parametrize("name", BUILTINS)
def test_character_sum_equals_rank(name):
    A = builtin(name)
    dims = component_dims(A)
    for n in (1, 2, 3):
        for dv in degree_vectors(A, n):
            v = verify_rank_character_sum(A, dv)
            assert v.status == "holds", v.details
            t = multiplicities(A, dv)
            assert t.height_violations(dims) == []
            assert verify_multiplicity_bound(A, dv).status == "holds"


def test_associative_path_module():
    A = builtin("M2_Z2")
    t = multiplicities(A, (2, 2), associative=True)
    assert t.dimension_sum() == t.codimension == 8
    d = t.to_dict()
    assert d["dv"] == [2, 2] and sum(x["m"] for x in d["multiplicities"]) == t.colength


def test_quotient_module_cached():
    A = builtin("M2_Z2")
    assert quotient_module(A, degree_vectors(A, 2)[0]) is quotient_module(A, degree_vectors(A, 2)[0])


def test_trace_is_a_class_function():
    import random
    A = builtin("M2_Z2")
    dv = (2, 2)
    Q = quotient_module(A, degree_vectors(A, 4)[2])
    rng = random.Random(5)
    for c in h_classes(dv):
        base = Q.trace(c.representative())
        for _ in range(3):
            conj = []
            for rep in c.representative():
                s = list(range(len(rep)))
                rng.shuffle(s)
                inv = [0] * len(s)
                for i, x in enumerate(s):
                    inv[x] = i
                conj.append(tuple(s[rep[inv[i]]] for i in range(len(rep))))
            assert Q.trace(conj) == base


def test_colengths_aggregate_to_report():
    from gradedpi.analysis import compute_report, graded_colength
    A = builtin("M2_Z2")
    rep = compute_report(A, 3)
    for r in rep.rows:
        assert r.colength == sum(b.colength for b in r.breakdown) == graded_colength(A, r.n)
