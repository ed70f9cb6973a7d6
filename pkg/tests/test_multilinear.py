import itertools
import math
from fractions import Fraction

import pytest
from hypothesis import given
from hypothesis import strategies as st

from gradedpi.errors import PreconditionError, ResourceCapError
from gradedpi.graded_algebra import GradedAlgebra, OperationTable, builtin, component_dims
from gradedpi.multilinear import (Caps, DegreeVector, EvaluationMatrix, Evaluator, catalan,
                                  degree_vectors, enumerate_monomials, evaluate_monomial,
                                  generic_dimension_bound, generic_space_dimension,
                                  monomial_count, partial_codimension, skeletons)


def procesi_m2(n):
    """Closed form for the ordinary codimensions of the 2x2 matrix algebra."""
    return math.comb(2 * n + 2, n + 1) // (n + 2) - math.comb(n, 3) + 1 - 2**n


def rational_algebra():
    # a twisted group algebra of Z_2 with a non-integral cocycle
    return GradedAlgebra.from_products(
        ["e", "g"], ["0", "1"], OperationTable.cyclic(2),
        {("e", "e"): {"e": 1}, ("e", "g"): {"g": 1}, ("g", "e"): {"g": 1},
         ("g", "g"): {"e": Fraction(1, 3)}}, "twisted")


def test_counts():
    assert [catalan(n) for n in range(6)] == [1, 1, 2, 5, 14, 42]
    assert [len(skeletons(n)) for n in range(1, 6)] == [catalan(n - 1) for n in range(1, 6)]
    assert len(skeletons(4, associative=True)) == 1
    for dv in [(3,), (2, 1), (1, 1, 1)]:
        ms = list(enumerate_monomials(dv))
        assert len(ms) == monomial_count(dv) == 12
        assert len(set(ms)) == len(ms)
        assert len(list(enumerate_monomials(dv, True))) == 6


def test_monomial_printing():
    first = next(enumerate_monomials((1, 2)))
    assert str(first) == "((x1_1*x2_1)*x2_2)"
    assert {str(m) for m in enumerate_monomials((2,))} == {"(x1_1*x1_2)", "(x1_2*x1_1)"}
    swapped = first.relabel([(0,), (1, 0)])
    assert str(swapped) == "((x1_1*x2_2)*x2_1)"


def test_degree_vector():
    dv = DegreeVector((2, 1))
    assert dv.n == 3 and dv.k == 2
    assert dv.variables() == [(0, 0), (0, 1), (1, 0)]
    with pytest.raises(PreconditionError):
        DegreeVector((1, -1))
    assert [d.parts for d in degree_vectors(builtin("M2_Z2"), 2)] == [(2, 0), (1, 1), (0, 2)]


def test_evaluate_monomial():
    A = builtin("M2_Z2")
    m = next(enumerate_monomials((1, 1), associative=True))  # x1_1 * x2_1
    assert evaluate_monomial(A, m, ["E11", "E12"]) == [0, 1, 0, 0]
    assert evaluate_monomial(A, m, {(0, 0): "E22", (1, 0): "E21"}) == [0, 0, 1, 0]
    with pytest.raises(PreconditionError, match="grade"):
        evaluate_monomial(A, m, ["E12", "E11"])


@given(st.data())
def test_rows_agree_with_direct_evaluation(data):
    A = data.draw(st.sampled_from([rational_algebra(), builtin("M2_Z2"), builtin("cross3")]))
    dims = component_dims(A)
    parts = data.draw(st.lists(st.integers(0, 2), min_size=len(dims), max_size=len(dims))
                      .filter(lambda p: sum(p) >= 1))
    ev = Evaluator(A, parts)
    monos = list(enumerate_monomials(parts))
    mono = data.draw(st.sampled_from(monos))
    row = ev.row(mono)
    comps = ev.comp
    variables = DegreeVector(tuple(parts)).variables()
    n = len(variables)
    col = 0
    for choice in itertools.product(*[comps[c] for c, _ in variables]):
        value = evaluate_monomial(A, mono, list(choice))
        for l in range(A.dim):
            assert row[col] == value[l] * ev.scale ** (n - 1)
            col += 1


def test_partial_codimension_values():
    assert partial_codimension(builtin("group_algebra:Z_2"), (2, 1)) == 1
    assert partial_codimension(builtin("M2_Z2"), (2, 2)) == 8
    assert partial_codimension(builtin("nilpotent_1"), (2,)) == 0
    assert partial_codimension(builtin("cross3"), (3,)) == 2
    assert partial_codimension(rational_algebra(), (1, 2)) == 1


@pytest.mark.parametrize("n", range(1, 6))
def test_matrix_algebra_matches_closed_form(n):
    assert partial_codimension(builtin("M2"), (n,), associative=True) == procesi_m2(n)


@pytest.mark.parametrize("name", ["field", "group_algebra:Z_3", "M2_Z2", "dual_numbers",
                                  "direct_sum_Z2"])
def test_associative_algebras_same_rank_on_both_paths(name):
    A = builtin(name)
    for n in (1, 2, 3):
        for dv in degree_vectors(A, n):
            assert partial_codimension(A, dv) == partial_codimension(A, dv, associative=True)


def test_evaluation_matrix_pivots():
    A = builtin("M2_Z2")
    M = EvaluationMatrix(A, (2, 1), associative=True)
    assert M.rank == partial_codimension(A, (2, 1), associative=True)
    assert len(M.pivot_rows) == M.rank
    assert M.shape == (6, 2**3 * 4)
    from gradedpi.linalg import rank
    assert rank(M.dense()) == M.rank


def test_caps():
    A = builtin("M2")
    with pytest.raises(ResourceCapError) as exc:
        partial_codimension(A, (7,))
    assert exc.value.cap == "max_n_nonassociative"
    with pytest.raises(ResourceCapError):
        partial_codimension(A, (3,), caps=Caps(max_columns=100))
    with pytest.raises(ResourceCapError):
        partial_codimension(A, (4,), caps=Caps(max_monomials=100))
    with pytest.raises(PreconditionError):
        partial_codimension(A, (1, 1))


def test_generic_space_dimension():
    assert generic_space_dimension(builtin("field"), (2,)) == 1
    assert generic_space_dimension(builtin("group_algebra:Z_2"), (1, 1)) == 1
    assert generic_space_dimension(builtin("nilpotent_1"), (2,)) == 0
    assert generic_space_dimension(builtin("M2_Z2"), (1, 1), var_counts=(0, 2)) == 0
    assert generic_dimension_bound([2, 2], (2, 1)) == 4 * 3**4 * 2**4
    for name in ("M2_Z2", "cross3", "dual_numbers"):
        A = builtin(name)
        for dv in degree_vectors(A, 3):
            assert generic_space_dimension(A, dv) <= generic_dimension_bound(component_dims(A), dv)


def test_generic_space_work_cap():
    with pytest.raises(ResourceCapError) as exc:
        generic_space_dimension(builtin("cross3"), (4,), caps=Caps(max_tensor=10_000))
    assert exc.value.cap == "max_tensor"


def test_generic_space_bound_on_all_builtins():
    from gradedpi.graded_algebra import BUILTINS
    for name in BUILTINS:
        A = builtin(name)
        for n in range(1, 5):
            for dv in degree_vectors(A, n):
                assert generic_space_dimension(A, dv) <= generic_dimension_bound(component_dims(A), dv)


def test_rank_trivial_bounds():
    for name in ("M2_Z2", "cross3", "group_algebra:Z_3"):
        A = builtin(name)
        for dv in degree_vectors(A, 3):
            M = EvaluationMatrix(A, dv)
            rows, cols = M.shape
            assert M.rank <= min(rows, cols) <= A.dim ** (dv.n + 1)


def test_table_automorphism_invariance():
    # 1 <-> 2 is an automorphism of Z_3 carrying g1 to g2
    A = builtin("group_algebra:Z_3")
    for n in range(1, 5):
        for dv in degree_vectors(A, n):
            a, b, c = dv.parts
            assert partial_codimension(A, (a, b, c)) == partial_codimension(A, (a, c, b))


@given(st.randoms(use_true_random=False))
def test_rank_invariant_under_variable_permutations(rnd):
    from gradedpi.linalg import rank
    A = builtin("M2_Z2")
    dv = (2, 2)
    perms = [tuple(rnd.sample(range(n), n)) for n in dv]
    M = EvaluationMatrix(A, dv)
    permuted = [[int(x) for x in M.row_of(m.relabel(perms))] for m in M.monomials]
    assert sorted(map(tuple, permuted)) == sorted(map(tuple, M.dense()))
    assert rank(permuted) == M.rank
