from fractions import Fraction

import sympy
from hypothesis import given
from hypothesis import strategies as st

from gradedpi.linalg import (IncrementalEchelon, Subspace, clear_denominators, inverse, nullspace,
                             rank, rref)

small = st.integers(-4, 4)


def matrices(max_rows=6, max_cols=6):
    return st.integers(1, max_cols).flatmap(
        lambda c: st.lists(st.lists(small, min_size=c, max_size=c), min_size=0, max_size=max_rows)
        .map(lambda rows: (rows, c)))


@given(matrices())
def test_rank_matches_sympy(mc):
    rows, c = mc
    expect = sympy.Matrix(rows).rank() if rows else 0
    assert rank(rows, c) == expect


@given(matrices())
def test_rref_matches_sympy(mc):
    rows, c = mc
    got = rref(rows, c)
    if not rows:
        assert got == ()
        return
    R, _ = sympy.Matrix(rows).rref()
    expect = tuple(tuple(Fraction(int(x.p), int(x.q)) for x in R.row(i)) for i in range(R.rows)
                   if any(R.row(i)))
    assert got == expect


@given(matrices())
def test_nullspace_is_kernel_of_right_size(mc):
    rows, c = mc
    ker = nullspace(rows, c)
    assert len(ker) == c - rank(rows, c)
    for v in ker:
        assert all(sum(Fraction(a) * b for a, b in zip(r, v)) == 0 for r in rows)


def test_inverse_exact():
    m = [[Fraction(2), Fraction(1)], [Fraction(1, 3), Fraction(1)]]
    inv = inverse(m)
    prod = [[sum(m[i][k] * inv[k][j] for k in range(2)) for j in range(2)] for i in range(2)]
    assert prod == [[1, 0], [0, 1]]


def test_clear_denominators_primitive():
    assert clear_denominators([Fraction(1, 2), Fraction(-3, 4), 0]) == [2, -3, 0]
    assert clear_denominators([0, 6, 9]) == [0, 2, 3]


def test_incremental_echelon():
    e = IncrementalEchelon(3)
    assert e.add([1, 2, 3])
    assert not e.add([2, 4, 6])
    assert e.add([0, 1, 1])
    assert e.rank == 2 and not e.full()
    assert not any(e.reduce([1, 3, 4]))
    assert e.pivots == [0, 1]


@given(matrices(4, 4), matrices(4, 4))
def test_subspace_sum_and_containment(a, b):
    (ra, ca), (rb, _) = a, b
    rb = [r[:ca] + [0] * (ca - len(r)) for r in rb]
    U, V = Subspace(ca, ra), Subspace(ca, rb)
    W = U + V
    assert W.contains_space(U) and W.contains_space(V)
    assert W.rank == rank(ra + rb, ca)
    assert U == Subspace(ca, list(U.rows))


@given(st.lists(st.lists(st.integers(-2**64, 2**64), min_size=4, max_size=4), max_size=6),
       st.integers(2**40, 2**62))
def test_large_entries_stay_exact(rows, big):
    # the int64 fast path must hand over to Python integers before overflowing
    rows = rows + [[big, big - 1, 1, 0], [big - 1, big - 2, 1, 0], [1, 1, 0, 0]]
    assert rank(rows, 4) == sympy.Matrix(rows).rank()


def test_near_dependent_large_rows():
    b = 2**61 - 1
    rows = [[b, b + 1, 0], [b + 1, b + 2, 0], [1, 1, 0]]
    assert rank(rows) == 2
    e = IncrementalEchelon(3)
    for r in rows[:2]:
        assert e.add(r)
    assert not any(e.reduce([3, 3, 0]))
