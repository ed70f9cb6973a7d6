import functools
import itertools
import math
import random
from fractions import Fraction

import mpmath
import pytest
import sympy
from hypothesis import given
from hypothesis import strategies as st

from gradedpi.combinatorics import (CycleType, LogReal, Partition, char_value, character_table,
                                    check_dim_phi_bounds, check_multinomial_phi_bounds,
                                    check_push_monotone, check_scaled_dimension_inequality,
                                    class_size, compositions, cycle_type, dim_irrep,
                                    enumerate_partitions, multinomial, phi, phi_power,
                                    push_down_box, scaled_inequality_grid, valid_pushes)
from gradedpi.errors import PreconditionError

# number of partitions p(0..15)
PARTITION_COUNTS = [1, 1, 2, 3, 5, 7, 11, 15, 22, 30, 42, 56, 77, 101, 135, 176]


@functools.lru_cache(maxsize=None)
def count_tableaux(lam):
    """Standard Young tableaux by removing the largest entry from a corner."""
    if sum(lam) == 0:
        return 1
    total = 0
    for i, row in enumerate(lam):
        if row and (i + 1 == len(lam) or lam[i + 1] < row):
            total += count_tableaux(tuple(r - (t == i) for t, r in enumerate(lam)))
    return total


def frobenius_character(lam, mu):
    """chi^lam(mu) as the coefficient of x^(lam + delta) in p_mu * a_delta."""
    n = len(lam)
    xs = sympy.symbols(f"x0:{n}")
    vandermonde = sympy.prod(xs[i] - xs[j] for i in range(n) for j in range(i + 1, n))
    power = sympy.prod(sum(x**k for x in xs) for k in mu)
    poly = sympy.Poly(sympy.expand(power * vandermonde), *xs)
    exps = tuple(lam[i] + n - 1 - i for i in range(n))
    return poly.coeff_monomial(exps)


def test_partition_counts():
    assert [len(enumerate_partitions(m)) for m in range(16)] == PARTITION_COUNTS


def test_partition_order_and_height():
    assert enumerate_partitions(4, 2) == [(4,), (3, 1), (2, 2)]
    assert all(p.height <= 3 for p in enumerate_partitions(12, 3))
    assert len(enumerate_partitions(100, 2)) == 51


def test_partition_validation():
    with pytest.raises(ValueError):
        Partition([1, 2])
    with pytest.raises(ValueError):
        Partition([2, -1])
    assert Partition([3, 1, 0]) == (3, 1)
    assert Partition([3, 1]).conjugate() == (2, 1, 1)
    with pytest.raises(PreconditionError):
        enumerate_partitions(-1)


def test_compositions():
    assert compositions(2, 2) == [(2, 0), (1, 1), (0, 2)]
    for m, k in [(5, 3), (4, 1), (0, 2)]:
        assert len(compositions(m, k)) == math.comb(m + k - 1, k - 1)


@pytest.mark.parametrize("m", range(1, 11))
def test_dims_match_tableaux_count(m):
    for lam in enumerate_partitions(m):
        assert dim_irrep(lam) == count_tableaux(tuple(lam))


@given(st.lists(st.integers(1, 6), min_size=1, max_size=4))
def test_conjugate_has_same_dimension(parts):
    lam = Partition(sorted(parts, reverse=True))
    assert lam.conjugate().conjugate() == lam
    assert dim_irrep(lam) == dim_irrep(lam.conjugate())


@pytest.mark.parametrize("m", range(1, 7))
def test_class_size_by_brute_force(m):
    counts = {}
    for perm in itertools.permutations(range(m)):
        mu = cycle_type(perm)
        counts[mu] = counts.get(mu, 0) + 1
    assert counts == {mu: class_size(mu) for mu in enumerate_partitions(m)}
    assert class_size((2, 2)) == 3


def test_cycle_type_representative():
    for mu in enumerate_partitions(6):
        assert cycle_type(CycleType(mu).representative()) == mu


@pytest.mark.parametrize("m", range(1, 6))
def test_characters_match_frobenius_formula(m):
    for lam in enumerate_partitions(m):
        for mu in enumerate_partitions(m):
            assert char_value(lam, mu) == frobenius_character(lam, mu), (lam, mu)


def test_character_spot_values():
    assert char_value((2, 1), (3,)) == -1
    assert char_value((2, 1), (1, 1, 1)) == 2
    assert char_value((3, 1, 1), (5,)) == 1
    with pytest.raises(PreconditionError):
        char_value((2,), (1,))


def test_character_table_columns_orthogonal():
    parts, chi = character_table(5)
    for mu in parts:
        for nu in parts:
            s = sum(chi[(lam, mu)] * chi[(lam, nu)] for lam in parts)
            assert s == (math.factorial(5) // class_size(mu) if mu == nu else 0)


def test_multinomial():
    assert multinomial(4, [2, 1, 1]) == 12
    assert multinomial(3, [3]) == 1
    with pytest.raises(PreconditionError):
        multinomial(4, [1, 1])
    with pytest.raises(PreconditionError):
        multinomial(0, [1, -1])


def test_phi_values():
    assert phi_power([1, 1]) == 4
    assert phi_power([2, 1, 1]) == Fraction(4**4, 2**2)
    assert float(phi([2, 1, 1])) == pytest.approx(2**1.5)
    assert float(phi([5])) == pytest.approx(1.0)
    assert float(phi([3, 3], d=3)) == pytest.approx(2.0)
    with pytest.raises(PreconditionError):
        phi([1, 1, 1], d=2)
    with pytest.raises(PreconditionError):
        phi([0])


@given(st.lists(st.integers(0, 30), min_size=1, max_size=5).filter(any))
def test_phi_between_one_and_height(parts):
    k = sum(1 for p in parts if p)
    m = sum(parts)
    assert 1 <= phi_power(parts) <= k**m
    assert 1 - 1e-12 < float(phi(parts)) < k + 1e-12
    # Phi^m agrees with the exact rational
    assert abs((phi(parts) ** m).value() / sympy.Rational(phi_power(parts)).evalf(80) - 1) < 1e-60


def test_logreal_arithmetic():
    a, b = LogReal.from_rational(6), LogReal.from_rational(Fraction(2, 3))
    assert float(a * b) == pytest.approx(4)
    assert float(a / b) == pytest.approx(9)
    assert float(b**3) == pytest.approx(8 / 27)
    assert a.margin_to(LogReal.from_rational(12)) > 0
    assert LogReal.from_rational(0).value() == 0
    with pytest.raises(ValueError):
        LogReal.from_rational(-1)


def test_dim_phi_bounds_examples():
    assert check_dim_phi_bounds((34, 33, 33), 3).status == "holds"
    assert check_dim_phi_bounds((100,), 1).status == "holds"
    with pytest.raises(PreconditionError):
        check_dim_phi_bounds((50, 49), 2)
    with pytest.raises(PreconditionError):
        check_dim_phi_bounds((98, 1, 1), 2)


def test_push_down_box():
    assert push_down_box((4, 1), 1, 2, 2) == (3, 2)
    assert push_down_box((3, 3), 2, 3, 3) == (3, 2, 1)
    with pytest.raises(PreconditionError, match="row 1 < row 2"):
        push_down_box((3, 3), 1, 2, 2)
    with pytest.raises(PreconditionError):
        push_down_box((3, 1), 2, 1, 2)
    assert [(i, j) for i, j, _ in valid_pushes((2, 2), 3)] == [(2, 3)]


@given(st.lists(st.integers(1, 8), min_size=1, max_size=4), st.integers(4, 5))
def test_push_monotone_property(parts, d):
    nu = Partition(sorted(parts, reverse=True))
    v = check_push_monotone(nu, d)
    assert v.status in ("holds", "marginal")
    for p in v.details["pushes"]:
        assert Partition(p["rho"]).m == nu.m


def test_multinomial_bounds():
    assert check_multinomial_phi_bounds([30, 30]).status == "holds"
    # m = 1: the lower bound is an equality
    assert check_multinomial_phi_bounds([1, 0, 0]).status == "marginal"
    with pytest.raises(PreconditionError):
        check_multinomial_phi_bounds([1, 1, 1], k=2)


def test_scaled_inequality_example_and_errors():
    v = check_scaled_dimension_inequality([50, 50], [[30, 20], [25, 25]], 128, 2)
    assert v.status == "holds" and v.details["exact"] is True
    with pytest.raises(PreconditionError):
        check_scaled_dimension_inequality([50], [[30, 20]], 100, 2)
    with pytest.raises(PreconditionError):
        check_scaled_dimension_inequality([100], [[50, 50]], 99, 2)
    with pytest.raises(PreconditionError):
        check_scaled_dimension_inequality([100], [[50, 30, 20]], 100, 2)


def test_scaled_grid_shape():
    grid = scaled_inequality_grid()
    assert len(grid) == 2 * (51 + 27)
    for n_parts, lams, q in grid:
        assert sum(n_parts) == 100 and q in (100, 128)
        assert all(l.m == n and l.height <= 2 for l, n in zip(lams, n_parts))


def test_random_dim_bounds_height_three():
    rng = random.Random(7)
    for nu in rng.sample(enumerate_partitions(120, 3), 10):
        assert check_dim_phi_bounds(nu, 3).status == "holds"


@pytest.mark.parametrize("m", range(1, 9))
def test_character_at_identity_is_dimension(m):
    for lam in enumerate_partitions(m):
        assert char_value(lam, [1] * m) == dim_irrep(lam)


@given(st.lists(st.integers(1, 20), min_size=1, max_size=4), st.integers(2, 50))
def test_phi_scaling_invariance(parts, q):
    nu = sorted(parts, reverse=True)
    a, b = phi(nu), phi([q * p for p in nu])
    assert abs(a.log_value - b.log_value) < mpmath.mpf(2) ** -200
    assert 1 <= float(a) <= len(nu) + 1e-12
