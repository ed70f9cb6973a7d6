"""H-module structure of the quotient by graded identities.

``H = S_{n_1} x ... x S_{n_k}`` permutes same-coloured variables. The trace
of a permutation on the row space of the evaluation matrix is obtained by
writing the image of every pivot row in the pivot basis; multiplicities then
come from the character inner product with products of S_n characters.
Integrality of the result is asserted, which makes this the strongest
self-test in the package.
"""

from __future__ import annotations

import functools
import itertools
import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Sequence

from .combinatorics import CycleType, Partition, char_value, dim_irrep, enumerate_partitions
from .errors import ConsistencyError
from .graded_algebra import GradedAlgebra, component_dims
from .linalg import inverse
from .multilinear import (DEFAULT_CAPS, Caps, DegreeVector, EvaluationMatrix, as_dv,
                          generic_dimension_bound, generic_space_dimension, partial_codimension)
from .verdicts import FAILS, HOLDS, Verdict

MultiPartition = tuple[Partition, ...]


@dataclass(frozen=True)
class HClass:
    """Conjugacy class of ``S_{n_1} x ... x S_{n_k}``: one cycle type per factor."""

    types: tuple[CycleType, ...]

    @classmethod
    def of(cls, *partitions) -> "HClass":
        return cls(tuple(CycleType(Partition(p)) for p in partitions))

    @property
    def size(self) -> int:
        return math.prod(c.class_size for c in self.types)

    def representative(self) -> list[tuple[int, ...]]:
        return [c.representative() for c in self.types]

    def sizes(self) -> tuple[int, ...]:
        return tuple(c.m for c in self.types)


def h_classes(dv) -> list[HClass]:
    dv = as_dv(dv)
    return [HClass(tuple(CycleType(p) for p in combo))
            for combo in itertools.product(*[enumerate_partitions(n) for n in dv.parts])]


def multipartitions(dv) -> list[MultiPartition]:
    dv = as_dv(dv)
    return list(itertools.product(*[enumerate_partitions(n) for n in dv.parts]))


class QuotientModule:
    """Row space of an evaluation matrix with its pivot basis and a solver."""

    def __init__(self, A: GradedAlgebra, dv, associative: bool = False, caps: Caps = DEFAULT_CAPS):
        self.A = A
        self.dv = as_dv(dv)
        self.matrix = EvaluationMatrix(A, self.dv, associative, caps)
        self.dim = self.matrix.rank
        self.pivot_cols = self.matrix.echelon.pivots
        basis = [self.matrix.row(i) for i in self.matrix.pivot_rows]
        square = [[int(row[c]) for c in self.pivot_cols] for row in basis]
        self._inv = inverse(square) if square else []

    def coordinates(self, row: Sequence[int]) -> list[Fraction]:
        """Coefficients of ``row`` in the pivot basis (``row`` must lie in the row space)."""
        if any(self.matrix.echelon.reduce(row)):
            raise ConsistencyError("image row left the row space")
        v = [int(row[c]) for c in self.pivot_cols]
        r = self.dim
        return [sum((v[j] * self._inv[j][i] for j in range(r) if v[j]), Fraction(0)) for i in range(r)]

    def trace(self, perms: Sequence[Sequence[int]]) -> Fraction:
        """Trace of the variable permutation ``x^(i)_j -> x^(i)_{perms[i][j]}``."""
        total = Fraction(0)
        for pos, i in enumerate(self.matrix.pivot_rows):
            image = self.matrix.monomials[i].relabel(perms)
            total += self.coordinates(self.matrix.row_of(image))[pos]
        return total


@functools.lru_cache(maxsize=64)
def quotient_module(A: GradedAlgebra, dv: DegreeVector, associative: bool = False,
                    caps: Caps = DEFAULT_CAPS) -> QuotientModule:
    return QuotientModule(A, dv, associative, caps)


def quotient_trace(A: GradedAlgebra, dv, c: HClass, associative: bool = False,
                   caps: Caps = DEFAULT_CAPS) -> Fraction:
    """Trace of a representative of ``c`` acting on the quotient module."""
    dv = as_dv(dv)
    if c.sizes() != dv.parts:
        raise ValueError(f"class sizes {c.sizes()} do not match degree vector {dv.parts}")
    return quotient_module(A, dv, associative, caps).trace(c.representative())


@dataclass
class MultiplicityTable:
    dv: DegreeVector
    entries: dict[MultiPartition, int]
    codimension: int
    associative: bool = False
    traces: dict[HClass, Fraction] = field(default_factory=dict, repr=False)

    @property
    def colength(self) -> int:
        return sum(self.entries.values())

    def dimension_sum(self) -> int:
        return sum(m * math.prod(dim_irrep(lam) for lam in lams) for lams, m in self.entries.items())

    def nonzero(self) -> dict[MultiPartition, int]:
        return {k: m for k, m in self.entries.items() if m}

    def height_violations(self, dims: Sequence[int]) -> list[MultiPartition]:
        return [lams for lams, m in self.entries.items()
                if m and any(lam.height > di for lam, di in zip(lams, dims))]

    def to_dict(self) -> dict:
        return {
            "dv": list(self.dv.parts),
            "codimension": self.codimension,
            "colength": self.colength,
            "multiplicities": [{"lambda": [list(l) for l in lams], "m": m}
                               for lams, m in self.entries.items() if m],
        }


def multiplicities(A: GradedAlgebra, dv, associative: bool = False,
                   caps: Caps = DEFAULT_CAPS) -> MultiplicityTable:
    """Decompose the quotient module into irreducible H-modules.

    ``m = (1/|H|) sum_c |c| tr(c) prod_i chi_{lambda_i}(c_i)``. A
    non-integral or negative value raises ``ConsistencyError``.
    """
    dv = as_dv(dv)
    Q = quotient_module(A, dv, associative, caps)
    order = math.prod(math.factorial(n) for n in dv.parts)
    classes = h_classes(dv)
    traces = {c: Q.trace(c.representative()) for c in classes}
    entries: dict[MultiPartition, int] = {}
    for lams in multipartitions(dv):
        acc = Fraction(0)
        for c in classes:
            tr = traces[c]
            if tr:
                acc += c.size * tr * math.prod(char_value(lam, t) for lam, t in zip(lams, c.types))
        m = acc / order
        if m.denominator != 1 or m < 0:
            raise ConsistencyError(f"multiplicity of {lams} at {dv.parts} is {m}")
        entries[lams] = int(m)
    return MultiplicityTable(dv, entries, Q.dim, associative, traces)


def partial_colength(A: GradedAlgebra, dv, associative: bool = False, caps: Caps = DEFAULT_CAPS) -> int:
    """Total number of irreducible summands (with multiplicity) of the quotient module."""
    return multiplicities(A, dv, associative, caps).colength


def verify_rank_character_sum(A: GradedAlgebra, dv, associative: bool = False, caps: Caps = DEFAULT_CAPS) -> Verdict:
    """Streaming rank versus ``sum m * prod d_lambda`` from the decomposition."""
    dv = as_dv(dv)
    rank = partial_codimension(A, dv, associative, caps)
    try:
        table = multiplicities(A, dv, associative, caps)
    except ConsistencyError as e:
        return Verdict("rank_equals_character_sum", FAILS,
                       {"dv": list(dv.parts), "rank": rank, "error": str(e)})
    total = table.dimension_sum()
    status = HOLDS if rank == total else FAILS
    return Verdict("rank_equals_character_sum", status,
                   {"dv": list(dv.parts), "rank": rank, "character_sum": total})


def verify_multiplicity_bound(A: GradedAlgebra, dv, associative: bool = False,
                              caps: Caps = DEFAULT_CAPS) -> Verdict:
    """Largest multiplicity versus the generic-element space dimension and its polynomial bound."""
    dv = as_dv(dv)
    try:
        table = multiplicities(A, dv, associative, caps)
    except ConsistencyError as e:
        return Verdict("multiplicity_bound", FAILS, {"dv": list(dv.parts), "error": str(e)})
    dims = component_dims(A)
    gdim = generic_space_dimension(A, dv, dims, associative, caps)
    bound = generic_dimension_bound(dims, dv)
    mmax = max(table.entries.values(), default=0)
    status = HOLDS if mmax <= gdim <= bound else FAILS
    return Verdict("multiplicity_bound", status,
                   {"dv": list(dv.parts), "max_multiplicity": mmax,
                    "generic_dimension": gdim, "polynomial_bound": str(bound)})
