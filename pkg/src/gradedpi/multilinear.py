"""Multilinear graded monomials and their evaluation matrices.

A monomial of degree vector ``(n_1, ..., n_k)`` is a binary bracketing with
its leaves labelled by the distinct variables ``x^(i)_j`` (colour ``i`` is the
i-th support label of the algebra, ``j < n_i``). Evaluating every monomial on
every tuple of homogeneous basis vectors gives a matrix whose row space is
the quotient of the multilinear space by the graded identities; its rank is
the partial codimension.

Canonical orders
----------------
* bracketings: recursively, left subtree size descending
  (``((x x) x)`` before ``(x (x x))``);
* within a bracketing, leaf labellings in lexicographic order of the
  ``(colour, index)`` sequence;
* columns: one basis vector of the right component per variable (variables
  ordered by ``(colour, index)``), output coordinate last.

Structure constants are scaled to integers by a common denominator ``D``;
every entry of a degree-n matrix then carries the same factor ``D^(n-1)``,
which changes neither ranks nor coefficients of linear relations.
"""

from __future__ import annotations

import functools
import itertools
import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterator, Sequence

import numpy as np

from .combinatorics import compositions
from .errors import PreconditionError, ResourceCapError
from .graded_algebra import GradedAlgebra, component_dims, support
from .linalg import IncrementalEchelon

Variable = tuple[int, int]


@dataclass(frozen=True)
class Caps:
    """Size limits; exceeding one raises ``ResourceCapError`` (never truncates)."""

    max_n_nonassociative: int = 6
    max_n_associative: int = 8
    max_monomials: int = 200_000
    max_columns: int = 200_000
    max_tensor: int = 4_000_000

    def check_degree(self, n: int, associative: bool):
        limit = self.max_n_associative if associative else self.max_n_nonassociative
        if n > limit:
            cap = "max_n_associative" if associative else "max_n_nonassociative"
            raise ResourceCapError(cap, limit, n)


DEFAULT_CAPS = Caps()


def catalan(n: int) -> int:
    return math.comb(2 * n, n) // (n + 1)


# --------------------------------------------------------------------------
# bracketings


@functools.lru_cache(maxsize=None)
def _skeletons(n: int) -> tuple:
    """Bracketings with anonymous leaves ``()``; a node is a pair ``(left, right)``."""
    if n == 1:
        return ((),)
    out = []
    for left in range(n - 1, 0, -1):
        for a in _skeletons(left):
            for b in _skeletons(n - left):
                out.append((a, b))
    return tuple(out)


def _left_normed(n: int):
    t = ()
    for _ in range(n - 1):
        t = (t, ())
    return t


def skeletons(n: int, associative: bool = False) -> tuple:
    if n < 1:
        raise PreconditionError("degree must be at least 1")
    return (_left_normed(n),) if associative else _skeletons(n)



@dataclass(frozen=True)
class DegreeVector:
    parts: tuple[int, ...]

    def __post_init__(self):
        parts = tuple(int(x) for x in self.parts)
        if any(x < 0 for x in parts):
            raise PreconditionError(f"negative degree in {parts}")
        object.__setattr__(self, "parts", parts)

    @property
    def n(self) -> int:
        return sum(self.parts)

    @property
    def k(self) -> int:
        return len(self.parts)

    def variables(self) -> list[Variable]:
        return [(i, j) for i, ni in enumerate(self.parts) for j in range(ni)]

    def __iter__(self):
        return iter(self.parts)

    def __repr__(self) -> str:
        return f"DegreeVector{self.parts}"


def as_dv(dv) -> DegreeVector:
    return dv if isinstance(dv, DegreeVector) else DegreeVector(tuple(dv))


@dataclass(frozen=True)
class MonomialTree:
    """A bracketing skeleton plus the variable sitting at each leaf (left to right)."""

    skeleton: tuple
    leaves: tuple[Variable, ...]

    def __str__(self) -> str:
        it = iter(self.leaves)

        def show(s):
            if s == ():
                c, j = next(it)
                return f"x{c + 1}_{j + 1}"
            return f"({show(s[0])}*{show(s[1])})"

        return show(self.skeleton)

    def relabel(self, perms: Sequence[Sequence[int]]) -> "MonomialTree":
        """Apply ``x^(i)_j -> x^(i)_{perms[i][j]}``."""
        return MonomialTree(self.skeleton, tuple((c, perms[c][j]) for c, j in self.leaves))


def monomial_count(dv, associative: bool = False) -> int:
    n = as_dv(dv).n
    return math.factorial(n) * (1 if associative else catalan(n - 1))


def enumerate_monomials(dv, associative: bool = False, caps: Caps = DEFAULT_CAPS) -> Iterator[MonomialTree]:
    """All multilinear monomials of degree vector ``dv`` in canonical order."""
    dv = as_dv(dv)
    if dv.n < 1:
        raise PreconditionError("degree must be at least 1")
    count = monomial_count(dv, associative)
    if count > caps.max_monomials:
        raise ResourceCapError("max_monomials", caps.max_monomials, count)
    variables = dv.variables()
    for s in skeletons(dv.n, associative):
        for arrangement in itertools.permutations(variables):
            yield MonomialTree(s, arrangement)


# --------------------------------------------------------------------------
# evaluation


def _basis_index(A: GradedAlgebra, a) -> int:
    return A.names.index(a) if isinstance(a, str) else int(a)


def evaluate_monomial(A: GradedAlgebra, t: MonomialTree, assignment) -> list[Fraction]:
    """Exact value of ``t`` when each variable is replaced by a basis vector.

    ``assignment`` maps variables to basis vectors (names or indices). A
    sequence is read in canonical variable order, i.e. sorted by
    ``(colour, index)``.
    """
    labels = support(A)
    if isinstance(assignment, dict):
        amap = {v: _basis_index(A, a) for v, a in assignment.items()}
    else:
        variables = sorted(t.leaves)
        if len(assignment) != len(variables):
            raise PreconditionError("assignment length does not match the number of variables")
        amap = {v: _basis_index(A, a) for v, a in zip(variables, assignment)}
    for (c, j), b in amap.items():
        if c >= len(labels) or A.grades[b] != labels[c]:
            raise PreconditionError(
                f"variable x{c + 1}_{j + 1} has grade {labels[c] if c < len(labels) else '?'} "
                f"but basis vector {A.names[b]} has grade {A.grades[b]}")
    it = iter(t.leaves)

    def ev(s):
        if s == ():
            return A.basis_vector(amap[next(it)])
        left = ev(s[0])
        right = ev(s[1])
        return A.multiply(left, right)

    return ev(t.skeleton)


class Evaluator:
    """Integer evaluation rows for one algebra and degree vector."""

    def __init__(self, A: GradedAlgebra, dv, caps: Caps = DEFAULT_CAPS):
        self.A = A
        self.dv = as_dv(dv)
        self.caps = caps
        labels = support(A)
        if self.dv.k != len(labels):
            raise PreconditionError(f"degree vector {self.dv.parts} has {self.dv.k} entries, "
                                    f"support has {len(labels)}")
        self.comp = [A.component(g) for g in labels]
        d = A.dim
        self.d = d
        self.ncols = d
        for ni, idx in zip(self.dv.parts, self.comp):
            self.ncols *= len(idx) ** ni
        if self.ncols > caps.max_columns:
            raise ResourceCapError("max_columns", caps.max_columns, self.ncols)
        if d ** (self.dv.n + 1) > caps.max_tensor:
            raise ResourceCapError("max_tensor", caps.max_tensor, d ** (self.dv.n + 1))
        den = 1
        for plane in A.gamma:
            for row in plane:
                for x in row:
                    den = math.lcm(den, x.denominator)
        self.scale = den
        self.gamma = np.empty((d, d, d), dtype=object)
        for i, j, l in itertools.product(range(d), repeat=3):
            self.gamma[i, j, l] = int(A.gamma[i][j][l] * den)
        self.var_index = {v: t for t, v in enumerate(self.dv.variables())}
        self._tensors: dict = {}
        self._small: dict = {}

    def tensor(self, s):
        """Values of skeleton ``s`` on all basis tuples: axes = leaves, then output."""
        if s in self._tensors:
            return self._tensors[s]
        if s == ():
            T = np.empty((self.d, self.d), dtype=object)
            for a in range(self.d):
                for l in range(self.d):
                    T[a, l] = int(a == l)
        else:
            L, R = self.tensor(s[0]), self.tensor(s[1])
            nl, nr = L.ndim - 1, R.ndim - 1
            X = np.tensordot(L, self.gamma, axes=([nl], [0]))
            Y = np.tensordot(X, R, axes=([nl], [nr]))
            # Y axes: left leaves, output, right leaves
            T = np.moveaxis(Y, nl, -1)
        self._tensors[s] = T
        return T

    def _row_tensor(self, s):
        # int64 copy for fast slicing when every entry fits
        if s not in self._small:
            T = self.tensor(s)
            big = T.size and int(np.max(np.abs(T))) >= 2**62
            self._small[s] = T if big else T.astype(np.int64)
        return self._small[s]

    def row(self, t: MonomialTree) -> np.ndarray:
        T = self._row_tensor(t.skeleton)
        idx = [self.comp[c] for c, _ in t.leaves] + [list(range(self.d))]
        sub = T[np.ix_(*idx)]
        order = [0] * len(t.leaves)
        for p, v in enumerate(t.leaves):
            order[self.var_index[v]] = p
        return sub.transpose(order + [len(t.leaves)]).reshape(-1)


class EvaluationMatrix:
    """Evaluation matrix in "pivot" mode.

    Rows are produced on demand; the first linearly independent rows in
    canonical monomial order form the pivot basis of the row space.
    """

    def __init__(self, A: GradedAlgebra, dv, associative: bool = False, caps: Caps = DEFAULT_CAPS):
        self.dv = as_dv(dv)
        caps.check_degree(self.dv.n, associative)
        self.associative = associative
        self.ev = Evaluator(A, self.dv, caps)
        self.monomials = list(enumerate_monomials(self.dv, associative, caps))
        self.index = {m: i for i, m in enumerate(self.monomials)}
        self._rows: dict[int, np.ndarray] = {}
        ech = IncrementalEchelon(self.ev.ncols)
        self.pivot_rows: list[int] = []
        for i, m in enumerate(self.monomials):
            if ech.full():
                break
            if ech.add(self.row(i)):
                self.pivot_rows.append(i)
        self.echelon = ech

    @property
    def rank(self) -> int:
        return self.echelon.rank

    @property
    def shape(self) -> tuple[int, int]:
        return len(self.monomials), self.ev.ncols

    def row(self, i: int) -> np.ndarray:
        if i not in self._rows:
            self._rows[i] = self.ev.row(self.monomials[i])
        return self._rows[i]

    def row_of(self, m: MonomialTree) -> list[int]:
        return self.row(self.index[m])

    def dense(self) -> list[list[int]]:
        return [[int(x) for x in self.row(i)] for i in range(len(self.monomials))]


def partial_codimension(A: GradedAlgebra, dv, associative: bool = False,
                        caps: Caps = DEFAULT_CAPS) -> int:
    """Rank of the evaluation matrix, computed by streaming rows through an echelon basis."""
    dv = as_dv(dv)
    caps.check_degree(dv.n, associative)
    ev = Evaluator(A, dv, caps)
    ech = IncrementalEchelon(ev.ncols)
    for m in enumerate_monomials(dv, associative, caps):
        ech.add(ev.row(m))
        if ech.full():
            break
    return ech.rank


def degree_vectors(A: GradedAlgebra, n: int) -> list[DegreeVector]:
    """All ``(n_1..n_k)`` over the support with ``sum = n``, lexicographically decreasing."""
    return [DegreeVector(c) for c in compositions(n, len(support(A)))]


# --------------------------------------------------------------------------
# generic elements


def _colour_sequences(parts: Sequence[int]) -> list[tuple[int, ...]]:
    out = []

    def rec(rest, prefix):
        if not any(rest):
            out.append(tuple(prefix))
            return
        for c, r in enumerate(rest):
            if r:
                rest[c] -= 1
                prefix.append(c)
                rec(rest, prefix)
                prefix.pop()
                rest[c] += 1

    rec(list(parts), [])
    return out


def generic_dimension_bound(dims: Sequence[int], dv, var_counts: Sequence[int] | None = None) -> int:
    """``(d_1+...+d_k) prod (n_i+1)^(d_i v_i)``; with ``v_i = d_i`` this is the
    ``(n_i+1)^(d_i^2)`` bound on the space of generic-element products."""
    parts = as_dv(dv).parts
    v = dims if var_counts is None else var_counts
    out = sum(dims)
    for di, vi, ni in zip(dims, v, parts):
        out *= (ni + 1) ** (di * vi)
    return out


def generic_space_dimension(A: GradedAlgebra, dv, var_counts: Sequence[int] | None = None,
                            associative: bool = False, caps: Caps = DEFAULT_CAPS) -> int:
    """Dimension of the span of products of generic homogeneous elements.

    The generic element number ``j`` of colour ``i`` is
    ``z = sum_m a_m ⊗ y_(i,m,j)`` over a basis ``a_m`` of the colour-i
    component, inside ``A ⊗ Q[y]``. All bracketed words using variables
    ``j < var_counts[i]`` with colour-i degree ``n_i`` are evaluated and the
    dimension of their span is returned.
    """
    dv = as_dv(dv)
    caps.check_degree(dv.n, associative)
    dims = component_dims(A)
    if var_counts is None:
        var_counts = dims
    if len(var_counts) != dv.k:
        raise PreconditionError("one variable count per support label required")
    if any(v < 0 for v in var_counts):
        raise PreconditionError("variable counts must be non-negative")
    if any(ni and not v for ni, v in zip(dv.parts, var_counts)):
        return 0
    ev = Evaluator(A, dv, caps)
    seqs = _colour_sequences(dv.parts)
    words = len(skeletons(dv.n, associative)) * len(seqs)
    per_seq = 1
    for ni, v in zip(dv.parts, var_counts):
        per_seq *= v**ni
    if words * per_seq > caps.max_monomials:
        raise ResourceCapError("max_monomials", caps.max_monomials, words * per_seq)
    # each word is expanded over every basis tuple of its leaves
    positions = math.prod(len(c) ** ni for c, ni in zip(ev.comp, dv.parts))
    if words * per_seq * positions > caps.max_tensor:
        raise ResourceCapError("max_tensor", caps.max_tensor, words * per_seq * positions)
    keys: dict = {}
    vectors = []
    for s in skeletons(dv.n, associative):
        T = ev.tensor(s)
        for seq in seqs:
            leaf_bases = [ev.comp[c] for c in seq]
            choices = [range(var_counts[c]) for c in seq]
            for js in itertools.product(*choices):
                vec: dict = {}
                for pos in itertools.product(*[range(len(b)) for b in leaf_bases]):
                    vals = T[tuple(leaf_bases[p][pos[p]] for p in range(len(seq)))]
                    y = tuple(sorted((seq[p], pos[p], js[p]) for p in range(len(seq))))
                    for l in range(ev.d):
                        if vals[l]:
                            key = (l, y)
                            vec[key] = vec.get(key, 0) + int(vals[l])
                vec = {k: x for k, x in vec.items() if x}
                for k in vec:
                    if k not in keys:
                        keys[k] = len(keys)
                vectors.append(vec)
    if len(keys) > caps.max_columns:
        raise ResourceCapError("max_columns", caps.max_columns, len(keys))
    ech = IncrementalEchelon(len(keys))
    for vec in vectors:
        row = [0] * len(keys)
        for k, x in vec.items():
            row[keys[k]] = x
        ech.add(row)
        if ech.full():
            break
    return ech.rank
