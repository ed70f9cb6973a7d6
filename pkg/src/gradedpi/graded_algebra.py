"""Finite-dimensional algebras over Q graded by a finite operation table.

An algebra is given by structure constants ``gamma[i][j][l]`` with
``b_i * b_j = sum_l gamma[i][j][l] b_l`` and a grade label for every basis
vector. The grading table is total; a product whose grade falls outside
the support must vanish.

"Graded simple" here means ``A*A != 0`` and no homogeneous ideals other
than 0 and A (the usual convention, under which simple implies graded
simple).
"""

from __future__ import annotations

import itertools
import random
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable, Mapping, Sequence

import sympy

from .errors import InvalidAlgebraError
from .linalg import Subspace, nullspace


@dataclass(frozen=True)
class OperationTable:
    labels: tuple[str, ...]
    table: tuple[tuple[str, ...], ...]

    def __post_init__(self):
        labels = tuple(str(x) for x in self.labels)
        table = tuple(tuple(str(x) for x in row) for row in self.table)
        object.__setattr__(self, "labels", labels)
        object.__setattr__(self, "table", table)
        if len(set(labels)) != len(labels):
            raise ValueError(f"duplicate grading labels in {labels}")
        if len(table) != len(labels) or any(len(r) != len(labels) for r in table):
            raise ValueError("operation table must be a full t x t array")
        known = set(labels)
        for row in table:
            for x in row:
                if x not in known:
                    raise ValueError(f"table entry {x!r} is not a label")

    def index(self, g: str) -> int:
        return self.labels.index(g)

    def product(self, g: str, h: str) -> str:
        return self.table[self.index(g)][self.index(h)]

    @classmethod
    def cyclic(cls, m: int) -> "OperationTable":
        labels = tuple(str(i) for i in range(m))
        return cls(labels, tuple(tuple(str((i + j) % m) for j in range(m)) for i in range(m)))

    @classmethod
    def trivial(cls, label: str = "0") -> "OperationTable":
        return cls((label,), ((label,),))


@dataclass(frozen=True)
class GradedAlgebra:
    names: tuple[str, ...]
    grades: tuple[str, ...]
    table: OperationTable
    gamma: tuple[tuple[tuple[Fraction, ...], ...], ...]
    name: str = ""
    metadata: tuple[tuple[str, str], ...] = field(default=(), compare=False)

    def __post_init__(self):
        d = len(self.names)
        if len(set(self.names)) != d:
            raise ValueError("duplicate basis names")
        if len(self.grades) != d:
            raise ValueError("one grade label per basis vector required")
        for g in self.grades:
            if g not in self.table.labels:
                raise ValueError(f"grade {g!r} is not a label of the operation table")
        gamma = tuple(tuple(tuple(Fraction(x) for x in row) for row in plane) for plane in self.gamma)
        if len(gamma) != d or any(len(p) != d or any(len(r) != d for r in p) for p in gamma):
            raise ValueError("structure constants must be a d x d x d array")
        object.__setattr__(self, "gamma", gamma)

    @classmethod
    def from_products(cls, names: Sequence[str], grades: Sequence[str], table: OperationTable,
                      products: Mapping[tuple[str, str], Mapping[str, object]], name: str = "",
                      metadata: Iterable[tuple[str, str]] = ()) -> "GradedAlgebra":
        """Build from a sparse product list ``{(bi, bj): {bl: coefficient}}``; unlisted products are zero."""
        names = tuple(names)
        d = len(names)
        pos = {n: i for i, n in enumerate(names)}
        gamma = [[[Fraction(0)] * d for _ in range(d)] for _ in range(d)]
        for (a, b), rhs in products.items():
            for c, coef in rhs.items():
                gamma[pos[a]][pos[b]][pos[c]] += Fraction(coef)
        return cls(names, tuple(grades), table, gamma, name, tuple(metadata))

    @property
    def dim(self) -> int:
        return len(self.names)

    def meta(self, key: str, default=None):
        return dict(self.metadata).get(key, default)

    def component(self, g: str) -> list[int]:
        return [i for i, x in enumerate(self.grades) if x == g]

    def basis_vector(self, i: int) -> list[Fraction]:
        v = [Fraction(0)] * self.dim
        v[i] = Fraction(1)
        return v

    def multiply(self, x: Sequence, y: Sequence) -> list[Fraction]:
        d = self.dim
        out = [Fraction(0)] * d
        for i in range(d):
            if not x[i]:
                continue
            for j in range(d):
                if not y[j]:
                    continue
                c = x[i] * y[j]
                row = self.gamma[i][j]
                for l in range(d):
                    if row[l]:
                        out[l] += c * row[l]
        return out

    def left_matrix(self, i: int) -> list[list[Fraction]]:
        """Matrix of ``x -> b_i x`` acting on column vectors."""
        d = self.dim
        return [[self.gamma[i][j][l] for j in range(d)] for l in range(d)]

    def right_matrix(self, i: int) -> list[list[Fraction]]:
        """Matrix of ``x -> x b_i`` acting on column vectors."""
        d = self.dim
        return [[self.gamma[j][i][l] for j in range(d)] for l in range(d)]

    def grade_of(self, v: Sequence) -> str | None:
        """Grade label of a nonzero homogeneous vector, else None."""
        labels = {self.grades[i] for i, x in enumerate(v) if x}
        return labels.pop() if len(labels) == 1 else None


# --------------------------------------------------------------------------
# validation and table classification


@dataclass
class Validation:
    ok: bool
    violations: list[tuple[int, int, int]]

    def describe(self, A: GradedAlgebra) -> list[str]:
        out = []
        for i, j, l in self.violations:
            expect = A.table.product(A.grades[i], A.grades[j])
            out.append(f"(i, j, l) = ({i}, {j}, {l}): {A.names[i]}*{A.names[j]} has a nonzero "
                       f"{A.names[l]} term of grade {A.grades[l]}, expected grade {expect}")
        return out


def validate(A: GradedAlgebra) -> Validation:
    """Check ``A_g A_h ⊆ A_{gh}`` on every triple of basis vectors."""
    bad = []
    for i in range(A.dim):
        for j in range(A.dim):
            target = A.table.product(A.grades[i], A.grades[j])
            for l in range(A.dim):
                if A.gamma[i][j][l] != 0 and A.grades[l] != target:
                    bad.append((i, j, l))
    return Validation(not bad, bad)


def ensure_valid(A: GradedAlgebra) -> GradedAlgebra:
    v = validate(A)
    if not v.ok:
        raise InvalidAlgebraError("grading violated: " + "; ".join(v.describe(A)), v.violations)
    return A


def table_properties(t: OperationTable) -> dict[str, bool]:
    n = len(t.labels)
    T = [[t.labels.index(x) for x in row] for row in t.table]
    r = range(n)
    assoc = all(T[T[a][b]][c] == T[a][T[b][c]] for a in r for b in r for c in r)
    comm = all(T[a][b] == T[b][a] for a in r for b in r)
    ident = next((e for e in r if all(T[e][a] == a and T[a][e] == a for a in r)), None)
    group = assoc and ident is not None and all(
        any(T[a][b] == ident and T[b][a] == ident for b in r) for a in r)
    return {"associative": assoc, "commutative": comm, "has_identity": ident is not None,
            "group": group}


def classify_table(t: OperationTable) -> str:
    """Most specific of ``magma``, ``semigroup``, ``commutative semigroup``, ``group``."""
    p = table_properties(t)
    if p["group"]:
        return "group"
    if p["associative"] and p["commutative"]:
        return "commutative semigroup"
    if p["associative"]:
        return "semigroup"
    return "magma"


def support(A: GradedAlgebra) -> list[str]:
    """Labels with a nonzero homogeneous component, in declaration order."""
    present = set(A.grades)
    return [g for g in A.table.labels if g in present]


def component_dims(A: GradedAlgebra) -> list[int]:
    return [len(A.component(g)) for g in support(A)]


def is_associative(A: GradedAlgebra) -> bool:
    d = A.dim
    for i, j, k in itertools.product(range(d), repeat=3):
        bi, bj, bk = A.basis_vector(i), A.basis_vector(j), A.basis_vector(k)
        if A.multiply(A.multiply(bi, bj), bk) != A.multiply(bi, A.multiply(bj, bk)):
            return False
    return True


def unit_element(A: GradedAlgebra) -> list[Fraction] | None:
    """The two-sided identity of ``A`` if there is one.

    Solves ``e b_j = b_j e = b_j`` homogenised with an extra unknown ``t``
    for the right-hand side; a solution exists iff some kernel vector has
    ``t != 0``.
    """
    d = A.dim
    rows = []
    for j in range(d):
        for l in range(d):
            rhs = Fraction(-int(j == l))
            rows.append([A.gamma[i][j][l] for i in range(d)] + [rhs])
            rows.append([A.gamma[j][i][l] for i in range(d)] + [rhs])
    for v in nullspace(rows, d + 1):
        if v[d]:
            return [x / v[d] for x in v[:d]]
    return None

# --------------------------------------------------------------------------
# subspaces, annihilator, ideals


class GradedSubspace:
    """A homogeneous subspace: one RREF basis per support label.

    Vectors are stored in full coordinates of A, supported on their component.
    """

    def __init__(self, A: GradedAlgebra, components: Mapping[str, Subspace]):
        self.labels = tuple(support(A))
        self.ambient = A.dim
        self.components = {g: components.get(g, Subspace(A.dim)) for g in self.labels}

    @classmethod
    def from_vectors(cls, A: GradedAlgebra, vectors: Iterable[Sequence]) -> "GradedSubspace":
        """Span of homogeneous vectors (non-homogeneous input raises)."""
        buckets: dict[str, list] = {g: [] for g in support(A)}
        for v in vectors:
            if not any(v):
                continue
            g = A.grade_of(v)
            if g is None:
                raise ValueError("vector is not homogeneous")
            buckets[g].append(list(v))
        return cls(A, {g: Subspace(A.dim, vs) for g, vs in buckets.items()})

    @property
    def dim(self) -> int:
        return sum(s.rank for s in self.components.values())

    def dims(self) -> dict[str, int]:
        return {g: s.rank for g, s in self.components.items()}

    def total(self) -> Subspace:
        return Subspace(self.ambient, [r for s in self.components.values() for r in s.rows])

    def vectors(self) -> list[list[Fraction]]:
        return [list(r) for s in self.components.values() for r in s.rows]

    def is_zero(self) -> bool:
        return self.dim == 0

    def __eq__(self, other) -> bool:
        return isinstance(other, GradedSubspace) and self.components == other.components

    def __repr__(self) -> str:
        return f"GradedSubspace(dims={self.dims()})"


def _mult_constraints(A: GradedAlgebra, columns: Sequence[int]) -> list[list[Fraction]]:
    """Rows of the stacked maps ``x -> x b_j`` and ``x -> b_j x`` restricted to ``columns``."""
    rows = []
    for j in range(A.dim):
        for l in range(A.dim):
            rows.append([A.gamma[i][j][l] for i in columns])
            rows.append([A.gamma[j][i][l] for i in columns])
    return rows


def annihilator(A: GradedAlgebra) -> GradedSubspace:
    """``Ann A = {x : xA = Ax = 0}`` as a homogeneous subspace.

    Computed once on all of A and once per component; the dimensions must
    agree, which is the homogeneity assertion.
    """
    d = A.dim
    full = nullspace(_mult_constraints(A, range(d)), d)
    comps = {}
    for g in support(A):
        cols = A.component(g)
        vecs = []
        for k in nullspace(_mult_constraints(A, cols), len(cols)):
            v = [Fraction(0)] * d
            for c, x in zip(cols, k):
                v[c] = x
            vecs.append(v)
        comps[g] = Subspace(d, vecs)
    ann = GradedSubspace(A, comps)
    if ann.dim != len(full):
        raise AssertionError("annihilator is not homogeneous")
    return ann


def product_space(A: GradedAlgebra) -> GradedSubspace:
    """``A*A``, spanned by the products of basis vectors."""
    vecs = [A.multiply(A.basis_vector(i), A.basis_vector(j)) for i in range(A.dim) for j in range(A.dim)]
    return GradedSubspace.from_vectors(A, vecs)


def _closure_vectors(A: GradedAlgebra, gens: list[list[Fraction]]) -> list[list[Fraction]]:
    span = Subspace(A.dim, gens)
    kept = [list(v) for v in gens if any(v)]
    frontier = list(kept)
    basis = [A.basis_vector(i) for i in range(A.dim)]
    while frontier and not span.is_full():
        new = []
        for v in frontier:
            for b in basis:
                for w in (A.multiply(v, b), A.multiply(b, v)):
                    if any(w) and not span.contains(w):
                        span = Subspace(A.dim, list(span.rows) + [w])
                        new.append(w)
        kept.extend(new)
        frontier = new
    return kept


def ideal_closure(A: GradedAlgebra, S):
    """Two-sided ideal generated by ``S`` (a ``Subspace`` or ``GradedSubspace``).

    Returns the same kind of object as it was given. Each round strictly
    increases the dimension, so at most ``dim A`` rounds run.
    """
    if isinstance(S, GradedSubspace):
        vecs = _closure_vectors(A, S.vectors())
        return GradedSubspace.from_vectors(A, vecs)
    vecs = _closure_vectors(A, [list(r) for r in S.rows])
    return Subspace(A.dim, vecs)


# --------------------------------------------------------------------------
# simplicity


DEFAULT_TRIALS = 64
DEFAULT_BOUND = 10


@dataclass
class SimplicityVerdict:
    """``probably_simple`` False is certain; True only means no witness was found."""

    probably_simple: bool
    witness: object = None
    reason: str = ""
    trials: int = 0
    seed: int = 0
    graded: bool = True

    @property
    def label(self) -> str:
        return "ProbablyYes" if self.probably_simple else "No"

    def to_dict(self, A: GradedAlgebra | None = None) -> dict:
        out = {"result": self.label, "graded": self.graded, "reason": self.reason,
               "trials": self.trials, "seed": self.seed}
        if self.witness is not None:
            vecs = self.witness.vectors() if isinstance(self.witness, GradedSubspace) else self.witness.rows
            out["witness"] = [[str(x) for x in v] for v in vecs]
        return out


def _random_vector(rng: random.Random, d: int, coords: Sequence[int], bound: int) -> list[Fraction]:
    while True:
        v = [Fraction(0)] * d
        for c in coords:
            v[c] = Fraction(rng.randint(-bound, bound))
        if any(v):
            return v


def _charpoly_candidates(A: GradedAlgebra, rng: random.Random, bound: int) -> list[list[Fraction]]:
    """Kernel vectors of ``f(theta)`` for the irreducible factors ``f`` of the
    characteristic polynomial of a random element ``theta`` of the
    multiplication algebra. Eigenvector-like vectors of this kind generate
    proper ideals whenever a random spin would almost surely miss them."""
    d = A.dim
    ops = [sympy.Matrix(A.left_matrix(i)) for i in range(d)] + \
          [sympy.Matrix(A.right_matrix(i)) for i in range(d)]
    theta = sympy.zeros(d, d)
    for op in ops:
        theta += rng.randint(-bound, bound) * op
    for a, b in itertools.combinations(ops, 2):
        theta += rng.randint(-1, 1) * (a * b)
    x = sympy.Symbol("x")
    poly = theta.charpoly(x).as_expr()
    _, factors = sympy.factor_list(poly, x)
    factors = sorted((f for f, _ in factors), key=lambda f: (sympy.degree(f, x), str(f)))
    out = []
    for f in factors:
        p = sympy.Poly(f, x)
        M = sympy.zeros(d, d)
        for c in p.all_coeffs():
            M = M * theta + c * sympy.eye(d)
        for k in M.nullspace():
            out.append([Fraction(int(r.p), int(r.q)) for r in map(sympy.Rational, k)])
    return out


def _proper(W, d: int) -> bool:
    n = W.dim if isinstance(W, GradedSubspace) else W.rank
    return 0 < n < d


def _check_simple(A: GradedAlgebra, trials: int, seed: int, bound: int, graded: bool) -> SimplicityVerdict:
    d = A.dim
    kw = dict(trials=trials, seed=seed, graded=graded)
    sq = product_space(A)
    if sq.is_zero():
        witness = None
        if d >= 2:
            witness = GradedSubspace.from_vectors(A, [A.basis_vector(0)])
            if not graded:
                witness = witness.total()
        return SimplicityVerdict(False, witness, "A*A = 0", **kw)

    def wrap(vecs):
        return GradedSubspace.from_vectors(A, vecs) if graded else Subspace(d, vecs)

    def verify(W, reason):
        # re-check before reporting: witness must be a proper nonzero ideal
        if not _proper(W, d) or ideal_closure(A, W) != W:
            raise AssertionError("simplicity witness failed re-verification")
        return SimplicityVerdict(False, W, reason, **kw)

    if sq.dim < d:
        return verify(sq if graded else sq.total(), "A*A is a proper ideal")
    ann = annihilator(A)
    if 0 < ann.dim < d:
        return verify(ann if graded else ann.total(), "Ann A is a proper ideal")

    for i in range(d):
        W = ideal_closure(A, wrap([A.basis_vector(i)]))
        if _proper(W, d):
            return verify(W, f"ideal generated by basis vector {A.names[i]}")

    rng = random.Random(seed)
    if not graded:
        for v in _charpoly_candidates(A, rng, bound):
            W = ideal_closure(A, Subspace(d, [v]))
            if _proper(W, d):
                return verify(W, "ideal generated by a kernel vector of the multiplication algebra")

    blocks = [A.component(g) for g in support(A)] if graded else [list(range(d))]
    for coords in blocks:
        for _ in range(trials):
            v = _random_vector(rng, d, coords, bound)
            W = ideal_closure(A, wrap([v]))
            if _proper(W, d):
                return verify(W, "ideal generated by a random vector")
    return SimplicityVerdict(True, None, "no proper ideal found", **kw)


def is_graded_simple(A: GradedAlgebra, trials: int = DEFAULT_TRIALS, seed: int = 0,
                     bound: int = DEFAULT_BOUND) -> SimplicityVerdict:
    """One-sided Monte Carlo test for graded simplicity (a "No" is certain)."""
    return _check_simple(A, trials, seed, bound, graded=True)


def is_simple(A: GradedAlgebra, trials: int = DEFAULT_TRIALS, seed: int = 0,
              bound: int = DEFAULT_BOUND) -> SimplicityVerdict:
    """Ungraded version of :func:`is_graded_simple`."""
    return _check_simple(A, trials, seed, bound, graded=False)


# --------------------------------------------------------------------------
# builtin algebras


def field_algebra() -> GradedAlgebra:
    return GradedAlgebra.from_products(["u"], ["0"], OperationTable.trivial(),
                                       {("u", "u"): {"u": 1}}, "field",
                                       [("simple", "true")])


def group_algebra(m: int) -> GradedAlgebra:
    names = [f"g{i}" for i in range(m)]
    prods = {(names[i], names[j]): {names[(i + j) % m]: 1} for i in range(m) for j in range(m)}
    return GradedAlgebra.from_products(names, [str(i) for i in range(m)], OperationTable.cyclic(m),
                                       prods, f"group_algebra:Z_{m}",
                                       [("graded_simple", "true"), ("simple", "true" if m == 1 else "false")])


def matrix_units(grading: str = "Z2") -> GradedAlgebra:
    names = ["E11", "E12", "E21", "E22"]
    prods = {}
    for a, b in itertools.product(names, repeat=2):
        if a[2] == b[1]:
            prods[(a, b)] = {f"E{a[1]}{b[2]}": 1}
    if grading == "Z2":
        grades = ["0", "1", "1", "0"]
        table, name = OperationTable.cyclic(2), "M2_Z2"
    else:
        grades = ["0"] * 4
        table, name = OperationTable.trivial(), "M2"
    return GradedAlgebra.from_products(names, grades, table, prods, name, [("simple", "true")])


def nilpotent_1() -> GradedAlgebra:
    return GradedAlgebra.from_products(["b"], ["0"], OperationTable.trivial(), {}, "nilpotent_1")


def dual_numbers() -> GradedAlgebra:
    prods = {("u", "u"): {"u": 1}, ("u", "eps"): {"eps": 1}, ("eps", "u"): {"eps": 1}}
    return GradedAlgebra.from_products(["u", "eps"], ["0", "1"], OperationTable.cyclic(2), prods,
                                       "dual_numbers")


def cross_product() -> GradedAlgebra:
    """so(3): R^3 with the cross product, a simple nonassociative algebra."""
    names = ["x", "y", "z"]
    prods = {}
    for a, b, c in (("x", "y", "z"), ("y", "z", "x"), ("z", "x", "y")):
        prods[(a, b)] = {c: 1}
        prods[(b, a)] = {c: -1}
    return GradedAlgebra.from_products(names, ["0"] * 3, OperationTable.trivial(), prods, "cross3",
                                       [("simple", "true")])


def direct_sum(A: GradedAlgebra, B: GradedAlgebra, name: str = "") -> GradedAlgebra:
    """Componentwise product on ``A ⊕ B``; both summands must share the grading table."""
    if A.table != B.table:
        raise ValueError("direct sum needs a common operation table")
    names = [f"{n}_1" for n in A.names] + [f"{n}_2" for n in B.names]
    da, d = A.dim, A.dim + B.dim
    gamma = [[[Fraction(0)] * d for _ in range(d)] for _ in range(d)]
    for i, j, l in itertools.product(range(da), repeat=3):
        gamma[i][j][l] = A.gamma[i][j][l]
    for i, j, l in itertools.product(range(B.dim), repeat=3):
        gamma[da + i][da + j][da + l] = B.gamma[i][j][l]
    return GradedAlgebra(tuple(names), A.grades + B.grades, A.table, gamma,
                         name or f"{A.name}+{B.name}")


BUILTINS = ("field", "group_algebra:Z_2", "group_algebra:Z_3", "M2_Z2", "M2", "nilpotent_1",
            "dual_numbers", "direct_sum_Z2", "cross3")


def builtin(name: str) -> GradedAlgebra:
    """Look up a catalog algebra. ``group_algebra:Z_m`` accepts any ``m >= 1``."""
    if name == "field":
        A = field_algebra()
    elif name.startswith("group_algebra:Z_"):
        try:
            m = int(name.split("_")[-1])
        except ValueError:
            raise KeyError(f"unknown builtin algebra {name!r}") from None
        if m < 1:
            raise KeyError(f"unknown builtin algebra {name!r}")
        A = group_algebra(m)
    elif name == "M2_Z2":
        A = matrix_units("Z2")
    elif name == "M2":
        A = matrix_units("trivial")
    elif name == "nilpotent_1":
        A = nilpotent_1()
    elif name == "dual_numbers":
        A = dual_numbers()
    elif name == "direct_sum_Z2":
        A = direct_sum(group_algebra(2), group_algebra(2), "direct_sum_Z2")
    elif name == "cross3":
        A = cross_product()
    else:
        raise KeyError(f"unknown builtin algebra {name!r}; known: {', '.join(BUILTINS)}")
    return ensure_valid(A)
