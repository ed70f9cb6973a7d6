"""Exact linear algebra over the rationals.

Rank computations run on integer rows (denominators cleared up front) with
fraction-free elimination; gcd content is divided out after each update so
entries stay small. Subspaces are kept in reduced row-echelon form over
``Fraction`` so that equality is a direct comparison.
"""

from __future__ import annotations

import bisect
import math
from fractions import Fraction
from typing import Iterable, Sequence

import numpy as np


def clear_denominators(row: Sequence) -> list[int]:
    """Scale a rational row to a primitive integer row with the same span."""
    fr = [Fraction(x) for x in row]
    den = 1
    for x in fr:
        den = math.lcm(den, x.denominator)
    ints = [int(x * den) for x in fr]
    return _primitive(ints)


def _primitive(row: list[int]) -> list[int]:
    g = math.gcd(*row) if row else 0
    if g > 1:
        return [x // g for x in row]
    return row


# int64 arithmetic is used while every intermediate provably stays below this
_SAFE = 2**62


def _as_array(row: Sequence[int]) -> np.ndarray:
    if isinstance(row, np.ndarray) and row.dtype == np.int64:
        return row.copy()
    a = np.array(row, dtype=object)
    if a.size and int(np.max(np.abs(a))) >= _SAFE:
        return a
    return a.astype(np.int64)


def _maxabs(a: np.ndarray) -> int:
    return int(np.max(np.abs(a))) if a.size else 0


def _primitive_array(a: np.ndarray) -> np.ndarray:
    if a.dtype == object:
        g = math.gcd(*a.tolist())
        if g > 1:
            a = a // g
        return a.astype(np.int64) if _maxabs(a) < _SAFE else a
    g = int(np.gcd.reduce(a))
    return a // g if g > 1 else a


class IncrementalEchelon:
    """Integer row echelon basis that absorbs rows one at a time.

    ``add`` returns True when the row was independent of the rows already
    absorbed. Only the reduced basis is stored, so the full matrix is never
    materialised. Rows live in numpy arrays: int64 while the bound
    ``|fa| max|r| + |fb| max|b| < 2^62`` guarantees an exact update, Python
    integers (object dtype) otherwise.
    """

    def __init__(self, ncols: int):
        self.ncols = ncols
        self._pivots: list[int] = []
        self._rows: dict[int, tuple[np.ndarray, int]] = {}

    @property
    def rank(self) -> int:
        return len(self._pivots)

    @property
    def pivots(self) -> list[int]:
        return list(self._pivots)

    def _reduce(self, row: Sequence[int]) -> np.ndarray:
        if len(row) != self.ncols:
            raise ValueError(f"row length {len(row)} != {self.ncols}")
        r = _as_array(row)
        rmax = _maxabs(r)
        for p in self._pivots:
            a = int(r[p])
            if not a:
                continue
            b, bmax = self._rows[p]
            bp = int(b[p])
            g = math.gcd(a, bp)
            fa, fb = bp // g, a // g
            if r.dtype != object and b.dtype != object and abs(fa) * rmax + abs(fb) * bmax < _SAFE:
                r = fa * r - fb * b
            else:
                r = fa * r.astype(object) - fb * b.astype(object)
            r = _primitive_array(r)
            rmax = _maxabs(r)
        return r

    def reduce(self, row: Sequence[int]) -> list[int]:
        return [int(x) for x in self._reduce(row)]

    def add(self, row: Sequence[int]) -> bool:
        r = self._reduce(row)
        nz = np.flatnonzero(r)
        if not nz.size:
            return False
        p = int(nz[0])
        if r[p] < 0:
            r = -r
        self._rows[p] = (r, _maxabs(r))
        # keep pivots sorted so a single ascending sweep reduces a row
        bisect.insort(self._pivots, p)
        return True

    def full(self) -> bool:
        return self.rank == self.ncols


def rank(rows: Iterable[Sequence], ncols: int | None = None) -> int:
    """Exact rank of a rational matrix given as an iterable of rows."""
    ech = None
    for row in rows:
        if ech is None:
            ech = IncrementalEchelon(len(row) if ncols is None else ncols)
        ech.add(clear_denominators(row))
        if ech.full():
            break
    return 0 if ech is None else ech.rank


def rref(rows: Iterable[Sequence], ncols: int) -> tuple[tuple[Fraction, ...], ...]:
    """Reduced row-echelon basis (over ``Fraction``) of the span of ``rows``."""
    m = [[Fraction(x) for x in r] for r in rows]
    for r in m:
        if len(r) != ncols:
            raise ValueError(f"row length {len(r)} != {ncols}")
    out: list[list[Fraction]] = []
    piv_row = 0
    for c in range(ncols):
        sel = None
        for i in range(piv_row, len(m)):
            if m[i][c] != 0:
                sel = i
                break
        if sel is None:
            continue
        m[piv_row], m[sel] = m[sel], m[piv_row]
        pr = m[piv_row]
        inv = 1 / pr[c]
        pr[:] = [x * inv for x in pr]
        for i in range(len(m)):
            if i != piv_row and m[i][c] != 0:
                f = m[i][c]
                m[i] = [x - f * y for x, y in zip(m[i], pr)]
        piv_row += 1
        if piv_row == len(m):
            break
    for r in m[:piv_row]:
        out.append(r)
    return tuple(tuple(r) for r in out)


def nullspace(matrix: Sequence[Sequence], ncols: int) -> list[list[Fraction]]:
    """Basis of ``{x : M x = 0}`` over the rationals."""
    red = rref(matrix, ncols)
    pivots = []
    for r in red:
        pivots.append(next(i for i, x in enumerate(r) if x != 0))
    free = [c for c in range(ncols) if c not in pivots]
    basis = []
    for f in free:
        v = [Fraction(0)] * ncols
        v[f] = Fraction(1)
        for r, p in zip(red, pivots):
            v[p] = -r[f]
        basis.append(v)
    return basis


def inverse(mat: Sequence[Sequence]) -> list[list[Fraction]]:
    """Inverse of a square rational matrix by Gauss-Jordan elimination."""
    n = len(mat)
    aug = [[Fraction(x) for x in row] + [Fraction(int(i == j)) for j in range(n)]
           for i, row in enumerate(mat)]
    for c in range(n):
        sel = next((i for i in range(c, n) if aug[i][c] != 0), None)
        if sel is None:
            raise ZeroDivisionError("matrix is singular")
        aug[c], aug[sel] = aug[sel], aug[c]
        inv = 1 / aug[c][c]
        aug[c] = [x * inv for x in aug[c]]
        for i in range(n):
            if i != c and aug[i][c] != 0:
                f = aug[i][c]
                aug[i] = [x - f * y for x, y in zip(aug[i], aug[c])]
    return [row[n:] for row in aug]


class Subspace:
    """A subspace of ``Q^dim`` stored as its canonical RREF basis."""

    __slots__ = ("dim", "rows")

    def __init__(self, dim: int, vectors: Iterable[Sequence] = ()):
        self.dim = dim
        self.rows = rref(vectors, dim)

    @classmethod
    def _from_rref(cls, dim: int, rows) -> "Subspace":
        s = cls.__new__(cls)
        s.dim = dim
        s.rows = rows
        return s

    @property
    def rank(self) -> int:
        return len(self.rows)

    def __len__(self) -> int:
        return len(self.rows)

    def __eq__(self, other) -> bool:
        return isinstance(other, Subspace) and self.dim == other.dim and self.rows == other.rows

    def __hash__(self) -> int:
        return hash((self.dim, self.rows))

    def __repr__(self) -> str:
        body = ", ".join("(" + ", ".join(str(x) for x in r) + ")" for r in self.rows)
        return f"Subspace(dim={self.dim}, basis=[{body}])"

    def is_zero(self) -> bool:
        return not self.rows

    def is_full(self) -> bool:
        return len(self.rows) == self.dim

    def contains(self, v: Sequence) -> bool:
        return Subspace(self.dim, list(self.rows) + [list(v)]).rank == self.rank

    def contains_space(self, other: "Subspace") -> bool:
        return (self + other).rank == self.rank

    def __add__(self, other: "Subspace") -> "Subspace":
        return Subspace(self.dim, list(self.rows) + list(other.rows))
