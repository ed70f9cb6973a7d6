"""Graded codimension and colength sequences, exponent estimates, and the
sequence-level bound checks.

Nothing here claims a limit exists: ``exponent_estimates`` reports n-th roots
over the computed range and their tail minimum and maximum, and
``theorem_applicability`` states which existence guarantee the hypotheses
(grading table type, simplicity) would give.
"""

from __future__ import annotations

import itertools
import math
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Sequence

import mpmath

from .combinatorics import _ctx, multinomial
from .errors import ResourceCapError
from .graded_algebra import (DEFAULT_TRIALS, GradedAlgebra, annihilator, classify_table,
                             component_dims, is_graded_simple, is_simple, product_space, support,
                             table_properties, unit_element)
from .linalg import rank
from .multilinear import (DEFAULT_CAPS, Caps, DegreeVector, degree_vectors, partial_codimension,
                          skeletons)
from .representation import multiplicities
from .verdicts import FAILS, HOLDS, OUTSIDE, SKIPPED, Verdict, combine

ROOT_PRECISION = 64
GROWTH_THRESHOLD = 3


@dataclass
class DvRecord:
    dv: tuple[int, ...]
    multinomial: int
    codimension: int
    colength: int | None = None

    def to_dict(self) -> dict:
        return {"dv": list(self.dv), "multinomial": str(self.multinomial),
                "codimension": str(self.codimension),
                "colength": None if self.colength is None else str(self.colength)}


@dataclass
class NRecord:
    n: int
    codimension: int
    colength: int | None
    breakdown: list[DvRecord]
    root: object = None

    def to_dict(self) -> dict:
        return {"n": self.n, "c_n_gr": str(self.codimension),
                "l_n_gr": None if self.colength is None else str(self.colength),
                "root": format_root(self.root), "breakdown": [b.to_dict() for b in self.breakdown]}


@dataclass
class ExponentEstimates:
    roots: list
    n_min: int
    tail_inf: object
    tail_sup: object
    zero_at: list[int]

    @property
    def nilpotent(self) -> bool:
        return bool(self.zero_at)

    def to_dict(self) -> dict:
        return {"kind": "estimate", "n_min": self.n_min,
                "roots": [format_root(r) for r in self.roots],
                "tail_inf": format_root(self.tail_inf), "tail_sup": format_root(self.tail_sup),
                "zero_at": self.zero_at, "nilpotent": self.nilpotent}


@dataclass
class InvariantReport:
    algebra: str
    dims: list[int]
    labels: list[str]
    associative: bool
    rows: list[NRecord] = field(default_factory=list)
    estimates: ExponentEstimates | None = None
    verdicts: list[Verdict] = field(default_factory=list)
    applicability: dict | None = None
    truncated: dict | None = None

    @property
    def d(self) -> int:
        return sum(self.dims)

    @property
    def k(self) -> int:
        return len(self.dims)

    def codimensions(self) -> list[int]:
        return [r.codimension for r in self.rows]

    def colengths(self) -> list[int | None]:
        return [r.colength for r in self.rows]

    def to_dict(self) -> dict:
        return {
            "schema": 1,
            "algebra": self.algebra,
            "support": self.labels,
            "component_dims": self.dims,
            "associative": self.associative,
            "rows": [r.to_dict() for r in self.rows],
            "estimates": None if self.estimates is None else self.estimates.to_dict(),
            "verdicts": [v.to_dict() for v in self.verdicts],
            "applicability": self.applicability,
            "truncated": self.truncated,
        }


def format_root(r, digits: int = 6) -> str | None:
    if r is None:
        return None
    if not r:
        return "0"
    return mpmath.nstr(r, digits)


# --------------------------------------------------------------------------
# sequences


def graded_codimension(A: GradedAlgebra, n: int, associative: bool = False,
                       caps: Caps = DEFAULT_CAPS) -> int:
    """``sum_dv (n; dv) c_dv`` over degree vectors on the support."""
    return sum(multinomial(n, dv.parts) * partial_codimension(A, dv, associative, caps)
               for dv in degree_vectors(A, n))


def graded_codimension_direct(A: GradedAlgebra, n: int, associative: bool = False) -> int:
    """Independent oracle for :func:`graded_codimension`.

    Sums, over every assignment of a grading label (support or not) to each
    of ``n`` variables, the rank of the matrix of values of all multilinear
    monomials on homogeneous basis tuples, evaluated with plain ``Fraction``
    arithmetic. Exponential in ``n``; meant for small cross-checks.
    """
    labels = A.table.labels
    comps = {g: A.component(g) for g in labels}
    total = 0
    for colours in itertools.product(labels, repeat=n):
        spaces = [comps[g] for g in colours]
        if any(not s for s in spaces):
            continue
        assignments = list(itertools.product(*spaces))
        rows = []
        for s in skeletons(n, associative):
            for perm in itertools.permutations(range(n)):
                row = []
                for a in assignments:
                    it = iter(perm)

                    def ev(t):
                        if t == ():
                            return A.basis_vector(a[next(it)])
                        x = ev(t[0])
                        return A.multiply(x, ev(t[1]))

                    row.extend(ev(s))
                rows.append(row)
        total += rank(rows)
    return total


def _dv_task(args):
    A, dv, associative, caps, with_colength = args
    try:
        if with_colength:
            t = multiplicities(A, dv, associative, caps)
            return t.codimension, t.colength, None
        return partial_codimension(A, dv, associative, caps), None, None
    except ResourceCapError as e:
        return None, None, {"cap": e.cap, "limit": e.limit, "requested": e.requested}


def graded_colength(A: GradedAlgebra, n: int, associative: bool = False,
                    caps: Caps = DEFAULT_CAPS) -> int:
    """Sum of partial colengths over all degree vectors of total degree ``n``."""
    return sum(multiplicities(A, dv, associative, caps).colength for dv in degree_vectors(A, n))


def nth_root(c: int, n: int, prec: int = ROOT_PRECISION):
    """``c^(1/n)``; exact when ``c`` is a perfect n-th power."""
    ctx = _ctx(max(prec, 64))
    if c == 0:
        return ctx.mpf(0)
    r = ctx.root(ctx.mpf(c), n)
    guess = int(ctx.nint(r))
    if guess > 0 and guess**n == c:
        return ctx.mpf(guess)
    return r


def exponent_estimates(codims: Sequence[int], n_min: int = 1, prec: int = ROOT_PRECISION,
                       start: int = 1) -> ExponentEstimates:
    """n-th roots of a codimension sequence (``codims[0]`` is degree ``start``)
    and their min/max over ``n >= n_min``. Zero terms are flagged as nilpotence."""
    if not codims:
        raise ValueError("empty codimension sequence")
    roots = [nth_root(c, start + i, prec) for i, c in enumerate(codims)]
    tail = [r for i, r in enumerate(roots) if start + i >= n_min] or roots[-1:]
    zero = [start + i for i, c in enumerate(codims) if c == 0]
    return ExponentEstimates(roots, n_min, min(tail), max(tail), zero)


def compute_report(A: GradedAlgebra, n_max: int, associative: bool = False,
                   caps: Caps = DEFAULT_CAPS, with_colength: bool = True, n_min: int = 1,
                   workers: int = 1, prec: int = ROOT_PRECISION) -> InvariantReport:
    """Codimensions (and colengths) for ``n = 1..n_max``.

    Stops at the first degree where a cap is hit and records it in
    ``truncated``; lower degrees are kept.
    """
    labels = support(A)
    report = InvariantReport(A.name, component_dims(A), labels, associative)
    pool = ProcessPoolExecutor(workers) if workers > 1 else None
    try:
        for n in range(1, n_max + 1):
            dvs = degree_vectors(A, n)
            tasks = [(A, dv, associative, caps, with_colength) for dv in dvs]
            results = list(pool.map(_dv_task, tasks)) if pool else [_dv_task(t) for t in tasks]
            cap = next((r[2] for r in results if r[2] is not None), None)
            if cap is not None:
                report.truncated = dict(cap, n=n)
                break
            breakdown = [DvRecord(dv.parts, multinomial(n, dv.parts), c, l)
                         for dv, (c, l, _) in zip(dvs, results)]
            codim = sum(b.multinomial * b.codimension for b in breakdown)
            colen = sum(b.colength for b in breakdown) if with_colength else None
            report.rows.append(NRecord(n, codim, colen, breakdown, nth_root(codim, n, prec)))
    finally:
        if pool:
            pool.shutdown()
    if report.rows:
        report.estimates = exponent_estimates(report.codimensions(), n_min, prec)
    return report


# --------------------------------------------------------------------------
# bound checks


def verify_codimension_bound(A: GradedAlgebra, report: InvariantReport) -> Verdict:
    """``c_n^gr <= d^(n+1)`` for every computed ``n``."""
    d = A.dim
    parts = []
    for r in report.rows:
        bound = d ** (r.n + 1)
        parts.append(Verdict("codimension_bound", HOLDS if r.codimension <= bound else FAILS,
                             {"n": r.n, "c_n_gr": str(r.codimension), "bound": str(bound)}))
    return combine("codimension_bound", parts, per_n=[p.details for p in parts])


def colength_exponent(dims: Sequence[int]) -> int:
    return len(dims) + sum(x * x for x in dims) + sum(dims)


def verify_colength_bound(A: GradedAlgebra, report: InvariantReport) -> Verdict:
    """``l_n^gr <= d (n+1)^(k + sum d_i^2 + sum d_i)`` for every computed ``n``."""
    dims = component_dims(A)
    e = colength_exponent(dims)
    parts = []
    for r in report.rows:
        if r.colength is None:
            parts.append(Verdict("colength_bound", SKIPPED, {"n": r.n}))
            continue
        bound = A.dim * (r.n + 1) ** e
        parts.append(Verdict("colength_bound", HOLDS if r.colength <= bound else FAILS,
                             {"n": r.n, "l_n_gr": str(r.colength), "bound": str(bound)}))
    return combine("colength_bound", parts, exponent=e, per_n=[p.details for p in parts])


def verify_growth_ratio(A: GradedAlgebra, report: InvariantReport,
                        threshold: int = GROWTH_THRESHOLD) -> Verdict:
    """``c_{n+1}^gr > c_n^gr / (8 k n^k)`` for consecutive computed degrees.

    Only asserted for algebras with zero annihilator; the statement is
    asymptotic, so misses below ``threshold`` are informational.
    """
    if annihilator(A).dim:
        return Verdict("growth_ratio", SKIPPED, {"reason": "annihilator is nonzero"})
    k = len(support(A))
    parts = []
    cs = report.codimensions()
    for i in range(len(cs) - 1):
        n = report.rows[i].n
        lhs, rhs = cs[i + 1], Fraction(cs[i], 8 * k * n**k)
        ok = lhs > rhs
        status = HOLDS if ok else (FAILS if n >= threshold else OUTSIDE)
        parts.append(Verdict("growth_ratio", status,
                             {"n": n, "c_n": str(cs[i]), "c_n1": str(cs[i + 1]),
                              "ratio": None if not cs[i] else str(Fraction(cs[i + 1], cs[i]))},
                             hard=n >= threshold))
    return combine("growth_ratio", parts, threshold=threshold, per_n=[p.details for p in parts])


def theorem_applicability(A: GradedAlgebra, trials: int = DEFAULT_TRIALS, seed: int = 0,
                          estimates: ExponentEstimates | None = None) -> dict:
    """Which existence guarantee for the graded PI-exponent the hypotheses give.

    * grading table a commutative semigroup and ``A`` graded simple;
    * ``A`` simple (any grading table).

    Exponent estimates are attached as numerical evidence only.
    """
    props = table_properties(A.table)
    gs = is_graded_simple(A, trials, seed)
    s = is_simple(A, trials, seed)
    by_grading = props["associative"] and props["commutative"] and gs.probably_simple
    by_simplicity = s.probably_simple
    if by_grading and by_simplicity:
        statement = "exponent exists: graded simple over a commutative semigroup, and simple"
    elif by_grading:
        statement = "exponent exists: graded simple over a commutative semigroup"
    elif by_simplicity:
        statement = "exponent exists: simple algebra (any grading)"
    else:
        statement = "no existence guarantee"
    out = {
        "table_class": classify_table(A.table),
        "table_properties": props,
        "graded_simple": gs.to_dict(A),
        "simple": s.to_dict(A),
        "graded_simple_commutative_semigroup": by_grading,
        "simple_any_grading": by_simplicity,
        "statement": statement,
    }
    if product_space(A).is_zero():
        out["note"] = "A*A = 0: not counted as graded simple"
    if estimates is not None:
        out["evidence"] = estimates.to_dict()
    return out


def check_unital_monotone(A: GradedAlgebra, report: InvariantReport) -> Verdict:
    """For unital ``A``, ``c_n^gr`` should not decrease (substitute the unit).

    Informational only: reported, never counted as a hard failure.
    """
    if unit_element(A) is None:
        return Verdict("unital_monotone", SKIPPED, {"reason": "no unit element"}, hard=False)
    cs = report.codimensions()
    drops = [report.rows[i + 1].n for i in range(len(cs) - 1) if cs[i + 1] < cs[i]]
    return Verdict("unital_monotone", FAILS if drops else HOLDS, {"drops_at": drops}, hard=False)


def verify_all_sequences(A: GradedAlgebra, report: InvariantReport,
                         threshold: int = GROWTH_THRESHOLD) -> list[Verdict]:
    return [verify_codimension_bound(A, report), verify_colength_bound(A, report),
            verify_growth_ratio(A, report, threshold), check_unital_monotone(A, report)]
