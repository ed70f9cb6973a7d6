"""Partitions, S_n characters and the entropy-type function Phi.

Dimensions ``d_lambda`` are exact (hook lengths); ``Phi(nu)^m`` is the
rational number ``m^m / prod nu_i^nu_i`` so every inequality below can be
decided with integer arithmetic. The log-space value (``LogReal``) is kept
for reporting margins and as the comparison path when numbers get large.
"""

from __future__ import annotations

import functools
import math
from collections import Counter
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Sequence

import mpmath

from .errors import PreconditionError
from .verdicts import FAILS, HOLDS, MARGINAL, Verdict, combine

DEFAULT_PRECISION = 256
# checks within this distance of equality (in log space) are "marginal"
LOG_SLACK = Fraction(1, 2**64)


class Partition(tuple):
    """Weakly decreasing tuple of positive integers.

    Behaves as a plain tuple for hashing, ordering and indexing.
    """

    def __new__(cls, parts: Iterable[int] = ()):
        parts = tuple(int(p) for p in parts)
        while parts and parts[-1] == 0:
            parts = parts[:-1]
        if any(p <= 0 for p in parts):
            raise ValueError(f"partition parts must be positive: {parts}")
        if any(a < b for a, b in zip(parts, parts[1:])):
            raise ValueError(f"partition parts must be weakly decreasing: {parts}")
        return super().__new__(cls, parts)

    @property
    def m(self) -> int:
        return sum(self)

    @property
    def height(self) -> int:
        return len(self)

    def padded(self, d: int) -> tuple[int, ...]:
        if d < len(self):
            raise PreconditionError(f"height {len(self)} exceeds {d}")
        return tuple(self) + (0,) * (d - len(self))

    def scaled(self, q: int) -> "Partition":
        return Partition(q * p for p in self)

    def conjugate(self) -> "Partition":
        if not self:
            return Partition()
        return Partition(sum(1 for p in self if p > j) for j in range(self[0]))

    def __repr__(self) -> str:
        return f"Partition({tuple(self)})"


@dataclass(frozen=True)
class CycleType:
    """Conjugacy class of S_m, identified by its cycle lengths."""

    partition: Partition

    def __post_init__(self):
        object.__setattr__(self, "partition", Partition(self.partition))

    @property
    def m(self) -> int:
        return self.partition.m

    @property
    def class_size(self) -> int:
        return class_size(self.partition)

    def representative(self, offset: int = 0) -> tuple[int, ...]:
        """A permutation of ``range(m)`` (as image tuple) with this cycle type."""
        perm = list(range(self.m))
        start = 0
        for length in self.partition:
            for t in range(length):
                perm[start + t] = start + (t + 1) % length
            start += length
        return tuple(p + offset for p in perm)


def class_size(mu: Sequence[int]) -> int:
    mu = Partition(mu)
    denom = 1
    for length, mult in Counter(mu).items():
        denom *= length**mult * math.factorial(mult)
    return math.factorial(mu.m) // denom


def cycle_type(perm: Sequence[int]) -> Partition:
    seen = [False] * len(perm)
    lengths = []
    for i in range(len(perm)):
        if seen[i]:
            continue
        j, length = i, 0
        while not seen[j]:
            seen[j] = True
            j = perm[j]
            length += 1
        lengths.append(length)
    return Partition(sorted(lengths, reverse=True))


# --------------------------------------------------------------------------
# log-space reals


@functools.lru_cache(maxsize=None)
def _ctx(prec: int) -> mpmath.ctx_mp.MPContext:
    # private context per precision: the global mpmath.mp is shared mutable state
    ctx = mpmath.MPContext()
    ctx.prec = prec
    return ctx


@dataclass(frozen=True)
class LogReal:
    """A non-negative real stored as its natural logarithm.

    ``sign`` is 0 for the number zero (``log_value`` is then ``None``) and 1
    otherwise.
    """

    sign: int
    log_value: object
    prec: int = DEFAULT_PRECISION

    @classmethod
    def from_rational(cls, x, prec: int = DEFAULT_PRECISION) -> "LogReal":
        x = Fraction(x)
        if x < 0:
            raise ValueError("LogReal holds non-negative numbers only")
        if x == 0:
            return cls(0, None, prec)
        ctx = _ctx(prec)
        return cls(1, _log_int(x.numerator, ctx) - _log_int(x.denominator, ctx), prec)

    def __mul__(self, other: "LogReal") -> "LogReal":
        if not self.sign or not other.sign:
            return LogReal(0, None, self.prec)
        return LogReal(1, self.log_value + other.log_value, self.prec)

    def __truediv__(self, other: "LogReal") -> "LogReal":
        if not other.sign:
            raise ZeroDivisionError("division by LogReal zero")
        if not self.sign:
            return self
        return LogReal(1, self.log_value - other.log_value, self.prec)

    def __pow__(self, e: int) -> "LogReal":
        if not self.sign:
            return self if e else LogReal.from_rational(1, self.prec)
        return LogReal(1, self.log_value * e, self.prec)

    def value(self):
        if not self.sign:
            return _ctx(self.prec).mpf(0)
        return _ctx(self.prec).exp(self.log_value)

    def __float__(self) -> float:
        return float(self.value())

    def margin_to(self, other: "LogReal"):
        """``log(other) - log(self)``: positive when ``self < other``."""
        if not self.sign or not other.sign:
            raise ValueError("log margin undefined for zero")
        return other.log_value - self.log_value


def _log_int(n: int, ctx) -> object:
    # mpf(n) would round to prec bits; exact bit shifting keeps full accuracy
    if n <= 0:
        raise ValueError("log of non-positive integer")
    shift = max(n.bit_length() - ctx.prec - 16, 0)
    head = n >> shift
    return ctx.log(ctx.mpf(head)) + shift * ctx.ln2


def _fmt(x) -> str:
    return mpmath.nstr(x, 20) if x is not None else "nan"


# --------------------------------------------------------------------------
# partitions and dimensions


def enumerate_partitions(m: int, max_height: int | None = None) -> list[Partition]:
    """All partitions of ``m`` with at most ``max_height`` parts.

    Order is lexicographically decreasing, e.g. ``(4), (3,1), (2,2), ...``.
    """
    if m < 0:
        raise PreconditionError("m must be non-negative")
    if max_height is None:
        max_height = max(m, 1)
    if max_height < 1:
        raise PreconditionError("max_height must be positive")
    out: list[Partition] = []

    def rec(rest: int, cap: int, prefix: list[int]):
        if rest == 0:
            out.append(Partition(prefix))
            return
        if len(prefix) == max_height:
            return
        for p in range(min(rest, cap), 0, -1):
            prefix.append(p)
            rec(rest - p, p, prefix)
            prefix.pop()

    rec(m, m, [])
    return out


def compositions(m: int, k: int) -> list[tuple[int, ...]]:
    """Weak compositions of ``m`` into ``k`` non-negative parts, lexicographically decreasing."""
    if k == 0:
        return [()] if m == 0 else []
    if k == 1:
        return [(m,)]
    return [(a,) + rest for a in range(m, -1, -1) for rest in compositions(m - a, k - 1)]


def dim_irrep(lam: Sequence[int]) -> int:
    """Dimension of the irreducible S_m-module of shape ``lam`` (hook length formula)."""
    lam = Partition(lam)
    conj = lam.conjugate()
    hooks = 1
    for i, row in enumerate(lam):
        for j in range(row):
            hooks *= (row - j) + (conj[j] - i) - 1
    return math.factorial(lam.m) // hooks


def multinomial(m: int, parts: Sequence[int]) -> int:
    if any(p < 0 for p in parts):
        raise PreconditionError(f"negative part in {parts}")
    if sum(parts) != m:
        raise PreconditionError(f"parts {tuple(parts)} do not sum to {m}")
    out = math.factorial(m)
    for p in parts:
        out //= math.factorial(p)
    return out


# --------------------------------------------------------------------------
# Phi


def _entropy_weight(parts: Sequence[int]) -> int:
    """``prod p^p`` over the parts, with ``0^0 = 1``."""
    out = 1
    for p in parts:
        if p:
            out *= p**p
    return out


def phi_power(parts: Sequence[int]) -> Fraction:
    """Exact ``Phi(parts)^m`` where ``m = sum(parts)``."""
    m = sum(parts)
    return Fraction(m**m, _entropy_weight(parts))


def phi(nu: Sequence[int], d: int | None = None, prec: int = DEFAULT_PRECISION) -> LogReal:
    """``Phi(nu) = 1 / prod (nu_i/m)^(nu_i/m)`` in log space.

    Zero parts (padding up to ``d``) contribute a factor of one.
    """
    parts = [int(p) for p in nu]
    if any(p < 0 for p in parts):
        raise PreconditionError(f"negative part in {tuple(parts)}")
    if d is not None and sum(1 for p in parts if p) > d:
        raise PreconditionError(f"height of {tuple(parts)} exceeds d={d}")
    m = sum(parts)
    if m < 1:
        raise PreconditionError("Phi needs m >= 1")
    ctx = _ctx(prec)
    s = ctx.fsum(p * _log_int(p, ctx) for p in parts if p)
    return LogReal(1, _log_int(m, ctx) - s / m, prec)


def _status(margin, exact: bool | None) -> str:
    """Decide a ``lhs <= rhs`` comparison from its log margin and, if known, exact truth."""
    slack = mpmath.mpf(LOG_SLACK.numerator) / LOG_SLACK.denominator
    if exact is False:
        return FAILS
    if abs(margin) <= slack:
        return MARGINAL
    if margin < 0:
        if exact:
            raise AssertionError("log-space and exact comparisons disagree")
        return FAILS
    return HOLDS


def _worst(*statuses: str) -> str:
    for s in (FAILS, MARGINAL):
        if s in statuses:
            return s
    return HOLDS


def check_dim_phi_bounds(nu: Sequence[int], d: int, precision: int = DEFAULT_PRECISION) -> Verdict:
    """Check ``Phi(nu)^m / m^(d^2+d) <= d_nu <= m Phi(nu)^m`` for ``m >= 100``."""
    nu = Partition(nu)
    m = nu.m
    if m < 100:
        raise PreconditionError(f"the dimension bounds are stated for m >= 100, got m={m}")
    if nu.height > d:
        raise PreconditionError(f"height {nu.height} exceeds d={d}")
    dnu = dim_irrep(nu)
    w = _entropy_weight(nu)
    ctx = _ctx(precision)
    log_d = _log_int(dnu, ctx)
    log_phi_m = phi(nu, d, precision).log_value * m
    log_m = _log_int(m, ctx)
    lower_margin = log_d - (log_phi_m - (d * d + d) * log_m)
    upper_margin = (log_m + log_phi_m) - log_d
    # Phi^m = m^m / w exactly
    lower_exact = m**m <= dnu * m ** (d * d + d) * w
    upper_exact = dnu * w <= m ** (m + 1)
    status = _worst(_status(lower_margin, lower_exact), _status(upper_margin, upper_exact))
    return Verdict("dim_phi_bounds", status, {
        "nu": list(nu), "d": d, "dim": str(dnu),
        "lower_margin": _fmt(lower_margin), "upper_margin": _fmt(upper_margin),
        "lower_exact": lower_exact, "upper_exact": upper_exact,
    })


def push_down_box(nu: Sequence[int], i: int, j: int, d: int) -> Partition:
    """Move one box from row ``i`` to row ``j`` (1-based, ``i < j <= d``)."""
    if not (1 <= i < j <= d):
        raise PreconditionError(f"need 1 <= i < j <= d, got i={i}, j={j}, d={d}")
    rows = list(Partition(nu).padded(d))
    rows[i - 1] -= 1
    rows[j - 1] += 1
    for t in range(d - 1):
        if rows[t] < rows[t + 1]:
            raise PreconditionError(
                f"pushing a box from row {i} to row {j} of {tuple(nu)} gives {tuple(rows)}, "
                f"not a diagram: row {t + 1} < row {t + 2}")
    if rows[d - 1] < 0 or rows[i - 1] < 0:
        raise PreconditionError(f"row {i} of {tuple(nu)} is empty")
    return Partition(rows)


def valid_pushes(nu: Sequence[int], d: int) -> list[tuple[int, int, Partition]]:
    out = []
    for i in range(1, d + 1):
        for j in range(i + 1, d + 1):
            try:
                out.append((i, j, push_down_box(nu, i, j, d)))
            except PreconditionError:
                pass
    return out


def check_push_monotone(nu: Sequence[int], d: int, precision: int = DEFAULT_PRECISION) -> Verdict:
    """``Phi(rho) >= Phi(nu)`` for every diagram ``rho`` one box-push below ``nu``."""
    nu = Partition(nu)
    if nu.height > d:
        raise PreconditionError(f"height {nu.height} exceeds d={d}")
    base = phi(nu, d, precision)
    w_nu = _entropy_weight(nu)
    parts = []
    for i, j, rho in valid_pushes(nu, d):
        margin = base.margin_to(phi(rho, d, precision))
        exact = _entropy_weight(rho) <= w_nu
        parts.append(Verdict("push", _status(margin, exact),
                             {"i": i, "j": j, "rho": list(rho), "margin": _fmt(margin)}))
    v = combine("push_monotone", parts, nu=list(nu), d=d)
    v.details["pushes"] = [p.details for p in parts]
    return v


def check_multinomial_phi_bounds(parts: Sequence[int], k: int | None = None,
                                 precision: int = DEFAULT_PRECISION) -> Verdict:
    """``Phi(m_1/m,...)^m / m^k <= (m; m_1..m_k) <= m Phi(...)^m``."""
    parts = [int(p) for p in parts]
    if any(p < 0 for p in parts):
        raise PreconditionError("parts must be non-negative")
    m = sum(parts)
    if m < 1:
        raise PreconditionError("need m >= 1")
    if k is None:
        k = len(parts)
    if sum(1 for p in parts if p) > k:
        raise PreconditionError(f"more than k={k} nonzero parts")
    M = multinomial(m, parts)
    w = _entropy_weight(parts)
    ctx = _ctx(precision)
    log_M = _log_int(M, ctx)
    log_phi_m = phi(parts, None, precision).log_value * m
    log_m = _log_int(m, ctx)
    lower_margin = log_M - (log_phi_m - k * log_m)
    upper_margin = (log_m + log_phi_m) - log_M
    lower_exact = m**m <= M * m**k * w
    upper_exact = M * w <= m ** (m + 1)
    status = _worst(_status(lower_margin, lower_exact), _status(upper_margin, upper_exact))
    return Verdict("multinomial_phi_bounds", status, {
        "parts": parts, "k": k, "multinomial": str(M),
        "lower_margin": _fmt(lower_margin), "upper_margin": _fmt(upper_margin),
        "lower_exact": lower_exact, "upper_exact": upper_exact,
    })


# exact integers are used up to this many bits; past it the log path decides alone
_EXACT_BIT_LIMIT = 4_000_000


def check_scaled_dimension_inequality(n_parts: Sequence[int], lambdas: Sequence[Sequence[int]], q: int, d: int,
                         precision: int = DEFAULT_PRECISION) -> Verdict:
    """Compare the q-scaled multinomial-times-dimensions product with the q-th power
    of the unscaled one::

        (qn; qn_1..qn_k) prod d_{q lam_i}
            >= (1/qn)^(k(d^2+d+1)) [ n^(-2k) (n; n_1..n_k) prod d_{lam_i} ]^q
    """
    n_parts = [int(x) for x in n_parts]
    lambdas = [Partition(l) for l in lambdas]
    k = len(n_parts)
    n = sum(n_parts)
    if len(lambdas) != k:
        raise PreconditionError("need one partition per part")
    if any(x <= 0 for x in n_parts):
        raise PreconditionError("parts must be positive")
    if n < 100 or q < 100:
        raise PreconditionError(f"stated for n >= 100 and q >= 100, got n={n}, q={q}")
    for ni, lam in zip(n_parts, lambdas):
        if lam.m != ni:
            raise PreconditionError(f"{tuple(lam)} is not a partition of {ni}")
        if lam.height > d:
            raise PreconditionError(f"height of {tuple(lam)} exceeds d={d}")
    left = multinomial(q * n, [q * x for x in n_parts])
    for lam in lambdas:
        left *= dim_irrep(lam.scaled(q))
    base = multinomial(n, n_parts)
    for lam in lambdas:
        base *= dim_irrep(lam)
    ctx = _ctx(precision)
    e1 = k * (d * d + d + 1)
    log_left = _log_int(left, ctx)
    log_right = q * (_log_int(base, ctx) - 2 * k * _log_int(n, ctx)) - e1 * _log_int(q * n, ctx)
    margin = log_left - log_right
    exact = None
    if q * base.bit_length() < _EXACT_BIT_LIMIT:
        exact = left * (q * n) ** e1 * n ** (2 * k * q) >= base**q
    return Verdict("scaled_dimension_inequality", _status(margin, exact), {
        "n_parts": n_parts, "lambdas": [list(l) for l in lambdas], "q": q, "d": d,
        "log_left": _fmt(log_left), "log_right": _fmt(log_right), "margin": _fmt(margin),
        "exact": exact,
    })


def _grid_shapes(m: int) -> list[Partition]:
    """One-row, 3:1 and balanced two-row diagrams of ``m``."""
    shapes = {Partition([m]), Partition([m - m // 4, m // 4]), Partition([m - m // 2, m // 2])}
    return sorted(shapes, reverse=True)


def scaled_inequality_grid(n: int = 100, qs: Sequence[int] = (100, 128), max_k: int = 2,
                           d: int = 2, full: bool = True) -> list[tuple[list[int], list[Partition], int]]:
    """Cases ``(n_parts, lambdas, q)`` for :func:`check_scaled_dimension_inequality`.

    * ``k = 1``: every partition of ``n`` of height at most ``d`` (``full``),
      otherwise the one-row, 3:1 and balanced shapes;
    * ``k = 2``: splits ``(10, n-10), (30, n-30), (n/2, n/2)`` with every
      combination of one-row, 3:1 and balanced shapes in each part.

    Every case is paired with every ``q`` in ``qs``.
    """
    cases = []
    singles = enumerate_partitions(n, d) if full else _grid_shapes(n)
    for q in qs:
        for lam in singles:
            cases.append(([n], [lam], q))
        if max_k >= 2:
            for a in (10, 30, n // 2):
                for la in _grid_shapes(a):
                    for lb in _grid_shapes(n - a):
                        cases.append(([a, n - a], [la, lb], q))
    return cases


# --------------------------------------------------------------------------
# characters


def _to_beta(lam: tuple[int, ...]) -> tuple[int, ...]:
    L = len(lam)
    return tuple(p + (L - 1 - i) for i, p in enumerate(lam))


def _from_beta(beta: Sequence[int]) -> tuple[int, ...]:
    b = sorted(beta, reverse=True)
    L = len(b)
    return tuple(x for x in (b[i] - (L - 1 - i) for i in range(L)) if x > 0)


@functools.lru_cache(maxsize=None)
def _mn(lam: tuple[int, ...], mu: tuple[int, ...]) -> int:
    if not mu:
        return 1 if not lam else 0
    r, rest = mu[0], mu[1:]
    beta = _to_beta(lam)
    occupied = set(beta)
    total = 0
    for x in beta:
        y = x - r
        if y < 0 or y in occupied:
            continue
        # each bead jumped over is one row crossed by the rim hook
        height = sum(1 for b in beta if y < b < x)
        new = _from_beta([y if b == x else b for b in beta])
        total += (-1) ** height * _mn(new, rest)
    return total


def char_value(lam: Sequence[int], c) -> int:
    """Irreducible character ``chi_lam`` on the class ``c`` (Murnaghan-Nakayama)."""
    lam = Partition(lam)
    mu = c.partition if isinstance(c, CycleType) else Partition(c)
    if lam.m != mu.m:
        raise PreconditionError(f"{tuple(lam)} and {tuple(mu)} partition different integers")
    return _mn(tuple(lam), tuple(mu))


def character_table(m: int) -> tuple[list[Partition], dict[tuple[Partition, Partition], int]]:
    parts = enumerate_partitions(m)
    return parts, {(lam, mu): char_value(lam, mu) for lam in parts for mu in parts}
