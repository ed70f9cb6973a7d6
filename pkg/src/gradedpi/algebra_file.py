"""Line-oriented text format for graded algebras.

Grammar (one entry per line, ``#`` starts a comment, blank lines ignored)::

    name:   free text                        optional, at most once
    meta:   KEY = VALUE                      optional, repeatable
    labels: LABEL LABEL ...                  grading labels, exactly once
    table:  LABEL ... / LABEL ... / ...      rows of the t x t operation table;
                                             repeatable, rows accumulate
    basis:  NAME@LABEL NAME@LABEL ...        repeatable, vectors accumulate
    prod:   NAME * NAME = RHS                one product per line

    RHS    := 0 | TERM (('+' | '-') TERM)*
    TERM   := ['-'] [COEF ['*']] NAME
    COEF   := INTEGER | INTEGER '/' INTEGER
    NAME   := [A-Za-z_][A-Za-z0-9_]*
    LABEL  := any token without whitespace or '/', '@', '#', '*', '='

Products not listed are zero. A pair may be listed at most once; a name
repeated inside one right-hand side has its coefficients added.
Coefficients are exact rationals. Parsing reports the first error with its
line number and entry key; a parsed algebra is validated against the grading
before it is returned.
"""

from __future__ import annotations

import os
import re
from fractions import Fraction

from .errors import ParseError
from .graded_algebra import GradedAlgebra, OperationTable, ensure_valid

NAME_RE = re.compile(r"[A-Za-z_][A-Za-z0-9_]*\Z")
LABEL_RE = re.compile(r"[^\s/@#*=]+\Z")
TERM_RE = re.compile(r"\s*(?:(\d+)(?:\s*/\s*(\d+))?\s*\*?\s*)?([A-Za-z_][A-Za-z0-9_]*)\s*")
SIGN_RE = re.compile(r"\s*([+-])")
KEYS = ("name", "meta", "labels", "table", "basis", "prod")


def _label(tok: str, line: int, key: str) -> str:
    if not LABEL_RE.match(tok):
        raise ParseError(f"bad label {tok!r}", line, key)
    return tok


def parse_rhs(text: str, line: int | None = None) -> dict[str, Fraction]:
    """Parse ``RHS`` into ``{name: coefficient}`` (zero terms dropped)."""
    s = text.strip()
    if s == "0":
        return {}
    if not s:
        raise ParseError("empty right-hand side", line, "prod")
    out: dict[str, Fraction] = {}
    pos, first = 0, True
    while pos < len(s):
        sign = 1
        m = SIGN_RE.match(s, pos)
        if m:
            sign = -1 if m.group(1) == "-" else 1
            pos = m.end()
        elif not first:
            raise ParseError(f"expected '+' or '-' at column {pos + 1} of {s!r}", line, "prod")
        m = TERM_RE.match(s, pos)
        if not m or m.end() == pos:
            raise ParseError(f"bad term at column {pos + 1} of {s!r}", line, "prod")
        num, den, name = m.groups()
        if den is not None and int(den) == 0:
            raise ParseError(f"zero denominator in {s!r}", line, "prod")
        coef = Fraction(int(num), int(den or 1)) if num is not None else Fraction(1)
        out[name] = out.get(name, Fraction(0)) + sign * coef
        pos, first = m.end(), False
    return {k: v for k, v in out.items() if v}


def parse_text(text: str, validate: bool = True) -> GradedAlgebra:
    name = ""
    meta: list[tuple[str, str]] = []
    labels: list[str] | None = None
    rows: list[tuple[list[str], int]] = []
    basis: list[tuple[str, str, int]] = []
    prods: list[tuple[str, str, dict, int]] = []

    for ln, raw in enumerate(text.splitlines(), 1):
        body = raw.split("#", 1)[0].strip()
        if not body:
            continue
        key, sep, value = body.partition(":")
        key = key.strip()
        if not sep or key not in KEYS:
            raise ParseError(f"expected one of {', '.join(KEYS)} followed by ':'", ln, key or None)
        value = value.strip()
        if key == "name":
            if name:
                raise ParseError("name given twice", ln, key)
            name = value
        elif key == "meta":
            k, eq, v = value.partition("=")
            if not eq or not k.strip():
                raise ParseError("expected KEY = VALUE", ln, key)
            meta.append((k.strip(), v.strip()))
        elif key == "labels":
            if labels is not None:
                raise ParseError("labels given twice", ln, key)
            labels = [_label(t, ln, key) for t in value.split()]
            if not labels:
                raise ParseError("no labels", ln, key)
            if len(set(labels)) != len(labels):
                raise ParseError("duplicate label", ln, key)
        elif key == "table":
            for chunk in value.split("/"):
                row = [_label(t, ln, key) for t in chunk.split()]
                if not row:
                    raise ParseError("empty table row", ln, key)
                rows.append((row, ln))
        elif key == "basis":
            for tok in value.split():
                nm, at, lab = tok.partition("@")
                if not at or not NAME_RE.match(nm):
                    raise ParseError(f"expected NAME@LABEL, got {tok!r}", ln, key)
                basis.append((nm, _label(lab, ln, key), ln))
        else:
            lhs, eq, rhs = value.partition("=")
            a, star, b = lhs.partition("*")
            a, b = a.strip(), b.strip()
            if not eq or not star or not NAME_RE.match(a) or not NAME_RE.match(b):
                raise ParseError("expected NAME * NAME = RHS", ln, key)
            prods.append((a, b, parse_rhs(rhs, ln), ln))

    if labels is None:
        raise ParseError("missing labels", None, "labels")
    t = len(labels)
    if len(rows) != t:
        raise ParseError(f"table has {len(rows)} rows, expected {t}",
                         rows[-1][1] if rows else None, "table")
    known = set(labels)
    for row, ln in rows:
        if len(row) != t:
            raise ParseError(f"table row has {len(row)} entries, expected {t}", ln, "table")
        for x in row:
            if x not in known:
                raise ParseError(f"table entry {x!r} is not a label", ln, "table")
    table = OperationTable(tuple(labels), tuple(tuple(r) for r, _ in rows))

    names: list[str] = []
    grades: list[str] = []
    for nm, lab, ln in basis:
        if nm in names:
            raise ParseError(f"duplicate basis name {nm!r}", ln, "basis")
        if lab not in known:
            raise ParseError(f"grade {lab!r} of {nm!r} is not a label", ln, "basis")
        names.append(nm)
        grades.append(lab)
    pos = set(names)

    products: dict[tuple[str, str], dict] = {}
    for a, b, rhs, ln in prods:
        for x in (a, b, *rhs):
            if x not in pos:
                raise ParseError(f"unknown basis name {x!r}", ln, "prod")
        if (a, b) in products:
            raise ParseError(f"product {a}*{b} given twice", ln, "prod")
        products[(a, b)] = rhs

    A = GradedAlgebra.from_products(names, grades, table, products, name, meta)
    return ensure_valid(A) if validate else A


def parse_algebra(path: str | os.PathLike, validate: bool = True) -> GradedAlgebra:
    """Read and validate an algebra file."""
    with open(path, encoding="utf-8") as fh:
        return parse_text(fh.read(), validate)


def _format_rhs(A: GradedAlgebra, coeffs) -> str:
    parts = []
    for l, c in enumerate(coeffs):
        if not c:
            continue
        mag = abs(c)
        term = A.names[l] if mag == 1 else f"{mag} {A.names[l]}"
        if not parts:
            parts.append(term if c > 0 else f"-{term}")
        else:
            parts.append(("+ " if c > 0 else "- ") + term)
    return " ".join(parts) if parts else "0"


def export_text(A: GradedAlgebra) -> str:
    """Render ``A`` in the file format; ``parse_text(export_text(A)) == A``."""
    for nm in A.names:
        if not NAME_RE.match(nm):
            raise ValueError(f"basis name {nm!r} is not exportable")
    lines = []
    if A.name:
        lines.append(f"name: {A.name}")
    for k, v in A.metadata:
        lines.append(f"meta: {k} = {v}")
    lines.append("labels: " + " ".join(A.table.labels))
    lines.append("table: " + " / ".join(" ".join(r) for r in A.table.table))
    lines.append("basis: " + " ".join(f"{n}@{g}" for n, g in zip(A.names, A.grades)))
    for i in range(A.dim):
        for j in range(A.dim):
            if any(A.gamma[i][j]):
                lines.append(f"prod: {A.names[i]}*{A.names[j]} = {_format_rhs(A, A.gamma[i][j])}")
    return "\n".join(lines) + "\n"


def export_algebra(A: GradedAlgebra, path: str | os.PathLike) -> None:
    with open(path, "w", encoding="utf-8") as fh:
        fh.write(export_text(A))
