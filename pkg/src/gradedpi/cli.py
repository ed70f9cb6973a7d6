"""Command-line front end: ``gradedpi <command> [ALGEBRA] [options]``.

Commands
  codim      rows ``n, c_n_gr, root`` for ``n = 1..n_max``
  colength   rows ``n, l_n_gr, bound, verdict``
  verify     every bound, identity and cross-check; exit 1 on a hard failure
  report     sequences, estimates and the applicability statement
  builtins   list the catalog algebras
  export     print an algebra in the file format

ALGEBRA is a path to an algebra file or a builtin name (``gradedpi builtins``).
The file format is documented in :mod:`gradedpi.algebra_file`; in short::

    # F[Z_2]
    name: group algebra of Z_2
    labels: 0 1
    table: 0 1 / 1 0
    basis: e@0 g@1
    prod: e*e = e
    prod: e*g = g
    prod: g*e = g
    prod: g*g = e        # coefficients may be p/q, e.g. "1/3 e - g"

Output formats: ``table`` (human), ``csv`` (all fields strings) and ``json``
(``"schema": 1``, integers that may exceed 2^53 as strings, sorted keys).
Identical arguments give byte-identical csv/json output.

The simplicity checks behind ``report`` and ``verify`` are randomized with
one-sided error and take ``--seed`` (default 0, echoed on stderr and in the
output).

Exit codes: 0 all checks hold or were skipped, 1 a hard check failed,
2 input error, 3 a resource cap was reached and ``--strict`` was given.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import os
import random
import sys

from . import __version__
from .algebra_file import export_text, parse_algebra
from .analysis import (InvariantReport, colength_exponent, compute_report, format_root,
                       graded_codimension_direct, theorem_applicability, verify_all_sequences)
from .combinatorics import (DEFAULT_PRECISION, check_dim_phi_bounds, check_multinomial_phi_bounds,
                            check_push_monotone, check_scaled_dimension_inequality, compositions,
                            enumerate_partitions, scaled_inequality_grid)
from .errors import ConsistencyError, InvalidAlgebraError, ParseError, ResourceCapError
from .graded_algebra import (BUILTINS, DEFAULT_TRIALS, GradedAlgebra, builtin, component_dims,
                             is_associative, support)
from .multilinear import Caps, degree_vectors
from .representation import (multiplicities, verify_multiplicity_bound,
                             verify_rank_character_sum)
from .verdicts import FAILS, HOLDS, SKIPPED, Verdict, combine

DEFAULT_SEED = 0
DEFAULT_N_MAX = 4
EXIT_OK, EXIT_FAIL, EXIT_INPUT, EXIT_CAP = 0, 1, 2, 3


class InputError(Exception):
    pass


def load_algebra(spec: str) -> GradedAlgebra:
    """A file path if one exists, otherwise a builtin name."""
    if os.path.isfile(spec):
        return parse_algebra(spec)
    try:
        return builtin(spec)
    except KeyError:
        raise InputError(f"{spec!r} is neither a file nor a builtin algebra "
                         f"(known: {', '.join(BUILTINS)})") from None


def make_caps(args) -> Caps:
    kw = {}
    if args.max_monomials is not None:
        kw["max_monomials"] = args.max_monomials
    if args.max_columns is not None:
        kw["max_columns"] = args.max_columns
    caps = Caps(**kw)
    if caps.max_monomials < 1 or caps.max_columns < 1:
        raise InputError("caps must be positive")
    return caps


# --------------------------------------------------------------------------
# output


def _render(fmt: str, doc: dict, columns: list[str], rows: list[dict], footer: list[str]) -> str:
    if fmt == "json":
        return json.dumps(doc, indent=2, sort_keys=True) + "\n"
    if fmt == "csv":
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(columns)
        for r in rows:
            w.writerow(["" if r[c] is None else str(r[c]) for c in columns])
        return buf.getvalue()
    cells = [[("-" if r[c] is None else str(r[c])) for c in columns] for r in rows]
    widths = [max([len(c)] + [len(row[i]) for row in cells]) for i, c in enumerate(columns)]
    lines = ["  ".join(c.rjust(w) for c, w in zip(columns, widths))]
    lines += ["  ".join(x.rjust(w) for x, w in zip(row, widths)) for row in cells]
    lines += footer
    return "\n".join(lines) + "\n"


def _truncation_line(t: dict | None) -> list[str]:
    if not t:
        return []
    return [f"truncated at n={t['n']}: cap {t['cap']} (limit {t['limit']}, requested {t['requested']})"]


def _header(A: GradedAlgebra, command: str, args) -> dict:
    return {"schema": 1, "command": command, "algebra": A.name, "support": support(A),
            "component_dims": component_dims(A), "associative": args.associative,
            "n_max": args.n_max}


def _report(A: GradedAlgebra, args, with_colength: bool) -> InvariantReport:
    return compute_report(A, args.n_max, args.associative, args.caps, with_colength,
                          workers=args.workers, prec=args.precision_bits)


# --------------------------------------------------------------------------
# commands


def cmd_codim(A: GradedAlgebra, args):
    rep = _report(A, args, with_colength=False)
    rows = [{"n": r.n, "c_n_gr": str(r.codimension), "root": format_root(r.root)} for r in rep.rows]
    doc = _header(A, "codim", args)
    doc.update(rows=rows, truncated=rep.truncated)
    return doc, ["n", "c_n_gr", "root"], rows, _truncation_line(rep.truncated), EXIT_OK, rep.truncated


def cmd_colength(A: GradedAlgebra, args):
    rep = _report(A, args, with_colength=True)
    e = colength_exponent(component_dims(A))
    rows = []
    for r in rep.rows:
        bound = A.dim * (r.n + 1) ** e
        rows.append({"n": r.n, "l_n_gr": str(r.colength), "bound": str(bound),
                     "verdict": HOLDS if r.colength <= bound else FAILS})
    doc = _header(A, "colength", args)
    doc.update(rows=rows, bound_exponent=e, truncated=rep.truncated)
    code = EXIT_FAIL if any(r["verdict"] == FAILS for r in rows) else EXIT_OK
    return doc, ["n", "l_n_gr", "bound", "verdict"], rows, _truncation_line(rep.truncated), code, rep.truncated


def cmd_report(A: GradedAlgebra, args):
    rep = _report(A, args, with_colength=True)
    rep.verdicts = verify_all_sequences(A, rep)
    rep.applicability = theorem_applicability(A, args.trials, args.seed, rep.estimates)
    doc = rep.to_dict()
    doc.update(command="report", seed=args.seed, trials=args.trials, n_max=args.n_max)
    rows = [{"n": r.n, "c_n_gr": str(r.codimension), "l_n_gr": str(r.colength),
             "root": format_root(r.root)} for r in rep.rows]
    footer = _truncation_line(rep.truncated)
    if rep.estimates:
        footer.append(f"root range over computed n: [{format_root(rep.estimates.tail_inf)}, "
                      f"{format_root(rep.estimates.tail_sup)}] (estimate, not a limit)")
    app = rep.applicability
    footer.append(f"grading table: {app['table_class']}; graded simple: {app['graded_simple']['result']}; "
                  f"simple: {app['simple']['result']}")
    footer.append(f"applicability: {app['statement']}")
    if "note" in app:
        footer.append(f"note: {app['note']}")
    footer += [v.line() for v in rep.verdicts]
    code = EXIT_OK if all(v.ok for v in rep.verdicts) else EXIT_FAIL
    return doc, ["n", "c_n_gr", "l_n_gr", "root"], rows, footer, code, rep.truncated


def _capped(name: str, where: dict, fn) -> Verdict:
    try:
        return fn()
    except ResourceCapError as e:
        return Verdict(name, SKIPPED, dict(where, cap=e.cap, limit=e.limit, requested=e.requested))


def _representation_checks(A: GradedAlgebra, args, n_max: int) -> list[Verdict]:
    dims = component_dims(A)
    ranks, integral, bounds = [], [], []

    def integrality(dv, where):
        try:
            table = multiplicities(A, dv, args.associative, args.caps)
        except ConsistencyError as e:
            return Verdict("integrality", FAILS, dict(where, error=str(e)))
        bad = table.height_violations(dims)
        return Verdict("integrality", FAILS if bad else HOLDS,
                       dict(where, height_violations=[[list(l) for l in b] for b in bad]))

    for n in range(1, n_max + 1):
        for dv in degree_vectors(A, n):
            where = {"dv": list(dv.parts)}
            ranks.append(_capped("rank_equals_character_sum", where,
                                 lambda: verify_rank_character_sum(A, dv, args.associative, args.caps)))
            integral.append(_capped("integrality", where, lambda: integrality(dv, where)))
            bounds.append(_capped("multiplicity_bound", where,
                                  lambda: verify_multiplicity_bound(A, dv, args.associative, args.caps)))
    return [combine("rank_equals_character_sum", ranks),
            combine("representation_integrality", integral),
            combine("multiplicity_bound", bounds)]


def _oracle_check(A: GradedAlgebra, args, rep: InvariantReport) -> Verdict:
    parts = []
    for r in rep.rows[:3]:
        direct = graded_codimension_direct(A, r.n, args.associative)
        parts.append(Verdict("direct_summation", HOLDS if direct == r.codimension else FAILS,
                             {"n": r.n, "rank_path": str(r.codimension), "direct": str(direct)}))
    return combine("direct_summation_oracle", parts, per_n=[p.details for p in parts])


def combinatorial_checks(precision: int = DEFAULT_PRECISION, seed: int = DEFAULT_SEED) -> list[Verdict]:
    """The algebra-independent grid run by ``verify``.

    * dimension bounds for every partition of 100 and 101 of height <= 2,
      and 20 sampled partitions of 100 of height <= 3;
    * box-push monotonicity for every partition of m <= 12, height <= 4;
    * multinomial bounds for every composition of m <= 20 into k <= 3 parts;
    * the scaled dimension inequality at n = 100, q = 100 on the small grid.
    """
    rng = random.Random(seed)
    dim_cases = [(nu, 2) for m in (100, 101) for nu in enumerate_partitions(m, 2)]
    dim_cases += [(nu, 3) for nu in rng.sample(enumerate_partitions(100, 3), 20)]
    dims = [check_dim_phi_bounds(nu, d, precision) for nu, d in dim_cases]
    pushes = [check_push_monotone(nu, 4, precision)
              for m in range(1, 13) for nu in enumerate_partitions(m, 4)]
    multi = [check_multinomial_phi_bounds(c, k, precision)
             for m in range(1, 21) for k in (1, 2, 3) for c in compositions(m, k)]
    scaled = [check_scaled_dimension_inequality(a, lams, q, 2, precision)
              for a, lams, q in scaled_inequality_grid(qs=(100,), full=False)]
    return [combine("dim_phi_bounds", dims), combine("push_monotone", pushes),
            combine("multinomial_phi_bounds", multi),
            combine("scaled_dimension_inequality", scaled)]


def cmd_verify(A: GradedAlgebra, args):
    rep = _report(A, args, with_colength=True)
    verdicts = [Verdict("validation", HOLDS, {"dim": A.dim})]
    verdicts += verify_all_sequences(A, rep)
    verdicts.append(_oracle_check(A, args, rep))
    n_rep = rep.rows[-1].n if rep.rows else 0
    verdicts += _representation_checks(A, args, n_rep)
    if rep.truncated:
        verdicts.append(Verdict("degrees_beyond_cap", SKIPPED, dict(rep.truncated)))
    verdicts += combinatorial_checks(args.precision_bits, args.seed)
    app = theorem_applicability(A, args.trials, args.seed, rep.estimates)
    ok = all(v.ok for v in verdicts)
    doc = _header(A, "verify", args)
    doc.update(seed=args.seed, trials=args.trials, ok=ok, truncated=rep.truncated,
               verdicts=[v.to_dict() for v in verdicts], applicability=app,
               rows=[r.to_dict() for r in rep.rows])
    rows = [{"check": v.name, "status": v.status, "result": "PASS" if v.ok else "FAIL"}
            for v in verdicts]
    footer = _truncation_line(rep.truncated) + [f"applicability: {app['statement']}",
                                                "all checks pass" if ok else "some checks FAILED"]
    return doc, ["check", "status", "result"], rows, footer, EXIT_OK if ok else EXIT_FAIL, rep.truncated


def cmd_builtins(args):
    rows = []
    for name in BUILTINS:
        A = builtin(name)
        rows.append({"name": name, "dim": A.dim, "support": " ".join(support(A)),
                     "component_dims": " ".join(map(str, component_dims(A))),
                     "associative": str(is_associative(A)).lower()})
    doc = {"schema": 1, "command": "builtins", "algebras": rows}
    return doc, ["name", "dim", "support", "component_dims", "associative"], rows, [], EXIT_OK, None


# --------------------------------------------------------------------------
# entry point


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--n-max", type=int, default=DEFAULT_N_MAX,
                        help=f"largest degree n (default {DEFAULT_N_MAX})")
    common.add_argument("--associative", action="store_true",
                        help="use left-normed monomials; the algebra must be associative")
    common.add_argument("--max-monomials", type=int, help="cap on monomials per degree vector")
    common.add_argument("--max-columns", type=int, help="cap on evaluation-matrix columns")
    common.add_argument("--trials", type=int, default=DEFAULT_TRIALS,
                        help=f"random trials in simplicity checks (default {DEFAULT_TRIALS})")
    common.add_argument("--seed", type=int, default=None,
                        help=f"seed for randomized checks (default {DEFAULT_SEED})")
    common.add_argument("--precision-bits", type=int, default=DEFAULT_PRECISION,
                        help=f"working precision of log-space checks (default {DEFAULT_PRECISION})")
    common.add_argument("--format", choices=("table", "csv", "json"), default="table")
    common.add_argument("--out", help="write output to this file instead of stdout")
    common.add_argument("--workers", type=int, default=None,
                        help="worker processes (default: all cores)")
    common.add_argument("--strict", action="store_true", help="exit 3 when a cap is reached")

    p = argparse.ArgumentParser(prog="gradedpi", description="Graded PI invariants of "
                                "finite-dimensional graded algebras.")
    p.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = p.add_subparsers(dest="command", required=True)
    for name, help_ in (("codim", "graded codimension sequence"),
                        ("colength", "graded colength sequence and its bound"),
                        ("verify", "run every check"),
                        ("report", "full invariant report"),
                        ("export", "print the algebra in the file format")):
        sp = sub.add_parser(name, parents=[common], help=help_)
        sp.add_argument("algebra", help="algebra file or builtin name")
    sub.add_parser("builtins", parents=[common], help="list builtin algebras")
    return p


COMMANDS = {"codim": cmd_codim, "colength": cmd_colength, "verify": cmd_verify, "report": cmd_report}


def _emit(text: str, out: str | None):
    if out:
        with open(out, "w", encoding="utf-8") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        if args.n_max < 1:
            raise InputError("--n-max must be positive")
        if args.trials < 1:
            raise InputError("--trials must be positive")
        if args.precision_bits < 53:
            raise InputError("--precision-bits must be at least 53")
        if args.seed is None:
            args.seed = DEFAULT_SEED
            if args.command in ("verify", "report"):
                print(f"seed: {DEFAULT_SEED} (default)", file=sys.stderr)
        args.workers = args.workers or os.cpu_count() or 1
        if args.workers < 1:
            raise InputError("--workers must be positive")
        args.caps = make_caps(args)
        if args.command == "builtins":
            result = cmd_builtins(args)
        else:
            A = load_algebra(args.algebra)
            if args.command == "export":
                _emit(export_text(A), args.out)
                return EXIT_OK
            if args.associative and not is_associative(A):
                raise InputError(f"{A.name or args.algebra} is not associative; drop --associative")
            result = COMMANDS[args.command](A, args)
    except (InputError, ParseError, InvalidAlgebraError, OSError) as e:
        print(f"error: {e}", file=sys.stderr)
        return EXIT_INPUT
    doc, columns, rows, footer, code, truncated = result
    _emit(_render(args.format, doc, columns, rows, footer), args.out)
    if truncated:
        print(_truncation_line(truncated)[0], file=sys.stderr)
        if args.strict and code == EXIT_OK:
            return EXIT_CAP
    return code


if __name__ == "__main__":
    sys.exit(main())
