"""Walk through the graded codimensions of the Z_2-graded 2x2 matrices.

Run: python demos/01_codimensions.py
"""
from gradedpi import builtin, compute_report, graded_codimension_direct

A = builtin("M2_Z2")
print(f"{A.name}: dim {A.dim}, grades {A.grades}")

report = compute_report(A, 4)
for row in report.rows:
    parts = ", ".join(f"{b.dv}: {b.multinomial} x {b.codimension}" for b in row.breakdown)
    print(f"n={row.n}  c_n={row.codimension:<4} l_n={row.colength:<3} root={float(row.root):.4f}  [{parts}]")

# the rank path and a direct summation agree
direct = [graded_codimension_direct(A, n) for n in range(1, 4)]
print("direct summation:", direct, "matches:", direct == report.codimensions()[:3])
print(f"n-th roots bracketed in [{float(report.estimates.tail_inf):.3f}, "
      f"{float(report.estimates.tail_sup):.3f}]; the limit is dim A = {A.dim}")
