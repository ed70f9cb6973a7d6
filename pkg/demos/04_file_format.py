"""Define an algebra in the text format, analyse it, and round-trip it.

Run: python demos/04_file_format.py
"""
from gradedpi import compute_report, export_text, parse_text

TEXT = """
name: upper triangular 2x2, Z_2-graded
labels: 0 1
table: 0 1 / 1 0
basis: a@0 b@0 c@1
prod: a * a = a
prod: a * c = c
prod: b * b = b
prod: c * b = c
"""

A = parse_text(TEXT)
print(export_text(A))
print("codimensions:", compute_report(A, 5, associative=True).codimensions())
assert parse_text(export_text(A)) == A
print("round trip exact")
