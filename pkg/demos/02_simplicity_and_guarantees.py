"""Which algebras come with a guaranteed graded PI exponent, and why.

Run: python demos/02_simplicity_and_guarantees.py
"""
from gradedpi import builtin, theorem_applicability, unit_element

for name in ("M2_Z2", "group_algebra:Z_3", "direct_sum_Z2", "cross3", "nilpotent_1"):
    A = builtin(name)
    app = theorem_applicability(A, trials=32, seed=1)
    print(f"{name:18} table={app['table_class']:10} unit={'yes' if unit_element(A) else 'no':3} "
          f"graded simple={app['graded_simple']['result']:11} simple={app['simple']['result']:11}")
    print(f"{'':18} -> {app['statement']}")
