"""Numerical checks of the Young-diagram dimension estimates.

Run: python demos/03_combinatorial_bounds.py
"""
from gradedpi import (check_dim_phi_bounds, check_multinomial_phi_bounds, check_push_monotone,
                      dim_irrep, phi)

for nu in ([100], [60, 40], [50, 30, 21], [34, 33, 33]):
    v = check_dim_phi_bounds(nu, d=len(nu))
    print(f"nu={nu}: d_nu has {len(str(dim_irrep(nu)))} digits, Phi={float(phi(nu)):.4f}, "
          f"bounds {v.status}")

v = check_push_monotone([5, 3, 2], d=4)
print("moving a box down lowers Phi, nu=[5, 3, 2]:", v.status, f"({len(v.details['pushes'])} pushes)")
print("multinomial vs Phi, parts [5, 4, 3]:", check_multinomial_phi_bounds([5, 4, 3]).status)
