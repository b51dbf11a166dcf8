"""Characteristic exponents of sheet laws and joint CFs along a path.

A two-parameter Levy sheet is determined by one infinitely divisible law,
carried here as a (gamma, A, nu) triplet.  Restricting the sheet to a
decreasing path gives a one-parameter process whose finite-dimensional
characteristic functions come out in closed form: every rectangle of area m
under the path contributes a factor exp(m * psi(z)).
"""

import numpy as np

from levysheet import (
    LinearPath,
    brownian,
    cpp_from_atoms,
    eval_psi,
    is_deterministic,
    is_symmetric,
    symmetrize,
)
from levysheet import fdd

# Three laws: Brownian, a one-sided compound Poisson, and its symmetrization.
bm = brownian(1)
one_sided = cpp_from_atoms([(1.0, 1.0)])  # unit jumps at rate 1, drift 0
balanced = symmetrize(one_sided)

print("exponents at z = 1:")
for name, trip in [("brownian", bm), ("one-sided cpp", one_sided),
                   ("symmetrized cpp", balanced)]:
    val = eval_psi(trip, 1.0)
    print(f"  {name:16s} psi(1) = {val:.6f}   symmetric={is_symmetric(trip)}"
          f"  deterministic={is_deterministic(trip)}")

# The symmetrization identity: psi_sym(z) = psi(z) + psi(-z).
z = 0.7
lhs = eval_psi(balanced, z)
rhs = eval_psi(one_sided, z) + eval_psi(one_sided, -z)
print(f"\nsymmetrization identity at z={z}: |lhs - rhs| = {abs(lhs - rhs):.2e}")

# Joint CF of the restricted process on the straight path from (0,1) to (1,0).
path = LinearPath(0.0, 1.0, 1.0, 1.0, 0.0, 1.0)
times = [0.3, 0.7]
zs = np.array([[0.9], [-0.5]])
print(f"\njoint CF at times {times}, probes {zs.ravel().tolist()}:")
for name, trip in [("brownian", bm), ("symmetrized cpp", balanced)]:
    print(f"  {name:16s} {fdd.joint_cf(trip, path, times, zs):.6f}")

# Single increments factor through a lower and an upper rectangle.
s, t = 0.3, 0.7
print(f"\nincrement rectangles for s={s}, t={t}: "
      f"lower area {fdd.lower_area(path, s, t):.3f}, "
      f"upper area {fdd.upper_area(path, s, t):.3f}")
print(f"increment CF (brownian, z=1): {fdd.increment_cf(bm, path, s, t, 1.0):.6f}")

# Conditional means interpolate between the conditioning value and the mean.
print(f"\nE[value at 0.5 | value at 0.2 = 1] with zero-mean law: "
      f"{fdd.conditional_mean(0.0, path, 0.2, 0.5, 1.0):.4f}")
print(f"same with mean-4 law: {fdd.conditional_mean(4.0, path, 0.2, 0.5, 1.0):.4f}")
