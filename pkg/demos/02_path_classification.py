"""Which decreasing paths give stationary increments, and their phi.

The increment law of the restricted process depends on (s, t) only through
t - s exactly when x(s)y(s) + x(t)y(t) - 2x(s)y(t) is a function phi(t - s).
Only four families of paths solve that functional equation; `classify` finds
the family (or reports non-stationarity) and hands back phi.
"""

import numpy as np

from levysheet import (
    ExponentialPath,
    HorizontalPath,
    LinearPath,
    TabulatedPath,
    VThenHPath,
    classify,
    equivalent,
)
from levysheet.paths import scaled, symmetric_increment_area

paths = {
    "horizontal  (y const)": HorizontalPath.affine(0.5, 2.0, 1.5, 0.0, 1.0),
    "corner      (L-shape)": VThenHPath(0.5, 1.0, 2.0, 4.0, 2.0, 0.0, 1.0),
    "linear      (bridge) ": LinearPath(0.0, 1.0, 1.0, 1.0, 0.0, 1.0),
    "exponential (station)": ExponentialPath(1.0, 1.0, 1.0, 0.0, 2.0),
}

print("classification of closed forms:")
for name, path in paths.items():
    cls = classify(path)
    print(f"  {name} -> {cls.tag.value:14s} phi(0.5) = {cls.phi(0.5):.4f}")

# phi really does reproduce the functional equation.
path = paths["exponential (station)"]
cls = classify(path)
rng = np.random.default_rng(0)
s = rng.uniform(0.0, 2.0, 1000)
t = rng.uniform(0.0, 2.0, 1000)
s, t = np.minimum(s, t), np.maximum(s, t)
keep = t > s
resid = np.max(np.abs(symmetric_increment_area(path, s[keep], t[keep])
                      - cls.phi(t[keep] - s[keep])))
print(f"\nmax functional-equation residual over 1000 random pairs: {resid:.2e}")

# Tabulated data: noise-free samples of a family are recovered; anything
# else is flagged non-stationary.
ts = np.linspace(0.1, 0.9, 32)
good = TabulatedPath(ts, 0.7 * np.exp(1.3 * ts), 1.1 * np.exp(-1.3 * ts))
bad = TabulatedPath(ts, ts ** 2, 1.0 - ts)
print(f"\ntabulated exponential samples -> {classify(good).tag.value}")
print(f"tabulated (t^2, 1-t) samples  -> {classify(bad).tag.value}")

# Two paths give the same restricted law exactly when one is (p x, y/p).
base = paths["linear      (bridge) "]
partner = scaled(base, 2.0)
print(f"\nlaw-equivalence scale of (x, y) vs (2x, y/2): {equivalent(base, partner)}")
print(f"classification is scale-invariant: {classify(partner).tag.value}")
