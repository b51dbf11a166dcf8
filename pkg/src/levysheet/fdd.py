"""Finite-dimensional characteristic functions of a sheet along a path.

For ordered times t_1 < ... < t_n on a decreasing path, the quadrant below
the path decomposes into disjoint rectangles

    B_ij = (x(t_{i-1}), x(t_i)] x (y(t_{i+j}), y(t_{i+j-1})],
    i = 1..n, j = 1..n-i+1,   with x(t_0) = y(t_{n+1}) = 0,

and the joint characteristic function of the restricted process is

    exp[ sum_ij m(B_ij) psi(z_i + ... + z_{i+j-1}) ].

Single increments only involve the lower rectangle (x(s), x(t)] x (0, y(t)]
and the upper rectangle (0, x(s)] x (y(t), y(s)].
"""

from __future__ import annotations

import cmath
from dataclasses import dataclass

import numpy as np

from .exponent import LevyTriplet, eval_psi, is_symmetric
from .paths import DecreasingPath, PathClass, PathTag

__all__ = [
    "RectangleGrid",
    "lower_area",
    "upper_area",
    "joint_cf",
    "increment_cf",
    "stationary_increment_cf",
    "conditional_mean",
]


@dataclass(frozen=True)
class RectangleGrid:
    """Rectangle areas under a path at ordered times.

    `areas[i, j]` holds m(B_{i+1, j+1}) in the 1-based convention above;
    entries with j >= n - i are identically zero padding.
    """

    times: np.ndarray
    x: np.ndarray
    y: np.ndarray
    areas: np.ndarray

    @classmethod
    def from_path(cls, path: DecreasingPath, times) -> "RectangleGrid":
        ts = np.atleast_1d(np.asarray(times, dtype=float))
        if ts.ndim != 1 or ts.size == 0:
            raise ValueError("times must be a nonempty 1-d array")
        if np.any(np.diff(ts) <= 0):
            raise ValueError("times must be strictly increasing")
        xs, ys = path.eval(ts)
        xs = np.atleast_1d(xs)
        ys = np.atleast_1d(ys)
        n = ts.size
        x_ext = np.concatenate([[0.0], xs])  # x(t_0) = 0
        y_ext = np.concatenate([ys, [0.0]])  # y(t_{n+1}) = 0
        areas = np.zeros((n, n))
        for i in range(n):
            dx = x_ext[i + 1] - x_ext[i]
            for j in range(n - i):
                dy = y_ext[i + j] - y_ext[i + j + 1]
                areas[i, j] = dx * dy
        return cls(ts, xs, ys, areas)

    @property
    def n(self) -> int:
        return self.times.size

    def covered_area(self, k: int) -> float:
        """Total area of the rectangles composing the value at times[k]."""
        total = 0.0
        for i in range(k + 1):
            total += float(self.areas[i, k - i:].sum())
        return total


def lower_area(path: DecreasingPath, s: float, t: float) -> float:
    """m of the lower increment rectangle (x(s), x(t)] x (0, y(t)]."""
    return float((path.x(t) - path.x(s)) * path.y(t))


def upper_area(path: DecreasingPath, s: float, t: float) -> float:
    """m of the upper increment rectangle (0, x(s)] x (y(t), y(s)]."""
    return float(path.x(s) * (path.y(s) - path.y(t)))


def _as_z_matrix(zs, n: int, dim: int) -> np.ndarray:
    arr = np.asarray(zs, dtype=float)
    if arr.ndim == 0:
        arr = arr.reshape(1, 1)
    elif arr.ndim == 1:
        arr = arr.reshape(n, 1) if dim == 1 else arr.reshape(1, dim)
    if arr.shape != (n, dim):
        raise ValueError(f"zs must have shape ({n}, {dim}), got {arr.shape}")
    return arr


def joint_cf(triplet: LevyTriplet, path: DecreasingPath, times, zs) -> complex:
    """Joint characteristic function of the path values at the given times."""
    grid = RectangleGrid.from_path(path, times)
    z = _as_z_matrix(zs, grid.n, triplet.dim)
    total = 0j
    for i in range(grid.n):
        for j in range(grid.n - i):
            area = grid.areas[i, j]
            if area == 0.0:
                continue
            total += area * eval_psi(triplet, z[i: i + j + 1].sum(axis=0))
    return cmath.exp(total)


def increment_cf(triplet: LevyTriplet, path: DecreasingPath,
                 s: float, t: float, z) -> complex:
    """Characteristic function of the increment between path times s < t."""
    if not s < t:
        raise ValueError("increment needs s < t")
    zz = np.atleast_1d(np.asarray(z, dtype=float))
    path.eval(s), path.eval(t)  # domain check
    exponent = lower_area(path, s, t) * eval_psi(triplet, zz) \
        + upper_area(path, s, t) * eval_psi(triplet, -zz)
    return cmath.exp(exponent)


def stationary_increment_cf(triplet: LevyTriplet, cls: PathClass,
                            u: float, z) -> complex:
    """Increment characteristic function exp[phi(u) * ...] for a stationary class.

    Symmetric laws admit all four families; non-symmetric laws only the
    single-leg family (with the sign of z fixed by the leg orientation) and
    the exponential family (which averages psi(z) and psi(-z)).
    """
    if cls.tag is PathTag.NON_STATIONARY:
        raise ValueError("path class has no stationary increments")
    ph = cls.phi(u)
    zz = np.atleast_1d(np.asarray(z, dtype=float))
    if is_symmetric(triplet):
        return cmath.exp(ph * eval_psi(triplet, zz))
    if cls.tag is PathTag.EXPONENTIAL:
        half = 0.5 * (eval_psi(triplet, zz) + eval_psi(triplet, -zz))
        return cmath.exp(ph * half)
    if cls.tag is PathTag.HORIZONTAL:
        return cmath.exp(ph * eval_psi(triplet, zz))
    if cls.tag is PathTag.VERTICAL:
        return cmath.exp(ph * eval_psi(triplet, -zz))
    raise ValueError(
        f"a non-symmetric law has no stationary increments on a {cls.tag.value} path"
    )


def conditional_mean(mean11: float, path: DecreasingPath,
                     s: float, t: float, x_s: float) -> float:
    """E[value at t | value at s = x_s] for an integrable real-valued sheet."""
    if not s < t:
        raise ValueError("conditioning needs s < t")
    xs, ys = path.eval(s)
    xt, yt = path.eval(t)
    if ys == 0.0:
        raise ValueError("conditioning time must have y(s) > 0")
    return (yt / ys) * x_s + (xt - xs) * yt * mean11
