"""Levy triplets of infinitely divisible laws and their characteristic exponents.

A law is represented by a triplet (gamma, A, nu): a drift-like vector, a
symmetric nonnegative-definite Gaussian matrix, and a finite-activity jump
measure.  The exponent

    psi(z) = i<gamma, z> - <z, A z>/2
             + integral( exp(i<z, x>) - 1 - i<z, x> 1{|x| <= 1} ) nu(dx)

is evaluated in closed form: as an exact atom sum for discrete measures, or
through the jump distribution's characteristic function for scaled measures.
Only finite total mass is supported; infinite-activity measures are rejected
at construction.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import ClassVar

import numpy as np

__all__ = [
    "PointMass",
    "TwoPoint",
    "UniformJumps",
    "GaussianJumps",
    "Categorical",
    "DiscreteJumps",
    "ScaledJumps",
    "LevyTriplet",
    "eval_psi",
    "is_symmetric",
    "is_deterministic",
    "symmetrize",
    "brownian",
    "pure_drift",
    "cpp",
    "cpp_from_atoms",
    "dist_from_dict",
    "triplet_to_dict",
    "triplet_from_dict",
]

SYMMETRY_TOL = 1e-12


def _as_vector(v, name="vector"):
    arr = np.atleast_1d(np.asarray(v, dtype=float))
    if arr.ndim != 1:
        raise ValueError(f"{name} must be one-dimensional, got shape {arr.shape}")
    if not np.all(np.isfinite(arr)):
        raise ValueError(f"{name} must be finite")
    return arr


# ---------------------------------------------------------------------------
# Named jump distributions.  Each carries a closed-form characteristic
# function, a sampler, and the truncated first moment needed by the exponent.
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class PointMass:
    """Every jump equals the fixed nonzero vector `point`."""

    point: np.ndarray
    name: ClassVar[str] = "point_mass"
    has_finite_mean: ClassVar[bool] = True

    def __post_init__(self):
        p = _as_vector(self.point, "point")
        if np.linalg.norm(p) == 0.0:
            raise ValueError("jump distribution may not put mass at 0")
        object.__setattr__(self, "point", p)

    @property
    def dim(self) -> int:
        return self.point.size

    def cf(self, z) -> complex:
        return complex(np.exp(1j * float(np.dot(z, self.point))))

    def sample(self, rng, size: int) -> np.ndarray:
        return np.tile(self.point, (size, 1))

    @property
    def truncated_mean(self) -> np.ndarray:
        return self.point if np.linalg.norm(self.point) <= 1.0 else np.zeros_like(self.point)

    @property
    def mean(self) -> np.ndarray:
        return self.point

    @property
    def abs_second_moment(self) -> float:
        return float(np.dot(self.point, self.point))

    @property
    def is_symmetric(self) -> bool:
        return False

    def negated(self) -> "PointMass":
        return PointMass(-self.point)

    def symmetrized(self) -> "TwoPoint":
        return TwoPoint(self.point)

    def params(self) -> dict:
        return {"point": self.point.tolist()}


@dataclass(frozen=True)
class TwoPoint:
    """Jumps +/- `point`, each with probability one half."""

    point: np.ndarray
    name: ClassVar[str] = "two_point"
    has_finite_mean: ClassVar[bool] = True

    def __post_init__(self):
        p = _as_vector(self.point, "point")
        if np.linalg.norm(p) == 0.0:
            raise ValueError("jump distribution may not put mass at 0")
        object.__setattr__(self, "point", p)

    @property
    def dim(self) -> int:
        return self.point.size

    def cf(self, z) -> complex:
        return complex(np.cos(float(np.dot(z, self.point))))

    def sample(self, rng, size: int) -> np.ndarray:
        signs = rng.choice([-1.0, 1.0], size=size)
        return signs[:, None] * self.point

    @property
    def truncated_mean(self) -> np.ndarray:
        return np.zeros_like(self.point)

    @property
    def mean(self) -> np.ndarray:
        return np.zeros_like(self.point)

    @property
    def abs_second_moment(self) -> float:
        return float(np.dot(self.point, self.point))

    @property
    def is_symmetric(self) -> bool:
        return True

    def negated(self) -> "TwoPoint":
        return self

    def symmetrized(self) -> "TwoPoint":
        return self

    def params(self) -> dict:
        return {"point": self.point.tolist()}


@dataclass(frozen=True)
class UniformJumps:
    """Real-valued jumps uniform on [-halfwidth, halfwidth]."""

    halfwidth: float
    name: ClassVar[str] = "uniform"
    has_finite_mean: ClassVar[bool] = True

    def __post_init__(self):
        if not (np.isfinite(self.halfwidth) and self.halfwidth > 0):
            raise ValueError("halfwidth must be finite and positive")

    @property
    def dim(self) -> int:
        return 1

    def cf(self, z) -> complex:
        zz = float(np.atleast_1d(z)[0])
        return complex(np.sinc(self.halfwidth * zz / np.pi))

    def sample(self, rng, size: int) -> np.ndarray:
        return rng.uniform(-self.halfwidth, self.halfwidth, size=(size, 1))

    @property
    def truncated_mean(self) -> np.ndarray:
        return np.zeros(1)

    @property
    def mean(self) -> np.ndarray:
        return np.zeros(1)

    @property
    def abs_second_moment(self) -> float:
        return self.halfwidth ** 2 / 3.0

    @property
    def is_symmetric(self) -> bool:
        return True

    def negated(self) -> "UniformJumps":
        return self

    def symmetrized(self) -> "UniformJumps":
        return self

    def params(self) -> dict:
        return {"halfwidth": self.halfwidth}


@dataclass(frozen=True)
class GaussianJumps:
    """Centered Gaussian jumps with isotropic covariance sigma^2 I."""

    sigma: float
    dim_: int = 1
    name: ClassVar[str] = "gaussian"
    has_finite_mean: ClassVar[bool] = True

    def __post_init__(self):
        if not (np.isfinite(self.sigma) and self.sigma > 0):
            raise ValueError("sigma must be finite and positive")
        if self.dim_ < 1:
            raise ValueError("dim must be >= 1")

    @property
    def dim(self) -> int:
        return self.dim_

    def cf(self, z) -> complex:
        zz = np.atleast_1d(np.asarray(z, dtype=float))
        return complex(np.exp(-0.5 * self.sigma ** 2 * float(np.dot(zz, zz))))

    def sample(self, rng, size: int) -> np.ndarray:
        return rng.normal(0.0, self.sigma, size=(size, self.dim_))

    @property
    def truncated_mean(self) -> np.ndarray:
        return np.zeros(self.dim_)

    @property
    def mean(self) -> np.ndarray:
        return np.zeros(self.dim_)

    @property
    def abs_second_moment(self) -> float:
        return self.dim_ * self.sigma ** 2

    @property
    def is_symmetric(self) -> bool:
        return True

    def negated(self) -> "GaussianJumps":
        return self

    def symmetrized(self) -> "GaussianJumps":
        return self

    def params(self) -> dict:
        return {"sigma": self.sigma, "dim": self.dim_}


@dataclass(frozen=True)
class Categorical:
    """Finitely supported jump distribution with given atoms and weights."""

    points: np.ndarray  # (k, d)
    probs: np.ndarray  # (k,)
    name: ClassVar[str] = "categorical"
    has_finite_mean: ClassVar[bool] = True

    def __post_init__(self):
        pts = np.atleast_2d(np.asarray(self.points, dtype=float))
        pr = np.asarray(self.probs, dtype=float)
        if pts.shape[0] != pr.size:
            raise ValueError("points and probs must have matching lengths")
        if not np.all(np.isfinite(pts)) or not np.all(np.isfinite(pr)):
            raise ValueError("points and probs must be finite")
        if np.any(pr <= 0):
            raise ValueError("probs must be positive")
        if np.any(np.linalg.norm(pts, axis=1) == 0.0):
            raise ValueError("jump distribution may not put mass at 0")
        pr = pr / pr.sum()
        object.__setattr__(self, "points", pts)
        object.__setattr__(self, "probs", pr)

    @property
    def dim(self) -> int:
        return self.points.shape[1]

    def cf(self, z) -> complex:
        zz = np.atleast_1d(np.asarray(z, dtype=float))
        return complex(np.sum(self.probs * np.exp(1j * self.points @ zz)))

    def sample(self, rng, size: int) -> np.ndarray:
        idx = rng.choice(self.points.shape[0], size=size, p=self.probs)
        return self.points[idx]

    @property
    def truncated_mean(self) -> np.ndarray:
        inside = np.linalg.norm(self.points, axis=1) <= 1.0
        return (self.probs[inside, None] * self.points[inside]).sum(axis=0)

    @property
    def mean(self) -> np.ndarray:
        return (self.probs[:, None] * self.points).sum(axis=0)

    @property
    def abs_second_moment(self) -> float:
        return float(np.sum(self.probs * np.sum(self.points ** 2, axis=1)))

    @property
    def is_symmetric(self) -> bool:
        return _atoms_match(self.points, self.probs, -self.points, self.probs)

    def negated(self) -> "Categorical":
        return Categorical(-self.points, self.probs)

    def symmetrized(self) -> "Categorical":
        pts, wts = _merge_atoms(
            np.vstack([self.points, -self.points]),
            np.concatenate([self.probs / 2.0, self.probs / 2.0]),
        )
        return Categorical(pts, wts)

    def params(self) -> dict:
        return {"points": self.points.tolist(), "probs": self.probs.tolist()}


_DIST_REGISTRY = {
    "point_mass": lambda p: PointMass(np.asarray(p["point"], dtype=float)),
    "two_point": lambda p: TwoPoint(np.asarray(p["point"], dtype=float)),
    "uniform": lambda p: UniformJumps(float(p["halfwidth"])),
    "gaussian": lambda p: GaussianJumps(float(p["sigma"]), int(p.get("dim", 1))),
    "categorical": lambda p: Categorical(
        np.asarray(p["points"], dtype=float), np.asarray(p["probs"], dtype=float)
    ),
}


def dist_from_dict(spec: dict):
    """Rebuild a named jump distribution from {"name": ..., "params": {...}}."""
    try:
        name = spec["name"]
    except KeyError:
        raise ValueError("jump distribution spec missing field 'name'") from None
    if name not in _DIST_REGISTRY:
        raise ValueError(f"unknown jump distribution {name!r}")
    return _DIST_REGISTRY[name](spec.get("params", {}))


def _merge_atoms(points, masses):
    """Merge coincident atoms, keeping first-seen order."""
    out_pts: list[np.ndarray] = []
    out_ms: list[float] = []
    for pt, m in zip(points, masses):
        for i, q in enumerate(out_pts):
            if np.array_equal(pt, q):
                out_ms[i] += m
                break
        else:
            out_pts.append(pt)
            out_ms.append(float(m))
    return np.array(out_pts), np.array(out_ms)


def _atoms_match(points_a, mass_a, points_b, mass_b, tol=SYMMETRY_TOL):
    """True if the two atom collections define the same measure within tol."""
    pa, ma = _merge_atoms(points_a, mass_a)
    pb, mb = _merge_atoms(points_b, mass_b)
    if pa.shape != pb.shape:
        return False
    used = np.zeros(len(pb), dtype=bool)
    scale = max(1.0, float(np.max(np.abs(ma), initial=0.0)))
    for pt, m in zip(pa, ma):
        found = False
        for j in range(len(pb)):
            if used[j]:
                continue
            if np.allclose(pt, pb[j], rtol=0.0, atol=tol) and abs(m - mb[j]) <= tol * scale:
                used[j] = True
                found = True
                break
        if not found:
            return False
    return True


# ---------------------------------------------------------------------------
# Finite-activity jump measures
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class DiscreteJumps:
    """Jump measure with finitely many atoms: nu = sum_k mass_k * delta_{x_k}."""

    points: np.ndarray  # (k, d)
    masses: np.ndarray  # (k,)

    def __post_init__(self):
        pts = np.atleast_2d(np.asarray(self.points, dtype=float))
        ms = np.asarray(self.masses, dtype=float)
        if pts.shape[0] != ms.size:
            raise ValueError("points and masses must have matching lengths")
        if not np.all(np.isfinite(pts)) or not np.all(np.isfinite(ms)):
            raise ValueError("atoms must be finite")
        if np.any(ms <= 0):
            raise ValueError("atom masses must be positive")
        if pts.shape[0] and np.any(np.linalg.norm(pts, axis=1) == 0.0):
            raise ValueError("jump measure may not put mass at 0")
        object.__setattr__(self, "points", pts)
        object.__setattr__(self, "masses", ms)

    @classmethod
    def from_atoms(cls, atoms) -> "DiscreteJumps":
        """Build from an iterable of (point, mass) pairs."""
        pts = [np.atleast_1d(np.asarray(x, dtype=float)) for x, _ in atoms]
        ms = [float(m) for _, m in atoms]
        if not pts:
            raise ValueError("at least one atom required; use jumps=None for no jumps")
        return cls(np.array(pts), np.array(ms))

    @property
    def dim(self) -> int:
        return self.points.shape[1]

    @property
    def total_rate(self) -> float:
        return float(self.masses.sum())

    def psi_jump(self, z: np.ndarray) -> complex:
        phase = self.points @ z
        inside = np.linalg.norm(self.points, axis=1) <= 1.0
        terms = np.exp(1j * phase) - 1.0 - 1j * phase * inside
        return complex(np.sum(self.masses * terms))

    @property
    def truncated_first_moment(self) -> np.ndarray:
        inside = np.linalg.norm(self.points, axis=1) <= 1.0
        return (self.masses[:, None] * self.points * inside[:, None]).sum(axis=0)

    @property
    def first_moment(self) -> np.ndarray:
        return (self.masses[:, None] * self.points).sum(axis=0)

    @property
    def abs_second_moment(self) -> float:
        return float(np.sum(self.masses * np.sum(self.points ** 2, axis=1)))

    def is_symmetric(self, tol=SYMMETRY_TOL) -> bool:
        return _atoms_match(self.points, self.masses, -self.points, self.masses, tol)

    def dual(self) -> "DiscreteJumps":
        return DiscreteJumps(-self.points, self.masses)

    def plus_dual(self) -> "DiscreteJumps":
        pts, ms = _merge_atoms(
            np.vstack([self.points, -self.points]),
            np.concatenate([self.masses, self.masses]),
        )
        return DiscreteJumps(pts, ms)

    def rate_and_dist(self) -> tuple[float, Categorical]:
        return self.total_rate, Categorical(self.points, self.masses / self.total_rate)

    def to_dict(self) -> dict:
        return {
            "kind": "discrete",
            "atoms": [
                {"x": x.tolist(), "mass": float(m)}
                for x, m in zip(self.points, self.masses)
            ],
        }


@dataclass(frozen=True)
class ScaledJumps:
    """Jump measure nu = rate * F for a named sampleable distribution F."""

    rate: float
    dist: object

    def __post_init__(self):
        if not (np.isfinite(self.rate) and self.rate > 0):
            raise ValueError("rate must be finite and positive")
        if not callable(getattr(self.dist, "cf", None)):
            raise TypeError("scaled jump measure needs a distribution with an evaluable cf")
        if not getattr(self.dist, "has_finite_mean", False):
            raise ValueError("scaled jump measure needs a declared finite-mean distribution")

    @property
    def dim(self) -> int:
        return self.dist.dim

    @property
    def total_rate(self) -> float:
        return self.rate

    def psi_jump(self, z: np.ndarray) -> complex:
        trunc = self.rate * self.dist.truncated_mean
        return self.rate * (self.dist.cf(z) - 1.0) - 1j * float(np.dot(z, trunc))

    @property
    def truncated_first_moment(self) -> np.ndarray:
        return self.rate * self.dist.truncated_mean

    @property
    def first_moment(self) -> np.ndarray:
        return self.rate * self.dist.mean

    @property
    def abs_second_moment(self) -> float:
        return self.rate * self.dist.abs_second_moment

    def is_symmetric(self, tol=SYMMETRY_TOL) -> bool:
        return self.dist.is_symmetric

    def dual(self) -> "ScaledJumps":
        return ScaledJumps(self.rate, self.dist.negated())

    def plus_dual(self) -> "ScaledJumps":
        # nu + dual(nu) = 2*rate * (F + dual(F))/2
        return ScaledJumps(2.0 * self.rate, self.dist.symmetrized())

    def rate_and_dist(self):
        return self.rate, self.dist

    def to_dict(self) -> dict:
        return {
            "kind": "scaled",
            "rate": self.rate,
            "dist": {"name": self.dist.name, "params": self.dist.params()},
        }


def _jumps_from_dict(spec: dict):
    kind = spec.get("kind")
    if kind == "discrete":
        return DiscreteJumps.from_atoms([(a["x"], a["mass"]) for a in spec["atoms"]])
    if kind == "scaled":
        return ScaledJumps(float(spec["rate"]), dist_from_dict(spec["dist"]))
    raise ValueError(f"unknown jump measure kind {kind!r}")


# ---------------------------------------------------------------------------
# Levy triplet
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class LevyTriplet:
    """(gamma, A, nu) with finite-activity nu; jumps=None means nu = 0.

    The Gaussian matrix is symmetrized on input and must be nonnegative
    definite up to an eigenvalue tolerance of -1e-12.
    """

    gamma: np.ndarray
    gaussian: np.ndarray
    jumps: DiscreteJumps | ScaledJumps | None = None

    def __post_init__(self):
        g = _as_vector(self.gamma, "gamma")
        a = np.asarray(self.gaussian, dtype=float)
        if a.ndim == 0:
            a = a.reshape(1, 1)
        if a.shape != (g.size, g.size):
            raise ValueError(f"gaussian must be {g.size}x{g.size}, got {a.shape}")
        if not np.all(np.isfinite(a)):
            raise ValueError("gaussian must be finite")
        a = 0.5 * (a + a.T)
        if a.size and np.min(np.linalg.eigvalsh(a)) < -1e-12:
            raise ValueError("gaussian must be nonnegative definite")
        if self.jumps is not None and self.jumps.dim != g.size:
            raise ValueError("jump measure dimension does not match gamma")
        object.__setattr__(self, "gamma", g)
        object.__setattr__(self, "gaussian", a)

    @property
    def dim(self) -> int:
        return self.gamma.size

    @property
    def drift(self) -> np.ndarray:
        """gamma_0 = gamma - integral_{|x|<=1} x nu(dx)."""
        if self.jumps is None:
            return self.gamma
        return self.gamma - self.jumps.truncated_first_moment

    @property
    def mean11(self) -> np.ndarray:
        """Mean of the sheet at time (1,1): gamma_0 + integral x nu(dx)."""
        if self.jumps is None:
            return self.gamma
        return self.drift + self.jumps.first_moment

    @property
    def variance11(self) -> float:
        """Variance at (1,1), real-valued laws only."""
        if self.dim != 1:
            raise ValueError("variance11 is defined for d=1 only")
        var = float(self.gaussian[0, 0])
        if self.jumps is not None:
            var += self.jumps.abs_second_moment
        return var

    @property
    def is_gaussian(self) -> bool:
        return self.jumps is None


def eval_psi(triplet: LevyTriplet, z) -> complex:
    """Characteristic exponent psi(z) of the triplet; psi(0) = 0 exactly."""
    zz = np.atleast_1d(np.asarray(z, dtype=float))
    if zz.shape != (triplet.dim,):
        raise ValueError(f"z must have shape ({triplet.dim},), got {zz.shape}")
    if not np.all(np.isfinite(zz)):
        raise ValueError("z must be finite")
    if not np.any(zz):
        return 0j
    val = 1j * float(np.dot(triplet.gamma, zz)) - 0.5 * float(zz @ triplet.gaussian @ zz)
    if triplet.jumps is not None:
        val = val + triplet.jumps.psi_jump(zz)
    return complex(val)


def is_symmetric(triplet: LevyTriplet, tol: float = SYMMETRY_TOL) -> bool:
    """True iff the law equals its reflection: zero drift and nu = dual(nu)."""
    scale = max(1.0, float(np.max(np.abs(triplet.gamma), initial=0.0)))
    if np.max(np.abs(triplet.drift), initial=0.0) > tol * scale:
        return False
    return triplet.jumps is None or triplet.jumps.is_symmetric(tol)


def is_deterministic(triplet: LevyTriplet, tol: float = SYMMETRY_TOL) -> bool:
    """True iff the law is a point mass: A = 0 and nu = 0."""
    return triplet.jumps is None and float(np.max(np.abs(triplet.gaussian), initial=0.0)) <= tol


def symmetrize(triplet: LevyTriplet) -> LevyTriplet:
    """Triplet of the law X - X' for X' an independent copy of X.

    Jump measure nu + dual(nu), Gaussian part 2A, drift 0; the exponent of
    the result equals psi(z) + psi(-z).
    """
    jumps = None if triplet.jumps is None else triplet.jumps.plus_dual()
    gamma = np.zeros(triplet.dim) if jumps is None else jumps.truncated_first_moment
    return LevyTriplet(gamma, 2.0 * triplet.gaussian, jumps)


# ---------------------------------------------------------------------------
# Convenience constructors
# ---------------------------------------------------------------------------

def brownian(dim: int = 1) -> LevyTriplet:
    """Standard Brownian sheet: psi(z) = -|z|^2/2."""
    return LevyTriplet(np.zeros(dim), np.eye(dim))


def pure_drift(gamma) -> LevyTriplet:
    g = _as_vector(gamma, "gamma")
    return LevyTriplet(g, np.zeros((g.size, g.size)))


def cpp(rate: float, dist, drift=0.0) -> LevyTriplet:
    """Compound-Poisson triplet with the given jump rate/distribution and drift."""
    jumps = ScaledJumps(rate, dist)
    g = np.broadcast_to(np.atleast_1d(np.asarray(drift, dtype=float)), (dist.dim,)).copy()
    return LevyTriplet(g + jumps.truncated_first_moment, np.zeros((dist.dim, dist.dim)), jumps)


def cpp_from_atoms(atoms, drift=0.0) -> LevyTriplet:
    """Compound-Poisson triplet from (point, mass) atoms of the jump measure."""
    jumps = DiscreteJumps.from_atoms(atoms)
    g = np.broadcast_to(np.atleast_1d(np.asarray(drift, dtype=float)), (jumps.dim,)).copy()
    return LevyTriplet(g + jumps.truncated_first_moment, np.zeros((jumps.dim, jumps.dim)), jumps)


# ---------------------------------------------------------------------------
# JSON round-trip
# ---------------------------------------------------------------------------

def triplet_to_dict(triplet: LevyTriplet) -> dict:
    out = {
        "gamma": triplet.gamma.tolist(),
        "gaussian": triplet.gaussian.tolist(),
    }
    if triplet.jumps is not None:
        out["jumps"] = triplet.jumps.to_dict()
    return out


def triplet_from_dict(spec: dict) -> LevyTriplet:
    for field in ("gamma", "gaussian"):
        if field not in spec:
            raise ValueError(f"triplet spec missing field {field!r}")
    jumps = _jumps_from_dict(spec["jumps"]) if spec.get("jumps") else None
    return LevyTriplet(
        np.asarray(spec["gamma"], dtype=float),
        np.asarray(spec["gaussian"], dtype=float),
        jumps,
    )
