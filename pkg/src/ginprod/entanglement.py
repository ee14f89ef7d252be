"""Real two-qubit states: concurrence, the co-optimality predicate, and its link
to real eigenvalues of 2x2 matrix products.

Conventions (fixed throughout the package):

* amplitude order is (|00>, |01>, |10>, |11>); states are real unit vectors;
* the bilinear form is r(u, v) = <u| sigma_y x sigma_y |v>
  = -(u0 v3 + u3 v0) + u1 v2 + u2 v1, since sigma_y x sigma_y maps
  |00> -> -|11>, |01> -> |10>, |10> -> |01>, |11> -> -|00> on real states;
* the concurrence of a real pure state is |r(u, u)|;
* a pair (u, v) is co-optimal (mixtures achieve the concurrence average)
  iff r11 r22 > 0 and r11 r22 - r12^2 < 0, strictly; the boundary cases are
  measure zero under continuous sampling and evaluate to False.

For u = (cos t, 0, 0, sin t) and v = (a, b, c, d), the predicate is
equivalent to: M = diag(cos t, sin t) @ [[d, c], [b, a]] has positive
determinant and real eigenvalues.  The coefficient matrix reverses both
qubit bases; with the unreversed [[a, b], [c, d]] the same equivalence holds
only after relabeling amplitudes, and since the amplitudes are exchangeable
under the samplers used here every distributional statement is unaffected.
``coefficient_matrix`` implements the reversed convention, which makes the
equivalence hold instance by instance.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .sampling import StreamPool, _s3_from

__all__ = [
    "RForm",
    "schmidt_state",
    "r_bilinear",
    "concurrence",
    "co_optimal_pair",
    "coefficient_matrix",
    "fraction_cooptimal_theta",
    "fraction_cooptimal_pairs",
    "fraction_cooptimal_staged",
]


def _check_state(u) -> np.ndarray:
    v = np.asarray(u, dtype=float)
    if v.shape != (4,):
        raise ValueError(f"a two-qubit real state has 4 amplitudes, got shape {v.shape}")
    nsq = float(v @ v)
    if abs(nsq - 1.0) > 1e-10:
        raise ValueError(f"state must be normalized; squared norm is {nsq}")
    return v


def schmidt_state(theta: float) -> np.ndarray:
    """cos(theta)|00> + sin(theta)|11>, the Schmidt form with angle theta."""
    return np.array([math.cos(theta), 0.0, 0.0, math.sin(theta)])


def r_bilinear(u, v) -> float:
    """Matrix element of sigma_y x sigma_y between two real states."""
    u = _check_state(u)
    v = _check_state(v)
    return float(-(u[0] * v[3] + u[3] * v[0]) + u[1] * v[2] + u[2] * v[1])


def concurrence(u) -> float:
    """Concurrence |r(u, u)| = 2|u1 u2 - u0 u3| of a real pure state; in [0, 1]."""
    return abs(r_bilinear(u, u))


@dataclass(frozen=True)
class RForm:
    """The three bilinear-form values deciding co-optimality of a pair."""

    r11: float
    r12: float
    r22: float

    @classmethod
    def of_pair(cls, u, v) -> "RForm":
        return cls(r_bilinear(u, u), r_bilinear(u, v), r_bilinear(v, v))

    @property
    def co_optimal(self) -> bool:
        prod = self.r11 * self.r22
        return prod > 0.0 and prod - self.r12 * self.r12 < 0.0


def co_optimal_pair(u, v) -> bool:
    """True iff mixtures of u and v achieve the average of their concurrences."""
    return RForm.of_pair(u, v).co_optimal


def coefficient_matrix(theta: float, v) -> np.ndarray:
    """diag(cos t, sin t) @ [[d, c], [b, a]] for v = (a, b, c, d).

    co_optimal_pair(schmidt_state(theta), v) is equivalent to this matrix
    having positive determinant and real eigenvalues (for theta in (0, pi/4]).
    """
    v = _check_state(v)
    a, b, c, d = v
    return np.array([[d * math.cos(theta), c * math.cos(theta)],
                     [b * math.sin(theta), a * math.sin(theta)]])


def _binomial(hits: int, trials: int) -> tuple[float, float]:
    f = hits / trials
    return f, math.sqrt(f * (1.0 - f) / trials)


def fraction_cooptimal_theta(theta: float, trials: int, master_seed: int) -> tuple[float, float]:
    """Monte Carlo fraction of uniform S3 states co-optimal with schmidt_state(theta).

    The analytic value is p_theta - 1/2 for theta in (0, pi/4]; at theta =
    pi/4 this is 1/sqrt(2) - 1/2, about 20.7%.  theta = 0 is rejected: the
    Schmidt state is then a product state with zero concurrence and the
    predicate is vacuously false while p_0 = 1.
    """
    if not 0.0 < theta <= math.pi / 4 + 1e-15:
        raise ValueError(f"theta must lie in (0, pi/4], got {theta}")
    if trials < 1:
        raise ValueError("trials must be >= 1")
    ct, st = math.cos(theta), math.sin(theta)
    r11 = -2.0 * ct * st
    pool = StreamPool()
    hits = 0
    for t in range(trials):
        v = _s3_from(pool.get(master_seed, t))
        r22 = 2.0 * (v[1] * v[2] - v[0] * v[3])
        prod = r11 * r22
        if prod > 0.0:
            r12 = -(ct * v[3] + st * v[0])
            hits += prod - r12 * r12 < 0.0
    return _binomial(hits, trials)


def _pair_hit(u, v) -> bool:
    r11 = 2.0 * (u[1] * u[2] - u[0] * u[3])
    r22 = 2.0 * (v[1] * v[2] - v[0] * v[3])
    prod = r11 * r22
    if prod <= 0.0:
        return False
    r12 = -(u[0] * v[3] + u[3] * v[0]) + u[1] * v[2] + u[2] * v[1]
    return prod - r12 * r12 < 0.0


def fraction_cooptimal_pairs(trials: int, master_seed: int) -> tuple[float, float]:
    """Monte Carlo fraction of independent uniform S3 pairs that are co-optimal.

    The analytic value is (pi - 2)/4, about 28.5%.
    """
    if trials < 1:
        raise ValueError("trials must be >= 1")
    pool = StreamPool()
    hits = 0
    for t in range(trials):
        rng = pool.get(master_seed, t)
        u = _s3_from(rng)
        v = _s3_from(rng)
        hits += _pair_hit(u, v)
    return _binomial(hits, trials)


def fraction_cooptimal_staged(trials: int, master_seed: int) -> tuple[float, float]:
    """Two-stage estimator of the pair fraction: a Schmidt angle from its
    2 cos(2 theta) density, then one uniform S3 partner.

    Estimates the same quantity as fraction_cooptimal_pairs because a uniform
    pair can always be rotated so one member is in Schmidt form, with the
    Schmidt angle then distributed as 2 cos(2 theta).
    """
    if trials < 1:
        raise ValueError("trials must be >= 1")
    pool = StreamPool()
    hits = 0
    for t in range(trials):
        rng = pool.get(master_seed, t)
        theta = 0.5 * math.asin(rng.random())
        ct, st = math.cos(theta), math.sin(theta)
        r11 = -2.0 * ct * st
        v = _s3_from(rng)
        r22 = 2.0 * (v[1] * v[2] - v[0] * v[3])
        prod = r11 * r22
        if prod > 0.0:
            r12 = -(ct * v[3] + st * v[0])
            hits += prod - r12 * r12 < 0.0
    return _binomial(hits, trials)
