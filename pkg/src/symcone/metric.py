"""Hilbert projective metric on the open cone.

The distance between interior points x, y is d(x, y) = log(l_max / l_min)
where l_max, l_min are the extreme eigenvalues of P(y^{-1/2}) x.  One
spectral decomposition per distance; the equivalent cross form
log(l_max(x,y) * l_max(y,x)) is kept for tests only.

Two independent oracles cross-check the eigenvalue route: a bisection on
the order relation x <= lambda * y, and a Rayleigh-quotient sampler over
random primitive idempotents which brackets the extremes from inside.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from . import algebra
from .algebra import Element
from .errors import NotInCone, NotNormalized
from .rng import SplitMix64


@dataclass(frozen=True)
class MetricReport:
    lambda_max: float
    lambda_min: float
    distance: float


def _require_interior(x: Element, name: str) -> None:
    if not algebra.in_cone(x, 0.0):
        raise NotInCone(f"{name} is not in the open cone")


def lambda_extremes(x: Element, y: Element) -> tuple[float, float]:
    """Greatest and least eigenvalue of P(y^{-1/2}) x, both > 0."""
    _require_interior(x, "x")
    _require_interior(y, "y")
    z = algebra.quad(algebra.power(y, -0.5), x)
    eigs = algebra.eigenvalues(z)
    return float(eigs[0]), float(eigs[-1])


def distance(x: Element, y: Element) -> MetricReport:
    lam_max, lam_min = lambda_extremes(x, y)
    return MetricReport(lam_max, lam_min, math.log(lam_max / lam_min))


def upper_bound_oracle(x: Element, y: Element, tol: float) -> float:
    """M(x, y) = inf{lambda : lambda*y - x in the closed cone}, by bisection.

    Independent of the eigenvalue route: only the order predicate
    "least eigenvalue of lambda*y - x >= 0" is consulted.
    """
    if tol <= 0:
        raise ValueError("tol must be positive")
    _require_interior(x, "x")
    _require_interior(y, "y")
    lo = 0.0
    hi = algebra.tr(x) / algebra.lambda_min(y) + 1.0
    while hi - lo > tol:
        mid = 0.5 * (lo + hi)
        if algebra.lambda_min(mid * y - x) >= 0.0:
            hi = mid
        else:
            lo = mid
    return 0.5 * (lo + hi)


def rayleigh_oracle(
    x: Element, y: Element, samples: int, seed: int
) -> tuple[float, float]:
    """Inner bounds on (l_max, l_min) from ratios (x|c)/(y|c).

    Ratios are taken over primitive idempotents c: exhaustively over the
    standard basis on the orthant (the bounds are then exact), and over
    `samples` random idempotents otherwise.  The returned maximum never
    exceeds l_max and the minimum never falls below l_min.
    """
    if samples < 1:
        raise ValueError("samples must be >= 1")
    _require_interior(x, "x")
    _require_interior(y, "y")
    kind = x.algebra.kind
    if kind == algebra.ORTHANT:
        ratios = x.coords / y.coords
        return float(np.max(ratios)), float(np.min(ratios))
    rng = SplitMix64(seed)
    best_max = -math.inf
    best_min = math.inf
    if kind == algebra.SYM:
        for _ in range(samples):
            v = rng.unit_vector(x.algebra.param)
            ratio = float(v @ x.coords @ v) / float(v @ y.coords @ v)
            best_max = max(best_max, ratio)
            best_min = min(best_min, ratio)
    else:
        for _ in range(samples):
            u = rng.unit_vector(x.algebra.param - 1)
            num = float(x.coords[0]) + float(np.dot(x.coords[1:], u))
            den = float(y.coords[0]) + float(np.dot(y.coords[1:], u))
            ratio = num / den
            best_max = max(best_max, ratio)
            best_min = min(best_min, ratio)
    return best_max, best_min


def norm_metric_bounds_check(x: Element, y: Element) -> bool:
    """Check the spectral-norm vs metric bounds on unit-norm cone points.

    Requires |x| = |y| = 1 (within 1e-10).  Verifies
    |x - y| <= e^{d(x,y)} - 1 and, when |x - y| is below the least
    eigenvalue of y, |x - y| >= lambda_min(y) * tanh(d(x,y)/2), each with
    1e-9 slack.
    """
    for name, el in (("x", x), ("y", y)):
        if abs(algebra.spectral_norm(el) - 1.0) > 1e-10:
            raise NotNormalized(f"{name} does not have unit spectral norm")
    d = distance(x, y).distance
    diff = algebra.spectral_norm(x - y)
    if diff > math.exp(d) - 1.0 + 1e-9:
        return False
    lam_min_y = algebra.lambda_min(y)
    if diff < lam_min_y and diff < lam_min_y * math.tanh(0.5 * d) - 1e-9:
        return False
    return True
