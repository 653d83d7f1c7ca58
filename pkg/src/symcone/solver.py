"""Banach fixed-point solver for g(x) = x^p on the open cone, |p| > 1.

The iteration runs on the unit sphere of the spectral norm:
F(x) = g(x)^{1/p} / |g(x)^{1/p}|.  Since the cone automorphism g
preserves the Hilbert metric and the power map with exponent 1/p shrinks
it by |1/p| (for p < -1 the power factors through the inversion isometry,
so the factor is the same), F is a contraction with ratio 1/|p| and has a
unique fixed direction u.  The solution is recovered as a = beta * u with
beta solving the one-dimensional scaling equation g(beta u) = (beta u)^p
on the ray; the final residual is always verified, with a scalar
bisection on beta as fallback.

Stopping rule: the a-posteriori Banach bound with q = 1/|p| - iteration
halts once d(x_k, x_{k+1}) <= tol * (1 - q), which puts the fixed
direction within tol in the Hilbert metric.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, replace

import numpy as np

from . import algebra, metric, transforms
from .algebra import Element
from .errors import AlgebraMismatch, NonConvergence, NotInCone, SingularMatrix
from .transforms import AutomorphismWord, Congruence


@dataclass(frozen=True)
class SolveConfig:
    p: float
    tol: float = 1e-12
    max_iter: int = 500
    initial: Element | None = None

    def __post_init__(self):
        if not abs(self.p) > 1.0:
            raise ValueError(f"the equation g(x) = x^p needs |p| > 1, got p={self.p}")
        if not self.tol > 0.0:
            raise ValueError("tol must be positive")
        if self.max_iter < 1:
            raise ValueError("max_iter must be positive")


@dataclass(frozen=True)
class SolveReport:
    solution: Element
    iterations: int
    distance_trace: tuple[float, ...]
    residual: float
    contraction_estimate: float
    converged: bool


def _residual(g: AutomorphismWord, a: Element, p: float) -> float:
    image = transforms.apply(g, a)
    target = algebra.power(a, p)
    return algebra.spectral_norm(image - target) / (
        1.0 + algebra.spectral_norm(target)
    )


def _fit_geometric_ratio(trace) -> float:
    """Least-squares geometric decay ratio of the positive trace entries."""
    logs = [(k, math.log(d)) for k, d in enumerate(trace) if d > 0.0]
    if len(logs) < 2:
        return 0.0
    ks = np.array([k for k, _ in logs], dtype=float)
    ys = np.array([y for _, y in logs])
    slope = np.polyfit(ks, ys, 1)[0]
    return float(math.exp(slope))


def banach_iteration_bound(first_step: float, p: float, tol: float) -> int:
    """A-priori iteration count for the stop rule, from the first step size."""
    threshold = tol * (1.0 - 1.0 / abs(p))
    if first_step <= threshold:
        return 2
    return math.ceil(math.log(first_step / threshold) / math.log(abs(p))) + 2


def _rescale_to_solution(
    g: AutomorphismWord, u: Element, p: float, tol: float
) -> tuple[Element, float]:
    """Pick beta so a = beta*u solves g(a) = a^p; verify the residual."""
    gu = transforms.apply(g, u)
    up = algebra.power(u, p)
    beta = (algebra.spectral_norm(gu) / algebra.spectral_norm(up)) ** (1.0 / (p - 1.0))
    a = beta * u
    res = _residual(g, a, p)
    if res <= 1e2 * tol:
        return a, res
    # Polish: the un-normalized map x -> g(x)^{1/p} fixes the solution and
    # still contracts toward it, so a few extra steps repair the scale.
    cand = a
    for _ in range(10):
        cand = algebra.power(transforms.apply(g, cand), 1.0 / p)
        cand_res = _residual(g, cand, p)
        if cand_res < res:
            a, res = cand, cand_res
        if res <= 1e2 * tol:
            return a, res
    # Last resort: bisection on the ray scale.  log|g(beta u)| - log|(beta u)^p|
    # is strictly monotone in log beta with a single root.
    def gap(b: float) -> float:
        scaled = b * u
        return math.log(
            algebra.spectral_norm(transforms.apply(g, scaled))
        ) - math.log(algebra.spectral_norm(algebra.power(scaled, p)))

    lo, hi = 1e-8, 1e8
    glo, ghi = gap(lo), gap(hi)
    if glo == 0.0:
        root = lo
    elif ghi == 0.0:
        root = hi
    elif glo * ghi > 0.0:
        root = beta  # no sign change in the bracket; keep the closed form
    else:
        for _ in range(200):
            mid = math.sqrt(lo * hi)
            gmid = gap(mid)
            if gmid == 0.0:
                lo = hi = mid
                break
            if (gmid > 0.0) == (glo > 0.0):
                lo, glo = mid, gmid
            else:
                hi = mid
        root = math.sqrt(lo * hi)
    cand = root * u
    cand_res = _residual(g, cand, p)
    if cand_res < res:
        a, res = cand, cand_res
    return a, res


def solve(g: AutomorphismWord, cfg: SolveConfig) -> SolveReport:
    """Unique a in the open cone with g(a) = a^p.

    Raises NonConvergence (with the partial report attached) if the
    iteration budget runs out, and NotInCone if an iterate escapes the
    cone, which signals that g does not actually preserve it.
    """
    p = cfg.p
    x = cfg.initial if cfg.initial is not None else g.algebra.identity()
    if x.algebra != g.algebra:
        raise AlgebraMismatch("initial point lives in a different algebra")
    if not algebra.in_cone(x, 0.0):
        raise NotInCone("initial point is not in the open cone")
    x = algebra.normalize(x)
    threshold = cfg.tol * (1.0 - 1.0 / abs(p))
    trace: list[float] = []
    converged = False
    for _ in range(cfg.max_iter):
        # For p < -1 the exponent 1/p is negative: the step is the inversion
        # isometry composed with the |1/p| power, so the contraction factor
        # is 1/|p| in both regimes.
        try:
            x_next = algebra.normalize(
                algebra.power(transforms.apply(g, x), 1.0 / p))
        except NotInCone as exc:
            raise NotInCone(
                "an iterate left the open cone: the supplied map does not "
                "preserve it") from exc
        step = metric.distance(x, x_next).distance
        trace.append(step)
        x = x_next
        if step <= threshold:
            converged = True
            break
    a, res = _rescale_to_solution(g, x, p, cfg.tol)
    report = SolveReport(
        solution=a,
        iterations=len(trace),
        distance_trace=tuple(trace),
        residual=res,
        contraction_estimate=_fit_geometric_ratio(trace),
        converged=converged and res <= 1e2 * cfg.tol,
    )
    if not converged:
        raise NonConvergence(
            f"no convergence in {cfg.max_iter} iterations "
            f"(last step {trace[-1]:.3e} > {threshold:.3e})",
            report=report,
        )
    if not report.converged:
        raise NonConvergence(
            f"iteration converged but the residual {res:.3e} exceeds "
            f"{1e2 * cfg.tol:.3e}",
            report=report,
        )
    return report


def solve_corollary(h: AutomorphismWord, cfg: SolveConfig) -> SolveReport:
    """Unique a in the open cone with h(a^p) = a.

    Delegates to solve() with g = h^{-1}; the reported residual is
    measured against the corollary equation itself.
    """
    report = solve(h.inverse(), cfg)
    a = report.solution
    lhs = transforms.apply(h, algebra.power(a, cfg.p))
    res = algebra.spectral_norm(lhs - a) / (1.0 + algebra.spectral_norm(a))
    report = replace(report, residual=res, converged=res <= 1e2 * cfg.tol)
    if not report.converged:
        raise NonConvergence(
            f"corollary residual {res:.3e} exceeds {1e2 * cfg.tol:.3e}",
            report=report,
        )
    return report


def solve_bushell(
    t: np.ndarray,
    k: int,
    tol: float = 1e-12,
    max_iter: int = 500,
    initial: Element | None = None,
) -> SolveReport:
    """Unique positive definite A with t' A t = A^(2^k)."""
    t = np.asarray(t, dtype=float)
    if t.ndim != 2 or t.shape[0] != t.shape[1]:
        raise SingularMatrix("t must be a square matrix")
    if abs(float(np.linalg.det(t))) <= 1e-12:
        raise SingularMatrix("t is numerically singular")
    if int(k) != k or k < 1:
        raise ValueError("k must be a positive integer")
    descriptor = algebra.sym_matrix(t.shape[0])
    word = AutomorphismWord(descriptor, (Congruence(t),))
    cfg = SolveConfig(p=float(2 ** int(k)), tol=tol, max_iter=max_iter, initial=initial)
    return solve(word, cfg)
