"""Euclidean Jordan algebra kernel for three families of symmetric cones.

Supported algebras and their coordinate conventions:

* ``orthant`` (param n): V = R^n with the componentwise product; the cone
  is the open positive orthant.  Coordinates: flat vector of length n.
* ``sym`` (param r): V = Sym(r, R) with x o y = (xy + yx)/2; the cone is
  the positive definite matrices.  Coordinates: full dense r x r symmetric
  matrix (symmetrized on ingestion, never packed).
* ``spin`` (param n, n >= 2): V = R x R^{n-1} with
  x o y = (<x, y>, x0*ybar + y0*xbar); the cone is the Lorentz cone
  x0 > ||xbar||.  Coordinates: flat vector, entry 0 distinguished.

The inner product is the trace form (x|y) = tr(x o y) in every algebra,
which makes primitive idempotents have trace 1.

All operations are pure functions of immutable values: element coordinate
arrays are frozen at construction, so everything here is safe to call
concurrently.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from .errors import AlgebraMismatch, EigensolverFailure, NotInCone

ORTHANT = "orthant"
SYM = "sym"
SPIN = "spin"
_KINDS = (ORTHANT, SYM, SPIN)

# Ingestion tolerance for symmetric-matrix coordinates.
_SYM_INGEST_RTOL = 1e-12

_EPS = float(np.finfo(float).eps)


@dataclass(frozen=True)
class AlgebraDescriptor:
    """Which simple algebra, plus its size parameter."""

    kind: str
    param: int

    def __post_init__(self):
        if self.kind not in _KINDS:
            raise ValueError(f"unknown algebra kind {self.kind!r}")
        if int(self.param) != self.param or self.param < 1:
            raise ValueError("param must be a positive integer")
        if self.kind == SPIN and self.param < 2:
            raise ValueError("spin factor needs ambient dimension >= 2")
        object.__setattr__(self, "param", int(self.param))

    @property
    def rank(self) -> int:
        if self.kind == ORTHANT:
            return self.param
        if self.kind == SYM:
            return self.param
        return 2

    @property
    def dim(self) -> int:
        """Dimension of V as a real vector space."""
        if self.kind == SYM:
            return self.param * (self.param + 1) // 2
        return self.param

    @property
    def coord_shape(self) -> tuple[int, ...]:
        if self.kind == SYM:
            return (self.param, self.param)
        return (self.param,)

    def identity(self) -> Element:
        if self.kind == ORTHANT:
            return Element(self, np.ones(self.param))
        if self.kind == SYM:
            return Element(self, np.eye(self.param))
        coords = np.zeros(self.param)
        coords[0] = 1.0
        return Element(self, coords)

    def zero(self) -> Element:
        return Element(self, np.zeros(self.coord_shape))


def orthant(n: int) -> AlgebraDescriptor:
    return AlgebraDescriptor(ORTHANT, n)


def sym_matrix(r: int) -> AlgebraDescriptor:
    return AlgebraDescriptor(SYM, r)


def spin_factor(n: int) -> AlgebraDescriptor:
    return AlgebraDescriptor(SPIN, n)


@dataclass(frozen=True, eq=False)
class Element:
    """A point of the ambient space V (not necessarily in the cone)."""

    algebra: AlgebraDescriptor
    coords: np.ndarray

    def __post_init__(self):
        coords = np.asarray(self.coords, dtype=float)
        if coords.shape != self.algebra.coord_shape:
            raise ValueError(
                f"coords shape {coords.shape} does not match "
                f"{self.algebra.kind}({self.algebra.param})"
            )
        if self.algebra.kind == SYM:
            gap = np.abs(coords - coords.T)
            tol = _SYM_INGEST_RTOL * (1.0 + np.abs(coords))
            if np.any(gap > tol):
                raise ValueError("matrix coordinates are not symmetric")
            coords = (coords + coords.T) / 2.0
        else:
            coords = coords.copy()
        coords.flags.writeable = False
        object.__setattr__(self, "coords", coords)

    def __add__(self, other: Element) -> Element:
        _require_same_algebra(self, other)
        return Element(self.algebra, self.coords + other.coords)

    def __sub__(self, other: Element) -> Element:
        _require_same_algebra(self, other)
        return Element(self.algebra, self.coords - other.coords)

    def __mul__(self, scalar: float) -> Element:
        return Element(self.algebra, self.coords * float(scalar))

    __rmul__ = __mul__

    def __neg__(self) -> Element:
        return Element(self.algebra, -self.coords)


@dataclass(frozen=True)
class SpectralDecomposition:
    """Eigenvalues (descending) with a Jordan frame realizing x = sum l_j c_j."""

    eigenvalues: np.ndarray
    frame: list[Element] = field(repr=False)

    def reconstruct(self) -> Element:
        algebra = self.frame[0].algebra
        coords = np.zeros(algebra.coord_shape)
        for lam, c in zip(self.eigenvalues, self.frame):
            coords += lam * c.coords
        return Element(algebra, coords)


def _require_same_algebra(x: Element, y: Element) -> None:
    if x.algebra != y.algebra:
        raise AlgebraMismatch(
            f"elements live in {x.algebra.kind}({x.algebra.param}) and "
            f"{y.algebra.kind}({y.algebra.param})"
        )


# ---------------------------------------------------------------------------
# Jordan product and quadratic representation
# ---------------------------------------------------------------------------

def product(x: Element, y: Element) -> Element:
    """Jordan product x o y."""
    _require_same_algebra(x, y)
    kind = x.algebra.kind
    if kind == ORTHANT:
        return Element(x.algebra, x.coords * y.coords)
    if kind == SYM:
        xy = x.coords @ y.coords
        return Element(x.algebra, (xy + y.coords @ x.coords) / 2.0)
    head = float(np.dot(x.coords, y.coords))
    tail = x.coords[0] * y.coords[1:] + y.coords[0] * x.coords[1:]
    return Element(x.algebra, np.concatenate(([head], tail)))


def quad(x: Element, y: Element) -> Element:
    """Quadratic representation P(x)y = 2 x o (x o y) - (x o x) o y."""
    xy = product(x, y)
    return 2.0 * product(x, xy) - product(product(x, x), y)


def trace_inner(x: Element, y: Element) -> float:
    """Trace form (x|y) = tr(x o y)."""
    _require_same_algebra(x, y)
    kind = x.algebra.kind
    if kind == ORTHANT:
        return float(np.dot(x.coords, y.coords))
    if kind == SYM:
        return float(np.sum(x.coords * y.coords))
    return 2.0 * float(np.dot(x.coords, y.coords))


# ---------------------------------------------------------------------------
# Cyclic Jacobi eigensolver (sym only)
# ---------------------------------------------------------------------------

def _jacobi(matrix: np.ndarray, accumulate: bool):
    """Cyclic Jacobi on a symmetric matrix; returns (diag, columns or None).

    Rotations run in fixed row-major pair order, so the result is
    deterministic for a fixed input.  The annihilated entry is set to an
    exact zero each rotation; a sweep performing no rotation means every
    off-diagonal entry is at most eps * ||A||_F and we are done.
    """
    r = matrix.shape[0]
    a = [[float(matrix[i, j]) for j in range(r)] for i in range(r)]
    v = [[1.0 if i == j else 0.0 for j in range(r)] for i in range(r)] if accumulate else None
    thresh = _EPS * max(1.0, math.sqrt(sum(x * x for row in a for x in row)))
    max_sweeps = 30 * r * r
    for _ in range(max_sweeps):
        rotated = False
        for p in range(r - 1):
            ap = a[p]
            for q in range(p + 1, r):
                apq = ap[q]
                if abs(apq) <= thresh:
                    continue
                rotated = True
                aq = a[q]
                tau = (aq[q] - ap[p]) / (2.0 * apq)
                t = (1.0 if tau >= 0 else -1.0) / (abs(tau) + math.sqrt(1.0 + tau * tau))
                c = 1.0 / math.sqrt(1.0 + t * t)
                s = t * c
                app = ap[p]
                aqq = aq[q]
                for k in range(r):
                    ak = a[k]
                    akp = ak[p]
                    akq = ak[q]
                    ak[p] = c * akp - s * akq
                    ak[q] = s * akp + c * akq
                for k in range(r):
                    apk = ap[k]
                    aqk = aq[k]
                    ap[k] = c * apk - s * aqk
                    aq[k] = s * apk + c * aqk
                ap[p] = app - t * apq
                aq[q] = aqq + t * apq
                ap[q] = 0.0
                aq[p] = 0.0
                if accumulate:
                    for k in range(r):
                        vk = v[k]
                        vkp = vk[p]
                        vkq = vk[q]
                        vk[p] = c * vkp - s * vkq
                        vk[q] = s * vkp + c * vkq
        if not rotated:
            diag = np.array([a[i][i] for i in range(r)])
            return diag, (np.array(v) if accumulate else None)
    raise EigensolverFailure(
        f"Jacobi did not converge within {max_sweeps} sweeps (r={r})"
    )


def _sym_eigenvalues(matrix: np.ndarray) -> np.ndarray:
    diag, _ = _jacobi(matrix, accumulate=False)
    return np.sort(diag)[::-1]


# ---------------------------------------------------------------------------
# Spectral decomposition and functional calculus
# ---------------------------------------------------------------------------

def spectral_decompose(x: Element) -> SpectralDecomposition:
    """Eigenvalues sorted descending with a Jordan frame for x."""
    algebra = x.algebra
    if algebra.kind == ORTHANT:
        order = np.argsort(-x.coords, kind="stable")
        eigs = x.coords[order]
        frame = []
        for idx in order:
            coords = np.zeros(algebra.param)
            coords[idx] = 1.0
            frame.append(Element(algebra, coords))
        return SpectralDecomposition(eigs, frame)
    if algebra.kind == SYM:
        diag, vmat = _jacobi(x.coords, accumulate=True)
        order = np.argsort(-diag, kind="stable")
        eigs = diag[order]
        frame = [Element(algebra, np.outer(vmat[:, j], vmat[:, j])) for j in order]
        return SpectralDecomposition(eigs, frame)
    x0 = float(x.coords[0])
    xbar = x.coords[1:]
    nrm = float(np.linalg.norm(xbar))
    if nrm == 0.0:
        u = np.zeros(algebra.param - 1)
        u[0] = 1.0
    else:
        u = xbar / nrm
    c_plus = Element(algebra, np.concatenate(([0.5], 0.5 * u)))
    c_minus = Element(algebra, np.concatenate(([0.5], -0.5 * u)))
    eigs = np.array([x0 + nrm, x0 - nrm])
    return SpectralDecomposition(eigs, [c_plus, c_minus])


def eigenvalues(x: Element) -> np.ndarray:
    """Eigenvalues sorted descending (no frame construction)."""
    algebra = x.algebra
    if algebra.kind == ORTHANT:
        return np.sort(x.coords)[::-1]
    if algebra.kind == SYM:
        return _sym_eigenvalues(x.coords)
    x0 = float(x.coords[0])
    nrm = float(np.linalg.norm(x.coords[1:]))
    return np.array([x0 + nrm, x0 - nrm])


def lambda_min(x: Element) -> float:
    """Least eigenvalue of x."""
    algebra = x.algebra
    if algebra.kind == ORTHANT:
        return float(np.min(x.coords))
    if algebra.kind == SYM:
        return float(_sym_eigenvalues(x.coords)[-1])
    return float(x.coords[0]) - float(np.linalg.norm(x.coords[1:]))


def _is_nonneg_integer(p: float) -> bool:
    return p >= 0 and float(p).is_integer()


def power(x: Element, p: float) -> Element:
    """Spectral power x^p = sum l_j^p c_j.

    Any element is accepted for non-negative integer p (polynomial
    calculus); otherwise x must lie in the open cone.
    """
    p = float(p)
    if p == 1.0:
        return x
    if p == 0.0:
        return x.algebra.identity()
    dec = spectral_decompose(x)
    if not _is_nonneg_integer(p) and dec.eigenvalues[-1] <= 0.0:
        raise NotInCone(
            f"x^({p:g}) needs x in the open cone; least eigenvalue is "
            f"{dec.eigenvalues[-1]:.6g}"
        )
    powered = np.power(dec.eigenvalues, p)
    coords = np.zeros(x.algebra.coord_shape)
    for lam, c in zip(powered, dec.frame):
        coords += lam * c.coords
    return Element(x.algebra, coords)


def inverse(x: Element) -> Element:
    """x^{-1}; requires x in the open cone."""
    return power(x, -1.0)


def det(x: Element) -> float:
    """Product of eigenvalues."""
    algebra = x.algebra
    if algebra.kind == ORTHANT:
        return float(np.prod(x.coords))
    if algebra.kind == SYM:
        return float(np.prod(_sym_eigenvalues(x.coords)))
    x0 = float(x.coords[0])
    return x0 * x0 - float(np.dot(x.coords[1:], x.coords[1:]))


def tr(x: Element) -> float:
    """Sum of eigenvalues."""
    algebra = x.algebra
    if algebra.kind == ORTHANT:
        return float(np.sum(x.coords))
    if algebra.kind == SYM:
        return float(np.trace(x.coords))
    return 2.0 * float(x.coords[0])


def spectral_norm(x: Element) -> float:
    """max_j |l_j|."""
    algebra = x.algebra
    if algebra.kind == ORTHANT:
        return float(np.max(np.abs(x.coords)))
    if algebra.kind == SYM:
        eigs = _sym_eigenvalues(x.coords)
        return float(max(abs(eigs[0]), abs(eigs[-1])))
    return abs(float(x.coords[0])) + float(np.linalg.norm(x.coords[1:]))


def in_cone(x: Element, margin: float = 0.0) -> bool:
    """True iff the least eigenvalue exceeds margin (margin 0: open cone)."""
    if margin < 0:
        raise ValueError("margin must be >= 0")
    return lambda_min(x) > margin


def normalize(x: Element) -> Element:
    """x / |x| in the spectral norm."""
    norm = spectral_norm(x)
    if norm == 0.0:
        raise ValueError("cannot normalize the zero element")
    return x * (1.0 / norm)
