"""Cone maps and their metric behavior.

Linear cone automorphisms are represented as *words*: ordered lists of
generators that are each cone-preserving by construction (positive
scalars, quadratic representations P(a) with a interior, congruences
x -> t' x t on symmetric matrices, coordinate permutations on the
orthant).  A raw dim x dim matrix carries no certificate that it fixes
the cone; a word always does.

The power maps x -> x^p and the inversion x -> x^{-1} are the nonlinear
maps of interest: powers with |p| <= 1 shrink the Hilbert metric by the
factor |p|, inversion and every word preserve it.  Both facts are
measured empirically here over seeded random pairs.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from . import algebra, metric
from .algebra import AlgebraDescriptor, Element
from .errors import AlgebraMismatch, InvalidGenerator, MapLeftCone, NotInCone
from .rng import SplitMix64

# Eigenvalue range for random interior points, log-uniform.
EIG_LO = math.exp(-2.0)
EIG_HI = math.exp(2.0)

_DET_FLOOR = 1e-12


@dataclass(frozen=True)
class Scalar:
    """x -> mu * x, mu > 0."""

    mu: float

    def __post_init__(self):
        if not (self.mu > 0.0 and math.isfinite(self.mu)):
            raise InvalidGenerator(f"scalar factor must be positive, got {self.mu!r}")


@dataclass(frozen=True, eq=False)
class Quad:
    """x -> P(a) x with a in the open cone."""

    a: Element

    def __post_init__(self):
        if not algebra.in_cone(self.a, 0.0):
            raise InvalidGenerator("quad generator needs an interior element")


@dataclass(frozen=True, eq=False)
class Congruence:
    """x -> t' x t on symmetric matrices, t invertible."""

    t: np.ndarray

    def __post_init__(self):
        t = np.asarray(self.t, dtype=float)
        if t.ndim != 2 or t.shape[0] != t.shape[1]:
            raise InvalidGenerator("congruence factor must be a square matrix")
        if abs(float(np.linalg.det(t))) <= _DET_FLOOR:
            raise InvalidGenerator("congruence factor is numerically singular")
        t = t.copy()
        t.flags.writeable = False
        object.__setattr__(self, "t", t)


@dataclass(frozen=True)
class Permutation:
    """Coordinate permutation on the orthant."""

    sigma: tuple[int, ...]

    def __post_init__(self):
        sigma = tuple(int(i) for i in self.sigma)
        if sorted(sigma) != list(range(len(sigma))):
            raise InvalidGenerator(f"not a permutation of 0..{len(self.sigma) - 1}")
        object.__setattr__(self, "sigma", sigma)


Generator = Scalar | Quad | Congruence | Permutation


@dataclass(frozen=True)
class AutomorphismWord:
    """Composition (left-to-right) of validated cone-automorphism generators."""

    algebra: AlgebraDescriptor
    factors: tuple[Generator, ...]

    def __post_init__(self):
        object.__setattr__(self, "factors", tuple(self.factors))
        for f in self.factors:
            if isinstance(f, Quad):
                if f.a.algebra != self.algebra:
                    raise InvalidGenerator("quad generator from a different algebra")
            elif isinstance(f, Congruence):
                if self.algebra.kind != algebra.SYM:
                    raise InvalidGenerator("congruence only acts on symmetric matrices")
                if f.t.shape[0] != self.algebra.param:
                    raise InvalidGenerator("congruence size does not match the algebra")
            elif isinstance(f, Permutation):
                if self.algebra.kind != algebra.ORTHANT:
                    raise InvalidGenerator("permutation only acts on the orthant")
                if len(f.sigma) != self.algebra.param:
                    raise InvalidGenerator("permutation size does not match the algebra")
            elif not isinstance(f, Scalar):
                raise InvalidGenerator(f"unknown generator {f!r}")

    def then(self, other: "AutomorphismWord") -> "AutomorphismWord":
        """The composition: self first, then other."""
        if other.algebra != self.algebra:
            raise AlgebraMismatch("cannot compose words over different algebras")
        return AutomorphismWord(self.algebra, self.factors + other.factors)

    def inverse(self) -> "AutomorphismWord":
        inv = []
        for f in reversed(self.factors):
            if isinstance(f, Scalar):
                inv.append(Scalar(1.0 / f.mu))
            elif isinstance(f, Quad):
                inv.append(Quad(algebra.inverse(f.a)))
            elif isinstance(f, Congruence):
                inv.append(Congruence(np.linalg.inv(f.t)))
            else:
                inv.append(Permutation(tuple(np.argsort(f.sigma))))
        return AutomorphismWord(self.algebra, tuple(inv))

    def describe(self) -> str:
        return "*".join(type(f).__name__.lower() for f in self.factors) or "identity"


def identity_word(descriptor: AlgebraDescriptor) -> AutomorphismWord:
    return AutomorphismWord(descriptor, ())


def apply(word: AutomorphismWord, x: Element) -> Element:
    """Apply the word's generators to x, left to right."""
    if x.algebra != word.algebra:
        raise AlgebraMismatch("element does not live in the word's algebra")
    out = x
    for f in word.factors:
        if isinstance(f, Scalar):
            out = out * f.mu
        elif isinstance(f, Quad):
            out = algebra.quad(f.a, out)
        elif isinstance(f, Congruence):
            out = Element(word.algebra, f.t.T @ out.coords @ f.t)
        else:
            out = Element(word.algebra, out.coords[list(f.sigma)])
    return out


def power_map(x: Element, p: float) -> Element:
    """omega_p: x -> x^p on the open cone."""
    if not algebra.in_cone(x, 0.0):
        raise NotInCone("power map is only defined on the open cone")
    return algebra.power(x, p)


def inversion(x: Element) -> Element:
    """The inversion map x -> x^{-1} (a metric isometry, not a word)."""
    return algebra.inverse(x)


@dataclass(frozen=True)
class ContractionReport:
    samples: int
    max_ratio: float
    min_ratio: float
    p_or_label: str


def random_cone_element(
    descriptor: AlgebraDescriptor,
    rng: SplitMix64,
    lo: float = EIG_LO,
    hi: float = EIG_HI,
) -> Element:
    """Interior point with eigenvalues log-uniform in [lo, hi] on a random frame."""
    if descriptor.kind == algebra.ORTHANT:
        coords = np.array([rng.log_uniform(lo, hi) for _ in range(descriptor.param)])
        return Element(descriptor, coords)
    if descriptor.kind == algebra.SYM:
        r = descriptor.param
        lams = np.array([rng.log_uniform(lo, hi) for _ in range(r)])
        q = rng.rotation(r)
        return Element(descriptor, (q * lams) @ q.T)
    lam1 = rng.log_uniform(lo, hi)
    lam2 = rng.log_uniform(lo, hi)
    u = rng.unit_vector(descriptor.param - 1)
    coords = np.concatenate(([0.5 * (lam1 + lam2)], 0.5 * (lam1 - lam2) * u))
    return Element(descriptor, coords)


def random_word(
    descriptor: AlgebraDescriptor,
    rng: SplitMix64,
    max_len: int = 3,
    lo: float = EIG_LO,
    hi: float = EIG_HI,
) -> AutomorphismWord:
    """Random generator word of length 1..max_len.

    Quad factors draw their eigenvalues (and congruence factors their
    singular values) log-uniform from [lo, hi], which bounds the word's
    conditioning; tighten the interval for gentler words.
    """
    if descriptor.kind == algebra.ORTHANT:
        kinds = ("scalar", "quad", "permutation")
    elif descriptor.kind == algebra.SYM:
        kinds = ("scalar", "quad", "congruence")
    else:
        kinds = ("scalar", "quad")
    factors = []
    for _ in range(1 + rng.integer(max_len)):
        kind = rng.choice(kinds)
        if kind == "scalar":
            factors.append(Scalar(rng.log_uniform(max(lo, 0.2), min(hi, 5.0))))
        elif kind == "quad":
            factors.append(Quad(random_cone_element(descriptor, rng, lo, hi)))
        elif kind == "congruence":
            r = descriptor.param
            svals = np.array([rng.log_uniform(lo, hi) for _ in range(r)])
            t = rng.rotation(r) @ np.diag(svals) @ rng.rotation(r)
            factors.append(Congruence(t))
        else:
            factors.append(Permutation(rng.permutation(descriptor.param)))
    return AutomorphismWord(descriptor, tuple(factors))


def measure_contraction(
    map_fn,
    descriptor: AlgebraDescriptor,
    samples: int,
    seed: int,
    label: str = "map",
) -> ContractionReport:
    """Max (and min) of d(f(x), f(y)) / d(x, y) over seeded random pairs.

    Pairs closer than 1e-8 in the metric are skipped.  Raises MapLeftCone
    if an image fails the cone membership test.
    """
    if samples < 1:
        raise ValueError("samples must be >= 1")
    rng = SplitMix64(seed)
    max_ratio = 0.0
    min_ratio = math.inf
    for _ in range(samples):
        x = random_cone_element(descriptor, rng)
        y = random_cone_element(descriptor, rng)
        dxy = metric.distance(x, y).distance
        if dxy < 1e-8:
            continue
        fx = map_fn(x)
        fy = map_fn(y)
        for image in (fx, fy):
            if not algebra.in_cone(image, 0.0):
                raise MapLeftCone(f"{label} sent a cone point out of the cone")
        ratio = metric.distance(fx, fy).distance / dxy
        max_ratio = max(max_ratio, ratio)
        min_ratio = min(min_ratio, ratio)
    if min_ratio is math.inf:
        min_ratio = 0.0
    return ContractionReport(samples, max_ratio, min_ratio, label)


def isometry_check(
    word: AutomorphismWord, samples: int, seed: int
) -> ContractionReport:
    """Contraction report for a word; ratios should sit at 1 for isometries."""
    return measure_contraction(
        lambda x: apply(word, x),
        word.algebra,
        samples,
        seed,
        label=word.describe(),
    )
