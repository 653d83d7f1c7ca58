import math

import numpy as np
import pytest

import symcone as sc
from symcone.algebra import _jacobi
from symcone.errors import AlgebraMismatch, EigensolverFailure, NotInCone
from symcone.rng import SplitMix64
from symcone.transforms import random_cone_element

from conftest import el

O2 = sc.orthant(2)
S2 = sc.sym_matrix(2)
P3 = sc.spin_factor(3)


# ---------------------------------------------------------------------------
# descriptors and elements
# ---------------------------------------------------------------------------

def test_descriptor_basics():
    assert sc.orthant(4).rank == 4 and sc.orthant(4).dim == 4
    assert sc.sym_matrix(3).rank == 3 and sc.sym_matrix(3).dim == 6
    assert sc.spin_factor(7).rank == 2 and sc.spin_factor(7).dim == 7
    assert np.array_equal(sc.orthant(3).identity().coords, [1, 1, 1])
    assert np.array_equal(sc.sym_matrix(2).identity().coords, np.eye(2))
    assert np.array_equal(sc.spin_factor(3).identity().coords, [1, 0, 0])


def test_descriptor_validation():
    with pytest.raises(ValueError):
        sc.AlgebraDescriptor("cube", 3)
    with pytest.raises(ValueError):
        sc.orthant(0)
    with pytest.raises(ValueError):
        sc.spin_factor(1)


def test_element_symmetrizes_on_ingestion():
    tiny = 1e-14
    x = el(S2, [[1.0, 2.0 + tiny], [2.0, 3.0]])
    assert x.coords[0, 1] == x.coords[1, 0]
    with pytest.raises(ValueError):
        el(S2, [[1.0, 2.0], [2.1, 3.0]])
    with pytest.raises(ValueError):
        el(O2, [1.0, 2.0, 3.0])


def test_element_coords_frozen():
    x = el(O2, [1.0, 2.0])
    with pytest.raises(ValueError):
        x.coords[0] = 5.0


# ---------------------------------------------------------------------------
# product / quad
# ---------------------------------------------------------------------------

def test_product_orthant():
    assert np.array_equal(sc.product(el(O2, [1, 2]), el(O2, [3, 4])).coords, [3, 8])


def test_product_sym_matches_matrix_arithmetic():
    x = el(S2, [[1, 0], [0, 2]])
    y = el(S2, [[0, 1], [1, 0]])
    expected = (x.coords @ y.coords + y.coords @ x.coords) / 2
    got = sc.product(x, y).coords
    np.testing.assert_allclose(got, expected, atol=0)
    np.testing.assert_allclose(got, [[0, 1.5], [1.5, 0]], atol=0)


def test_product_spin():
    x = el(P3, [2, 1, 0])
    y = el(P3, [1, 0, 1])
    np.testing.assert_allclose(sc.product(x, y).coords, [2, 1, 2], atol=0)


def test_product_algebra_mismatch():
    with pytest.raises(AlgebraMismatch):
        sc.product(el(O2, [1, 2]), el(sc.orthant(3), [1, 2, 3]))


def test_quad_sym_closed_form():
    x = el(S2, [[1, 0], [0, 2]])
    y = el(S2, [[0, 1], [1, 0]])
    np.testing.assert_allclose(sc.quad(x, y).coords, x.coords @ y.coords @ x.coords,
                               atol=1e-14)
    np.testing.assert_allclose(sc.quad(x, y).coords, [[0, 2], [2, 0]], atol=1e-14)


def test_quad_identity_and_orthant(small_algebra):
    rng = SplitMix64(11)
    y = random_cone_element(small_algebra, rng) - 0.5 * small_algebra.identity()
    e = small_algebra.identity()
    np.testing.assert_allclose(sc.quad(e, y).coords, y.coords, atol=1e-14)
    x = el(O2, [2, 3])
    np.testing.assert_allclose(sc.quad(x, el(O2, [1, 1])).coords, [4, 9], atol=0)


def test_quad_matches_sym_congruence_on_random_pairs():
    r = 4
    s = sc.sym_matrix(r)
    rng = SplitMix64(5)
    for _ in range(500):
        a = rng.normal_matrix(r, r)
        b = rng.normal_matrix(r, r)
        x = sc.Element(s, (a + a.T) / 2)
        y = sc.Element(s, (b + b.T) / 2)
        lhs = sc.quad(x, y).coords
        rhs = x.coords @ y.coords @ x.coords
        assert np.max(np.abs(lhs - rhs)) <= 1e-12 * (1 + np.max(np.abs(rhs)))


# ---------------------------------------------------------------------------
# spectral decomposition
# ---------------------------------------------------------------------------

def test_spectral_orthant_order():
    dec = sc.spectral_decompose(el(sc.orthant(3), [3, 1, 2]))
    np.testing.assert_allclose(dec.eigenvalues, [3, 2, 1], atol=0)
    np.testing.assert_allclose(dec.frame[0].coords, [1, 0, 0], atol=0)
    np.testing.assert_allclose(dec.frame[1].coords, [0, 0, 1], atol=0)
    np.testing.assert_allclose(dec.frame[2].coords, [0, 1, 0], atol=0)


def test_spectral_spin_closed_form():
    dec = sc.spectral_decompose(el(P3, [2, 1, 0]))
    np.testing.assert_allclose(dec.eigenvalues, [3, 1], atol=1e-15)
    np.testing.assert_allclose(dec.frame[0].coords, [0.5, 0.5, 0], atol=1e-15)
    np.testing.assert_allclose(dec.frame[1].coords, [0.5, -0.5, 0], atol=1e-15)


def test_spectral_spin_degenerate_tiebreak():
    dec = sc.spectral_decompose(el(P3, [2, 0, 0]))
    np.testing.assert_allclose(dec.eigenvalues, [2, 2], atol=0)
    np.testing.assert_allclose(dec.frame[0].coords, [0.5, 0.5, 0], atol=0)
    np.testing.assert_allclose(dec.frame[1].coords, [0.5, -0.5, 0], atol=0)


def test_spectral_sym_hand_case():
    dec = sc.spectral_decompose(el(S2, [[2, 1], [1, 2]]))
    np.testing.assert_allclose(dec.eigenvalues, [3, 1], atol=1e-14)
    proj = np.full((2, 2), 0.5)
    np.testing.assert_allclose(dec.frame[0].coords, proj, atol=1e-14)
    np.testing.assert_allclose(dec.frame[1].coords, [[0.5, -0.5], [-0.5, 0.5]],
                               atol=1e-14)


def _check_decomposition(x, tol=1e-10):
    dec = sc.spectral_decompose(x)
    alg = x.algebra
    assert len(dec.frame) == alg.rank
    assert np.all(np.diff(dec.eigenvalues) <= 1e-15)
    total = alg.zero()
    for i, c in enumerate(dec.frame):
        assert sc.spectral_norm(sc.product(c, c) - c) <= tol
        assert abs(sc.tr(c) - 1.0) <= tol
        for d in dec.frame[i + 1:]:
            assert sc.spectral_norm(sc.product(c, d)) <= tol
        total = total + c
    assert sc.spectral_norm(total - alg.identity()) <= tol
    err = sc.spectral_norm(dec.reconstruct() - x)
    assert err <= tol * (1 + sc.spectral_norm(x))


def test_decomposition_invariants(small_algebra):
    rng = SplitMix64(23)
    for _ in range(100):
        _check_decomposition(random_cone_element(small_algebra, rng))
    # points outside the cone as well
    for _ in range(100):
        x = random_cone_element(small_algebra, rng) - 1.5 * small_algebra.identity()
        _check_decomposition(x)


def test_decomposition_degenerate_eigenvalues():
    _check_decomposition(el(sc.sym_matrix(3), np.diag([2.0, 2.0, 1.0])))
    _check_decomposition(sc.sym_matrix(4).identity())
    _check_decomposition(el(sc.spin_factor(4), [3, 0, 0, 0]))


def test_decomposition_deterministic():
    rng = SplitMix64(9)
    x = random_cone_element(sc.sym_matrix(5), rng)
    d1 = sc.spectral_decompose(x)
    d2 = sc.spectral_decompose(x)
    assert np.array_equal(d1.eigenvalues, d2.eigenvalues)
    for c1, c2 in zip(d1.frame, d2.frame):
        assert np.array_equal(c1.coords, c2.coords)


def test_eigensolver_failure_on_nan():
    nan = float("nan")
    x = el(sc.sym_matrix(3), [[1.0, nan, nan], [nan, 1.0, nan], [nan, nan, 1.0]])
    with pytest.raises(EigensolverFailure):
        sc.spectral_decompose(x)


# ---------------------------------------------------------------------------
# power / inverse
# ---------------------------------------------------------------------------

def test_power_examples():
    np.testing.assert_allclose(sc.power(el(O2, [4, 9]), 0.5).coords, [2, 3],
                               atol=1e-15)
    e = sc.sym_matrix(3).identity()
    for p in (-2.0, -0.5, 0.0, 0.5, 3.0):
        np.testing.assert_allclose(sc.power(e, p).coords, np.eye(3), atol=1e-14)
    np.testing.assert_allclose(
        sc.power(el(S2, [[1, 0], [0, 4]]), -1.0).coords,
        [[1, 0], [0, 0.25]], atol=1e-14)


def test_power_short_circuits():
    x = el(O2, [2, 5])
    assert sc.power(x, 1.0) is x
    np.testing.assert_allclose(sc.power(x, 0.0).coords, [1, 1], atol=0)


def test_power_polynomial_calculus_outside_cone():
    x = el(O2, [-2, 3])
    np.testing.assert_allclose(sc.power(x, 3).coords, [-8, 27], atol=1e-12)
    with pytest.raises(NotInCone):
        sc.power(x, 0.5)
    with pytest.raises(NotInCone):
        sc.power(x, -1)


def test_power_roundtrip(small_algebra):
    rng = SplitMix64(31)
    for p in (-3.0, -2.0, -0.5, 0.5, 2.0, 3.0):
        for _ in range(25):
            x = random_cone_element(small_algebra, rng)
            back = sc.power(sc.power(x, p), 1.0 / p)
            assert sc.spectral_norm(back - x) <= 1e-8 * (1 + sc.spectral_norm(x))


def test_sym_power_vs_eigh_functional_calculus():
    s4 = sc.sym_matrix(4)
    rng = SplitMix64(37)
    for p in (-1.0, -0.5, 0.5, 2.0):
        for _ in range(25):
            x = random_cone_element(s4, rng)
            lam, vecs = np.linalg.eigh(x.coords)
            ref = (vecs * lam ** p) @ vecs.T
            got = sc.power(x, p).coords
            assert np.max(np.abs(got - ref)) <= 1e-10 * (1 + np.max(np.abs(ref)))


def test_inverse():
    np.testing.assert_allclose(sc.inverse(el(O2, [2, 4])).coords, [0.5, 0.25],
                               atol=1e-15)
    np.testing.assert_allclose(sc.inverse(P3.identity()).coords, [1, 0, 0],
                               atol=1e-15)
    np.testing.assert_allclose(sc.inverse(el(P3, [2, 1, 0])).coords,
                               [2 / 3, -1 / 3, 0], atol=1e-14)


def test_inverse_involution(small_algebra):
    rng = SplitMix64(47)
    for _ in range(50):
        x = random_cone_element(small_algebra, rng)
        assert sc.spectral_norm(sc.inverse(sc.inverse(x)) - x) <= 1e-10 * (
            1 + sc.spectral_norm(x))


# ---------------------------------------------------------------------------
# det / tr / spectral norm / cone membership
# ---------------------------------------------------------------------------

def test_det_tr_examples():
    x = el(sc.orthant(3), [3, 1, 2])
    assert sc.det(x) == 6 and sc.tr(x) == 6
    y = el(S2, [[2, 1], [1, 2]])
    assert abs(sc.det(y) - 3) <= 1e-12 and sc.tr(y) == 4
    z = el(P3, [2, 1, 0])
    assert sc.det(z) == 3 and sc.tr(z) == 4


def test_sym_det_tr_match_matrix_oracle():
    r = 5
    s = sc.sym_matrix(r)
    rng = SplitMix64(3)
    for _ in range(200):
        m = rng.normal_matrix(r, r)
        x = sc.Element(s, (m + m.T) / 2)
        ref_det = float(np.linalg.det(x.coords))
        ref_tr = float(np.trace(x.coords))
        assert abs(sc.det(x) - ref_det) <= 1e-10 * (1 + abs(ref_det))
        assert abs(sc.tr(x) - ref_tr) <= 1e-10 * (1 + abs(ref_tr))


def test_spectral_norm_examples():
    assert sc.spectral_norm(el(sc.orthant(3), [3, -5, 2])) == 5
    assert sc.spectral_norm(S2.identity()) == 1
    assert abs(sc.spectral_norm(el(S2, [[2, 1], [1, 2]])) - 3) <= 1e-14


def test_in_cone():
    assert sc.in_cone(el(O2, [1, 2]))
    assert not sc.in_cone(el(O2, [1, 0]))
    assert not sc.in_cone(el(P3, [1, 1, 0]))
    assert sc.in_cone(el(O2, [1, 2]), margin=0.5)
    assert not sc.in_cone(el(O2, [1, 2]), margin=1.0)
    with pytest.raises(ValueError):
        sc.in_cone(el(O2, [1, 2]), margin=-1.0)


# ---------------------------------------------------------------------------
# algebra axioms and identities
# ---------------------------------------------------------------------------

def _random_ambient(descriptor, rng):
    x = random_cone_element(descriptor, rng)
    return x - rng.uniform_in(0.0, 2.0) * descriptor.identity()


@pytest.mark.parametrize("descriptor", [sc.orthant(8), sc.sym_matrix(7),
                                        sc.spin_factor(8)])
def test_jordan_axioms(descriptor):
    rng = SplitMix64(101)
    for _ in range(1000):
        x = _random_ambient(descriptor, rng)
        y = _random_ambient(descriptor, rng)
        z = _random_ambient(descriptor, rng)
        scale = (1 + sc.spectral_norm(x)) * (1 + sc.spectral_norm(y)) * (
            1 + sc.spectral_norm(z))
        assert sc.spectral_norm(sc.product(x, y) - sc.product(y, x)) <= 1e-12
        xx = sc.product(x, x)
        lhs = sc.product(x, sc.product(xx, y))
        rhs = sc.product(xx, sc.product(x, y))
        assert sc.spectral_norm(lhs - rhs) <= 1e-10 * scale
        assoc = sc.trace_inner(sc.product(x, y), z) - sc.trace_inner(
            y, sc.product(x, z))
        assert abs(assoc) <= 1e-10 * scale


def test_quad_self_adjoint_in_trace_form(small_algebra):
    rng = SplitMix64(83)
    for _ in range(100):
        x = _random_ambient(small_algebra, rng)
        y = _random_ambient(small_algebra, rng)
        z = _random_ambient(small_algebra, rng)
        scale = (1 + sc.spectral_norm(x)) ** 2 * (1 + sc.spectral_norm(y)) * (
            1 + sc.spectral_norm(z))
        gap = sc.trace_inner(sc.quad(x, y), z) - sc.trace_inner(y, sc.quad(x, z))
        assert abs(gap) <= 1e-10 * scale


def test_det_of_quad_identity(small_algebra):
    rng = SplitMix64(77)
    for _ in range(100):
        a = random_cone_element(small_algebra, rng)
        x = random_cone_element(small_algebra, rng)
        lhs = sc.det(sc.quad(a, x))
        rhs = sc.det(a) ** 2 * sc.det(x)
        assert abs(lhs - rhs) <= 1e-8 * (1 + abs(rhs))


def test_edge_ranks():
    # spin with a 1-dim vector block and a 1x1 matrix algebra
    p2 = sc.spin_factor(2)
    x = el(p2, [3.0, 1.0])
    dec = sc.spectral_decompose(x)
    np.testing.assert_allclose(dec.eigenvalues, [4, 2], atol=0)
    assert sc.spectral_norm(dec.reconstruct() - x) <= 1e-14
    np.testing.assert_allclose(sc.inverse(x).coords, [3 / 8, -1 / 8],
                               atol=1e-15)
    s1 = sc.sym_matrix(1)
    y = el(s1, [[4.0]])
    assert sc.det(y) == 4.0 and sc.tr(y) == 4.0
    np.testing.assert_allclose(sc.power(y, 0.5).coords, [[2.0]], atol=0)
    rng = SplitMix64(99)
    z = random_cone_element(p2, rng)
    assert sc.in_cone(z)


def test_jacobi_against_numpy_eigh():
    rng = SplitMix64(13)
    for r in (2, 3, 6, 9):
        for _ in range(20):
            m = rng.normal_matrix(r, r)
            m = (m + m.T) / 2
            diag, vecs = _jacobi(m, accumulate=True)
            ref = np.linalg.eigvalsh(m)
            assert np.max(np.abs(np.sort(diag) - ref)) <= 1e-12 * (1 + np.max(np.abs(ref)))
            recon = (vecs * diag) @ vecs.T
            assert np.max(np.abs(recon - m)) <= 1e-12 * (1 + np.max(np.abs(m)))
