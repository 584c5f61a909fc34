import itertools

import mpmath
import numpy as np
import pytest
import sympy
from hypothesis import given, settings
from hypothesis import strategies as st

from qpartsep import statelib
from qpartsep.ppt import partial_transpose
from qpartsep.qstate import (
    DEFAULT_TOL,
    DimensionMismatch,
    NoConvergence,
    NotHermitian,
    NotPositive,
    TraceNotOne,
    Tolerances,
    bits_index,
    conj_transpose,
    hermitian_eigenvalues,
    index_bits,
    kron,
    mat_mul,
    validate_density,
)
from conftest import random_hermitian, random_permutation_matrix, seeds


def charpoly_roots(h_exact):
    """Eigenvalues as roots of det(H - lambda I), expanded exactly by sympy."""
    lam = sympy.Symbol("lam")
    coeffs = sympy.Poly(h_exact.charpoly(lam).as_expr(), lam).all_coeffs()
    mpmath.mp.dps = 40
    roots = mpmath.polyroots([mpmath.mpc(complex(sympy.N(c, 50))) for c in coeffs], maxsteps=200, extraprec=200)
    return sorted(float(mpmath.re(r)) for r in roots)


def test_maximally_mixed_is_valid():
    rho = validate_density(np.eye(8) / 8, 3)
    np.testing.assert_allclose(rho.eigenvalues(), [1 / 8] * 8, atol=1e-15)


def test_example_state_is_valid():
    validate_density(statelib.example_prime(0.5).mat, 3)


def test_negative_eigenvalue_rejected():
    m = np.diag([1.0, 0.0, 0.0001, -0.0001])
    with pytest.raises(NotPositive) as info:
        validate_density(m, 2, Tolerances(psd_tol=1e-10))
    assert info.value.min_eigenvalue == pytest.approx(-1e-4)


@pytest.mark.parametrize(
    ("mat", "n", "exc"),
    [
        (np.eye(4) / 4, 3, DimensionMismatch),
        (np.eye(3) / 3, 2, DimensionMismatch),
        (np.array([[0.5, 0.1], [0.2, 0.5]]), 1, NotHermitian),
        (np.eye(2), 1, TraceNotOne),
        (np.diag([1.2, -0.2]), 1, NotPositive),
    ],
)
def test_first_violated_check_is_named(mat, n, exc):
    with pytest.raises(exc):
        validate_density(mat, n)


def test_checks_in_order():
    # not Hermitian and wrong trace: Hermiticity is reported
    with pytest.raises(NotHermitian):
        validate_density(np.array([[1.0, 1.0], [0.0, 1.0]]), 1)


def test_identity_and_kron():
    x = np.array([[1, 2j], [3, 4]])
    np.testing.assert_array_equal(mat_mul(np.eye(2), x), x)
    np.testing.assert_array_equal(kron(np.diag([1, 0]), np.diag([1, 0])), np.diag([1, 0, 0, 0]))
    with pytest.raises(DimensionMismatch):
        mat_mul(np.eye(2), np.eye(4))


def test_kron_of_pure_factors_matches_product_vector(rng):
    psi_ac = rng.normal(size=4) + 1j * rng.normal(size=4)
    psi_bd = rng.normal(size=4) + 1j * rng.normal(size=4)
    psi_ac /= np.linalg.norm(psi_ac)
    psi_bd /= np.linalg.norm(psi_bd)
    rho_ac = np.outer(psi_ac, psi_ac.conj())
    rho_bd = np.outer(psi_bd, psi_bd.conj())
    v = np.kron(psi_ac, psi_bd)
    np.testing.assert_allclose(kron(rho_ac, rho_bd), np.outer(v, v.conj()), atol=1e-15)
    # block convention: entry ((a,b),(c,d)) = rho_ac[a,c] * rho_bd[b,d]
    k = kron(rho_ac, rho_bd)
    for a, b, c, d in itertools.product(range(4), repeat=4):
        assert k[4 * a + b, 4 * c + d] == pytest.approx(rho_ac[a, c] * rho_bd[b, d], abs=1e-15)


def test_bit_convention():
    assert index_bits(0b100, 3) == (1, 0, 0)
    assert bits_index((0, 0, 0, 1)) == 1
    assert bits_index((1, 0, 1, 1)) == 11


@given(st.integers(1, 12).flatmap(lambda n: st.tuples(st.just(n), st.integers(0, 2**n - 1))))
def test_bits_round_trip(case):
    n, v = case
    assert bits_index(index_bits(v, n)) == v


def test_diagonal_eigenvalues():
    np.testing.assert_array_equal(hermitian_eigenvalues(np.diag([3.0, 1.0, 2.0])), [1.0, 2.0, 3.0])


def test_singlet_partial_transpose_eigenvalue():
    # closed form: PT(werner(x)) has eigenvalues (1-3x)/4 and (1+x)/4 (x3)
    for x in (0.0, 0.3, 1.0):
        eigs = hermitian_eigenvalues(partial_transpose(statelib.werner(x).mat))
        np.testing.assert_allclose(eigs, sorted([(1 - 3 * x) / 4] + [(1 + x) / 4] * 3), atol=1e-14)
    assert hermitian_eigenvalues(partial_transpose(statelib.werner(1.0).mat))[0] == pytest.approx(-0.5, abs=1e-14)


@pytest.mark.parametrize("seed", range(10))
def test_eigenvalues_match_characteristic_polynomial(seed):
    rng = np.random.default_rng(seed)
    re = rng.integers(-5, 6, size=(4, 4))
    im = rng.integers(-5, 6, size=(4, 4))
    exact = sympy.zeros(4, 4)
    for a in range(4):
        exact[a, a] = sympy.Rational(int(re[a, a]), 7)
        for b in range(a + 1, 4):
            z = sympy.Rational(int(re[a, b]), 7) + sympy.I * sympy.Rational(int(im[a, b]), 7)
            exact[a, b] = z
            exact[b, a] = sympy.conjugate(z)
    h = np.array(exact.evalf(30).tolist(), dtype=complex)
    np.testing.assert_allclose(hermitian_eigenvalues(h), charpoly_roots(exact), atol=1e-9)


def test_not_hermitian_and_no_convergence():
    with pytest.raises(NotHermitian):
        hermitian_eigenvalues(np.array([[0, 1], [0, 0]]))
    with pytest.raises(NoConvergence):
        # unreachable target forces the sweep cap
        hermitian_eigenvalues(np.array([[1.0, 1.0], [1.0, 0.0]]), Tolerances(eig_tol=0.0))


@settings(max_examples=40, deadline=None)
@given(n=st.integers(1, 4), rank=st.integers(1, 16), seed=seeds)
def test_spectrum_of_valid_state_in_unit_interval(n, rank, seed):
    rho = statelib.random_mixed(n, min(rank, 2**n), seed)
    eigs = rho.eigenvalues()
    assert eigs[0] >= -DEFAULT_TOL.psd_tol
    assert eigs[-1] <= 1 + DEFAULT_TOL.psd_tol
    assert abs(eigs.sum() - 1) <= 2**n * DEFAULT_TOL.eig_tol + 1e-13


@settings(max_examples=30, deadline=None)
@given(dim=st.sampled_from([2, 4, 8, 16]), seed=seeds)
def test_permutation_algebra(dim, seed):
    rng = np.random.default_rng(seed)
    u = random_permutation_matrix(rng, dim)
    np.testing.assert_array_equal(conj_transpose(conj_transpose(u)), u)
    np.testing.assert_allclose(mat_mul(u, conj_transpose(u)), np.eye(dim), atol=1e-12)
    h = random_hermitian(rng, dim)
    np.testing.assert_allclose(hermitian_eigenvalues(u @ h @ u.conj().T), hermitian_eigenvalues(h), atol=1e-9)


@settings(max_examples=30, deadline=None)
@given(dims=st.tuples(*[st.integers(1, 3)] * 3), seed=seeds)
def test_kron_associative(dims, seed):
    rng = np.random.default_rng(seed)
    a, b, c = (rng.normal(size=(d, d)) + 1j * rng.normal(size=(d, d)) for d in dims)
    np.testing.assert_allclose(kron(kron(a, b), c), kron(a, kron(b, c)), rtol=0, atol=1e-13)


def test_density_matrix_is_read_only():
    rho = validate_density(np.eye(2) / 2, 1)
    with pytest.raises(ValueError):
        rho.mat[0, 0] = 1


def test_tolerances_must_be_nonnegative():
    with pytest.raises(ValueError):
        Tolerances(psd_tol=-1)
