import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from qpartsep import statelib
from qpartsep.partition import enumerate_partitions, enumerate_subsplits, parse_label
from qpartsep.qstate import DimensionMismatch, NotNormalized, bits_index, hermitian_eigenvalues, pure_density, validate_density
from qpartsep.reduction import basis_strings, mixture_of_terms, reduce, reduce_pure, submatrix
from conftest import partitions, seeds

# basis strings picked out by each AC|BD sub-split, in enumeration order
AC_BD_ROWS = {
    "tri": ["0000", "0101", "1010", "1111"],
    "times": ["0001", "0100", "1011", "1110"],
    "star": ["0010", "0111", "1000", "1101"],
    "wedge": ["0011", "0110", "1001", "1100"],
}

SWAP = np.eye(4)[[0, 2, 1, 3]]


def strings(bitstrings):
    return [int(b, 2) for b in bitstrings]


def test_second_ac_bd_submatrix_rows():
    p = parse_label("AC|BD")
    ss = enumerate_subsplits(p)[1]
    assert ss.label == "[(AC),∅]||[(B),(D)]"
    assert list(basis_strings(ss)) == strings(["0001", "0100", "1011", "1110"])
    rho = statelib.random_mixed(4, 5, 3)
    x = strings(["0001", "0100", "1011", "1110"])
    expected = np.array([[rho.mat[a, b] for b in x] for a in x])
    np.testing.assert_array_equal(submatrix(rho, ss), expected)


def test_ac_bd_row_sets():
    subs = enumerate_subsplits(parse_label("AC|BD"))
    got = [sorted(basis_strings(ss)) for ss in subs]
    assert got == [sorted(strings(AC_BD_ROWS[k])) for k in ("tri", "times", "star", "wedge")]


def test_bit_rule_by_hand():
    # [(A),(C)]||[(B),(D)]: x = i j (1-i) (1-j)
    ss = enumerate_subsplits(parse_label("AC|BD"))[3]
    for i in (0, 1):
        for j in (0, 1):
            assert basis_strings(ss)[2 * i + j] == bits_index((i, j, 1 - i, 1 - j))


def test_maximally_mixed_submatrix():
    rho = validate_density(np.eye(16) / 16, 4)
    for ss in enumerate_subsplits(parse_label("AB|CD")):
        np.testing.assert_array_equal(submatrix(rho, ss), np.eye(4) / 16)


def test_ghz_submatrix():
    rho = pure_density(statelib.ghz(3))
    ss = enumerate_subsplits(parse_label("A|BC"))[0]
    expected = np.zeros((4, 4))
    expected[np.ix_([0, 3], [0, 3])] = 0.5
    np.testing.assert_allclose(submatrix(rho, ss), expected, atol=1e-15)


@pytest.mark.parametrize("n", range(2, 9))
def test_string_sets_tile_basis(n):
    for p in enumerate_partitions(n):
        all_strings = np.concatenate([basis_strings(ss) for ss in enumerate_subsplits(p)])
        assert sorted(all_strings) == list(range(2**n))


def test_werner_from_example_prime():
    for x in np.linspace(0, 1, 11):
        rs = reduce(statelib.example_prime(x), parse_label("A|BC"))
        np.testing.assert_allclose(rs.mat, statelib.werner(x).mat, atol=1e-15, rtol=0)


def test_two_qubit_reduction_is_identity():
    rho = statelib.random_mixed(2, 4, 11)
    np.testing.assert_array_equal(reduce(rho, parse_label("A|B")).mat, rho.mat)


@pytest.mark.parametrize("n", [2, 3, 5])
def test_maximally_mixed_reduces_to_maximally_mixed(n):
    rho = validate_density(np.eye(2**n) / 2**n, n)
    for p in enumerate_partitions(n):
        np.testing.assert_allclose(reduce(rho, p).mat, np.eye(4) / 4, atol=1e-15)


def test_ghz_reduces_to_bell():
    bell = np.zeros((4, 4))
    bell[np.ix_([0, 3], [0, 3])] = 0.5
    rho = pure_density(statelib.ghz(3))
    for p in enumerate_partitions(3):
        np.testing.assert_allclose(reduce(rho, p).mat, bell, atol=1e-15)


def test_reduce_dimension_mismatch():
    with pytest.raises(DimensionMismatch):
        reduce(statelib.random_mixed(3, 1, 0), parse_label("A|BCD"))


@settings(max_examples=50, deadline=None)
@given(p=partitions(max_n=6), seed=seeds, rank=st.integers(1, 8))
def test_reduction_is_a_state(p, seed, rank):
    rho = statelib.random_mixed(p.n, min(rank, 2**p.n), seed)
    m = reduce(rho, p).mat
    assert np.max(np.abs(m - m.conj().T)) <= 1e-12
    assert abs(np.trace(m) - 1) <= 1e-12
    assert hermitian_eigenvalues(m)[0] >= -1e-9


@settings(max_examples=30, deadline=None)
@given(p=partitions(max_n=5), seeds=st.tuples(seeds, seeds), alpha=st.floats(0, 1))
def test_linearity(p, seeds, alpha):
    r1 = statelib.random_mixed(p.n, 2, seeds[0])
    r2 = statelib.random_mixed(p.n, 3, seeds[1])
    mix = validate_density(alpha * r1.mat + (1 - alpha) * r2.mat, p.n)
    lhs = reduce(mix, p).mat
    rhs = alpha * reduce(r1, p).mat + (1 - alpha) * reduce(r2, p).mat
    np.testing.assert_allclose(lhs, rhs, atol=1e-12, rtol=0)


@settings(max_examples=40, deadline=None)
@given(p=partitions(min_n=3, max_n=6), seed=seeds)
def test_swapped_blocks(p, seed):
    rho = statelib.random_mixed(p.n, 3, seed)
    a = reduce(rho, p).mat
    b = reduce(rho, p.swapped()).mat
    np.testing.assert_allclose(b, SWAP @ a @ SWAP, atol=1e-15, rtol=0)
    np.testing.assert_allclose(hermitian_eigenvalues(a), hermitian_eigenvalues(b), atol=1e-9)


# -- pure-state decomposition -------------------------------------------

def test_ghz_pure_terms():
    terms = reduce_pure(statelib.ghz(3), parse_label("A|BC"))
    assert [t.weight for t in terms] == pytest.approx([1.0, 0.0])
    assert terms[1].is_zero and not terms[0].is_zero
    np.testing.assert_allclose(terms[0].state, [2**-0.5, 0, 0, 2**-0.5])


def test_basis_state_single_term():
    for label in ("A|BC", "AC|BD", "B|ACDE"):
        p = parse_label(label)
        terms = reduce_pure(statelib.basis_product([0] * p.n), p)
        assert [t.weight for t in terms] == [1.0] + [0.0] * (len(terms) - 1)
        np.testing.assert_array_equal(terms[0].state, [1, 0, 0, 0])


def test_ac_bd_components_by_hand():
    psi = statelib.random_pure(4, 99)
    c = psi.reshape(2, 2, 2, 2)  # c[i, j, k, l] for |i_A j_B k_C l_D>
    expected = {
        "tri": [c[i, j, i, j] for i in (0, 1) for j in (0, 1)],
        "times": [c[i, j, i, 1 - j] for i in (0, 1) for j in (0, 1)],
        "star": [c[i, j, 1 - i, j] for i in (0, 1) for j in (0, 1)],
        "wedge": [c[i, j, 1 - i, 1 - j] for i in (0, 1) for j in (0, 1)],
    }
    terms = reduce_pure(psi, parse_label("AC|BD"))
    for t, key in zip(terms, ("tri", "times", "star", "wedge")):
        phi = np.array(expected[key])
        assert t.weight == pytest.approx(np.vdot(phi, phi).real, abs=1e-15)
        np.testing.assert_allclose(np.sqrt(t.weight) * t.state, phi, atol=1e-15)
    assert sum(t.weight for t in terms) == pytest.approx(1.0, abs=1e-12)


def test_reduce_pure_rejects_unnormalized():
    with pytest.raises(NotNormalized):
        reduce_pure(2 * statelib.ghz(3), parse_label("A|BC"))
    with pytest.raises(DimensionMismatch):
        reduce_pure(statelib.ghz(4), parse_label("A|BC"))


@settings(max_examples=50, deadline=None)
@given(p=partitions(min_n=3, max_n=6), seed=seeds)
def test_pure_terms_sum_to_reduction(p, seed):
    psi = statelib.random_pure(p.n, seed)
    terms = reduce_pure(psi, p)
    assert len(terms) == 2 ** (p.n - 2)
    assert abs(sum(t.weight for t in terms) - 1) <= 1e-12
    np.testing.assert_allclose(mixture_of_terms(terms), reduce(pure_density(psi), p).mat, atol=1e-12, rtol=0)
