import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from isom4.errors import InvalidInputError, InvalidParametersError
from isom4.snf import (
    det_exact,
    kernel_mod_p,
    kernel_mod_prime_power,
    module_presentation_local,
    rank_mod_p,
    rref_mod_p,
    smith_normal_form,
    solve_mod_prime_power,
)

int_matrices = st.integers(min_value=1, max_value=6).flatmap(
    lambda m: st.integers(min_value=1, max_value=6).flatmap(
        lambda n: st.lists(
            st.lists(st.integers(min_value=-50, max_value=50),
                     min_size=n, max_size=n),
            min_size=m, max_size=m)))


@given(int_matrices)
def test_snf_identity_exact(rows):
    a = np.array(rows, dtype=object)
    d, u, v = smith_normal_form(rows)
    assert (u @ a @ v == d).all()
    # unimodular transforms
    assert abs(det_exact(u)) == 1
    assert abs(det_exact(v)) == 1


@given(int_matrices)
def test_snf_divisibility_chain(rows):
    d, _, _ = smith_normal_form(rows)
    diag = [int(d[i, i]) for i in range(min(d.shape))]
    assert all(x >= 0 for x in diag)
    for a, b in zip(diag, diag[1:]):
        if a != 0:
            assert b % a == 0
        else:
            assert b == 0


def test_snf_known_matrix():
    d, _, _ = smith_normal_form([[2, 4, 4], [-6, 6, 12], [10, 4, 16]])
    assert [int(d[i, i]) for i in range(3)] == [2, 2, 156]


def test_det_exact_no_overflow():
    a = [[10**9, 1], [1, 10**9]]
    assert det_exact(a) == 10**18 - 1


@given(int_matrices, st.sampled_from([2, 3, 5, 7]))
def test_kernel_mod_p(rows, p):
    a = np.array(rows, dtype=np.int64)
    ker = kernel_mod_p(a, p)
    assert ker.shape[0] == a.shape[1]
    assert np.all((a.astype(object) @ ker.astype(object)) % p == 0)
    # completeness: rank-nullity over the field
    assert ker.shape[1] == a.shape[1] - rank_mod_p(a, p)


@given(int_matrices, st.sampled_from([(2, 3), (3, 2), (5, 2)]))
def test_kernel_mod_prime_power(rows, pk):
    p, k = pk
    a = np.array(rows, dtype=np.int64)
    gens = kernel_mod_prime_power(a, p, k)
    mod = p**k
    assert np.all((a.astype(object) @ gens.astype(object)) % mod == 0)


def test_kernel_mod_prime_power_counts_solutions():
    # brute force over (Z/8)^2 for a small matrix
    a = np.array([[2, 4], [0, 4]], dtype=np.int64)
    gens = kernel_mod_prime_power(a, 2, 3)
    spanned = {(0, 0)}
    frontier = [(0, 0)]
    cols = [tuple(int(x) % 8 for x in gens[:, j]) for j in range(gens.shape[1])]
    while frontier:
        base = frontier.pop()
        for col in cols:
            nxt = tuple((b + c) % 8 for b, c in zip(base, col))
            if nxt not in spanned:
                spanned.add(nxt)
                frontier.append(nxt)
    truth = {(x, y) for x in range(8) for y in range(8)
             if (2 * x + 4 * y) % 8 == 0 and (4 * y) % 8 == 0}
    assert spanned == truth


@given(int_matrices, st.sampled_from([(2, 2), (3, 2)]))
def test_solve_mod_prime_power_on_images(rows, pk):
    p, k = pk
    a = np.array(rows, dtype=np.int64)
    mod = p**k
    x_true = np.arange(a.shape[1], dtype=np.int64) % mod
    b = (a @ x_true) % mod
    x = solve_mod_prime_power(a, b, p, k)
    assert x is not None
    assert np.all((a.astype(object) @ x.astype(object) - b) % mod == 0)


def test_solve_mod_prime_power_detects_no_solution():
    assert solve_mod_prime_power([[2]], [1], 2, 2) is None


def test_rref_mod_p_is_idempotent():
    a = np.array([[2, 1, 0], [4, 2, 1]], dtype=np.int64)
    r1, piv1 = rref_mod_p(a, 5)
    r2, piv2 = rref_mod_p(r1, 5)
    assert np.array_equal(r1, r2)
    assert piv1 == piv2


def test_module_presentation_cyclic_factors():
    # (Z/9)^2 modulo the column (3, 3): factors 3 and 9
    orders, gens = module_presentation_local(np.array([[3], [3]]), 3, 2)
    assert sorted(orders) == [3, 9]
    assert gens.shape[0] == 2


def test_module_presentation_free_case():
    orders, _ = module_presentation_local(None, 2, 3, dim=2)
    assert sorted(orders) == [8, 8]


def test_module_presentation_trivial_quotient():
    orders, _ = module_presentation_local(np.eye(2, dtype=np.int64), 5, 1)
    assert list(orders) == []


def test_prime_validation():
    with pytest.raises(InvalidParametersError):
        kernel_mod_p(np.eye(2, dtype=np.int64), 4)
    with pytest.raises(InvalidParametersError):
        module_presentation_local(None, 6, 1, dim=1)


def test_ragged_input_refused():
    with pytest.raises(InvalidInputError):
        smith_normal_form([[1, 2], [3]])
