import itertools
import math

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from kronshuffle.linalg_kron import perm_to_matrix
from kronshuffle.mixed_radix import BranchIndices, DigitWord, LimitExceeded, decode, encode
from kronshuffle.permutation import Permutation, parse_cycles
from kronshuffle.shuffling import (
    ShuffleSpec,
    all_sigmas,
    common_fixed,
    compose_shuffles,
    definition_sum,
    perfect_shuffle,
    perfect_shuffle_transpose,
    reordered_basis,
    sh_k,
    shuffle_matrix,
    shuffle_matrix_oracle,
    shuffle_perm,
)


def word_shuffle(dims, sigma, x):
    """Scalar reference: decode, permute digit positions, encode."""
    basis = BranchIndices(dims)
    digits = decode(x, basis).digits
    inv = sigma.inverse()
    word = tuple(digits[inv(j)] for j in range(len(dims)))
    new_basis = BranchIndices(tuple(dims[inv(j)] for j in range(len(dims))))
    return encode(DigitWord(word, new_basis))


def test_known_cycle_decompositions():
    assert str(ShuffleSpec((2, 2, 3), "(1 2 3)").perm()) == "(0)(1 4 5 9 3)(2 8 10 7 6)(11)"
    assert str(ShuffleSpec((2, 2, 3), "(1 3)").perm()) == "(0)(1 4 6)(2 8 9 3)(5 10 7)(11)"
    assert str(ShuffleSpec((2, 3, 2), "(1 3)").perm()) == "(0)(1 6)(2)(3 8)(4)(5 10)(7)(9)(11)"


def test_two_by_two_swap():
    p = shuffle_perm((2, 2), "(1 2)")
    assert p.horizontal() == [0, 2, 1, 3]
    assert np.array_equal(shuffle_matrix((2, 2), "(1 2)"), shuffle_matrix_oracle((2, 2), "(1 2)"))


def test_composition_example():
    got = compose_shuffles((2, 2, 3), "(1 3)", "(1 2)")
    assert str(got) == "(0)(1 2 4 8 5 10 9 7 3 6)(11)"


def test_reordered_basis():
    assert reordered_basis((2, 2, 3), "(1 2 3)").indices == (3, 2, 2)
    assert reordered_basis((2, 3, 4), "(1 3)").indices == (4, 3, 2)


def test_vectorized_action_matches_scalar_reference():
    for dims in [(2, 2, 3), (3, 4), (2, 3, 2, 2), (5, 3, 2)]:
        for sigma in all_sigmas(len(dims)):
            p = shuffle_perm(dims, sigma)
            assert all(p(x) == word_shuffle(dims, sigma, x) for x in range(math.prod(dims)))


def test_oracle_matches_action_exhaustive_small():
    for m in (2, 3):
        for dims in itertools.product(range(2, 5), repeat=m):
            for sigma in all_sigmas(m):
                oracle = shuffle_matrix_oracle(dims, sigma)
                assert np.array_equal(oracle, perm_to_matrix(shuffle_perm(dims, sigma)))


def test_dense_and_sparse_oracles_agree():
    for dims in [(2, 3, 4), (3, 2, 2, 2), (4, 5, 3)]:
        for sigma in all_sigmas(len(dims)):
            a = definition_sum(dims, sigma, dense=True)
            b = definition_sum(dims, sigma, dense=False)
            assert np.array_equal(a, b)


def test_oracle_limit():
    with pytest.raises(LimitExceeded):
        shuffle_matrix_oracle((64, 64, 2), "(1 2)", limit=4096)


def test_composition_law_all_sigmas():
    for dims in [(2, 2, 3), (2, 3, 2), (3, 2, 2), (2, 3, 4)]:
        for sigma, tau in itertools.product(all_sigmas(3), repeat=2):
            assert compose_shuffles(dims, sigma, tau) == shuffle_perm(dims, tau * sigma)


def test_inverse_law():
    for dims in [(2, 2, 3), (2, 3, 4, 2)]:
        for sigma in all_sigmas(len(dims)):
            back = shuffle_perm(reordered_basis(dims, sigma), sigma.inverse())
            assert (back * shuffle_perm(dims, sigma)).is_identity()


def test_homogeneous_permutes_words():
    dims = (3, 3, 3)
    basis = BranchIndices(dims)
    for sigma in all_sigmas(3):
        p = shuffle_perm(dims, sigma)
        for x in range(27):
            d = decode(x, basis).digits
            image = decode(p(x), basis).digits
            assert all(image[sigma(l)] == d[l] for l in range(3))


def test_perfect_shuffle_examples():
    assert perfect_shuffle((3, 4)).horizontal() == [0, 4, 8, 1, 5, 9, 2, 6, 10, 3, 7, 11]
    assert perfect_shuffle((2, 2, 3)) == shuffle_perm((2, 2, 3), "(1 2 3)")


@pytest.mark.parametrize("dims", [(2, 2, 3), (3, 4), (2, 3, 5), (4, 2, 2, 3), (5, 7)])
def test_perfect_shuffle_is_array_transpose_and_sh_k(dims):
    p = perfect_shuffle(dims)
    assert p == perfect_shuffle_transpose(dims)
    n = math.prod(dims)
    assert p == sh_k(n, dims[-1])


def test_sh_k_examples_and_errors():
    assert sh_k(15, 13).horizontal() == [0, 13, 12, 11, 10, 9, 8, 7, 6, 5, 4, 3, 2, 1, 14]
    assert sh_k(12, 1).is_identity()
    for n, k in [(2, 1), (12, 0), (12, 11), (9, 2)]:
        with pytest.raises(ValueError):
            sh_k(n, k)


@settings(max_examples=100, deadline=None)
@given(st.integers(3, 200).flatmap(
    lambda n: st.tuples(st.just(n), st.integers(1, n - 2).filter(lambda k: math.gcd(k, n - 1) == 1))))
def test_sh_k_pointwise(case):
    n, k = case
    p = sh_k(n, k)
    k_inv = pow(k, -1, n - 1)
    assert all(p(x) == (x * k_inv) % (n - 1) for x in range(n - 1))
    assert p(n - 1) == n - 1


def test_common_fixed_points():
    assert common_fixed((3, 3)) == {0, 4, 8}
    assert common_fixed((2, 2, 3)) == {0, 11}
    for n, m in [(2, 2), (2, 3), (3, 3), (2, 4), (4, 2)]:
        fixed = common_fixed((n,) * m)
        constants = {sum(a * n ** j for j in range(m)) for a in range(n)}
        assert fixed == constants


def test_all_sigmas_limit():
    assert len(all_sigmas(4)) == 24
    with pytest.raises(LimitExceeded):
        all_sigmas(9, limit=40320)


branch = st.lists(st.integers(2, 5), min_size=2, max_size=4).filter(lambda b: math.prod(b) <= 300)


@settings(max_examples=80, deadline=None)
@given(branch, st.data())
def test_endpoints_fixed_and_composition(dims, data):
    m = len(dims)
    sigma = Permutation(data.draw(st.permutations(range(m))))
    tau = Permutation(data.draw(st.permutations(range(m))))
    p = shuffle_perm(dims, sigma)
    n = math.prod(dims)
    assert p(0) == 0 and p(n - 1) == n - 1
    assert compose_shuffles(dims, sigma, tau) == shuffle_perm(dims, tau * sigma)
