"""Monomial basis: counts, ordering, values, and exact derivatives."""

import numpy as np
import pytest

from rbfherm.polynomials import PolyBasis, n_poly_terms

from conftest import fd_gradient, rel_err


def test_term_counts():
    assert n_poly_terms(0) == 1
    assert n_poly_terms(1) == 3
    assert n_poly_terms(2) == 6
    assert n_poly_terms(9) == 55
    assert n_poly_terms(None) == 0


def test_term_count_rejects_bad_degrees():
    with pytest.raises(ValueError):
        n_poly_terms(-1)
    with pytest.raises(ValueError):
        n_poly_terms(1.5)
    with pytest.raises(ValueError):
        n_poly_terms(2, dim=0)


def test_basis_size_matches_count():
    for degree in range(10):
        assert PolyBasis(degree).n_terms == n_poly_terms(degree)


def test_evaluation_order_is_graded_lexicographic():
    vals = PolyBasis(2).evaluate(np.array([[2.0, 3.0]]))
    assert np.array_equal(vals[0], [1.0, 2.0, 3.0, 4.0, 6.0, 9.0])
    vals1 = PolyBasis(1).evaluate(np.array([[2.0, 3.0]]))
    assert np.array_equal(vals1[0], [1.0, 2.0, 3.0])


def test_evaluation_at_origin_is_the_constant_indicator():
    for degree in (0, 1, 3, 9):
        vals = PolyBasis(degree).evaluate(np.zeros((1, 2)))[0]
        assert vals[0] == 1.0
        assert np.all(vals[1:] == 0.0)


def test_lower_degree_terms_prefix_higher_degree_basis():
    # graded-lex order nests: degree-l columns are the first M columns of
    # any higher-degree basis, which the experiment fast paths rely on
    rng = np.random.default_rng(3)
    X = rng.uniform(-2, 2, size=(20, 2))
    full_vals = PolyBasis(9).evaluate(X)
    full_grads = PolyBasis(9).gradient(X)
    for degree in range(9):
        m = n_poly_terms(degree)
        basis = PolyBasis(degree)
        assert np.array_equal(basis.evaluate(X), full_vals[:, :m])
        assert np.array_equal(basis.gradient(X), full_grads[:, :m])


def test_gradient_closed_forms():
    grads = PolyBasis(2).gradient(np.array([[2.0, 3.0]]))[0]
    assert np.array_equal(grads[0], [0.0, 0.0])  # constant
    assert np.array_equal(grads[1], [1.0, 0.0])  # x
    assert np.array_equal(grads[2], [0.0, 1.0])  # y
    assert np.array_equal(grads[3], [4.0, 0.0])  # x^2
    assert np.array_equal(grads[4], [3.0, 2.0])  # xy
    assert np.array_equal(grads[5], [0.0, 6.0])  # y^2


def test_gradient_matches_finite_differences():
    basis = PolyBasis(5)
    rng = np.random.default_rng(9)
    X = rng.uniform(-1.5, 1.5, size=(30, 2))
    grads = basis.gradient(X)
    for term in range(basis.n_terms):
        def value_at(P, term=term):
            return basis.evaluate(P)[:, term]

        assert rel_err(grads[:, term, :], fd_gradient(value_at, X)) < 1e-9


def test_gradient_is_finite_on_the_axes():
    # exponent lowering must not produce 0**(-1) when a coordinate is zero
    X = np.array([[0.0, 2.0], [2.0, 0.0], [0.0, 0.0]])
    grads = PolyBasis(4).gradient(X)
    assert np.all(np.isfinite(grads))


def test_degree_must_be_a_nonnegative_integer():
    with pytest.raises(ValueError):
        PolyBasis(-1)
    with pytest.raises(ValueError):
        PolyBasis(2.5)


def test_exponents_accessor_is_a_copy():
    basis = PolyBasis(2)
    exps = basis.exponents
    exps[0, 0] = 99
    assert basis.exponents[0, 0] == 0


def test_vandermonde_block_is_unisolvent_on_generic_nodes():
    rng = np.random.default_rng(17)
    X = rng.uniform(-1, 1, size=(12, 2))
    P = PolyBasis(2).evaluate(X)
    assert np.linalg.matrix_rank(P) == 6
