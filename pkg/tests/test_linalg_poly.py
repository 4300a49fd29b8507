import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from lrcodes.gf import field_of_order
from lrcodes.linalg import EchelonBasis, independent_rows, matmul, nullspace, rank, rref, solve
from lrcodes.poly import Monomial, UniPoly, lagrange, lagrange_weights, roots

F13 = field_of_order(13)
F16 = field_of_order(16)


def random_matrix(F, rows, cols, rank_, seed):
    rng = np.random.default_rng(seed)
    A = rng.integers(0, F.q, size=(rows, rank_))
    B = rng.integers(0, F.q, size=(rank_, cols))
    return matmul(F, A, B)


def test_rref_small_fixture():
    A = np.array([[1, 2, 3], [2, 4, 6], [0, 1, 1]])
    R, piv = rref(F13, A)
    assert piv == [0, 1]
    assert R[:2].tolist() == [[1, 0, 1], [0, 1, 1]]
    assert rank(F13, A) == 2


@settings(max_examples=40, deadline=None)
@given(st.sampled_from([F13, F16, field_of_order(9)]), st.integers(1, 8), st.integers(1, 9),
       st.integers(0, 10**6))
def test_rank_nullity(F, rows, cols, seed):
    A = np.random.default_rng(seed).integers(0, F.q, size=(rows, cols))
    N = nullspace(F, A)
    assert rank(F, A) + N.shape[0] == cols
    if N.size:
        assert not np.any(matmul(F, A, N.T))


@settings(max_examples=40, deadline=None)
@given(st.integers(1, 6), st.integers(0, 10**6))
def test_solve_consistent_systems(r, seed):
    A = random_matrix(F16, 8, 6, r, seed)
    x0 = np.random.default_rng(seed + 1).integers(0, 16, size=6)
    b = matmul(F16, A, x0[:, None])[:, 0]
    x = solve(F16, A, b)
    assert x is not None
    assert np.array_equal(matmul(F16, A, x[:, None])[:, 0], b)


def test_solve_inconsistent():
    A = np.array([[1, 0], [1, 0]])
    assert solve(F13, A, [1, 2]) is None


def test_echelon_basis_tracks_rank():
    A = random_matrix(F13, 30, 20, 11, 5)
    eb = EchelonBasis(F13, 20)
    profile = []
    for row in A:
        eb.add(row)
        profile.append(len(eb))
    assert profile[-1] == 11 == rank(F13, A)
    assert all(profile[i] == rank(F13, A[: i + 1]) for i in range(0, 30, 7))
    idx = independent_rows(F13, A)
    assert len(idx) == 11 and rank(F13, A[idx]) == 11
    # every row reduces to zero against the final basis
    assert all(not np.any(eb.reduce(row)) for row in A)


def test_polynomial_arithmetic():
    x = UniPoly.x(F13)
    f = (x + 1) ** 3
    assert f.to_list() == [1, 3, 3, 1]
    q, r = f.divmod(x - 2)
    assert q * (x - 2) + r == f and r.degree <= 0
    assert int(r.coeffs[0]) == 27 % 13
    assert UniPoly(F13).degree == float("-inf")
    assert [int(z) for z in roots(x**3 - 1)] == [1, 3, 9]


@settings(max_examples=60, deadline=None)
@given(st.sampled_from([F13, F16, field_of_order(27)]), st.data())
def test_lagrange_eval_round_trip(F, data):
    n = data.draw(st.integers(1, min(F.q, 8)))
    xs = data.draw(st.lists(st.integers(0, F.q - 1), min_size=n, max_size=n, unique=True))
    ys = data.draw(st.lists(st.integers(0, F.q - 1), min_size=n, max_size=n))
    h = lagrange(F, list(zip(xs, ys)))
    assert h.degree < n
    assert h(np.array(xs)).tolist() == ys
    # weights reproduce h at an arbitrary target
    t = data.draw(st.integers(0, F.q - 1))
    w = lagrange_weights(F, xs, t)
    assert int(F.dot(w, np.array(ys))) == int(h(np.array([t]))[0])


def test_lagrange_example_interpolant():
    # through (2, 3) and (6, 1) over GF(13): 6x + 4
    h = lagrange(F13, [(2, 3), (6, 1)])
    assert h.to_list() == [4, 6]
    assert int(h(np.array([5]))[0]) == 8
    assert lagrange_weights(F13, [2, 6], 5).tolist() == [10, 4]


def test_lagrange_rejects_repeated_nodes():
    with pytest.raises(ValueError):
        lagrange(F13, [(1, 2), (1, 3)])
    with pytest.raises(ValueError):
        lagrange_weights(F13, [4, 4], 1)


def test_monomial_evaluation():
    pts = np.array([[2, 3], [0, 5], [1, 0]])
    m = Monomial((2, 1), ("x", "y"))
    assert m.evaluate(F13, pts).tolist() == [12, 0, 0]
    assert m.total_degree == 3 and m.label() == "x^2*y"
