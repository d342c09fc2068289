"""Row reduction, kernels, and subspace bookkeeping against hand oracles."""

import pytest
from hypothesis import given, settings, strategies as st

from infker.errors import (
    CatalogTooLargeError,
    DimensionMismatchError,
    FieldMismatchError,
    NotPrimeError,
)
from infker.prime_linalg import (
    Fp,
    Matrix,
    Subspace,
    check_prime,
    count_subspaces,
    image_basis,
    inv_mod,
    is_prime,
    iter_subspaces,
    kernel_basis,
    rank,
    rref,
    solve,
    sum_and_intersection,
)

SMALL_PRIMES = (2, 3, 5, 7)

primes = st.sampled_from(SMALL_PRIMES)


def random_matrix(p, max_dim=5):
    shapes = st.tuples(st.integers(0, max_dim), st.integers(0, max_dim))
    return shapes.flatmap(
        lambda s: st.lists(
            st.lists(st.integers(0, p - 1), min_size=s[1], max_size=s[1]),
            min_size=s[0], max_size=s[0],
        ).map(lambda rows: Matrix(p, rows, cols=s[1]))
    )


matrices = primes.flatmap(random_matrix)
gf2_matrices = random_matrix(2, max_dim=8)


def test_is_prime_matches_trial_division():
    def trial(n):
        if n < 2:
            return False
        return all(n % d for d in range(2, int(n ** 0.5) + 1))
    for n in range(0, 2000):
        assert is_prime(n) == trial(n), n


def test_check_prime_raises():
    with pytest.raises(NotPrimeError):
        check_prime(4)
    with pytest.raises(NotPrimeError):
        check_prime(1)
    check_prime(2)
    check_prime(97)


@given(primes, st.integers(1, 100))
def test_inv_mod(p, a):
    if a % p == 0:
        with pytest.raises(ZeroDivisionError):
            inv_mod(a, p)
    else:
        assert (a * inv_mod(a, p)) % p == 1


@given(primes, st.integers(-20, 20), st.integers(-20, 20))
def test_fp_field_ops(p, a, b):
    x, y = Fp(a % p, p), Fp(b % p, p)
    assert (x + y).value == (a + b) % p
    assert (x - y).value == (a - b) % p
    assert (x * y).value == (a * b) % p
    if y.value:
        assert ((x / y) * y).value == x.value


def test_rref_hand_example():
    # worked by hand over F_5
    mat = Matrix(5, [[2, 4, 1], [3, 1, 2], [0, 3, 4]])
    red, pivots, rk = rref(mat)
    assert rk == 3
    assert pivots == (0, 1, 2)
    assert red == Matrix.identity(5, 3)


def test_rref_hand_example_with_kernel():
    # second column is 2x the first, worked by hand over F_3
    mat = Matrix(3, [[1, 2, 0], [2, 4, 1]])
    red, pivots, rk = rref(mat)
    assert rk == 2
    assert pivots == (0, 2)
    assert red.entries == ((1, 2, 0), (0, 0, 1))
    ker = kernel_basis(mat)
    assert ker.dim == 1
    assert ker.basis.entries == ((1, 1, 0),)  # -2 = 1 mod 3


def test_rref_empty_shapes():
    for mat in (Matrix.zero(5, 0, 4), Matrix.zero(5, 4, 0), Matrix.zero(5, 0, 0)):
        red, pivots, rk = rref(mat)
        assert rk == 0 and pivots == ()
        assert (red.rows, red.cols) == (mat.rows, mat.cols)


def test_transpose_empty_roundtrip():
    mat = Matrix.zero(3, 0, 6)
    assert (mat.transpose().rows, mat.transpose().cols) == (6, 0)
    assert mat.transpose().transpose() == mat


@given(gf2_matrices)
def test_packed_rref_matches_generic(mat):
    """The bitset path over F_2 must be indistinguishable from the
    generic path, including pivot choices."""
    red_g, piv_g, rk_g = rref(mat, method="generic")
    red_p, piv_p, rk_p = rref(mat, method="packed")
    assert red_g == red_p
    assert piv_g == piv_p
    assert rk_g == rk_p


@given(matrices)
def test_rref_idempotent_and_rank_nullity(mat):
    red, pivots, rk = rref(mat)
    again, pivots2, rk2 = rref(red)
    assert again == red and pivots2 == pivots and rk2 == rk
    assert rk + kernel_basis(mat).dim == mat.cols


@given(matrices)
def test_kernel_vectors_annihilate(mat):
    ker = kernel_basis(mat)
    for row in ker.basis.entries:
        assert not any(mat.matvec(row))


@given(matrices, st.data())
def test_solve_residual(mat, data):
    """solve() must return an exact preimage whenever one exists, with
    zeros in the free coordinates."""
    x = data.draw(st.lists(st.integers(0, mat.p - 1),
                           min_size=mat.cols, max_size=mat.cols))
    b = mat.matvec(x)
    sol = solve(mat, b)
    assert sol is not None
    assert mat.matvec(sol) == tuple(b)
    pivots = set(rref(mat)[1])
    assert all(sol[c] == 0 for c in range(mat.cols) if c not in pivots)


def test_solve_inconsistent():
    mat = Matrix(3, [[1, 0], [0, 0]])
    assert solve(mat, [0, 1]) is None


def test_matrix_algebra_basics():
    a = Matrix(7, [[1, 2], [3, 4]])
    b = Matrix(7, [[0, 1], [1, 0]])
    assert (a @ b).entries == ((2, 1), (4, 3))
    assert (a + b - b) == a
    assert a.scale(2).entries == ((2, 4), (6, 1))
    assert a.matvec([1, 1]) == (3, 0)
    with pytest.raises(DimensionMismatchError):
        a @ Matrix(7, [[1, 2, 3]])
    with pytest.raises(FieldMismatchError):
        a @ Matrix(5, [[1, 2], [3, 4]])


def test_matrix_json_roundtrip():
    mat = Matrix(5, [[1, 2, 3], [4, 0, 1]])
    assert Matrix.from_json(mat.to_json()) == mat


def test_subspace_member_and_canonical_form():
    sub = Subspace.from_rows(5, 4, [[1, 2, 3, 4], [0, 1, 2, 1], [1, 3, 5, 5]])
    assert sub.dim == 2  # third row is the sum of the first two
    assert sub.pivots == (0, 1)
    coeffs = sub.member([0, 0, 0, 0])
    assert coeffs is not None and not any(coeffs)
    row0 = sub.basis.entries[0]
    tripled = [(3 * v) % 5 for v in row0]
    coeffs = sub.member(tripled)
    assert coeffs is not None
    assert coeffs[0] == 3


@given(primes, st.data())
def test_subspace_membership_closed_under_addition(p, data):
    n = data.draw(st.integers(1, 5))
    rows = data.draw(st.lists(
        st.lists(st.integers(0, p - 1), min_size=n, max_size=n),
        min_size=0, max_size=4))
    sub = Subspace.from_rows(p, n, rows)
    for u in rows:
        assert sub.member(u) is not None
    if len(rows) >= 2:
        summed = [(a + b) % p for a, b in zip(rows[0], rows[1])]
        assert sub.member(summed) is not None


def test_subspace_vectors_and_budget():
    sub = Subspace.from_rows(2, 4, [[1, 0, 0, 0], [0, 1, 0, 0]])
    vecs = list(sub.vectors())
    assert len(vecs) == 4
    assert all(sub.member(v) is not None for v in vecs)
    big = Subspace.full(31, 5)
    with pytest.raises(CatalogTooLargeError):
        list(big.vectors(limit=1000))


def test_zassenhaus_hand_example():
    u = Subspace.from_rows(2, 3, [[1, 0, 0], [0, 1, 0]])
    w = Subspace.from_rows(2, 3, [[0, 1, 0], [0, 0, 1]])
    total, inter = sum_and_intersection(u, w)
    assert total == Subspace.full(2, 3)
    assert inter.dim == 1
    assert inter.member([0, 1, 0]) is not None


@given(primes, st.data())
def test_zassenhaus_modular_law(p, data):
    n = data.draw(st.integers(1, 4))
    mk = lambda: data.draw(st.lists(
        st.lists(st.integers(0, p - 1), min_size=n, max_size=n),
        min_size=0, max_size=3))
    u = Subspace.from_rows(p, n, mk())
    w = Subspace.from_rows(p, n, mk())
    total, inter = sum_and_intersection(u, w)
    assert total.dim + inter.dim == u.dim + w.dim
    for row in inter.basis.entries:
        assert u.member(row) is not None
        assert w.member(row) is not None
    for row in u.basis.entries:
        assert total.member(row) is not None


def test_image_basis_is_column_space():
    mat = Matrix(3, [[1, 2], [0, 1], [2, 1]])
    img = image_basis(mat)
    assert img.dim == 2
    assert img.member([1, 0, 2]) is not None
    assert img.member([2, 1, 1]) is not None
    assert img.member([0, 0, 1]) is None


def test_image_of_dependent_columns():
    # second column is twice the first over F_3
    mat = Matrix(3, [[1, 2], [0, 0], [2, 1]])
    img = image_basis(mat)
    assert img.dim == 1
    assert img.member([2, 0, 1]) is not None


def test_count_subspaces_small_table():
    # Gaussian binomials for F_2^4, textbook values
    assert [count_subspaces(2, 4, k) for k in range(5)] == [1, 15, 35, 15, 1]
    assert sum(count_subspaces(2, 4, k) for k in range(5)) == 67
    assert count_subspaces(3, 2, 1) == 4


@pytest.mark.parametrize("p,n,k", [(2, 3, 1), (2, 3, 2), (3, 2, 1), (2, 4, 2)])
def test_iter_subspaces_complete_and_distinct(p, n, k):
    subs = list(iter_subspaces(p, n, k))
    assert len(subs) == count_subspaces(p, n, k)
    assert len(set(subs)) == len(subs)
    assert all(s.dim == k for s in subs)
