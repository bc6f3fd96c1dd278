import pytest
from hypothesis import given, settings, strategies as st

from galcoh.intlat import (AbMap, IncompatibleMap, PresentedAbGroup, cokernel_presentation, cyclic_group,
                           determinant, exactness_check, free_group, identity, kernel_lattice, mat_mul, mat_vec,
                           smith_normal_form)


def matrices(max_dim=8, bound=9):
    return st.integers(1, max_dim).flatmap(
        lambda m: st.integers(1, max_dim).flatmap(
            lambda n: st.lists(st.lists(st.integers(-bound, bound), min_size=n, max_size=n), min_size=m, max_size=m)))


def unimodular(n, draw_ops):
    U = identity(n)
    for i, j, q in draw_ops:
        if i % n != j % n:
            i, j = i % n, j % n
            U[i] = [a + q * b for a, b in zip(U[i], U[j])]
    return U


def test_snf_identity():
    s = smith_normal_form(identity(3))
    assert s.D == identity(3)
    assert s.U == identity(3) and s.V == identity(3)


def test_snf_two_by_two():
    assert smith_normal_form([[2, 4], [6, 8]]).diagonal() == [2, 4]


def test_snf_zero():
    s = smith_normal_form([[0, 0, 0], [0, 0, 0]])
    assert s.D == [[0, 0, 0], [0, 0, 0]]


def test_snf_is_deterministic():
    A = [[3, -7, 2], [9, 4, 4], [0, 5, -6]]
    a, b = smith_normal_form(A), smith_normal_form(A)
    assert (a.U, a.V, a.D) == (b.U, b.V, b.D)


@pytest.mark.parametrize("A,expect", [
    ([[1, 1]], [[1, -1]]),
    ([[1, 0], [0, 1]], []),
    ([[2, 3]], [[3, -2]]),
])
def test_kernel_examples(A, expect):
    basis = kernel_lattice(A)
    assert len(basis) == len(expect)
    for b, e in zip(basis, expect):
        assert b == e or b == [-x for x in e]


@pytest.mark.parametrize("A,torsion,free", [
    ([[2, 0], [0, 3]], [6], 0),
    ([[2], [3]], [], 1),
    ([[1, 0], [0, 1]], [], 0),
])
def test_cokernel_examples(A, torsion, free):
    g = cokernel_presentation(A)
    assert g.torsion == torsion and g.free_rank == free


def test_exact_times_two_then_mod_two():
    v = exactness_check([[2]], [[1]], rel_C=[[2]])
    assert v["exact_at_B"]


def test_not_exact_times_four_then_mod_two():
    v = exactness_check([[4]], [[1]], rel_C=[[2]])
    assert not v["exact_at_B"]
    H = v["kernel_mod_image"]
    assert H.torsion == [2] and H.free_rank == 0


def test_identity_after_zero_is_exact():
    # 0 -> A -id-> A: ker(id) = 0 = im(0)
    v = exactness_check([[0], [0]], identity(2), dims=(1, 2, 2))
    assert v["exact_at_B"]
    v = exactness_check([[1, 0], [0, 1]], [[0, 0]], dims=(2, 2, 1))
    assert v["exact_at_B"]


def test_incompatible_map():
    # Z/2 -> Z by identity does not descend
    with pytest.raises(IncompatibleMap):
        exactness_check([[1]], [[0]], rel_A=[[2]], dims=(1, 1, 1))


def test_abmap_kernel_cokernel():
    Z, Z2 = free_group(1), cyclic_group(2)
    f = AbMap(Z, Z2, [[1]])
    assert f.is_surjective() and not f.is_injective()
    assert f.kernel().free_rank == 1


def test_group_element_arithmetic():
    g = PresentedAbGroup(2, [[2, 0], [0, 0]])
    assert g.torsion == [2] and g.free_rank == 1
    assert g.equal([3, 5], [1, 5])
    assert not g.equal([1, 5], [0, 5])


@settings(max_examples=150, deadline=None)
@given(matrices())
def test_snf_invariants(A):
    s = smith_normal_form(A)
    assert mat_mul(mat_mul(s.U, A), s.V) == s.D
    assert abs(determinant(s.U)) == 1 and abs(determinant(s.V)) == 1
    m, n = len(A), len(A[0])
    assert all(s.D[i][j] == 0 for i in range(m) for j in range(n) if i != j)
    d = [x for x in s.diagonal() if x]
    assert all(x > 0 for x in d)
    assert all(d[i + 1] % d[i] == 0 for i in range(len(d) - 1))


ops = st.lists(st.tuples(st.integers(0, 7), st.integers(0, 7), st.integers(-3, 3)), max_size=6)


@settings(max_examples=100, deadline=None)
@given(matrices(5, 6), ops, ops)
def test_cokernel_invariant_under_unimodular_change(A, rops, cops):
    m, n = len(A), len(A[0])
    U, V = unimodular(m, rops), unimodular(n, cops)
    B = mat_mul(mat_mul(U, A), V)
    assert cokernel_presentation(A).normal_form() == cokernel_presentation(B).normal_form()


@settings(max_examples=100, deadline=None)
@given(matrices(6, 6))
def test_kernel_basis(A):
    basis = kernel_lattice(A)
    n = len(A[0])
    for x in basis:
        assert mat_vec(A, x) == [0] * len(A)
    # independence: the basis matrix has full column rank
    if basis:
        cols = [list(r) for r in zip(*basis)]
        assert len([d for d in smith_normal_form(cols).diagonal() if d]) == len(basis)
    # rank-nullity
    rank = len([d for d in smith_normal_form(A).diagonal() if d])
    assert len(basis) == n - rank
