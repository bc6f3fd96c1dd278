import random

import pytest
from hypothesis import given, settings, strategies as st

from galcoh import groups as grp
from galcoh.gmod import (EmptySet, GroupMismatch, Coinduced, augmentation, hom_evaluate, hom_module,
                         permutation_module, random_lattice_module, reduced_inclusion, regular_module,
                         restrict_module, sign_module, tensor_module, trivial_module)
from galcoh.intlat import exact_at
from galcoh.oracles import bar_cohomology, cyclic_tate, shifted_tate
from galcoh.tate import DegreeOutOfWindow, tate_cohomology, tate_map

FIXTURES = grp.fixture_groups()
CYCLIC = [grp.cyclic(n) for n in (2, 3, 4, 5, 6)]


def nf(g):
    return (g.torsion, g.free_rank)


def test_three_place_permutation(three_place):
    M = permutation_module(three_place.places)
    assert M.rank == 3
    assert M.act(1, [1, 0, 0]) == [0, 1, 0] and M.act(1, [0, 0, 1]) == [0, 0, 1]


def test_three_place_reduced(three_place):
    M = permutation_module(three_place.places, reduced=True)
    assert M.rank == 2
    e, f = [1, 0], [0, 1]  # v1 - v2, v1 - w
    assert M.act(1, e) == [-1, 0]
    assert M.act(1, f) == [f[0] - e[0], f[1] - e[1]]


def test_reduced_one_point_is_zero(c2):
    assert permutation_module(grp.coset_gset(c2.whole()), reduced=True).rank == 0


def test_reduced_empty_set_raises(c2):
    with pytest.raises(EmptySet):
        permutation_module(grp.GSet(c2, 0, generator_action=[()]), reduced=True)


def test_reduced_is_augmentation_kernel(three_place):
    X = three_place.places
    i, e = reduced_inclusion(X), augmentation(X)
    assert e.compose(i).matrix == [[0, 0]]


def test_hom_of_permutation_module(three_place):
    S = permutation_module(three_place.places)
    H = hom_module(S, trivial_module(three_place.group))
    assert H.rank == 3 and H.abgroup.free_rank == 3
    assert sorted(map(tuple, H.action[1])) == sorted(map(tuple, S.action[1]))


def test_hom_action_formula(s3):
    rng = random.Random(4)
    A, B = random_lattice_module(s3, rng), random_lattice_module(s3, rng)
    H = hom_module(A, B)
    z = [rng.randint(-2, 2) for _ in range(H.rank)]
    for g in range(s3.order):
        for i in range(A.rank):
            a = [1 if j == i else 0 for j in range(A.rank)]
            lhs = hom_evaluate(H, H.act(g, z), a)
            rhs = B.act(g, hom_evaluate(H, z, A.act(s3.inv[g], a)))
            assert lhs == rhs


def test_torsion_tensor_and_hom(c2):
    Z2 = trivial_module(c2, 1, [[2]])
    Z3 = trivial_module(c2, 1, [[3]])
    assert tensor_module(Z2, Z3).abgroup.is_trivial()
    assert hom_module(Z2, trivial_module(c2)).abgroup.is_trivial()
    assert nf(hom_module(Z2, trivial_module(c2, 1, [[4]])).abgroup) == ([2], 0)


def test_group_mismatch(c2, s3):
    with pytest.raises(GroupMismatch):
        tensor_module(trivial_module(c2), trivial_module(s3))


def test_trivial_invariants_coinvariants(s3):
    M = trivial_module(s3, 2)
    assert nf(M.invariants()) == ([], 2) and nf(M.coinvariants()) == ([], 2)
    N = M.norm_map()
    assert N(M.coinvariants().coords([1, 0])) == M.invariants().coords([6, 0])


def test_sign_module(c2):
    M = sign_module(c2)
    assert M.invariants().is_trivial()
    assert nf(M.coinvariants()) == ([2], 0)
    assert M.norm_map().is_zero()


def test_regular_module_norm(c2):
    M = regular_module(c2)
    assert nf(M.invariants()) == ([], 1) and nf(M.coinvariants()) == ([], 1)
    assert M.norm_map().is_iso()


def test_minus_one_of_trivial_vanishes():
    for G in FIXTURES:
        assert tate_cohomology(trivial_module(G), -1).is_trivial()


@pytest.mark.parametrize("n", [2, 3, 4, 5, 6])
def test_zero_of_cyclic(n):
    G = grp.cyclic(n)
    assert nf(tate_cohomology(trivial_module(G), 0).group) == ([n], 0)


def test_zero_of_three_place(three_place):
    assert nf(tate_cohomology(permutation_module(three_place.places), 0).group) == ([2], 0)


def test_window():
    with pytest.raises(DegreeOutOfWindow):
        tate_cohomology(trivial_module(grp.cyclic(2)), 4)


def test_coinduction_identity(c2):
    R = Coinduced(c2.whole(), trivial_module(c2.whole().group()))
    assert R.module.rank == 1 and R.eps == [[1]] and R.j == [[1]]


def test_coinduction_from_trivial_is_regular(c2):
    K = c2.trivial_subgroup()
    R = Coinduced(K, trivial_module(K.group()))
    assert sorted(map(tuple, R.module.action[1])) == sorted(map(tuple, regular_module(c2).action[1]))


def test_coinduction_eps_j_and_fixed_points(s3):
    rng = random.Random(1)
    for H in s3.all_subgroups():
        M0 = random_lattice_module(H.group(), rng)
        R = Coinduced(H, M0)
        eps_j = [[sum(R.eps[i][k] * R.j[k][j] for k in range(R.module.rank)) for j in range(M0.rank)]
                 for i in range(M0.rank)]
        assert eps_j == [[int(i == j) for j in range(M0.rank)] for i in range(M0.rank)]
        assert R.fixed_points_to_sub().is_iso()
        assert R.eps_map() is not None and R.j_map() is not None


@settings(max_examples=40, deadline=None)
@given(st.integers(0, len(FIXTURES) - 1), st.integers(0, 10 ** 6), st.sampled_from([-2, -1, 0, 1, 2]))
def test_shapiro_for_coinduction(gi, seed, r):
    G = FIXTURES[gi]
    rng = random.Random(seed)
    H = rng.choice(G.all_subgroups())
    M0 = random_lattice_module(H.group(), rng, 2)
    R = Coinduced(H, M0)
    assert nf(tate_cohomology(R.module, r).group) == nf(tate_cohomology(M0, r).group)


@settings(max_examples=40, deadline=None)
@given(st.integers(0, len(CYCLIC) - 1), st.integers(0, 10 ** 6), st.integers(-3, 3))
def test_cyclic_oracle(gi, seed, r):
    G = CYCLIC[gi]
    M = random_lattice_module(G, random.Random(seed))
    assert nf(tate_cohomology(M, r).group) == nf(cyclic_tate(M, r))


@settings(max_examples=30, deadline=None)
@given(st.integers(0, len(FIXTURES) - 1), st.integers(0, 10 ** 6), st.sampled_from([-3, -2]))
def test_shifting_oracle(gi, seed, r):
    G = FIXTURES[gi]
    M = random_lattice_module(G, random.Random(seed), 2)
    assert nf(tate_cohomology(M, r).group) == nf(shifted_tate(M, r))


@pytest.mark.parametrize("name", ["C2", "C3", "V4", "S3"])
@pytest.mark.parametrize("r", [1, 2])
def test_bar_oracle(name, r):
    from galcoh.verify import group
    G = group(name)
    rng = random.Random(r)
    for _ in range(3):
        M = random_lattice_module(G, rng, 2)
        assert nf(tate_cohomology(M, r).group) == nf(bar_cohomology(M, r)[0])


def test_codec_round_trip():
    G = grp.cyclic(4)
    M = trivial_module(G)
    for r in (-1, 0, 1, 2):
        T = tate_cohomology(M, r)
        for i, rep in enumerate(T.generators()):
            assert T.classify(rep) == T.group.reduce([int(j == i) for j in range(T.ngens)])


@settings(max_examples=25, deadline=None)
@given(st.integers(0, len(FIXTURES) - 1), st.integers(0, 10 ** 6))
def test_long_exact_sequence_middle_terms(gi, seed):
    G = FIXTURES[gi]
    X = grp.random_gset(G, random.Random(seed), 2)
    i, e = reduced_inclusion(X), augmentation(X)
    for r in range(-3, 4):
        f, g = tate_map(i, r), tate_map(e, r)
        assert g.compose(f).is_zero()
        assert exact_at(f, g)


def test_restrict_module(s3):
    H = s3.subgroup([s3.index[(1, 0, 2)]])
    M = restrict_module(regular_module(s3), H)
    assert M.group.order == 2 and M.rank == 6
