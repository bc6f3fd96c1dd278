import random

import pytest
from hypothesis import given, settings, strategies as st

from galcoh import groups as grp
from galcoh.cochains import TwoCocycle, cochain_add, coboundary
from galcoh.gmod import (hom_module, permutation_module, random_lattice_module, regular_module, sign_module,
                         trivial_module)
from galcoh.intlat import AbMap
from galcoh.tate import tate_cohomology
from galcoh.tn import (ClassMismatch, TNTriple, TorsionModule, WindowTooWide, c_iso_check, class_c_membership,
                       cyclic_model_triple, padded_triple, scaled_triple, triple_morphism, verify_rigidity,
                       verify_weak_tn)


@pytest.mark.parametrize("n", [2, 3, 4, 6])
def test_cyclic_model_is_tn(n):
    v = verify_weak_tn(cyclic_model_triple(n), window=(-3, 1))
    assert v.is_weak_tn and v.is_rigid
    assert v.label() == "TN (window-certified -3..1)"


@pytest.mark.parametrize("n", [2, 3, 4])
def test_zero_alpha_fails(n):
    t = scaled_triple(cyclic_model_triple(n), 0)
    v = verify_weak_tn(t)
    assert v.label() == "not TN"
    # the zero map is bijective exactly where both sides vanish
    G = t.group
    for (K, r), ok in v.weak_tn.items():
        H = G._sub(frozenset(K)).group()
        Z = trivial_module(H)
        both_zero = tate_cohomology(Z, r).is_trivial() and tate_cohomology(Z, r + 2).is_trivial()
        assert ok == both_zero


def test_trivial_group_vacuous():
    v = verify_weak_tn(cyclic_model_triple(1))
    assert v.is_weak_tn and v.is_rigid


def test_window_too_wide():
    with pytest.raises(WindowTooWide):
        verify_weak_tn(cyclic_model_triple(2), window=(-6, 1))
    with pytest.raises(WindowTooWide):
        verify_weak_tn(cyclic_model_triple(2), window=(-1, 3))


def test_sign_coefficients_not_rigid():
    G = grp.cyclic(2)
    X, A = trivial_module(G), sign_module(G)
    t = TNTriple(G, X, A, TwoCocycle(hom_module(X, A), {}))
    rig = verify_rigidity(t)
    assert rig[(0, 1)] is False and rig[(0,)] is True


def test_verdict_json():
    v = verify_weak_tn(cyclic_model_triple(2))
    j = v.to_json()
    assert j["label"].startswith("TN") and j["window"] == [-3, 1]
    assert {d["degree"] for d in j["weak_tn"]} == {-3, -2, -1, 0, 1}


def test_class_c_trivial_module_matches_weak_tn():
    t = cyclic_model_triple(4)
    assert class_c_membership(t, trivial_module(t.group)) == verify_weak_tn(t, subgroups=[t.group.whole()]).is_weak_tn


def test_class_c_permutation_modules():
    t = cyclic_model_triple(4)
    G = t.group
    for H in G.all_subgroups():
        X = grp.coset_gset(H)
        assert class_c_membership(t, permutation_module(X))
        if X.size > 1:
            assert class_c_membership(t, permutation_module(X, reduced=True))


def test_class_c_regular_module_s3():
    # any triple with a zero class still has Z[G] in its class: both sides vanish
    G = grp.symmetric(3)
    X = trivial_module(G)
    t = TNTriple(G, X, X, TwoCocycle(hom_module(X, X), {}))
    assert class_c_membership(t, regular_module(G))
    assert not class_c_membership(t, trivial_module(G))


@settings(max_examples=20, deadline=None)
@given(st.sampled_from([2, 3, 4, 6]), st.integers(0, 10 ** 6))
def test_c_iso_for_random_modules(n, seed):
    t = cyclic_model_triple(n)
    M = random_lattice_module(t.group, random.Random(seed), 3)
    ok, c, H1 = c_iso_check(t, M)
    assert ok


def test_c_not_iso_for_zero_alpha():
    t = scaled_triple(cyclic_model_triple(2), 0)
    assert not c_iso_check(t, trivial_module(t.group))[0]


def test_torsion_module_rejected():
    t = cyclic_model_triple(2)
    with pytest.raises(TorsionModule):
        c_iso_check(t, trivial_module(t.group, 1, [[2]]))


def test_identity_morphism_rho():
    t = cyclic_model_triple(3)
    M = regular_module(t.group)
    mor = triple_morphism(t, t, [[1]], [[1]])
    rho, H2, H1 = mor.rho(M)
    assert rho.equals(AbMap.identity(H1.group))


@pytest.mark.parametrize("k", [2, 3])
def test_scaling_morphism(k):
    t = cyclic_model_triple(4)
    M = trivial_module(t.group)
    mor = triple_morphism(t, t, [[k]], [[k]])
    left, right = mor.c_square(M)
    assert left.equals(right)
    rho, H2, H1 = mor.rho(M)
    c2, c1 = H2.c_map(), H1.c_map()
    times_k = AbMap.from_function(c2.src, c1.src, lambda y: [k * x for x in y])
    assert rho.equals(c1.compose(times_k).compose(c2.inverse()))


def test_class_mismatch():
    t = cyclic_model_triple(3)
    with pytest.raises(ClassMismatch):
        triple_morphism(t, t, [[1]], [[2]])


def test_rho_independent_of_lift():
    t = cyclic_model_triple(2)
    G = t.group
    tp = padded_triple(t, regular_module(G))
    a = [[1], [0], [0]]
    mor1 = triple_morphism(t, tp, [[1]], a)
    rng = random.Random(11)
    e = [rng.randint(-3, 3) for _ in range(mor1.H21.rank)]
    c2 = cochain_add(mor1.c, coboundary(mor1.H21, e, 0), mor1.H21.rank)
    assert c2 != mor1.c
    mor2 = triple_morphism(t, tp, [[1]], a, c=c2)
    M = trivial_module(G)
    r1, _, _ = mor1.rho(M)
    r2, _, _ = mor2.rho(M)
    assert r1.equals(r2)
    left, right = mor2.c_square(M)
    assert left.equals(right)


def test_padded_triple_stays_tn():
    t0 = cyclic_model_triple(2)
    t = padded_triple(t0, regular_module(t0.group))
    v = verify_weak_tn(t)
    assert v.is_weak_tn and v.is_rigid
