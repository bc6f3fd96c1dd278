import random

import pytest
from hypothesis import given, settings, strategies as st

from galcoh import groups as grp
from galcoh.cochains import (ExtensionData, ExtensionMorphism, TwoCocycle, coboundary, cochain_add, cup)
from galcoh.gmod import hom_module, identity_map, regular_module, trivial_module
from galcoh.h1y import (H1YContext, H1YGroup, InvalidXi, absBT_criterion, h1_extension, h1y_restrict,
                        inflation_restriction_exactness, psi_map, pullback_map)
from galcoh.intlat import AbMap
from galcoh.tate import tate_cohomology
from galcoh.tn import cyclic_model_triple
from galcoh.verify import gen_h1y, h1y_context


def nf(g):
    return (g.torsion, g.free_rank)


def context(ext, M, Y=None):
    H = hom_module(ext.A, M)
    if Y is None:
        return H1YContext(ext, M, H, identity_map(H).matrix, hom=H)
    return H1YContext(ext, M, Y, [[0] * Y.rank for _ in range(H.rank)], hom=H)


def cyclic_ext(n):
    return cyclic_model_triple(n).extension()


def split_ext(G, A=None):
    return ExtensionData(TwoCocycle(A or trivial_module(G), {}))


@pytest.mark.parametrize("n", [2, 3, 4])
def test_cyclic_model(n):
    ext = cyclic_ext(n)
    ctx = context(ext, trivial_module(ext.G))
    H1 = H1YGroup(ctx)
    assert nf(H1.group) == ([], 1)
    rc = H1.r_map().compose(H1.c_map())
    assert rc.matrix == [[n]]
    assert H1.c_map().is_iso()
    assert all(absBT_criterion(ctx, H1).values())


def test_split_c2():
    G = grp.cyclic(2)
    ctx = context(split_ext(G), trivial_module(G))
    H1 = H1YGroup(ctx)
    assert nf(H1.group) == ([], 1)
    v = absBT_criterion(ctx, H1)
    assert not v["c_iso"] and not v["cup_0_injective"]
    assert v["c_iso"] == (v["cup_minus1_bijective"] and v["cup_0_injective"])


def test_trivial_group_is_iso():
    G = grp.trivial()
    ctx = context(split_ext(G), trivial_module(G))
    assert all(absBT_criterion(ctx).values())


def test_zero_y_gives_plain_h1(s3):
    from galcoh.gmod import sign_module
    M = sign_module(s3)
    ext = ExtensionData(TwoCocycle(trivial_module(s3), tate_cohomology(trivial_module(s3), 2).generators()[0]))
    ctx = context(ext, M, Y=trivial_module(s3, 0))
    H1 = H1YGroup(ctx)
    assert nf(H1.group) == nf(tate_cohomology(M, 1).group)
    assert H1.i_map().is_iso()


def test_invalid_xi():
    G = grp.cyclic(2)
    ext = split_ext(G)
    M = regular_module(G)
    H = hom_module(ext.A, M)
    with pytest.raises(InvalidXi):
        H1YContext(ext, M, trivial_module(G), [[1], [0]], hom=H)


def test_c_of_zero_and_cup_square():
    ext = cyclic_ext(4)
    G = ext.G
    from galcoh.gmod import sign_module
    M = sign_module(G)
    ctx = context(ext, M)
    H1 = H1YGroup(ctx)
    y0 = [0] * ctx.Y.rank
    assert not any(H1.classify(*H1.c_zero(y0)))
    T1 = tate_cohomology(M, 1)
    Tm1 = tate_cohomology(ctx.Y, -1)
    for y in Tm1.generators():
        got = H1.classify(*H1.c_zero(y))
        c = cup(ext.cocycle.table, y, -1, ctx.pairing())
        want = H1.i_map()(T1.classify(c))
        assert H1.group.reduce(got) == H1.group.reduce(want)


def test_psi_identity_and_doubling():
    ext = cyclic_ext(3)
    G = ext.G
    M = trivial_module(G)
    ctx = context(ext, M)
    H1 = H1YGroup(ctx)
    ident = psi_map(H1, H1, lambda v: list(v), lambda v: list(v))
    assert ident.equals(AbMap.identity(H1.group))
    dbl = psi_map(H1, H1, lambda v: [2 * x for x in v], lambda v: [2 * x for x in v])
    c = H1.c_map()
    twice = AbMap.from_function(ctx.Y.coinvariants(), ctx.Y.coinvariants(), lambda v: [2 * x for x in v])
    assert dbl.compose(c).equals(c.compose(twice))


def test_pullback_independent_of_lift():
    G = grp.cyclic(2)
    A = regular_module(G)  # H^1(G, A) = 0
    rng = random.Random(5)
    a = {(1, 1): [1, 1]}
    b = {(1,): [2, 1]}
    E = ExtensionData(TwoCocycle(A, a))
    Ep = ExtensionData(TwoCocycle(A, cochain_add(a, coboundary(A, b, 1), 2)))
    M = regular_module(G)
    cE, cEp = context(E, M), context(Ep, M)
    H1E, H1Ep = H1YGroup(cE), H1YGroup(cEp)
    maps = []
    for _ in range(2):
        e = [rng.randint(-3, 3) for _ in range(2)]
        lift = cochain_add(b, coboundary(A, e, 0), 2)
        mor = ExtensionMorphism(Ep, E, lambda v: list(v), lift)
        maps.append(pullback_map(H1E, H1Ep, mor))
    assert maps[0].equals(maps[1]) and maps[0].is_iso()


def test_restriction_square_to_whole_and_trivial():
    ext = cyclic_ext(4)
    G = ext.G
    ctx = context(ext, trivial_module(G))
    H1 = H1YGroup(ctx)
    for H in (G.whole(), G.trivial_subgroup()):
        res, avg, H2 = h1y_restrict(ctx, H, H1)
        assert res.compose(H1.c_map()).equals(H2.c_map().compose(avg))
    res, avg, _ = h1y_restrict(ctx, G.whole(), H1)
    assert res.equals(AbMap.identity(H1.group))


@settings(max_examples=40, deadline=None)
@given(st.integers(0, 10 ** 6))
def test_generated_contexts(seed):
    fx = gen_h1y(random.Random(seed))
    ctx = h1y_context(fx)
    H1 = H1YGroup(ctx)
    assert all(inflation_restriction_exactness(H1).values())
    c = H1.c_map()
    assert H1.r_map().compose(c).equals(ctx.Y.norm_map())
    # c(y) = c(g y)
    for g in ctx.G.gens:
        for i in range(ctx.Y.rank):
            y = [int(j == i) for j in range(ctx.Y.rank)]
            assert H1.classify(*H1.c_zero(y)) == H1.classify(*H1.c_zero(ctx.Y.act(g, y)))
    v = absBT_criterion(ctx, H1)
    assert v["c_iso"] == (v["cup_minus1_bijective"] and v["cup_0_injective"])


@settings(max_examples=25, deadline=None)
@given(st.integers(0, 10 ** 6))
def test_restriction_square(seed):
    rng = random.Random(seed)
    fx = gen_h1y(rng)
    ctx = h1y_context(fx)
    H = rng.choice(ctx.G.all_subgroups())
    H1 = H1YGroup(ctx)
    res, avg, H2 = h1y_restrict(ctx, H, H1)
    assert res.compose(H1.c_map()).equals(H2.c_map().compose(avg))


def test_fiber_product_projection():
    ext = cyclic_ext(2)
    M = trivial_module(ext.G)
    ctx = context(ext, M)
    H1 = H1YGroup(ctx)
    pi, h1e = H1.pi_map()
    assert pi.is_iso()  # Y = Hom(A, M) and xi = id
    assert nf(h1e.group) == nf(h1_extension(ext, M).group)
