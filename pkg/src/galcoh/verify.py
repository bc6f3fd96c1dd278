"""Randomized property harness behind ``galcoh verify``.

Each suite draws JSON-able fixtures from a per-case RNG seeded by
(seed, suite, case index), checks one property block and, on failure,
shrinks the fixture (halving matrix entries, dropping orbits and module
pieces) while the failure persists.
"""
from __future__ import annotations

import random
import time

from . import groups as grp
from .intlat import determinant, mat_mul, smith_normal_form
from .gmod import (direct_sum, hom_module, identity_map, permutation_module, sign_module,
                   trivial_module)

SUITES = ("intlat", "gmod", "cochains", "h1y", "tn", "global", "bft")

FIXTURES = {
    "C1": grp.trivial, "C2": lambda: grp.cyclic(2), "C3": lambda: grp.cyclic(3), "C4": lambda: grp.cyclic(4),
    "C5": lambda: grp.cyclic(5), "C6": lambda: grp.cyclic(6), "V4": grp.klein_four,
    "S3": lambda: grp.symmetric(3), "D8": lambda: grp.dihedral(4), "Q8": grp.quaternion,
    "C2^3": lambda: grp.elementary_abelian_2(3), "S4": lambda: grp.symmetric(4),
}
SMALL = ["C2", "C3", "C4", "C6", "V4", "S3", "D8", "Q8", "C2^3"]
_GROUPS = {}


class UnknownSuite(ValueError):
    pass


def group(name):
    if name not in _GROUPS:
        _GROUPS[name] = FIXTURES[name]()
    return _GROUPS[name]


def _sub(G, members):
    return G._sub(frozenset(members))


# ---------------------------------------------------------------- fixture data

def random_gset_spec(G, rng, max_orbits=3):
    subs = G.all_subgroups()
    return [sorted(rng.choice(subs).members) for _ in range(rng.randint(1, max_orbits))]


def build_gset(G, spec):
    return grp.disjoint_union(*[grp.coset_gset(_sub(G, m)) for m in spec])


def random_module_spec(G, rng, max_rank=3):
    subs = G.all_subgroups()
    pieces, budget = [], max_rank
    while budget > 0 and (not pieces or rng.random() < 0.6):
        k = rng.random()
        if k < 0.5:
            H = rng.choice([h for h in subs if h.index <= budget] or [G.whole()])
            red = H.index > 1 and rng.random() < 0.4
            p = {"kind": "perm", "subgroup": sorted(H.members), "reduced": red}
            r = H.index - (1 if red else 0)
        elif k < 0.75 and any(h.index == 2 for h in subs):
            p = {"kind": "sign", "subgroup": sorted(rng.choice([h for h in subs if h.index == 2]).members)}
            r = 1
        else:
            p, r = {"kind": "trivial"}, 1
        if r == 0 or r > budget:
            continue
        pieces.append(p)
        budget -= r
    return pieces or [{"kind": "trivial"}]


def build_module(G, spec):
    mods = []
    for p in spec:
        if p["kind"] == "perm":
            mods.append(permutation_module(grp.coset_gset(_sub(G, p["subgroup"])), p.get("reduced", False)))
        elif p["kind"] == "sign":
            mods.append(sign_module(G, _sub(G, p["subgroup"])))
        else:
            mods.append(trivial_module(G))
    return direct_sum(*mods) if len(mods) > 1 else mods[0]


# ---------------------------------------------------------------- suites

def gen_intlat(rng):
    m, n = rng.randint(1, 8), rng.randint(1, 8)
    return {"matrix": [[rng.randint(-9, 9) for _ in range(n)] for _ in range(m)]}


def check_intlat(fx):
    A = fx["matrix"]
    s = smith_normal_form(A)
    m, n = len(A), len(A[0])
    if mat_mul(mat_mul(s.U, A), s.V) != s.D:
        return False
    if abs(determinant(s.U)) != 1 or abs(determinant(s.V)) != 1:
        return False
    d = s.diagonal()
    if any(s.D[i][j] for i in range(m) for j in range(n) if i != j):
        return False
    nz = [x for x in d if x]
    if any(x < 0 for x in d) or d[:len(nz)] != nz:
        return False
    return all(nz[i + 1] % nz[i] == 0 for i in range(len(nz) - 1))


def gen_gmod(rng):
    name = rng.choice(SMALL)
    G = group(name)
    return {"group": name, "gset": random_gset_spec(G, rng), "degree": rng.randint(-3, 3)}


def check_gmod(fx):
    """Shapiro: Ĥ^r(G, Z[S]) ~ sum over orbits of Ĥ^r(G_s, Z)."""
    from .tate import tate_cohomology
    G = group(fx["group"])
    if not fx["gset"]:
        return True
    X = build_gset(G, fx["gset"])
    r = fx["degree"]
    lhs = tate_cohomology(permutation_module(X), r).group
    tors, free = [], 0
    for orb, H in grp.orbits_and_stabilizers(X):
        g = tate_cohomology(trivial_module(H.group()), r).group
        tors += g.torsion
        free += g.free_rank
    return _same_invariants(lhs.torsion, lhs.free_rank, tors, free)


def _same_invariants(t1, f1, t2, f2):
    from .intlat import PresentedAbGroup
    n = len(t2)
    B = PresentedAbGroup(n, [[d if j == i else 0 for j in range(n)] for i, d in enumerate(t2)])
    return f1 == f2 and sorted(t1) == sorted(B.torsion)


def gen_cochains(rng):
    name = rng.choice(SMALL)
    G = group(name)
    subs = G.all_subgroups()
    return {"group": name, "subgroup": sorted(rng.choice(subs).members), "module": random_module_spec(G, rng, 2),
            "degree": rng.choice([1, 2])}


def check_cochains(fx):
    from .cochains import corestrict, restrict
    from .tate import tate_cohomology
    G = group(fx["group"])
    H = _sub(G, fx["subgroup"])
    M = build_module(G, fx["module"])
    r = fx["degree"]
    T = tate_cohomology(M, r)
    for coords, rep in zip(_units(T.ngens), T.generators()):
        MH, fH = restrict(M, rep, r, H)
        back = corestrict(M, fH, r, H)
        want = [c * H.index for c in coords]
        if T.classify(back) != T.group.reduce(want):
            return False
    return True


def _units(n):
    return [[1 if j == i else 0 for j in range(n)] for i in range(n)]


def gen_h1y(rng):
    name = rng.choice(["C2", "C3", "C4", "V4", "S3", "C6"])
    G = group(name)
    return {"group": name, "module": random_module_spec(G, rng, 2), "cocycle_scale": rng.choice([0, 1, 1, 2, -1]),
            "generator": rng.randint(0, 3)}


def h1y_context(fx):
    from .cochains import ExtensionData, TwoCocycle
    from .h1y import H1YContext
    from .tate import tate_cohomology
    G = group(fx["group"])
    A = trivial_module(G)
    T2 = tate_cohomology(A, 2)
    tab = {}
    if T2.ngens:
        gens = T2.generators()
        base = gens[fx["generator"] % len(gens)]
        tab = {k: [fx["cocycle_scale"] * x for x in v] for k, v in base.items()}
    E = ExtensionData(TwoCocycle(A, tab))
    M = build_module(G, fx["module"])
    H = hom_module(A, M)
    return H1YContext(E, M, H, identity_map(H).matrix, hom=H)


def check_h1y(fx):
    from .h1y import H1YGroup, absBT_criterion, inflation_restriction_exactness
    ctx = h1y_context(fx)
    H1 = H1YGroup(ctx)
    if not all(inflation_restriction_exactness(H1).values()):
        return False
    c = H1.c_map()  # constructing it checks that c factors through Y_G
    N = ctx.Y.norm_map()
    if not H1.r_map().compose(c).equals(N):
        return False
    v = absBT_criterion(ctx, H1)
    return v["c_iso"] == (v["cup_minus1_bijective"] and v["cup_0_injective"])


def gen_tn(rng):
    n = rng.choice([2, 3, 4, 6])
    return {"n": n, "module": random_module_spec(grp.cyclic(n), rng, 3), "scale": 1}


def check_tn(fx, mutant=None):
    from .tn import c_iso_check, cyclic_model_triple, scaled_triple, verify_weak_tn
    name = "C%d" % fx["n"]
    G = group(name)
    t = cyclic_model_triple(fx["n"], G)
    scale = 0 if mutant == "alpha-zero" else fx.get("scale", 1)
    if scale != 1:
        t = scaled_triple(t, scale)
    v = verify_weak_tn(t)
    if not (v.is_weak_tn and v.is_rigid):
        return False
    M = build_module(G, fx["module"])
    return c_iso_check(t, M)[0]


def gen_global(rng):
    name = rng.choice(SMALL)
    G = group(name)
    normals = [sorted(H.members) for H in G.all_subgroups() if H.is_normal()]
    return {"group": name, "gset": random_gset_spec(G, rng), "normal": rng.choice(normals),
            "cover": rng.random() < 0.7}


def _global_models(fx):
    from .global_model import GlobalModel
    G = group(fx["group"])
    spec = list(fx["gset"])
    if fx.get("cover"):
        seen = set()
        for C in G.cyclic_subgroups():
            if C.members not in seen:
                spec.append(sorted(C.members))
                seen |= {C.conjugate(x).members for x in range(G.order)}
    if not spec:
        return None
    return GlobalModel(G, build_gset(G, spec))


def check_global(fx):
    from .global_model import (TowerModel, adequacy_check, coinvariant_exactness,
                               stabilizers_generate_abelianization, tower_maps)
    m = _global_models(fx)
    if m is None:
        return True
    ce = coinvariant_exactness(m)["exact"]
    if ce != stabilizers_generate_abelianization(m):
        return False
    if adequacy_check(m)["cyclic_cover"]:
        if not ce:
            return False
        T = TowerModel(m, _sub(m.group, fx["normal"]))
        maps = tower_maps(T)
        return all(all(c.values()) for c in maps.checks.values())
    return True


def gen_bft(rng):
    name = rng.choice(["C2", "C3", "C4", "V4", "S3"])
    G = group(name)
    return {"group": name, "gset": random_gset_spec(G, rng, 2), "module": random_module_spec(G, rng, 1)}


def check_bft(fx):
    from .bft import TorusData, newton_kernel_check, norm_localization_square, total_localization
    from .global_model import GlobalModel
    G = group(fx["group"])
    if not fx["gset"]:
        return True
    m = GlobalModel(G, build_gset(G, fx["gset"]))
    t = TorusData(m, build_module(G, fx["module"]))
    T = total_localization(t)
    if not all(T.exactness().values()):
        return False
    if not all(all(newton_kernel_check(t, i).values()) for i in (1, 2, 3)):
        return False
    if not all(norm_localization_square(t, v) for v in m.S_points):
        return False
    # image criterion against a box search on small instances
    if T.src.dim <= 4:
        images = T.image_set(radius=2)
        n, k = t.M.rank, len(T.places)
        for tup in _small_tuples(n, k):
            crit = T.image_criterion(tup)
            found = tuple(T.target.coords([x for v in tup for x in v])) in images
            if found and not crit:
                return False
            if crit and not found and T.in_image_bruteforce(tup, radius=3) is False:
                return False
    return True


def _small_tuples(n, k):
    from itertools import product
    for vals in product(range(-1, 2), repeat=n * k):
        yield [list(vals[a * n:(a + 1) * n]) for a in range(k)]


GENERATORS = {"intlat": gen_intlat, "gmod": gen_gmod, "cochains": gen_cochains, "h1y": gen_h1y,
              "tn": gen_tn, "global": gen_global, "bft": gen_bft}
CHECKS = {"intlat": check_intlat, "gmod": check_gmod, "cochains": check_cochains, "h1y": check_h1y,
          "tn": check_tn, "global": check_global, "bft": check_bft}


# ---------------------------------------------------------------- shrinking

def _candidates(fx):
    """Smaller variants: halve matrix entries, drop orbits, drop module pieces."""
    if "matrix" in fx:
        A = fx["matrix"]
        half = [[int(x / 2) for x in row] for row in A]
        if half != A and any(any(r) for r in half):
            yield {**fx, "matrix": half}
        if len(A) > 1:
            yield {**fx, "matrix": A[:-1]}
        if len(A[0]) > 1:
            yield {**fx, "matrix": [r[:-1] for r in A]}
    for key in ("gset", "module"):
        if key in fx and len(fx[key]) > 1:
            for i in range(len(fx[key])):
                yield {**fx, key: fx[key][:i] + fx[key][i + 1:]}


def shrink(fx, failing, budget=200):
    cur = fx
    while budget > 0:
        for cand in _candidates(cur):
            budget -= 1
            try:
                bad = failing(cand)
            except Exception:
                bad = True
            if bad:
                cur = cand
                break
        else:
            return cur
    return cur


# ---------------------------------------------------------------- driver

def case_rng(seed, suite, i):
    return random.Random("%d:%s:%d" % (seed, suite, i))


def run_case(suite, fx, mutant=None):
    check = CHECKS[suite]
    try:
        ok = check(fx, mutant=mutant) if suite == "tn" else check(fx)
        return bool(ok), None
    except Exception as e:
        return False, "%s: %s" % (type(e).__name__, e)


def verify(suite, seed, cases, mutant=None):
    if suite == "all":
        suites = list(SUITES)
    elif suite in SUITES:
        suites = [suite]
    else:
        raise UnknownSuite("unknown suite %r" % suite)
    results, failures, timing = [], [], {}
    for s in suites:
        t0 = time.perf_counter()
        for i in range(cases):
            fx = GENERATORS[s](case_rng(seed, s, i))
            ok, err = run_case(s, fx, mutant)
            results.append({"suite": s, "case": i, "ok": ok})
            if not ok:
                small = shrink(fx, lambda f: not run_case(s, f, mutant)[0])
                failures.append({"suite": s, "case": i, "fixture": fx, "minimized": small, "error": err})
        timing[s] = round(time.perf_counter() - t0, 3)
    return {
        "seed": seed, "cases": cases, "suites": suites, "mutant": mutant,
        "passed": sum(r["ok"] for r in results), "failed": len(failures),
        "results": results, "failures": failures, "timing": timing,
    }
