"""Finite models of a Galois extension K/F of global fields.

A model is a finite group G = G(K/F) acting on a finite set of places V_K,
together with a set S of places of F.  Places of F are the G-orbits on V_K;
S is given by orbit indices and S_K is the union of the chosen orbits.  The
local degree [K_w : F_v] is modelled by the order of the stabilizer G_w.
"""
from __future__ import annotations

from dataclasses import dataclass, field

from .intlat import AbMap, Lattice, exact_at, kernel_lattice, zeros
from .groups import GSet, coset_gset, disjoint_union, quotient_group
from .gmod import (GModule, GModuleMap, InvalidMap, augmentation, inflate_module, permutation_module,
                   reduced_inclusion, restrict_module, trivial_module)
from .tate import tate_cohomology


class EmptyS(ValueError):
    pass


class PlaceNotInS(ValueError):
    pass


class InvalidTower(ValueError):
    pass


UNMODELED = ["ideal classes represented by S-supported ideals"]


class GlobalModel:
    """(G, V_K, S) with S a list of orbit indices of V_K."""

    def __init__(self, group, places, S=None, name="model"):
        if places.group is not group:
            raise ValueError("place set is over a different group")
        self.group = group
        self.places = places
        self.name = name
        self.orbits = places.orbits()
        if S is None:
            S = list(range(len(self.orbits)))
        S = sorted(set(S))
        for u in S:
            if not 0 <= u < len(self.orbits):
                raise ValueError("S refers to a missing orbit %r" % u)
        self.S = S
        self.S_points = sorted(p for u in S for p in self.orbits[u])
        self._pos = {p: i for i, p in enumerate(self.S_points)}
        self.SK = places.restrict_points(self.S_points) if self.S_points else None

    # -- places
    def place_index(self, v):
        """Index of the place v of V_K inside S_K."""
        if v not in self._pos:
            raise PlaceNotInS("place %r is not in S_K" % (v,))
        return self._pos[v]

    def orbit_of(self, v):
        for u, orb in enumerate(self.orbits):
            if v in orb:
                return u

    def decomposition_group(self, v):
        return self.places.stabilizer(v)

    def representatives(self):
        """One place of V_K (the smallest) over each place u in S."""
        return [(u, self.orbits[u][0]) for u in self.S]

    def local_degree(self, v):
        return self.decomposition_group(v).order

    def to_json(self):
        return {"name": self.name, "group": self.group.to_json(), "places": self.places.to_json(),
                "S": list(self.S), "unmodeled": list(UNMODELED)}


def three_place_model(G=None):
    """C_2 on V_K = {v1, v2, w}: v1 <-> v2 swapped and w fixed, S = all."""
    from .groups import cyclic
    G = G or cyclic(2)
    table = [tuple(range(3)) if g == 0 else (1, 0, 2) for g in range(G.order)]
    return GlobalModel(G, GSet(G, 3, table=table), name="C2 three-place")


@dataclass
class XSequence:
    X3: GModule
    X2: GModule
    X1: GModule
    b_prime: GModuleMap
    b: GModuleMap

    def is_exact(self):
        n3, n2 = self.X3.rank, self.X2.rank
        comp = [[sum(self.b.matrix[0][k] * self.b_prime.matrix[k][j] for k in range(n2)) for j in range(n3)]]
        if any(comp[0]):
            return False
        ker = Lattice(n2, kernel_lattice(self.b.matrix, n2))
        img = Lattice(n2, [list(c) for c in zip(*self.b_prime.matrix)] if n3 else [])
        surj = any(x == 1 or x == -1 for x in self.b.matrix[0]) or n2 == 0
        return ker.equals(img) and img.rank == n3 and surj


def x_sequence(m):
    if not m.S_points:
        raise EmptyS("S is empty")
    X2 = permutation_module(m.SK)
    X1 = trivial_module(m.group)
    b = augmentation(m.SK)
    b = GModuleMap(X2, X1, b.matrix)
    if m.SK.size > 1:
        inc = reduced_inclusion(m.SK)
        X3 = inc.source
        bp = GModuleMap(X3, X2, inc.matrix)
    else:
        X3 = GModule(m.group, 0, action=[[] for _ in range(m.group.order)], name="Z[S]0", check=False)
        bp = GModuleMap(X3, X2, [[]], check=False)
    seq = XSequence(X3, X2, X1, bp, b)
    if not seq.is_exact():
        raise AssertionError("X sequence failed to be exact")
    return seq


def x_module(m, i):
    seq = x_sequence(m)
    return {1: seq.X1, 2: seq.X2, 3: seq.X3}[i]


# reduced coordinates: X_3 has basis s_0 - s_i, so a degree zero vector c of X_2
# has X_3 coordinates (-c_1, ..., -c_{n-1})
def to_reduced(c):
    return [-x for x in c[1:]]


def from_reduced(a):
    return [sum(a)] + [-x for x in a]


# ---------------------------------------------------------------- adequacy

def adequacy_check(m):
    G = m.group
    stab_S = {m.decomposition_group(v).members for v in m.S_points}
    stab_V = {m.decomposition_group(v).members for v in range(m.places.size)}
    cyc = {C.members for C in G.cyclic_subgroups()}
    return {
        "stabilizer_cover": stab_S == stab_V,
        "cyclic_cover": cyc <= stab_S,
    }


def stabilizers_generate_abelianization(m):
    """Whether the G_v (v in S_K) together with [G, G] generate G."""
    G = m.group
    gens = list(G.commutator_subgroup().members)
    for v in m.S_points:
        gens.extend(m.decomposition_group(v).members)
    return len(G.closure(gens)) == G.order


def coinvariant_sequence(m):
    """(X_3)_G -> (X_2)_G -> (X_1)_G as AbMaps."""
    seq = x_sequence(m)
    C3, C2, C1 = seq.X3.coinvariants(), seq.X2.coinvariants(), seq.X1.coinvariants()
    f = AbMap.from_function(C3, C2, seq.b_prime)
    g = AbMap.from_function(C2, C1, seq.b)
    return f, g


def coinvariant_exactness(m):
    """Exactness of 0 -> (X_3)_G -> (X_2)_G -> (X_1)_G -> 0, slot by slot."""
    f, g = coinvariant_sequence(m)
    out = {"left": f.is_injective(), "middle": exact_at(f, g), "right": g.is_surjective()}
    out["exact"] = all(out.values())
    return out


def minus_one_vanishing(m):
    """Ĥ^-1(G', X_3) = 0 for every subgroup G'."""
    seq = x_sequence(m)
    res = {}
    for H in m.group.all_subgroups():
        res[tuple(H.sorted_members)] = tate_cohomology(restrict_module(seq.X3, H), -1).is_trivial()
    return res


# ---------------------------------------------------------------- local model

@dataclass
class LocalModel:
    place: int
    decomposition_group: object
    X: GModule
    mu: list        # X_2 -> Z, coefficient of v
    lam: list       # Z -> X_2, 1 -> v


def local_model_at(m, v):
    i = m.place_index(v)
    Gv = m.decomposition_group(v)
    n = len(m.S_points)
    mu = [[1 if j == i else 0 for j in range(n)]]
    lam = [[1 if j == i else 0] for j in range(n)]
    return LocalModel(v, Gv, trivial_module(Gv.group()), mu, lam)


def kronecker_pattern(m):
    """Matrix of mu_w o lambda_v over all pairs of places in S_K."""
    locs = [local_model_at(m, v) for v in m.S_points]
    return [[sum(a.mu[0][k] * b.lam[k][0] for k in range(len(m.S_points))) for b in locs] for a in locs]


# ---------------------------------------------------------------- towers

class TowerModel:
    """L/K/F: the upper model over G(L/F), the normal subgroup N = G(L/K),
    the lower model over Q = G(K/F) on the N-orbits of S_L, and the maps
    proj: G(L/F) -> Q and below: S_L -> S_K.
    """

    def __init__(self, upper, N, lower=None, proj=None, below=None):
        if not N.is_normal():
            raise InvalidTower("G(L/K) must be normal")
        self.upper = upper
        self.N = N
        SL = upper.SK
        if SL is None:
            raise EmptyS("S is empty")
        if lower is None:
            Q, proj = quotient_group(N)
            fibers = []
            seen = {}
            for x in range(SL.size):
                if x in seen:
                    continue
                orb = sorted({SL.act[n][x] for n in N.members})
                for y in orb:
                    seen[y] = len(fibers)
                fibers.append(orb)
            below = [seen[x] for x in range(SL.size)]
            gens = []
            for q in Q.gens:
                g = proj.index(q)
                gens.append([below[SL.act[g][f[0]]] for f in fibers])
            lower = GlobalModel(Q, GSet(Q, len(fibers), generator_action=gens), name="lower")
        self.lower = lower
        self.proj = list(proj)
        self.below = list(below)
        self._validate()

    def _validate(self):
        G, Q = self.upper.group, self.lower.group
        SL, SK = self.upper.SK, self.lower.SK
        if len(self.proj) != G.order or len(self.below) != SL.size:
            raise InvalidTower("maps have wrong length")
        for a in range(G.order):
            for b in range(G.order):
                if self.proj[G.mul[a][b]] != Q.mul[self.proj[a]][self.proj[b]]:
                    raise InvalidTower("projection is not a homomorphism")
        kernel = {g for g in range(G.order) if self.proj[g] == 0}
        if kernel != set(self.N.members) or len(set(self.proj)) != Q.order:
            raise InvalidTower("projection kernel differs from G(L/K) or is not onto")
        for g in range(G.order):
            for x in range(SL.size):
                if self.below[SL.act[g][x]] != SK.act[self.proj[g]][self.below[x]]:
                    raise InvalidTower("place map is not equivariant")
        for v in range(SK.size):
            fib = [x for x in range(SL.size) if self.below[x] == v]
            if not fib or sorted({SL.act[n][fib[0]] for n in self.N.members}) != fib:
                raise InvalidTower("fibers must be single G(L/K)-orbits")

    @property
    def degree(self):
        return self.N.order

    def fiber(self, v):
        return [x for x in range(self.upper.SK.size) if self.below[x] == v]

    def local_degree_upper(self, w):
        """[L_w : K_v] modelled as |Stab_N(w)|."""
        SL = self.upper.SK
        return sum(1 for n in self.N.members if SL.act[n][w] == w)


@dataclass
class TowerMaps:
    X_upper: dict           # i -> module over G(L/F)
    X_lower: dict           # i -> lower module inflated to G(L/F)
    j: dict                 # i -> matrix X_i(L) -> X_i(K)
    p: dict                 # i -> matrix X_i(K) -> X_i(L)
    checks: dict = field(default_factory=dict)


def _mat_mul(A, B, rows, inner, cols):
    return [[sum(A[i][k] * B[k][j] for k in range(inner)) for j in range(cols)] for i in range(rows)]


def tower_maps(t):
    """p_i, j_i for i = 1, 2, 3 with the identities p j = N_{L/K}, j p = [L:K] and gamma_i iso."""
    G = t.upper.group
    sL, sK = x_sequence(t.upper), x_sequence(t.lower)
    XL = {1: sL.X1, 2: sL.X2, 3: sL.X3}
    XK = {i: inflate_module(M, t.proj, G) for i, M in ((1, sK.X1), (2, sK.X2), (3, sK.X3))}
    nL, nK = t.upper.SK.size, t.lower.SK.size
    j2 = zeros(nK, nL)
    p2 = zeros(nL, nK)
    for w in range(nL):
        j2[t.below[w]][w] = 1
        p2[w][t.below[w]] = t.local_degree_upper(w)
    j = {1: [[1]], 2: j2}
    p = {1: [[t.degree]], 2: p2}
    # X_3 in reduced coordinates
    j3 = []
    for a in range(nL - 1):
        e = [1 if k == a else 0 for k in range(nL - 1)]
        j3.append(to_reduced([sum(j2[r][c] * x for c, x in enumerate(from_reduced(e))) for r in range(nK)]))
    p3 = []
    for a in range(nK - 1):
        e = [1 if k == a else 0 for k in range(nK - 1)]
        p3.append(to_reduced([sum(p2[r][c] * x for c, x in enumerate(from_reduced(e))) for r in range(nL)]))
    j[3] = [list(r) for r in zip(*j3)] if j3 else zeros(max(nK - 1, 0), 0)
    p[3] = [list(r) for r in zip(*p3)] if p3 else zeros(max(nL - 1, 0), 0)
    out = TowerMaps(XL, XK, j, p)
    for i in (1, 2, 3):
        if XL[i].rank and XK[i].rank:
            try:
                GModuleMap(XL[i], XK[i], j[i])
                GModuleMap(XK[i], XL[i], p[i])
            except InvalidMap as e:
                raise InvalidTower("map %d is not equivariant: %s" % (i, e))
        out.checks[i] = _tower_identities(t, XL[i], XK[i], j[i], p[i])
    return out


def _tower_identities(t, XL, XK, j, p):
    nL, nK = XL.rank, XK.rank
    NL = zeros(nL, nL)
    for n in t.N.members:
        NL = [[x + y for x, y in zip(r, s)] for r, s in zip(NL, XL.action[n])]
    pj = _mat_mul(p, j, nL, nK, nL)
    jp = _mat_mul(j, p, nK, nL, nK)
    d = t.degree
    return {
        "pj_is_norm": pj == NL,
        "jp_is_degree": jp == [[d if a == b else 0 for b in range(nK)] for a in range(nK)],
        "gamma_iso": gamma_map(t, XL, XK, j).is_iso(),
    }


def gamma_map(t, XL, XK, j):
    """gamma: X(L)_{G(L/K)} -> X(K) induced by j."""
    XN = restrict_module(XL, t.N)
    src = XN.coinvariants()
    dst = XK.abgroup
    return AbMap.from_function(src, dst, lambda v: [sum(a * x for a, x in zip(row, v)) for row in j])


def random_tower(rng, G=None, groups=None):
    """A random tower with a normal G(L/K) and a place set containing a point
    with stabilizer C for every cyclic subgroup C (so that gamma is an isomorphism)."""
    from .groups import fixture_groups
    if G is None:
        G = rng.choice(groups or fixture_groups())
    normals = [H for H in G.all_subgroups() if H.is_normal()]
    N = rng.choice(normals)
    cyclic = G.cyclic_subgroups()
    reps, seen = [], set()
    for C in cyclic:
        if C.members in seen:
            continue
        reps.append(C)
        for x in range(G.order):
            seen.add(C.conjugate(x).members)
    pieces = [coset_gset(C) for C in reps]
    extra = rng.randint(0, 1)
    subs = G.all_subgroups()
    for _ in range(extra):
        pieces.append(coset_gset(rng.choice(subs)))
    V = disjoint_union(*pieces)
    upper = GlobalModel(G, V, name="random upper")
    return TowerModel(upper, N)


def random_model(rng, G=None, groups=None, max_orbits=3):
    """A random model with S equal to all of V_K."""
    from .groups import fixture_groups, random_gset
    if G is None:
        G = rng.choice(groups or fixture_groups())
    return GlobalModel(G, random_gset(G, rng, max_orbits), name="random")
