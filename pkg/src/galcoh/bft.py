"""Groups B_i(F, T) = (M (x) X_i)_G for a torus with cocharacter module M, at a fixed level K.

Also: the norm (Newton) map, localization at places of S, the total
localization sequence and its image criterion, inflation along towers,
corestriction/restriction, Shapiro, and the reductive groups A, A_0.
"""
from __future__ import annotations

from dataclasses import dataclass
from itertools import product

from .intlat import AbMap, PresentedAbGroup, exact_at, zeros
from .gmod import GModule, GModuleMap, coinduction, inflate_module, restrict_module, tensor_module
from .global_model import from_reduced, tower_maps, x_sequence
from .tate import tate_cohomology


@dataclass
class TorusData:
    model: object
    M: GModule
    allow_torsion: bool = False

    def __post_init__(self):
        if self.M.group is not self.model.group:
            raise ValueError("M and the model live over different groups")
        if not self.allow_torsion and not self.M.is_torsion_free():
            raise ValueError("cocharacter module must be torsion-free")


@dataclass
class BGroup:
    index: object
    module: GModule          # M (x) X_i
    group: PresentedAbGroup  # its coinvariants

    def classify(self, v):
        return self.group.coords(v)

    def representative(self, coords):
        return self.group.lift(coords)

    def normal_form(self):
        return self.group.normal_form()

    def to_json(self):
        return {"index": self.index, **self.normal_form()}


def _x(model, i):
    seq = x_sequence(model)
    return {1: seq.X1, 2: seq.X2, 3: seq.X3}[i]


def coefficient_module(t, i):
    """M (x) X_i, cached on the torus data."""
    cache = t.__dict__.setdefault("_coef", {})
    if i not in cache:
        cache[i] = tensor_module(t.M, _x(t.model, i))
    return cache[i]


def bft_compute(t, i):
    T = coefficient_module(t, i)
    return BGroup(i, T, T.coinvariants())


def newton_norm(t, i):
    """N: B_i -> (M (x) X_i)^G."""
    T = coefficient_module(t, i)
    return T.norm_map()


def newton_kernel_check(t, i):
    """(kernel of N, cokernel of N) against Ĥ^-1 and Ĥ^0 of M (x) X_i."""
    T = coefficient_module(t, i)
    N = T.norm_map()
    return {
        "kernel_is_H-1": N.kernel().normal_form() == tate_cohomology(T, -1).normal_form(),
        "cokernel_is_H0": N.cokernel().normal_form() == tate_cohomology(T, 0).normal_form(),
    }


# ---------------------------------------------------------------- localization

def _x3_to_x2(t, v):
    """An element of M (x) X_3 as the list of its X_2 components m_w (one M-vector per place of S_K)."""
    k = len(t.model.S_points)
    n = t.M.rank
    out = [[0] * n for _ in range(k)]
    # tensor index r * (k - 1) + a holds the coefficient of m_r (x) (s_0 - s_{a+1})
    for r in range(n):
        for a in range(k - 1):
            b = v[r * (k - 1) + a]
            if b:
                out[0][r] += b
                out[a + 1][r] -= b
    return out


def local_group(t, v):
    """M_{G_v} for a place v in S_K."""
    Gv = t.model.decomposition_group(v)
    return restrict_module(t.M, Gv).coinvariants()


def _localize_vec(t, v, comps):
    m = t.model
    G = m.group
    M = t.M
    Gv = m.decomposition_group(v)
    SK = m.places
    out = [0] * M.rank
    for x in Gv.coset_representatives("right"):
        w = SK.act[G.inv[x]][v]
        mw = comps[m.place_index(w)]
        if any(mw):
            out = [a + b for a, b in zip(out, M.act(x, mw))]
    return out


def localize(t, v):
    """(M (x) X_3)_G -> M_{G_v}, sum_w m_w w -> sum over G_v\\G of s(m_{s^-1 v})."""
    m = t.model
    m.place_index(v)
    src = bft_compute(t, 3).group
    dst = local_group(t, v)
    return AbMap.from_function(src, dst, lambda vec: _localize_vec(t, v, _x3_to_x2(t, vec)))


def _coinvariant_relations(M):
    rels = [list(r) for r in M.relations]
    for g in M.group.gens:
        a = M.action[g]
        for j in range(M.rank):
            col = [a[i][j] - (1 if i == j else 0) for i in range(M.rank)]
            if any(col):
                rels.append(col)
    return rels


class TotalLocalization:
    """(M (x) X_3)_G -> sum_u M_{G_v(u)} -> M_G -> 0 with one place v(u) per place u in S."""

    def __init__(self, t):
        self.t = t
        m = t.model
        self.places = [v for _, v in m.representatives()]
        self.locals = [local_group(t, v) for v in self.places]
        n = t.M.rank
        k = len(self.places)
        rels = []
        for a, v in enumerate(self.places):
            MV = restrict_module(t.M, m.decomposition_group(v))
            for r in _coinvariant_relations(MV):
                rels.append([0] * (a * n) + r + [0] * ((k - a - 1) * n))
        self.target = PresentedAbGroup(n * k, rels)
        self.src = bft_compute(t, 3).group
        self.MG = t.M.coinvariants()
        self._n = n

        def loc(vec):
            comps = _x3_to_x2(t, vec)
            out = []
            for v in self.places:
                out.extend(_localize_vec(t, v, comps))
            return out
        self.loc_vec = loc
        self.loc = AbMap.from_function(self.src, self.target, loc)

        def total(vec):
            out = [0] * n
            for a in range(len(self.places)):
                out = [x + y for x, y in zip(out, vec[a * n:(a + 1) * n])]
            return out
        self.sum_vec = total
        self.sum = AbMap.from_function(self.target, self.MG, total)

    def exactness(self):
        return {"middle": exact_at(self.loc, self.sum), "right": self.sum.is_surjective()}

    def image_criterion(self, tup):
        """Whether a tuple (one M-vector per place of S) lies in the image of localization."""
        return self.MG.is_zero(self.sum_vec(_flatten(tup)))

    def in_image_bruteforce(self, tup, radius=2):
        """Search M (x) X_3 representatives with entries in [-radius, radius]."""
        want = self.target.coords(_flatten(tup))
        dim = self.src.dim
        for x in product(range(-radius, radius + 1), repeat=dim):
            if self.target.coords(self.loc_vec(list(x))) == want:
                return True
        return False

    def image_set(self, radius=2):
        """Canonical coordinates of loc(x) for all representatives x in the box."""
        dim = self.src.dim
        return {tuple(self.target.coords(self.loc_vec(list(x))))
                for x in product(range(-radius, radius + 1), repeat=dim)}

    def to_json(self):
        return {"places": self.places, "source": self.src.normal_form(),
                "locals": [g.normal_form() for g in self.locals], "M_G": self.MG.normal_form(),
                "localization": self.loc.matrix, "sum": self.sum.matrix, **self.exactness()}


def _flatten(tup):
    return [x for v in tup for x in v]


def total_localization(t):
    return TotalLocalization(t)


def norm_localization_square(t, v):
    """Localization commutes with norms: N_{G_v}(loc x) = (N_G x)_v, the v-component."""
    m = t.model
    T = coefficient_module(t, 3)
    Gv = m.decomposition_group(v)
    MV = restrict_module(t.M, Gv)
    src = bft_compute(t, 3).group
    i = m.place_index(v)
    for gvec in src.generators():
        lhs = MV.norm(_localize_vec(t, v, _x3_to_x2(t, gvec)))
        rhs = _x3_to_x2(t, T.norm(gvec))[i]
        if lhs != rhs:
            return False
    return True


# ---------------------------------------------------------------- inflation

def inflate(tower, M, i):
    """id (x) j: B_i(upper, M inflated) -> B_i(lower, M) with its inverse from j-preimages.

    ``M`` is a module over the lower group.  Returns a dict with the map,
    the inverse built by lifting m (x) v to m (x) w for a chosen w over v,
    and the norm compatibility flag.
    """
    G = tower.upper.group
    ML = inflate_module(M, tower.proj, G)
    maps = tower_maps(tower)
    XL, XK = maps.X_upper[i], _x(tower.lower, i)
    TL, TK = tensor_module(ML, XL), tensor_module(M, XK)
    n = M.rank
    nL, nK = XL.rank, XK.rank
    J, P = maps.j[i], maps.p[i]
    idj = _tensor_id_matrix(n, J, nL, nK)
    idp = _tensor_id_matrix(n, P, nK, nL)
    BL, BK = TL.coinvariants(), TK.coinvariants()
    fwd = AbMap.from_function(BL, BK, lambda v: _mv(idj, v))
    # section of j: v -> the first place above it (with reduced coordinates for i = 3)
    sec = _section(tower, i, nL, nK)
    ids = _tensor_id_matrix(n, sec, nK, nL)
    back = AbMap.from_function(BK, BL, lambda v: _mv(ids, v))
    NL = AbMap.from_function(BL, TL.invariants(), TL.norm)
    NK = AbMap.from_function(BK, TK.invariants(), TK.norm)
    P_inv = AbMap.from_function(TK.invariants(), TL.invariants(), lambda v: _mv(idp, v))
    return {
        "map": fwd,
        "inverse": back,
        "bijective": fwd.is_iso(),
        "inverse_ok": back.compose(fwd).equals(AbMap.identity(BL)) and fwd.compose(back).equals(AbMap.identity(BK)),
        "norm_square": P_inv.compose(NK).compose(fwd).equals(NL),
    }


def _section(tower, i, nL, nK):
    if i == 1:
        return [[1]]
    first = {}
    for w, v in enumerate(tower.below):
        first.setdefault(v, w)
    SLsize = len(tower.below)
    s2 = zeros(SLsize, len(first))
    for v, w in first.items():
        s2[w][v] = 1
    if i == 2:
        return s2
    cols = []
    for a in range(nK):
        e = [1 if k == a else 0 for k in range(nK)]
        c = from_reduced(e)
        up = [sum(s2[r][q] * c[q] for q in range(len(c))) for r in range(SLsize)]
        cols.append([-x for x in up[1:]])
    return [list(r) for r in zip(*cols)] if cols else zeros(nL, 0)


def _tensor_id_matrix(n, f, n_src, n_dst):
    out = zeros(n * n_dst, n * n_src)
    for r in range(n):
        for a in range(n_dst):
            for b in range(n_src):
                if f[a][b]:
                    out[r * n_dst + a][r * n_src + b] = f[a][b]
    return out


def _mv(A, v):
    return [sum(a * x for a, x in zip(row, v)) for row in A]


# ---------------------------------------------------------------- Cor / Res / Shapiro

def cor_res(t, H, i):
    """Cor: (M (x) X_i)_H -> (M (x) X_i)_G (identity) and Res: y -> sum over H\\G of s y."""
    T = coefficient_module(t, i)
    TH = restrict_module(T, H)
    BH, BG = TH.coinvariants(), T.coinvariants()
    reps = H.coset_representatives("right")

    def avg(y):
        out = [0] * T.rank
        for x in reps:
            out = [a + b for a, b in zip(out, T.act(x, y))]
        return out
    cor = AbMap.from_function(BH, BG, lambda y: list(y))
    res = AbMap.from_function(BG, BH, avg)
    # invariants side: Res is the inclusion, Cor sums over left cosets
    IH, IG = TH.invariants(), T.invariants()
    lreps = H.coset_representatives("left")

    def lavg(y):
        out = [0] * T.rank
        for x in lreps:
            out = [a + b for a, b in zip(out, T.act(x, y))]
        return out
    cor_inv = AbMap.from_function(IH, IG, lavg)
    res_inv = AbMap.from_function(IG, IH, lambda y: list(y))
    NH = AbMap.from_function(BH, IH, TH.norm)
    NG = AbMap.from_function(BG, IG, T.norm)
    idx = H.parent.order // H.order
    return {
        "cor": cor, "res": res,
        "cor_square": NG.compose(cor).equals(cor_inv.compose(NH)),
        "res_square": NH.compose(res).equals(res_inv.compose(NG)),
        "cor_res_is_index": cor.compose(res).equals(AbMap.identity(BG).scaled(idx)),
    }


def shapiro_bft(model, H, M0, i):
    """B_i(F, R(M0)) ~ B_i(E, M0) for the coinduced module R(M0) of an H-module M0."""
    R = coinduction(H, M0)
    X = _x(model, i)
    T = tensor_module(R.module, X)
    XH = restrict_module(X, H)
    T0 = tensor_module(M0, XH)
    nX = X.rank
    n0 = M0.rank
    BG, BH = T.coinvariants(), T0.coinvariants()
    reps = H.coset_representatives("right")

    def fwd(y):
        # sum over H\G of (eps (x) id)(s y)
        out = [0] * T0.rank
        for x in reps:
            z = T.act(x, y)
            for r in range(n0):
                for c in range(nX):
                    out[r * nX + c] += z[r * nX + c]
        return out

    def back(y):
        # j (x) id: put the M0 part in block 0 of R(M0)
        out = [0] * T.rank
        for r in range(n0):
            for c in range(nX):
                out[r * nX + c] = y[r * nX + c]
        return out
    f = AbMap.from_function(BG, BH, fwd)
    b = AbMap.from_function(BH, BG, back)
    return {
        "forward": f, "backward": b,
        "inverse_pair": f.compose(b).equals(AbMap.identity(BH)) and b.compose(f).equals(AbMap.identity(BG)),
        "source": BG.normal_form(), "target": BH.normal_form(),
    }


# ---------------------------------------------------------------- reductive bookkeeping

@dataclass
class LambdaData:
    Lam: GModule
    LamC: GModule
    iota: list      # matrix LamC -> Lam

    def __post_init__(self):
        GModuleMap(self.LamC, self.Lam, self.iota)
        if not self.LamC.is_torsion_free():
            raise ValueError("the central part must be torsion-free")


def reductive_a(model, lam):
    """A = (Lam (x) X_3)_G, N: A -> (Lam (x) X_3)^G, and A_0 = N^-1 of the image of (LamC (x) X_3)^G."""
    X3 = x_sequence(model).X3
    T = tensor_module(lam.Lam, X3)
    TC = tensor_module(lam.LamC, X3)
    A = T.coinvariants()
    inv = T.invariants()
    N = AbMap.from_function(A, inv, T.norm)
    idi = _tensor_id_matrix_left(lam.iota, lam.LamC.rank, lam.Lam.rank, X3.rank)
    J = AbMap.from_function(TC.invariants(), inv, lambda v: _mv(idi, v))
    coker = J.cokernel()
    # coker is presented on the canonical coordinates of inv
    q = AbMap.from_function(inv, coker, inv.coords)
    A0 = q.compose(N).kernel()
    local = {}
    for u, v in model.representatives():
        Gv = model.decomposition_group(v)
        local[v] = restrict_module(lam.Lam, Gv).coinvariants()
    return {
        "A": A, "N": N, "A0": A0, "iota_invariants": J,
        "iota_injective": J.is_injective(), "local": local,
    }


def _tensor_id_matrix_left(f, n_src, n_dst, k):
    """f (x) id_k for f an n_dst x n_src matrix, tensor index i * k + j."""
    out = zeros(n_dst * k, n_src * k)
    for a in range(n_dst):
        for b in range(n_src):
            if f[a][b]:
                for j in range(k):
                    out[a * k + j][b * k + j] = f[a][b]
    return out


def reductive_localization(model, lam, v):
    """A -> A(F_v) = (Lam)_{G_v}, same formula as for tori."""
    t = TorusData(model, lam.Lam, allow_torsion=True)
    return localize(t, v)
