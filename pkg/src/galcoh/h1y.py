"""H^1_Y(E, M) for an extension E of a finite group G by an abelian group A.

A class is represented by a pair (y, m): y in Y^G and a normalized
cochain m on G with values in M such that

    m_s + s m_t - m_{st} = xi(y)(a(s, t))

for the extension cocycle a.  Coboundaries are the pairs (0, s -> s n - n).
The whole group is the subquotient of Z^{rank Y + (|G|-1) rank M} cut out
by these linear conditions, so E itself is never enumerated.
"""
from __future__ import annotations

from .intlat import AbMap, PresentedAbGroup, exact_at, identity, kernel_of
from .gmod import GModuleMap, InvalidMap, hom_evaluate, hom_module, identity_map, restrict_module
from .cochains import (ExtensionData, Pairing, SquareDoesNotCommute, TwoCocycle, cup_map,
                       value)
from .tate import tate_cohomology


class InvalidXi(ValueError):
    pass


def _add(u, v, c=1):
    return [a + c * b for a, b in zip(u, v)]


class H1YContext:
    """(E, M, Y, xi) with xi: Y -> Hom(A, M) a G-map.

    ``xi`` is a GModuleMap into ``hom_module(A, M)`` (built here when a raw
    matrix is given).
    """

    def __init__(self, ext, M, Y, xi, hom=None):
        self.ext = ext
        self.G = ext.G
        self.A = ext.A
        self.M = M
        self.Y = Y
        if M.group is not self.G or Y.group is not self.G:
            raise InvalidXi("modules over different groups")
        self.hom = hom if hom is not None else hom_module(self.A, M)
        if isinstance(xi, GModuleMap):
            xi = xi.matrix
        try:
            self.xi = GModuleMap(Y, self.hom, xi)
        except InvalidMap as e:
            raise InvalidXi(str(e))
        self._pairs = None
        self._data = None

    def xi_eval(self, y, a):
        """xi(y)(a) in M."""
        return hom_evaluate(self.hom, self.xi(y), a)

    def pairing(self):
        """A x Y -> M, (a, y) -> xi(y)(a)."""
        return Pairing(self.A, self.Y, self.M, lambda a, y: self.xi_eval(y, a))

    # -- the linear system
    def _layout(self):
        G = self.G
        nY, nM = self.Y.rank, self.M.rank
        return nY, nM, G.order - 1, nY + (G.order - 1) * nM

    def _mslice(self, s):
        nY, nM, _, _ = self._layout()
        off = nY + (s - 1) * nM
        return off, off + nM

    def pack(self, y, m):
        nY, nM, k, dim = self._layout()
        v = list(y) + [0] * (k * nM)
        for (s,), val in m.items():
            a, b = self._mslice(s)
            v[a:b] = val
        return v

    def unpack(self, v):
        nY, nM, k, dim = self._layout()
        y = list(v[:nY])
        m = {}
        for s in range(1, self.G.order):
            a, b = self._mslice(s)
            if any(v[a:b]):
                m[(s,)] = list(v[a:b])
        return y, m

    def defect(self, y, m):
        """(s, t) -> m_s + s m_t - m_st - xi(y)(a(s,t)); zero (mod relations) exactly on Z^1_Y."""
        G, M = self.G, self.M
        n = M.rank
        out = {}
        for s in range(1, G.order):
            for t in range(1, G.order):
                st = G.mul[s][t]
                v = _add(value(m, (s,), n), M.act(s, value(m, (t,), n)))
                if st:
                    v = _add(v, value(m, (st,), n), -1)
                av = self.ext.cocycle.table.get((s, t))
                if av is not None:
                    v = _add(v, self.xi_eval(y, av), -1)
                out[(s, t)] = v
        return out

    def is_cocycle(self, y, m):
        Y = self.Y
        for g in self.G.gens:
            if not Y.equal(Y.act(g, y), y):
                return False
        return all(self.M.is_zero(v) for v in self.defect(y, m).values())


class H1YGroup:
    """The presented group H^1_Y(E, M) with its structure maps."""

    def __init__(self, ctx):
        self.ctx = ctx
        G, M, Y = ctx.G, ctx.M, ctx.Y
        nY, nM, k, dim = ctx._layout()
        rows, rels = [], []
        # invariance of y
        for g in G.gens:
            a = Y.action[g]
            for i in range(nY):
                rows.append([a[i][j] - (1 if i == j else 0) for j in range(nY)] + [0] * (k * nM))
        # cocycle condition: linear in (y, m); build columns by evaluating on unit vectors
        eqs = [(s, t) for s in range(1, G.order) for t in range(1, G.order)]
        base = len(rows)
        rows.extend([0] * dim for _ in range(len(eqs) * nM))
        for j in range(dim):
            e = [1 if i == j else 0 for i in range(dim)]
            y, m = ctx.unpack(e)
            d = ctx.defect(y, m)
            for q, st in enumerate(eqs):
                v = d[st]
                for a in range(nM):
                    if v[a]:
                        rows[base + q * nM + a][j] = v[a]
        nrows = len(rows)
        # relation slack: Y relations for invariance rows, M relations for cocycle rows
        for gi in range(len(G.gens)):
            for r in Y.relations:
                col = [0] * nrows
                col[gi * nY:(gi + 1) * nY] = r
                rels.append(col)
        for q in range(len(eqs)):
            for r in M.relations:
                col = [0] * nrows
                col[base + q * nM:base + (q + 1) * nM] = r
                rels.append(col)
        num = kernel_of(rows, rels, dim) if rows else identity(dim)
        den = []
        for i in range(nM):
            nvec = [1 if j == i else 0 for j in range(nM)]
            m = {(s,): _add(M.act(s, nvec), nvec, -1) for s in range(1, G.order)}
            den.append(ctx.pack([0] * nY, {t: v for t, v in m.items() if any(v)}))
        for r in Y.relations:
            den.append(list(r) + [0] * (k * nM))
        for s in range(1, G.order):
            for r in M.relations:
                den.append(ctx.pack([0] * nY, {(s,): r}))
        self.group = PresentedAbGroup(dim, den, numerator=num + den)

    # -- codec
    def classify(self, y, m):
        return self.group.coords(self.ctx.pack(y, m))

    def representative(self, coords):
        return self.ctx.unpack(self.group.lift(coords))

    def normal_form(self):
        return self.group.normal_form()

    # -- maps
    def r_map(self):
        ctx = self.ctx
        YG = ctx.Y.invariants()
        nY = ctx.Y.rank
        return AbMap.from_function(self.group, YG, lambda v: v[:nY])

    def i_map(self):
        ctx = self.ctx
        T1 = tate_cohomology(ctx.M, 1)

        def fn(v):
            m = T1.cochain_from_vector(v)
            return ctx.pack([0] * ctx.Y.rank, m)
        return AbMap.from_function(T1.group, self.group, fn)

    def t_map(self):
        ctx = self.ctx
        T2 = tate_cohomology(ctx.M, 2)
        YG = ctx.Y.invariants()

        def fn(y):
            f = {st: ctx.xi_eval(y, av) for st, av in ctx.ext.cocycle.table.items()}
            return T2.to_vector(f)
        return AbMap.from_function(YG, T2.group, fn)

    def c_zero(self, y):
        """c_0(y) = (N y, s -> sum_t t^-1 xi(y)(a(t, s)))."""
        ctx = self.ctx
        G, M = ctx.G, ctx.M
        n = M.rank
        m = {}
        for s in range(1, G.order):
            acc = [0] * n
            for t in range(1, G.order):
                av = ctx.ext.cocycle.table.get((t, s))
                if av is None:
                    continue
                acc = _add(acc, M.act(G.inv[t], ctx.xi_eval(y, av)))
            if any(acc):
                m[(s,)] = acc
        return ctx.Y.norm(y), m

    def c_map(self):
        ctx = self.ctx
        YG_co = ctx.Y.coinvariants()
        return AbMap.from_function(YG_co, self.group, lambda y: ctx.pack(*self.c_zero(y)))

    def pi_map(self, h1e=None):
        """H^1_Y -> H^1(E, M), (y, m) -> (xi(y), m)."""
        ctx = self.ctx
        h1e = h1e or h1_extension(ctx.ext, ctx.M)

        def fn(v):
            y, m = ctx.unpack(v)
            return h1e.ctx.pack(ctx.xi(y), m)
        return AbMap.from_function(self.group, h1e.group, fn), h1e


def h1y_compute(ctx):
    return H1YGroup(ctx)


def h1_extension(ext, M):
    """H^1(E, M) realized as H^1_Y with Y = Hom(A, M) and xi the identity."""
    H = hom_module(ext.A, M)
    ctx = H1YContext(ext, M, H, identity_map(H).matrix, hom=H)
    return H1YGroup(ctx)


def c_map(ctx):
    return H1YGroup(ctx).c_map()


def inflation_restriction_exactness(H1):
    """Exactness of 0 -> H^1(G,M) -> H^1_Y -> Y^G -> H^2(G,M) at its four slots."""
    i, r, t = H1.i_map(), H1.r_map(), H1.t_map()
    return {
        "H1(G,M)": i.is_injective(),
        "H1_Y": exact_at(i, r),
        "Y^G": exact_at(r, t),
        "composite_zero": t.compose(r).is_zero() and r.compose(i).is_zero(),
    }


def absBT_criterion(ctx, H1=None):
    """c iso versus (cup bijective from degree -1, injective from degree 0)."""
    H1 = H1 or H1YGroup(ctx)
    c = H1.c_map()
    P = ctx.pairing()
    a = ctx.ext.cocycle.table
    m1, _ = cup_map(a, P, -1)
    m0, _ = cup_map(a, P, 0)
    return {
        "c_iso": c.is_iso(),
        "cup_minus1_bijective": m1.is_iso(),
        "cup_0_injective": m0.is_injective(),
    }


# ---------------------------------------------------------------- naturality

def psi_map(H1a, H1b, f, g):
    """(y, m) -> (g y, f m) between contexts over the same extension.

    Needs f_* xi_1 = xi_2 g as maps Y_1 -> Hom(A, M_2).
    """
    c1, c2 = H1a.ctx, H1b.ctx
    A = c1.A
    for i in range(c1.Y.rank):
        y = [1 if j == i else 0 for j in range(c1.Y.rank)]
        for k in range(A.rank):
            a = [1 if j == k else 0 for j in range(A.rank)]
            lhs = f(c1.xi_eval(y, a))
            rhs = c2.xi_eval(g(y), a)
            if not c2.M.equal(lhs, rhs):
                raise SquareDoesNotCommute("f xi_1 != xi_2 g")

    def fn(v):
        y, m = c1.unpack(v)
        return c2.pack(g(y), {t: f(val) for t, val in m.items()})
    return AbMap.from_function(H1a.group, H1b.group, fn)


def pullback_map(H1E, H1Ep, morphism):
    """psi': H^1_Y(E, M) -> H^1_Y(E', M) along an ExtensionMorphism E' -> E.

    The contexts share M and Y, with xi' = h^* xi.
    """
    cE, cEp = H1E.ctx, H1Ep.ctx
    Ap = cEp.A
    for i in range(cE.Y.rank):
        y = [1 if j == i else 0 for j in range(cE.Y.rank)]
        for k in range(Ap.rank):
            a = [1 if j == k else 0 for j in range(Ap.rank)]
            if not cE.M.equal(cEp.xi_eval(y, a), cE.xi_eval(y, morphism.h(a))):
                raise SquareDoesNotCommute("xi' differs from h^* xi")
    G = cE.G
    nA = cE.A.rank

    def fn(v):
        y, m = cE.unpack(v)
        out = {}
        for s in range(1, G.order):
            extra = cE.xi_eval(y, value(morphism.c, (s,), nA))
            out[(s,)] = _add(value(m, (s,), cE.M.rank), extra)
        return cEp.pack(y, {t: x for t, x in out.items() if any(x)})
    return AbMap.from_function(H1E.group, H1Ep.group, fn)


def phi_map(H1E, H1Ep, rho, f, g, h):
    """Phi(f, g, h): (y, m) -> (g y, s' -> f(m_{rho(s')})).

    ``rho`` lists the image in G of every element of G'; the target
    extension must carry the cocycle h(a(rho s, rho t)).
    """
    cE, cEp = H1E.ctx, H1Ep.ctx
    Gp = cEp.G
    src_tab = cE.ext.cocycle.table
    nAp = cEp.A.rank
    for s in range(1, Gp.order):
        for t in range(1, Gp.order):
            want = h(value(src_tab, (rho[s], rho[t]), cE.A.rank)) if rho[s] and rho[t] else [0] * nAp
            have = value(cEp.ext.cocycle.table, (s, t), nAp)
            if not cEp.A.equal(want, have):
                raise SquareDoesNotCommute("target cocycle is not h(a) pulled back along rho")
    for i in range(cE.Y.rank):
        y = [1 if j == i else 0 for j in range(cE.Y.rank)]
        for k in range(cE.A.rank):
            a = [1 if j == k else 0 for j in range(cE.A.rank)]
            if not cEp.M.equal(cEp.xi_eval(g(y), h(a)), f(cE.xi_eval(y, a))):
                raise SquareDoesNotCommute("xi'(g y) h != f xi(y)")
    nM = cE.M.rank

    def fn(v):
        y, m = cE.unpack(v)
        out = {}
        for s in range(1, Gp.order):
            if rho[s]:
                x = f(value(m, (rho[s],), nM))
                if any(x):
                    out[(s,)] = x
        return cEp.pack(g(y), out)
    return AbMap.from_function(H1E.group, H1Ep.group, fn)


def restrict_context(ctx, H):
    """The context over the subgroup H (extension restricted, same coefficient data)."""
    emb = H.embedding()
    A2 = restrict_module(ctx.A, H)
    M2 = restrict_module(ctx.M, H)
    Y2 = restrict_module(ctx.Y, H)
    HG = H.group()
    tab = {}
    for s in range(1, HG.order):
        for t in range(1, HG.order):
            v = ctx.ext.cocycle.table.get((emb[s], emb[t]))
            if v is not None:
                tab[(s, t)] = v
    ext2 = ExtensionData(TwoCocycle(A2, tab))
    hom2 = hom_module(A2, M2)
    return H1YContext(ext2, M2, Y2, ctx.xi.matrix, hom=hom2)


def h1y_restrict(ctx, H, H1=None):
    """(Res: H^1_Y(E,M) -> H^1_Y(E',M), averaging Y_G -> Y_{G'}, restricted context group)."""
    H1 = H1 or H1YGroup(ctx)
    ctx2 = restrict_context(ctx, H)
    H2 = H1YGroup(ctx2)
    emb = H.embedding()
    ident = lambda v: list(v)
    res = phi_map(H1, H2, emb, ident, ident, ident)
    Y = ctx.Y
    reps = H.coset_representatives("right")

    def avg(y):
        out = [0] * Y.rank
        for x in reps:
            out = _add(out, Y.act(x, y))
        return out
    av = AbMap.from_function(Y.coinvariants(), ctx2.Y.coinvariants(), avg)
    return res, av, H2
