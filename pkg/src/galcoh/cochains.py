"""Cocycle-level operators on normalized inhomogeneous cochains.

An r-cochain over a group G with values in a G-module M is a dict from
r-tuples of non-identity element indices to vectors of M; missing keys
mean zero.  Degree 0 "cochains" are plain module vectors.
"""
from __future__ import annotations

from dataclasses import dataclass
from .intlat import Lattice
from .gmod import GModule, hom_evaluate, restrict_module, shift_module, tensor_module
from .tate import normalized_tuples, tate_cohomology


class InvalidCocycle(ValueError):
    pass


class NormNotZero(ValueError):
    pass


class SquareDoesNotCommute(ValueError):
    pass


def _add(u, v, c=1):
    return [a + c * b for a, b in zip(u, v)]


def value(f, t, n):
    v = f.get(t)
    return list(v) if v is not None else [0] * n


def clean(f):
    return {t: list(v) for t, v in f.items() if any(v)}


def cochain_sub(f, g, n):
    keys = set(f) | set(g)
    return clean({t: _add(value(f, t, n), value(g, t, n), -1) for t in keys})


def cochain_add(f, g, n):
    keys = set(f) | set(g)
    return clean({t: _add(value(f, t, n), value(g, t, n)) for t in keys})


def cochain_scale(f, k):
    return clean({t: [k * x for x in v] for t, v in f.items()})


def apply_map(f, fn):
    """Push a cochain through a coefficient map (a callable on vectors)."""
    if isinstance(f, dict):
        return clean({t: fn(v) for t, v in f.items()})
    return fn(f)


# ---------------------------------------------------------------- coboundaries

def coboundary(M, f, r):
    """δf as an (r+1)-cochain; for r = 0, f is a vector and δf(s) = s f - f."""
    G = M.group
    n = M.rank
    if r == 0:
        return clean({(s,): _add(M.act(s, f), f, -1) for s in range(1, G.order)})
    out = {}
    for t in normalized_tuples(G, r + 1):
        acc = M.act(t[0], value(f, t[1:], n))
        for p in range(r):
            m = G.mul[t[p]][t[p + 1]]
            if m:
                acc = _add(acc, value(f, t[:p] + (m,) + t[p + 2:], n), (-1) ** (p + 1))
        acc = _add(acc, value(f, t[:-1], n), (-1) ** (r + 1))
        out[t] = acc
    return clean(out)


def is_cocycle(M, f, r):
    return all(M.is_zero(v) for v in coboundary(M, f, r).values())


def normalize_two_cocycle(M, table):
    """Shift an arbitrary 2-cocycle (dict over all pairs, identity included) to a normalized one."""
    G = M.group
    n = M.rank
    c = list(table.get((0, 0), [0] * n))
    out = {}
    for s in range(G.order):
        for t in range(G.order):
            v = list(table.get((s, t), [0] * n))
            # subtract δe for the constant 1-cochain e = c: (δe)(s,t) = s c
            v = _add(v, M.act(s, c), -1)
            if s and t:
                out[(s, t)] = v
            elif any(x for x in v) and not M.is_zero(v):
                raise InvalidCocycle("table is not a cocycle (normalization failed)")
    return clean(out)


def solve_coboundary(M, target, r):
    """An (r-1)-cochain e with δe = target (mod relations), or None.  r in {1, 2}."""
    G = M.group
    n = M.rank
    tgt = normalized_tuples(G, r)
    if r == 1:
        src_dim = n
    else:
        src = normalized_tuples(G, r - 1)
        src_dim = len(src) * n
    rows = []
    for t in tgt:
        for a in range(n):
            row = [0] * src_dim
            rows.append(row)
    # build columns by applying δ to unit cochains
    for j in range(src_dim):
        if r == 1:
            e = [1 if i == j else 0 for i in range(n)]
            d = coboundary(M, e, 0)
        else:
            k, a = divmod(j, n)
            d = coboundary(M, {src[k]: [1 if i == a else 0 for i in range(n)]}, r - 1)
        for ti, t in enumerate(tgt):
            v = d.get(t)
            if v:
                for a in range(n):
                    rows[ti * n + a][j] = v[a]
    rhs = []
    for t in tgt:
        rhs.extend(value(target, t, n))
    rels = []
    for ti in range(len(tgt)):
        for rel in M.relations:
            col = [0] * (len(tgt) * n)
            col[ti * n:(ti + 1) * n] = rel
            rels.append(col)
    m = len(rows)
    cols = [[rows[i][j] for i in range(m)] for j in range(src_dim)] + rels
    lat = Lattice(m, cols, tags=[[1 if i == j else 0 for i in range(len(cols))] for j in range(len(cols))])
    x = lat.preimage(rhs)
    if x is None:
        return None
    if len(x) != len(cols):
        x = [0] * len(cols)
    x = x[:src_dim]
    if r == 1:
        return x
    return clean({src[k]: x[k * n:(k + 1) * n] for k in range(len(src))})


def cohomologous(M, f, g, r):
    """True when f - g is a coboundary (solved as an integer linear system)."""
    if r == 0:
        raise ValueError("degree 0 classes are elements; compare them directly")
    return solve_coboundary(M, cochain_sub(f, g, M.rank), r) is not None


# ---------------------------------------------------------------- data types

@dataclass
class TwoCocycle:
    module: GModule
    table: dict

    def __post_init__(self):
        self.table = clean({tuple(k): list(v) for k, v in self.table.items()})
        for (s, t) in self.table:
            if s == 0 or t == 0:
                raise InvalidCocycle("cocycle must be normalized")
        if not is_cocycle(self.module, self.table, 2):
            raise InvalidCocycle("cocycle identity fails")

    @property
    def group(self):
        return self.module.group

    def __call__(self, s, t):
        return value(self.table, (s, t), self.module.rank)

    def to_json(self):
        return {"%d,%d" % k: v for k, v in sorted(self.table.items())}


class ExtensionData:
    """1 -> A -> E -> G -> 1 given by a normalized 2-cocycle a with s(x)s(y) = a(x,y)s(xy)."""

    def __init__(self, cocycle):
        self.cocycle = cocycle
        self.A = cocycle.module
        self.G = cocycle.group

    def multiply(self, x, y):
        (a, s), (b, t) = x, y
        G = self.G
        v = _add(_add(a, self.A.act(s, b)), self.cocycle(s, t))
        return (v, G.mul[s][t])

    def check_associativity(self, samples):
        for x, y, z in samples:
            l = self.multiply(self.multiply(x, y), z)
            r = self.multiply(x, self.multiply(y, z))
            if l[1] != r[1] or not self.A.equal(l[0], r[0]):
                return False
        return True


@dataclass
class OneCocycle:
    """A 1-cocycle on a group, or on an extension when ``hom`` (a Hom(A, M) element) is present."""
    module: GModule
    values: dict
    hom: list = None

    def __call__(self, s):
        return value(self.values, (s,), self.module.rank)


# ---------------------------------------------------------------- restriction

def restrict(M, f, r, H):
    """Restriction to a Subgroup H.  Returns (H-module, H-cochain in H's own indexing)."""
    MH = restrict_module(M, H)
    if r == 0:
        return MH, list(f)
    if r == -1:
        out = [0] * M.rank
        for x in H.coset_representatives("right"):
            out = _add(out, M.act(x, f))
        return MH, out
    emb = H.embedding()
    HG = H.group()
    out = {}
    for t in normalized_tuples(HG, r):
        v = f.get(tuple(emb[i] for i in t))
        if v is not None:
            out[t] = list(v)
    return MH, clean(out)


def corestrict(M, f, r, H):
    """Corestriction of an H-cochain (H's indexing, values in M) to G."""
    G = M.group
    n = M.rank
    reps = H.coset_representatives("right")
    if r == -1:
        return list(f)
    if r == 0:
        out = [0] * n
        for x in reps:
            out = _add(out, M.act(G.inv[x], f))
        return out
    emb = H.embedding()
    to_sub = {g: i for i, g in enumerate(emb)}
    HG = H.group()
    p = [to_sub[H.retraction(g)] for g in range(G.order)]
    out = {}
    for t in normalized_tuples(G, r):
        acc = [0] * n
        for x in reps:
            ks = [0]
            cur = x
            for g in t:
                cur = G.mul[cur][g]
                ks.append(p[cur])
            args = tuple(HG.mul[HG.inv[ks[i]]][ks[i + 1]] for i in range(r))
            if any(a == 0 for a in args):
                continue
            v = f.get(args)
            if v is None:
                continue
            acc = _add(acc, M.act(G.inv[x], v))
        out[t] = acc
    return clean(out)


def hochschild_serre_action(M, K, x, f, r):
    """(x.f)(k_1..k_r) = x f(x^-1 k_1 x, ...) for a normal subgroup K (cochain in K's indexing)."""
    from .groups import NotNormal
    if not K.is_normal():
        raise NotNormal("subgroup is not normal")
    G = M.group
    emb = K.embedding()
    to_sub = {g: i for i, g in enumerate(emb)}
    xi = G.inv[x]
    if r == 0:
        return M.act(x, f)
    if r == -1:
        return M.act(x, f)
    KG = K.group()
    out = {}
    for t in normalized_tuples(KG, r):
        src = tuple(to_sub[G.conj(xi, emb[k])] for k in t)
        v = f.get(src)
        if v is not None:
            out[t] = M.act(x, v)
    return clean(out)


def hs_norm(M, K, f, r):
    """Sum of x.f over left coset representatives x of G/K."""
    n = M.rank
    out = {} if r > 0 else [0] * n
    for x in K.coset_representatives("left"):
        g = hochschild_serre_action(M, K, x, f, r)
        out = cochain_add(out, g, n) if r > 0 else _add(out, g)
    return out


# ---------------------------------------------------------------- cup products

class Pairing:
    """A G-equivariant bilinear map U x V -> W given by a function on vectors."""

    def __init__(self, U, V, W, fn):
        self.U, self.V, self.W = U, V, W
        self.fn = fn

    def __call__(self, u, v):
        return self.fn(u, v)

    def shifted(self):
        """U x (I (x) V) -> I (x) W, u (x) (i (x) v) -> i (x) P(u, v)."""
        V2, W2 = shift_module(self.V), shift_module(self.W)
        nv, nw = self.V.rank, self.W.rank
        k = self.V.group.order - 1
        fn = self.fn

        def g(u, z):
            out = []
            for i in range(k):
                out.extend(fn(u, z[i * nv:(i + 1) * nv]) if any(z[i * nv:(i + 1) * nv]) else [0] * nw)
            return out

        return Pairing(self.U, V2, W2, g)


def tensor_pairing(A, B):
    T = tensor_module(A, B)
    return Pairing(A, B, T, lambda a, b: [x * y for x in a for y in b])


def evaluation_pairing(H, X, A):
    """Hom(X, A) x X -> A for the hom module H = hom_module(X, A)."""
    return Pairing(H, X, A, lambda f, x: hom_evaluate(H, f, x))


def cup(a, x, q, P):
    """Cup product of a 2-cocycle a (values in U) with a degree-q representative x (values in V).

    q = -1: c_s = sum_t P(a(s,t), s t x).  q = 0: P(a(s,t), x).  q >= 1: the
    standard formula P(a(g1,g2), g1 g2 x(g3, ...)), returned lazily as a function.
    """
    U, V = P.U, P.V
    G = U.group
    nw = P.W.rank

    def aval(s, t):
        return a.get((s, t))

    if q == -1:
        out = {}
        for s in range(1, G.order):
            acc = [0] * nw
            for t in range(1, G.order):
                av = aval(s, t)
                if av is None or not any(av):
                    continue
                acc = _add(acc, P(av, V.act(G.mul[s][t], x)))
            out[(s,)] = acc
        return clean(out)
    if q == 0:
        out = {}
        for (s, t), av in a.items():
            out[(s, t)] = P(av, x)
        return clean(out)
    cache = {}

    def fn(t):
        if t not in cache:
            av = aval(t[0], t[1])
            if av is None or not any(av):
                cache[t] = None
            else:
                xv = x.get(t[2:]) if isinstance(x, dict) else x(t[2:])
                if xv is None or not any(xv):
                    cache[t] = None
                else:
                    cache[t] = P(av, V.act(G.mul[t[0]][t[1]], xv))
        return cache[t]
    return fn


def cup_2_minus1(a, b, P, check=True):
    """The two cochains c and d for a 2-cocycle a and b with N b = 0.

    c_s = sum_t P(a(s,t), s t b) and d_s = sum_t t^-1 P(a(t,s), b).
    """
    V = P.V
    G = V.group
    if check and not V.is_zero(V.norm(b)):
        raise NormNotZero("N b is not zero")
    c = cup(a, b, -1, P)
    W = P.W
    nw = W.rank
    d = {}
    for s in range(1, G.order):
        acc = [0] * nw
        for t in range(1, G.order):
            av = a.get((t, s))
            if av is None or not any(av):
                continue
            ti = G.inv[t]
            acc = _add(acc, W.act(ti, P(av, b)))
        d[(s,)] = acc
    return c, clean(d)


def cup_map(a, P, q, window=3):
    """The map Ĥ^q(G, V) -> Ĥ^{q+2}(G, W) of cup product with the class of a.

    For q <= -2 the map is computed on the dimension-shifted modules
    (degree -1 on I^{(x)(-1-q)} (x) V), which is conjugate to the original
    map by connecting isomorphisms.  Returns (AbMap, degree actually used).
    """
    from .intlat import AbMap
    while q <= -2:
        P = P.shifted()
        q += 1
    V, W = P.V, P.W
    src = tate_cohomology(V, q, window=window)
    dst = tate_cohomology(W, q + 2, window=window)
    cols = []
    for rep in src.generators():
        c = cup(a, rep, q, P)
        cols.append(dst.classify(c))
    mat = [list(r) for r in zip(*cols)] if cols else [[] for _ in range(dst.ngens)]
    return AbMap(src.group, dst.group, mat), q


# ---------------------------------------------------------------- extension morphisms

class ExtensionMorphism:
    """A map E' -> E over the identity of G restricting to h: A' -> A on kernels.

    It sends a' s'(x) to h(a') c_x s(x); this is a homomorphism exactly
    when h(a'(x,y)) - a(x,y) = (δc)(x,y).
    """

    def __init__(self, src, dst, h, c):
        self.src, self.dst = src, dst
        self.h = h
        self.c = clean(c)
        A = dst.A
        lhs = cochain_sub(apply_map(src.cocycle.table, h), dst.cocycle.table, A.rank)
        rhs = coboundary(A, self.c, 1)
        diff = cochain_sub(lhs, rhs, A.rank)
        if any(not A.is_zero(v) for v in diff.values()):
            raise SquareDoesNotCommute("h(a') - a is not the coboundary of c")

    def pullback(self, hom_eval, mu, m):
        """Pull an E-cocycle (mu, m) back to E'.

        ``hom_eval(mu, a)`` evaluates mu on an element of A.  Returns (mu o h, m').
        """
        A = self.dst.A
        G = A.group
        out = {}
        for s in range(1, G.order):
            base = m.get((s,))
            extra = hom_eval(mu, value(self.c, (s,), A.rank))
            if base is None:
                base = [0] * len(extra)
            out[(s,)] = _add(base, extra)
        return clean(out)


def pushforward_cocycle(a, h):
    """h(a) for a coefficient map h (callable)."""
    return apply_map(a, h)


# ---------------------------------------------------------------- corestriction from A to E

def cor_from_kernel(ext, M, H, mu):
    """The 1-cocycle on E corestricted from mu in Hom(A, M).

    Returns (hom part N_G mu, m) with m_s = sum_t t^-1 mu(a(t, s)), so that
    b(a s(x)) = (N_G mu)(a) + m_x.
    """
    G = M.group
    n = M.rank
    a = ext.cocycle
    m = {}
    for s in range(1, G.order):
        acc = [0] * n
        for t in range(1, G.order):
            av = a.table.get((t, s))
            if av is None:
                continue
            acc = _add(acc, M.act(G.inv[t], hom_evaluate(H, mu, av)))
        m[(s,)] = acc
    return H.norm(mu), clean(m)
