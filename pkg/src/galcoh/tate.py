"""Tate cohomology groups of a G-module in a window of degrees.

Degrees 0 and -1 come straight from the norm map.  Positive degrees use
Hom_G(F, M) and degrees <= -2 use F (x)_G M for the small resolution F of
:mod:`galcoh.resolution`.  Degrees 1 and 2 carry a codec translating
between classes and normalized inhomogeneous cocycles, written as dicts
from tuples of non-identity element indices to module vectors.
"""
from __future__ import annotations

from itertools import product

from .intlat import PresentedAbGroup, identity, kernel_of, zeros
from .resolution import resolution

DEFAULT_WINDOW = 3
MAX_WINDOW = 5


class DegreeOutOfWindow(ValueError):
    pass


class NoCodec(ValueError):
    pass


def _block_relations(M, copies):
    n = M.rank
    out = []
    for k in range(copies):
        for r in M.relations:
            out.append([0] * (k * n) + list(r) + [0] * ((copies - k - 1) * n))
    return out


def _hom_differential(M, res, k):
    """Matrix of C^k -> C^{k+1} on Hom_G(F, M) = M^{r_k}."""
    n = M.rank
    rk, rk1 = res.ranks[k], res.ranks[k + 1]
    D = zeros(rk1 * n, rk * n)
    for i, blk in enumerate(res.coefficient_blocks(k + 1)):
        for (j, g), c in blk.items():
            a = M.action[g]
            for r in range(n):
                row = D[i * n + r]
                ar = a[r]
                for s in range(n):
                    if ar[s]:
                        row[j * n + s] += c * ar[s]
    return D


def _tensor_boundary(M, res, k):
    """Matrix of F_k (x)_G M -> F_{k-1} (x)_G M, using g e_j (x) m = e_j (x) g^-1 m."""
    G = M.group
    n = M.rank
    rk, rk1 = res.ranks[k], res.ranks[k - 1]
    D = zeros(rk1 * n, rk * n)
    for i, blk in enumerate(res.coefficient_blocks(k)):
        for (j, g), c in blk.items():
            a = M.action[G.inv[g]]
            for r in range(n):
                row = D[j * n + r]
                ar = a[r]
                for s in range(n):
                    if ar[s]:
                        row[i * n + s] += c * ar[s]
    return D


def normalized_tuples(G, r):
    return list(product(range(1, G.order), repeat=r))


class TateGroup:
    """Ĥ^r(G, M) as a presented group with a class/cocycle codec."""

    def __init__(self, M, r, group, kind):
        self.module = M
        self.degree = r
        self.group = group
        self.kind = kind

    # -- description
    def normal_form(self):
        return self.group.normal_form()

    def is_trivial(self):
        return self.group.is_trivial()

    @property
    def ngens(self):
        return self.group.ngens

    def __repr__(self):
        return "TateGroup(r=%d, %r)" % (self.degree, self.group)

    # -- codec
    def to_vector(self, rep):
        """The ambient vector (module element or resolution cochain) of a representative."""
        r = self.degree
        if r in (0, -1):
            return list(rep)
        if r >= 1:
            M = self.module
            res = resolution(M.group)
            n = M.rank
            out = []
            get = rep if callable(rep) else (lambda t: rep.get(t))
            for chain in res.phi(r):
                acc = [0] * n
                for (h, t), c in chain.items():
                    v = get(t)
                    if v is None or not any(v):
                        continue
                    if h:
                        v = M.act(h, v)
                    acc = [a + c * b for a, b in zip(acc, v)]
                out.extend(acc)
            return out
        raise NoCodec("no cocycle codec in degree %d" % r)

    def classify(self, rep):
        """Canonical coordinates of the class of a cocycle (or module element in degrees 0, -1)."""
        return self.group.coords(self.to_vector(rep))

    def is_zero_class(self, rep):
        return not any(self.classify(rep))

    def representative(self, coords):
        r = self.degree
        v = self.group.lift(coords)
        if r in (0, -1):
            return v
        if r in (1, 2):
            return self.cochain_from_vector(v)
        raise NoCodec("no cocycle codec in degree %d" % r)

    def cochain_from_vector(self, v):
        M = self.module
        G = M.group
        res = resolution(G)
        n = M.rank
        N = G.order
        r = self.degree
        blocks = [v[j * n:(j + 1) * n] for j in range(res.ranks[r])]
        # precompute g . f(e_j)
        moved = {}
        out = {}
        for t in normalized_tuples(G, r):
            x = res.psi(r, t)
            acc = [0] * n
            for idx, c in enumerate(x):
                if c:
                    j, g = divmod(idx, N)
                    key = (j, g)
                    if key not in moved:
                        moved[key] = M.act(g, blocks[j])
                    acc = [a + c * b for a, b in zip(acc, moved[key])]
            if any(acc):
                out[t] = acc
        return out

    def generators(self):
        return [self.representative([1 if j == i else 0 for j in range(self.ngens)]) for i in range(self.ngens)]

    def to_json(self, with_representatives=False):
        out = {"degree": self.degree}
        out.update(self.normal_form())
        if with_representatives and self.degree in (-1, 0, 1, 2):
            reps = []
            for rep in self.generators():
                if isinstance(rep, dict):
                    reps.append({",".join(map(str, t)): v for t, v in sorted(rep.items())})
                else:
                    reps.append(rep)
            out["representatives"] = reps
        return out


def tate_cohomology(M, r, window=DEFAULT_WINDOW):
    """Ĥ^r(G, M) for |r| within the window."""
    if window > MAX_WINDOW:
        raise DegreeOutOfWindow("window may be at most %d" % MAX_WINDOW)
    if abs(r) > window:
        raise DegreeOutOfWindow("degree %d outside window %d" % (r, window))
    cache = M.__dict__.setdefault("_tate", {})
    if r not in cache:
        cache[r] = _compute(M, r)
    return cache[r]


def _compute(M, r):
    G = M.group
    n = M.rank
    if r == 0:
        inv = M.invariants()
        N = M.norm_matrix()
        den = list(M.relations) + [list(c) for c in zip(*N)] if n else []
        num = inv._num.basis() if inv._num is not None else identity(n)
        return TateGroup(M, 0, PresentedAbGroup(n, den, numerator=num + den), "norm")
    if r == -1:
        N = M.norm_matrix()
        num = kernel_of(N, M.relations, n) if n else []
        den = list(M.relations)
        for g in G.gens:
            a = M.action[g]
            for j in range(n):
                col = [a[i][j] - (1 if i == j else 0) for i in range(n)]
                if any(col):
                    den.append(col)
        return TateGroup(M, -1, PresentedAbGroup(n, den, numerator=num + den), "norm")
    res = resolution(G)
    if r >= 1:
        res.ensure(r + 1)
        dim = res.ranks[r] * n
        D_out = _hom_differential(M, res, r)
        D_in = _hom_differential(M, res, r - 1)
        rel_out = _block_relations(M, res.ranks[r + 1])
        num = kernel_of(D_out, rel_out, dim) if D_out else identity(dim)
        den = [list(c) for c in zip(*D_in)] if D_in and dim else []
        den += _block_relations(M, res.ranks[r])
        return TateGroup(M, r, PresentedAbGroup(dim, den, numerator=num + den), "resolution")
    k = -r - 1
    res.ensure(k + 1)
    dim = res.ranks[k] * n
    Dk = _tensor_boundary(M, res, k)
    Dk1 = _tensor_boundary(M, res, k + 1)
    rel_out = _block_relations(M, res.ranks[k - 1])
    num = kernel_of(Dk, rel_out, dim) if Dk and dim else identity(dim)
    den = [list(c) for c in zip(*Dk1)] if Dk1 and dim else []
    den += _block_relations(M, res.ranks[k])
    return TateGroup(M, r, PresentedAbGroup(dim, den, numerator=num + den), "resolution")


def tate_map(f, r, window=DEFAULT_WINDOW):
    """Ĥ^r(G, A) -> Ĥ^r(G, B) induced by a GModuleMap f (applied block by block)."""
    from .intlat import AbMap
    src = tate_cohomology(f.source, r, window)
    dst = tate_cohomology(f.target, r, window)
    na = f.source.rank

    def fn(v):
        out = []
        for k in range(len(v) // na if na else 0):
            out.extend(f(v[k * na:(k + 1) * na]))
        return out
    if na == 0:
        return AbMap.zero(src.group, dst.group)
    return AbMap.from_function(src.group, dst.group, fn)
