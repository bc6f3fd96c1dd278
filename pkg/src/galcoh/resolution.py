"""A small free Z[G]-resolution of Z and chain maps to and from the bar resolution.

F_k is free on r_k generators.  An element of F_k is a vector of length
r_k * |G| whose entry j*|G| + g is the coefficient of g.e_j.  Each kernel
is found as a Z-lattice and Z[G]-generators are picked greedily, which
keeps r_k far below the (|G|-1)^k of the normalized bar resolution.

Bar chains are dicts {(h, t): c} meaning c * h[t_1|...|t_k] with every
t_i different from the identity.
"""
from __future__ import annotations

from .intlat import Lattice, identity


class Resolution:
    def __init__(self, G):
        self.G = G
        self.ranks = [1]
        self.d = [None]      # d[k][i] = image of e_i in F_{k-1}
        self._lat = {}       # k -> Lattice over the Z-basis of F_k mapped by d_k (with tags)
        self._phi = {0: [{(0, ()): 1}]}
        self._psi = {0: {(): [1] + [0] * (G.order - 1)}}

    # -- Z[G]-structure
    def act(self, g, v, k):
        """g . v for v in F_k."""
        n = self.G.order
        out = [0] * len(v)
        mul = self.G.mul[g]
        for j in range(self.ranks[k]):
            base = j * n
            for h in range(n):
                c = v[base + h]
                if c:
                    out[base + mul[h]] += c
        return out

    def _orbit(self, v, k):
        return [self.act(g, v, k) for g in range(self.G.order)]

    def _z_columns(self, k):
        """Columns of d_k over the Z-basis (j, g) of F_k."""
        cols = []
        for v in self.d[k]:
            cols.extend(self._orbit(v, k - 1))
        return cols

    def lattice(self, k):
        if k not in self._lat:
            self.ensure(k)
            n = self.G.order
            dim_src = self.ranks[k] * n
            dim_tgt = self.ranks[k - 1] * n if k >= 1 else 1
            cols = self._z_columns(k)
            self._lat[k] = Lattice(dim_tgt, cols, tags=identity(dim_src))
        return self._lat[k]

    def _augmentation_lattice(self):
        n = self.G.order
        return Lattice(1, [[1]] * n, tags=identity(n))

    def _kernel(self, k):
        """Z-basis of ker(d_k : F_k -> F_{k-1}), with d_0 the augmentation."""
        lat = self._augmentation_lattice() if k == 0 else self.lattice(k)
        return Lattice(self.ranks[k] * self.G.order, lat.relations).basis()

    def ensure(self, k):
        while len(self.ranks) <= k:
            self._extend()

    def _extend(self):
        k = len(self.ranks)           # build F_k and d_k
        G = self.G
        n = G.order
        dim = self.ranks[k - 1] * n
        target = self._kernel(k - 1)
        T = Lattice(dim, target)
        cands = []
        if k == 1:
            for g in G.gens:
                v = [0] * n
                v[g] += 1
                v[0] -= 1
                cands.append(v)
        cands += sorted(target, key=lambda v: (sum(1 for x in v if x), max([abs(x) for x in v] or [0])))
        chosen = []
        span = Lattice(dim)
        for c in cands:
            if span.rank == T.rank and span.contains_lattice(T):
                break
            if not span.contains(c):
                chosen.append(c)
                for w in self._orbit(c, k - 1):
                    span.add(w)
        for i in reversed(range(len(chosen))):
            rest = chosen[:i] + chosen[i + 1:]
            L = Lattice(dim)
            for c in rest:
                for w in self._orbit(c, k - 1):
                    L.add(w)
            if L.rank == T.rank and L.contains_lattice(T):
                chosen = rest
        self.ranks.append(len(chosen))
        self.d.append(chosen)

    def apply_d(self, k, v):
        """d_k(v) for v in F_k."""
        n = self.G.order
        out = [0] * (self.ranks[k - 1] * n)
        mul = self.G.mul
        for j, dv in enumerate(self.d[k]):
            for g in range(n):
                c = v[j * n + g]
                if c:
                    row = mul[g]
                    for idx, x in enumerate(dv):
                        if x:
                            b, h = divmod(idx, n)
                            out[b * n + row[h]] += c * x
        return out

    def coefficient_blocks(self, k):
        """For d_k: list over generators i of dicts {(j, g): c}."""
        n = self.G.order
        out = []
        for dv in self.d[k]:
            blk = {}
            for idx, x in enumerate(dv):
                if x:
                    blk[divmod(idx, n)] = x
            out.append(blk)
        return out

    # -- chain map F -> bar
    def phi(self, k):
        """phi_k(e_j) as bar chains, for every generator j of F_k."""
        if k not in self._phi:
            self.ensure(k)
            prev = self.phi(k - 1)
            G = self.G
            out = []
            for blk in self.coefficient_blocks(k):
                z = {}
                for (j, g), c in blk.items():
                    for (h, t), c2 in prev[j].items():
                        key = (G.mul[g][h], t)
                        z[key] = z.get(key, 0) + c * c2
                # contracting homotopy h[t] -> [h|t]
                chain = {}
                for (h, t), c in z.items():
                    if c and h != 0:
                        key = (0, (h,) + t)
                        chain[key] = chain.get(key, 0) + c
                out.append({key: c for key, c in chain.items() if c})
            self._phi[k] = out
        return self._phi[k]

    # -- chain map bar -> F
    def psi(self, k, t):
        """psi_k([t]) in F_k for a normalized tuple t."""
        table = self._psi.setdefault(k, {})
        if t not in table:
            self.ensure(k)
            G = self.G
            n = G.order
            bd = bar_boundary(G, 0, t)
            y = [0] * (self.ranks[k - 1] * n)
            for (h, s), c in bd.items():
                v = self.psi(k - 1, s)
                if h:
                    v = self.act(h, v, k - 1)
                y = [a + c * b for a, b in zip(y, v)]
            if k == 1:
                x = self._preimage_d1(y)
            else:
                x = self.lattice(k).preimage(y)
            if x is None:
                raise ArithmeticError("chain map lift failed")
            if len(x) != self.ranks[k] * n:
                x = [0] * (self.ranks[k] * n)
            table[t] = x
        return table[t]

    def _preimage_d1(self, y):
        return self.lattice(1).preimage(y)


def bar_boundary(G, h, t):
    """d(h[t]) in the normalized bar resolution."""
    k = len(t)
    out = {}
    if k == 0:
        return out

    def add(key, c):
        out[key] = out.get(key, 0) + c

    add((G.mul[h][t[0]], t[1:]), 1)
    for i in range(k - 1):
        m = G.mul[t[i]][t[i + 1]]
        if m != 0:
            add((h, t[:i] + (m,) + t[i + 2:]), -1 if i % 2 == 0 else 1)
    add((h, t[:-1]), (-1) ** k)
    return {key: c for key, c in out.items() if c}


def resolution(G):
    """Cached resolution attached to the group object."""
    cache = G._cache
    if "resolution" not in cache:
        cache["resolution"] = Resolution(G)
    return cache["resolution"]
