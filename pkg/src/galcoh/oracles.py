"""Independent routes to Tate cohomology, used to cross-check the main engine.

* ``cyclic_tate``: for a cyclic group with generator s, even degrees are
  M^G / N M and odd degrees are ker N / (s - 1) M.
* ``shifted_tate``: degrees <= -2 by repeated dimension shifting through
  0 -> I_G (x) M -> Z[G] (x) M -> M -> 0, ending at degree -1.
* ``bar_h1`` / ``bar_h2``: low degree cohomology straight from the
  normalized bar complex (small groups only).
"""
from __future__ import annotations

from .intlat import PresentedAbGroup, identity, kernel_of
from .gmod import shift_module
from .tate import normalized_tuples, tate_cohomology


def cyclic_generator(G):
    for g in range(G.order):
        if G.element_order(g) == G.order:
            return g
    raise ValueError("group is not cyclic")


def cyclic_tate(M, r, s=None):
    G = M.group
    s = cyclic_generator(G) if s is None else s
    n = M.rank
    a = M.action[s]
    sm1 = [[a[i][j] - (1 if i == j else 0) for j in range(n)] for i in range(n)]
    N = [[0] * n for _ in range(n)]
    x = identity(n)
    for _ in range(G.order):
        N = [[p + q for p, q in zip(r1, r2)] for r1, r2 in zip(N, x)]
        x = [[sum(a[i][k] * x[k][j] for k in range(n)) for j in range(n)] for i in range(n)]
    if r % 2 == 0:
        kmap, imap = sm1, N
    else:
        kmap, imap = N, sm1
    num = kernel_of(kmap, M.relations, n) if n else []
    den = list(M.relations) + ([list(c) for c in zip(*imap)] if n else [])
    return PresentedAbGroup(n, den, numerator=num + den)


def shifted_tate(M, r):
    """Ĥ^r(G, M) for r <= -1 via r' = -1 on the (-1 - r)-fold shifted module."""
    if r > -1:
        raise ValueError("shifting oracle is for degrees <= -1")
    X = M
    for _ in range(-1 - r):
        X = shift_module(X)
    return tate_cohomology(X, -1).group


def _bar_differential(M, r):
    """Coboundary matrix from normalized r-cochains to (r+1)-cochains (torsion-free M)."""
    G = M.group
    n = M.rank
    src = normalized_tuples(G, r)
    tgt = normalized_tuples(G, r + 1)
    sidx = {t: i for i, t in enumerate(src)}
    D = [[0] * (len(src) * n) for _ in range(len(tgt) * n)]

    def add(row, t, sign, mat=None):
        if any(x == 0 for x in t):
            return
        j = sidx[t]
        for a in range(n):
            for b in range(n):
                c = (mat[a][b] if mat is not None else (1 if a == b else 0))
                if c:
                    D[row * n + a][j * n + b] += sign * c

    for i, t in enumerate(tgt):
        add(i, t[1:], 1, M.action[t[0]])
        for p in range(r):
            m = G.mul[t[p]][t[p + 1]]
            add(i, t[:p] + (m,) + t[p + 2:], (-1) ** (p + 1))
        add(i, t[:-1], (-1) ** (r + 1))
    return D, src


def bar_cohomology(M, r):
    """H^r(G, M) for r in {1, 2} from the bar complex, plus the list of tuples indexing cochains."""
    n = M.rank
    Dout, src = _bar_differential(M, r)
    dim = len(src) * n
    num = kernel_of(Dout, [], dim) if Dout else identity(dim)
    if r == 1:
        den = []
        for j in range(n):
            col = []
            for (g,) in src:
                col.extend(M.action[g][i][j] - (1 if i == j else 0) for i in range(n))
            den.append(col)
    else:
        Din, _ = _bar_differential(M, r - 1)
        den = [list(c) for c in zip(*Din)]
    return PresentedAbGroup(dim, den, numerator=num + den), src
