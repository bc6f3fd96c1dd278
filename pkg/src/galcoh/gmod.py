"""G-modules: finitely generated abelian groups with a finite group action.

A module is Z^rank / R with one integer matrix per group element.  Every
construction below (permutation modules, Hom, tensor, restriction,
coinduction, ...) produces a new module in its own coordinates together
with whatever structure maps are needed.
"""
from __future__ import annotations

from .intlat import (AbMap, Lattice, PresentedAbGroup, identity, kernel_of,
                     mat_mul, mat_vec, zeros)


class GroupMismatch(ValueError):
    pass


class InvalidModule(ValueError):
    pass


class InvalidMap(ValueError):
    pass


class EmptySet(ValueError):
    pass


def _kron(P, Q):
    """Matrix of x (x) y -> Px (x) Qy with index i*len(y) + j."""
    m, n = len(Q), len(Q[0]) if Q else 0
    out = []
    for prow in P:
        for qrow in Q:
            out.append([a * b for a in prow for b in qrow])
    if not P or not Q:
        return zeros(len(P) * m, (len(P[0]) if P else 0) * n)
    return out


class GModule:
    """Z^rank / span(relations) with matrices ``action[g]`` for every element g."""

    def __init__(self, group, rank, relations=(), action=None, generator_action=None, name=None, check=True):
        self.group = group
        self.rank = rank
        self.relations = [list(r) for r in relations]
        self.name = name
        G = group
        if action is None:
            gens = generator_action if generator_action is not None else []
            if len(gens) != len(G.gens):
                raise InvalidModule("need one action matrix per group generator")
            action = [None] * G.order
            action[0] = identity(rank)
            for i in range(1, G.order):
                k, p = G.word[i]
                action[i] = mat_mul(gens[k], action[p]) if rank else []
        self.action = [[list(r) for r in a] for a in action]
        if len(self.action) != G.order:
            raise InvalidModule("need one matrix per group element")
        self._abgroup = None
        self._rel_lattice = None
        if check:
            self._check()

    # -- basics
    @property
    def abgroup(self):
        if self._abgroup is None:
            self._abgroup = PresentedAbGroup(self.rank, self.relations)
        return self._abgroup

    def rel_lattice(self):
        if self._rel_lattice is None:
            self._rel_lattice = Lattice(self.rank, self.relations)
        return self._rel_lattice

    def is_torsion_free(self):
        return not self.abgroup.torsion

    def is_free(self):
        return not self.relations or self.rel_lattice().rank == 0

    def act(self, g, v):
        return mat_vec(self.action[g], v) if self.rank else []

    def zero(self):
        return [0] * self.rank

    def basis(self):
        return identity(self.rank)

    def equal(self, x, y):
        if not self.relations:
            return list(x) == list(y)
        return self.rel_lattice().contains([a - b for a, b in zip(x, y)])

    def is_zero(self, x):
        if not self.relations:
            return not any(x)
        return self.rel_lattice().contains(x)

    def norm_matrix(self):
        n = self.rank
        N = zeros(n, n)
        for a in self.action:
            for i in range(n):
                Ni, ai = N[i], a[i]
                for j in range(n):
                    if ai[j]:
                        Ni[j] += ai[j]
        return N

    def norm(self, v):
        out = [0] * self.rank
        for g in range(self.group.order):
            out = [a + b for a, b in zip(out, self.act(g, v))]
        return out

    def _check(self):
        G = self.group
        R = self.rel_lattice()
        n = self.rank
        for i in range(n):
            e = [1 if j == i else 0 for j in range(n)]
            if not self.equal(self.act(0, e), e):
                raise InvalidModule("identity does not act trivially")
        for g in range(G.order):
            for r in self.relations:
                if not R.contains(self.act(g, r)):
                    raise InvalidModule("action does not preserve the relations")
        for a in G.gens:
            for b in range(G.order):
                ab = G.mul[a][b]
                for i in range(n):
                    e = [1 if j == i else 0 for j in range(n)]
                    if not self.equal(self.act(a, self.act(b, e)), self.act(ab, e)):
                        raise InvalidModule("action is not a homomorphism")

    def generator_action(self):
        return [self.action[g] for g in self.group.gens]

    def to_json(self):
        return {"rank": self.rank, "relations": self.relations, "generator_action": self.generator_action()}

    def __repr__(self):
        return "GModule(%s, rank=%d, %r)" % (self.name or "?", self.rank, self.abgroup)

    # -- invariants / coinvariants
    def invariants(self):
        """M^G as a subquotient of Z^rank (elements keep their ambient coordinates)."""
        n = self.rank
        rows = []
        rels = []
        for k, g in enumerate(self.group.gens):
            a = self.action[g]
            for i in range(n):
                rows.append([a[i][j] - (1 if i == j else 0) for j in range(n)])
        m = len(rows)
        for k in range(len(self.group.gens)):
            for r in self.relations:
                rels.append([0] * (k * n) + list(r) + [0] * ((len(self.group.gens) - k - 1) * n))
        num = kernel_of(rows, rels, n) if m else identity(n)
        return PresentedAbGroup(n, self.relations, numerator=num + self.relations)

    def coinvariants(self):
        n = self.rank
        gens = list(self.relations)
        for g in self.group.gens:
            a = self.action[g]
            for j in range(n):
                col = [a[i][j] - (1 if i == j else 0) for i in range(n)]
                if any(col):
                    gens.append(col)
        return PresentedAbGroup(n, gens)

    def norm_map(self):
        """N: M_G -> M^G as an AbMap."""
        co, inv = self.coinvariants(), self.invariants()
        return AbMap.from_function(co, inv, self.norm)


class GModuleMap:
    """A G-equivariant homomorphism given by an ambient matrix."""

    def __init__(self, source, target, matrix, check=True):
        if source.group is not target.group:
            raise GroupMismatch("modules over different groups")
        self.source = source
        self.target = target
        self.matrix = [list(r) for r in matrix] if matrix else zeros(target.rank, source.rank)
        if check:
            self._check()

    def __call__(self, v):
        return mat_vec(self.matrix, v) if self.target.rank else []

    def _check(self):
        S, T = self.source, self.target
        for r in S.relations:
            if not T.is_zero(self(r)):
                raise InvalidMap("map does not descend to the quotients")
        for g in S.group.gens:
            for i in range(S.rank):
                e = [1 if j == i else 0 for j in range(S.rank)]
                if not T.equal(self(S.act(g, e)), T.act(g, self(e))):
                    raise InvalidMap("map is not equivariant")

    def compose(self, other):
        """self after other."""
        return GModuleMap(other.source, self.target, mat_mul(self.matrix, other.matrix), check=False)

    def on_invariants(self):
        A, B = self.source.invariants(), self.target.invariants()
        return AbMap.from_function(A, B, self)

    def on_coinvariants(self):
        A, B = self.source.coinvariants(), self.target.coinvariants()
        return AbMap.from_function(A, B, self)

    def on_abgroups(self):
        return AbMap.from_function(self.source.abgroup, self.target.abgroup, self)


def identity_map(M):
    return GModuleMap(M, M, identity(M.rank), check=False)


def zero_map(A, B):
    return GModuleMap(A, B, zeros(B.rank, A.rank), check=False)


# ---------------------------------------------------------------- constructions

def trivial_module(G, rank=1, relations=()):
    return GModule(G, rank, relations, action=[identity(rank)] * G.order, name="Z" if rank == 1 else None)


def character_module(G, chi):
    """Rank one module where g acts by chi[g] in {1, -1}."""
    return GModule(G, 1, action=[[[chi[g]]] for g in range(G.order)], name="Z(chi)")


def sign_module(G, H=None):
    """Z with g acting by -1 exactly when g is outside the index-2 subgroup H."""
    if H is None:
        if G.order % 2:
            raise ValueError("odd order group has no sign character")
        H = _index_two_subgroup(G)
    chi = [1 if g in H else -1 for g in range(G.order)]
    M = character_module(G, chi)
    M.name = "Z-"
    return M


def _index_two_subgroup(G):
    for H in G.all_subgroups():
        if H.index == 2:
            return H
    raise ValueError("no index two subgroup")


def permutation_module(X, reduced=False):
    """Z[X], or the augmentation kernel Z[X]_0 with basis x_0 - x_i."""
    G = X.group
    n = X.size
    if not reduced:
        action = []
        for g in range(G.order):
            a = zeros(n, n)
            for x in range(n):
                a[X.act[g][x]][x] = 1
            action.append(a)
        return GModule(G, n, action=action, name="Z[S]", check=False)
    if n == 0:
        raise EmptySet("reduced permutation module of an empty set")
    action = []
    for g in range(G.order):
        a = zeros(n - 1, n - 1)
        y0 = X.act[g][0]
        for i in range(1, n):
            # g(x_0 - x_i) = y0 - yi = (x_0 - yi) - (x_0 - y0)
            yi = X.act[g][i]
            if yi != 0:
                a[yi - 1][i - 1] += 1
            if y0 != 0:
                a[y0 - 1][i - 1] -= 1
        action.append(a)
    return GModule(G, n - 1, action=action, name="Z[S]0", check=False)


def reduced_inclusion(X):
    """The inclusion Z[X]_0 -> Z[X] as a GModuleMap."""
    n = X.size
    M0, M = permutation_module(X, True), permutation_module(X, False)
    mat = zeros(n, n - 1)
    for i in range(1, n):
        mat[0][i - 1] = 1
        mat[i][i - 1] = -1
    return GModuleMap(M0, M, mat, check=False)


def augmentation(X):
    M, Z = permutation_module(X, False), trivial_module(X.group)
    return GModuleMap(M, Z, [[1] * X.size], check=False)


def regular_module(G):
    from .groups import regular_gset
    M = permutation_module(regular_gset(G))
    M.name = "Z[G]"
    return M


def augmentation_ideal(G):
    from .groups import regular_gset
    M = permutation_module(regular_gset(G), reduced=True)
    M.name = "I_G"
    return M


def direct_sum(*mods):
    G = mods[0].group
    for M in mods:
        if M.group is not G:
            raise GroupMismatch("modules over different groups")
    n = sum(M.rank for M in mods)
    rels, off = [], 0
    for M in mods:
        for r in M.relations:
            rels.append([0] * off + list(r) + [0] * (n - off - M.rank))
        off += M.rank
    action = []
    for g in range(G.order):
        a = zeros(n, n)
        off = 0
        for M in mods:
            for i in range(M.rank):
                for j in range(M.rank):
                    a[off + i][off + j] = M.action[g][i][j]
            off += M.rank
        action.append(a)
    return GModule(G, n, rels, action=action, check=False)


def tensor_module(A, B):
    """A (x) B with g(a (x) b) = ga (x) gb; coordinate of a_i (x) b_j is i*rank(B) + j."""
    if A.group is not B.group:
        raise GroupMismatch("modules over different groups")
    G = A.group
    na, nb = A.rank, B.rank
    rels = []
    for r in A.relations:
        for j in range(nb):
            v = [0] * (na * nb)
            for i in range(na):
                v[i * nb + j] = r[i]
            rels.append(v)
    for r in B.relations:
        for i in range(na):
            v = [0] * (na * nb)
            for j in range(nb):
                v[i * nb + j] = r[j]
            rels.append(v)
    action = [_kron(A.action[g], B.action[g]) for g in range(G.order)]
    M = GModule(G, na * nb, rels, action=action, check=False)
    M.tensor_shape = (na, nb)
    return M


def tensor_vectors(a, b):
    return [x * y for x in a for y in b]


def hom_module(A, B):
    """Hom(A, B) with (gf)(a) = g f(g^-1 a).

    Elements are vectors in the module's own coordinates; ``hom_to_matrix``
    turns them into rank(B) x rank(A) integer matrices.
    """
    if A.group is not B.group:
        raise GroupMismatch("modules over different groups")
    G = A.group
    na, nb = A.rank, B.rank
    N = na * nb

    def act_full(g, F):
        P, Q = B.action[g], A.action[G.inv[g]]
        return _flat(mat_mul(mat_mul(P, _unflat(F, nb, na)), Q)) if N else []

    full_rels = []
    for r in B.relations:
        for j in range(na):
            v = [0] * N
            for i in range(nb):
                v[i * na + j] = r[i]
            full_rels.append(v)
    if A.is_free():
        action = []
        for g in range(G.order):
            cols = [act_full(g, [1 if t == s else 0 for t in range(N)]) for s in range(N)]
            action.append([list(r) for r in zip(*cols)] if cols else [])
        M = GModule(G, N, full_rels, action=action, check=False)
        M.hom_shape = (nb, na)
        M.hom_basis = None
        return M
    # F with F R_A in span R_B: solve F r = R_B y for each relation r of A
    rows = []
    ra = A.relations
    rb = B.relations
    nra, nrb = len(ra), len(rb)
    # unknowns: F (N entries) then y_k (nrb entries for each relation of A)
    total = N + nra * nrb
    for k, r in enumerate(ra):
        for i in range(nb):
            row = [0] * total
            for j in range(na):
                row[i * na + j] = r[j]
            for l, s in enumerate(rb):
                row[N + k * nrb + l] = -s[i]
            rows.append(row)
    from .intlat import kernel_lattice
    ker = kernel_lattice(rows, total) if rows else identity(total)
    L = Lattice(N, [v[:N] for v in ker] + full_rels)
    basis = L.basis()
    k = len(basis)
    rels = [L.coords(v) for v in full_rels]
    action = []
    for g in range(G.order):
        cols = [L.coords(act_full(g, b)) for b in basis]
        action.append([list(r) for r in zip(*cols)] if cols else [])
    M = GModule(G, k, rels, action=action, check=False)
    M.hom_shape = (nb, na)
    M.hom_basis = basis
    M.hom_lattice = L
    return M


def _flat(F):
    return [x for r in F for x in r]


def _unflat(v, m, n):
    return [list(v[i * n:(i + 1) * n]) for i in range(m)]


def hom_to_matrix(H, z):
    nb, na = H.hom_shape
    if H.hom_basis is None:
        return _unflat(z, nb, na)
    v = [0] * (nb * na)
    for q, b in zip(z, H.hom_basis):
        if q:
            v = [x + q * y for x, y in zip(v, b)]
    return _unflat(v, nb, na)


def matrix_to_hom(H, F):
    v = _flat(F)
    if H.hom_basis is None:
        return v
    c = H.hom_lattice.coords(v)
    if c is None:
        raise InvalidMap("matrix does not define a homomorphism of the presented groups")
    return c


def hom_evaluate(H, z, a):
    """f(a) for f in Hom(A, B) given by coordinates z."""
    return mat_vec(hom_to_matrix(H, z), a)


def restrict_module(M, H):
    """M viewed as a module over the subgroup H (a Subgroup of M.group)."""
    cache = M.__dict__.setdefault("_restricted", {})
    if H.members not in cache:
        HG = H.group()
        emb = H.embedding()
        cache[H.members] = GModule(HG, M.rank, M.relations, action=[M.action[g] for g in emb],
                                   name=M.name, check=False)
    return cache[H.members]


def inflate_module(M, proj, G):
    """A module over a quotient Q viewed over G through proj: G -> Q."""
    return GModule(G, M.rank, M.relations, action=[M.action[proj[g]] for g in range(G.order)],
                   name=M.name, check=False)


def submodule(M, gens):
    """The G-stable sublattice spanned by gens plus relations, in its own coordinates.

    Returns (module, inclusion map into M).
    """
    L = Lattice(M.rank, list(gens) + M.relations)
    basis = L.basis()
    k = len(basis)
    rels = [L.coords(r) for r in M.relations]
    action = []
    for g in range(M.group.order):
        cols = []
        for b in basis:
            c = L.coords(M.act(g, b))
            if c is None:
                raise InvalidModule("sublattice is not G-stable")
            cols.append(c)
        action.append([list(r) for r in zip(*cols)] if cols else [])
    S = GModule(M.group, k, rels, action=action, check=False)
    inc = [list(r) for r in zip(*basis)] if basis else zeros(M.rank, 0)
    return S, GModuleMap(S, M, inc, check=False)


def kernel_module(f):
    """Kernel of a GModuleMap between modules (target relations respected)."""
    S, T = f.source, f.target
    gens = kernel_of(f.matrix, T.relations, S.rank) if T.rank else identity(S.rank)
    return submodule(S, gens)


def induced_diagonal(M):
    """Z[G] (x) M with the diagonal action (cohomologically trivial)."""
    return tensor_module(regular_module(M.group), M)


def shift_module(M):
    """I_G (x) M, the kernel of Z[G] (x) M -> M, used for dimension shifting."""
    return tensor_module(augmentation_ideal(M.group), M)


# ---------------------------------------------------------------- coinduction

class Coinduced:
    """R(M0) = {f: G -> M0 : f(kx) = k f(x)} for a subgroup K and a K-module M0.

    Coordinates: blocks of rank(M0) holding f(x_i) for the right coset
    representatives x_0 = 1, x_1, ... of K\\G.  G acts by (s f)(x) = f(x s).
    ``eps`` is evaluation at 1 and ``j`` extends m by zero off K.
    """

    def __init__(self, K, M0):
        G = K.parent
        HG = K.group()
        if M0.group is not HG:
            raise GroupMismatch("M0 must be a module over the subgroup's group")
        self.K = K
        self.M0 = M0
        emb = K.embedding()
        to_sub = {g: i for i, g in enumerate(emb)}
        reps = K.coset_representatives("right")
        self.reps = reps
        t, n = len(reps), M0.rank
        N = t * n
        action = []
        for s in range(G.order):
            a = zeros(N, N)
            for i, x in enumerate(reps):
                xs = G.mul[x][s]
                jdx = K.right_coset_index(xs)
                k = G.mul[xs][G.inv[reps[jdx]]]
                rk = M0.action[to_sub[k]]
                for r in range(n):
                    for c in range(n):
                        a[i * n + r][jdx * n + c] = rk[r][c]
            action.append(a)
        rels = []
        for i in range(t):
            for r in M0.relations:
                rels.append([0] * (i * n) + list(r) + [0] * ((t - i - 1) * n))
        self.module = GModule(G, N, rels, action=action, name="R(M0)", check=False)
        self.eps = [[1 if c == r else 0 for c in range(N)] for r in range(n)]
        self.j = [[1 if r == c else 0 for c in range(n)] for r in range(N)]
        self.to_sub = to_sub

    def eps_map(self):
        R = restrict_module(self.module, self.K)
        return GModuleMap(R, self.M0, self.eps, check=False)

    def j_map(self):
        R = restrict_module(self.module, self.K)
        return GModuleMap(self.M0, R, self.j, check=False)

    def fixed_points_to_sub(self):
        """R(M0)^G -> M0^K, f -> f(1)."""
        A = self.module.invariants()
        B = self.M0.invariants()
        return AbMap.from_function(A, B, lambda v: mat_vec(self.eps, v))


def coinduction(K, M0):
    return Coinduced(K, M0)


# ---------------------------------------------------------------- random data

def random_equivariant_map(A, B, rng, bound=2):
    """Sum over G of g F g^-1 for a random integer matrix F (A assumed free)."""
    G = A.group
    F = [[rng.randint(-bound, bound) for _ in range(A.rank)] for _ in range(B.rank)]
    out = zeros(B.rank, A.rank)
    for g in range(G.order):
        T = mat_mul(mat_mul(B.action[g], F), A.action[G.inv[g]]) if A.rank and B.rank else zeros(B.rank, A.rank)
        out = [[x + y for x, y in zip(r, s)] for r, s in zip(out, T)]
    return GModuleMap(A, B, out, check=False)


def random_lattice_module(G, rng, max_rank=3):
    """A random torsion-free module: a direct sum of small permutation, sign and trivial pieces."""
    from .groups import coset_gset
    pieces = []
    budget = max_rank
    subs = G.all_subgroups()
    while budget > 0 and (not pieces or rng.random() < 0.6):
        kind = rng.random()
        if kind < 0.5:
            H = rng.choice([h for h in subs if h.index <= budget] or [G.whole()])
            X = coset_gset(H)
            red = X.size > 1 and rng.random() < 0.4
            M = permutation_module(X, reduced=red)
        elif kind < 0.75 and G.order % 2 == 0:
            M = sign_module(G, rng.choice([h for h in subs if h.index == 2]))
        else:
            M = trivial_module(G)
        if M.rank == 0 or M.rank > budget:
            continue
        pieces.append(M)
        budget -= M.rank
    if not pieces:
        pieces = [trivial_module(G)]
    return direct_sum(*pieces) if len(pieces) > 1 else pieces[0]
