"""Exact integer linear algebra.

Matrices are lists of rows of Python ints, vectors are lists of ints.
Nothing here uses floating point, so entries may grow without overflow.

The two workhorses are

* :class:`Lattice`, a sublattice of Z^n kept in echelon form.  Inserting
  generators with optional "tags" gives kernels and preimages for free.
* :class:`PresentedAbGroup`, a subquotient L / R of Z^n with an invariant
  factor normal form and canonical coordinates for its elements.

>>> smith_normal_form([[2, 4], [6, 8]]).diagonal()
[2, 4]
>>> cokernel_presentation([[2, 0], [0, 3]]).normal_form()
{'torsion': [6], 'free_rank': 0}
"""
from __future__ import annotations

from dataclasses import dataclass


class IncompatibleMap(ValueError):
    pass


# ---------------------------------------------------------------- helpers

def xgcd(a, b):
    """Return (g, s, t) with s*a + t*b = g = gcd(a, b) >= 0."""
    s0, s1, t0, t1 = 1, 0, 0, 1
    while b:
        q, r = divmod(a, b)
        a, b = b, r
        s0, s1 = s1, s0 - q * s1
        t0, t1 = t1, t0 - q * t1
    if a < 0:
        return -a, -s0, -t0
    return a, s0, t0


def identity(n):
    return [[1 if i == j else 0 for j in range(n)] for i in range(n)]


def zeros(m, n):
    return [[0] * n for _ in range(m)]


def transpose(A, ncols=None):
    if not A:
        return [[] for _ in range(ncols or 0)]
    return [list(r) for r in zip(*A)]


def mat_mul(A, B):
    if not A:
        return []
    n = len(B[0]) if B else 0
    out = []
    Bt = list(zip(*B)) if B else []
    for row in A:
        nz = [(k, a) for k, a in enumerate(row) if a]
        out.append([sum(a * col[k] for k, a in nz) for col in Bt] if Bt else [0] * n)
    return out


def mat_vec(A, v):
    nz = [(k, x) for k, x in enumerate(v) if x]
    return [sum(row[k] * x for k, x in nz) for row in A]


def vec_add(u, v, c=1):
    return [a + c * b for a, b in zip(u, v)]


def is_zero_vec(v):
    return not any(v)


def columns(A, ncols=None):
    """Columns of a row-major matrix as vectors."""
    if not A:
        return [[] for _ in range(ncols or 0)]
    return [list(c) for c in zip(*A)]


def from_columns(cols, nrows):
    if not cols:
        return [[] for _ in range(nrows)]
    return [list(r) for r in zip(*cols)]


def block_matrix(blocks):
    """Assemble a matrix from a list of rows of blocks (all blocks present)."""
    out = []
    for brow in blocks:
        h = len(brow[0])
        for i in range(h):
            r = []
            for b in brow:
                r.extend(b[i])
            out.append(r)
    return out


def determinant(A):
    """Exact determinant by fraction-free Bareiss elimination."""
    n = len(A)
    if n == 0:
        return 1
    M = [list(r) for r in A]
    sign, prev = 1, 1
    for k in range(n - 1):
        if M[k][k] == 0:
            for i in range(k + 1, n):
                if M[i][k]:
                    M[k], M[i] = M[i], M[k]
                    sign = -sign
                    break
            else:
                return 0
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                M[i][j] = (M[i][j] * M[k][k] - M[i][k] * M[k][j]) // prev
        prev = M[k][k]
    return sign * M[n - 1][n - 1]


# ---------------------------------------------------------------- lattices

def _lead(v):
    for i, x in enumerate(v):
        if x:
            return i
    return -1


class Lattice:
    """A sublattice of Z^dim held as an echelon basis.

    Each basis vector has a distinct pivot (first nonzero index, positive
    entry).  With ``track=True`` every stored vector carries a tag vector
    recording the combination of inserted generators that produced it;
    generators that reduce to zero yield relations among the inputs.
    """

    def __init__(self, dim, vectors=(), tags=None):
        self.dim = dim
        self._piv = {}
        self._sorted = None
        self.track = tags is not None
        self.relations = []
        if tags is None:
            for v in vectors:
                self.add(v)
        else:
            for v, t in zip(vectors, tags):
                self.add(v, t)

    def add(self, v, tag=None):
        v = list(v)
        if len(v) != self.dim:
            raise ValueError("vector of length %d in lattice of dim %d" % (len(v), self.dim))
        tag = list(tag) if tag is not None else None
        piv = self._piv
        self._sorted = None
        while True:
            p = _lead(v)
            if p < 0:
                if tag is not None and any(tag):
                    self.relations.append(tag)
                return False
            if p not in piv:
                if v[p] < 0:
                    v = [-x for x in v]
                    if tag is not None:
                        tag = [-x for x in tag]
                piv[p] = (v, tag)
                return True
            b, bt = piv[p]
            a0, c0 = b[p], v[p]
            if c0 % a0 == 0:
                q = c0 // a0
                v = [x - q * y for x, y in zip(v, b)]
                if tag is not None:
                    tag = [x - q * y for x, y in zip(tag, bt)]
                continue
            g, s, t = xgcd(a0, c0)
            u, w = a0 // g, c0 // g
            nb = [s * x + t * y for x, y in zip(b, v)]
            nv = [u * y - w * x for x, y in zip(b, v)]
            if tag is not None:
                nbt = [s * x + t * y for x, y in zip(bt, tag)]
                tag = [u * y - w * x for x, y in zip(bt, tag)]
                piv[p] = (nb, nbt)
            else:
                piv[p] = (nb, None)
            v = nv

    def _items(self):
        if self._sorted is None:
            self._sorted = [self._piv[p] + (p,) for p in sorted(self._piv)]
        return self._sorted

    @property
    def rank(self):
        return len(self._piv)

    def basis(self):
        return [list(v) for v, _, _ in self._items()]

    def tags(self):
        return [list(t) for _, t, _ in self._items()]

    def coords(self, v):
        """Coefficients of v in the echelon basis, or None if v is not in the lattice."""
        r = list(v)
        out = []
        for b, _, p in self._items():
            x = r[p]
            if x % b[p]:
                return None
            q = x // b[p]
            out.append(q)
            if q:
                r = [a - q * c for a, c in zip(r, b)]
        if any(r):
            return None
        return out

    def contains(self, v):
        return self.coords(v) is not None

    def preimage(self, v):
        """A combination of the inserted generators summing to v (needs tags)."""
        c = self.coords(v)
        if c is None:
            return None
        items = self._items()
        n = len(items[0][1]) if items else 0
        out = [0] * n
        for q, (_, t, _) in zip(c, items):
            if q:
                out = [a + q * b for a, b in zip(out, t)]
        return out

    def contains_lattice(self, other):
        return all(self.contains(b) for b in other.basis())

    def equals(self, other):
        return self.rank == other.rank and self.contains_lattice(other) and other.contains_lattice(self)


def kernel_lattice(A, ncols=None):
    """Basis (list of column vectors) of {x : A x = 0}."""
    n = ncols if ncols is not None else (len(A[0]) if A else 0)
    m = len(A)
    cols = columns(A, n) if m else [[] for _ in range(n)]
    lat = Lattice(m, cols, tags=identity(n))
    ker = Lattice(n, lat.relations)
    return ker.basis()


def image_lattice(A, ncols=None):
    m = len(A)
    return Lattice(m, columns(A, ncols))


class Solver:
    """Preimages under a fixed integer matrix, x with A x = b."""

    def __init__(self, A, ncols=None):
        n = ncols if ncols is not None else (len(A[0]) if A else 0)
        self.n = n
        self.m = len(A)
        self.lat = Lattice(self.m, columns(A, n), tags=identity(n))

    def solve(self, b):
        if self.m == 0:
            return [0] * self.n
        x = self.lat.preimage(b)
        if x is not None and len(x) != self.n:
            x = [0] * self.n
        return x


# ---------------------------------------------------------------- Smith form

@dataclass(frozen=True)
class SmithDecomposition:
    U: list
    V: list
    D: list

    def diagonal(self):
        k = min(len(self.D), len(self.D[0]) if self.D else 0)
        return [self.D[i][i] for i in range(k)]


def _smith(A, want_v=True):
    """Return (D, U, Uinv, V) with U A V = D in Smith form."""
    m = len(A)
    n = len(A[0]) if m else 0
    D = [list(r) for r in A]
    U = identity(m)
    Ui = identity(m)
    V = identity(n) if want_v else None

    def row_add(i, j, q):  # row_i += q row_j
        Di, Dj = D[i], D[j]
        for c in range(n):
            if Dj[c]:
                Di[c] += q * Dj[c]
        Ui_, Uj = U[i], U[j]
        for c in range(m):
            if Uj[c]:
                Ui_[c] += q * Uj[c]
        for r in Ui:  # inverse: column_j -= q column_i
            if r[i]:
                r[j] -= q * r[i]

    def row_swap(i, j):
        D[i], D[j] = D[j], D[i]
        U[i], U[j] = U[j], U[i]
        for r in Ui:
            r[i], r[j] = r[j], r[i]

    def row_neg(i):
        D[i] = [-x for x in D[i]]
        U[i] = [-x for x in U[i]]
        for r in Ui:
            r[i] = -r[i]

    def col_add(i, j, q):  # col_i += q col_j
        for r in D:
            if r[j]:
                r[i] += q * r[j]
        if want_v:
            for r in V:
                if r[j]:
                    r[i] += q * r[j]

    def col_swap(i, j):
        for r in D:
            r[i], r[j] = r[j], r[i]
        if want_v:
            for r in V:
                r[i], r[j] = r[j], r[i]

    t = 0
    while t < min(m, n):
        best = None
        for i in range(t, m):
            Di = D[i]
            for j in range(t, n):
                x = Di[j]
                if x and (best is None or abs(x) < best[0]):
                    best = (abs(x), i, j)
                    if best[0] == 1:
                        break
            if best is not None and best[0] == 1:
                break
        if best is None:
            break
        _, i0, j0 = best
        if i0 != t:
            row_swap(t, i0)
        if j0 != t:
            col_swap(t, j0)
        while True:
            p = D[t][t]
            dirty = False
            for i in range(t + 1, m):
                x = D[i][t]
                if x:
                    row_add(i, t, -(x // p))
                    if D[i][t]:
                        dirty = True
            for j in range(t + 1, n):
                x = D[t][j]
                if x:
                    col_add(j, t, -(x // p))
                    if D[t][j]:
                        dirty = True
            if dirty:
                best = None
                for i in range(t, m):
                    x = D[i][t]
                    if x and (best is None or abs(x) < best[0]):
                        best = (abs(x), i, t)
                for j in range(t + 1, n):
                    x = D[t][j]
                    if x and abs(x) < best[0]:
                        best = (abs(x), t, j)
                _, i0, j0 = best
                if i0 != t:
                    row_swap(t, i0)
                if j0 != t:
                    col_swap(t, j0)
                continue
            bad = None
            for i in range(t + 1, m):
                Di = D[i]
                for j in range(t + 1, n):
                    if Di[j] % p:
                        bad = i
                        break
                if bad is not None:
                    break
            if bad is None:
                break
            row_add(t, bad, 1)
        if D[t][t] < 0:
            row_neg(t)
        t += 1
    return D, U, Ui, V


def smith_normal_form(A, ncols=None):
    """Smith decomposition U A V = D with d_1 | d_2 | ... and d_i >= 0."""
    if not A and ncols:
        return SmithDecomposition([], identity(ncols), [])
    D, U, _, V = _smith(A)
    return SmithDecomposition(U, V, D)


# ---------------------------------------------------------------- presented groups

class PresentedAbGroup:
    """A subquotient L / R of Z^dim.

    ``numerator`` generates L (``None`` means all of Z^dim) and
    ``relations`` generates R, which must lie in L.  Elements are given as
    vectors of Z^dim.  Canonical coordinates follow the invariant factor
    decomposition: torsion coordinates first (reduced mod d_i), then the
    free coordinates.
    """

    def __init__(self, dim, relations=(), numerator=None):
        self.dim = dim
        if numerator is None:
            self._num = None
            k = dim
            rel = [list(r) for r in relations]
        else:
            self._num = numerator if isinstance(numerator, Lattice) else Lattice(dim, numerator)
            k = self._num.rank
            rel = []
            for r in relations:
                c = self._num.coords(r)
                if c is None:
                    raise IncompatibleMap("relation outside the numerator lattice")
                rel.append(c)
        self.k = k
        relbasis = Lattice(k, rel).basis() if k else []
        if relbasis:
            D, U, Ui, _ = _smith(from_columns(relbasis, k), want_v=False)
            diag = [D[i][i] if i < len(relbasis) else 0 for i in range(k)]
        else:
            U = identity(k)
            Ui = identity(k)
            diag = [0] * k
        self._U = U
        self._Ui = Ui
        self._slots = [i for i in range(k) if diag[i] != 1]
        self.invariants = [diag[i] for i in self._slots]
        self.torsion = [d for d in self.invariants if d > 1]
        self.free_rank = sum(1 for d in self.invariants if d == 0)

    # -- description
    @property
    def ngens(self):
        return len(self._slots)

    def normal_form(self):
        return {"torsion": list(self.torsion), "free_rank": self.free_rank}

    def is_trivial(self):
        return not self._slots

    def is_finite(self):
        return self.free_rank == 0

    def order(self):
        if self.free_rank:
            return None
        o = 1
        for d in self.torsion:
            o *= d
        return o

    def same_type(self, other):
        return self.normal_form() == other.normal_form()

    def __repr__(self):
        parts = ["Z/%d" % d for d in self.torsion] + ["Z"] * self.free_rank
        return "PresentedAbGroup(%s)" % (" + ".join(parts) if parts else "0")

    # -- elements
    def _inner(self, x):
        if self._num is None:
            return list(x)
        c = self._num.coords(x)
        if c is None:
            raise ValueError("element outside the numerator lattice")
        return c

    def contains(self, x):
        return self._num is None or self._num.contains(x)

    def coords(self, x):
        z = self._inner(x)
        out = []
        for i, d in zip(self._slots, self.invariants):
            y = sum(a * b for a, b in zip(self._U[i], z) if b)
            out.append(y % d if d else y)
        return out

    def reduce(self, c):
        return [x % d if d else x for x, d in zip(c, self.invariants)]

    def is_zero(self, x):
        return not any(self.coords(x))

    def equal(self, x, y):
        return self.coords(x) == self.coords(y)

    def lift(self, c):
        z = [0] * self.k
        for i, a in zip(self._slots, c):
            if a:
                for r in range(self.k):
                    z[r] += self._Ui[r][i] * a
        if self._num is None:
            return z
        out = [0] * self.dim
        for q, b in zip(z, self._num.basis()):
            if q:
                out = [x + q * y for x, y in zip(out, b)]
        return out

    def generators(self):
        n = self.ngens
        return [self.lift([1 if j == i else 0 for j in range(n)]) for i in range(n)]

    def canonical_relations(self):
        """Relation columns of the canonical presentation Z^ngens / diag."""
        n = self.ngens
        return [[d if j == i else 0 for j in range(n)] for i, d in enumerate(self.invariants) if d]

    def to_json(self):
        return self.normal_form()


def cokernel_presentation(A, nrows=None):
    """Z^rows / column span of A."""
    m = len(A) if A else (nrows or 0)
    return PresentedAbGroup(m, columns(A) if A else [])


def subquotient(dim, numerator, denominator):
    return PresentedAbGroup(dim, denominator, numerator=numerator)


def trivial_group():
    return PresentedAbGroup(0)


def cyclic_group(d):
    return PresentedAbGroup(1, [[d]])


def free_group(r):
    return PresentedAbGroup(r)


def kernel_of(A, rel_target, ncols):
    """Generators of {x in Z^ncols : A x in span(rel_target)}."""
    m = len(A)
    if m == 0:
        return identity(ncols)
    nr = len(rel_target)
    big = [list(A[i]) + [rt[i] for rt in rel_target] for i in range(m)]
    ker = kernel_lattice(big, ncols + nr)
    return Lattice(ncols, [v[:ncols] for v in ker]).basis()


# ---------------------------------------------------------------- maps

class AbMap:
    """Homomorphism between presented groups in canonical coordinates."""

    def __init__(self, src, dst, matrix):
        self.src = src
        self.dst = dst
        self.matrix = [list(r) for r in matrix]
        for i, d in enumerate(dst.invariants):
            if d:
                self.matrix[i] = [x % d for x in self.matrix[i]]
        for j, d in enumerate(src.invariants):
            if d:
                col = [self.matrix[i][j] * d for i in range(dst.ngens)]
                if any(dst.reduce(col)):
                    raise IncompatibleMap("map does not respect the source relations")

    @classmethod
    def from_function(cls, src, dst, fn):
        cols = [dst.coords(fn(g)) for g in src.generators()]
        return cls(src, dst, from_columns(cols, dst.ngens))

    @classmethod
    def zero(cls, src, dst):
        return cls(src, dst, zeros(dst.ngens, src.ngens))

    @classmethod
    def identity(cls, A):
        return cls(A, A, identity(A.ngens))

    def __call__(self, c):
        return self.dst.reduce(mat_vec(self.matrix, c)) if self.matrix else [0] * self.dst.ngens

    def apply_element(self, x):
        """Image of an element given in the source's outer coordinates, as target outer vector."""
        return self.dst.lift(self(self.src.coords(x)))

    def compose(self, other):
        """self after other."""
        return AbMap(other.src, self.dst, mat_mul(self.matrix, other.matrix) if other.matrix and self.matrix
                     else zeros(self.dst.ngens, other.src.ngens))

    def __add__(self, other):
        return AbMap(self.src, self.dst, [vec_add(a, b) for a, b in zip(self.matrix, other.matrix)])

    def scaled(self, k):
        return AbMap(self.src, self.dst, [[k * x for x in r] for r in self.matrix])

    def equals(self, other):
        return self.matrix == other.matrix

    def is_zero(self):
        return not any(any(r) for r in self.matrix)

    def _cols(self):
        return columns(self.matrix, self.src.ngens) if self.dst.ngens else [[] for _ in range(self.src.ngens)]

    def kernel(self):
        gens = kernel_of(self.matrix, self.dst.canonical_relations(), self.src.ngens) if self.dst.ngens \
            else identity(self.src.ngens)
        return PresentedAbGroup(self.src.ngens, self.src.canonical_relations(), numerator=gens)

    def image(self):
        rels = self.dst.canonical_relations()
        return PresentedAbGroup(self.dst.ngens, rels, numerator=self._cols() + rels)

    def cokernel(self):
        return PresentedAbGroup(self.dst.ngens, self._cols() + self.dst.canonical_relations())

    def is_injective(self):
        return self.kernel().is_trivial()

    def is_surjective(self):
        return self.cokernel().is_trivial()

    def is_iso(self):
        return self.is_injective() and self.is_surjective()

    def inverse(self):
        if not self.is_iso():
            raise ValueError("map is not invertible")
        # solve self(x) = e_i modulo target relations
        rels = self.dst.canonical_relations()
        cols = self._cols()
        solver = Solver(from_columns(cols + rels, self.dst.ngens), len(cols) + len(rels))
        out = []
        for e in _unit_vectors(self.dst.ngens):
            x = solver.solve(e)
            out.append(self.src.reduce(x[:len(cols)]))
        return AbMap(self.dst, self.src, from_columns(out, self.src.ngens))

    def to_json(self):
        return {"source": self.src.normal_form(), "target": self.dst.normal_form(), "matrix": self.matrix}


def _unit_vectors(n):
    return [[1 if j == i else 0 for j in range(n)] for i in range(n)]


def exact_at(f, g):
    """Exactness of A -f-> B -g-> C at B (AbMaps in canonical coordinates)."""
    if not g.compose(f).is_zero():
        return False
    ker = g.kernel()
    img = f.image()
    # ker and img live in canonical coordinates of B; compare lattices with B's relations
    rels = f.dst.canonical_relations()
    L1 = Lattice(f.dst.ngens, ker._num.basis() + rels)
    L2 = Lattice(f.dst.ngens, img._num.basis() + rels)
    return L1.equals(L2)


def homology(f, g, rel_A, rel_B, rel_C, dims):
    """ker g / (im f + R_B) for ambient integer matrices.

    ``dims`` = (nA, nB, nC).  Relations are lists of column vectors.
    """
    nA, nB, nC = dims
    _check_descends(f, rel_A, rel_B, nA, nB)
    _check_descends(g, rel_B, rel_C, nB, nC)
    kgens = kernel_of(g, rel_C, nB) if nC else identity(nB)
    im = (columns(f, nA) if nB and nA else []) + list(rel_B)
    K = Lattice(nB, kgens)
    if not all(K.contains(v) for v in im):
        return None
    return PresentedAbGroup(nB, im, numerator=K)


def _check_descends(f, rel_src, rel_dst, n_src, n_dst):
    if not rel_src or n_dst == 0:
        return
    L = Lattice(n_dst, rel_dst)
    for r in rel_src:
        if not L.contains(mat_vec(f, r)):
            raise IncompatibleMap("map does not descend to the quotient")


def exactness_check(f, g, rel_A=(), rel_B=(), rel_C=(), dims=None):
    """Verdict on exactness of A -f-> B -g-> C at B for presented A, B, C."""
    if dims is None:
        nB = len(f) if f else (len(g[0]) if g and g[0] else 0)
        nA = len(f[0]) if f and f[0] else 0
        nC = len(g)
        dims = (nA, nB, nC)
    H = homology(f, g, rel_A, rel_B, rel_C, dims)
    if H is None:
        return {"exact_at_B": False, "complex": False, "image_index_data": None, "kernel_mod_image": None}
    return {
        "exact_at_B": H.is_trivial(),
        "complex": True,
        "image_index_data": H.order(),
        "kernel_mod_image": H,
    }
