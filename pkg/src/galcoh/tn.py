"""Tate-Nakayama triples (X, A, alpha) with alpha a 2-cocycle in Hom(X, A).

Weak TN is checked degree by degree in a window and subgroup by subgroup;
a passing verdict is only a certificate for that window.  The extension
attached to a triple has kernel Hom(X, A), and the groups H^1_alg(E, M(x)A)
are the H^1_Y groups with Y = M (x) X and xi(m (x) x)(phi) = m (x) phi(x).
"""
from __future__ import annotations

from dataclasses import dataclass, field

from .intlat import AbMap
from .groups import FinGroup
from .gmod import (GModule, GModuleMap, hom_evaluate, hom_module, hom_to_matrix, matrix_to_hom,
                   restrict_module, tensor_module, trivial_module)
from .cochains import (ExtensionData, ExtensionMorphism, Pairing, TwoCocycle, apply_map, clean,
                       cochain_add, coboundary, cup_map, restrict, solve_coboundary)
from .h1y import H1YContext, H1YGroup, phi_map, psi_map, pullback_map
from .tate import MAX_WINDOW, tate_cohomology
from .oracles import cyclic_generator

DEFAULT_TN_WINDOW = (-3, 1)


class WindowTooWide(ValueError):
    pass


class ClassMismatch(ValueError):
    pass


class TorsionModule(ValueError):
    pass


@dataclass
class TNTriple:
    group: FinGroup
    X: GModule
    A: GModule
    alpha: TwoCocycle
    name: str = "triple"

    def __post_init__(self):
        if not self.X.is_torsion_free():
            raise ValueError("X must be torsion-free")
        H = self.alpha.module
        if getattr(H, "hom_shape", None) != (self.A.rank, self.X.rank):
            raise ValueError("alpha must take values in hom_module(X, A)")

    @property
    def hom(self):
        return self.alpha.module

    def extension(self):
        return ExtensionData(self.alpha)

    def pairing(self):
        H = self.hom
        return Pairing(H, self.X, self.A, lambda f, x: hom_evaluate(H, f, x))

    def to_json(self):
        return {"name": self.name, "X": self.X.to_json(), "A": self.A.to_json(),
                "alpha": self.alpha.to_json()}


@dataclass
class TNVerdict:
    window: tuple
    weak_tn: dict = field(default_factory=dict)    # (subgroup members, r) -> bool
    rigid: dict = field(default_factory=dict)      # subgroup members -> bool

    @property
    def is_weak_tn(self):
        return all(self.weak_tn.values())

    @property
    def is_rigid(self):
        return bool(self.rigid) and all(self.rigid.values())

    def label(self):
        if self.is_weak_tn and self.is_rigid:
            return "TN (window-certified %d..%d)" % self.window
        if self.is_weak_tn:
            return "weak TN (window-certified %d..%d)" % self.window
        return "not TN"

    def to_json(self):
        return {
            "window": list(self.window),
            "label": self.label(),
            "weak_tn": [{"subgroup": list(k[0]), "degree": k[1], "ok": v}
                        for k, v in sorted(self.weak_tn.items(), key=lambda kv: (len(kv[0][0]), kv[0]))],
            "rigid": [{"subgroup": list(k), "ok": v}
                      for k, v in sorted(self.rigid.items(), key=lambda kv: (len(kv[0]), kv[0]))],
        }


def cyclic_model_triple(n, G=None):
    """X = A = Z trivial over C_n with alpha the carry cocycle (a generator of H^2(C_n, Z))."""
    from .groups import cyclic
    G = G or cyclic(n)
    n = G.order
    s = cyclic_generator(G) if n > 1 else 0
    exp, x = {}, 0
    for i in range(n):
        exp[x] = i
        x = G.mul[s][x]
    X = trivial_module(G, 1)
    A = trivial_module(G, 1)
    H = hom_module(X, A)
    tab = {(a, b): [1] for a in range(1, n) for b in range(1, n) if exp[a] + exp[b] >= n}
    return TNTriple(G, X, A, TwoCocycle(H, tab), name="cyclic model C%d" % n)


def scaled_triple(t, k):
    """The triple with alpha replaced by k * alpha (k = 0 gives the designed failure)."""
    tab = {st: [k * x for x in v] for st, v in t.alpha.table.items()}
    return TNTriple(t.group, t.X, t.A, TwoCocycle(t.hom, tab), name="%s x%d" % (t.name, k))


def padded_triple(t, B):
    """(X, A + B, alpha + 0); with B cohomologically trivial this stays TN."""
    from .gmod import direct_sum
    A2 = direct_sum(t.A, B)
    H2 = hom_module(t.X, A2)
    nX = t.X.rank

    def move(phi):
        P = hom_to_matrix(t.hom, phi)
        return matrix_to_hom(H2, P + [[0] * nX for _ in range(B.rank)])
    tab = {st: move(v) for st, v in t.alpha.table.items()}
    return TNTriple(t.group, t.X, A2, TwoCocycle(H2, tab), name="%s + pad" % t.name)


def _check_window(window):
    lo, hi = window
    if lo > hi:
        raise WindowTooWide("empty window")
    if lo < -MAX_WINDOW or hi + 2 > MAX_WINDOW or hi > 2:
        raise WindowTooWide("window %r exceeds what the engine can certify" % (window,))


def restricted_triple_data(t, K):
    """(X_K, A_K, alpha_K, pairing) for a Subgroup K."""
    XK = restrict_module(t.X, K)
    AK = restrict_module(t.A, K)
    HK, aK = restrict(t.hom, t.alpha.table, 2, K)
    H = t.hom
    P = Pairing(HK, XK, AK, lambda f, x: hom_evaluate(H, f, x))
    return XK, AK, aK, P


def verify_weak_tn(t, window=DEFAULT_TN_WINDOW, subgroups=None):
    _check_window(window)
    G = t.group
    subgroups = G.all_subgroups() if subgroups is None else subgroups
    verdict = TNVerdict(tuple(window))
    for K in subgroups:
        XK, AK, aK, P = restricted_triple_data(t, K)
        for r in range(window[0], window[1] + 1):
            m, _ = cup_map(aK, P, r)
            verdict.weak_tn[(tuple(K.sorted_members), r)] = m.is_iso()
    verdict.rigid = verify_rigidity(t, subgroups)
    return verdict


def verify_rigidity(t, subgroups=None):
    G = t.group
    subgroups = G.all_subgroups() if subgroups is None else subgroups
    out = {}
    for K in subgroups:
        HK = restrict_module(t.hom, K)
        out[tuple(K.sorted_members)] = tate_cohomology(HK, 1).is_trivial()
    return out


def _composition_pairing(HXA, HMX, HMA):
    """Hom(X, A) x Hom(M, X) -> Hom(M, A), (phi, psi) -> phi o psi."""
    def fn(phi, psi):
        P = hom_to_matrix(HXA, phi)
        Q = hom_to_matrix(HMX, psi)
        R = [[sum(P[i][k] * Q[k][j] for k in range(len(Q))) for j in range(len(Q[0]) if Q else 0)]
             for i in range(len(P))]
        return matrix_to_hom(HMA, R)
    return Pairing(HXA, HMX, HMA, fn)


def class_c_membership(t, M, window=DEFAULT_TN_WINDOW, detail=False):
    """Whether cup with alpha is bijective Ĥ^r(G, Hom(M, X)) -> Ĥ^{r+2}(G, Hom(M, A)) across the window."""
    _check_window(window)
    HMX = hom_module(M, t.X)
    HMA = hom_module(M, t.A)
    P = _composition_pairing(t.hom, HMX, HMA)
    res = {}
    for r in range(window[0], window[1] + 1):
        m, _ = cup_map(t.alpha.table, P, r)
        res[r] = m.is_iso()
    ok = all(res.values())
    return (ok, res) if detail else ok


# ---------------------------------------------------------------- H^1_alg

def xi_matrix(M, X, A, HXA, Y, T, HH):
    """Matrix of xi: M (x) X -> Hom(Hom(X, A), M (x) A), xi(m (x) x)(phi) = m (x) phi(x)."""
    nM, nX, nA = M.rank, X.rank, A.rank
    kH = HXA.rank
    phis = [hom_to_matrix(HXA, [1 if j == k else 0 for j in range(kH)]) for k in range(kH)]
    cols = []
    for i in range(nM):
        for j in range(nX):
            F = [[0] * kH for _ in range(T.rank)]
            for k, P in enumerate(phis):
                for a in range(nA):
                    F[i * nA + a][k] = P[a][j]
            cols.append(matrix_to_hom(HH, F))
    return [list(r) for r in zip(*cols)] if cols else [[] for _ in range(HH.rank)]


def h1_alg_context(t, M, alpha_table=None, X=None, hom=None):
    """The H^1_Y context for Y = M (x) X, coefficients M (x) A, over the triple's extension.

    ``alpha_table``/``X``/``hom`` override the extension data (used for the
    auxiliary extensions inside the construction of rho).
    """
    if not M.is_torsion_free():
        raise TorsionModule("M must be torsion-free")
    X = X or t.X
    HXA = hom or t.hom
    tab = t.alpha.table if alpha_table is None else alpha_table
    ext = ExtensionData(TwoCocycle(HXA, tab))
    Y = tensor_module(M, X)
    T = tensor_module(M, t.A)
    HH = hom_module(HXA, T)
    xi = xi_matrix(M, X, t.A, HXA, Y, T, HH)
    return H1YContext(ext, T, Y, xi, hom=HH)


def c_iso_check(t, M):
    """c: (M (x) X)_G -> H^1_alg(E, M (x) A) and whether it is an isomorphism."""
    H1 = H1YGroup(h1_alg_context(t, M))
    c = H1.c_map()
    return c.is_iso(), c, H1


# ---------------------------------------------------------------- morphisms

def _tensor_id(M, f, n_src, n_dst):
    """Matrix of id_M (x) f with f given as an n_dst x n_src matrix."""
    nM = M.rank
    out = [[0] * (nM * n_src) for _ in range(nM * n_dst)]
    for i in range(nM):
        for a in range(n_dst):
            for b in range(n_src):
                out[i * n_dst + a][i * n_src + b] = f[a][b]
    return out


class TripleMorphism:
    """(b, a): (X_2, A_2, alpha_2) -> (X_1, A_1, alpha_1) with a(alpha_2) = b(alpha_1) in H^2.

    ``b`` is a G-map X_2 -> X_1 and ``a`` a G-map A_2 -> A_1 (matrices).
    ``c`` solves b^*(alpha_1) - a_*(alpha_2) = d c in Hom(X_2, A_1).
    """

    def __init__(self, t2, t1, b, a, c=None):
        self.t2, self.t1 = t2, t1
        self.b = GModuleMap(t2.X, t1.X, b).matrix
        self.a = GModuleMap(t2.A, t1.A, a).matrix
        self.H21 = hom_module(t2.X, t1.A)
        target = cochain_add(self.b_pull(t1.alpha.table), {k: [-x for x in v] for k, v in self.a_push(t2.alpha.table).items()},
                             self.H21.rank)
        if c is None:
            c = solve_coboundary(self.H21, target, 2)
            if c is None:
                raise ClassMismatch("a(alpha_2) and b(alpha_1) differ in H^2(G, Hom(X_2, A_1))")
        else:
            diff = cochain_add(target, {k: [-x for x in v] for k, v in coboundary(self.H21, c, 1).items()},
                               self.H21.rank)
            if any(not self.H21.is_zero(v) for v in diff.values()):
                raise ClassMismatch("supplied c does not solve b^*(alpha_1) - a_*(alpha_2) = dc")
        self.c = clean(c)

    # Hom(X_2, A_2) -> Hom(X_2, A_1), phi -> a phi
    def a_star(self, phi):
        P = hom_to_matrix(self.t2.hom, phi)
        a = self.a
        R = [[sum(a[i][k] * P[k][j] for k in range(len(P))) for j in range(self.t2.X.rank)]
             for i in range(len(a))]
        return matrix_to_hom(self.H21, R)

    # Hom(X_1, A_1) -> Hom(X_2, A_1), phi -> phi b
    def b_star(self, phi):
        P = hom_to_matrix(self.t1.hom, phi)
        b = self.b
        R = [[sum(P[i][k] * b[k][j] for k in range(len(b))) for j in range(self.t2.X.rank)]
             for i in range(len(P))]
        return matrix_to_hom(self.H21, R)

    def a_push(self, table):
        return clean(apply_map(table, self.a_star))

    def b_pull(self, table):
        return clean(apply_map(table, self.b_star))

    def rho(self, M):
        """rho: H^1_alg(E_2, M (x) A_2) -> H^1_alg(E_1, M (x) A_1), with source and target groups.

        Built as a composite through the auxiliary extension F with cocycle
        a_*(alpha_2), the extension E' with cocycle b^*(alpha_1), and a
        final change of Y along id (x) b.
        """
        t1, t2 = self.t1, self.t2
        G = t1.group
        ctx2 = h1_alg_context(t2, M)
        H2 = H1YGroup(ctx2)
        ctx1 = h1_alg_context(t1, M)
        H1 = H1YGroup(ctx1)
        # F: kernel Hom(X_2, A_1), Y = M (x) X_2, coefficients M (x) A_1
        ctxF = h1_alg_context(t1, M, alpha_table=self.a_push(t2.alpha.table), X=t2.X, hom=self.H21)
        HF = H1YGroup(ctxF)
        ident_G = list(range(G.order))
        f1 = _tensor_id(M, self.a, t2.A.rank, t1.A.rank)
        step1 = phi_map(H2, HF, ident_G, lambda v: _mv(f1, v), lambda y: list(y), self.a_star)
        # E': kernel Hom(X_2, A_1) with cocycle b^*(alpha_1) = a_*(alpha_2) + dc
        ctxE = h1_alg_context(t1, M, alpha_table=self.b_pull(t1.alpha.table), X=t2.X, hom=self.H21)
        HE = H1YGroup(ctxE)
        m2 = ExtensionMorphism(ctxE.ext, ctxF.ext, lambda v: list(v), self.c)
        step2 = pullback_map(HF, HE, m2)
        # E_1 -> E' via b^*, then Y changes along id (x) b
        ctxB = H1YContext(ctx1.ext, ctxE.M, ctxE.Y, _xi_pullback(ctxE, self, ctx1.hom), hom=ctx1.hom)
        HB = H1YGroup(ctxB)
        m3 = ExtensionMorphism(ctx1.ext, ctxE.ext, self.b_star, {})
        step3 = pullback_map(HE, HB, m3)
        g4 = _tensor_id(M, self.b, t2.X.rank, t1.X.rank)
        step4 = psi_map(HB, H1, lambda v: list(v), lambda y: _mv(g4, y))
        rho = step4.compose(step3).compose(step2).compose(step1)
        return rho, H2, H1

    def c_square(self, M):
        """(rho o c_2, c_1 o (id (x) b)) as maps (M (x) X_2)_G -> H^1_alg(E_1, M (x) A_1)."""
        rho, H2, H1 = self.rho(M)
        c2, c1 = H2.c_map(), H1.c_map()
        g = _tensor_id(M, self.b, self.t2.X.rank, self.t1.X.rank)
        idb = AbMap.from_function(c2.src, c1.src, lambda y: _mv(g, y))
        return rho.compose(c2), c1.compose(idb)


def _mv(A, v):
    return [sum(a * x for a, x in zip(row, v)) for row in A]


def _xi_pullback(ctxE, mor, HH1):
    """xi for Y = M (x) X_2 over E_1: xi(y)(phi) = xi_E'(y)(b^* phi), as a matrix into HH1."""
    HXA = mor.t1.hom
    T = ctxE.M
    cols = []
    k1 = HXA.rank
    for i in range(ctxE.Y.rank):
        y = [1 if j == i else 0 for j in range(ctxE.Y.rank)]
        F = [[0] * k1 for _ in range(T.rank)]
        for k in range(k1):
            phi = [1 if j == k else 0 for j in range(k1)]
            col = ctxE.xi_eval(y, mor.b_star(phi))
            for r in range(T.rank):
                F[r][k] = col[r]
        cols.append(matrix_to_hom(HH1, F))
    return [list(r) for r in zip(*cols)] if cols else [[] for _ in range(HH1.rank)]


def triple_morphism(t2, t1, b, a, c=None):
    return TripleMorphism(t2, t1, b, a, c)
