"""Finite permutation groups, subgroups, cosets and finite G-sets.

Elements are numbered by breadth-first search over the generators, so the
identity is always index 0 and labels are reproducible.
"""
from __future__ import annotations

from collections import deque


class GroupTooLarge(ValueError):
    pass


class NotNormal(ValueError):
    pass


DEFAULT_MAX_ORDER = 64


class FinGroup:
    """A finite group generated by permutations of {0..degree-1}."""

    def __init__(self, degree, generators=(), max_order=DEFAULT_MAX_ORDER, name=None):
        self.degree = degree
        self.name = name
        gens = [tuple(g) for g in generators]
        for g in gens:
            if sorted(g) != list(range(degree)):
                raise ValueError("generator %r is not a permutation of degree %d" % (g, degree))
        self.generator_perms = gens
        ident = tuple(range(degree))
        elements = [ident]
        index = {ident: 0}
        word = [None]
        queue = deque([0])
        while queue:
            e = queue.popleft()
            pe = elements[e]
            for k, g in enumerate(gens):
                new = tuple(g[x] for x in pe)
                if new not in index:
                    if len(elements) >= max_order:
                        raise GroupTooLarge("group order exceeds %d" % max_order)
                    index[new] = len(elements)
                    elements.append(new)
                    word.append((k, e))
                    queue.append(index[new])
        self.elements = elements
        self.index = index
        self.word = word
        self.order = len(elements)
        self.mul = [[index[tuple(a[x] for x in b)] for b in elements] for a in elements]
        self.inv = [row.index(0) for row in self.mul]
        self.gens = [index[g] for g in gens]
        self._cache = {}

    def __repr__(self):
        return "FinGroup(%s, order=%d)" % (self.name or "?", self.order)

    def m(self, a, b):
        return self.mul[a][b]

    def prod(self, *xs):
        r = 0
        for x in xs:
            r = self.mul[r][x]
        return r

    def conj(self, x, k):
        """x k x^-1."""
        return self.mul[self.mul[x][k]][self.inv[x]]

    def element_order(self, g):
        k, x = 1, g
        while x != 0:
            x = self.mul[x][g]
            k += 1
        return k

    def is_abelian(self):
        return all(self.mul[a][b] == self.mul[b][a] for a in self.gens for b in self.gens)

    def elements_as_words(self):
        return self.word

    # -- subgroups
    def closure(self, gens):
        members = {0}
        frontier = [0]
        gens = list(gens)
        while frontier:
            new = []
            for x in frontier:
                for g in gens:
                    y = self.mul[g][x]
                    if y not in members:
                        members.add(y)
                        new.append(y)
            frontier = new
        return frozenset(members)

    def subgroup(self, gens=None, members=None):
        if members is None:
            members = self.closure(gens or [])
        return self._sub(frozenset(members))

    def _sub(self, members):
        key = ("sub", members)
        if key not in self._cache:
            self._cache[key] = Subgroup(self, members)
        return self._cache[key]

    def whole(self):
        return self._sub(frozenset(range(self.order)))

    def trivial_subgroup(self):
        return self._sub(frozenset([0]))

    def cyclic_subgroups(self):
        if "cyclic" not in self._cache:
            seen = {}
            for g in range(self.order):
                s = self.closure([g])
                seen.setdefault(s, g)
            self._cache["cyclic"] = sorted(seen, key=lambda s: (len(s), sorted(s)))
        return [self._sub(s) for s in self._cache["cyclic"]]

    def all_subgroups(self):
        """Every subgroup, ordered by (order, sorted members)."""
        if "all" not in self._cache:
            cyc = [s.members for s in self.cyclic_subgroups()]
            found = set(cyc)
            layer = list(found)
            while layer:
                new = []
                for a in layer:
                    for c in cyc:
                        if c <= a:
                            continue
                        j = self.closure(list(a) + list(c))
                        if j not in found:
                            found.add(j)
                            new.append(j)
                layer = new
            self._cache["all"] = sorted(found, key=lambda s: (len(s), sorted(s)))
        return [self._sub(s) for s in self._cache["all"]]

    def commutator_subgroup(self):
        comms = {self.prod(a, b, self.inv[a], self.inv[b]) for a in range(self.order) for b in range(self.order)}
        return self.subgroup(gens=sorted(comms))

    def normal_closure(self, gens):
        gens = set(gens)
        gens |= {self.conj(x, g) for x in range(self.order) for g in list(gens)}
        return self.subgroup(gens=sorted(gens))

    def to_json(self):
        return {"degree": self.degree, "generators": [list(g) for g in self.generator_perms]}


def group_from_permutations(degree, generators, max_order=DEFAULT_MAX_ORDER, name=None):
    return FinGroup(degree, generators, max_order=max_order, name=name)


class Subgroup:
    """A subgroup H of a FinGroup, with coset data and its own FinGroup model."""

    def __init__(self, parent, members):
        self.parent = parent
        self.members = frozenset(members)
        self.sorted_members = sorted(self.members)
        if 0 not in self.members:
            raise ValueError("subgroup must contain the identity")
        for a in self.members:
            for b in self.members:
                if parent.mul[a][b] not in self.members:
                    raise ValueError("members are not closed under multiplication")
        self.order = len(self.members)
        self.index = parent.order // self.order
        self._group = None
        self._right = None
        self._left = None

    def __contains__(self, g):
        return g in self.members

    def __eq__(self, other):
        return isinstance(other, Subgroup) and other.parent is self.parent and other.members == self.members

    def __hash__(self):
        return hash(self.members)

    def __repr__(self):
        return "Subgroup(order=%d of %d)" % (self.order, self.parent.order)

    def is_normal(self):
        G = self.parent
        return all(G.conj(x, k) in self.members for x in G.gens for k in self.members)

    def conjugate(self, x):
        G = self.parent
        return G._sub(frozenset(G.conj(x, k) for k in self.members))

    def is_cyclic(self):
        return any(self.parent.element_order(g) == self.order for g in self.members)

    # -- cosets
    def _build_right(self):
        G = self.parent
        reps, which = [], [None] * G.order
        for g in range(G.order):
            if which[g] is None:
                i = len(reps)
                reps.append(g)
                for k in self.members:
                    which[G.mul[k][g]] = i
        self._right = (reps, which)

    def _build_left(self):
        G = self.parent
        reps, which = [], [None] * G.order
        for g in range(G.order):
            if which[g] is None:
                i = len(reps)
                reps.append(g)
                for k in self.members:
                    which[G.mul[g][k]] = i
        self._left = (reps, which)

    def coset_representatives(self, side="right"):
        """Representatives of H\\G (right) or G/H (left); the first is the identity."""
        if side == "right":
            if self._right is None:
                self._build_right()
            return list(self._right[0])
        if side == "left":
            if self._left is None:
                self._build_left()
            return list(self._left[0])
        raise ValueError("side must be 'left' or 'right'")

    def right_coset_index(self, g):
        if self._right is None:
            self._build_right()
        return self._right[1][g]

    def left_coset_index(self, g):
        if self._left is None:
            self._build_left()
        return self._left[1][g]

    def retraction(self, g):
        """p(g) = g * rep(Hg)^-1, so that p(kg) = k p(g) for k in H."""
        if self._right is None:
            self._build_right()
        reps, which = self._right
        G = self.parent
        return G.mul[g][G.inv[reps[which[g]]]]

    # -- standalone model
    def group(self):
        """The subgroup as a FinGroup; ``embedding()`` maps its indices to the parent."""
        if self._group is None:
            G = self.parent
            gens, cur = [], frozenset([0])
            for g in self.sorted_members:
                if g not in cur:
                    gens.append(g)
                    cur = G.closure(gens)
            H = FinGroup(G.degree, [G.elements[g] for g in gens], max_order=max(G.order, 1))
            self._group = H
            self._embed = [G.index[p] for p in H.elements]
        return self._group

    def embedding(self):
        self.group()
        return list(self._embed)

    def to_json(self):
        return {"members": self.sorted_members, "normal": self.is_normal()}


class GSet:
    """A finite G-set given by a table act[g][x]."""

    def __init__(self, group, size, generator_action=None, table=None):
        self.group = group
        self.size = size
        if table is None:
            generator_action = [tuple(a) for a in (generator_action or [])]
            if len(generator_action) != len(group.gens):
                raise ValueError("need one permutation per group generator")
            for a in generator_action:
                if sorted(a) != list(range(size)):
                    raise ValueError("generator action is not a permutation")
            table = [None] * group.order
            table[0] = tuple(range(size))
            for i in range(1, group.order):
                k, p = group.word[i]
                table[i] = tuple(generator_action[k][y] for y in table[p])
        self.act = [tuple(r) for r in table]
        if len(self.act) != group.order:
            raise ValueError("action table has wrong length")
        self._check()

    def _check(self):
        G = self.group
        for a in G.gens:
            for b in range(G.order):
                ab = G.mul[a][b]
                ra, rb, rab = self.act[a], self.act[b], self.act[ab]
                for x in range(self.size):
                    if rab[x] != ra[rb[x]]:
                        raise ValueError("generator action does not define a group action")

    def generator_action(self):
        return [list(self.act[g]) for g in self.group.gens]

    def orbits(self):
        seen = [False] * self.size
        out = []
        for x in range(self.size):
            if not seen[x]:
                orb = sorted({self.act[g][x] for g in range(self.group.order)})
                for y in orb:
                    seen[y] = True
                out.append(orb)
        return out

    def stabilizer(self, x):
        return self.group._sub(frozenset(g for g in range(self.group.order) if self.act[g][x] == x))

    def orbit_of(self, x):
        for orb in self.orbits():
            if x in orb:
                return orb

    def restrict_points(self, points):
        """The sub-G-set on a union of orbits, renumbered in the given order."""
        pos = {p: i for i, p in enumerate(points)}
        table = [tuple(pos[r[p]] for p in points) for r in self.act]
        return GSet(self.group, len(points), table=table)

    def to_json(self):
        return {"size": self.size, "generator_action": self.generator_action()}


def orbits_and_stabilizers(X):
    return [(orb, X.stabilizer(orb[0])) for orb in X.orbits()]


def coset_representatives(H, side="right"):
    return H.coset_representatives(side)


def coset_gset(H):
    """G acting by left multiplication on G/H."""
    G = H.parent
    reps = H.coset_representatives("left")
    table = [tuple(H.left_coset_index(G.mul[g][r]) for r in reps) for g in range(G.order)]
    return GSet(G, len(reps), table=table)


def disjoint_union(*sets):
    G = sets[0].group
    table = []
    for g in range(G.order):
        row, off = [], 0
        for X in sets:
            row.extend(off + y for y in X.act[g])
            off += X.size
        table.append(tuple(row))
    return GSet(G, sum(X.size for X in sets), table=table)


def regular_gset(G):
    return GSet(G, G.order, table=[tuple(G.mul[g]) for g in range(G.order)])


def quotient_group(N):
    """G/N as a permutation group on cosets plus the projection table."""
    if not N.is_normal():
        raise NotNormal("subgroup is not normal")
    G = N.parent
    X = coset_gset(N)
    Q = FinGroup(X.size, [X.act[g] for g in G.gens], max_order=max(G.order, 1))
    proj = [Q.index[X.act[g]] for g in range(G.order)]
    return Q, proj


def inflate_gset(X, proj, G):
    """A Q-set viewed as a G-set through a surjection G -> Q."""
    return GSet(G, X.size, table=[X.act[proj[g]] for g in range(G.order)])


# ---------------------------------------------------------------- fixtures

def _cycle(n, shift=1):
    return tuple((i + shift) % n for i in range(n))


def cyclic(n):
    return FinGroup(n, [_cycle(n)] if n > 1 else [], name="C%d" % n)


def dihedral(n):
    """Symmetries of an n-gon, order 2n."""
    refl = tuple((-i) % n for i in range(n))
    return FinGroup(n, [_cycle(n), refl], name="D%d" % (2 * n))


def symmetric(n):
    if n < 2:
        return FinGroup(max(n, 1), [], name="S%d" % n)
    t = tuple([1, 0] + list(range(2, n)))
    return FinGroup(n, [t, _cycle(n)], name="S%d" % n)


def klein_four():
    return FinGroup(4, [(1, 0, 3, 2), (2, 3, 0, 1)], name="V4")


def elementary_abelian_2(k):
    n = 2 * k
    gens = []
    for i in range(k):
        p = list(range(n))
        p[2 * i], p[2 * i + 1] = p[2 * i + 1], p[2 * i]
        gens.append(tuple(p))
    return FinGroup(n, gens, name="C2^%d" % k)


def quaternion():
    # left regular representation of Q8 on {1,i,j,k,-1,-i,-j,-k}
    names = ["1", "i", "j", "k", "-1", "-i", "-j", "-k"]
    table = {
        ("i", "i"): "-1", ("i", "j"): "k", ("i", "k"): "-j",
        ("j", "i"): "-k", ("j", "j"): "-1", ("j", "k"): "i",
        ("k", "i"): "j", ("k", "j"): "-i", ("k", "k"): "-1",
    }

    def mult(a, b):
        sa, a0 = (a[0] == "-"), a.lstrip("-")
        sb, b0 = (b[0] == "-"), b.lstrip("-")
        if a0 == "1":
            r = b0
        elif b0 == "1":
            r = a0
        else:
            r = table[(a0, b0)]
        neg = sa ^ sb
        if r.startswith("-"):
            neg, r = not neg, r[1:]
        return ("-" + r) if neg else r

    def perm(g):
        return tuple(names.index(mult(g, x)) for x in names)

    return FinGroup(8, [perm("i"), perm("j")], name="Q8")


def trivial():
    return FinGroup(1, [], name="C1")


def fixture_groups(include_s4=False):
    out = [cyclic(2), cyclic(3), cyclic(4), cyclic(5), cyclic(6), klein_four(), symmetric(3),
           dihedral(4), quaternion(), elementary_abelian_2(3)]
    if include_s4:
        out.append(symmetric(4))
    return out


def random_gset(G, rng, max_orbits=3, subgroups=None):
    """Disjoint union of 1..max_orbits coset spaces G/H for random subgroups H."""
    subs = subgroups or G.all_subgroups()
    k = rng.randint(1, max_orbits)
    return disjoint_union(*[coset_gset(rng.choice(subs)) for _ in range(k)])
