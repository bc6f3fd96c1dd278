"""JSON scenarios: named objects plus a task list, evaluated into a report.

Top-level keys: groups, gsets, modules, extensions, models, towers, tasks.
Every task is {"id": str, "op": str, "args": {...}}.  Definitions are built
eagerly, so a broken definition is a validation error (exit 2) while a
failing task is recorded in the report (exit 1).
"""
from __future__ import annotations

import json
import time
from dataclasses import dataclass, field

from . import __version__
from . import groups as grp
from .intlat import smith_normal_form
from .gmod import (GModule, direct_sum, hom_module, identity_map, permutation_module, regular_module,
                   sign_module, tensor_module, trivial_module)
from .cochains import ExtensionData, TwoCocycle
from .tate import tate_cohomology

SECTIONS = ("groups", "gsets", "modules", "extensions", "models", "towers")


class ParseError(ValueError):
    pass


class UnresolvedReference(KeyError):
    def __str__(self):
        return "unresolved reference: %s" % self.args[0]


class UnknownOp(ValueError):
    pass


@dataclass
class Scenario:
    groups: dict = field(default_factory=dict)
    gsets: dict = field(default_factory=dict)
    modules: dict = field(default_factory=dict)
    extensions: dict = field(default_factory=dict)
    models: dict = field(default_factory=dict)
    towers: dict = field(default_factory=dict)
    tasks: list = field(default_factory=list)

    @classmethod
    def from_dict(cls, data):
        if not isinstance(data, dict):
            raise ParseError("scenario must be a JSON object")
        extra = set(data) - set(SECTIONS) - {"tasks"}
        if extra:
            raise ParseError("unknown top-level keys: %s" % ", ".join(sorted(extra)))
        kw = {}
        for s in SECTIONS:
            v = data.get(s, {})
            if not isinstance(v, dict):
                raise ParseError("%s must be an object" % s)
            kw[s] = {str(k): v[k] for k in sorted(v)}
        tasks = data.get("tasks", [])
        if not isinstance(tasks, list):
            raise ParseError("tasks must be a list")
        seen = set()
        out = []
        for i, t in enumerate(tasks):
            if not isinstance(t, dict) or "op" not in t:
                raise ParseError("task %d needs an op" % i)
            tid = str(t.get("id", "task%d" % i))
            if tid in seen:
                raise ParseError("duplicate task id %s" % tid)
            seen.add(tid)
            args = t.get("args", {})
            if not isinstance(args, dict):
                raise ParseError("task %s: args must be an object" % tid)
            out.append({"id": tid, "op": str(t["op"]), "args": args})
        return cls(tasks=out, **kw)

    @classmethod
    def from_json(cls, text):
        try:
            data = json.loads(text)
        except json.JSONDecodeError as e:
            raise ParseError(str(e))
        return cls.from_dict(data)

    def to_dict(self):
        out = {s: getattr(self, s) for s in SECTIONS}
        out["tasks"] = self.tasks
        return out

    def to_json(self):
        return json.dumps(self.to_dict(), sort_keys=True, indent=2)


# ---------------------------------------------------------------- building objects

def _subgroup(G, members):
    members = frozenset(members)
    if G.closure(list(members)) != members:
        raise ParseError("%r is not a subgroup" % sorted(members))
    return G._sub(members)


class Env:
    """Resolved objects of a scenario."""

    def __init__(self, sc):
        self.sc = sc
        self.objs = {s: {} for s in SECTIONS}
        for s in SECTIONS:
            for name in getattr(sc, s):
                self.get(s, name)

    def get(self, section, name):
        table = self.objs[section]
        if name in table:
            if table[name] is None:
                raise ParseError("circular definition of %s/%s" % (section, name))
            return table[name]
        # "<tower>.lower" names the lower group of a tower
        if section == "groups" and isinstance(name, str) and name.endswith(".lower"):
            return self.get("towers", name[:-6]).lower.group
        spec = getattr(self.sc, section).get(name)
        if spec is None:
            raise UnresolvedReference("%s/%s" % (section, name))
        table[name] = None
        obj = getattr(self, "_build_" + section)(spec)
        table[name] = obj
        return obj

    def _build_groups(self, d):
        kind = d.get("kind", "permutations")
        named = {"cyclic": lambda: grp.cyclic(int(d["n"])),
                 "dihedral": lambda: grp.dihedral(int(d["n"])),
                 "symmetric": lambda: grp.symmetric(int(d["n"])),
                 "klein_four": grp.klein_four,
                 "quaternion": grp.quaternion,
                 "elementary_abelian_2": lambda: grp.elementary_abelian_2(int(d["k"])),
                 "trivial": grp.trivial}
        if kind in named:
            return named[kind]()
        if kind == "permutations":
            return grp.FinGroup(int(d["degree"]), [tuple(p) for p in d["generators"]])
        raise ParseError("unknown group kind %r" % kind)

    def _build_gsets(self, d):
        G = self.get("groups", d["group"])
        if "cosets" in d:
            return grp.disjoint_union(*[grp.coset_gset(_subgroup(G, m)) for m in d["cosets"]])
        return grp.GSet(G, int(d["size"]), generator_action=d["generator_action"])

    def _build_modules(self, d):
        kind = d.get("kind", "matrices")
        if kind == "trivial":
            G = self.get("groups", d["group"])
            return trivial_module(G, int(d.get("rank", 1)), d.get("relations", []))
        if kind == "permutation":
            return permutation_module(self.get("gsets", d["gset"]), bool(d.get("reduced", False)))
        if kind == "sign":
            G = self.get("groups", d["group"])
            H = _subgroup(G, d["kernel"]) if "kernel" in d else None
            return sign_module(G, H)
        if kind == "regular":
            return regular_module(self.get("groups", d["group"]))
        if kind == "sum":
            return direct_sum(*[self.get("modules", m) for m in d["of"]])
        if kind == "tensor":
            a, b = d["of"]
            return tensor_module(self.get("modules", a), self.get("modules", b))
        if kind == "hom":
            a, b = d["of"]
            return hom_module(self.get("modules", a), self.get("modules", b))
        if kind == "matrices":
            G = self.get("groups", d["group"])
            return GModule(G, int(d["rank"]), d.get("relations", []), generator_action=d["generator_action"])
        raise ParseError("unknown module kind %r" % kind)

    def _build_extensions(self, d):
        if d.get("kind") == "carry":
            from .tn import cyclic_model_triple
            G = self.get("groups", d["group"])
            return cyclic_model_triple(G.order, G).extension()
        A = self.get("modules", d["module"])
        tab = {tuple(int(x) for x in k.split(",")): v for k, v in d.get("cocycle", {}).items()}
        return ExtensionData(TwoCocycle(A, tab))

    def _build_models(self, d):
        from .global_model import GlobalModel, three_place_model
        if d.get("kind") == "three_place":
            return three_place_model(self.get("groups", d["group"]) if "group" in d else None)
        X = self.get("gsets", d["gset"])
        return GlobalModel(X.group, X, d.get("S"), name=d.get("name", "model"))

    def _build_towers(self, d):
        from .global_model import TowerModel
        m = self.get("models", d["model"])
        return TowerModel(m, _subgroup(m.group, d["normal"]))


# ---------------------------------------------------------------- operations

def _group_json(A):
    return A.normal_form()


def op_snf(env, a):
    M = a["matrix"]
    s = smith_normal_form(M)
    return {"diagonal": s.diagonal(), "U": s.U, "V": s.V, "D": s.D}


def op_tate(env, a):
    M = env.get("modules", a["module"])
    degs = a.get("degrees", [a["degree"]] if "degree" in a else list(range(-3, 4)))
    return {str(r): tate_cohomology(M, int(r)).normal_form() for r in degs}


def op_invariants(env, a):
    M = env.get("modules", a["module"])
    return {"invariants": M.invariants().normal_form(), "coinvariants": M.coinvariants().normal_form()}


def _h1_context(env, a):
    from .h1y import H1YContext
    E = env.get("extensions", a["extension"])
    M = env.get("modules", a["module"])
    H = hom_module(E.A, M)
    return H1YContext(E, M, H, identity_map(H).matrix, hom=H)


def op_h1y(env, a):
    from .h1y import H1YGroup, inflation_restriction_exactness
    H1 = H1YGroup(_h1_context(env, a))
    c = H1.c_map()
    return {"group": H1.normal_form(), "c": c.to_json(), "rc": H1.r_map().compose(c).matrix,
            "exactness": inflation_restriction_exactness(H1)}


def op_absbt(env, a):
    from .h1y import absBT_criterion
    v = absBT_criterion(_h1_context(env, a))
    v["consistent"] = v["c_iso"] == (v["cup_minus1_bijective"] and v["cup_0_injective"])
    return v


def op_tn_cyclic(env, a):
    from .tn import cyclic_model_triple, scaled_triple, verify_weak_tn
    t = cyclic_model_triple(int(a["n"]))
    if "scale" in a:
        t = scaled_triple(t, int(a["scale"]))
    v = verify_weak_tn(t, tuple(a.get("window", (-3, 1))))
    return v.to_json()


def op_x_sequence(env, a):
    from .global_model import x_sequence
    s = x_sequence(env.get("models", a["model"]))
    return {"ranks": [s.X3.rank, s.X2.rank, s.X1.rank], "exact": s.is_exact()}


def op_adequacy(env, a):
    from .global_model import (UNMODELED, adequacy_check, coinvariant_exactness,
                               stabilizers_generate_abelianization)
    m = env.get("models", a["model"])
    out = adequacy_check(m)
    out["coinvariant_exactness"] = coinvariant_exactness(m)
    out["stabilizers_generate_abelianization"] = stabilizers_generate_abelianization(m)
    out["unmodeled"] = list(UNMODELED)
    return out


def _torus(env, a):
    from .bft import TorusData
    return TorusData(env.get("models", a["model"]), env.get("modules", a["module"]))


def op_bft(env, a):
    from .bft import bft_compute
    B = bft_compute(_torus(env, a), int(a.get("index", 3)))
    return {"index": B.index, **B.normal_form(), "level": "K"}


def op_newton(env, a):
    from .bft import newton_kernel_check, newton_norm
    t = _torus(env, a)
    i = int(a.get("index", 3))
    N = newton_norm(t, i)
    return {"matrix": N.matrix, **newton_kernel_check(t, i), "level": "K"}


def op_localize(env, a):
    from .bft import localize
    t = _torus(env, a)
    L = localize(t, int(a["place"]))
    out = {"matrix": L.matrix, "target": L.dst.normal_form()}
    if "element" in a:
        out["image"] = L.apply_element(a["element"])
    return out


def op_total_localization(env, a):
    from .bft import total_localization
    T = total_localization(_torus(env, a))
    out = T.to_json()
    if "tuples" in a:
        out["criterion"] = [T.image_criterion(tp) for tp in a["tuples"]]
    return out


def op_tower_maps(env, a):
    from .global_model import tower_maps
    T = env.get("towers", a["tower"])
    m = tower_maps(T)
    return {"degree": T.degree, "j": {str(i): m.j[i] for i in m.j}, "p": {str(i): m.p[i] for i in m.p},
            "checks": {str(i): m.checks[i] for i in m.checks}}


def op_inflate(env, a):
    from .bft import inflate
    T = env.get("towers", a["tower"])
    M = env.get("modules", a["module"])
    r = inflate(T, M, int(a.get("index", 3)))
    return {"bijective": r["bijective"], "inverse_ok": r["inverse_ok"], "norm_square": r["norm_square"],
            "matrix": r["map"].matrix}


def op_reductive_a(env, a):
    from .bft import LambdaData, reductive_a
    m = env.get("models", a["model"])
    lam = env.get("modules", a["Lambda"])
    if "Lambda_C" in a:
        lc = env.get("modules", a["Lambda_C"])
        iota = a["iota"]
    else:
        lc = GModule(m.group, 0, action=[[] for _ in range(m.group.order)], check=False)
        iota = [[] for _ in range(lam.rank)]
    r = reductive_a(m, LambdaData(lam, lc, iota))
    return {"A": r["A"].normal_form(), "A0": r["A0"].normal_form(), "N": r["N"].matrix,
            "iota_injective": r["iota_injective"],
            "local": {str(v): g.normal_form() for v, g in r["local"].items()}, "level": "K"}


OPS = {
    "snf": op_snf, "tate": op_tate, "invariants": op_invariants, "h1y": op_h1y, "absbt": op_absbt,
    "tn_cyclic": op_tn_cyclic, "x_sequence": op_x_sequence, "adequacy": op_adequacy, "bft": op_bft,
    "newton": op_newton, "localize": op_localize, "total_localization": op_total_localization,
    "tower_maps": op_tower_maps, "inflate": op_inflate, "reductive_a": op_reductive_a,
}


def run_scenario(sc, seed=0):
    """Evaluate every task; returns (report, number of failed tasks)."""
    env = Env(sc)
    results, errors, timing = {}, {}, {}
    for t in sc.tasks:
        t0 = time.perf_counter()
        try:
            fn = OPS.get(t["op"])
            if fn is None:
                raise UnknownOp("unknown op %r" % t["op"])
            results[t["id"]] = fn(env, t["args"])
        except Exception as e:  # recorded per task
            errors[t["id"]] = {"type": type(e).__name__, "message": str(e)}
        timing[t["id"]] = round(time.perf_counter() - t0, 6)
    report = {"engine": {"name": "galcoh", "version": __version__}, "seed": seed,
              "results": results, "errors": errors, "timing": timing}
    return report, len(errors)
