"""Certify the cyclic model triple (G = C_n, X = Z, A = Z) for a few n and show the
cup-product isomorphisms it induces on random lattices."""
import argparse
import json
import random

from galcoh.gmod import random_lattice_module
from galcoh.tn import c_iso_check, cyclic_model_triple, verify_weak_tn


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--orders", type=int, nargs="+", default=[2, 3, 4, 6])
    ap.add_argument("--modules", type=int, default=5, help="random lattices tested per order")
    ap.add_argument("--seed", type=int, default=0)
    args = ap.parse_args()
    rng = random.Random(args.seed)
    for n in args.orders:
        t = cyclic_model_triple(n)
        verdict = verify_weak_tn(t)
        iso = [c_iso_check(t, random_lattice_module(t.group, rng, 3))[0] for _ in range(args.modules)]
        print(json.dumps({"n": n, "label": verdict.label(), "rigid": verdict.is_rigid,
                          "c_iso_on_random_lattices": "%d/%d" % (sum(iso), len(iso))}))


if __name__ == "__main__":
    main()
