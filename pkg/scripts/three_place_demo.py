"""The three-place C2 model with trivial torus Z: B_3, its localizations and the
image criterion for the total localization map, checked against a box search."""
from itertools import product

from galcoh.bft import TorusData, bft_compute, localize, total_localization
from galcoh.global_model import coinvariant_exactness, three_place_model
from galcoh.gmod import trivial_module


def main():
    m = three_place_model()
    t = TorusData(m, trivial_module(m.group))
    B3 = bft_compute(t, 3).group
    print("B_3 =", B3.normal_form())
    gen = B3.lift([1])
    for v in m.S_points:
        L = localize(t, v)
        print("localization at place %d: %s" % (v, L.dst.lift(L(B3.coords(gen)))))
    print("coinvariant sequence:", coinvariant_exactness(m))
    T = total_localization(t)
    agree = 0
    for x, y in product(range(-2, 3), repeat=2):
        tup = [[x], [y]]
        agree += T.image_criterion(tup) == T.in_image_bruteforce(tup, radius=3)
    print("image criterion agrees with box search on %d/25 tuples" % agree)


if __name__ == "__main__":
    main()
