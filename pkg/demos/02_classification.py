"""Which shape classes does each law belong to?

Every verdict comes from a grid scan.  A failed verdict carries a witness
pair x1 < x2 whose values break the claimed direction, so it can be checked
by hand.
"""
from cournot_demand import classify
from cournot_demand.zoo import standard_zoo

FLAGS = ("ifr", "igfr", "dmrd", "dgmrd", "bathtub")


def mark(v):
    return {True: "yes", False: "no", None: "n/a"}[v]


def main():
    zoo = standard_zoo()
    print(f"{'law':<18}" + "".join(f"{f:>9}" for f in FLAGS))
    reports = {}
    for name, d in zoo.items():
        rep = reports[name] = classify(d)
        print(f"{name:<18}" + "".join(f"{mark(rep.flags()[f]):>9}" for f in FLAGS))

    w = reports["pareto4"].dmrd.witness
    print(f"\nPareto(1, 4) is IGFR yet not DMRD: m({w.x1:.4g}) = {w.f_x1:.4g} < m({w.x2:.4g}) = {w.f_x2:.4g}")

    # the two gap mixtures are never IGFR: g drops to zero inside the gap
    for name in ("uniform_gap_dmrd", "uniform_gap_wide"):
        rep = reports[name]
        print(f"{name}: dmrd={mark(rep.dmrd.holds)}, igfr={mark(rep.igfr.holds)} ({rep.igfr.note})")
    print("\nThe wider gap keeps enough mass far out that m rises just before it, so DMRD fails too.")


if __name__ == "__main__":
    main()
