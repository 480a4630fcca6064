"""Symmetric equilibria and the uniqueness conditions that cover them.

The equilibrium total output X solves L(X) = m(X) - c/S(X) - X/n = 0.  The
certificate records which sufficient conditions hold and whether the root
count agrees with them.
"""
from cournot_demand import MarketConfig, classify, find_equilibria, uniqueness_certificate
from cournot_demand.zoo import standard_zoo


def show(label, d, n, c=0.0):
    m = MarketConfig(n, c, d)
    eqs = find_equilibria(m)
    cert = uniqueness_certificate(m, classify(d), eqs)
    roots = ", ".join(f"{r.per_firm:.6f}" for r in eqs.roots) or "none"
    conds = [k for k, v in (("density bound", cert.thm1_applies), ("dmrd/igfr", cert.thm2_applies),
                            ("dgmrd+moment", cert.cor1_applies)) if v]
    print(f"{label:<34} per-firm x*: {roots:<28} conditions: {', '.join(conds) or 'none'}"
          f"{'' if cert.consistent else '   <- certificate and root count disagree'}")


def main():
    zoo = standard_zoo()
    print("Uniform[0,1] with zero cost: x* = 1/(n+2)")
    for n in (1, 2, 3, 10):
        show(f"  uniform, n={n}", zoo["uniform01"], n)

    print("\nCost pushes output down")
    for c in (0.0, 0.1, 0.3):
        show(f"  exponential(1), n=2, c={c}", zoo["exponential1"], 2, c)

    print("\nHeavy tails: the third moment decides existence for duopoly")
    show("  Pareto(1, 4), n=2", zoo["pareto4"], 2)
    show("  Pareto(1, 2.5), n=2", zoo["pareto25"], 2)

    print("\nNo condition holds and uniqueness really fails")
    show("  0.8 U[0,1] + 0.2 U[2,2.2], n=1", zoo["uniform_gap_wide"], 1)


if __name__ == "__main__":
    main()
