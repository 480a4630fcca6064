"""Rescaling the intercept rescales the equilibrium and leaves every class unchanged.

With zero cost the market k*alpha has equilibrium k*X, and the hazard,
generalized failure rate and residual functions only stretch.
"""
from cournot_demand import MarketConfig, classify, find_equilibria, scale
from cournot_demand.zoo import standard_zoo


def main():
    zoo = standard_zoo()
    for name in ("uniform01", "gamma2", "pareto4", "uniform_gap_dmrd"):
        d = zoo[name]
        base = find_equilibria(MarketConfig(2, 0.0, d)).roots[0].total_output
        flags = classify(d).flags()
        print(f"{name}: X* = {base:.8f}")
        for k in (0.5, 2.0, 10.0):
            s = scale(d, k)
            X = find_equilibria(MarketConfig(2, 0.0, s)).roots[0].total_output
            same = classify(s).flags() == flags
            print(f"  k={k:<5g} X*/k = {X / k:.8f}   flags unchanged: {same}   law: {type(s).__name__}")


if __name__ == "__main__":
    main()
