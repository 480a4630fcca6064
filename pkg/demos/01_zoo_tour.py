"""Tour of the demand laws: mean, a few survival values and the mean residual demand.

The mean residual demand m(x) = E[alpha - x | alpha > x] drives everything
later on.  Light tails make it fall, heavy tails make it grow.
"""
import math

from cournot_demand import mrd
from cournot_demand.zoo import standard_zoo


def main():
    zoo = standard_zoo()
    print(f"{'law':<18}{'mean':>9}{'H':>8}   m(q10)    m(q50)    m(q90)")
    for name, d in zoo.items():
        qs = [float(d.quantile(q)) for q in (0.1, 0.5, 0.9)]
        ms = "".join(f"{mrd(d, x):>10.4f}" for x in qs)
        top = "inf" if math.isinf(d.support_hi) else f"{d.support_hi:.3g}"
        print(f"{name:<18}{d.mean:>9.4f}{top:>8}{ms}")

    print("\nPareto(1, 4) has m(x) = x/3 on its tail, so the residual grows without bound:")
    d = zoo["pareto4"]
    for x in (1.0, 10.0, 100.0):
        print(f"  m({x:g}) = {mrd(d, x):.4f}")


if __name__ == "__main__":
    main()
