"""A fixed collection of demand laws covering every class combination of interest."""
from __future__ import annotations

from .distributions import (Beta, Distribution, Exponential, Gamma, LogNormal, Pareto,
                            TruncatedNormal, Uniform, Weibull, mixture, scale)


def standard_zoo() -> dict[str, Distribution]:
    """Named laws used by the property suites and demos.

    Includes IFR members, decreasing-hazard laws that are IGFR but not DMRD,
    heavy Pareto tails, and two gap-supported uniform mixtures (one DMRD,
    one not).
    """
    return {
        "uniform01": Uniform(0.0, 1.0),
        "uniform_half_2": Uniform(0.5, 2.0),
        "exponential1": Exponential(1.0),
        "exponential_half": Exponential(0.5),
        "gamma2": Gamma(2.0, 1.0),
        "gamma_half": Gamma(0.5, 1.0),
        "weibull2": Weibull(2.0, 1.0),
        "weibull07": Weibull(0.7, 1.0),
        "beta23": Beta(2.0, 3.0),
        "beta_half_half": Beta(0.5, 0.5),
        "beta23_x3": scale(Beta(2.0, 3.0), 3.0),
        "pareto4": Pareto(1.0, 4.0),
        "pareto25": Pareto(1.0, 2.5),
        "lognormal05": LogNormal(0.0, 0.5),
        "lognormal1": LogNormal(0.0, 1.0),
        "truncnormal": TruncatedNormal(1.0, 1.0, 0.0),
        "uniform_gap_dmrd": mixture([(Uniform(0.0, 1.0), 0.5), (Uniform(1.2, 2.2), 0.5)]),
        "uniform_gap_wide": mixture([(Uniform(0.0, 1.0), 0.8), (Uniform(2.0, 2.2), 0.2)]),
    }
