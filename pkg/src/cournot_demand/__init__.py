"""Symmetric Cournot equilibrium under a random linear demand intercept.

The package computes hazard, generalized failure rate and mean residual
demand of the intercept law, classifies the law into the IFR / IGFR / DMRD /
DGMRD / bathtub classes, enumerates symmetric equilibria and reports which
sufficient uniqueness conditions hold.
"""
from .distributions import (Beta, Distribution, Exponential, Gamma, LogNormal, Mixture, Pareto,
                            Scaled, SurvivalOnly, TruncatedNormal, Uniform, Weibull, from_spec,
                            mixture, scale)
from .equilibrium import (EquilibriumSet, MarketConfig, UniquenessCertificate, L, L_prime,
                          expected_price, find_equilibria, foc_residual, log_concavity_check,
                          uniqueness_certificate)
from .errors import *  # noqa: F401,F403
from .reliability import (ClassificationReport, GridConfig, classify, gfr, gmrd, hazard, mrd,
                          shape_table)
from .verify import (best_response, best_response_dynamics, identity_battery,
                     mc_expected_price)

__version__ = "0.1.0"
