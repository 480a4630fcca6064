"""Independent checks for the equilibrium machinery.

Monte Carlo estimates of the expected price, best responses found by direct
payoff maximisation, best-response dynamics, and a battery of
finite-difference checks of the derivative identities that the uniqueness
arguments rest on.
"""
from __future__ import annotations

import math
from dataclasses import asdict, dataclass
from typing import Optional, Sequence

import numpy as np

from .distributions import Distribution
from .equilibrium import L, L_prime, MarketConfig, bisect_sign_change, expected_price
from .errors import NotAvailable
from .reliability import GridConfig, scan_upper

GOLDEN = (math.sqrt(5.0) - 1.0) / 2.0


def mc_expected_price(d: Distribution, X: float, samples: int = 1_000_000,
                      seed: int = 0) -> tuple[float, float]:
    """Monte Carlo estimate and standard error of E(alpha - X)_+ ."""
    if samples < 1000:
        raise ValueError(f"need at least 1000 samples, got {samples}")
    if X >= d.support_hi:
        return 0.0, 0.0
    rng = np.random.default_rng(seed)
    draws = d.sample(rng, samples)
    vals = np.maximum(draws - X, 0.0)
    return float(vals.mean()), float(vals.std(ddof=1) / math.sqrt(samples))


# ---------------------------------------------------------------------------
# best responses


def _output_cap(m: MarketConfig, opponents_total: float) -> float:
    """Own output beyond which the unit margin P - c is non-positive (or the scan ends)."""
    d = m.demand
    top = d.support_hi if math.isfinite(d.support_hi) else scan_upper(d, GridConfig())
    if m.c > 0:
        p_top = float(expected_price(m, top))
        if p_top <= m.c:
            f = lambda X: float(expected_price(m, X)) - m.c  # noqa: E731
            lo, hi = bisect_sign_change(f, 0.0, top, f(0.0), 1e-14)
            top = hi
    return max(top - opponents_total, 0.0)


def _golden_max(f, a: float, b: float, tol: float = 1e-12, max_iter: int = 300) -> tuple[float, float]:
    c = b - GOLDEN * (b - a)
    d = a + GOLDEN * (b - a)
    fc, fd = f(c), f(d)
    for _ in range(max_iter):
        if b - a <= tol * max(1.0, abs(a) + abs(b)):
            break
        if fc >= fd:
            b, d, fd = d, c, fc
            c = b - GOLDEN * (b - a)
            fc = f(c)
        else:
            a, c, fc = c, d, fd
            d = a + GOLDEN * (b - a)
            fd = f(d)
    return a, b


def best_response(m: MarketConfig, opponents_total: float, scan_points: int = 256) -> float:
    """Own output maximising x (P(x + Y) - c) over x >= 0, with Y the rivals' total.

    A coarse scan picks the best cell, golden-section search narrows it, and
    the marginal-profit root ``P(x + Y) - c - x S(x + Y)`` is then polished by
    bisection when the narrowed bracket straddles it.
    """
    if opponents_total < 0:
        raise ValueError(f"opponents' output must be >= 0, got {opponents_total!r}")
    d = m.demand
    Y = float(opponents_total)
    cap = _output_cap(m, Y)
    if cap <= 0:
        return 0.0

    def payoff(x):
        return x * (float(expected_price(m, x + Y)) - m.c)

    def marginal(x):
        return float(expected_price(m, x + Y)) - m.c - x * float(d.survival(x + Y))

    xs = np.linspace(0.0, cap, scan_points)
    vals = xs * (np.asarray(expected_price(m, xs + Y)) - m.c)
    i = int(np.argmax(vals))
    if vals[i] <= 0:
        return 0.0
    a, b = xs[max(i - 1, 0)], xs[min(i + 1, len(xs) - 1)]
    a, b = _golden_max(payoff, a, b)
    lo, hi = xs[max(i - 1, 0)], xs[min(i + 1, len(xs) - 1)]
    f_lo, f_hi = marginal(lo), marginal(hi)
    if f_lo > 0 > f_hi:
        lo, hi = bisect_sign_change(marginal, lo, hi, f_lo, 0.0)
        x = 0.5 * (lo + hi)
        if payoff(x) >= payoff(0.5 * (a + b)):
            return x
    return 0.5 * (a + b)


@dataclass
class DynamicsTrace:
    iterates: list
    converged: bool
    limit: Optional[float]
    iterations_used: int

    def to_dict(self) -> dict:
        return asdict(self)


def best_response_dynamics(m: MarketConfig, init: Sequence[float], max_iters: int = 200,
                           dyn_tol: float = 1e-8) -> DynamicsTrace:
    """Gauss-Seidel best-response updates from ``init`` (one entry per firm).

    Non-convergence is reported, not raised.  ``limit`` is the common
    per-firm output when the iterates settle on a symmetric profile.
    """
    x = [float(v) for v in init]
    if len(x) != m.n:
        raise ValueError(f"init has {len(x)} entries for {m.n} firms")
    if any(v < 0 for v in x):
        raise ValueError("initial outputs must be non-negative")
    iterates = [list(x)]
    for it in range(1, max_iters + 1):
        change = 0.0
        for i in range(m.n):
            others = sum(x) - x[i]
            new = best_response(m, others)
            change = max(change, abs(new - x[i]))
            x[i] = new
        iterates.append(list(x))
        if change < dyn_tol:
            spread = max(x) - min(x)
            limit = float(np.mean(x)) if spread < max(dyn_tol, 1e-12) * 100 else None
            return DynamicsTrace(iterates, True, limit, it)
    return DynamicsTrace(iterates, False, None, max_iters)


# ---------------------------------------------------------------------------
# identity battery


@dataclass
class IdentityReport:
    max_rel_error: dict
    points_used: dict
    skipped: dict
    seed: int

    def passes(self, tol: float = 1e-4) -> bool:
        return all(v is None or v < tol for v in self.max_rel_error.values())

    def to_dict(self) -> dict:
        return asdict(self)


IDENTITIES = ("mrd_derivative", "L_derivative", "x_survival_derivative", "price_derivative")
_HAZARD_BASED = ("mrd_derivative", "L_derivative", "x_survival_derivative")


def _central(f, x: float, step: float) -> float:
    return (f(x + step) - f(x - step)) / (2.0 * step)


def identity_battery(m: MarketConfig, cfg: GridConfig = GridConfig(), points: int = 20,
                     seed: int = 0, rel_step: float = 1e-5) -> IdentityReport:
    """Finite-difference checks at random smooth interior points.

    * m'(x) = h(x) m(x) - 1
    * L'(x) = h(x) L(x) + (g(x) - (n+1)) / n
    * (x S(x))' = S(x) (1 - g(x))
    * P'(x) = -S(x)

    Points fall between the 2% and 98% quantiles, half of them spread evenly
    in x, and keep away from breakpoints.  Hazard-based identities are
    skipped inside support gaps.
    """
    d = m.demand
    if not d.has_density:
        raise NotAvailable("identity battery needs a density")
    rng = np.random.default_rng(seed)
    kinks = np.asarray(sorted(set(d.breakpoints())), dtype=float)
    gaps = d.gaps()
    q_lo, q_hi = float(d.quantile(0.02)), float(d.quantile(0.98))
    width = q_hi - q_lo
    errors = {k: [] for k in IDENTITIES}
    skipped = {k: 0 for k in IDENTITIES}
    used = 0
    attempts = 0
    while used < points and attempts < 100 * points:
        attempts += 1
        # alternate quantile draws with uniform-in-x draws so gaps get visited
        if attempts % 2:
            x = float(d.quantile(rng.uniform(0.02, 0.98)))
        else:
            x = float(rng.uniform(q_lo, q_hi))
        if x <= 0:
            continue
        clearance = float(np.min(np.abs(kinks - x))) if len(kinks) else math.inf
        step = rel_step * min(clearance, width, x)
        if step <= 0 or clearance < 1e-6 * width:
            continue
        used += 1
        in_gap = any(a < x < b for a, b in gaps)
        sf = float(d.survival(x))
        h = float(d.hazard_rate(x))
        g = x * h
        mv = float(d.mean_residual(x))

        def rel(fd, formula):
            return abs(fd - formula) / max(1.0, abs(formula))

        errors["price_derivative"].append(rel(_central(lambda u: float(expected_price(m, u)), x, step), -sf))
        if in_gap:
            for k in _HAZARD_BASED:
                skipped[k] += 1
            continue
        errors["mrd_derivative"].append(rel(_central(lambda u: float(d.mean_residual(u)), x, step), h * mv - 1.0))
        errors["L_derivative"].append(rel(_central(lambda u: float(L(m, u)), x, step), float(L_prime(m, x))))
        errors["x_survival_derivative"].append(
            rel(_central(lambda u: u * float(d.survival(u)), x, step), sf * (1.0 - g)))
    max_err = {k: (max(v) if v else None) for k, v in errors.items()}
    counts = {k: len(v) for k, v in errors.items()}
    return IdentityReport(max_rel_error=max_err, points_used=counts, skipped=skipped, seed=seed)
