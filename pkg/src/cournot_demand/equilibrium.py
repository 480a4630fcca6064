"""Symmetric Cournot equilibria under a random linear demand intercept.

Inverse demand is ``p(X) = (alpha - X)_+`` with the slope normalised to one,
so the expected price is ``P(X) = E(alpha - X)_+`` and every symmetric
equilibrium is a root of

    L(X) = m(X) - c / S(X) - X / n

where ``X`` is *total* industry output; the per-firm output is ``X / n``.
"""
from __future__ import annotations

import math
from dataclasses import asdict, dataclass, field
from typing import Optional

import numpy as np

from .distributions import Distribution
from .errors import AssumptionViolated, EmptyRegion, OutOfSupport, ZeroSurvival
from .reliability import ClassificationReport, GridConfig, scan_grid, scan_upper

BISECTION_MAX_ITER = 200


@dataclass(frozen=True)
class MarketConfig:
    """``n`` identical firms with marginal cost ``c`` facing intercept ``demand``."""

    n: int
    c: float
    demand: Distribution

    def __post_init__(self):
        if isinstance(self.n, bool) or int(self.n) != self.n or self.n < 1:
            raise AssumptionViolated(f"number of firms must be an integer >= 1, got {self.n!r}")
        object.__setattr__(self, "n", int(self.n))
        c = float(self.c)
        if not (math.isfinite(c) and c >= 0):
            raise AssumptionViolated(f"marginal cost must be finite and >= 0, got {self.c!r}")
        object.__setattr__(self, "c", c)
        mean = self.demand.mean
        if not mean > c:
            raise AssumptionViolated(f"need E[alpha] > c, got E[alpha]={mean!r} and c={c!r}")

    def with_demand(self, demand: Distribution) -> "MarketConfig":
        return MarketConfig(self.n, self.c, demand)

    def to_dict(self) -> dict:
        return {"n": self.n, "c": self.c, "demand": self.demand.to_spec()}


# ---------------------------------------------------------------------------
# the functions whose roots are equilibria


def expected_price(m: MarketConfig, X):
    """E(alpha - X)_+, the expected market price at total output X."""
    if np.any(np.asarray(X) < 0):
        raise ValueError(f"total output must be non-negative, got {X!r}")
    return m.demand.integrated_survival(X)


def _L(m: MarketConfig, X: np.ndarray) -> np.ndarray:
    d = m.demand
    sf = np.asarray(d.survival(X))
    with np.errstate(divide="ignore"):
        return np.asarray(d.mean_residual(X)) - m.c / sf - X / m.n


def L(m: MarketConfig, X):
    """m(X) - c/S(X) - X/n on total output X, with L(0) = E[alpha] - c."""
    Xa = np.asarray(X, dtype=float)
    if np.any(Xa < 0) or np.any(Xa >= m.demand.support_hi):
        raise OutOfSupport(f"L needs 0 <= X < {m.demand.support_hi}, got {X!r}")
    if np.any(np.asarray(m.demand.survival(Xa)) <= 0):
        raise ZeroSurvival(f"survival underflows at X={X!r}")
    out = _L(m, Xa)
    return float(out) if np.ndim(X) == 0 else out


def L_prime(m: MarketConfig, X):
    """h(X) L(X) + (g(X) - (n + 1)) / n, or ``None`` without a density."""
    d = m.demand
    if not d.has_density:
        return None
    Xa = np.asarray(X, dtype=float)
    lval = np.asarray(L(m, Xa))
    h = np.asarray(d.hazard_rate(Xa))
    with np.errstate(invalid="ignore"):
        g = np.where(Xa == 0.0, 0.0, Xa * h)
    out = h * lval + (g - (m.n + 1)) / m.n
    return float(out) if np.ndim(X) == 0 else out


def foc_residual(m: MarketConfig, X):
    """Residual of the first-order condition at total output X.

    ``E[alpha; alpha > X] - c - (n + 1) x S(X)`` with per-firm ``x = X / n``;
    it equals ``S(X) * L(X)``.
    """
    d = m.demand
    Xa = np.asarray(X, dtype=float)
    out = np.asarray(d.tail_first_moment(Xa)) - m.c - (m.n + 1) * (Xa / m.n) * np.asarray(d.survival(Xa))
    return float(out) if np.ndim(X) == 0 else out


# ---------------------------------------------------------------------------
# root enumeration


@dataclass(frozen=True)
class Root:
    total_output: float
    per_firm: float
    bracket: tuple
    L_residual: float
    foc_residual: float

    def to_dict(self) -> dict:
        out = asdict(self)
        out["bracket"] = list(self.bracket)
        return out


@dataclass
class EquilibriumSet:
    roots: list
    scan_range: tuple
    complete_scan: bool
    grid_points: int
    solver_tol: float
    foc_tol: float
    rejected: list = field(default_factory=list)
    notes: list = field(default_factory=list)

    def __len__(self):
        return len(self.roots)

    @property
    def count(self) -> int:
        return len(self.roots)

    def to_dict(self) -> dict:
        return {
            "roots": [r.to_dict() for r in self.roots],
            "count": self.count,
            "scan_range": list(self.scan_range),
            "complete_scan": self.complete_scan,
            "grid_points": self.grid_points,
            "solver_tol": self.solver_tol,
            "foc_tol": self.foc_tol,
            "rejected": [r.to_dict() for r in self.rejected],
            "notes": list(self.notes),
        }


def bisect_sign_change(f, lo: float, hi: float, f_lo: float, tol: float,
                       max_iter: int = BISECTION_MAX_ITER) -> tuple[float, float]:
    """Shrink ``[lo, hi]`` around a sign change of ``f``; ``f_lo`` is ``f(lo)``.

    Stops once the bracket is narrower than ``tol`` or floating point runs
    out of midpoints.
    """
    neg_lo = f_lo < 0
    for _ in range(max_iter):
        if hi - lo <= tol:
            break
        mid = 0.5 * (lo + hi)
        if mid <= lo or mid >= hi:
            break
        fm = f(mid)
        if fm == 0:
            return mid, mid
        if (fm < 0) == neg_lo:
            lo = mid
        else:
            hi = mid
    return lo, hi


def find_equilibria(m: MarketConfig, cfg: GridConfig = GridConfig(),
                    solver_tol: float = 1e-10, foc_tol: Optional[float] = None) -> EquilibriumSet:
    """All sign changes of L on the scan range, refined by bisection.

    Tangential roots (L touching zero without crossing) are not detected.
    On unbounded support the scan stops at the ``cfg.hi_quantile`` point, so
    ``complete_scan`` is False and roots further out can be missed.
    """
    d = m.demand
    if not d.mean > m.c:
        raise AssumptionViolated(f"need E[alpha] > c, got {d.mean!r} <= {m.c!r}")
    if foc_tol is None:
        foc_tol = 1e-8 * max(1.0, d.mean)
    xs = scan_grid(d, cfg)
    vals = _L(m, xs)
    finite = np.isfinite(vals)
    xs, vals = xs[finite], vals[finite]

    def f(X):
        return float(_L(m, np.asarray(X, dtype=float)))

    brackets = []
    for i in range(len(xs) - 1):
        a, b = vals[i], vals[i + 1]
        if a == 0.0 and xs[i] > 0:
            brackets.append((xs[i], xs[i]))
        elif a * b < 0:
            brackets.append((xs[i], xs[i + 1]))
    if vals[-1] == 0.0:
        brackets.append((xs[-1], xs[-1]))

    bounded = math.isfinite(d.support_hi)
    notes = []
    if bounded and vals[-1] > 0:
        # L(X) -> -H/n - c/0 < 0 as X -> H, so a crossing hides in the last sliver
        brackets.append((xs[-1], d.support_hi))
        notes.append("root bracketed against the support end")

    roots, rejected = [], []
    for lo, hi in brackets:
        if lo == hi:
            X = lo
            lo_b, hi_b = lo, hi
        else:
            lo_b, hi_b = bisect_sign_change(f, lo, hi, f(lo), solver_tol)
            X = 0.5 * (lo_b + hi_b)
        per = float(X) / m.n
        X = per * m.n
        root = Root(total_output=X, per_firm=per, bracket=(float(lo_b), float(hi_b)),
                    L_residual=f(X), foc_residual=float(foc_residual(m, X)))
        if abs(root.foc_residual) <= foc_tol:
            roots.append(root)
        else:
            rejected.append(root)
    if rejected:
        notes.append(f"{len(rejected)} sign change(s) failed the first-order-condition check")
    if not bounded:
        notes.append("unbounded support: scan truncated at the hi_quantile point")
    return EquilibriumSet(roots=roots, scan_range=(float(xs[0]), float(xs[-1])),
                          complete_scan=bounded, grid_points=int(len(xs)),
                          solver_tol=solver_tol, foc_tol=foc_tol, rejected=rejected, notes=notes)


# ---------------------------------------------------------------------------
# certificates


@dataclass
class UniquenessCertificate:
    density_at_zero: Optional[float]
    density_at_zero_ok: Optional[bool]
    hazard_monotone_or_bathtub: Optional[bool]
    thm1_applies: bool
    thm2_applies: bool
    thm2_via: list
    moment_order: int
    moment_finite: bool
    cor1_applies: bool
    numeric_root_count: int
    complete_scan: bool
    consistent: bool

    @property
    def certified(self) -> bool:
        return self.thm1_applies or self.thm2_applies or self.cor1_applies

    def to_dict(self) -> dict:
        out = asdict(self)
        out["certified"] = self.certified
        return out


def density_at_zero(d: Distribution) -> Optional[float]:
    """f(0+) when the support starts at 0 and a density exists, else ``None``."""
    if not d.has_density or d.support_lo > 0:
        return None
    f0 = float(d.density(0.0))
    if math.isnan(f0):
        pts = scan_grid(d, GridConfig())
        f0 = float(d.density(pts[pts > 0][0]))
    return f0


def uniqueness_certificate(m: MarketConfig, report: ClassificationReport,
                           eqs: EquilibriumSet) -> UniquenessCertificate:
    """Which sufficient uniqueness conditions hold, cross-checked with the root count.

    * density bound: f(0+) < 1/(E[alpha] - c) and a monotone or bathtub hazard.
    * DMRD or IGFR.
    * c = 0, DGMRD and a finite (n+1)-th moment.
    """
    d = m.demand
    f0 = density_at_zero(d)
    f0_ok = None if f0 is None else bool(f0 < 1.0 / (d.mean - m.c))
    if report.ifr.holds is None:
        shape_ok = None
    else:
        shape_ok = bool(report.ifr.holds or report.dfr.holds or report.bathtub.holds)
    thm1 = bool(f0_ok and shape_ok)
    via = [name for name in ("dmrd", "igfr") if getattr(report, name).holds]
    thm2 = bool(via)
    order = m.n + 1
    moment_finite = math.isfinite(d.moment(order))
    cor1 = bool(m.c == 0 and report.dgmrd.holds and moment_finite)
    count = eqs.count
    certified = thm1 or thm2 or cor1
    return UniquenessCertificate(
        density_at_zero=f0, density_at_zero_ok=f0_ok, hazard_monotone_or_bathtub=shape_ok,
        thm1_applies=thm1, thm2_applies=thm2, thm2_via=via,
        moment_order=order, moment_finite=moment_finite, cor1_applies=cor1,
        numeric_root_count=count, complete_scan=eqs.complete_scan,
        consistent=not (certified and count != 1),
    )


# ---------------------------------------------------------------------------
# log-concavity of expected unit margin


@dataclass
class LogConcavityResult:
    holds: bool
    witness: Optional[dict]
    region: tuple
    grid_points: int
    worst_violation: float
    tol: float

    def to_dict(self) -> dict:
        return asdict(self) | {"region": list(self.region)}


def _thin(xs: np.ndarray, ys: np.ndarray, span: float) -> tuple[np.ndarray, np.ndarray]:
    # drop neighbours too close for their log-values to differ above rounding
    keep = [0]
    for i in range(1, len(xs)):
        j = keep[-1]
        if xs[i] - xs[j] >= 1e-7 * span or abs(ys[i] - ys[j]) >= 1e-6 * max(1.0, abs(ys[i])):
            keep.append(i)
    keep = np.asarray(keep)
    return xs[keep], ys[keep]


def log_concavity_check(m: MarketConfig, cfg: GridConfig = GridConfig(),
                        tol: float = 1e-7, min_points: int = 512) -> LogConcavityResult:
    """Grid test of concavity of log(P(X) - c) where P(X) > c.

    Consecutive chord slopes must not increase by more than ``tol`` relative
    to their size.  A failure reports the three points spanning the offending
    pair of chords.
    """
    d = m.demand
    x_max = scan_upper(d, cfg)
    p0 = float(expected_price(m, 0.0))
    if not p0 > m.c:
        raise EmptyRegion(f"P(0) = {p0} does not exceed c = {m.c}")
    margin = lambda X: np.asarray(expected_price(m, X)) - m.c  # noqa: E731

    if m.c > 0 and float(margin(x_max)) <= 0:
        lo_b, hi_b = bisect_sign_change(lambda X: float(margin(X)), 0.0, x_max, p0 - m.c, 1e-14)
        edge = lo_b
        extra = edge - edge * np.logspace(-6, -1, 64)
    else:
        edge = x_max
        extra = np.empty(0)
    grid = scan_grid(d, cfg)
    pts = np.unique(np.concatenate([
        grid[grid <= edge], extra, np.linspace(0.0, edge, max(min_points, cfg.points)),
    ]))
    mg = margin(pts)
    ok = mg > 0
    pts, mg = pts[ok], mg[ok]
    ys = np.log(mg)
    xs, ys = _thin(pts, ys, edge)
    if len(xs) < 3:
        raise EmptyRegion("too few points with P(X) > c to test concavity")
    slopes = np.diff(ys) / np.diff(xs)
    scale = np.maximum(1.0, np.maximum(np.abs(slopes[:-1]), np.abs(slopes[1:])))
    rise = (slopes[1:] - slopes[:-1]) / scale
    worst = float(max(rise.max(), 0.0))
    bad = rise > tol
    witness = None
    if bad.any():
        i = int(np.argmax(bad))
        witness = {"x": [float(v) for v in xs[i:i + 3]], "log_margin": [float(v) for v in ys[i:i + 3]]}
    return LogConcavityResult(holds=not bad.any(), witness=witness, region=(float(xs[0]), float(edge)),
                              grid_points=int(len(xs)), worst_violation=worst, tol=tol)
