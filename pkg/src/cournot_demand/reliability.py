"""Hazard, generalized failure rate, mean residual demand and its scaled form,
plus grid-based classification into the IFR / IGFR / DMRD / DGMRD / bathtub
classes.

Monotonicity is certified on a finite grid, not proven.  The grid mixes
quantile-spaced points (to resolve both tails) with evenly spaced points (so
that support gaps of mixtures are actually visited).
"""
from __future__ import annotations

import csv
import io
import math
from dataclasses import asdict, dataclass, field
from typing import Optional

import numpy as np

from .distributions import Distribution
from .errors import InconsistentVerdict, NonPositivePoint, OutOfSupport, ZeroSurvival

__all__ = [
    "GridConfig", "Witness", "Verdict", "ClassificationReport", "ShapeTable",
    "hazard", "gfr", "mrd", "gmrd", "scan_upper", "scan_grid", "shape_table",
    "check_monotone", "classify",
]


@dataclass(frozen=True)
class GridConfig:
    """Scan settings.

    ``hi_quantile`` caps the scan on unbounded support; ``mono_tol`` is the
    relative slack allowed on each consecutive difference.
    """

    points: int = 1024
    hi_quantile: float = 1.0 - 1e-9
    mono_tol: float = 1e-9
    closure_tol: float = 1e-6

    def __post_init__(self):
        if int(self.points) != self.points or self.points < 2:
            raise ValueError(f"points must be an integer >= 2, got {self.points!r}")
        if not (0.0 < self.hi_quantile < 1.0):
            raise ValueError(f"hi_quantile must lie in (0, 1), got {self.hi_quantile!r}")
        if self.mono_tol < 0 or self.closure_tol < 0:
            raise ValueError("tolerances must be non-negative")

    @classmethod
    def from_dict(cls, data: Optional[dict]) -> "GridConfig":
        return cls(**(data or {}))


# ---------------------------------------------------------------------------
# pointwise functions


def _check_point(d: Distribution, x) -> np.ndarray:
    xa = np.asarray(x, dtype=float)
    if np.any(xa < d.support_lo) or np.any(xa >= d.support_hi):
        raise OutOfSupport(f"x={x!r} outside [{d.support_lo}, {d.support_hi})")
    if np.any(np.asarray(d.survival(xa)) <= 0.0):
        raise ZeroSurvival(f"survival underflows at x={x!r}")
    return xa


def hazard(d: Distribution, x):
    """Failure rate f(x)/S(x); ``None`` if ``d`` has no density."""
    _check_point(d, x)
    if not d.has_density:
        return None
    return d.hazard_rate(x)


def gfr(d: Distribution, x):
    """Generalized failure rate x * h(x), taken as 0 at x = 0."""
    xa = _check_point(d, x)
    if not d.has_density:
        return None
    h = np.asarray(d.hazard_rate(xa))
    with np.errstate(invalid="ignore"):
        g = np.where(xa == 0.0, 0.0, xa * h)
    return float(g) if np.ndim(x) == 0 else g


def mrd(d: Distribution, x):
    """Mean residual demand E(alpha - x | alpha > x), 0 beyond the support."""
    if np.any(np.asarray(x) < 0):
        raise OutOfSupport(f"mean residual demand needs x >= 0, got {x!r}")
    return d.mean_residual(x)


def gmrd(d: Distribution, x):
    """m(x) / x for x > 0."""
    xa = np.asarray(x, dtype=float)
    if np.any(xa <= 0):
        raise NonPositivePoint(f"generalized mean residual demand needs x > 0, got {x!r}")
    return d.mean_residual(x) / xa if np.ndim(x) else d.mean_residual(x) / float(x)


# ---------------------------------------------------------------------------
# grids


def scan_upper(d: Distribution, cfg: GridConfig) -> float:
    """Right end of the scanned range."""
    top = float(d.quantile(cfg.hi_quantile))
    if math.isfinite(d.support_hi):
        cap = d.support_hi - 1e-12 * (d.support_hi - d.support_lo)
        top = min(top, cap)
    return top


def scan_grid(d: Distribution, cfg: GridConfig) -> np.ndarray:
    """Sorted scan points on ``[0, scan_upper]``."""
    x_max = scan_upper(d, cfg)
    quarter = max(cfg.points // 4, 1)
    tail = 1.0 - cfg.hi_quantile
    q = np.concatenate([
        np.linspace(0.0, 1.0, quarter + 2)[1:-1],
        np.logspace(math.log10(tail), -1.0, quarter),
        1.0 - np.logspace(-1.0, math.log10(tail), cfg.points - 3 * quarter),
    ])
    extra = [0.0, d.support_lo, x_max]
    for a, b in d.gaps():
        extra.extend([a, 0.5 * (a + b)])
    pts = np.concatenate([
        np.asarray(d.quantile(q), dtype=float),
        np.linspace(0.0, x_max, quarter),
        np.asarray(extra, dtype=float),
    ])
    pts = pts[np.isfinite(pts) & (pts >= 0.0) & (pts <= x_max) & (pts < d.support_hi)]
    return np.unique(pts)


@dataclass
class ShapeTable:
    """The shape functions tabulated on a grid; ``None`` columns mean no density."""

    x: np.ndarray
    survival: np.ndarray
    density: Optional[np.ndarray]
    hazard: Optional[np.ndarray]
    gfr: Optional[np.ndarray]
    mrd: np.ndarray
    gmrd: np.ndarray

    COLUMNS = ("x", "survival", "density", "hazard", "gfr", "mrd", "gmrd")

    def to_csv(self, path=None) -> str:
        """Write the table as CSV (to ``path`` if given) and return the text."""
        buf = io.StringIO()
        writer = csv.writer(buf, lineterminator="\n")
        writer.writerow(self.COLUMNS)
        cols = [getattr(self, c) for c in self.COLUMNS]
        for i in range(len(self.x)):
            writer.writerow(["" if col is None or not np.isfinite(col[i]) else repr(float(col[i]))
                             for col in cols])
        text = buf.getvalue()
        if path is not None:
            with open(path, "w", encoding="utf-8", newline="") as fh:
                fh.write(text)
        return text


def shape_table(d: Distribution, cfg: GridConfig, x: Optional[np.ndarray] = None) -> ShapeTable:
    x = scan_grid(d, cfg) if x is None else np.asarray(x, dtype=float)
    sf = np.asarray(d.survival(x))
    m = np.asarray(d.mean_residual(x))
    with np.errstate(divide="ignore", invalid="ignore"):
        ell = np.where(x > 0, m / x, np.nan)
    if d.has_density:
        f = np.asarray(d.density(x))
        h = np.asarray(d.hazard_rate(x))
        with np.errstate(invalid="ignore"):
            g = np.where(x == 0.0, 0.0, x * h)
    else:
        f = h = g = None
    return ShapeTable(x, sf, f, h, g, m, ell)


# ---------------------------------------------------------------------------
# monotonicity


@dataclass(frozen=True)
class Witness:
    """Two points ``x1 < x2`` whose values break the claimed monotonicity."""

    x1: float
    x2: float
    f_x1: float
    f_x2: float

    def to_dict(self) -> dict:
        return asdict(self)


@dataclass
class Verdict:
    holds: Optional[bool]
    witness: Optional[Witness] = None
    worst_violation: float = 0.0
    note: str = ""

    def to_dict(self) -> dict:
        return {
            "holds": self.holds,
            "witness": None if self.witness is None else self.witness.to_dict(),
            "worst_violation": self.worst_violation,
            "note": self.note,
        }


def _rel_steps(f1, f2):
    scale = np.maximum(np.maximum(np.abs(f1), np.abs(f2)), np.finfo(float).tiny)
    return (f2 - f1) / scale


def check_monotone(x, values, increasing: bool, tol: float) -> Verdict:
    """Weak monotonicity of ``values`` along ``x`` with relative slack ``tol``.

    Non-finite entries are skipped.  A failing verdict's witness starts at
    the first offending step and ends at the most extreme later value.
    """
    x = np.asarray(x, dtype=float)
    v = np.asarray(values, dtype=float)
    keep = np.isfinite(v)
    x, v = x[keep], v[keep]
    if len(v) < 2:
        return Verdict(True)
    steps = _rel_steps(v[:-1], v[1:])
    bad = -steps if increasing else steps
    viol = bad > tol
    worst = float(max(bad.max(), 0.0))
    if not viol.any():
        return Verdict(True, worst_violation=worst)
    i = int(np.argmax(viol))
    # pair the first offending point with the most extreme later value
    tail = v[i + 1:]
    j = i + 1 + int(np.argmin(tail) if increasing else np.argmax(tail))
    return Verdict(False, Witness(float(x[i]), float(x[j]), float(v[i]), float(v[j])), worst)


def check_bathtub(x, h, tol: float) -> Verdict:
    """Non-increasing then non-decreasing, turning point anywhere (plateaus allowed)."""
    x = np.asarray(x, dtype=float)
    v = np.asarray(h, dtype=float)
    keep = np.isfinite(v)
    x, v = x[keep], v[keep]
    if len(v) < 3:
        return Verdict(True)
    steps = _rel_steps(v[:-1], v[1:])
    rising = steps > tol
    if not rising.any():
        return Verdict(True)
    first_rise = int(np.argmax(rising))
    later_fall = np.nonzero(steps[first_rise:] < -tol)[0]
    if len(later_fall) == 0:
        return Verdict(True)
    j = first_rise + int(later_fall[0])
    worst = float(-steps[first_rise:].min())
    return Verdict(False, Witness(float(x[j]), float(x[j + 1]), float(v[j]), float(v[j + 1])), worst,
                   note=f"hazard rises at x={x[first_rise]:.6g} and falls afterwards")


# ---------------------------------------------------------------------------
# classification

_IMPLICATIONS = (("ifr", "igfr"), ("ifr", "dmrd"), ("igfr", "dgmrd"), ("dmrd", "dgmrd"))


@dataclass
class ClassificationReport:
    ifr: Verdict
    igfr: Verdict
    dmrd: Verdict
    dgmrd: Verdict
    bathtub: Verdict
    dfr: Verdict
    grid_used: GridConfig
    scanned_range: tuple
    complete: bool
    grid_points: int
    adjustments: list = field(default_factory=list)

    FLAGS = ("ifr", "igfr", "dmrd", "dgmrd", "bathtub", "dfr")

    def flags(self) -> dict:
        return {name: getattr(self, name).holds for name in self.FLAGS}

    @property
    def hazard_monotone(self) -> Optional[bool]:
        if self.ifr.holds is None:
            return None
        return bool(self.ifr.holds or self.dfr.holds)

    def to_dict(self) -> dict:
        out = {name: getattr(self, name).to_dict() for name in self.FLAGS}
        out.update({
            "grid": asdict(self.grid_used),
            "grid_points": self.grid_points,
            "scanned_range": list(self.scanned_range),
            "complete": self.complete,
            "adjustments": list(self.adjustments),
        })
        return out


def _first_positive_before(x, g, a):
    idx = np.nonzero((x < a) & np.isfinite(g) & (g > 0))[0]
    return int(idx[-1]) if len(idx) else None


def classify(d: Distribution, cfg: GridConfig = GridConfig()) -> ClassificationReport:
    """Grid verdicts for the five shape classes, closed under the proven implications.

    IFR implies IGFR and DMRD, and either of those implies DGMRD.  When a raw
    verdict breaks one of these by no more than ``cfg.closure_tol`` (relative),
    the conclusion is upgraded and the adjustment recorded; a larger breach
    raises :class:`InconsistentVerdict`.
    """
    table = shape_table(d, cfg)
    x = table.x
    tol = cfg.mono_tol
    verdicts = {
        "dmrd": check_monotone(x, table.mrd, increasing=False, tol=tol),
        "dgmrd": check_monotone(x, table.gmrd, increasing=False, tol=tol),
    }
    if d.has_density:
        verdicts["ifr"] = check_monotone(x, table.hazard, increasing=True, tol=tol)
        verdicts["dfr"] = check_monotone(x, table.hazard, increasing=False, tol=tol)
        verdicts["igfr"] = check_monotone(x, table.gfr, increasing=True, tol=tol)
        verdicts["bathtub"] = check_bathtub(x, table.hazard, tol=tol)
        gaps = d.gaps()
        if gaps and verdicts["igfr"].holds:
            a, b = gaps[0]
            i = _first_positive_before(x, table.gfr, a)
            mid = 0.5 * (a + b)
            w = None if i is None else Witness(float(x[i]), mid, float(table.gfr[i]), 0.0)
            verdicts["igfr"] = Verdict(False, w, note="support has a gap")
        elif gaps:
            verdicts["igfr"].note = "support has a gap"
    else:
        for name in ("ifr", "dfr", "igfr", "bathtub"):
            verdicts[name] = Verdict(None, note="no density")

    adjustments = []
    for premise, conclusion in _IMPLICATIONS:
        p, c = verdicts[premise], verdicts[conclusion]
        if p.holds and c.holds is False:
            if c.worst_violation <= cfg.closure_tol and c.note != "support has a gap":
                adjustments.append(
                    f"{conclusion} upgraded from {premise} (worst relative step {c.worst_violation:.3g})")
                verdicts[conclusion] = Verdict(True, None, c.worst_violation, note=f"implied by {premise}")
            else:
                raise InconsistentVerdict(
                    f"{premise} holds but {conclusion} fails by {c.worst_violation:.3g} "
                    f"(witness {c.witness}); refine the grid")

    return ClassificationReport(
        ifr=verdicts["ifr"], igfr=verdicts["igfr"], dmrd=verdicts["dmrd"],
        dgmrd=verdicts["dgmrd"], bathtub=verdicts["bathtub"], dfr=verdicts["dfr"],
        grid_used=cfg, scanned_range=(float(x[0]), float(x[-1])),
        complete=math.isfinite(d.support_hi), grid_points=int(len(x)),
        adjustments=adjustments,
    )
