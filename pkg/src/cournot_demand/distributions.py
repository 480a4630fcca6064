"""Demand-intercept distributions.

Every law lives on a subset of ``[0, H)`` with ``H`` possibly infinite and
exposes the survival function, an optional density, the integrated survival
``int_x^H S(u) du`` and raw moments.  All public methods accept scalars or
numpy arrays; scalar input gives a Python ``float`` back.

Instances are frozen dataclasses, so they are hashable, comparable and safe to
share between threads.
"""
from __future__ import annotations

import math
import warnings
from dataclasses import dataclass
from typing import Any, Optional, Sequence

import numpy as np
from scipy import integrate, special

from .errors import ConfigParse, NonPositiveScale, QuadratureFailure, ZeroSurvival

#: Upper quantile used to truncate numerical integrals on unbounded support.
TAIL_QUANTILE = 1.0 - 1e-12
#: Default absolute quadrature tolerance, relative to the mean.
QUAD_RTOL = 1e-10


def _arr(x) -> np.ndarray:
    return np.asarray(x, dtype=float)


def _out(x, values):
    if np.ndim(x) == 0:
        return float(np.asarray(values).reshape(()))
    return np.asarray(values, dtype=float)


def _positive(name: str, value: float) -> float:
    value = float(value)
    if not (math.isfinite(value) and value > 0):
        raise ValueError(f"{name} must be a finite positive number, got {value!r}")
    return value


class Distribution:
    """Base class for the demand-intercept laws.

    Subclasses implement the underscore hooks on points inside
    ``[support_lo, support_hi)``; the public methods take care of clamping.
    """

    family: str = ""
    has_density: bool = True

    # -- support ---------------------------------------------------------
    @property
    def support_lo(self) -> float:
        raise NotImplementedError

    @property
    def support_hi(self) -> float:
        raise NotImplementedError

    def gaps(self) -> list[tuple[float, float]]:
        """Open intervals strictly inside the support that carry no mass."""
        return []

    def breakpoints(self) -> list[float]:
        """Points where survival-derived functions may fail to be smooth."""
        pts = [self.support_lo]
        if math.isfinite(self.support_hi):
            pts.append(self.support_hi)
        return pts

    # -- hooks -----------------------------------------------------------
    def _sf(self, x: np.ndarray) -> np.ndarray:
        raise NotImplementedError

    def _pdf(self, x: np.ndarray) -> np.ndarray:
        raise NotImplementedError

    def _int_sf(self, x: np.ndarray) -> np.ndarray:
        return quad_integrated_survival(self, x)

    def _ppf(self, q: np.ndarray) -> np.ndarray:
        return _bisect_quantile(self, q)

    def _hazard(self, x: np.ndarray) -> np.ndarray:
        with np.errstate(divide="ignore", invalid="ignore"):
            return self._pdf(x) / self._sf(x)

    def _mrd(self, x: np.ndarray) -> np.ndarray:
        with np.errstate(divide="ignore", invalid="ignore"):
            return self._int_sf(x) / self._sf(x)

    def _moment(self, k: int) -> float:
        return quad_moment(self, k)

    # -- public API ------------------------------------------------------
    def _inside(self, x: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
        lo, hi = self.support_lo, self.support_hi
        mask = (x >= lo) & (x < hi)
        # keep hooks away from points where they are not defined
        xs = np.where(mask, x, lo)
        return mask, xs

    def survival(self, x):
        """Tail probability P(alpha > x); 1 below the support, 0 above it."""
        xa = _arr(x)
        mask, xs = self._inside(xa)
        vals = np.where(mask, self._sf(xs), np.where(xa < self.support_lo, 1.0, 0.0))
        return _out(x, np.clip(vals, 0.0, 1.0))

    def cdf(self, x):
        return _out(x, 1.0 - _arr(self.survival(x)))

    def density(self, x):
        """Density f(x), or ``None`` when the law exposes no density."""
        if not self.has_density:
            return None
        xa = _arr(x)
        mask, xs = self._inside(xa)
        with np.errstate(divide="ignore", invalid="ignore"):
            vals = np.where(mask, self._pdf(xs), 0.0)
        return _out(x, vals)

    def integrated_survival(self, x):
        """``int_x^H S(u) du``, which equals E(alpha - x)_+ ."""
        xa = _arr(x)
        lo = self.support_lo
        mask, xs = self._inside(xa)
        base = self._int_sf(xs)
        vals = np.where(xa < lo, (lo - xa) + base, np.where(mask, base, 0.0))
        return _out(x, np.maximum(vals, 0.0))

    def tail_first_moment(self, x):
        """E[alpha; alpha > x] computed as E(alpha - x)_+ + x S(x)."""
        xa = _arr(x)
        return _out(x, _arr(self.integrated_survival(xa)) + xa * _arr(self.survival(xa)))

    def hazard_rate(self, x):
        """Raw f/S inside the support, no error checking; see reliability.hazard."""
        if not self.has_density:
            return None
        xa = _arr(x)
        mask, xs = self._inside(xa)
        with np.errstate(divide="ignore", invalid="ignore"):
            vals = np.where(mask, self._hazard(xs), np.where(xa < self.support_lo, 0.0, np.nan))
        return _out(x, vals)

    def mean_residual(self, x):
        """m(x) = E(alpha - x | alpha > x), and 0 for x >= support_hi."""
        xa = _arr(x)
        lo = self.support_lo
        mask, xs = self._inside(xa)
        if np.any(mask):
            sf = self._sf(xs)
            if np.any(mask & (sf <= 0.0)):
                bad = xa[mask & (sf <= 0.0)].ravel()[0]
                raise ZeroSurvival(f"survival underflows at x={bad!r}")
        with np.errstate(divide="ignore", invalid="ignore"):
            inner = self._mrd(xs)
        below = (lo - xa) + float(self._int_sf(np.array(lo)))
        vals = np.where(xa < lo, below, np.where(mask, inner, 0.0))
        return _out(x, vals)

    def moment(self, k: int) -> float:
        """Raw moment E[alpha^k]; ``math.inf`` when it diverges."""
        if int(k) != k or k < 1:
            raise ValueError(f"moment order must be a positive integer, got {k!r}")
        return float(self._moment(int(k)))

    @property
    def mean(self) -> float:
        return self.moment(1)

    def quantile(self, q):
        qa = _arr(q)
        inner = np.clip(qa, 0.0, 1.0)
        vals = self._ppf(np.where((inner > 0) & (inner < 1), inner, 0.5))
        vals = np.where(inner <= 0, self.support_lo, np.where(inner >= 1, self.support_hi, vals))
        return _out(q, vals)

    def sample(self, rng: np.random.Generator, size: int) -> np.ndarray:
        """Inverse-cdf draws."""
        return _arr(self.quantile(rng.random(size)))

    def scale(self, k: float) -> "Distribution":
        return scale(self, k)

    def _scaled(self, k: float) -> "Distribution":
        return Scaled(self, k)

    def to_spec(self) -> dict[str, Any]:
        raise NotImplementedError


# ---------------------------------------------------------------------------
# numerical fallbacks


def _quad(func, a: float, b: float, epsabs: float) -> float:
    with warnings.catch_warnings():
        warnings.simplefilter("ignore")
        val, err, info = integrate.quad(func, a, b, epsabs=epsabs, epsrel=1e-12,
                                        limit=500, full_output=True)[:3]
    if not math.isfinite(val) or err > max(epsabs, 1e-12 * abs(val)) * 10:
        raise QuadratureFailure(
            f"quad on [{a}, {b}] returned {val} with error estimate {err}")
    return val


def _upper_limit(d: Distribution) -> float:
    if math.isfinite(d.support_hi):
        return d.support_hi
    return float(d.quantile(TAIL_QUANTILE))


def quad_integrated_survival(d: Distribution, x, tol: Optional[float] = None):
    """Adaptive-quadrature value of ``int_x^H S(u) du``.

    For unbounded support the integral stops at the ``TAIL_QUANTILE`` point.
    Used as the fallback hook and as an independent check of closed forms.
    """
    xa = np.atleast_1d(_arr(x))
    upper = _upper_limit(d)
    splits = sorted({p for p in d.breakpoints() if math.isfinite(p)})
    out = np.empty_like(xa)
    for i, xi in enumerate(xa):
        if xi >= upper:
            out[i] = 0.0
            continue
        scale = max(abs(upper), 1.0)
        epsabs = tol if tol is not None else QUAD_RTOL * scale
        pts = [xi] + [p for p in splits if xi < p < upper] + [upper]
        total = 0.0
        for a, b in zip(pts[:-1], pts[1:]):
            total += _quad(lambda u: float(d.survival(u)), a, b, epsabs)
        out[i] = total
    return out.reshape(np.shape(x)) if np.ndim(x) else out[0]


def quad_moment(d: Distribution, k: int) -> float:
    """E[alpha^k] = int_0^H k u^(k-1) S(u) du by quadrature."""
    upper = _upper_limit(d)
    lo = d.support_lo
    head = lo**k
    splits = sorted({p for p in d.breakpoints() if lo < p < upper})
    pts = [lo] + splits + [upper]
    scale = max(abs(upper), 1.0) ** k
    total = head
    for a, b in zip(pts[:-1], pts[1:]):
        total += _quad(lambda u: k * u ** (k - 1) * float(d.survival(u)), a, b, QUAD_RTOL * scale)
    return total


def _bisect_quantile(d: Distribution, q: np.ndarray, iters: int = 200) -> np.ndarray:
    """Smallest x with F(x) >= q, by vectorised bisection."""
    q = _arr(q)
    lo = np.full(q.shape, d.support_lo)
    if math.isfinite(d.support_hi):
        hi = np.full(q.shape, d.support_hi)
    else:
        hi = np.full(q.shape, max(2.0 * d.mean, 1.0) + d.support_lo)
        for _ in range(200):
            short = _arr(d.cdf(hi)) < q
            if not short.any():
                break
            hi = np.where(short, 2.0 * hi, hi)
    for _ in range(iters):
        mid = 0.5 * (lo + hi)
        if np.all((mid == lo) | (mid == hi)):
            break
        go_right = _arr(d.cdf(mid)) < q
        lo = np.where(go_right, mid, lo)
        hi = np.where(go_right, hi, mid)
    return hi


# ---------------------------------------------------------------------------
# parametric families


@dataclass(frozen=True)
class Uniform(Distribution):
    lo: float = 0.0
    hi: float = 1.0

    family = "Uniform"

    def __post_init__(self):
        object.__setattr__(self, "lo", float(self.lo))
        object.__setattr__(self, "hi", float(self.hi))
        if not (self.lo >= 0 and math.isfinite(self.hi) and self.hi > self.lo):
            raise ValueError(f"Uniform needs 0 <= lo < hi < inf, got [{self.lo}, {self.hi}]")

    @property
    def support_lo(self):
        return self.lo

    @property
    def support_hi(self):
        return self.hi

    @property
    def width(self) -> float:
        return self.hi - self.lo

    def _sf(self, x):
        return (self.hi - x) / self.width

    def _pdf(self, x):
        return np.full_like(x, 1.0 / self.width)

    def _int_sf(self, x):
        return (self.hi - x) ** 2 / (2.0 * self.width)

    def _hazard(self, x):
        return 1.0 / (self.hi - x)

    def _mrd(self, x):
        return (self.hi - x) / 2.0

    def _ppf(self, q):
        return self.lo + q * self.width

    def _moment(self, k):
        return (self.hi ** (k + 1) - self.lo ** (k + 1)) / ((k + 1) * self.width)

    def _scaled(self, k):
        return Uniform(self.lo * k, self.hi * k)

    def to_spec(self):
        return {"family": self.family, "params": {"lo": self.lo, "hi": self.hi}}


@dataclass(frozen=True)
class Exponential(Distribution):
    rate: float = 1.0

    family = "Exponential"

    def __post_init__(self):
        object.__setattr__(self, "rate", _positive("rate", self.rate))

    support_lo = 0.0
    support_hi = math.inf

    def _sf(self, x):
        return np.exp(-self.rate * x)

    def _pdf(self, x):
        return self.rate * np.exp(-self.rate * x)

    def _int_sf(self, x):
        return np.exp(-self.rate * x) / self.rate

    def _hazard(self, x):
        return np.full_like(x, self.rate)

    def _mrd(self, x):
        return np.full_like(x, 1.0 / self.rate)

    def _ppf(self, q):
        return -np.log1p(-q) / self.rate

    def _moment(self, k):
        return math.factorial(k) / self.rate**k

    def _scaled(self, k):
        return Exponential(self.rate / k)

    def to_spec(self):
        return {"family": self.family, "params": {"rate": self.rate}}


@dataclass(frozen=True)
class Gamma(Distribution):
    shape: float
    scale_: float = 1.0

    family = "Gamma"

    def __post_init__(self):
        object.__setattr__(self, "shape", _positive("shape", self.shape))
        object.__setattr__(self, "scale_", _positive("scale", self.scale_))

    support_lo = 0.0
    support_hi = math.inf

    def _sf(self, x):
        return special.gammaincc(self.shape, x / self.scale_)

    def _pdf(self, x):
        z = x / self.scale_
        with np.errstate(divide="ignore"):
            logp = (self.shape - 1) * np.log(z) - z - special.gammaln(self.shape)
        return np.exp(logp) / self.scale_

    def _int_sf(self, x):
        z = x / self.scale_
        a = self.shape
        return self.scale_ * (a * special.gammaincc(a + 1, z) - z * special.gammaincc(a, z))

    def _ppf(self, q):
        return self.scale_ * np.where(q < 0.5, special.gammaincinv(self.shape, q),
                                      special.gammainccinv(self.shape, 1.0 - q))

    def _moment(self, k):
        return self.scale_**k * math.exp(math.lgamma(self.shape + k) - math.lgamma(self.shape))

    def _scaled(self, k):
        return Gamma(self.shape, self.scale_ * k)

    def to_spec(self):
        return {"family": self.family, "params": {"shape": self.shape, "scale": self.scale_}}


@dataclass(frozen=True)
class Weibull(Distribution):
    shape: float
    scale_: float = 1.0

    family = "Weibull"

    def __post_init__(self):
        object.__setattr__(self, "shape", _positive("shape", self.shape))
        object.__setattr__(self, "scale_", _positive("scale", self.scale_))

    support_lo = 0.0
    support_hi = math.inf

    def _sf(self, x):
        return np.exp(-((x / self.scale_) ** self.shape))

    def _hazard(self, x):
        k, s = self.shape, self.scale_
        with np.errstate(divide="ignore"):
            return (k / s) * (x / s) ** (k - 1)

    def _pdf(self, x):
        with np.errstate(invalid="ignore"):
            return self._hazard(x) * self._sf(x)

    def _int_sf(self, x):
        k, s = self.shape, self.scale_
        zk = (x / s) ** k
        head = s * math.gamma(1 + 1 / k) * special.gammaincc(1 + 1 / k, zk)
        return head - x * np.exp(-zk)

    def _ppf(self, q):
        return self.scale_ * (-np.log1p(-q)) ** (1.0 / self.shape)

    def _moment(self, k):
        return self.scale_**k * math.gamma(1 + k / self.shape)

    def _scaled(self, k):
        return Weibull(self.shape, self.scale_ * k)

    def to_spec(self):
        return {"family": self.family, "params": {"shape": self.shape, "scale": self.scale_}}


@dataclass(frozen=True)
class Beta(Distribution):
    """Beta(a, b) on [0, 1]; scale it for other widths."""

    a: float
    b: float

    family = "Beta"

    def __post_init__(self):
        object.__setattr__(self, "a", _positive("a", self.a))
        object.__setattr__(self, "b", _positive("b", self.b))

    support_lo = 0.0
    support_hi = 1.0

    def _sf(self, x):
        return special.betaincc(self.a, self.b, x)

    def _pdf(self, x):
        with np.errstate(divide="ignore"):
            logp = ((self.a - 1) * np.log(x) + (self.b - 1) * np.log1p(-x)
                    - special.betaln(self.a, self.b))
        return np.exp(logp)

    def _int_sf(self, x):
        # reflected form E(t - Y)_+ with Y = 1 - alpha keeps precision near 1
        t = 1.0 - x
        a, b = self.a, self.b
        return t * special.betainc(b, a, t) - b / (a + b) * special.betainc(b + 1, a, t)

    def _ppf(self, q):
        return np.where(q < 0.5, special.betaincinv(self.a, self.b, q),
                        1.0 - special.betaincinv(self.b, self.a, 1.0 - q))

    def _moment(self, k):
        out = 1.0
        for r in range(k):
            out *= (self.a + r) / (self.a + self.b + r)
        return out

    def to_spec(self):
        return {"family": self.family, "params": {"a": self.a, "b": self.b}}


@dataclass(frozen=True)
class Pareto(Distribution):
    """Pareto with minimum ``xm`` and tail index ``a > 1``."""

    xm: float
    a: float

    family = "Pareto"

    def __post_init__(self):
        object.__setattr__(self, "xm", _positive("xm", self.xm))
        object.__setattr__(self, "a", _positive("a", self.a))
        if self.a <= 1:
            raise ValueError(f"Pareto tail index must exceed 1 for a finite mean, got {self.a}")

    @property
    def support_lo(self):
        return self.xm

    support_hi = math.inf

    def _sf(self, x):
        return (self.xm / x) ** self.a

    def _pdf(self, x):
        return self.a / x * (self.xm / x) ** self.a

    def _hazard(self, x):
        return self.a / x

    def _int_sf(self, x):
        return x * (self.xm / x) ** self.a / (self.a - 1)

    def _mrd(self, x):
        return x / (self.a - 1)

    def _ppf(self, q):
        return self.xm * (1.0 - q) ** (-1.0 / self.a)

    def _moment(self, k):
        if self.a <= k:
            return math.inf
        return self.a * self.xm**k / (self.a - k)

    def _scaled(self, k):
        return Pareto(self.xm * k, self.a)

    def to_spec(self):
        return {"family": self.family, "params": {"xm": self.xm, "a": self.a}}


@dataclass(frozen=True)
class LogNormal(Distribution):
    mu: float = 0.0
    sigma: float = 1.0

    family = "LogNormal"

    def __post_init__(self):
        object.__setattr__(self, "mu", float(self.mu))
        object.__setattr__(self, "sigma", _positive("sigma", self.sigma))

    support_lo = 0.0
    support_hi = math.inf

    def _z(self, x):
        with np.errstate(divide="ignore"):
            return (np.log(x) - self.mu) / self.sigma

    def _sf(self, x):
        return special.ndtr(-self._z(x))

    def _pdf(self, x):
        z = self._z(x)
        with np.errstate(divide="ignore", invalid="ignore"):
            return np.where(x > 0, np.exp(-0.5 * z * z) / (x * self.sigma * math.sqrt(2 * math.pi)), 0.0)

    def _int_sf(self, x):
        s = self.sigma
        head = math.exp(self.mu + 0.5 * s * s) * special.ndtr(s - self._z(x))
        return head - x * self._sf(x)

    def _ppf(self, q):
        return np.exp(self.mu + self.sigma * special.ndtri(q))

    def _moment(self, k):
        return math.exp(k * self.mu + 0.5 * (k * self.sigma) ** 2)

    def _scaled(self, k):
        return LogNormal(self.mu + math.log(k), self.sigma)

    def to_spec(self):
        return {"family": self.family, "params": {"mu": self.mu, "sigma": self.sigma}}


@dataclass(frozen=True)
class TruncatedNormal(Distribution):
    """Normal(mu, sigma) restricted to [lo, hi] with lo >= 0.

    Moments go through quadrature; there is no closed form wired in.
    """

    mu: float
    sigma: float
    lo: float = 0.0
    hi: float = math.inf

    family = "TruncatedNormal"

    def __post_init__(self):
        object.__setattr__(self, "mu", float(self.mu))
        object.__setattr__(self, "sigma", _positive("sigma", self.sigma))
        object.__setattr__(self, "lo", float(self.lo))
        object.__setattr__(self, "hi", float(self.hi))
        if not (self.lo >= 0 and self.hi > self.lo):
            raise ValueError(f"TruncatedNormal needs 0 <= lo < hi, got [{self.lo}, {self.hi}]")
        if self._mass <= 0:
            raise ValueError("TruncatedNormal window carries no probability mass")

    @property
    def support_lo(self):
        return self.lo

    @property
    def support_hi(self):
        return self.hi

    @property
    def _zlo(self):
        return (self.lo - self.mu) / self.sigma

    @property
    def _zhi(self):
        return (self.hi - self.mu) / self.sigma

    @property
    def _mass(self):
        return float(special.ndtr(-self._zlo) - special.ndtr(-self._zhi))

    def _sf(self, x):
        z = (x - self.mu) / self.sigma
        return (special.ndtr(-z) - special.ndtr(-self._zhi)) / self._mass

    def _pdf(self, x):
        z = (x - self.mu) / self.sigma
        return np.exp(-0.5 * z * z) / (math.sqrt(2 * math.pi) * self.sigma * self._mass)

    @staticmethod
    def _psi(z):
        # int_z^inf Phi-bar(t) dt
        return np.exp(-0.5 * z * z) / math.sqrt(2 * math.pi) - z * special.ndtr(-z)

    def _int_sf(self, x):
        z = (x - self.mu) / self.sigma
        out = self.sigma * self._psi(z)
        if math.isfinite(self.hi):
            out = out - self.sigma * float(self._psi(self._zhi)) \
                - (self.hi - x) * float(special.ndtr(-self._zhi))
        return out / self._mass

    def _ppf(self, q):
        tail = special.ndtr(-self._zhi) + (1.0 - q) * self._mass
        return self.mu - self.sigma * special.ndtri(tail)

    def _scaled(self, k):
        return TruncatedNormal(self.mu * k, self.sigma * k, self.lo * k, self.hi * k)

    def to_spec(self):
        return {"family": self.family,
                "params": {"mu": self.mu, "sigma": self.sigma, "lo": self.lo, "hi": self.hi}}


# ---------------------------------------------------------------------------
# combinators


@dataclass(frozen=True)
class Mixture(Distribution):
    """Finite mixture; component supports may be disjoint."""

    components: tuple
    weights: tuple

    family = "Mixture"

    def __post_init__(self):
        comps = tuple(self.components)
        w = tuple(float(v) for v in self.weights)
        object.__setattr__(self, "components", comps)
        object.__setattr__(self, "weights", w)
        if len(comps) < 2 or len(comps) != len(w):
            raise ValueError("a mixture needs at least two components and one weight each")
        if any(not (0.0 < v < 1.0) for v in w):
            raise ValueError(f"mixture weights must lie in (0, 1), got {w}")
        if abs(math.fsum(w) - 1.0) > 1e-12:
            raise ValueError(f"mixture weights must sum to 1, got {math.fsum(w)!r}")

    @property
    def has_density(self):
        return all(c.has_density for c in self.components)

    @property
    def support_lo(self):
        return min(c.support_lo for c in self.components)

    @property
    def support_hi(self):
        return max(c.support_hi for c in self.components)

    def gaps(self):
        spans = sorted((c.support_lo, c.support_hi) for c in self.components)
        out = []
        reach = spans[0][1]
        for lo, hi in spans[1:]:
            if lo > reach:
                out.append((reach, lo))
            reach = max(reach, hi)
        inner = [g for c in self.components for g in c.gaps()]
        # a component's own gap only counts if no other component covers it
        for a, b in inner:
            mid = 0.5 * (a + b)
            if all(not (c.support_lo <= mid < c.support_hi) or (a, b) in c.gaps()
                   for c in self.components):
                out.append((a, b))
        return sorted(out)

    def breakpoints(self):
        return sorted({p for c in self.components for p in c.breakpoints()})

    def _mix(self, fn: str, x):
        return sum(w * _arr(getattr(c, fn)(x)) for c, w in zip(self.components, self.weights))

    def _sf(self, x):
        return self._mix("survival", x)

    def _pdf(self, x):
        return self._mix("density", x)

    def _int_sf(self, x):
        return self._mix("integrated_survival", x)

    def _moment(self, k):
        return math.fsum(w * c.moment(k) for c, w in zip(self.components, self.weights))

    def sample(self, rng, size):
        u = rng.random(size)
        v = rng.random(size)
        edges = np.cumsum(self.weights)
        idx = np.minimum(np.searchsorted(edges, u, side="right"), len(self.components) - 1)
        out = np.empty(size)
        for i, c in enumerate(self.components):
            sel = idx == i
            out[sel] = _arr(c.quantile(v[sel]))
        return out

    def _scaled(self, k):
        return Mixture(tuple(c.scale(k) for c in self.components), self.weights)

    def to_spec(self):
        return {"family": self.family,
                "components": [c.to_spec() for c in self.components],
                "weights": list(self.weights)}


@dataclass(frozen=True)
class Scaled(Distribution):
    """Law of ``k * alpha`` for families without a native scale parameter."""

    base: Distribution
    k: float

    family = "Scaled"

    def __post_init__(self):
        object.__setattr__(self, "k", _positive("k", self.k))

    @property
    def has_density(self):
        return self.base.has_density

    @property
    def support_lo(self):
        return self.base.support_lo * self.k

    @property
    def support_hi(self):
        return self.base.support_hi * self.k

    def gaps(self):
        return [(a * self.k, b * self.k) for a, b in self.base.gaps()]

    def breakpoints(self):
        return [p * self.k for p in self.base.breakpoints()]

    def _sf(self, x):
        return _arr(self.base.survival(x / self.k))

    def _pdf(self, x):
        return _arr(self.base.density(x / self.k)) / self.k

    def _hazard(self, x):
        return _arr(self.base.hazard_rate(x / self.k)) / self.k

    def _int_sf(self, x):
        return self.k * _arr(self.base.integrated_survival(x / self.k))

    def _mrd(self, x):
        return self.k * _arr(self.base.mean_residual(x / self.k))

    def _ppf(self, q):
        return self.k * _arr(self.base.quantile(q))

    def _moment(self, j):
        m = self.base.moment(j)
        return m * self.k**j

    def sample(self, rng, size):
        return self.k * self.base.sample(rng, size)

    def _scaled(self, k):
        return Scaled(self.base, self.k * k)

    def to_spec(self):
        return {"family": self.family, "params": {"k": self.k}, "base": self.base.to_spec()}


@dataclass(frozen=True)
class SurvivalOnly(Distribution):
    """Wraps a law and hides its density.

    Useful for checking that survival-only computations (MRD, GMRD,
    equilibria) never touch f.
    """

    base: Distribution

    family = "SurvivalOnly"
    has_density = False

    @property
    def support_lo(self):
        return self.base.support_lo

    @property
    def support_hi(self):
        return self.base.support_hi

    def gaps(self):
        return self.base.gaps()

    def breakpoints(self):
        return self.base.breakpoints()

    def _sf(self, x):
        return _arr(self.base.survival(x))

    def _int_sf(self, x):
        return _arr(self.base.integrated_survival(x))

    def _mrd(self, x):
        return _arr(self.base.mean_residual(x))

    def _ppf(self, q):
        return _arr(self.base.quantile(q))

    def _moment(self, k):
        return self.base.moment(k)

    def sample(self, rng, size):
        return self.base.sample(rng, size)

    def _scaled(self, k):
        return SurvivalOnly(self.base.scale(k))

    def to_spec(self):
        return {"family": self.family, "base": self.base.to_spec()}


def scale(d: Distribution, k: float) -> Distribution:
    """Law of ``k * alpha``.

    Families closed under scaling return an instance of the same family, so
    ``scale(Uniform(0, 1), 2) == Uniform(0, 2)``.
    """
    k = float(k)
    if not (k > 0 and math.isfinite(k)):
        raise NonPositiveScale(f"scale factor must be positive and finite, got {k!r}")
    if k == 1.0:
        return d
    return d._scaled(k)


# ---------------------------------------------------------------------------
# JSON specification

_PARAMS = {
    "Uniform": (Uniform, {"lo": "lo", "hi": "hi"}),
    "Exponential": (Exponential, {"rate": "rate"}),
    "Gamma": (Gamma, {"shape": "shape", "scale": "scale_"}),
    "Weibull": (Weibull, {"shape": "shape", "scale": "scale_"}),
    "Beta": (Beta, {"a": "a", "b": "b"}),
    "Pareto": (Pareto, {"xm": "xm", "a": "a"}),
    "LogNormal": (LogNormal, {"mu": "mu", "sigma": "sigma"}),
    "TruncatedNormal": (TruncatedNormal, {"mu": "mu", "sigma": "sigma", "lo": "lo", "hi": "hi"}),
}

FAMILIES = tuple(_PARAMS) + ("Mixture", "Scaled", "SurvivalOnly")


def _num(v):
    if isinstance(v, str) and v.lower() in ("inf", "infinity", "+inf"):
        return math.inf
    if isinstance(v, bool) or not isinstance(v, (int, float)):
        raise ConfigParse(f"expected a number, got {v!r}")
    return float(v)


def from_spec(spec: dict) -> Distribution:
    """Build a distribution from ``{"family": ..., "params": {...}}``.

    Mixtures carry ``"components"`` and ``"weights"``; ``Scaled`` and
    ``SurvivalOnly`` wrap a nested ``"base"`` object.
    """
    if not isinstance(spec, dict) or "family" not in spec:
        raise ConfigParse(f"distribution spec must be an object with a 'family' key: {spec!r}")
    family = spec["family"]
    params = spec.get("params", {}) or {}
    if not isinstance(params, dict):
        raise ConfigParse(f"'params' must be an object, got {params!r}")
    try:
        if family in _PARAMS:
            cls, names = _PARAMS[family]
            unknown = set(params) - set(names)
            if unknown:
                raise ConfigParse(f"unknown parameters for {family}: {sorted(unknown)}")
            return cls(**{names[k]: _num(v) for k, v in params.items()})
        if family == "Mixture":
            comps = spec.get("components")
            weights = spec.get("weights")
            if not isinstance(comps, list) or not isinstance(weights, list):
                raise ConfigParse("Mixture needs 'components' and 'weights' lists")
            return Mixture(tuple(from_spec(c) for c in comps), tuple(_num(w) for w in weights))
        if family == "Scaled":
            return scale(from_spec(spec.get("base")), _num(params.get("k")))
        if family == "SurvivalOnly":
            return SurvivalOnly(from_spec(spec.get("base")))
    except ConfigParse:
        raise
    except (TypeError, ValueError) as exc:
        raise ConfigParse(f"invalid {family} specification: {exc}") from exc
    raise ConfigParse(f"unknown distribution family {family!r}; expected one of {FAMILIES}")


def mixture(parts: Sequence[tuple[Distribution, float]]) -> Mixture:
    """Convenience constructor from ``[(dist, weight), ...]``."""
    comps, weights = zip(*parts)
    return Mixture(tuple(comps), tuple(weights))
