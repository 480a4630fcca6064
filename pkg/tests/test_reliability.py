import csv
import io
import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from cournot_demand.distributions import (Exponential, Gamma, Pareto, SurvivalOnly, Uniform,
                                          mixture, scale)
from cournot_demand.errors import InconsistentVerdict, NonPositivePoint, OutOfSupport
from cournot_demand.reliability import (GridConfig, check_bathtub, check_monotone, classify, gfr,
                                        gmrd, hazard, mrd, scan_grid, shape_table)

from conftest import ZOO
from oracles import reference_mrd, reference_pdf, reference_sf

GAP_MIX = mixture([(Uniform(0, 1), 0.8), (Uniform(2, 2.2), 0.2)])


# -- pointwise examples ------------------------------------------------------

@pytest.mark.parametrize("fn, d, x, expected", [
    (hazard, Exponential(1), 3.0, 1.0),
    (hazard, Uniform(0, 1), 0.5, 2.0),
    (hazard, Pareto(1, 4), 2.0, 2.0),
    (gfr, Pareto(1, 4), 7.0, 4.0),
    (gfr, Uniform(0, 1), 0.5, 1.0),
    (gfr, Exponential(1), 0.0, 0.0),
    (mrd, Uniform(0, 1), 0.0, 0.5),
    (mrd, Exponential(1), 5.0, 1.0),
    (mrd, Pareto(1, 4), 2.0, 2 / 3),
    (gmrd, Pareto(1, 4), 2.0, 1 / 3),
    (gmrd, Uniform(0, 1), 0.5, 0.5),
    (gmrd, Exponential(1), 10.0, 0.1),
])
def test_pointwise_examples(fn, d, x, expected):
    assert fn(d, x) == pytest.approx(expected, rel=1e-12)


def test_pointwise_errors():
    with pytest.raises(OutOfSupport):
        hazard(Uniform(0, 1), 1.0)
    with pytest.raises(OutOfSupport):
        hazard(Pareto(1, 4), 0.5)
    with pytest.raises(NonPositivePoint):
        gmrd(Uniform(0, 1), 0.0)
    assert mrd(Uniform(0, 1), 3.0) == 0.0
    assert hazard(SurvivalOnly(Gamma(2.0)), 1.0) is None
    assert gfr(SurvivalOnly(Gamma(2.0)), 1.0) is None


@pytest.mark.parametrize("name", sorted(ZOO))
def test_mrd_matches_quadrature_oracle(name):
    d = ZOO[name]
    for x in np.asarray(d.quantile([0.05, 0.3, 0.6, 0.95])):
        assert mrd(d, float(x)) == pytest.approx(reference_mrd(d, float(x)), rel=1e-8)


@pytest.mark.parametrize("name", sorted(n for n in ZOO if ZOO[n].has_density))
def test_hazard_matches_scipy(name):
    d = ZOO[name]
    xs = [float(x) for x in np.asarray(d.quantile([0.1, 0.4, 0.7, 0.9]))
          if all(abs(x - p) > 1e-9 for p in d.breakpoints())]
    for x in xs:
        expected = float(reference_pdf(d, x)) / float(reference_sf(d, x))
        assert hazard(d, x) == pytest.approx(expected, rel=1e-8)
        assert gfr(d, x) == x * hazard(d, x)
        assert gmrd(d, x) == mrd(d, x) / x


# -- classification examples -------------------------------------------------

def test_classify_uniform():
    f = classify(Uniform(0, 1)).flags()
    assert f["ifr"] and f["igfr"] and f["dmrd"] and f["dgmrd"]


def test_classify_pareto():
    r = classify(Pareto(1, 4))
    assert r.igfr.holds and r.dgmrd.holds
    assert r.dmrd.holds is False
    w = r.dmrd.witness
    assert w.x1 < w.x2 and w.f_x1 < w.f_x2
    assert mrd(Pareto(1, 4), w.x1) == pytest.approx(w.f_x1)
    assert mrd(Pareto(1, 4), w.x2) == pytest.approx(w.f_x2)
    assert not r.complete


def test_classify_exponential_is_boundary_case():
    r = classify(Exponential(1))
    assert r.ifr.holds and r.dmrd.holds and r.dfr.holds
    assert r.ifr.worst_violation <= GridConfig().mono_tol
    assert r.dmrd.worst_violation <= GridConfig().mono_tol


def _brute_force_dmrd(d, points=20001):
    """Independent DMRD test: m from quadrature of the scipy survival on a dense linear grid."""
    xs = np.linspace(0.0, d.support_hi, points)[:-1]
    sf = np.asarray(reference_sf(d, xs))
    # cumulative trapezoid from the right, exact for piecewise-linear survival on a fine grid
    step = xs[1] - xs[0]
    tail = np.concatenate([[0.0], np.cumsum(0.5 * step * (sf[::-1][:-1] + sf[::-1][1:]))])[::-1]
    last = xs[-1]
    tail = tail + 0.5 * (d.support_hi - last) * float(reference_sf(d, last))
    m = tail / sf
    return bool(np.all(np.diff(m) <= 1e-9 * np.abs(m[1:]))), xs, m


def test_gap_mixture_verdicts_match_brute_force():
    """The 0.8 / 0.2 mixture with mass on [2, 2.2] is not DMRD; its m rises across the gap."""
    is_dmrd, xs, m = _brute_force_dmrd(GAP_MIX)
    assert not is_dmrd
    r = classify(GAP_MIX)
    assert r.dmrd.holds is is_dmrd
    assert r.igfr.holds is False and "gap" in r.igfr.note
    w = r.igfr.witness
    assert w.x1 < 1.0 <= w.x2 < 2.0 and w.f_x2 < w.f_x1
    # m just below the gap exceeds m at 0.8
    assert mrd(GAP_MIX, 0.999) > mrd(GAP_MIX, 0.8)


def test_dmrd_gap_mixture_matches_brute_force():
    d = ZOO["uniform_gap_dmrd"]
    is_dmrd, _, _ = _brute_force_dmrd(d)
    assert is_dmrd
    r = classify(d)
    assert r.dmrd.holds and r.dgmrd.holds
    assert r.igfr.holds is False and r.ifr.holds is False


EXPECTED_FLAGS = {
    # name: (ifr, igfr, dmrd, dgmrd)
    "uniform01": (True, True, True, True),
    "exponential1": (True, True, True, True),
    "gamma2": (True, True, True, True),
    "gamma_half": (False, True, False, True),
    "weibull2": (True, True, True, True),
    "weibull07": (False, True, False, True),
    "beta23": (True, True, True, True),
    "beta_half_half": (False, True, False, True),
    "pareto4": (False, True, False, True),
    "lognormal1": (False, True, False, True),
    "truncnormal": (True, True, True, True),
    "uniform_gap_dmrd": (False, False, True, True),
}


@pytest.mark.parametrize("name", sorted(EXPECTED_FLAGS))
def test_known_class_memberships(name):
    f = classify(ZOO[name]).flags()
    assert (f["ifr"], f["igfr"], f["dmrd"], f["dgmrd"]) == EXPECTED_FLAGS[name]


def test_bathtub_verdicts():
    assert classify(Uniform(0, 1)).bathtub.holds      # monotone counts
    assert classify(Gamma(0.5)).bathtub.holds
    # on [0, H) the Pareto hazard is 0 below xm, jumps to a, then decays
    assert classify(Pareto(1, 4)).bathtub.holds is False
    assert classify(ZOO["weibull07"]).bathtub.holds   # decreasing
    r = classify(ZOO["lognormal1"])                   # rises then falls
    assert r.bathtub.holds is False and r.hazard_monotone is False
    x = np.linspace(0.1, 3, 50)
    assert check_bathtub(x, (x - 1.0) ** 2, 1e-9).holds
    assert check_bathtub(x, -((x - 1.0) ** 2), 1e-9).holds is False


# -- invariants --------------------------------------------------------------

@pytest.mark.parametrize("name", sorted(ZOO))
def test_implication_closure(name):
    f = classify(ZOO[name]).flags()
    if f["ifr"]:
        assert f["igfr"] and f["dmrd"]
    if f["igfr"] or f["dmrd"]:
        assert f["dgmrd"]


@pytest.mark.parametrize("name", sorted(ZOO))
def test_false_flags_carry_witnesses(name):
    r = classify(ZOO[name])
    for flag in ("ifr", "igfr", "dmrd", "dgmrd", "dfr"):
        v = getattr(r, flag)
        if v.holds is False:
            assert v.witness is not None and v.witness.x1 < v.witness.x2


@pytest.mark.parametrize("name", sorted(ZOO))
@pytest.mark.parametrize("k", [0.5, 2.0, 10.0])
def test_flags_scale_invariant(name, k):
    d = ZOO[name]
    assert classify(scale(d, k)).flags() == classify(d).flags()


def test_survival_only_classification():
    r = classify(SurvivalOnly(Gamma(2.0)))
    f = r.flags()
    assert f["dmrd"] and f["dgmrd"]
    assert f["ifr"] is None and f["igfr"] is None and f["bathtub"] is None


def test_inconsistent_verdict_raised():
    class Crooked(Exponential):
        # constant hazard keeps IFR, a visible ripple in m breaks DMRD
        def _mrd(self, x):
            return (1.0 + 1e-3 * np.sin(5.0 * x)) / self.rate

    with pytest.raises(InconsistentVerdict):
        classify(Crooked(1.0))


def test_small_closure_breach_is_upgraded():
    class Wobbly(Exponential):
        def _mrd(self, x):
            return (1.0 + 1e-8 * np.sin(5.0 * x)) / self.rate

    r = classify(Wobbly(1.0))
    assert r.dmrd.holds
    assert any("dmrd upgraded" in a for a in r.adjustments)


@settings(max_examples=50, deadline=None)
@given(st.lists(st.floats(-10, 10), min_size=2, max_size=40))
def test_check_monotone_agrees_with_sorted(values):
    x = np.arange(len(values), dtype=float)
    v = check_monotone(x, values, increasing=True, tol=0.0)
    assert v.holds == bool(np.all(np.diff(values) >= 0))
    if not v.holds:
        assert v.witness.f_x2 < v.witness.f_x1


# -- grid & export -----------------------------------------------------------

def test_scan_grid_properties():
    cfg = GridConfig()
    for d in (Uniform(0, 1), Pareto(1, 4), GAP_MIX):
        x = scan_grid(d, cfg)
        assert np.all(np.diff(x) > 0)
        assert x[0] >= 0 and len(x) >= cfg.points - 8
        assert x[-1] < d.support_hi
    assert np.any((scan_grid(GAP_MIX, cfg) > 1.0) & (scan_grid(GAP_MIX, cfg) < 2.0))


def test_grid_config_validation():
    with pytest.raises(ValueError):
        GridConfig(points=1)
    with pytest.raises(ValueError):
        GridConfig(hi_quantile=1.0)
    assert GridConfig.from_dict({"points": 512}).points == 512
    assert GridConfig.from_dict(None) == GridConfig()


def test_shape_table_csv(tmp_path):
    path = tmp_path / "grid.csv"
    shape_table(Exponential(1), GridConfig(points=256)).to_csv(path)
    rows = list(csv.DictReader(io.StringIO(path.read_text())))
    assert list(rows[0]) == ["x", "survival", "density", "hazard", "gfr", "mrd", "gmrd"]
    assert len(rows) >= 250
    for r in rows[5:10]:
        assert float(r["hazard"]) == pytest.approx(1.0)
        assert float(r["mrd"]) == pytest.approx(1.0)
    text = shape_table(SurvivalOnly(Exponential(1)), GridConfig(points=256)).to_csv()
    first = next(csv.DictReader(io.StringIO(text)))
    assert first["density"] == "" and first["hazard"] == ""
