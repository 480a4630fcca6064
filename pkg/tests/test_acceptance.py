"""Acceptance criteria, one check per criterion at the stated tolerances.

Run under pytest (a PASS/FAIL summary appears at the end of the session) or
directly with ``python tests/test_acceptance.py``.
"""
import json
import math
import os
import subprocess
import sys
import tempfile

import numpy as np
import pytest

sys.path.insert(0, os.path.dirname(__file__))

from cournot_demand.distributions import Exponential, Pareto, Uniform, scale  # noqa: E402
from cournot_demand.equilibrium import (MarketConfig, expected_price, find_equilibria,  # noqa: E402
                                        log_concavity_check)
from cournot_demand.reliability import classify  # noqa: E402
from cournot_demand.verify import (best_response_dynamics, identity_battery,  # noqa: E402
                                   mc_expected_price)
from cournot_demand.zoo import standard_zoo  # noqa: E402

from oracles import pareto_price, reference_sf, sign_changes  # noqa: E402

ZOO = standard_zoo()
_REPORTS = {}


def _classified():
    if not _REPORTS:
        _REPORTS.update({name: classify(d) for name, d in ZOO.items()})
    return _REPORTS


def criterion_1():
    """Closed-form equilibria within 1e-8."""
    tol = 1e-8
    errs = []
    for n, expected in ((1, 1 / 3), (2, 1 / 4), (3, 1 / 5)):
        eqs = find_equilibria(MarketConfig(n, 0.0, Uniform(0, 1)))
        errs.append(abs(eqs.roots[0].per_firm - expected) if eqs.count == 1 else math.inf)
    for d, n, X in ((Exponential(1), 1, 1.0), (Pareto(1, 4), 2, 8 / 9)):
        eqs = find_equilibria(MarketConfig(n, 0.0, d))
        errs.append(abs(eqs.roots[0].total_output - X) if eqs.count == 1 else math.inf)
    worst = max(errs)
    return worst < tol, f"max abs error {worst:.2e} over 5 fixtures"


def criterion_2():
    """DMRD or IGFR: at most one root in every market."""
    bad, checked = [], 0
    for name, rep in _classified().items():
        if not (rep.dmrd.holds or rep.igfr.holds):
            continue
        d = ZOO[name]
        for n in (1, 2, 5):
            for c in (0.0, 0.25 * d.mean):
                checked += 1
                count = find_equilibria(MarketConfig(n, c, d)).count
                if count > 1:
                    bad.append((name, n, c, count))
    return not bad, f"{checked} markets, counterexamples: {bad or 'none'}"


def criterion_3():
    """DMRD laws give a log-concave expected margin."""
    bad, checked = [], 0
    for name, rep in _classified().items():
        if not rep.dmrd.holds:
            continue
        d = ZOO[name]
        for c in (0.0, 0.25 * d.mean):
            checked += 1
            res = log_concavity_check(MarketConfig(1, c, d), tol=1e-7, min_points=512)
            if not res.holds or res.grid_points < 512:
                bad.append((name, c))
    return not bad, f"{checked} markets, counterexamples: {bad or 'none'}"


def _oracle_sign_changes(d, n):
    # L from the hand-written Pareto price and scipy's survival on a wide grid
    xs = np.concatenate([np.linspace(1e-3, 2.0, 4000), np.logspace(np.log10(2.0), 8, 2000)[1:]])
    vals = pareto_price(d.xm, d.a, xs) / np.asarray(reference_sf(d, xs)) - xs / n
    return sign_changes(vals)


def criterion_4():
    """Pareto with c = 0, n = 2: a unique root for a = 4, none for a = 2.5."""
    light = find_equilibria(MarketConfig(2, 0.0, Pareto(1, 4)))
    heavy = find_equilibria(MarketConfig(2, 0.0, Pareto(1, 2.5)))
    o_light = _oracle_sign_changes(Pareto(1, 4), 2)
    o_heavy = _oracle_sign_changes(Pareto(1, 2.5), 2)
    ok = light.count == 1 and o_light == 1 and heavy.count == 0 and o_heavy == 0
    third = (Pareto(1, 4).moment(3), Pareto(1, 2.5).moment(3))
    return ok, (f"a=4: {light.count} root (oracle {o_light}), E[a^3]={third[0]:.4g}; "
                f"a=2.5: {heavy.count} roots (oracle {o_heavy}), E[a^3]={third[1]}")


def criterion_5():
    """Class implications on the zoo plus the two separating examples."""
    broken = []
    for name, rep in _classified().items():
        f = rep.flags()
        if (f["ifr"] and not (f["igfr"] and f["dmrd"])) or ((f["igfr"] or f["dmrd"]) and not f["dgmrd"]):
            broken.append(name)
    p = _classified()["pareto4"]
    w = p.dmrd.witness
    pareto_ok = bool(p.igfr.holds and p.dmrd.holds is False and w is not None and w.f_x1 < w.f_x2)
    gap = _classified()["uniform_gap_dmrd"]
    gap_ok = bool(gap.dmrd.holds and gap.igfr.holds is False)
    detail = (f"closure broken on {broken or 'none'}; Pareto witness "
              f"m({w.x1:.4g})={w.f_x1:.4g} < m({w.x2:.4g})={w.f_x2:.4g}; gap mixture dmrd & not igfr: {gap_ok}")
    return not broken and pareto_ok and gap_ok, detail


def criterion_6():
    """Finite-difference identities below 1e-4 at 20 points per smooth law."""
    worst, where = 0.0, None
    for name, d in ZOO.items():
        if not d.has_density or d.gaps():
            continue
        rep = identity_battery(MarketConfig(2, 0.1 * d.mean, d), points=20, seed=1)
        for k, v in rep.max_rel_error.items():
            if v is not None and v > worst:
                worst, where = v, (name, k)
    return worst < 1e-4, f"max relative error {worst:.2e} at {where}"


def criterion_7():
    """Monte Carlo within 4 standard errors; dynamics reach the unique root within 1e-6."""
    worst_z = 0.0
    for i, (name, d) in enumerate(sorted(ZOO.items())):
        for j, X in enumerate((0.0, float(d.quantile(0.5)))):
            est, se = mc_expected_price(d, X, 1_000_000, seed=100 * i + j)
            exact = float(expected_price(MarketConfig(1, 0.0, d), X))
            worst_z = max(worst_z, abs(est - exact) / se)
    worst_gap = 0.0
    for d in (Uniform(0, 1), Exponential(1)):
        for n in (1, 2, 3):
            m = MarketConfig(n, 0.0, d)
            X = find_equilibria(m).roots[0].total_output
            for seed in range(5):
                init = list(np.random.default_rng(seed).uniform(0.0, 2.0 * X / n, n))
                t = best_response_dynamics(m, init)
                gap = abs(t.limit * n - X) if t.converged and t.limit is not None else math.inf
                worst_gap = max(worst_gap, gap)
    return worst_z < 4.0 and worst_gap < 1e-6, f"max |z| {worst_z:.2f}; max dynamics gap {worst_gap:.2e}"


def criterion_8():
    """Flags identical and X* linear under scaling by 0.5, 2, 10."""
    flag_breaks, worst = [], 0.0
    for name, d in ZOO.items():
        base = _classified()[name].flags()
        base_eq = find_equilibria(MarketConfig(2, 0.0, d))
        for k in (0.5, 2.0, 10.0):
            s = scale(d, k)
            if classify(s).flags() != base:
                flag_breaks.append((name, k))
            eq = find_equilibria(MarketConfig(2, 0.0, s))
            if eq.count != base_eq.count:
                flag_breaks.append((name, k, "count"))
                continue
            for r0, r1 in zip(base_eq.roots, eq.roots):
                worst = max(worst, abs(r1.total_output - k * r0.total_output) / (k * r0.total_output))
    return not flag_breaks and worst < 1e-8, f"flag changes: {flag_breaks or 'none'}; max rel X* error {worst:.2e}"


def criterion_9():
    """Two analyze runs with the same config and seed give identical bytes."""
    root = os.path.join(os.path.dirname(__file__), os.pardir, "demos", "configs", "uniform_duopoly.json")
    with tempfile.TemporaryDirectory() as tmp:
        outs = []
        for i in range(2):
            out = os.path.join(tmp, f"r{i}.json")
            res = subprocess.run([sys.executable, "-m", "cournot_demand", "analyze", "--config", root,
                                  "--report", out, "--oracles", "--seed", "7"], capture_output=True)
            if res.returncode != 0:
                return False, f"run {i} exited {res.returncode}: {res.stderr.decode()[-200:]}"
            with open(out, "rb") as fh:
                outs.append(fh.read())
    same = outs[0] == outs[1]
    json.loads(outs[0])
    return same, f"{len(outs[0])} bytes, identical: {same}"


CRITERIA = [
    ("1 closed-form equilibria", criterion_1),
    ("2 DMRD/IGFR uniqueness", criterion_2),
    ("3 DMRD log-concavity", criterion_3),
    ("4 Pareto moment desk check", criterion_4),
    ("5 class implications", criterion_5),
    ("6 identity battery", criterion_6),
    ("7 oracle agreement", criterion_7),
    ("8 scale closure", criterion_8),
    ("9 report determinism", criterion_9),
]


@pytest.mark.parametrize("label, check", CRITERIA, ids=[c[0].split()[0] for c in CRITERIA])
def test_criterion(label, check, acceptance_line):
    passed, detail = check()
    acceptance_line(label, passed, detail)
    assert passed, detail


if __name__ == "__main__":
    failures = 0
    for label, check in CRITERIA:
        passed, detail = check()
        failures += not passed
        print(f"{'PASS' if passed else 'FAIL'}  {label}  {detail}", flush=True)
    sys.exit(1 if failures else 0)
