"""End-to-end analysis of one market and JSON/CSV report writing."""
from __future__ import annotations

import csv
import io
import json
import math
from dataclasses import dataclass, replace
from importlib import resources
from typing import Any, Optional, Sequence

import numpy as np

from .distributions import from_spec, scale
from .equilibrium import (MarketConfig, expected_price, find_equilibria, log_concavity_check,
                          uniqueness_certificate)
from .errors import ConfigParse, CournotError, NotAvailable
from .reliability import GridConfig, classify, shape_table
from .verify import best_response, best_response_dynamics, identity_battery, mc_expected_price

SCHEMA_VERSION = 1


@dataclass(frozen=True)
class AnalysisConfig:
    market: MarketConfig
    grid: GridConfig = GridConfig()
    run_oracles: bool = False
    report_path: Optional[str] = None
    grid_csv_path: Optional[str] = None
    seed: int = 0
    mc_samples: int = 1_000_000

    @classmethod
    def from_dict(cls, data: dict) -> "AnalysisConfig":
        if not isinstance(data, dict):
            raise ConfigParse("configuration must be a JSON object")
        market = data.get("market")
        if not isinstance(market, dict):
            raise ConfigParse("configuration needs a 'market' object")
        for key in ("n", "demand"):
            if key not in market:
                raise ConfigParse(f"market is missing '{key}'")
        n, c = market["n"], market.get("c", 0.0)
        if isinstance(n, bool) or not isinstance(n, int):
            raise ConfigParse(f"market.n must be an integer, got {n!r}")
        if isinstance(c, bool) or not isinstance(c, (int, float)):
            raise ConfigParse(f"market.c must be a number, got {c!r}")
        demand = from_spec(market["demand"])
        try:
            grid = GridConfig.from_dict(data.get("grid"))
        except (TypeError, ValueError) as exc:
            raise ConfigParse(f"invalid grid settings: {exc}") from exc
        outputs = data.get("outputs", {}) or {}
        seed = data.get("seed", 0)
        samples = data.get("mc_samples", 1_000_000)
        if not isinstance(seed, int) or not isinstance(samples, int) or samples < 1000:
            raise ConfigParse("seed must be an integer and mc_samples an integer >= 1000")
        return cls(
            market=MarketConfig(n, c, demand),
            grid=grid,
            run_oracles=bool(data.get("run_oracles", False)),
            report_path=outputs.get("report_path"),
            grid_csv_path=outputs.get("grid_csv_path"),
            seed=seed,
            mc_samples=samples,
        )

    @classmethod
    def from_file(cls, path: str) -> "AnalysisConfig":
        try:
            with open(path, encoding="utf-8") as fh:
                data = json.load(fh)
        except json.JSONDecodeError as exc:
            raise ConfigParse(f"{path}: not valid JSON ({exc})") from exc
        return cls.from_dict(data)


def _jsonable(obj: Any) -> Any:
    """Recursively turn numpy scalars/tuples into JSON types; infinities become strings."""
    if isinstance(obj, dict):
        return {str(k): _jsonable(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [_jsonable(v) for v in obj]
    if isinstance(obj, (bool, np.bool_)):
        return bool(obj)
    if isinstance(obj, (int, np.integer)):
        return int(obj)
    if isinstance(obj, (float, np.floating)):
        v = float(obj)
        if math.isnan(v):
            return None
        if math.isinf(v):
            return "inf" if v > 0 else "-inf"
        return v
    return obj


def _oracles(cfg: AnalysisConfig, eqs) -> dict:
    m = cfg.market
    d = m.demand
    rng = np.random.default_rng(cfg.seed)
    probes = [0.0] + [r.total_output for r in eqs.roots]
    mc = []
    for i, X in enumerate(probes):
        est, se = mc_expected_price(d, X, cfg.mc_samples, cfg.seed + i)
        exact = float(expected_price(m, X))
        z = 0.0 if se == 0 else (est - exact) / se
        mc.append({"X": X, "quadrature": exact, "estimate": est, "stderr": se,
                   "z": z, "within_4se": abs(z) <= 4.0})
    fixed = []
    for r in eqs.roots:
        br = best_response(m, (m.n - 1) * r.per_firm)
        fixed.append({"per_firm": r.per_firm, "best_response": br, "gap": abs(br - r.per_firm)})
    top = max([r.per_firm for r in eqs.roots], default=float(d.mean) / m.n)
    init = [float(v) for v in rng.uniform(0.0, 2.0 * top, size=m.n)]
    trace = best_response_dynamics(m, init)
    match = None
    if trace.limit is not None and eqs.roots:
        match = min(abs(trace.limit * m.n - r.total_output) for r in eqs.roots)
    dynamics = {"init": init, "converged": trace.converged, "limit": trace.limit,
                "iterations_used": trace.iterations_used, "final": trace.iterates[-1],
                "distance_to_nearest_root": match}
    try:
        ids = identity_battery(m, cfg.grid, seed=cfg.seed).to_dict()
        ids["available"] = True
    except NotAvailable:
        ids = {"available": False}
    return {"mc_expected_price": mc, "fixed_point": fixed, "dynamics": dynamics, "identities": ids}


def analyze(cfg: AnalysisConfig) -> dict:
    """Classification, equilibria, certificate and log-concavity for one market."""
    m = cfg.market
    d = m.demand
    report = classify(d, cfg.grid)
    eqs = find_equilibria(m, cfg.grid)
    cert = uniqueness_certificate(m, report, eqs)
    lc = log_concavity_check(m, cfg.grid)
    out = {
        "schema_version": SCHEMA_VERSION,
        "market": {
            "n": m.n, "c": m.c, "demand": d.to_spec(), "mean": d.mean,
            "support": [d.support_lo, d.support_hi], "seed": cfg.seed,
        },
        "classification": report.to_dict(),
        "equilibria": eqs.to_dict(),
        "certificate": cert.to_dict(),
        "log_concavity": lc.to_dict(),
    }
    if cfg.run_oracles:
        out["oracles"] = _oracles(cfg, eqs)
    return _jsonable(out)


def dumps(report: dict) -> str:
    return json.dumps(report, indent=2, allow_nan=False) + "\n"


def run_analyze(cfg: AnalysisConfig) -> dict:
    """Run :func:`analyze` and write the report / grid CSV files named in ``cfg``."""
    report = analyze(cfg)
    if cfg.report_path:
        with open(cfg.report_path, "w", encoding="utf-8") as fh:
            fh.write(dumps(report))
    if cfg.grid_csv_path:
        shape_table(cfg.market.demand, cfg.grid).to_csv(cfg.grid_csv_path)
    return report


def report_schema() -> dict:
    return json.loads(resources.files(__package__).joinpath("report_schema.json").read_text("utf-8"))


# ---------------------------------------------------------------------------
# sweeps

SWEEP_PARAMS = ("n", "c", "scale")
SWEEP_COLUMNS = ("value", "status", "root_count", "total_output", "per_firm",
                 "thm1", "thm2", "cor1", "consistent", "error")


def parse_values(param: str, values: Sequence[str] | str) -> list:
    if param not in SWEEP_PARAMS:
        raise ConfigParse(f"sweep parameter must be one of {SWEEP_PARAMS}, got {param!r}")
    if isinstance(values, str):
        values = [v for v in values.split(",") if v.strip()]
    if not values:
        raise ConfigParse("sweep needs at least one value")
    try:
        if param == "n":
            return [int(v) for v in values]
        return [float(v) for v in values]
    except ValueError as exc:
        raise ConfigParse(f"bad sweep value: {exc}") from exc


def _row_config(base: AnalysisConfig, param: str, value) -> AnalysisConfig:
    m = base.market
    if param == "n":
        market = MarketConfig(value, m.c, m.demand)
    elif param == "c":
        market = MarketConfig(m.n, value, m.demand)
    else:
        market = MarketConfig(m.n, m.c, scale(m.demand, value))
    return replace(base, market=market, report_path=None, grid_csv_path=None)


def run_sweep(base: AnalysisConfig, param: str, values, out_path: Optional[str] = None) -> str:
    """One analysis per value; failing rows are recorded and the sweep goes on."""
    vals = parse_values(param, values)
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(SWEEP_COLUMNS)
    for v in vals:
        try:
            rep = analyze(_row_config(base, param, v))
            roots = rep["equilibria"]["roots"]
            cert = rep["certificate"]
            writer.writerow([
                v, "ok", len(roots),
                ";".join(repr(r["total_output"]) for r in roots),
                ";".join(repr(r["per_firm"]) for r in roots),
                cert["thm1_applies"], cert["thm2_applies"], cert["cor1_applies"], cert["consistent"], "",
            ])
        except (CournotError, ValueError) as exc:
            writer.writerow([v, "error", "", "", "", "", "", "", "", f"{type(exc).__name__}: {exc}"])
    text = buf.getvalue()
    if out_path:
        with open(out_path, "w", encoding="utf-8", newline="") as fh:
            fh.write(text)
    return text
