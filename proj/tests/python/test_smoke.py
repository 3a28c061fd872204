"""Smoke tests for the python module: closed-form values, solver behavior,
simulator determinism and sweep output."""

import json
import math

import pytest

import wlanopt as w


def paper_scenario(protocol, n1=1, n2=0, d1=1.0, d2=1.0, c0=0.0):
    return w.Scenario(
        types=[
            w.UserType(alpha=10.0, beta=0.3, lambda_=d1, mu=1.0, count=n1),
            w.UserType(alpha=5.0, beta=0.1, lambda_=d2, mu=1.0, count=n2),
        ],
        delta_t=1.0,
        c0=c0,
        protocol=protocol,
    )


def test_lone_user_closed_forms():
    cs = paper_scenario(w.MacProtocol.csma(2.0 / 17.0))
    assert w.unit_use(0, (1.0, 0.0), cs) == pytest.approx(3.725, abs=1e-12)
    td = paper_scenario(w.MacProtocol.tdma())
    assert w.unit_use(0, (1.0, 0.0), td) == pytest.approx(4.85, abs=1e-12)
    assert w.tdma_expected_usage(0, w.ActionProfile.two_type(1.0, 0.0), td) == pytest.approx(0.5)


def test_engine_matches_closed_form():
    td = paper_scenario(w.MacProtocol.tdma(), n1=3, n2=2)
    profile = w.ActionProfile.two_type(0.5, 0.75)
    closed = 0.5 * w.unit_use(0, (0.5, 0.75), td)
    assert w.expected_utility_of_use(0, profile, td) == pytest.approx(closed, rel=1e-9)


def test_stationary_distribution_normalizes():
    s = paper_scenario(w.MacProtocol.tdma(), n1=3, n2=3)
    dist = w.stationary_distribution(w.Randomization([[0, 3], [0, 3]]), s)
    assert sum(p for _, p in dist.support) == pytest.approx(1.0, abs=1e-12)


def test_nash_and_design():
    s = paper_scenario(w.MacProtocol.csma(2.0 / 17.0), n1=20, n2=20, d1=0.1, d2=0.1)
    free = w.PricingPolicy.single(0.0, 0.0)
    assert w.is_nash(w.ActionProfile.two_type(1.0, 1.0), free, s)

    out = w.solve_design(w.Objective.Welfare, s)
    assert out.best.ne_type.label() == "ii"
    assert out.best.policy.plans[1].p_s == 0.0
    assert out.best.welfare > 0.0
    assert len(out.candidates) == 6
    parsed = json.loads(out.to_json())
    assert parsed["ne_type"] == "ii"


def test_scenario_json_roundtrip():
    s = paper_scenario(w.MacProtocol.csma(0.25), n1=4, n2=2)
    again = w.Scenario.from_json(s.to_json())
    assert again.to_json() == s.to_json()
    assert w.validate_scenario(again) == []


def test_simulator_is_deterministic():
    cfg = w.SimConfig()
    cfg.scenario = paper_scenario(w.MacProtocol.tdma(), n1=2, n2=2)
    cfg.policy = w.PricingPolicy.single(0.0, 0.0)
    cfg.fixed_n = w.Randomization([[0, 2], [0, 2]])
    cfg.horizon = 2e3
    cfg.seed = 42
    cfg.replications = 4
    a = w.simulate(cfg).to_json()
    b = w.simulate(cfg).to_json()
    assert a == b
    report = w.simulate(cfg)
    occ = report.cells[0].occupancy
    assert abs(occ.mean - 1.0) < 6 * occ.se  # E[x] = 2 * 0.5


def test_profit_curve_runs():
    spec = w.SweepSpec()
    spec.n1 = w.IntRange(10, 10)
    spec.n2 = w.IntRange(1, 3)
    spec.c0_csma = 1.0
    spec.c0_tdma = 2.0
    rows = w.profit_curve(spec)
    assert [r.n2 for r in rows] == [1, 2, 3]
    assert all(r.tdma >= r.csma for r in rows)
    assert not math.isnan(rows[0].csma)
