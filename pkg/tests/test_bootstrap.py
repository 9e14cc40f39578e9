"""Percentile bootstrap: determinism, bounds, degeneracy handling."""

import numpy as np
import pytest

import pocmed as pm
from pocmed.bootstrap import _percentile
from pocmed.errors import BootstrapFailureError, PositivityError


def test_config_validation():
    with pytest.raises(ValueError):
        pm.BootstrapConfig(replicates=1)
    with pytest.raises(ValueError):
        pm.BootstrapConfig(level=1.0)


def test_constant_estimator_degenerate_interval(preset):
    data = pm.sample_observational(preset, 300, seed=0)
    target = pm.estimator_target("natural", pm.Query(1, 1, 1.0))
    cis = pm.bootstrap_ci(data, target, pm.BootstrapConfig(replicates=200, seed=1))
    ci = cis["t_pns"]
    assert ci.point == 0.0 and ci.lower == 0.0 and ci.upper == 0.0


def test_deterministic_given_seed(preset):
    data = pm.sample_observational(preset, 500, seed=2)
    target = pm.estimator_target("natural", pm.Query(0, 1, 1.0))
    cfg = pm.BootstrapConfig(replicates=300, seed=7)
    assert pm.bootstrap_ci(data, target, cfg) == pm.bootstrap_ci(data, target, cfg)


def test_bounds_ordering_and_range(preset):
    # percentile bounds are order statistics, so they bracket the median
    data = pm.sample_observational(preset, 400, seed=3)
    q = pm.Query(0, 1, 1.0)
    target = pm.estimator_target("natural", q)
    cfg = pm.BootstrapConfig(replicates=400, seed=5)
    cis = pm.bootstrap_ci(data, target, cfg)
    children = np.random.SeedSequence(cfg.seed).spawn(cfg.replicates)
    replicates = [
        target(data.take(np.random.default_rng(c).integers(0, data.n, data.n)))
        for c in children
    ]
    for key in ("t_pns", "nd_pns", "ni_pns"):
        ci = cis[key]
        assert 0.0 <= ci.lower <= ci.upper <= 1.0
        median = float(np.median([r[key] for r in replicates]))
        assert ci.lower <= median <= ci.upper


def test_small_sample_indirect_lower_bound_clips(preset):
    # small samples put bootstrap mass exactly at zero for the indirect part
    data = pm.sample_observational(preset, 100, seed=6)
    target = pm.estimator_target("natural", pm.Query(0, 1, 1.0))
    cis = pm.bootstrap_ci(data, target, pm.BootstrapConfig(replicates=1000, seed=6))
    assert cis["ni_pns"].lower == 0.0


def test_degenerate_replicates_counted():
    # one lonely row at treatment level 2: replicates that miss it raise
    # positivity errors and are dropped with a count
    rng = np.random.default_rng(0)
    n = 40
    cols = {
        "x": np.concatenate([rng.integers(0, 2, n).astype(float), [2.0]]),
        "m": np.concatenate([rng.integers(0, 2, n).astype(float), [0.0]]),
        "y": np.concatenate([rng.integers(0, 2, n).astype(float), [1.0]]),
    }
    data = pm.Dataset(cols, pm.ColumnRoles("x", "m", "y"))
    target = pm.estimator_target("natural", pm.Query(0, 2, 1.0))
    cis = pm.bootstrap_ci(data, target, pm.BootstrapConfig(replicates=200, seed=3))
    assert 0 < cis["t_pns"].degenerate_count < 200


def test_all_replicates_degenerate(preset):
    data = pm.sample_observational(preset, 50, seed=1)

    def target(d):
        if d is data:
            return {"value": 0.5}
        raise PositivityError("resampled cell empty")

    with pytest.raises(BootstrapFailureError):
        pm.bootstrap_ci(data, target, pm.BootstrapConfig(replicates=20, seed=0))


def test_quantile_rule_linear_interpolation():
    # documented rule: with h = (B - 1) p on sorted values,
    # q = v[floor(h)] + (h - floor(h)) (v[floor(h) + 1] - v[floor(h)])
    values = np.array([0.0, 1.0, 2.0, 10.0])
    assert _percentile(values, 0.5) == 1.5
    assert _percentile(values, 0.025) == pytest.approx(0.075)
    assert _percentile(values, 1.0) == 10.0


def test_proportion_quantities_skip_undefined(preset):
    # replicates with zero total leave the proportion undefined; those
    # replicates are excluded from the proportion percentile sets only
    data = pm.sample_observational(preset, 60, seed=12)
    target = pm.estimator_target("natural", pm.Query(0, 1, 1.0))
    cis = pm.bootstrap_ci(data, target, pm.BootstrapConfig(replicates=300, seed=2))
    if "prop_nd" in cis:
        assert 0.0 <= cis["prop_nd"].lower <= cis["prop_nd"].upper <= 1.0


def test_target_validation(preset):
    q = pm.Query(0, 1, 1.0)
    with pytest.raises(Exception):
        pm.estimator_target("pn", q, evidence=pm.Evidence(0, pm.Interval.full()))
    with pytest.raises(Exception):
        pm.estimator_target(
            "cd", q, evidence=pm.Evidence(x_star=0, interval_y=pm.Interval.full())
        )
