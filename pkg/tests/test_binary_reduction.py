"""The general estimators must reproduce separately coded binary closed
forms exactly (bit-for-bit) on binary data."""

import numpy as np
import pytest

import pocmed as pm

from _binary_reference import reference_all
from conftest import random_binary_dataset

INF = float("inf")


def _general_all(data) -> dict:
    model = pm.CdfModel(data)
    q = pm.Query(x_base=0, x_alt=1, y_threshold=1.0)
    triple = pm.natural_pns(model, q)
    out = {
        "t_pns": triple.t_pns,
        "nd_pns": triple.nd_pns,
        "ni_pns": triple.ni_pns,
    }
    for mv in (0.0, 1.0):
        out[f"cd_pns_m{int(mv)}"] = pm.cd_pns(
            model, pm.Query(0, 1, 1.0, m_fixed=mv)
        )
    pn = pm.pn_family(model, q)
    out["t_pn"], out["nd_pn"], out["ni_pn"] = pn.t_pns, pn.nd_pns, pn.ni_pns
    ps = pm.ps_family(model, q)
    out["t_ps"], out["nd_ps"], out["ni_ps"] = ps.t_pns, ps.nd_pns, ps.ni_pns
    e = pm.Evidence(x_star=1, m_star=1, interval_y=pm.Interval.point(1.0))
    out["cd_pns_ev"], _ = pm.cd_pns_with_evidence(
        model, pm.Query(0, 1, 1.0, m_fixed=1.0), e
    )
    return out


@pytest.mark.parametrize("seed", range(50))
def test_binary_closed_forms_exact(seed):
    data = random_binary_dataset(np.random.default_rng(seed))
    got = _general_all(data)
    want = reference_all(data.x, data.m, data.y)
    for key, value in want.items():
        if key.endswith("_ratio"):
            # single-ratio closed form of the total; agrees with the summed
            # decomposition to floating rounding
            total = want[key.replace("_ratio", "")]
            assert abs(total - value) <= 1e-12, key
            continue
        assert key in got and got[key] == value, key
    assert set(got) <= set(want)


def test_full_interval_reduction_bitwise_on_data():
    data = random_binary_dataset(np.random.default_rng(99))
    model = pm.CdfModel(data)
    q = pm.Query(0, 1, 1.0)
    plain = pm.natural_pns(model, q)
    with_e, _ = pm.natural_pns_with_evidence(
        model, q, pm.Evidence(x_star=1, interval_y=pm.Interval.full())
    )
    assert plain.t_pns == with_e.t_pns
    assert plain.nd_pns == with_e.nd_pns
    assert plain.ni_pns == with_e.ni_pns
    cd_plain = pm.cd_pns(model, pm.Query(0, 1, 1.0, m_fixed=1.0))
    cd_with, _ = pm.cd_pns_with_evidence(
        model,
        pm.Query(0, 1, 1.0, m_fixed=1.0),
        pm.Evidence(x_star=0, m_star=0, interval_y=pm.Interval.full()),
    )
    assert cd_plain == cd_with
