"""Shared fixtures and independently derived reference values.

The closed forms below are rederived here from the logistic thresholds so
tests check the package against an expression it does not itself contain.
"""

import math

import numpy as np
import pytest

import pocmed as pm


def _sig(t):
    return math.exp(t) / (1.0 + math.exp(t))


S1, S15, S2 = _sig(1.0), _sig(1.5), _sig(2.0)

# preset-model observational CDFs at threshold 1 (outcome below 1 means 0)
A_BASE = S1 * (1 - S15) + (1 - S1) ** 2        # P(Y < 1 | X = 0)
B_ALT = S15 * (1 - S2) + (1 - S15) ** 2        # P(Y < 1 | X = 1)
CROSSWORLD = (1 - S15) * (1 - S1) + S15 * (1 - S15)

# exact counterfactual truths, from the noise-rectangle decomposition
T_PNS = S1 * (S2 - S15) + (S15 - S1) * (S2 - S1) + (1 - S15) * (S15 - S1)
NI_PNS = (S15 - S1) ** 2
ND_PNS = CROSSWORLD - B_ALT

T_PN = T_PNS / (1 - B_ALT)
ND_PN = ND_PNS / (1 - B_ALT)
NI_PN = NI_PNS / (1 - B_ALT)
T_PS = T_PNS / A_BASE


@pytest.fixture(scope="session")
def preset():
    return pm.logistic_bernoulli_preset()


@pytest.fixture(scope="session")
def preset_analytic(preset):
    return pm.AnalyticCdf(preset)


@pytest.fixture
def base_query():
    return pm.Query(x_base=0, x_alt=1, y_threshold=1.0)


@pytest.fixture
def tiny_dataset():
    """Four rows: x in {0,1}, mediator constant, outcomes 0/1."""
    cols = {
        "x": np.array([0.0, 0.0, 1.0, 1.0]),
        "m": np.array([0.0, 0.0, 0.0, 0.0]),
        "y": np.array([0.0, 1.0, 1.0, 1.0]),
    }
    return pm.Dataset(cols, pm.ColumnRoles("x", "m", "y"))


def random_binary_dataset(rng, n=80):
    """Binary columns with every (x, m) cell guaranteed non-empty."""
    x = rng.integers(0, 2, n).astype(float)
    m = rng.integers(0, 2, n).astype(float)
    y = rng.integers(0, 2, n).astype(float)
    fill = np.array(
        [[0, 0, 0], [0, 1, 0], [1, 0, 1], [1, 1, 1], [0, 0, 1], [1, 1, 0]],
        dtype=float,
    )
    cols = {
        "x": np.concatenate([x, fill[:, 0]]),
        "m": np.concatenate([m, fill[:, 1]]),
        "y": np.concatenate([y, fill[:, 2]]),
    }
    return pm.Dataset(cols, pm.ColumnRoles("x", "m", "y"))
