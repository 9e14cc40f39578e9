"""Nonparametric bootstrap confidence intervals for the estimators.

Rows are resampled iid with replacement (same size as the data), the
full estimation pipeline is re-run on every replicate, and percentile
intervals are formed from the replicate values.  Replicates that hit an
empty conditioning cell are dropped and counted rather than imputed,
matching the estimators' hard positivity contract.

The quantile rule is linear interpolation between order statistics: for
sorted replicate values ``v[0..B-1]`` and probability ``p``, with
``h = (B - 1) p``, the quantile is
``v[floor(h)] + (h - floor(h)) * (v[floor(h) + 1] - v[floor(h)])``
(numpy's default "linear" method), fixed so that independent ports agree
bit-for-bit.

Replicates are deterministic functions of ``(seed, replicate index)``
through spawned child streams, so results do not depend on evaluation
order or worker scheduling.
"""

from __future__ import annotations

import warnings
from dataclasses import dataclass
from typing import Callable, Mapping

import numpy as np

from .data import Dataset, Evidence, Query
from .ecdf import CdfModel
from .errors import BootstrapFailureError, InvalidEvidenceError, PositivityError
from . import identify
from .data import KIND_INTERVAL_MEDIATOR, KIND_OUTCOME, KIND_POINT_MEDIATOR


@dataclass(frozen=True)
class BootstrapConfig:
    replicates: int = 1000
    level: float = 0.95
    seed: int = 0

    def __post_init__(self):
        if self.replicates < 2:
            raise ValueError("bootstrap needs at least 2 replicates")
        if not (0.0 < self.level < 1.0):
            raise ValueError("confidence level must be inside (0, 1)")


@dataclass(frozen=True)
class CiResult:
    """Point estimate on the full data plus a percentile interval."""

    point: float
    lower: float
    upper: float
    replicate_mean: float
    degenerate_count: int


def estimator_target(
    kind: str,
    query: Query,
    evidence: Evidence | None = None,
    mediator_monotone: bool = False,
) -> Callable[[Dataset], dict]:
    """Build a ``Dataset -> {quantity: value}`` callable for one estimand
    family.

    ``kind`` is ``"natural"``, ``"cd"``, ``"pn"``, or ``"ps"``.  With
    evidence attached, ``natural`` dispatches on the evidence shape
    (outcome-only or mediator-interval) and ``cd`` requires point-mediator
    evidence.  Undefined proportions (zero total) come back as ``None``.
    """
    if evidence is not None:
        if kind == "cd" and evidence.kind != KIND_POINT_MEDIATOR:
            raise InvalidEvidenceError(
                "controlled-direct evidence must carry an exact mediator value"
            )
        if kind == "natural" and evidence.kind == KIND_POINT_MEDIATOR:
            raise InvalidEvidenceError(
                "natural-family evidence cannot fix the mediator exactly"
            )
        if kind in ("pn", "ps"):
            raise InvalidEvidenceError(f"{kind} family does not accept evidence")

    def run(dataset: Dataset) -> dict:
        model = CdfModel(dataset, query.c_stratum)
        if kind == "natural":
            if evidence is None:
                triple = identify.natural_pns(model, query)
            elif evidence.kind == KIND_OUTCOME:
                triple, _ = identify.natural_pns_with_evidence(model, query, evidence)
            elif evidence.kind == KIND_INTERVAL_MEDIATOR:
                with warnings.catch_warnings():
                    warnings.simplefilter("ignore", identify.MediatorMonotonicityWarning)
                    triple, _ = identify.natural_pns_with_mediator_evidence(
                        model, query, evidence, mediator_monotone=mediator_monotone
                    )
            else:  # pragma: no cover - blocked in the constructor
                raise InvalidEvidenceError(evidence.kind)
            return {
                "t_pns": triple.t_pns,
                "nd_pns": triple.nd_pns,
                "ni_pns": triple.ni_pns,
                "prop_nd": triple.prop_nd,
                "prop_ni": triple.prop_ni,
            }
        if kind == "cd":
            if evidence is None:
                return {"cd_pns": identify.cd_pns(model, query)}
            value, _ = identify.cd_pns_with_evidence(model, query, evidence)
            return {"cd_pns": value}
        if kind == "pn":
            triple = identify.pn_family(model, query)
            return {
                "t_pn": triple.t_pns,
                "nd_pn": triple.nd_pns,
                "ni_pn": triple.ni_pns,
                "prop_nd": triple.prop_nd,
                "prop_ni": triple.prop_ni,
            }
        if kind == "ps":
            triple = identify.ps_family(model, query)
            return {
                "t_ps": triple.t_pns,
                "nd_ps": triple.nd_pns,
                "ni_ps": triple.ni_pns,
                "prop_nd": triple.prop_nd,
                "prop_ni": triple.prop_ni,
            }
        raise ValueError(f"unknown estimator kind {kind!r}")

    return run


def _percentile(values: np.ndarray, p: float) -> float:
    return float(np.quantile(values, p, method="linear"))


def bootstrap_ci(
    dataset: Dataset,
    target: Callable[[Dataset], Mapping],
    cfg: BootstrapConfig,
) -> dict[str, CiResult]:
    """Percentile bootstrap for every quantity produced by ``target``.

    The target must run successfully on the full dataset.  Replicates that
    raise :class:`PositivityError` are dropped and counted; if every
    replicate degenerates, :class:`BootstrapFailureError` is raised.
    Quantities that are ``None`` in a replicate (undefined proportions)
    are excluded from that quantity's percentile set.
    """
    points = dict(target(dataset))
    n = dataset.n
    children = np.random.SeedSequence(cfg.seed).spawn(cfg.replicates)
    samples: dict[str, list[float]] = {k: [] for k in points}
    degenerate = 0
    for child in children:
        rng = np.random.default_rng(child)
        idx = rng.integers(0, n, n)
        try:
            values = target(dataset.take(idx))
        except PositivityError:
            degenerate += 1
            continue
        for key, value in values.items():
            if value is not None:
                samples[key].append(float(value))
    if degenerate == cfg.replicates:
        raise BootstrapFailureError(
            f"all {cfg.replicates} bootstrap replicates hit empty cells"
        )
    alpha = (1.0 - cfg.level) / 2.0
    out: dict[str, CiResult] = {}
    for key, point in points.items():
        reps = np.asarray(samples[key], dtype=np.float64)
        if point is None or reps.size == 0:
            continue
        out[key] = CiResult(
            point=float(point),
            lower=_percentile(reps, alpha),
            upper=_percentile(reps, 1.0 - alpha),
            replicate_mean=float(reps.mean()),
            degenerate_count=degenerate,
        )
    return out
