"""Ground-truth engine for threshold structural models.

A model is three structural nodes (treatment, mediator, outcome), each a
deterministic function of its observed parents and one independent
uniform-[0,1] noise source, plus an optional finite covariate table.
Discrete nodes are encoded as step functions of their uniform source
(thresholds), which makes the noise coupling explicit: the same uniform
draw is shared by a node across all interventions, so counterfactual
quantities are well defined and exactly computable.

The exact path partitions the (mediator-noise, outcome-noise) unit square
into rectangles on which every requested counterfactual is constant and
sums rectangle areas; the Monte Carlo path samples the noise sources.
Observational conditional CDFs implied by a model are exposed through
:class:`AnalyticCdf`, which duck-types the empirical estimator surface so
identification formulas can be evaluated at infinite-sample truth.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Callable, Iterable, Mapping, Sequence

import numpy as np

from .data import ColumnRoles, Dataset, Evidence, Query, KIND_INTERVAL_MEDIATOR, KIND_OUTCOME, KIND_POINT_MEDIATOR, NEG_INF
from .errors import ConditioningError, InvalidEvidenceError, UnsupportedSpecError

_MC_CHUNK = 1 << 17


def sigmoid(t: float) -> float:
    if t >= 0:
        return 1.0 / (1.0 + math.exp(-t))
    z = math.exp(t)
    return z / (1.0 + z)


# -- structural nodes --------------------------------------------------------


class LogisticNode:
    """Binary node: value 1 iff its uniform source is below
    ``sigmoid(intercept + coefs . parents)``."""

    def __init__(self, intercept: float, coefs: Sequence[float] = ()):
        self.intercept = float(intercept)
        self.coefs = tuple(float(c) for c in coefs)

    def prob_one(self, parents: Sequence[float]) -> float:
        if len(parents) != len(self.coefs):
            raise UnsupportedSpecError(
                f"logistic node expects {len(self.coefs)} parents, got {len(parents)}"
            )
        return sigmoid(self.intercept + sum(c * p for c, p in zip(self.coefs, parents)))

    def step(self, parents: Sequence[float]):
        p = self.prob_one(parents)
        if p <= 0.0:
            return (), (0.0,)
        if p >= 1.0:
            return (), (1.0,)
        return (p,), (1.0, 0.0)

    def values(self, parent_cols: np.ndarray, u: np.ndarray) -> np.ndarray:
        t = np.full(u.shape, self.intercept)
        for j, c in enumerate(self.coefs):
            t += c * parent_cols[:, j]
        p = 1.0 / (1.0 + np.exp(-t))
        return (u < p).astype(np.float64)

    def value_levels(self) -> tuple[float, ...]:
        return (0.0, 1.0)


class TableNode:
    """Tabulated step node: for each parent combination, interior cut
    points and the value taken on each resulting sub-interval (values
    listed in increasing-``u`` order)."""

    def __init__(self, cells: Mapping[tuple, tuple[Sequence[float], Sequence[float]]]):
        table = {}
        for parents, (cuts, values) in cells.items():
            key = tuple(float(p) for p in parents)
            cuts = tuple(float(c) for c in cuts)
            values = tuple(float(v) for v in values)
            if len(values) != len(cuts) + 1:
                raise UnsupportedSpecError(
                    f"cell {key!r}: need len(cuts)+1 values, got {len(values)}"
                )
            if any(not (0.0 < c < 1.0) for c in cuts) or any(
                cuts[i] >= cuts[i + 1] for i in range(len(cuts) - 1)
            ):
                raise UnsupportedSpecError(
                    f"cell {key!r}: cuts must be strictly increasing inside (0, 1)"
                )
            table[key] = (cuts, values)
        self._table = table

    def step(self, parents: Sequence[float]):
        key = tuple(float(p) for p in parents)
        try:
            return self._table[key]
        except KeyError:
            raise UnsupportedSpecError(f"no table cell for parents {key!r}") from None

    def values(self, parent_cols: np.ndarray, u: np.ndarray) -> np.ndarray:
        out = np.empty(u.shape, dtype=np.float64)
        if parent_cols.shape[1] == 0:
            cuts, values = self.step(())
            out[:] = np.asarray(values)[np.searchsorted(cuts, u, side="right")]
            return out
        combos = np.unique(parent_cols, axis=0)
        for row in combos:
            mask = np.all(parent_cols == row, axis=1)
            cuts, values = self.step(tuple(row))
            out[mask] = np.asarray(values)[np.searchsorted(cuts, u[mask], side="right")]
        return out

    def value_levels(self) -> tuple[float, ...]:
        levels = sorted({v for _, values in self._table.values() for v in values})
        return tuple(levels)


class FunctionNode:
    """Opaque node ``value = fn(u, *parents)``; usable on the Monte Carlo
    path only (no threshold structure to partition)."""

    def __init__(self, fn: Callable[..., float]):
        self.fn = fn

    def step(self, parents: Sequence[float]):
        raise UnsupportedSpecError(
            "exact computation requires threshold (step-function) nodes"
        )

    def values(self, parent_cols: np.ndarray, u: np.ndarray) -> np.ndarray:
        return np.asarray(
            [self.fn(ui, *row) for ui, row in zip(u, parent_cols)], dtype=np.float64
        )

    def value_levels(self) -> tuple[float, ...]:
        raise UnsupportedSpecError("function nodes do not declare value levels")


def bernoulli_cell(p: float) -> tuple[tuple[float, ...], tuple[float, ...]]:
    """Table cell for a binary node with success probability ``p`` under the
    shared-uniform coupling (value 1 iff u < p)."""
    p = float(p)
    if p <= 0.0:
        return (), (0.0,)
    if p >= 1.0:
        return (), (1.0,)
    return (p,), (1.0, 0.0)


@dataclass(frozen=True)
class ScmSpec:
    """Structural model: treatment, mediator, and outcome nodes plus an
    optional finite covariate distribution ``((c_tuple, weight), ...)``.

    Parent conventions: treatment sees ``(*c,)``, the mediator sees
    ``(x, *c)``, the outcome sees ``(x, m, *c)``.  Instances are immutable
    and shareable.
    """

    treatment: object
    mediator: object
    outcome: object
    covariates: tuple | None = None

    def covariate_support(self) -> tuple[tuple[tuple, float], ...]:
        if self.covariates is None:
            return (((), 1.0),)
        pairs = tuple(
            (tuple(float(v) for v in c), float(w)) for c, w in self.covariates
        )
        total = sum(w for _, w in pairs)
        if total <= 0:
            raise UnsupportedSpecError("covariate weights must be positive")
        return tuple((c, w / total) for c, w in pairs)

    def treatment_levels(self, c: tuple = ()) -> tuple[float, ...]:
        cuts, values = self.treatment.step(tuple(c))
        return tuple(sorted(set(values)))

    def mediator_levels(self, c: tuple = ()) -> tuple[float, ...]:
        levels: set[float] = set()
        for x in self.treatment_levels(c):
            _, values = self.mediator.step((x, *c))
            levels.update(values)
        return tuple(sorted(levels))


def logistic_bernoulli_preset() -> ScmSpec:
    """Built-in demonstration model: fair-coin treatment, then mediator and
    outcome are Bernoulli with logistic thresholds
    sigmoid(1 + 0.5 x) and sigmoid(1 + 0.5 (x + m))."""
    return ScmSpec(
        treatment=LogisticNode(0.0),
        mediator=LogisticNode(1.0, (0.5,)),
        outcome=LogisticNode(1.0, (0.5, 0.5)),
    )


# -- sampling ----------------------------------------------------------------


def _uniform_matrix(seed: int, n: int, cols: int) -> np.ndarray:
    """Uniform draws in fixed-size chunks with per-chunk child streams, so
    the result depends only on (seed, position), not on how the index range
    might be split across workers."""
    ss = np.random.SeedSequence(seed)
    n_chunks = max(1, -(-n // _MC_CHUNK))
    children = ss.spawn(n_chunks)
    parts = []
    remaining = n
    for child in children:
        take = min(_MC_CHUNK, remaining)
        parts.append(np.random.default_rng(child).random((take, cols)))
        remaining -= take
    return np.concatenate(parts, axis=0) if len(parts) > 1 else parts[0]


def _draw_exogenous(scm: ScmSpec, n: int, seed: int):
    u = _uniform_matrix(seed, n, 4)
    support = scm.covariate_support()
    if scm.covariates is None:
        c_matrix = np.empty((n, 0))
    else:
        weights = np.cumsum([w for _, w in support])
        idx = np.searchsorted(weights, u[:, 0], side="right")
        idx = np.minimum(idx, len(support) - 1)
        c_matrix = np.asarray([support[i][0] for i in idx], dtype=np.float64)
        if c_matrix.ndim == 1:
            c_matrix = c_matrix.reshape(n, -1)
    return c_matrix, u[:, 1], u[:, 2], u[:, 3]


def sample_observational(scm: ScmSpec, n: int, seed: int) -> Dataset:
    """Draw ``n`` iid observational rows; deterministic given ``seed``."""
    if n < 1:
        raise ValueError("sample size must be at least 1")
    c_matrix, u_x, u_m, u_y = _draw_exogenous(scm, n, seed)
    x = scm.treatment.values(c_matrix, u_x)
    m = scm.mediator.values(np.column_stack([x, c_matrix]), u_m)
    y = scm.outcome.values(np.column_stack([x, m, c_matrix]), u_y)
    c_names = tuple(f"c{i+1}" for i in range(c_matrix.shape[1]))
    columns = {"x": x, "m": m, "y": y}
    for i, name in enumerate(c_names):
        columns[name] = c_matrix[:, i]
    return Dataset(columns, ColumnRoles("x", "m", "y", c_names))


# -- analytic observational CDFs ---------------------------------------------


def _step_mass(step, pred) -> float:
    # full and empty events are returned exactly, so that genuinely
    # zero-mass evidence is detected as zero rather than as summation dust
    cuts, values = step
    flags = [pred(v) for v in values]
    if all(flags):
        return 1.0
    if not any(flags):
        return 0.0
    edges = (0.0, *cuts, 1.0)
    return sum(edges[i + 1] - edges[i] for i, f in enumerate(flags) if f)


def _step_cdf(step, y: float, strict: bool) -> float:
    if strict:
        return _step_mass(step, lambda v: v < y)
    return _step_mass(step, lambda v: v <= y)


class AnalyticCdf:
    """Infinite-sample observational conditional CDFs of a threshold model,
    exposing the same query surface as the empirical estimator."""

    def __init__(self, scm: ScmSpec, c_stratum: Sequence[float] | None = None):
        c = tuple(float(v) for v in (c_stratum or ()))
        if scm.covariates is not None and not c:
            raise UnsupportedSpecError(
                "analytic CDFs condition on a covariate stratum; pass c_stratum"
            )
        self.scm = scm
        self.c = c

    def _mediator_step(self, x: float):
        return self.scm.mediator.step((float(x), *self.c))

    def _outcome_step(self, x: float, m: float):
        return self.scm.outcome.step((float(x), float(m), *self.c))

    def x_levels(self) -> tuple[float, ...]:
        return self.scm.treatment_levels(self.c)

    def mediator_support(self, x: float) -> tuple[float, ...]:
        _, values = self._mediator_step(x)
        support = sorted({v for v in values if self.mediator_pmf(v, x) > 0.0})
        return tuple(support)

    def mediator_pmf(self, m: float, x: float) -> float:
        return _step_mass(self._mediator_step(x), lambda v: v == float(m))

    def cdf_y_given_xm(self, y: float, x: float, m: float, strict: bool = True) -> float:
        return _step_cdf(self._outcome_step(x, m), y, strict)

    @staticmethod
    def _mixture(terms: list[tuple[float, float]]) -> float:
        """Normalized pmf-weighted mixture of cell CDFs; exact 0.0 / 1.0 at
        the empty and full boundaries regardless of weight rounding."""
        if not terms:
            return 0.0
        if all(c == 1.0 for _, c in terms):
            return 1.0
        if all(c == 0.0 for _, c in terms):
            return 0.0
        num = math.fsum(p * c for p, c in terms)
        den = math.fsum(p for p, _ in terms)
        return num / den

    def cdf_y_given_x(self, y: float, x: float, strict: bool = True) -> float:
        terms = [
            (self.mediator_pmf(m, x), self.cdf_y_given_xm(y, x, m, strict))
            for m in self.mediator_support(x)
        ]
        return self._mixture(terms)

    def joint_cdf_ym_given_x(
        self, y: float, m: float, x: float, strict_y: bool = True, strict_m: bool = True
    ) -> float:
        support = self.mediator_support(x)
        total = 0.0
        included = []
        for level in support:
            inside = level < m if strict_m else level <= m
            if inside:
                included.append(
                    (self.mediator_pmf(level, x), self.cdf_y_given_xm(y, x, level, strict_y))
                )
        if len(included) == len(support):
            return self._mixture(included)
        num = math.fsum(p * c for p, c in included)
        den = math.fsum(self.mediator_pmf(level, x) for level in support)
        return num / den

    def crossworld_cdf(self, y: float, x_base: float, x_alt: float) -> float:
        terms = [
            (self.mediator_pmf(m, x_alt), self.cdf_y_given_xm(y, x_base, m))
            for m in self.mediator_support(x_alt)
        ]
        return self._mixture(terms)

    def outcome_levels(self) -> tuple[float, ...]:
        levels: set[float] = set()
        for x in self.x_levels():
            for m in self.mediator_support(x):
                _, values = self._outcome_step(x, m)
                levels.update(values)
        return tuple(sorted(levels))


def analytic_cdf(scm: ScmSpec, kind: str, c_stratum=None, **args) -> float:
    """Functional dispatcher over :class:`AnalyticCdf` queries.

    ``kind`` is one of ``y|x``, ``y|x&m``, ``m-pmf|x``, ``joint y&m|x``,
    ``crossworld``.
    """
    model = AnalyticCdf(scm, c_stratum)
    if kind == "y|x":
        return model.cdf_y_given_x(args["y"], args["x"], args.get("strict", True))
    if kind == "y|x&m":
        return model.cdf_y_given_xm(
            args["y"], args["x"], args["m"], args.get("strict", True)
        )
    if kind == "m-pmf|x":
        return model.mediator_pmf(args["m"], args["x"])
    if kind == "joint y&m|x":
        return model.joint_cdf_ym_given_x(
            args["y"],
            args["m"],
            args["x"],
            args.get("strict_y", True),
            args.get("strict_m", True),
        )
    if kind == "crossworld":
        return model.crossworld_cdf(args["y"], args["x_base"], args["x_alt"])
    raise UnsupportedSpecError(f"unknown analytic CDF kind {kind!r}")


# -- exact counterfactual measure --------------------------------------------


@dataclass(frozen=True)
class _Rect:
    weight: float
    med: dict          # x level -> mediator value on this rectangle
    out: dict          # (x level, mediator value) -> outcome value


def _square_rects(
    scm: ScmSpec,
    c: tuple,
    x_levels: Iterable[float],
    xm_pairs: Iterable[tuple[float, float]] = (),
) -> list[_Rect]:
    """Rectangle partition of the (u_M, u_Y) unit square on which the
    mediator responses for all ``x_levels`` and the outcome responses for
    every reachable (x, mediator) pair plus ``xm_pairs`` are constant."""
    x_levels = tuple(dict.fromkeys(float(x) for x in x_levels))
    med_steps = {x: scm.mediator.step((x, *c)) for x in x_levels}
    m_cuts = sorted({cut for cuts, _ in med_steps.values() for cut in cuts})
    m_edges = (0.0, *m_cuts, 1.0)

    rects: list[_Rect] = []
    for i in range(len(m_edges) - 1):
        w_m = m_edges[i + 1] - m_edges[i]
        if w_m <= 0.0:
            continue
        mid_m = 0.5 * (m_edges[i] + m_edges[i + 1])
        med = {}
        for x in x_levels:
            cuts, values = med_steps[x]
            med[x] = values[int(np.searchsorted(cuts, mid_m, side="right"))]
        pairs = {(x1, med[x2]) for x1 in x_levels for x2 in x_levels}
        pairs.update((float(a), float(b)) for a, b in xm_pairs)
        out_steps = {pair: scm.outcome.step((pair[0], pair[1], *c)) for pair in pairs}
        y_cuts = sorted({cut for cuts, _ in out_steps.values() for cut in cuts})
        y_edges = (0.0, *y_cuts, 1.0)
        for j in range(len(y_edges) - 1):
            w_y = y_edges[j + 1] - y_edges[j]
            if w_y <= 0.0:
                continue
            mid_y = 0.5 * (y_edges[j] + y_edges[j + 1])
            out = {}
            for pair, (cuts, values) in out_steps.items():
                out[pair] = values[int(np.searchsorted(cuts, mid_y, side="right"))]
            rects.append(_Rect(w_m * w_y, med, out))
    return rects


@dataclass(frozen=True)
class TruthReport:
    """Ground-truth values with their computation method.

    Exact values carry zero standard error; Monte Carlo values carry the
    binomial standard error sqrt(p (1 - p) / n).
    """

    values: dict
    method: str
    n: int | None
    se: dict


def _strata(scm: ScmSpec, q: Query):
    if q.c_stratum is not None:
        return ((tuple(q.c_stratum), 1.0),)
    return scm.covariate_support()


def _xm_pairs_for(q: Query, e: Evidence | None):
    pairs = []
    if q.m_fixed is not None:
        pairs.append((q.x_base, q.m_fixed))
        pairs.append((q.x_alt, q.m_fixed))
    if e is not None and e.kind == KIND_POINT_MEDIATOR:
        pairs.append((e.x_star, e.m_star))
    return pairs


def _x_levels_for(q: Query, e: Evidence | None):
    levels = [q.x_base, q.x_alt]
    if e is not None:
        levels.append(e.x_star)
    return levels


def _counterfactual_flags(rect: _Rect, q: Query):
    y = q.y_threshold
    y_base = rect.out[(q.x_base, rect.med[q.x_base])]
    y_alt = rect.out[(q.x_alt, rect.med[q.x_alt])]
    y_cross = rect.out[(q.x_base, rect.med[q.x_alt])]
    flip = y_base < y <= y_alt
    return {
        "t_pns": flip,
        "nd_pns": flip and y_cross < y,
        "ni_pns": flip and y <= y_cross,
    }


def _cd_flag(rect: _Rect, q: Query) -> bool:
    y = q.y_threshold
    return (
        rect.out[(q.x_base, q.m_fixed)] < y <= rect.out[(q.x_alt, q.m_fixed)]
    )


def _evidence_flag(rect: _Rect, e: Evidence) -> bool:
    if e.kind == KIND_POINT_MEDIATOR:
        return rect.med[e.x_star] == e.m_star and e.interval_y.contains(
            rect.out[(e.x_star, e.m_star)]
        )
    factual_y = rect.out[(e.x_star, rect.med[e.x_star])]
    if e.kind == KIND_INTERVAL_MEDIATOR:
        return e.interval_m.contains(rect.med[e.x_star]) and e.interval_y.contains(
            factual_y
        )
    return e.interval_y.contains(factual_y)


def truth_pns(
    scm: ScmSpec, q: Query, method: str = "exact", n: int = 100_000, seed: int = 0
) -> TruthReport:
    """Definitional total/direct/indirect flip probabilities (and the
    controlled-direct one when ``m_fixed`` is set), computed from the
    counterfactual events on shared noise."""
    names = ["t_pns", "nd_pns", "ni_pns"] + (["cd_pns"] if q.m_fixed is not None else [])
    if method == "exact":
        totals = dict.fromkeys(names, 0.0)
        for c, w_c in _strata(scm, q):
            rects = _square_rects(scm, c, _x_levels_for(q, None), _xm_pairs_for(q, None))
            for rect in rects:
                flags = _counterfactual_flags(rect, q)
                if q.m_fixed is not None:
                    flags["cd_pns"] = _cd_flag(rect, q)
                for name in names:
                    if flags[name]:
                        totals[name] += w_c * rect.weight
        return TruthReport(totals, "exact", None, {k: 0.0 for k in totals})
    if method != "mc":
        raise UnsupportedSpecError(f"unknown method {method!r}")
    cols = _mc_counterfactuals(scm, q, None, n, seed)
    y = q.y_threshold
    flip = (cols["y_base"] < y) & (y <= cols["y_alt"])
    ind = {
        "t_pns": flip,
        "nd_pns": flip & (cols["y_cross"] < y),
        "ni_pns": flip & (y <= cols["y_cross"]),
    }
    if q.m_fixed is not None:
        ind["cd_pns"] = (cols["y_base_m"] < y) & (y <= cols["y_alt_m"])
    values = {k: float(np.mean(v)) for k, v in ind.items()}
    se = {k: math.sqrt(max(p * (1 - p), 0.0) / n) for k, p in values.items()}
    return TruthReport(values, "mc", n, se)


def _mc_counterfactuals(scm, q, e, n, seed):
    """Vector counterfactual draws on shared noise (marginal over covariates
    unless the query fixes a stratum)."""
    c_matrix, _, u_m, u_y = _draw_exogenous(scm, n, seed)
    if q.c_stratum is not None:
        c_matrix = np.tile(np.asarray(q.c_stratum, dtype=np.float64), (n, 1))
    def med(x):
        xs = np.full(n, float(x))
        return scm.mediator.values(np.column_stack([xs, c_matrix]), u_m)
    def outc(x, m_col):
        xs = np.full(n, float(x))
        return scm.outcome.values(np.column_stack([xs, m_col, c_matrix]), u_y)
    m_base, m_alt = med(q.x_base), med(q.x_alt)
    cols = {
        "m_base": m_base,
        "m_alt": m_alt,
        "y_base": outc(q.x_base, m_base),
        "y_alt": outc(q.x_alt, m_alt),
        "y_cross": outc(q.x_base, m_alt),
        "y_nde": outc(q.x_alt, m_base),
    }
    if q.m_fixed is not None:
        fixed = np.full(n, q.m_fixed)
        cols["y_base_m"] = outc(q.x_base, fixed)
        cols["y_alt_m"] = outc(q.x_alt, fixed)
    if e is not None:
        m_star = med(e.x_star)
        cols["m_star"] = m_star
        cols["y_star"] = outc(e.x_star, m_star)
        if e.kind == KIND_POINT_MEDIATOR:
            cols["y_star_cell"] = outc(e.x_star, np.full(n, e.m_star))
    return cols


def _limit_indicators(scm: ScmSpec, q: Query, e: Evidence) -> dict:
    """Zero-mass evidence: value of the conditional quantities in the limit
    construction, i.e. the counterfactual event evaluated at the noise
    threshold that the evidence interval collapses onto.  Region measures
    are interventional (computed on the noise partition, not through
    observational conditionals); the boundary point groups with the closed
    side, matching the half-open interval convention."""
    strata = _strata(scm, q)
    if e.kind == KIND_POINT_MEDIATOR:
        # one-dimensional: everything lives on the outcome-noise axis
        a = b = low = 0.0
        for c, w_c in strata:
            a += w_c * _step_cdf(
                scm.outcome.step((q.x_base, q.m_fixed, *c)), q.y_threshold, True
            )
            b += w_c * _step_cdf(
                scm.outcome.step((q.x_alt, q.m_fixed, *c)), q.y_threshold, True
            )
            if e.interval_y.lower != NEG_INF:
                low += w_c * _step_cdf(
                    scm.outcome.step((e.x_star, e.m_star, *c)), e.interval_y.lower, True
                )
        return {"cd_pns": 1.0 if (b <= low < a) else 0.0}

    a = b = r = low = 0.0
    for c, w_c in strata:
        rects = _square_rects(scm, c, _x_levels_for(q, e), _xm_pairs_for(q, e))
        for rect in rects:
            y_base = rect.out[(q.x_base, rect.med[q.x_base])]
            y_alt = rect.out[(q.x_alt, rect.med[q.x_alt])]
            y_cross = rect.out[(q.x_base, rect.med[q.x_alt])]
            w = w_c * rect.weight
            if y_base < q.y_threshold:
                a += w
            if y_alt < q.y_threshold:
                b += w
            if y_cross < q.y_threshold:
                r += w
            factual_y = rect.out[(e.x_star, rect.med[e.x_star])]
            if e.kind == KIND_OUTCOME:
                if e.interval_y.lower != NEG_INF and factual_y < e.interval_y.lower:
                    low += w
            else:
                if (
                    e.interval_y.lower != NEG_INF
                    and e.interval_m.lower != NEG_INF
                    and factual_y < e.interval_y.lower
                    and rect.med[e.x_star] < e.interval_m.lower
                ):
                    low += w
    inside = b <= low < a
    return {
        "t_pns": 1.0 if inside else 0.0,
        "nd_pns": 1.0 if (inside and low < r) else 0.0,
        "ni_pns": 1.0 if (inside and r <= low) else 0.0,
    }


def truth_with_evidence(
    scm: ScmSpec,
    q: Query,
    e: Evidence,
    method: str = "exact",
    n: int = 100_000,
    seed: int = 0,
    degenerate: str = "error",
) -> TruthReport:
    """Definitional conditional flip probabilities given a factual evidence
    event.

    With zero-probability evidence the conditional is undefined;
    ``degenerate="error"`` raises :class:`ConditioningError`, while
    ``degenerate="threshold-limit"`` returns the limit-construction values
    (see :func:`_limit_indicators`).
    """
    if e.kind == KIND_POINT_MEDIATOR and q.m_fixed is None:
        raise InvalidEvidenceError("point-mediator evidence requires m_fixed")
    names = (
        ["cd_pns"]
        if e.kind == KIND_POINT_MEDIATOR
        else ["t_pns", "nd_pns", "ni_pns"]
    )
    if method == "exact":
        num = dict.fromkeys(names, 0.0)
        den = 0.0
        for c, w_c in _strata(scm, q):
            rects = _square_rects(scm, c, _x_levels_for(q, e), _xm_pairs_for(q, e))
            for rect in rects:
                if not _evidence_flag(rect, e):
                    continue
                w = w_c * rect.weight
                den += w
                if e.kind == KIND_POINT_MEDIATOR:
                    flags = {"cd_pns": _cd_flag(rect, q)}
                else:
                    flags = _counterfactual_flags(rect, q)
                for name in names:
                    if flags[name]:
                        num[name] += w
        if den == 0.0:
            if degenerate == "threshold-limit":
                values = _limit_indicators(scm, q, e)
                return TruthReport(values, "exact", None, {k: 0.0 for k in values})
            raise ConditioningError("evidence event has zero probability")
        values = {k: v / den for k, v in num.items()}
        return TruthReport(values, "exact", None, {k: 0.0 for k in values})
    if method != "mc":
        raise UnsupportedSpecError(f"unknown method {method!r}")
    cols = _mc_counterfactuals(scm, q, e, n, seed)
    if e.kind == KIND_POINT_MEDIATOR:
        ev = (cols["m_star"] == e.m_star) & np.fromiter(
            (e.interval_y.contains(v) for v in cols["y_star_cell"]), bool, n
        )
    else:
        ev = np.fromiter((e.interval_y.contains(v) for v in cols["y_star"]), bool, n)
        if e.kind == KIND_INTERVAL_MEDIATOR:
            ev &= np.fromiter(
                (e.interval_m.contains(v) for v in cols["m_star"]), bool, n
            )
    k = int(np.count_nonzero(ev))
    if k == 0:
        raise ConditioningError("no Monte Carlo draws satisfy the evidence event")
    y = q.y_threshold
    if e.kind == KIND_POINT_MEDIATOR:
        ind = {"cd_pns": (cols["y_base_m"] < y) & (y <= cols["y_alt_m"])}
    else:
        flip = (cols["y_base"] < y) & (y <= cols["y_alt"])
        ind = {
            "t_pns": flip,
            "nd_pns": flip & (cols["y_cross"] < y),
            "ni_pns": flip & (y <= cols["y_cross"]),
        }
    values = {name: float(np.mean(v[ev])) for name, v in ind.items()}
    se = {name: math.sqrt(max(p * (1 - p), 0.0) / k) for name, p in values.items()}
    return TruthReport(values, "mc", k, se)


def truth_effects(
    scm: ScmSpec, q: Query, method: str = "exact", n: int = 100_000, seed: int = 0
) -> TruthReport:
    """Mean-scale diagnostics: total, controlled-direct (when ``m_fixed``
    is set), natural direct, and natural indirect effects.  The total
    effect decomposes as te(x', x) = nde(x', x) - nie(x, x')."""
    if method == "exact":
        means = {"y_base": 0.0, "y_alt": 0.0, "y_nde": 0.0, "y_cross": 0.0,
                 "y_base_m": 0.0, "y_alt_m": 0.0}
        for c, w_c in _strata(scm, q):
            rects = _square_rects(scm, c, _x_levels_for(q, None), _xm_pairs_for(q, None))
            for rect in rects:
                w = w_c * rect.weight
                means["y_base"] += w * rect.out[(q.x_base, rect.med[q.x_base])]
                means["y_alt"] += w * rect.out[(q.x_alt, rect.med[q.x_alt])]
                means["y_nde"] += w * rect.out[(q.x_alt, rect.med[q.x_base])]
                means["y_cross"] += w * rect.out[(q.x_base, rect.med[q.x_alt])]
                if q.m_fixed is not None:
                    means["y_base_m"] += w * rect.out[(q.x_base, q.m_fixed)]
                    means["y_alt_m"] += w * rect.out[(q.x_alt, q.m_fixed)]
        n_used = None
        se = {}
    elif method == "mc":
        cols = _mc_counterfactuals(scm, q, None, n, seed)
        diffs = {
            "te": cols["y_alt"] - cols["y_base"],
            "nde": cols["y_nde"] - cols["y_base"],
            "nie": cols["y_cross"] - cols["y_base"],
        }
        if q.m_fixed is not None:
            diffs["cde"] = cols["y_alt_m"] - cols["y_base_m"]
        values = {k: float(np.mean(v)) for k, v in diffs.items()}
        se = {k: float(np.std(v) / math.sqrt(n)) for k, v in diffs.items()}
        return TruthReport(values, "mc", n, se)
    else:
        raise UnsupportedSpecError(f"unknown method {method!r}")

    values = {
        "te": means["y_alt"] - means["y_base"],
        "nde": means["y_nde"] - means["y_base"],
        "nie": means["y_cross"] - means["y_base"],
    }
    if q.m_fixed is not None:
        values["cde"] = means["y_alt_m"] - means["y_base_m"]
    return TruthReport(values, "exact", n_used, se)


# -- monotone-coupling diagnostics --------------------------------------------


def _step_regions(step, thresholds) -> dict[float, tuple[tuple[float, float], ...]]:
    """For each threshold y, the u-intervals where the step value is < y."""
    cuts, values = step
    edges = (0.0, *cuts, 1.0)
    out = {}
    for y in thresholds:
        ivs = []
        for i, v in enumerate(values):
            if v < y:
                lo, hi = edges[i], edges[i + 1]
                if ivs and ivs[-1][1] == lo:
                    ivs[-1] = (ivs[-1][0], hi)
                else:
                    ivs.append((lo, hi))
        out[y] = tuple(ivs)
    return out


def _interval_measure(ivs) -> float:
    return sum(hi - lo for lo, hi in ivs)


def _interval_subtract_measure(a, b) -> float:
    """Measure of set difference a - b for sorted disjoint interval lists."""
    total = 0.0
    for lo, hi in a:
        cursor = lo
        for blo, bhi in b:
            if bhi <= cursor or blo >= hi:
                continue
            if blo > cursor:
                total += blo - cursor
            cursor = max(cursor, min(bhi, hi))
            if cursor >= hi:
                break
        if cursor < hi:
            total += hi - cursor
    return total


_TOL = 1e-12


@dataclass(frozen=True)
class MonotonicityReport:
    """Crossing diagnostics for the shared-noise coupling.

    Each violation records a pair of counterfactual sub-level regions with
    positive measure on both set differences, i.e. a two-sided crossing
    that breaks the one-sidedness the identification formulas rely on.
    The compound check covers every pair of (treatment-of-outcome,
    treatment-of-mediator, threshold) regions, including unequal
    thresholds, so a passing model supports the with-evidence formulas as
    well."""

    outcome_violations: tuple
    compound_violations: tuple
    mediator_violations: tuple

    @property
    def outcome_ok(self) -> bool:
        return not self.outcome_violations

    @property
    def compound_ok(self) -> bool:
        return not self.compound_violations

    @property
    def mediator_ok(self) -> bool:
        return not self.mediator_violations

    @property
    def ok(self) -> bool:
        return self.outcome_ok and self.compound_ok


def check_monotonicity(scm: ScmSpec) -> MonotonicityReport:
    """Exhaustively compare counterfactual sub-level regions over the
    threshold partition and report every two-sided crossing."""
    outcome_v = []
    compound_v = []
    mediator_v = []
    for c, _w in scm.covariate_support():
        x_levels = scm.treatment_levels(c)
        m_levels = scm.mediator_levels(c)

        # outcome thresholds: distinct values across all cells
        y_values: set[float] = set()
        out_steps = {}
        for x in x_levels:
            for m in m_levels:
                step = scm.outcome.step((x, m, *c))
                out_steps[(x, m)] = step
                y_values.update(step[1])
        y_grid = tuple(sorted(y_values))

        cell_regions = {
            key: _step_regions(step, y_grid) for key, step in out_steps.items()
        }
        tagged = [
            (key, y, cell_regions[key][y]) for key in out_steps for y in y_grid
        ]
        for i in range(len(tagged)):
            for j in range(i + 1, len(tagged)):
                k1, y1, r1 = tagged[i]
                k2, y2, r2 = tagged[j]
                d1 = _interval_subtract_measure(r1, r2)
                d2 = _interval_subtract_measure(r2, r1)
                if d1 > _TOL and d2 > _TOL:
                    outcome_v.append((c, (k1, y1), (k2, y2), d1, d2))

        # compound regions on the square, expressed on shared stripes
        med_steps = {x: scm.mediator.step((x, *c)) for x in x_levels}
        m_cuts = sorted({cut for cuts, _ in med_steps.values() for cut in cuts})
        m_edges = (0.0, *m_cuts, 1.0)
        stripes = []
        for i in range(len(m_edges) - 1):
            mid = 0.5 * (m_edges[i] + m_edges[i + 1])
            med = {
                x: med_steps[x][1][int(np.searchsorted(med_steps[x][0], mid, side="right"))]
                for x in x_levels
            }
            stripes.append((m_edges[i + 1] - m_edges[i], med))

        def compound_region(x_out, x_med, y):
            return [cell_regions[(x_out, med[x_med])][y] for _w2, med in stripes]

        ctagged = [
            ((x1, x2), y, compound_region(x1, x2, y))
            for x1 in x_levels
            for x2 in x_levels
            for y in y_grid
        ]
        for i in range(len(ctagged)):
            for j in range(i + 1, len(ctagged)):
                k1, y1, r1 = ctagged[i]
                k2, y2, r2 = ctagged[j]
                d1 = d2 = 0.0
                for (w_s, _), iv1, iv2 in zip(stripes, r1, r2):
                    d1 += w_s * _interval_subtract_measure(iv1, iv2)
                    d2 += w_s * _interval_subtract_measure(iv2, iv1)
                if d1 > _TOL and d2 > _TOL:
                    compound_v.append((c, (k1, y1), (k2, y2), d1, d2))

        # mediator response regions (relevant to joint-evidence use)
        m_grid = tuple(sorted(m_levels))
        med_regions = {
            x: _step_regions(med_steps[x], m_grid) for x in x_levels
        }
        mtagged = [(x, m, med_regions[x][m]) for x in x_levels for m in m_grid]
        for i in range(len(mtagged)):
            for j in range(i + 1, len(mtagged)):
                k1, m1, r1 = mtagged[i]
                k2, m2, r2 = mtagged[j]
                d1 = _interval_subtract_measure(r1, r2)
                d2 = _interval_subtract_measure(r2, r1)
                if d1 > _TOL and d2 > _TOL:
                    mediator_v.append((c, (k1, m1), (k2, m2), d1, d2))

    return MonotonicityReport(tuple(outcome_v), tuple(compound_v), tuple(mediator_v))
