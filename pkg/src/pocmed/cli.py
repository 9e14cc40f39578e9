"""Command-line front end.

Commands:

* ``estimate``: probabilities-of-causation families from a CSV table,
  with bootstrap confidence intervals.
* ``simulate``: draw an observational CSV from a structural model
  (built-in preset or config document).
* ``verify``: self-contained check of the estimator stack against exact
  model truths and recorded reference values; exit 1 on any failed row.
* ``sweep``: evaluate the measures over a grid (outcome thresholds,
  covariate values, or a mediator threshold parameter) and emit
  plot-ready rows plus an optional SVG chart.

Exit codes: 0 success, 1 verification failure, 2 usage or data error.
A config document (JSON) may carry the same settings as the flags; flags
override the document.  Identical inputs and seed produce byte-identical
outputs.
"""

from __future__ import annotations

import argparse
import json
import sys
import warnings

import numpy as np

from . import __version__, identify
from .bootstrap import BootstrapConfig, bootstrap_ci, estimator_target
from .chart import render_line_chart
from .data import (
    ColumnRoles,
    Dataset,
    Evidence,
    Interval,
    Query,
    load_dataset,
    stratify,
)
from .ecdf import CdfModel
from .errors import PocError, PositivityError
from .identify import MediatorMonotonicityWarning
from .oracle import (
    AnalyticCdf,
    LogisticNode,
    ScmSpec,
    TableNode,
    logistic_bernoulli_preset,
    sample_observational,
)
from .report import (
    new_report,
    render_estimate_table,
    render_json,
    render_verify_table,
)
from . import verification

EXIT_OK = 0
EXIT_VERIFY_FAIL = 1
EXIT_USAGE = 2

_PRESETS = {"logistic-bernoulli": logistic_bernoulli_preset}
_FAMILY_ORDER = ("pns", "cd", "pn", "ps")


def _parse_interval(text: str, upper_closed: bool) -> Interval:
    parts = [p.strip() for p in text.split(",")]
    if len(parts) != 2:
        raise PocError(f"interval must be 'L,U', got {text!r}")
    try:
        lo, hi = float(parts[0]), float(parts[1])
    except ValueError:
        raise PocError(f"cannot parse interval endpoints {text!r}") from None
    return Interval(lo, hi, upper_closed=upper_closed)


def _parse_node(spec: dict):
    if "logistic" in spec:
        body = spec["logistic"]
        return LogisticNode(body["intercept"], body.get("coefs", ()))
    if "table" in spec:
        cells = {
            tuple(cell.get("parents", ())): (cell["cuts"], cell["values"])
            for cell in spec["table"]
        }
        return TableNode(cells)
    raise PocError(f"unknown node spec {sorted(spec)!r}")


def _parse_scm(doc: dict) -> ScmSpec:
    body = doc["scm"] if "scm" in doc else doc
    covariates = None
    if body.get("covariates"):
        covariates = tuple(
            (tuple(entry["values"]), float(entry["weight"]))
            for entry in body["covariates"]
        )
    return ScmSpec(
        treatment=_parse_node(body["treatment"]),
        mediator=_parse_node(body["mediator"]),
        outcome=_parse_node(body["outcome"]),
        covariates=covariates,
    )


def _load_config(path: str | None) -> dict:
    if not path:
        return {}
    with open(path, "r", encoding="utf-8") as fh:
        return json.load(fh)


def _resolve_scm(args, config: dict) -> ScmSpec:
    if getattr(args, "preset", None):
        if args.preset not in _PRESETS:
            raise PocError(
                f"unknown preset {args.preset!r}; available: {sorted(_PRESETS)}"
            )
        return _PRESETS[args.preset]()
    if "scm" in config or {"treatment", "mediator", "outcome"} <= set(config):
        return _parse_scm(config)
    raise PocError("no structural model given (use --preset or a config document)")


def _roles_from(args, config: dict) -> ColumnRoles:
    schema = dict(config.get("schema", {}))
    x = args.x_col or schema.get("x", "x")
    m = args.m_col or schema.get("m", "m")
    y = args.y_col or schema.get("y", "y")
    if args.c_cols is not None:
        c = tuple(s for s in args.c_cols.split(",") if s)
    else:
        c = tuple(schema.get("c", ()))
    return ColumnRoles(x, m, y, c)


def _evidence_from_spec(spec: dict | None):
    """Split one evidence description into the per-family evidence records:
    the natural family conditions on (x*, Y interval[, M interval]); the
    controlled-direct family additionally needs the exact mediator value."""
    if not spec or spec.get("x_star") is None:
        return None, None
    x_star = float(spec["x_star"])
    iy = spec.get("y_interval")
    interval_y = (
        Interval(iy[0], iy[1], upper_closed=bool(spec.get("y_upper_closed", False)))
        if iy
        else Interval.full()
    )
    im = spec.get("m_interval")
    interval_m = (
        Interval(im[0], im[1], upper_closed=bool(spec.get("m_upper_closed", False)))
        if im
        else None
    )
    natural = Evidence(x_star=x_star, interval_y=interval_y, interval_m=interval_m)
    cd = None
    if spec.get("m_star") is not None:
        cd = Evidence(x_star=x_star, interval_y=interval_y, m_star=float(spec["m_star"]))
    return natural, cd


def _queries_from(args, config: dict) -> list[dict]:
    queries = list(config.get("queries", ()))
    flag_query = {}
    if args.x_base is not None or args.x_alt is not None or args.y is not None:
        if args.x_base is None or args.x_alt is None or args.y is None:
            raise PocError("a query needs --x-base, --x-alt, and --y together")
        flag_query = {
            "x_base": args.x_base,
            "x_alt": args.x_alt,
            "y": args.y,
        }
        if args.m_fixed is not None:
            flag_query["m_fixed"] = args.m_fixed
        if args.stratum:
            flag_query["stratum"] = [float(v) for v in args.stratum.split(",")]
        evidence = {}
        if args.evidence_x is not None:
            evidence["x_star"] = args.evidence_x
            if args.y_interval:
                iv = _parse_interval(args.y_interval, args.y_upper_closed)
                evidence["y_interval"] = [iv.lower, iv.upper]
                evidence["y_upper_closed"] = iv.upper_closed
            if args.evidence_m is not None:
                evidence["m_star"] = args.evidence_m
            if args.m_interval:
                iv = _parse_interval(args.m_interval, args.m_upper_closed)
                evidence["m_interval"] = [iv.lower, iv.upper]
                evidence["m_upper_closed"] = iv.upper_closed
        if evidence:
            flag_query["evidence"] = evidence
        queries.append(flag_query)
    if not queries:
        raise PocError("no queries: pass --x-base/--x-alt/--y or a config document")
    return queries


def _query_from_spec(spec: dict) -> tuple[Query, Evidence | None, Evidence | None]:
    natural_e, cd_e = _evidence_from_spec(spec.get("evidence"))
    q = Query(
        x_base=spec["x_base"],
        x_alt=spec["x_alt"],
        y_threshold=spec["y"],
        m_fixed=spec.get("m_fixed"),
        c_stratum=tuple(spec["stratum"]) if spec.get("stratum") else None,
        evidence=natural_e,
    )
    return q, natural_e, cd_e


def _validate_query(dataset: Dataset, q: Query) -> None:
    data = stratify(dataset, q.c_stratum)
    support = set(np.unique(data.x))
    for level, name in ((q.x_base, "x_base"), (q.x_alt, "x_alt")):
        if level not in support:
            raise PositivityError(
                f"{name} level {level!r} not present in the treatment support"
            )


def _echo_query(q: Query, natural_e, cd_e) -> dict:
    echo = {
        "x_base": q.x_base,
        "x_alt": q.x_alt,
        "y_threshold": q.y_threshold,
        "m_fixed": q.m_fixed,
        "c_stratum": list(q.c_stratum) if q.c_stratum else None,
        "evidence": None,
    }
    if natural_e is not None:
        echo["evidence"] = {
            "x_star": natural_e.x_star,
            "y_interval": [natural_e.interval_y.lower, natural_e.interval_y.upper],
            "y_upper_closed": natural_e.interval_y.upper_closed,
            "m_star": cd_e.m_star if cd_e is not None else None,
            "m_interval": (
                [natural_e.interval_m.lower, natural_e.interval_m.upper]
                if natural_e.interval_m is not None
                else None
            ),
            "m_upper_closed": (
                natural_e.interval_m.upper_closed
                if natural_e.interval_m is not None
                else None
            ),
        }
    return echo


def _family_case_flag(model, q, family, natural_e, cd_e, mediator_monotone):
    if family == "pns":
        if natural_e is None:
            return identify.natural_pns(model, q).case_flag
        if natural_e.kind == "interval-mediator":
            triple, _ = identify.natural_pns_with_mediator_evidence(
                model, q, natural_e, mediator_monotone=mediator_monotone
            )
        else:
            triple, _ = identify.natural_pns_with_evidence(model, q, natural_e)
        return triple.case_flag
    if family == "cd" and cd_e is not None:
        _, terms = identify.cd_pns_with_evidence(model, q, cd_e)
        return terms.case_flag
    if family == "pn":
        return identify.pn_family(model, q).case_flag
    if family == "ps":
        return identify.ps_family(model, q).case_flag
    return None


def _estimate_block(dataset, q, natural_e, cd_e, families, boot_cfg, mediator_monotone):
    model = CdfModel(dataset, q.c_stratum)
    block = {"query": _echo_query(q, natural_e, cd_e), "families": {}, "warnings": []}
    for family in _FAMILY_ORDER:
        if family not in families:
            continue
        if family == "cd" and q.m_fixed is None:
            continue
        evidence = None
        if family == "pns":
            evidence = natural_e
        elif family == "cd":
            evidence = cd_e
        kind = "natural" if family == "pns" else family
        target = estimator_target(
            kind, q, evidence=evidence, mediator_monotone=mediator_monotone
        )
        with warnings.catch_warnings(record=True) as caught:
            warnings.simplefilter("always", MediatorMonotonicityWarning)
            case_flag = _family_case_flag(
                model, q, family, natural_e, cd_e, mediator_monotone
            )
            if boot_cfg is not None:
                cis = bootstrap_ci(dataset, target, boot_cfg)
                quantities = {
                    key: {
                        "point": ci.point,
                        "ci_lower": ci.lower,
                        "ci_upper": ci.upper,
                        "replicate_mean": ci.replicate_mean,
                        "degenerate_count": ci.degenerate_count,
                    }
                    for key, ci in cis.items()
                }
            else:
                quantities = {
                    key: {"point": value, "ci_lower": None, "ci_upper": None}
                    for key, value in target(dataset).items()
                    if value is not None
                }
        for w in caught:
            message = str(w.message)
            if message not in block["warnings"]:
                block["warnings"].append(message)
        block["families"][family] = {"case_flag": case_flag, "quantities": quantities}
    return block


def cmd_estimate(args) -> int:
    config = _load_config(args.config)
    input_path = args.input or config.get("input")
    if not input_path:
        raise PocError("no input table (use --input or the config document)")
    roles = _roles_from(args, config)
    dataset = load_dataset(input_path, roles)

    families = tuple(
        (args.families or ",".join(config.get("families", ["pns", "cd"]))).split(",")
    )
    for family in families:
        if family not in _FAMILY_ORDER:
            raise PocError(f"unknown family {family!r}; choose from {_FAMILY_ORDER}")
    seed = args.seed if args.seed is not None else int(config.get("seed", 0))
    boot = dict(config.get("bootstrap", {}))
    replicates = args.replicates if args.replicates is not None else int(
        boot.get("replicates", 1000)
    )
    level = args.level if args.level is not None else float(boot.get("level", 0.95))
    mediator_monotone = bool(
        args.assume_mediator_monotone or config.get("assume_mediator_monotone", False)
    )

    specs = _queries_from(args, config)
    parsed = [_query_from_spec(spec) for spec in specs]
    for q, _, _ in parsed:
        _validate_query(dataset, q)

    report = new_report(str(input_path), dataset.n, seed)
    for qi, (q, natural_e, cd_e) in enumerate(parsed):
        boot_cfg = None
        if replicates >= 2:
            block_seed = (seed * 1_000_003 + qi * 97) % (2**63)
            boot_cfg = BootstrapConfig(replicates=replicates, level=level, seed=block_seed)
        block = _estimate_block(
            dataset, q, natural_e, cd_e, families, boot_cfg, mediator_monotone
        )
        report["queries"].append(block)

    if args.out:
        with open(args.out, "w", encoding="utf-8") as fh:
            fh.write(render_json(report))
    if args.format == "json":
        sys.stdout.write(render_json(report))
    else:
        sys.stdout.write(render_estimate_table(report))
    return EXIT_OK


def cmd_simulate(args) -> int:
    config = _load_config(args.config)
    scm = _resolve_scm(args, config)
    if args.n is None or args.n < 1:
        raise PocError("--n must be a positive row count")
    dataset = sample_observational(scm, args.n, seed=args.seed or 0)
    text = dataset.to_csv()
    if args.out:
        with open(args.out, "w", encoding="utf-8") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)
    return EXIT_OK


def cmd_verify(args) -> int:
    seed = args.seed or 0
    if args.quick:
        sizes = (100, 1000)
        replicates = 200
        n_eq, n_dec = 10, 50
    else:
        sizes = (100, 1000, 10000)
        replicates = args.replicates if args.replicates is not None else 1000
        n_eq = args.scms if args.scms is not None else 50
        n_dec = args.decomposition if args.decomposition is not None else 200
    rows = []
    rows.extend(verification.exact_truth_rows())
    rows.extend(verification.estimation_rows(seed=seed, replicates=replicates, sizes=sizes))
    rows.extend(verification.suite_rows(n_equivalence=n_eq, n_decomposition=n_dec, seed=seed))
    rows.extend(verification.exclusion_notes())
    table = render_verify_table(rows, f"pocmed {__version__} verification (seed {seed})")
    sys.stdout.write(table)
    if args.out:
        payload = {
            "version": __version__,
            "seed": seed,
            "rows": [
                {"name": r.name, "passed": r.passed, "detail": r.detail} for r in rows
            ],
        }
        with open(args.out, "w", encoding="utf-8") as fh:
            fh.write(render_json(payload))
    failed = [r for r in rows if r.passed is False]
    return EXIT_VERIFY_FAIL if failed else EXIT_OK


def _sweep_grid(args, levels) -> list[float]:
    if args.grid:
        return [float(v) for v in args.grid.split(",")]
    grid = sorted(set(levels))
    mids = [0.5 * (a + b) for a, b in zip(grid, grid[1:])]
    return sorted(grid[1:] + mids)


def cmd_sweep(args) -> int:
    config = _load_config(args.config)
    if args.x_base is None or args.x_alt is None:
        raise PocError("sweep needs --x-base and --x-alt")
    rows = []
    warnings_list = []

    def measure(model, y_value, stratum=None):
        q = Query(
            x_base=args.x_base,
            x_alt=args.x_alt,
            y_threshold=y_value,
            m_fixed=args.m_fixed,
            c_stratum=stratum,
        )
        triple = identify.natural_pns(model, q)
        out = {
            "t_pns": triple.t_pns,
            "nd_pns": triple.nd_pns,
            "ni_pns": triple.ni_pns,
            "cdf_base": model.cdf_y_given_x(q.y_threshold, q.x_base),
            "cdf_alt": model.cdf_y_given_x(q.y_threshold, q.x_alt),
            "crossworld": model.crossworld_cdf(q.y_threshold, q.x_base, q.x_alt),
        }
        if args.m_fixed is not None:
            out["cd_pns"] = identify.cd_pns(model, q)
        return out

    if args.input:
        roles = _roles_from(args, config)
        dataset = load_dataset(args.input, roles)
        if args.grid_over == "y":
            grid = (
                [float(v) for v in args.grid.split(",")]
                if args.grid
                else _sweep_grid(args, np.unique(dataset.y).tolist())
            )
            model = CdfModel(dataset)
            points = [(v, lambda v=v: measure(model, v)) for v in grid]
        elif args.grid_over == "covariate":
            if not roles.c:
                raise PocError("covariate sweep needs covariate columns (--c-cols)")
            if args.y is None:
                raise PocError("covariate sweep needs --y")
            grid = (
                [float(v) for v in args.grid.split(",")]
                if args.grid
                else sorted(np.unique(dataset.column(roles.c[0])).tolist())
            )
            points = [
                (v, lambda v=v: measure(CdfModel(dataset, (v,)), args.y, (v,)))
                for v in grid
            ]
        else:
            raise PocError("empirical sweeps support --grid-over y or covariate")
    else:
        scm = _resolve_scm(args, config)
        if args.grid_over == "y":
            model = AnalyticCdf(scm)
            grid = (
                [float(v) for v in args.grid.split(",")]
                if args.grid
                else _sweep_grid(args, list(model.outcome_levels()))
            )
            points = [(v, lambda v=v: measure(model, v)) for v in grid]
        elif args.grid_over == "covariate":
            if scm.covariates is None:
                raise PocError("the model has no covariates to sweep over")
            if args.y is None:
                raise PocError("covariate sweep needs --y")
            grid = [c[0] for c, _ in scm.covariate_support()]
            points = [
                (v, lambda v=v: measure(AnalyticCdf(scm, (v,)), args.y, None))
                for v in grid
            ]
        elif args.grid_over == "mediator-intercept":
            if args.y is None:
                raise PocError("parameter sweep needs --y")
            if not isinstance(scm.mediator, LogisticNode):
                raise PocError("mediator-intercept sweep needs a logistic mediator node")
            if not args.grid:
                raise PocError("parameter sweep needs --grid with explicit values")
            grid = [float(v) for v in args.grid.split(",")]

            def model_at(v):
                shifted = ScmSpec(
                    treatment=scm.treatment,
                    mediator=LogisticNode(v, scm.mediator.coefs),
                    outcome=scm.outcome,
                    covariates=scm.covariates,
                )
                return AnalyticCdf(shifted)

            points = [(v, lambda v=v: measure(model_at(v), args.y)) for v in grid]
        else:
            raise PocError(f"unknown --grid-over {args.grid_over!r}")

    series: dict[str, list[float]] = {"t_pns": [], "nd_pns": [], "ni_pns": []}
    xs = []
    for value, compute in points:
        xs.append(value)
        try:
            quantities = compute()
            status = "ok"
        except PositivityError as exc:
            quantities = {}
            status = f"positivity: {exc}"
            warnings_list.append(f"grid {value}: {exc}")
        for key in series:
            series[key].append(quantities.get(key, float("nan")))
        if quantities:
            for key, val in quantities.items():
                rows.append((value, key, val, "ok"))
        else:
            rows.append((value, "-", float("nan"), status))

    lines = ["grid,quantity,value,status"]
    for value, key, val, status in rows:
        lines.append(f"{value!r},{key},{val!r},{status}")
    text = "\n".join(lines) + "\n"
    if args.out:
        with open(args.out, "w", encoding="utf-8") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)
    if args.svg:
        svg = render_line_chart(xs, series, x_label=args.grid_over)
        with open(args.svg, "w", encoding="utf-8") as fh:
            fh.write(svg)
    for message in warnings_list:
        print(f"warning: {message}", file=sys.stderr)
    return EXIT_OK


def _add_common(p):
    p.add_argument("--config", help="JSON config document")
    p.add_argument("--out", help="output path")
    p.add_argument("--seed", type=int, default=None, help="64-bit seed")
    p.add_argument("--format", choices=("json", "table"), default="table")


def _add_schema(p):
    p.add_argument("--x-col", help="treatment column name (default x)")
    p.add_argument("--m-col", help="mediator column name (default m)")
    p.add_argument("--y-col", help="outcome column name (default y)")
    p.add_argument("--c-cols", help="comma-separated covariate column names")


def _add_query(p):
    p.add_argument("--x-base", type=float, help="base treatment level x'")
    p.add_argument("--x-alt", type=float, help="alternative treatment level x")
    p.add_argument("--y", type=float, help="outcome threshold")
    p.add_argument("--m-fixed", type=float, help="mediator value for cd quantities")
    p.add_argument("--stratum", help="comma-separated covariate stratum values")
    p.add_argument("--evidence-x", type=float, help="factual treatment level x*")
    p.add_argument("--evidence-m", type=float, help="factual mediator value m*")
    p.add_argument("--y-interval", help="factual outcome interval 'L,U'")
    p.add_argument(
        "--y-upper-closed", action="store_true", help="close the outcome interval"
    )
    p.add_argument("--m-interval", help="factual mediator interval 'L,U'")
    p.add_argument(
        "--m-upper-closed", action="store_true", help="close the mediator interval"
    )


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="pocmed",
        description="direct and indirect probabilities of causation with mediation",
    )
    parser.add_argument("--version", action="version", version=__version__)
    sub = parser.add_subparsers(dest="command", required=True)

    p_est = sub.add_parser("estimate", help="estimate from a CSV table")
    _add_common(p_est)
    _add_schema(p_est)
    _add_query(p_est)
    p_est.add_argument("--input", help="CSV input path")
    p_est.add_argument(
        "--families", help="comma list from pns,cd,pn,ps (default pns[,cd])"
    )
    p_est.add_argument("--replicates", type=int, help="bootstrap replicates (0 disables)")
    p_est.add_argument("--level", type=float, help="confidence level (default 0.95)")
    p_est.add_argument(
        "--assume-mediator-monotone",
        action="store_true",
        help="assert the mediator monotonicity condition for joint evidence",
    )
    p_est.set_defaults(func=cmd_estimate)

    p_sim = sub.add_parser("simulate", help="sample an observational CSV from a model")
    _add_common(p_sim)
    p_sim.add_argument("--preset", help="built-in model name (logistic-bernoulli)")
    p_sim.add_argument("--n", type=int, help="number of rows")
    p_sim.set_defaults(func=cmd_simulate)

    p_ver = sub.add_parser("verify", help="check the stack against exact truths")
    _add_common(p_ver)
    p_ver.add_argument("--replicates", type=int, help="bootstrap replicates")
    p_ver.add_argument("--scms", type=int, help="equivalence-suite model count")
    p_ver.add_argument("--decomposition", type=int, help="decomposition-suite model count")
    p_ver.add_argument("--quick", action="store_true", help="small fast suite")
    p_ver.set_defaults(func=cmd_verify)

    p_sw = sub.add_parser("sweep", help="evaluate measures over a grid")
    _add_common(p_sw)
    _add_schema(p_sw)
    p_sw.add_argument("--input", help="CSV input path (empirical sweep)")
    p_sw.add_argument("--preset", help="built-in model name (analytic sweep)")
    p_sw.add_argument("--x-base", type=float)
    p_sw.add_argument("--x-alt", type=float)
    p_sw.add_argument("--y", type=float, help="outcome threshold (non-y sweeps)")
    p_sw.add_argument("--m-fixed", type=float)
    p_sw.add_argument(
        "--grid-over",
        choices=("y", "covariate", "mediator-intercept"),
        default="y",
    )
    p_sw.add_argument("--grid", help="comma-separated grid values")
    p_sw.add_argument("--svg", help="write an SVG line chart here")
    p_sw.set_defaults(func=cmd_sweep)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except PocError as exc:
        print(f"error: {type(exc).__name__}: {exc}", file=sys.stderr)
        if getattr(args, "out", None):
            payload = {"error": {"type": type(exc).__name__, "message": str(exc)}}
            with open(args.out, "w", encoding="utf-8") as fh:
                fh.write(render_json(payload))
        return EXIT_USAGE
    except (ValueError, OSError, KeyError, json.JSONDecodeError) as exc:
        print(f"error: {type(exc).__name__}: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
