"""Command-line interface.

Subcommands:

- ``metrics``: evaluate the metric catalog on one confusion matrix.
- ``wa``: weighted accuracy with the weight fixed directly, derived from
  costs, or adjusted to a target class ratio.
- ``estimate-weight``: the WA weight from a cost ratio or the feasible
  weight interval from a model ranking with error-rate knowledge.
- ``reweight``: per-example weights matching a target positive ratio.
- ``heatmap``: the Monte-Carlo rank-correlation experiment over an
  (r_plus, r_C) grid.

Exit codes: 0 on success, 2 on usage or domain errors (bad flags, bad
values, missing files), 1 on internal failures.
"""

from __future__ import annotations

import argparse
import csv
import json
import sys
from dataclasses import replace

from .core import ConfusionMatrix
from .costs import CostContext, ShiftedCosts
from .estimation import constraints_from_ranking, weight_from_ucc_ratio
from .experiment import (
    DEFAULT_SEED,
    ExperimentConfig,
    SyntheticRevenues,
    config_from_mapping,
    parse_config_file,
    render_text,
    run_heatmap,
    write_heatmap_outputs,
)
from .metrics import KINDS, MetricId, descriptor_for, evaluate
from .weighting import (
    BetaParams,
    TargetProfile,
    rescale_weights_by_mask,
    target_weight,
    wa_tcc_affine,
    weighted_accuracy,
)


def _fmt(value: float | None) -> str:
    return "undefined" if value is None else repr(float(value))


def _add_count_args(parser: argparse.ArgumentParser) -> None:
    parser.add_argument("--tp", type=int, required=True, help="true positives")
    parser.add_argument("--fn", type=int, required=True, help="false negatives")
    parser.add_argument("--fp", type=int, required=True, help="false positives")
    parser.add_argument("--tn", type=int, required=True, help="true negatives")


def _counts(args: argparse.Namespace) -> ConfusionMatrix:
    return ConfusionMatrix(tp=args.tp, fn=args.fn, fp=args.fp, tn=args.tn)


def _shifted_costs(args: argparse.Namespace) -> ShiftedCosts | None:
    given = (args.cfn is not None, args.cfp is not None)
    if given == (False, False):
        return None
    if given != (True, True):
        raise ValueError("--cfn and --cfp must be given together")
    return ShiftedCosts(c_fn=args.cfn, c_fp=args.cfp)


def _beta_dist(args: argparse.Namespace) -> BetaParams | None:
    given = (args.beta_alpha is not None, args.beta_beta is not None)
    if given == (False, False):
        return None
    if given != (True, True):
        raise ValueError("--beta-alpha and --beta-beta must be given together")
    return BetaParams(alpha=args.beta_alpha, beta=args.beta_beta)


def cmd_metrics(args: argparse.Namespace) -> int:
    cm = _counts(args)
    costs = _shifted_costs(args)
    dist = _beta_dist(args)
    cost_ctx = CostContext(costs=costs, tcc_min=args.tcc_min) if costs is not None else None

    if args.only:
        requested = tuple(k.strip() for k in args.only.split(",") if k.strip())
        if not requested:
            raise ValueError("--only must name at least one metric")
        for kind in requested:
            descriptor_for(kind)  # raises on unknown kinds
        skip_unavailable = False
    else:
        requested = KINDS
        skip_unavailable = True

    rows: list[tuple[str, float | None]] = []
    for kind in requested:
        descriptor = descriptor_for(kind)
        weight = args.w if kind == "wa" else None
        if skip_unavailable:
            if descriptor.needs_costs and cost_ctx is None and not (kind == "wa" and weight is not None):
                continue
            if descriptor.needs_distribution and dist is None:
                continue
        metric = MetricId(kind=kind, beta=args.fbeta, weight=weight)
        value = evaluate(metric, cm, cost_ctx=cost_ctx, dist_ctx=dist)
        rows.append((kind, value))

    if args.format == "json":
        print(json.dumps({kind: value for kind, value in rows}, indent=2))
    elif args.format == "csv":
        writer = csv.writer(sys.stdout, lineterminator="\n")
        writer.writerow(["metric", "value"])
        for kind, value in rows:
            writer.writerow([kind, _fmt(value)])
    else:
        width = max((len(kind) for kind, _ in rows), default=0)
        for kind, value in rows:
            print(f"{kind:<{width}}  {_fmt(value)}")
    return 0


def cmd_wa(args: argparse.Namespace) -> int:
    cm = _counts(args)
    costs = _shifted_costs(args)
    if args.w is None and costs is None:
        raise ValueError("need either --w or the cost pair --cfn/--cfp")
    if args.w is not None and costs is not None:
        raise ValueError("give either --w or costs, not both")
    if args.r_plus_target is not None and costs is None:
        raise ValueError("--r-plus-target requires --cfn/--cfp (the weight is derived from r_C)")

    out: dict[str, float | None] = {}
    if args.w is not None:
        out["w"] = args.w
        out["wa"] = weighted_accuracy(cm, args.w)
    else:
        check = wa_tcc_affine(cm, costs)
        out["w"] = costs.r_c
        out["wa"] = check.wa
        out["tcc"] = check.tcc
        out["tcc_min"] = check.tcc_min
        out["tcc_max"] = check.tcc_max
        if args.r_plus_target is not None:
            profile = TargetProfile(
                r_plus_dev=cm.p / cm.total, r_plus_target=args.r_plus_target
            )
            w_t = target_weight(costs, profile).w
            out["w_target"] = w_t
            out["wa_target"] = weighted_accuracy(cm, w_t)

    if args.format == "json":
        print(json.dumps(out, indent=2))
    else:
        for key, value in out.items():
            print(f"{key} = {_fmt(value)}")
    return 0


def cmd_estimate_weight(args: argparse.Namespace) -> int:
    ranking_flags = (args.alpha is not None, args.p is not None, args.n is not None)
    if args.v is not None:
        if any(ranking_flags):
            raise ValueError("give either --v or the ranking flags --alpha/--p/--n, not both")
        out = {"w": weight_from_ucc_ratio(args.v).w}
    else:
        if not all(ranking_flags):
            raise ValueError("the ranking route needs all of --alpha, --p, and --n")
        interval = constraints_from_ranking(args.alpha, args.p, args.n)
        out = {
            "w_min": interval.w_min,
            "w_max": interval.w_max,
            "midpoint": interval.midpoint,
        }
    if args.format == "json":
        print(json.dumps(out, indent=2))
    else:
        for key, value in out.items():
            print(f"{key} = {_fmt(value)}")
    return 0


def cmd_reweight(args: argparse.Namespace) -> int:
    costs = _shifted_costs(args)
    with open(args.input, newline="", encoding="utf-8") as handle:
        reader = csv.DictReader(handle)
        if reader.fieldnames is None:
            raise ValueError(f"{args.input}: empty file, expected a header row")
        for column in (args.label_column, args.weight_column, args.id_column):
            if column is not None and column not in reader.fieldnames:
                raise ValueError(
                    f"{args.input}: no column named {column!r} in header {reader.fieldnames}"
                )
        ids: list[str] = []
        positive: list[bool] = []
        base: list[float] = []
        for row_no, row in enumerate(reader):
            label = (row[args.label_column] or "").strip()
            positive.append(label == args.positive_label)
            ids.append(row[args.id_column] if args.id_column else str(row_no))
            if args.weight_column:
                cell = (row[args.weight_column] or "").strip()
                try:
                    base.append(float(cell))
                except ValueError:
                    raise ValueError(
                        f"{args.input}: row {row_no}: bad weight {cell!r}"
                    ) from None
    if not ids:
        raise ValueError(f"{args.input}: no data rows")
    if not base:
        if costs is not None:
            r_c = costs.r_c
            base = [r_c if flag else 1.0 - r_c for flag in positive]
        else:
            base = [0.5] * len(ids)

    weights = rescale_weights_by_mask(positive, base, args.r_plus_target)

    p = sum(positive)
    n = len(positive) - p
    summary = f"P={p} N={n} r_plus_dev={p / len(positive)!r}"
    if costs is not None:
        profile = TargetProfile(r_plus_dev=p / len(positive), r_plus_target=args.r_plus_target)
        summary += f" w_target={target_weight(costs, profile).w!r}"
    print(summary, file=sys.stderr)

    out_handle = open(args.out, "w", newline="", encoding="utf-8") if args.out else sys.stdout
    try:
        writer = csv.writer(out_handle, lineterminator="\n")
        writer.writerow(["id", "weight"])
        for example_id, weight in zip(ids, weights):
            writer.writerow([example_id, repr(float(weight))])
    finally:
        if args.out:
            out_handle.close()
    return 0


def _parse_synthetic(text: str) -> SyntheticRevenues:
    parts = [p.strip() for p in text.split(",")]
    if len(parts) == 1:
        return SyntheticRevenues(n=int(parts[0]))
    if len(parts) == 3:
        return SyntheticRevenues(n=int(parts[0]), log_mean=float(parts[1]), log_sigma=float(parts[2]))
    raise ValueError(
        f"--synthetic-revenues expects 'N' or 'N,log_mean,log_sigma', got {text!r}"
    )


def cmd_heatmap(args: argparse.Namespace) -> int:
    base = ExperimentConfig()
    if args.config:
        base = config_from_mapping(parse_config_file(args.config), base=base)
    overrides: dict[str, str] = {}
    for key, flag_value in (
        ("n_tot", args.n_tot),
        ("n_samples", args.n_samples),
        ("p_eff", args.p_eff),
        ("grid", args.grid),
        ("metrics", args.metrics),
        ("correlation", args.correlation),
        ("n0", args.n0),
        ("seed", args.seed),
        ("revenue_csv", args.revenue_csv),
        ("revenue_column", args.revenue_column),
        ("workers", args.workers),
        ("kernel", args.kernel),
    ):
        if flag_value is not None:
            overrides[key] = str(flag_value)
    config = config_from_mapping(overrides, base=base)
    if args.synthetic_revenues:
        config = replace(config, synthetic=_parse_synthetic(args.synthetic_revenues))

    result = run_heatmap(config)
    print(
        f"seed={config.seed} kernel={result.kernel} n_tot={config.n_tot} "
        f"n_samples={config.n_samples} correlation={config.correlation.kind}",
        file=sys.stderr,
    )
    if args.out:
        paths = write_heatmap_outputs(result, args.out)
        print(f"wrote {len(paths)} files to {args.out}", file=sys.stderr)
    render = args.render or ("none" if args.out else "text")
    if render == "text":
        print(render_text(result), end="")
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="costeval",
        description="Cost-sensitive evaluation of binary classifiers.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p_metrics = sub.add_parser(
        "metrics", help="evaluate the metric catalog on one confusion matrix"
    )
    _add_count_args(p_metrics)
    p_metrics.add_argument("--cfn", type=float, help="shifted false-negative cost C_FN")
    p_metrics.add_argument("--cfp", type=float, help="shifted false-positive cost C_FP")
    p_metrics.add_argument("--tcc-min", type=float, default=0.0, help="cost baseline (default 0)")
    p_metrics.add_argument("--fbeta", type=float, default=1.0, help="beta for f_beta (default 1)")
    p_metrics.add_argument(
        "--w", type=float, help="fixed WA weight (overrides the cost-derived weight)"
    )
    p_metrics.add_argument("--beta-alpha", type=float, help="weight-distribution Beta alpha")
    p_metrics.add_argument("--beta-beta", type=float, help="weight-distribution Beta beta")
    p_metrics.add_argument(
        "--only",
        help="comma-separated metric kinds; requesting one without its context is an error",
    )
    p_metrics.add_argument("--format", choices=("text", "json", "csv"), default="text")
    p_metrics.set_defaults(func=cmd_metrics)

    p_wa = sub.add_parser("wa", help="weighted accuracy and its cost interpretation")
    _add_count_args(p_wa)
    p_wa.add_argument("--w", type=float, help="fixed weight in [0, 1]")
    p_wa.add_argument("--cfn", type=float, help="shifted false-negative cost C_FN")
    p_wa.add_argument("--cfp", type=float, help="shifted false-positive cost C_FP")
    p_wa.add_argument(
        "--r-plus-target",
        type=float,
        help="with costs: also report the weight adjusted to this deployment positive ratio",
    )
    p_wa.add_argument("--format", choices=("text", "json"), default="text")
    p_wa.set_defaults(func=cmd_wa)

    p_est = sub.add_parser(
        "estimate-weight", help="WA weight from a cost ratio or from a model ranking"
    )
    p_est.add_argument("--v", type=float, help="cost ratio C_FN / C_FP")
    p_est.add_argument("--alpha", type=float, help="error rate of the bad models, in [0.5, 1)")
    p_est.add_argument("--p", type=int, help="positive count")
    p_est.add_argument("--n", type=int, help="negative count")
    p_est.add_argument("--format", choices=("text", "json"), default="text")
    p_est.set_defaults(func=cmd_estimate_weight)

    p_rw = sub.add_parser(
        "reweight", help="per-example weights matching a target positive ratio"
    )
    p_rw.add_argument("--input", required=True, help="CSV file with a header row")
    p_rw.add_argument("--label-column", required=True, help="column holding the class labels")
    p_rw.add_argument(
        "--positive-label", required=True, help="label value marking the positive class"
    )
    p_rw.add_argument("--weight-column", help="column with base weights (default: class weights)")
    p_rw.add_argument("--id-column", help="column to use as example id (default: row number)")
    p_rw.add_argument("--r-plus-target", type=float, required=True)
    p_rw.add_argument("--cfn", type=float, help="shifted false-negative cost C_FN")
    p_rw.add_argument("--cfp", type=float, help="shifted false-positive cost C_FP")
    p_rw.add_argument("--out", help="write the weight CSV here instead of stdout")
    p_rw.set_defaults(func=cmd_reweight)

    p_hm = sub.add_parser(
        "heatmap", help="rank-correlation heatmap over an (r_plus, r_C) grid"
    )
    p_hm.add_argument("--config", help="flat 'key = value' config file")
    p_hm.add_argument("--n-tot", type=int, help="dataset size per sample")
    p_hm.add_argument("--n-samples", type=int, help="Monte-Carlo samples per cell")
    p_hm.add_argument("--p-eff", type=float, help="effectiveness probability in (0, 1]")
    p_hm.add_argument("--grid", help="comma-separated ratios shared by both axes")
    p_hm.add_argument("--metrics", help="comma-separated metric kinds")
    p_hm.add_argument("--correlation", choices=("standard", "weighted"))
    p_hm.add_argument("--n0", type=float, help="weighted-correlation shift (default 2)")
    p_hm.add_argument("--seed", type=int, help=f"master seed (default {DEFAULT_SEED})")
    p_hm.add_argument("--revenue-csv", help="CSV file with a revenue column")
    p_hm.add_argument("--revenue-column", help="revenue column name (default MonthlyCharges)")
    p_hm.add_argument(
        "--synthetic-revenues",
        help="lognormal revenue pool: 'N' or 'N,log_mean,log_sigma'",
    )
    p_hm.add_argument("--workers", type=int, help="parallel worker processes (default 1)")
    p_hm.add_argument("--kernel", choices=("auto", "numpy", "cython"))
    p_hm.add_argument("--out", help="directory for per-metric CSV and JSON files")
    p_hm.add_argument("--render", choices=("text", "none"), help="stdout rendering")
    p_hm.set_defaults(func=cmd_heatmap)

    return parser


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        return args.func(args)
    except (ValueError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except Exception as exc:  # unexpected failure: report and exit 1
        print(f"internal error: {type(exc).__name__}: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
