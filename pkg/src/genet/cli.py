"""Command-line surface: file-based, reproducible workflows.

Exit codes: 0 on success, 1 on a domain error (the error identifier is
printed on stderr), 2 on a usage error.  Data goes to stdout or the --out
file; diagnostics go to stderr only.  Stochastic commands require an
explicit --seed.
"""

import argparse
import json
import sys
from pathlib import Path

from .cost import BENCHMARK_HEADER, aggregate_latency, cost_report, ingest_benchmark
from .errors import GenetError
from .rank import load_kernel, stage_report
from .search import (
    PerturbationRanges,
    SearchConfig,
    fit_pseudo_gradients,
    generate_candidates,
    gradient_table_from_json,
    gradient_table_to_json,
    ingest_trials,
    plan_trials,
    predict_accuracy,
    select_best,
    selection_report_to_dict,
    write_trials,
)
from .structure import load_structure, validate_structure

KERNEL_SUFFIX = ".kt01"


def _emit(text: str, out: str | None) -> None:
    if out:
        Path(out).write_text(text, encoding="utf-8")
    else:
        sys.stdout.write(text)


def _json_doc(obj) -> str:
    return json.dumps(obj, sort_keys=True, indent=2) + "\n"


def format_table(rows: list[list[str]]) -> str:
    """Align columns for --pretty output; first row is the header."""
    if not rows:
        return ""
    widths = [max(len(str(r[i])) for r in rows) for i in range(len(rows[0]))]
    lines = ["  ".join(str(v).ljust(w) for v, w in zip(r, widths)).rstrip() for r in rows]
    lines.insert(1, "  ".join("-" * w for w in widths))
    return "\n".join(lines) + "\n"


def _parse_ranges(path: str | None, samples: int | None) -> PerturbationRanges:
    kwargs = {}
    if path:
        doc = json.loads(Path(path).read_text(encoding="utf-8"))
        for key in ("kernel_choices", "bl_ratios", "dw_ratios"):
            if key in doc:
                kwargs[key] = tuple(doc[key])
        for key in ("width_factor", "depth_delta"):
            if key in doc:
                kwargs[key] = tuple(doc[key])
        if "samples_per_superblock" in doc:
            kwargs["samples_per_superblock"] = int(doc["samples_per_superblock"])
    if samples is not None:
        kwargs["samples_per_superblock"] = samples
    return PerturbationRanges(**kwargs)


def cmd_validate(args) -> int:
    net = load_structure(args.structure, check_invariants=False)
    violations = validate_structure(net)
    if args.pretty:
        if violations:
            body = "".join(f"{v.rule} (super-block {v.index}): {v.message}\n" for v in violations)
        else:
            body = f"{net.name}: OK\n"
        _emit(body, args.out)
    else:
        doc = {"name": net.name, "violations": [
            {"index": v.index, "rule": v.rule, "message": v.message} for v in violations]}
        _emit(_json_doc(doc), args.out)
    return 0 if not violations else 1


def cmd_cost(args) -> int:
    net = load_structure(args.structure)
    table = None
    if args.latency_table:
        table = ingest_benchmark(Path(args.latency_table).read_text(encoding="utf-8"))
    report = cost_report(net, resolution=args.resolution, table=table,
                         batch=args.batch if table else None)
    if args.pretty:
        rows = [["metric", "value"]] + [[k, str(v)] for k, v in sorted(report.to_dict().items())]
        _emit(format_table(rows), args.out)
    else:
        _emit(_json_doc(report.to_dict()), args.out)
    return 0


def cmd_bench_aggregate(args) -> int:
    text = Path(args.samples).read_text(encoding="utf-8")
    lines = [l for l in text.splitlines() if l.strip()]
    if not lines or lines[0].split(",") != BENCHMARK_HEADER:
        raise GenetError("MALFORMED_ROW", f"expected header {','.join(BENCHMARK_HEADER)}")
    groups: dict[tuple, list[float]] = {}
    for lineno, line in enumerate(lines[1:], start=2):
        parts = line.split(",")
        if len(parts) != len(BENCHMARK_HEADER):
            raise GenetError("MALFORMED_ROW", f"line {lineno}: expected {len(BENCHMARK_HEADER)} fields")
        try:
            key = (parts[0], int(parts[1]), float(parts[2]), int(parts[3]),
                   int(parts[4]), int(parts[5]), int(parts[6]))
            sample = float(parts[7])
        except ValueError as e:
            raise GenetError("MALFORMED_ROW", f"line {lineno}: {e}") from None
        groups.setdefault(key, []).append(sample)
    out_lines = [",".join(BENCHMARK_HEADER)]
    for key in sorted(groups, key=lambda k: (k[0], k[1], k[2], k[3], k[4], k[5], k[6])):
        t, w, r, k, s, res, b = key
        out_lines.append(f"{t},{w},{r:g},{k},{s},{res},{b},{aggregate_latency(groups[key])!r}")
    _emit("\n".join(out_lines) + "\n", args.out)
    return 0


def cmd_plan(args) -> int:
    master = load_structure(args.master)
    ranges = _parse_ranges(args.ranges, args.samples)
    records = plan_trials(master, ranges, args.seed)
    _emit(write_trials(records), args.out)
    return 0


def cmd_fit(args) -> int:
    master = load_structure(args.master)
    trials = ingest_trials(Path(args.trials).read_text(encoding="utf-8"))
    table = fit_pseudo_gradients(master, args.master_accuracy, trials)
    _emit(gradient_table_to_json(table), args.out)
    return 0


def cmd_predict(args) -> int:
    master = load_structure(args.master)
    candidate = load_structure(args.candidate)
    table = gradient_table_from_json(Path(args.gradients).read_text(encoding="utf-8"))
    predicted = predict_accuracy(table, master, candidate)
    if args.pretty:
        _emit(f"{candidate.name}: predicted accuracy {predicted:.4f}\n", args.out)
    else:
        _emit(_json_doc({"candidate": candidate.name, "predicted_accuracy": predicted}), args.out)
    return 0


def cmd_search(args) -> int:
    master = load_structure(args.master)
    gradients = gradient_table_from_json(Path(args.gradients).read_text(encoding="utf-8"))
    lat_table = ingest_benchmark(Path(args.latency_table).read_text(encoding="utf-8"))
    ranges = _parse_ranges(args.ranges, None)
    resolutions = tuple(int(r) for r in args.resolutions.split(","))
    config = SearchConfig(latency_budget_ms=args.budget, seed=args.seed,
                          num_candidates=args.num_candidates, resolutions=resolutions,
                          batch=args.batch, ranges=ranges)
    candidates = generate_candidates(master, ranges, config.num_candidates, config.seed,
                                     allow_type_switch=args.allow_type_switch)
    results = select_best(candidates, gradients, master, lat_table, config)
    _emit(_json_doc(selection_report_to_dict(results)), args.out)
    if args.pretty:
        rows = [["resolution", "winner", "predicted_acc", "latency_ms", "feasible"]]
        for res, r in sorted(results.items()):
            if r.error:
                rows.append([str(res), r.error, "-", "-", str(r.feasible_count)])
            else:
                rows.append([str(res), r.structure.name, f"{r.predicted_accuracy:.4f}",
                             f"{r.estimated_latency_ms:.4f}", str(r.feasible_count)])
        sys.stdout.write(format_table(rows))
    if all(r.error is not None for r in results.values()):
        raise GenetError("NO_FEASIBLE_CANDIDATE",
                         f"no candidate fits {args.budget} ms at any resolution")
    return 0


def cmd_spectrum(args) -> int:
    paths = sorted(Path(args.kernel_dir).glob(f"*{KERNEL_SUFFIX}"))
    if not paths:
        raise GenetError("EMPTY_INPUT", f"no {KERNEL_SUFFIX} files in {args.kernel_dir}")
    kernels = [load_kernel(p) for p in paths]
    _emit(stage_report(kernels), args.out)
    return 0


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="genet", description=__doc__)
    sub = p.add_subparsers(dest="command", required=True)

    def add(name, fn, help_text, out_required=False):
        sp = sub.add_parser(name, help=help_text)
        sp.set_defaults(fn=fn)
        if out_required:
            sp.add_argument("--out", required=True, help="output file")
        else:
            sp.add_argument("--out", help="write output to this file instead of stdout")
        return sp

    sp = add("validate", cmd_validate, "check a structure file against every invariant")
    sp.add_argument("structure")
    sp.add_argument("--pretty", action="store_true")

    sp = add("cost", cmd_cost, "FLOPs/params (and latency, given a table) of a structure")
    sp.add_argument("structure")
    sp.add_argument("--resolution", type=int, default=None)
    sp.add_argument("--latency-table", default=None)
    sp.add_argument("--batch", type=int, default=64)
    sp.add_argument("--pretty", action="store_true")

    sp = add("bench-aggregate", cmd_bench_aggregate, "trim-mean raw timing samples into a benchmark table")
    sp.add_argument("samples")

    sp = add("plan", cmd_plan, "sample fine-tuning trials for every body super-block",
             out_required=True)
    sp.add_argument("master")
    sp.add_argument("--seed", type=int, required=True)
    sp.add_argument("--ranges", default=None, help="JSON file overriding the perturbation ranges")
    sp.add_argument("--samples", type=int, default=None, help="samples per super-block")

    sp = add("fit", cmd_fit, "fit pseudo-gradients from measured trial accuracies",
             out_required=True)
    sp.add_argument("master")
    sp.add_argument("trials")
    sp.add_argument("--master-accuracy", type=float, required=True)

    sp = add("predict", cmd_predict, "predict a candidate's accuracy from a gradient table")
    sp.add_argument("master")
    sp.add_argument("candidate")
    sp.add_argument("--gradients", required=True)
    sp.add_argument("--pretty", action="store_true")

    sp = add("search", cmd_search, "generate candidates and select the best within budget",
             out_required=True)
    sp.add_argument("master")
    sp.add_argument("--gradients", required=True)
    sp.add_argument("--latency-table", required=True)
    sp.add_argument("--budget", type=float, required=True)
    sp.add_argument("--seed", type=int, required=True)
    sp.add_argument("--num-candidates", type=int, default=256)
    sp.add_argument("--resolutions", default="192,224,256")
    sp.add_argument("--batch", type=int, default=64)
    sp.add_argument("--allow-type-switch", action="store_true")
    sp.add_argument("--ranges", default=None)
    sp.add_argument("--pretty", action="store_true", help="also print a summary table to stdout")

    sp = add("spectrum", cmd_spectrum, "singular-value spectra of a directory of kernel files")
    sp.add_argument("kernel_dir")
    return p


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.fn(args)
    except GenetError as e:
        print(f"ERROR {e}", file=sys.stderr)
        return 1
    except OSError as e:
        print(f"ERROR IO: {e}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
