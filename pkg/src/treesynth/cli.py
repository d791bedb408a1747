"""Command-line front end: learn, approximate, eval, and partition modes."""

from __future__ import annotations

import argparse
import json
import sys
import time
from dataclasses import dataclass, field
from pathlib import Path

from .aig import Aig, AigError, and_count, metrics
from .aiger import parse_aiger, write_aiger
from .blif import parse_blif, write_blif
from .dataset import Dataset, DatasetError, load_pla_triple
from .explore import ExplorationConfig, explore
from .odt import OdtError, SearchBudget, fit_optimal, predict
from .partition import PartitionConfig, partition, partition_report
from .qor import qor_exhaustive, qor_monte_carlo
from .synth import tree_to_aig

EXIT_OK = 0
EXIT_INPUT_ERROR = 2
EXIT_BUDGET_EXCEEDED = 3


@dataclass
class RunReport:
    mode: str
    config: dict
    results: list[dict] = field(default_factory=list)
    selected: dict | None = None
    seed: int = 0
    wall_clock_s: float = 0.0

    def to_dict(self, include_timing: bool = True) -> dict:
        out = {
            "mode": self.mode,
            "config": self.config,
            "seed": self.seed,
            "results": self.results,
        }
        if self.selected is not None:
            out["selected"] = self.selected
        if include_timing:
            out["wall_clock_s"] = round(self.wall_clock_s, 3)
        return out

    def to_json(self, include_timing: bool = True) -> str:
        return json.dumps(self.to_dict(include_timing), sort_keys=True,
                          indent=2)

    def to_csv(self) -> str:
        if not self.results:
            return ""
        keys = sorted({k for row in self.results for k in row})
        lines = [",".join(keys)]
        for row in self.results:
            lines.append(",".join(str(row.get(k, "")) for k in keys))
        return "\n".join(lines) + "\n"


def _read_netlist(path: str) -> Aig:
    text = Path(path).read_text()
    if path.endswith(".blif"):
        return parse_blif(text)
    if text.lstrip().startswith("aag"):
        return parse_aiger(text)
    return parse_blif(text)


def _write_netlist(circuit: Aig, path: str, fmt: str) -> None:
    if fmt == "blif":
        Path(path).write_text(write_blif(circuit))
    else:
        Path(path).write_text(write_aiger(circuit))


def _parse_depth_range(text: str) -> list[int]:
    if ".." in text:
        lo, hi = text.split("..", 1)
    elif ":" in text:
        lo, hi = text.split(":", 1)
    else:
        lo = hi = text
    lo_i, hi_i = int(lo), int(hi)
    if lo_i < 0 or hi_i < lo_i:
        raise ValueError(f"bad depth range {text!r}")
    return list(range(lo_i, hi_i + 1))


def _accuracy(tree, data: Dataset) -> float:
    wrong = sum(1 for bits, label in data.rows()
                if predict(tree, bits) != label)
    return 1.0 - wrong / data.num_rows


def _emit_report(report: RunReport, args) -> None:
    if args.report == "csv":
        sys.stdout.write(report.to_csv())
    else:
        sys.stdout.write(report.to_json(include_timing=not args.no_timing)
                         + "\n")


def cmd_learn(args) -> int:
    started = time.monotonic()
    triple = load_pla_triple(Path(args.train).read_text(),
                             Path(args.validation).read_text(),
                             Path(args.test).read_text())
    depths = _parse_depth_range(args.depths)
    report = RunReport(
        mode="learn",
        config={"train": args.train, "validation": args.validation,
                "test": args.test, "depths": args.depths, "out": args.out},
        seed=args.seed)
    best = None
    for depth in depths:
        tree = fit_optimal(triple.train, SearchBudget(max_depth=depth))
        circuit = tree_to_aig(tree, triple.train.num_features)
        row = {
            "depth": depth,
            "realized_depth": tree.realized_depth,
            "train_accuracy": _accuracy(tree, triple.train),
            "validation_accuracy": _accuracy(tree, triple.validation),
            "test_accuracy": _accuracy(tree, triple.test),
            "and_count": and_count(circuit),
        }
        report.results.append(row)
        # best validation accuracy wins; ties go to the shallower model
        if best is None or row["validation_accuracy"] > best[0]["validation_accuracy"]:
            best = (row, circuit)
    selected_row, selected_circuit = best
    report.selected = dict(selected_row)
    report.selected["d_avg"] = float(selected_row["realized_depth"])
    if args.out:
        _write_netlist(selected_circuit, args.out, args.format)
    report.wall_clock_s = time.monotonic() - started
    _emit_report(report, args)
    return EXIT_OK


def _exploration_config(args) -> ExplorationConfig:
    return ExplorationConfig(
        error_threshold=args.threshold,
        initial_max_depth=args.initial_depth,
        step=args.step,
        beam_width=args.beam,
        qor_samples=args.samples,
        seed=args.seed,
        partition=PartitionConfig(
            max_inputs=args.max_sub_inputs,
            max_outputs=args.max_sub_outputs,
            initial_parts=args.initial_parts,
            seed=args.seed),
        node_limit=args.node_limit,
        time_limit=args.time_limit,
        jobs=args.jobs)


def cmd_approximate(args) -> int:
    started = time.monotonic()
    circuit = _read_netlist(args.netlist)
    config_echo = {
        "netlist": args.netlist, "threshold": args.threshold,
        "initial_depth": args.initial_depth, "step": args.step,
        "beam": args.beam, "samples": args.samples,
        "max_sub_inputs": args.max_sub_inputs,
        "max_sub_outputs": args.max_sub_outputs,
        "initial_parts": args.initial_parts,
        "whole_circuit": args.whole_circuit, "depth": args.depth,
        "out": args.out, "format": args.format,
    }
    report = RunReport(mode="approximate", config=config_echo, seed=args.seed)

    if args.whole_circuit:
        # one approximation per depth over the whole circuit's truth tables
        from .synth import approx_whole_circuit

        depths = _parse_depth_range(args.depth or str(args.initial_depth))
        for depth in depths:
            approx = approx_whole_circuit(
                circuit, depth, max_table_inputs=args.max_sub_inputs,
                jobs=args.jobs)
            q = qor_exhaustive(circuit, approx.circuit)
            d_avg = (sum(t.realized_depth for t in approx.per_output_trees)
                     / len(approx.per_output_trees))
            report.results.append({
                "depth": depth,
                "qor": q.error,
                "and_count": and_count(approx.circuit),
                "exact": approx.exact,
                "d_avg": d_avg,
            })
            if args.out:
                _write_netlist(approx.circuit,
                               f"{args.out}.md{depth}", args.format)
        report.wall_clock_s = time.monotonic() - started
        _emit_report(report, args)
        return EXIT_OK

    result = explore(circuit, _exploration_config(args))
    for rec in result.trace:
        report.results.append(rec.as_dict())
    report.selected = {
        "original_and_count": result.original_area,
        "and_count": result.final_area,
        "qor": result.final_qor.error,
        "qor_estimator": result.final_qor.estimator,
        "substitutions": [list(s) for s in result.substitutions],
        "budget_exceeded": result.budget_exceeded,
    }
    if args.out:
        _write_netlist(result.circuit, args.out, args.format)
    if args.trace:
        Path(args.trace).write_text(
            "\n".join(json.dumps(rec.as_dict(), sort_keys=True)
                      for rec in result.trace) + "\n")
    report.wall_clock_s = time.monotonic() - started
    _emit_report(report, args)
    return EXIT_BUDGET_EXCEEDED if result.budget_exceeded else EXIT_OK


def cmd_eval(args) -> int:
    original = _read_netlist(args.original)
    approx = _read_netlist(args.approx)
    if args.exhaustive:
        report = qor_exhaustive(original, approx)
    else:
        report = qor_monte_carlo(original, approx, args.samples, args.seed)
    sys.stdout.write(report.to_json() + "\n")
    return EXIT_OK


def cmd_partition(args) -> int:
    circuit = _read_netlist(args.netlist)
    config = PartitionConfig(
        max_inputs=args.max_sub_inputs, max_outputs=args.max_sub_outputs,
        initial_parts=args.initial_parts, seed=args.seed)
    parts = partition(circuit, config)
    out = partition_report(circuit, parts)
    out["config"] = {
        "max_inputs": config.max_inputs, "max_outputs": config.max_outputs,
        "initial_parts": config.initial_parts, "seed": config.seed,
    }
    m = metrics(circuit)
    out["circuit"] = {"inputs": m.num_inputs, "outputs": m.num_outputs,
                      "and_count": m.and_count}
    sys.stdout.write(json.dumps(out, sort_keys=True, indent=2) + "\n")
    return EXIT_OK


def _add_common(p: argparse.ArgumentParser) -> None:
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--jobs", type=int, default=1)
    p.add_argument("--format", choices=["aiger", "blif"], default="aiger")
    p.add_argument("--report", choices=["json", "csv"], default="json")
    p.add_argument("--no-timing", action="store_true",
                   help="omit wall-clock from the report (reproducible bytes)")


def _add_partition_flags(p: argparse.ArgumentParser) -> None:
    p.add_argument("--max-sub-inputs", type=int, default=14)
    p.add_argument("--max-sub-outputs", type=int, default=5)
    p.add_argument("--initial-parts", type=int, default=5)


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="treesynth",
        description="Approximate logic synthesis via optimal decision trees")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("learn", help="fit trees on a PLA train/val/test triple")
    p.add_argument("train")
    p.add_argument("validation")
    p.add_argument("test")
    p.add_argument("--depths", default="2..10")
    p.add_argument("--out")
    _add_common(p)
    p.set_defaults(func=cmd_learn)

    p = sub.add_parser("approximate", help="approximate a circuit under an "
                                           "error budget")
    p.add_argument("netlist")
    p.add_argument("--threshold", type=float, default=0.05)
    p.add_argument("--initial-depth", type=int, default=9)
    p.add_argument("--step", type=int, default=1)
    p.add_argument("--beam", type=int, default=3)
    p.add_argument("--samples", type=int, default=10_000)
    p.add_argument("--node-limit", type=int,
                   help="abort tree searches after this many expansions")
    p.add_argument("--time-limit", type=float,
                   help="per-tree search time budget in seconds")
    _add_partition_flags(p)
    p.add_argument("--whole-circuit", action="store_true",
                   help="skip partitioning; learn trees over the full "
                        "circuit truth table")
    p.add_argument("--depth",
                   help="depth or LO..HI range for --whole-circuit mode")
    p.add_argument("--out")
    p.add_argument("--trace", help="write the substitution trace (JSON lines)")
    _add_common(p)
    p.set_defaults(func=cmd_approximate)

    p = sub.add_parser("eval", help="measure error between two netlists")
    p.add_argument("original")
    p.add_argument("approx")
    p.add_argument("--samples", type=int, default=10_000)
    p.add_argument("--exhaustive", action="store_true")
    _add_common(p)
    p.set_defaults(func=cmd_eval)

    p = sub.add_parser("partition", help="report a bounded-interface "
                                         "decomposition")
    p.add_argument("netlist")
    _add_partition_flags(p)
    _add_common(p)
    p.set_defaults(func=cmd_partition)

    return parser


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except (AigError, DatasetError, OdtError, FileNotFoundError,
            ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT_ERROR


if __name__ == "__main__":
    sys.exit(main())
