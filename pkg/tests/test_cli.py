"""Command-line interface."""

import json
from pathlib import Path

from treesynth.aiger import parse_aiger
from treesynth.cli import main

ROOT = Path(__file__).resolve().parents[1]
BENCH = ROOT / "benchmarks"
PLA = BENCH / "pla"


def run(capsys, *argv) -> tuple[int, str]:
    code = main(list(argv))
    return code, capsys.readouterr().out


def test_partition_command(capsys):
    code, out = run(capsys, "partition", str(BENCH / "add8u.aag"))
    assert code == 0
    data = json.loads(out)
    assert data["num_parts"] >= 1
    assert data["circuit"]["and_count"] == 67
    for p in data["parts"]:
        assert p["inputs"] <= 14 and p["outputs"] <= 5


def test_eval_command_exhaustive(capsys):
    code, out = run(capsys, "eval", str(BENCH / "c17.aag"),
                    str(BENCH / "c17.aag"), "--exhaustive")
    assert code == 0
    data = json.loads(out)
    assert data["error"] == 0.0
    assert data["estimator"] == "exhaustive"


def test_eval_command_monte_carlo(capsys):
    code, out = run(capsys, "eval", str(BENCH / "c499.aag"),
                    str(BENCH / "c499.aag"), "--samples", "500")
    assert code == 0
    data = json.loads(out)
    assert data["error"] == 0.0
    assert data["samples"] == 500


def test_eval_reads_blif(capsys):
    code, out = run(capsys, "eval", str(BENCH / "c17.blif"),
                    str(BENCH / "c17.aag"), "--exhaustive")
    assert code == 0
    assert json.loads(out)["error"] == 0.0


def test_approximate_whole_circuit(tmp_path, capsys):
    out_file = tmp_path / "c17_approx.aag"
    code, out = run(capsys, "approximate", str(BENCH / "c17.aag"),
                    "--whole-circuit", "--depth", "1..4",
                    "--out", str(out_file), "--no-timing")
    assert code == 0
    rows = json.loads(out)["results"]
    assert [r["qor"] for r in rows] == [0.25, 0.125, 0.0625, 0.0]
    for depth in range(1, 5):
        parse_aiger(Path(f"{out_file}.md{depth}").read_text())


def test_approximate_explore(tmp_path, capsys):
    out_file = tmp_path / "approx.aag"
    trace_file = tmp_path / "trace.jsonl"
    code, out = run(capsys, "approximate", str(BENCH / "add8u.aag"),
                    "--threshold", "0.15", "--initial-parts", "10",
                    "--out", str(out_file), "--trace", str(trace_file),
                    "--no-timing")
    assert code == 0
    selected = json.loads(out)["selected"]
    assert selected["qor"] <= 0.15
    assert selected["and_count"] < selected["original_and_count"]
    assert not selected["budget_exceeded"]
    parse_aiger(out_file.read_text())
    for line in trace_file.read_text().splitlines():
        json.loads(line)


def test_approximate_budget_exit_code(capsys):
    # an unsatisfiable node budget yields a partial result and exit code 3
    code, out = run(capsys, "approximate", str(BENCH / "add8u.aag"),
                    "--threshold", "0.1", "--node-limit", "1", "--no-timing")
    assert code == 3
    selected = json.loads(out)["selected"]
    assert selected["budget_exceeded"]
    assert selected["qor"] <= 0.1


def test_learn_command(tmp_path, capsys):
    out_file = tmp_path / "learned.aag"
    code, out = run(capsys, "learn",
                    str(PLA / "add8u_cout_train.pla"),
                    str(PLA / "add8u_cout_valid.pla"),
                    str(PLA / "add8u_cout_test.pla"),
                    "--depths", "2..4", "--out", str(out_file), "--no-timing")
    assert code == 0
    data = json.loads(out)
    assert len(data["results"]) == 3
    selected = data["selected"]
    assert 0.0 <= selected["test_accuracy"] <= 1.0
    assert selected["d_avg"] <= 4
    learned = parse_aiger(out_file.read_text())
    assert learned.num_inputs == 16


def test_learn_csv_report(capsys):
    code, out = run(capsys, "learn",
                    str(PLA / "mul7u_p12_train.pla"),
                    str(PLA / "mul7u_p12_valid.pla"),
                    str(PLA / "mul7u_p12_test.pla"),
                    "--depths", "2", "--report", "csv")
    assert code == 0
    header, row = out.strip().splitlines()
    assert "train_accuracy" in header
    assert len(row.split(",")) == len(header.split(","))


def test_missing_file_is_input_error(capsys):
    code, _ = run(capsys, "eval", "no_such.aag", "no_such.aag")
    assert code == 2


def test_malformed_netlist_is_input_error(tmp_path, capsys):
    bad = tmp_path / "bad.aag"
    bad.write_text("aag nonsense\n")
    code, _ = run(capsys, "eval", str(bad), str(bad))
    assert code == 2


def test_bad_depth_range_is_input_error(capsys):
    code, _ = run(capsys, "approximate", str(BENCH / "c17.aag"),
                  "--whole-circuit", "--depth", "5..2")
    assert code == 2


def test_reports_byte_identical_across_jobs(capsys):
    args = ("approximate", str(BENCH / "c17.aag"),
            "--whole-circuit", "--depth", "1..3", "--no-timing")
    _, first = run(capsys, *args)
    _, second = run(capsys, *args, "--jobs", "4")
    assert json.loads(first)["results"] == json.loads(second)["results"]
