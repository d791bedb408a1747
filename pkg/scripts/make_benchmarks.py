#!/usr/bin/env python3
"""Regenerate the AIGER files under benchmarks/ from the built-in generators.

Run from the repository root:

    python3 scripts/make_benchmarks.py
"""

from pathlib import Path
import sys

sys.path.insert(0, str(Path(__file__).resolve().parents[1] / "src"))

from treesynth.aiger import write_aiger
from treesynth.bench import BENCHMARKS
from treesynth.blif import write_blif

COMMENTS = {
    "c17": "c17: the classic 6-NAND benchmark netlist",
    "add8u": "add8u: 8-bit unsigned ripple-carry adder",
    "mul7u": "mul7u: 7-bit unsigned array multiplier",
    "c432": "c432 profile: 36-in/7-out interrupt controller, functional "
            "reconstruction at the published interface (not gate-for-gate)",
    "c499": "c499 profile: 41-in/32-out single-error corrector, functional "
            "reconstruction at the published interface (not gate-for-gate)",
    "c880": "c880 profile: 60-in/26-out 8-bit ALU, functional "
            "reconstruction at the published interface (not gate-for-gate)",
    "c1908": "c1908 profile: 33-in/25-out SEC/DED unit, functional "
             "reconstruction at the published interface (not gate-for-gate)",
}


def main() -> None:
    out_dir = Path(__file__).resolve().parents[1] / "benchmarks"
    out_dir.mkdir(exist_ok=True)
    for name, build in BENCHMARKS.items():
        circuit = build()
        path = out_dir / f"{name}.aag"
        path.write_text(write_aiger(circuit, comment=COMMENTS.get(name)))
        print(f"wrote {path}")
    # one BLIF variant to exercise the second netlist format
    blif_path = out_dir / "c17.blif"
    blif_path.write_text(write_blif(BENCHMARKS["c17"]()))
    print(f"wrote {blif_path}")


if __name__ == "__main__":
    main()
