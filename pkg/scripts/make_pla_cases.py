#!/usr/bin/env python3
"""Regenerate the PLA train/validation/test cases under benchmarks/pla/.

Each case samples labelled vectors from one output of a built-in circuit,
mimicking the learn-a-logic-function-from-examples flow.
"""

from pathlib import Path
import sys

import numpy as np

sys.path.insert(0, str(Path(__file__).resolve().parents[1] / "src"))

from treesynth.aig import simulate
from treesynth.bench import add8u, mul7u
from treesynth.dataset import Dataset, write_pla

SPLITS = {"train": 640, "valid": 320, "test": 320}


def sample_case(circuit, output_index: int, seed: int):
    rng = np.random.default_rng(seed)
    out = {}
    for split, count in SPLITS.items():
        vectors = [tuple(int(b) for b in rng.integers(0, 2, circuit.num_inputs))
                   for _ in range(count)]
        labels = [row[output_index] for row in simulate(circuit, vectors)]
        features = [0] * circuit.num_inputs
        packed = 0
        for r, vec in enumerate(vectors):
            for i, bit in enumerate(vec):
                if bit:
                    features[i] |= 1 << r
            if labels[r]:
                packed |= 1 << r
        out[split] = Dataset(num_features=circuit.num_inputs, num_rows=count,
                             features=tuple(features), labels=packed)
    return out


def main() -> None:
    out_dir = Path(__file__).resolve().parents[1] / "benchmarks" / "pla"
    out_dir.mkdir(parents=True, exist_ok=True)
    cases = {
        # high product bit of the multiplier: skewed but clearly learnable
        "mul7u_p12": (mul7u(), 12, 101),
        # carry-out of the adder: learnable reasonably well at small depth
        "add8u_cout": (add8u(), 8, 202),
    }
    for name, (circuit, output_index, seed) in cases.items():
        for split, data in sample_case(circuit, output_index, seed).items():
            path = out_dir / f"{name}_{split}.pla"
            path.write_text(write_pla(data))
            print(f"wrote {path}")


if __name__ == "__main__":
    main()
