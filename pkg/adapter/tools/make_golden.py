#!/usr/bin/env python3
"""Regenerate the committed golden artifacts under tests/golden/.

The goldens are snapshots of real adapter output (seeded tiny model, CPU
timing run); the conformance tests only require that the committed bytes
load through the consumer toolkit, so regeneration may change the bytes
without breaking anything.
"""

import sys
from pathlib import Path

import torch
from torch import nn

ROOT = Path(__file__).resolve().parent.parent
sys.path.insert(0, str(ROOT / "src"))

from genet_adapter.bench import GridPoint, bench_blocks  # noqa: E402
from genet_adapter.export import export_kernels  # noqa: E402

GOLDEN = ROOT / "tests" / "golden"


class TinyNet(nn.Module):
    def __init__(self):
        super().__init__()
        self.stem = nn.Conv2d(3, 8, 3, stride=2, padding=1, bias=False)
        self.mid = nn.Conv2d(8, 16, 3, padding=1, bias=False)
        self.dw = nn.Conv2d(16, 16, 3, padding=1, groups=16, bias=False)
        self.head = nn.Conv2d(16, 32, 1, bias=False)


def main():
    GOLDEN.mkdir(parents=True, exist_ok=True)
    torch.manual_seed(20200701)
    model = TinyNet()
    export_kernels(model, [("stem.weight", 1), ("mid.weight", 2), ("dw.weight", 3),
                           ("head.weight", 4)], GOLDEN / "kernels", source_name="tinynet")
    grid = [GridPoint("XX", 16, 1.0, 3, 1, 32, 2),
            GridPoint("BL", 32, 0.25, 3, 1, 32, 2),
            GridPoint("DW", 32, 3.0, 3, 2, 32, 2)]
    csv_text, _meta = bench_blocks(grid, repeats=5, device="cpu")
    (GOLDEN / "raw-bench-samples.csv").write_text(csv_text, encoding="utf-8")
    print(f"golden files written to {GOLDEN}")


if __name__ == "__main__":
    main()
