#!/usr/bin/env python3
"""Regenerate every shipped fixture under src/genet/fixtures/.

Structure fixtures transcribe the published GENet / ProfilingNet-132 /
manual-net reference tables, and the whole-network latency CSVs transcribe
the published V100/T4 measurements for those models.  The block-latency
table, trial accuracies, and winner reports are *synthetic*: they come from
the planted linear accuracy model and the analytic latency formula below,
seeded and committed so the end-to-end pipeline reproduces them
byte-for-byte.
"""

import sys
from pathlib import Path

ROOT = Path(__file__).resolve().parent.parent
sys.path.insert(0, str(ROOT / "src"))

from genet.cli import main as cli_main                      # noqa: E402
from genet.search import PerturbationRanges, TrialRecord, plan_trials, write_trials  # noqa: E402
from genet.structure import (                               # noqa: E402
    BlockType,
    NetworkStructure,
    SuperBlock,
    serialize_structure,
    superblock_io,
    validate_structure,
)

FIXTURES = ROOT / "src" / "genet" / "fixtures"

TYPE_NAMES = {"C": "CONV", "X": "XX", "B": "BL", "D": "DW"}

# (name, resolution, rows of (type, depth, width, stride, kernel, ratio))
GENETS = {
    "genet-light": (192, [
        ("C", 1, 13, 2, 3, 1.0), ("X", 1, 48, 2, 3, 1.0), ("X", 3, 48, 2, 3, 1.0),
        ("B", 7, 384, 2, 3, 0.25), ("D", 2, 560, 2, 3, 3.0), ("D", 1, 256, 1, 3, 3.0),
        ("C", 1, 1920, 1, 1, 1.0)]),
    "genet-normal": (192, [
        ("C", 1, 32, 2, 3, 1.0), ("X", 1, 128, 2, 3, 1.0), ("X", 2, 192, 2, 3, 1.0),
        ("B", 6, 640, 2, 3, 0.25), ("D", 4, 640, 2, 3, 3.0), ("D", 1, 640, 1, 3, 3.0),
        ("C", 1, 2560, 1, 1, 1.0)]),
    "genet-large": (256, [
        ("C", 1, 32, 2, 3, 1.0), ("X", 1, 128, 2, 3, 1.0), ("X", 2, 192, 2, 3, 1.0),
        ("B", 6, 640, 2, 3, 0.25), ("D", 5, 640, 2, 3, 3.0), ("D", 4, 640, 1, 3, 3.0),
        ("C", 1, 2560, 1, 1, 1.0)]),
    "profilingnet-132": (224, [
        ("C", 1, 16, 2, 3, 1.0), ("X", 3, 32, 2, 3, 1.0), ("X", 3, 48, 2, 3, 1.0),
        ("X", 3, 72, 2, 3, 1.0), ("X", 6, 128, 1, 3, 1.0), ("X", 6, 256, 2, 3, 1.0),
        ("X", 8, 512, 1, 3, 1.0), ("X", 8, 1024, 1, 3, 1.0), ("X", 4, 2048, 1, 3, 1.0),
        ("C", 1, 4096, 1, 1, 1.0)]),
}

# 20 manual nets: (types, depths, widths, strides). Kernels: first 3, last 1,
# body 5; ratios: BL 0.25, DW 6, else 1; resolution 224.
MANUAL_NETS = [
    ("CXXBDDC", "1,1,4,8,4,2,1", "32,64,96,512,320,320,1280", "2,2,2,2,2,1,1"),
    ("CXXDDDC", "1,1,4,8,4,2,1", "32,48,64,160,320,320,1280", "2,2,2,2,2,1,1"),
    ("CXXDDC", "1,1,4,8,6,1", "32,48,64,160,320,1280", "2,2,2,2,2,1"),
    ("CXBBDC", "1,1,4,8,6,1", "32,64,256,512,320,1280", "2,2,2,2,2,1"),
    ("CXBDDDC", "1,1,4,8,4,2,1", "32,32,256,144,288,288,1280", "2,2,2,2,2,1,1"),
    ("CXXBDC", "1,1,4,8,6,1", "32,64,96,512,320,1280", "2,2,2,2,2,1"),
    ("CXBDDC", "1,1,4,8,6,1", "32,32,256,144,288,1280", "2,2,2,2,2,1"),
    ("CDDDDDC", "1,1,4,8,4,2,1", "32,24,64,128,256,256,1280", "2,2,2,2,2,1,1"),
    ("CXXDDDC", "1,1,4,4,4,4,1", "32,48,64,160,160,320,1280", "2,2,2,2,1,2,1"),
    ("CDDDDC", "1,1,4,8,6,1", "32,24,64,128,256,1280", "2,2,2,2,2,1"),
    ("CXXDDDC", "1,1,4,6,2,4,1", "32,48,64,160,160,320,1280", "2,2,2,2,1,2,1"),
    ("CXXBBDC", "1,1,4,6,2,4,1", "32,64,96,512,512,320,1280", "2,2,2,2,1,2,1"),
    ("CXXBBDC", "1,1,4,4,4,4,1", "32,64,96,512,512,320,1280", "2,2,2,2,1,2,1"),
    ("CXBDDDC", "1,1,4,6,2,4,1", "32,32,256,144,144,288,1280", "2,2,2,2,1,2,1"),
    ("CXXBBBC", "1,1,4,8,4,2,1", "32,64,96,512,1024,1024,1280", "2,2,2,2,2,1,1"),
    ("CDDDDDC", "1,1,4,6,2,4,1", "32,24,64,128,128,256,1280", "2,2,2,2,1,2,1"),
    ("CXBBBC", "1,1,4,8,6,1", "32,64,256,512,1024,1280", "2,2,2,2,2,1"),
    ("CXXBBBC", "1,1,4,6,2,4,1", "32,64,96,512,512,1024,1280", "2,2,2,2,1,2,1"),
    ("CXXBBC", "1,1,4,8,6,1", "32,64,96,512,1024,1280", "2,2,2,2,2,1"),
    ("CXXBBBC", "1,1,4,4,4,4,1", "32,64,96,512,512,1024,1280", "2,2,2,2,1,2,1"),
]

# Published whole-network latencies (ms/image), V100 FP16 batches 1-64 and
# T4 TensorRT FP16/INT8 batches 1-32.
V100_BATCHES = [1, 2, 4, 8, 16, 32, 64]
T4_BATCHES = [1, 2, 4, 8, 16, 32]
V100_FP16 = [
    ("RegNetY-200MF", 70.4, [13.19, 7.02, 3.33, 1.74, 0.84, 0.51, 0.22]),
    ("RegNetY-400MF", 74.1, [16.42, 8.22, 4.88, 2.08, 1.13, 0.53, 0.44]),
    ("RegNetY-600MF", 75.5, [13.61, 7.74, 3.39, 1.71, 0.85, 0.45, 0.25]),
    ("RegNetY-800MF", 76.3, [12.80, 6.69, 3.69, 1.96, 0.82, 0.46, 0.31]),
    ("ResNet-18", 70.9, [2.87, 1.39, 0.71, 0.38, 0.19, 0.15, 0.13]),
    ("ResNet-34", 74.4, [5.13, 2.42, 1.23, 0.62, 0.32, 0.24, 0.22]),
    ("ResNet-50", 77.4, [6.77, 3.42, 1.86, 0.93, 0.46, 0.43, 0.40]),
    ("ResNet-101", 78.3, [13.24, 7.41, 3.62, 1.67, 0.83, 0.71, 0.66]),
    ("ResNet-152", 79.2, [21.33, 10.81, 5.30, 2.48, 1.23, 1.01, 0.94]),
    ("EfficientNet-B0", 76.3, [11.55, 6.24, 3.06, 1.49, 0.73, 0.40, 0.35]),
    ("EfficientNet-B1", 78.8, [16.55, 8.30, 4.09, 2.07, 1.03, 0.59, 0.55]),
    ("EfficientNet-B2", 79.8, [16.35, 8.07, 4.07, 2.04, 1.04, 0.69, 0.64]),
    ("EfficientNet-B3", 81.1, [18.64, 10.04, 5.06, 2.39, 1.28, 1.18, 1.12]),
    ("MobileNetV2-0.25", 51.8, [5.60, 2.53, 1.28, 0.70, 0.35, 0.17, 0.08]),
    ("MobileNetV2-0.5", 64.4, [5.14, 2.85, 1.29, 0.65, 0.33, 0.17, 0.10]),
    ("MobileNetV2-0.75", 69.4, [5.85, 2.90, 1.33, 0.67, 0.37, 0.19, 0.15]),
    ("MobileNetV2-1.0", 72.0, [5.78, 2.89, 1.34, 0.67, 0.34, 0.17, 0.17]),
    ("MobileNetV2-1.4", 74.7, [5.46, 2.69, 1.49, 0.69, 0.35, 0.25, 0.24]),
    ("MnasNet-1.0", 74.2, [5.84, 2.92, 1.34, 0.72, 0.34, 0.19, 0.17]),
    ("DNANet-a", 77.1, [12.91, 6.39, 3.15, 1.73, 0.81, 0.44, 0.29]),
    ("DNANet-b", 77.5, [13.31, 6.14, 3.02, 1.66, 0.78, 0.40, 0.37]),
    ("DNANet-c", 77.8, [12.61, 6.48, 2.91, 1.48, 0.81, 0.39, 0.37]),
    ("DNANet-d", 78.4, [13.04, 7.08, 3.43, 1.75, 0.83, 0.58, 0.54]),
    ("DFNet-1", 69.8, [3.59, 1.72, 0.90, 0.43, 0.24, 0.11, 0.07]),
    ("DFNet-2", 73.9, [6.69, 3.41, 1.54, 0.86, 0.40, 0.22, 0.12]),
    ("DFNet-2a", 76.0, [7.93, 4.40, 2.01, 1.00, 0.50, 0.26, 0.19]),
    ("OFANet-595M", 80.0, [12.30, 6.20, 3.08, 1.69, 0.83, 0.45, 0.41]),
    ("OFANet-482M", 79.6, [13.28, 6.19, 3.07, 1.66, 0.83, 0.40, 0.33]),
    ("OFANet-389M", 79.1, [11.83, 5.89, 2.73, 1.49, 0.74, 0.38, 0.26]),
    ("OFANet-11ms", 76.1, [6.18, 2.84, 1.55, 0.74, 0.36, 0.18, 0.17]),
    ("OFANet-9ms", 75.3, [5.04, 2.68, 1.35, 0.62, 0.32, 0.18, 0.14]),
    ("GENet-light", 75.7, [5.48, 2.94, 1.37, 0.69, 0.34, 0.19, 0.09]),
    ("GENet-normal", 80.0, [5.77, 3.14, 1.48, 0.78, 0.37, 0.23, 0.20]),
    ("GENet-large", 81.3, [7.03, 3.55, 1.78, 0.89, 0.45, 0.38, 0.33]),
]
T4_FP16 = [
    ("RegNetY-200MF", 70.4, [4.95, 2.60, 1.46, 0.65, 0.39, 0.28]),
    ("RegNetY-400MF", 74.1, [4.22, 1.96, 1.04, 0.64, 0.43, 0.34]),
    ("RegNetY-600MF", 75.5, [2.80, 1.42, 0.78, 0.48, 0.34, 0.28]),
    ("RegNetY-800MF", 76.3, [2.54, 1.39, 0.76, 0.48, 0.35, 0.30]),
    ("ResNet-18", 70.9, [1.43, 0.83, 0.56, 0.35, 0.26, 0.21]),
    ("ResNet-34", 74.4, [2.16, 1.17, 0.80, 0.49, 0.38, 0.33]),
    ("ResNet-50", 77.4, [2.27, 1.31, 0.86, 0.61, 0.51, 0.46]),
    ("ResNet-101", 78.3, [3.61, 2.13, 1.36, 0.96, 0.82, 0.74]),
    ("ResNet-152", 79.2, [4.92, 2.88, 1.85, 1.32, 1.15, 1.04]),
    ("EfficientNet-B0", 76.3, [2.99, 1.72, 1.11, 0.86, 0.74, 0.69]),
    ("EfficientNet-B1", 78.8, [4.44, 2.54, 1.66, 1.30, 1.15, 1.08]),
    ("EfficientNet-B2", 79.8, [4.76, 2.75, 1.86, 1.53, 1.39, 1.32]),
    ("EfficientNet-B3", 81.1, [6.03, 3.74, 2.85, 2.60, 2.44, 2.36]),
    ("MobileNetV2-0.25", 51.8, [1.25, 0.61, 0.35, 0.23, 0.16, 0.13]),
    ("MobileNetV2-0.5", 64.4, [1.21, 0.67, 0.39, 0.25, 0.19, 0.16]),
    ("MobileNetV2-0.75", 69.4, [1.32, 0.73, 0.45, 0.30, 0.24, 0.21]),
    ("MobileNetV2-1.0", 72.0, [1.36, 0.78, 0.48, 0.32, 0.25, 0.22]),
    ("MobileNetV2-1.4", 74.7, [1.60, 0.94, 0.57, 0.40, 0.33, 0.30]),
    ("MnasNet-1.0", 74.2, [1.49, 0.84, 0.52, 0.34, 0.28, 0.24]),
    ("DNANet-a", 77.1, [3.94, 2.15, 1.27, 0.87, 0.70, 0.62]),
    ("DNANet-b", 77.5, [3.74, 2.12, 1.30, 0.90, 0.73, 0.66]),
    ("DNANet-c", 77.8, [3.76, 2.17, 1.32, 0.94, 0.80, 0.72]),
    ("DNANet-d", 78.4, [4.20, 2.52, 1.60, 1.17, 1.01, 0.95]),
    ("DFNet-1", 69.8, [1.42, 0.74, 0.46, 0.29, 0.18, 0.14]),
    ("DFNet-2", 73.9, [2.05, 1.12, 0.66, 0.41, 0.26, 0.21]),
    ("DFNet-2a", 76.0, [2.18, 1.25, 0.70, 0.41, 0.28, 0.24]),
    ("OFANet-595M", 80.0, [3.06, 1.71, 1.13, 0.88, 0.77, 0.71]),
    ("OFANet-482M", 79.6, [2.93, 1.65, 1.02, 0.75, 0.63, 0.58]),
    ("OFANet-389M", 79.1, [2.62, 1.45, 0.89, 0.64, 0.53, 0.48]),
    ("OFANet-11ms", 76.1, [1.57, 0.91, 0.54, 0.36, 0.28, 0.24]),
    ("OFANet-9ms", 75.3, [1.39, 0.76, 0.48, 0.31, 0.24, 0.21]),
    ("GENet-light", 75.7, [1.66, 0.90, 0.48, 0.28, 0.18, 0.14]),
    ("GENet-normal", 80.0, [1.91, 1.03, 0.58, 0.37, 0.28, 0.25]),
    ("GENet-large", 81.3, [2.44, 1.34, 0.81, 0.58, 0.48, 0.44]),
]
T4_INT8 = [
    ("RegNetY-200MF", 70.4, [2.08, 1.07, 0.56, 0.34, 0.21, 0.14]),
    ("RegNetY-400MF", 74.1, [2.35, 1.27, 0.73, 0.43, 0.28, 0.20]),
    ("RegNetY-600MF", 75.5, [2.41, 1.26, 0.74, 0.43, 0.29, 0.22]),
    ("RegNetY-800MF", 76.3, [2.26, 1.27, 0.73, 0.44, 0.30, 0.23]),
    ("ResNet-18", 70.9, [1.24, 0.68, 0.41, 0.24, 0.16, 0.13]),
    ("ResNet-34", 74.4, [1.78, 1.04, 0.56, 0.34, 0.23, 0.19]),
    ("ResNet-50", 77.4, [1.83, 1.04, 0.60, 0.40, 0.30, 0.26]),
    ("ResNet-101", 78.3, [2.67, 1.59, 0.95, 0.61, 0.47, 0.41]),
    ("ResNet-152", 79.2, [3.49, 2.21, 1.24, 0.81, 0.65, 0.55]),
    ("EfficientNet-B0", 76.3, [3.47, 2.06, 1.23, 0.85, 0.64, 0.55]),
    ("EfficientNet-B1", 78.8, [5.39, 3.17, 1.93, 1.32, 0.99, 0.85]),
    ("EfficientNet-B2", 79.8, [5.59, 3.36, 2.07, 1.43, 1.18, 1.02]),
    ("EfficientNet-B3", 81.1, [7.03, 4.45, 2.94, 2.22, 1.88, 1.67]),
    ("MobileNetV2-0.25", 51.8, [1.12, 0.64, 0.34, 0.21, 0.14, 0.11]),
    ("MobileNetV2-0.5", 64.4, [1.04, 0.65, 0.35, 0.22, 0.16, 0.13]),
    ("MobileNetV2-0.75", 69.4, [1.19, 0.66, 0.41, 0.26, 0.18, 0.15]),
    ("MobileNetV2-1.0", 72.0, [1.16, 0.77, 0.42, 0.26, 0.19, 0.16]),
    ("MobileNetV2-1.4", 74.7, [1.39, 0.80, 0.48, 0.32, 0.24, 0.20]),
    ("MnasNet-1.0", 74.2, [1.29, 0.76, 0.45, 0.28, 0.21, 0.18]),
    ("DNANet-a", 77.1, [4.76, 2.68, 1.52, 0.95, 0.69, 0.55]),
    ("DNANet-b", 77.5, [4.65, 2.73, 1.61, 1.06, 0.80, 0.66]),
    ("DNANet-c", 77.8, [4.53, 2.72, 1.60, 1.02, 0.80, 0.67]),
    ("DNANet-d", 78.4, [5.39, 3.21, 1.99, 1.39, 1.11, 0.97]),
    ("DFNet-1", 69.8, [1.24, 0.71, 0.42, 0.23, 0.15, 0.11]),
    ("DFNet-2", 73.9, [1.85, 1.04, 0.58, 0.31, 0.19, 0.15]),
    ("DFNet-2a", 76.0, [1.80, 1.07, 0.58, 0.33, 0.21, 0.16]),
    ("OFANet-595M", 80.0, [4.28, 2.40, 1.39, 0.93, 0.71, 0.63]),
    ("OFANet-482M", 79.6, [4.25, 2.31, 1.33, 0.85, 0.62, 0.52]),
    ("OFANet-389M", 79.1, [3.86, 2.00, 1.16, 0.73, 0.52, 0.43]),
    ("OFANet-11ms", 76.1, [1.51, 0.81, 0.46, 0.29, 0.21, 0.18]),
    ("OFANet-9ms", 75.3, [1.23, 0.73, 0.41, 0.26, 0.18, 0.15]),
    ("GENet-light", 75.7, [1.42, 0.79, 0.41, 0.24, 0.15, 0.10]),
    ("GENet-normal", 80.0, [1.56, 0.84, 0.47, 0.28, 0.19, 0.15]),
    ("GENet-large", 81.3, [1.94, 1.06, 0.62, 0.38, 0.30, 0.26]),
]

# end-to-end seeded fixture: planted linear accuracy model around net01
PLAN_SEED = 20200701
SEARCH_SEED = 90210
NUM_CANDIDATES = 200
PLANT_A = 0.776
PLANT_G1 = {1: 0.004, 2: 0.003, 3: 0.002, 4: 0.0015, 5: 0.001}
PLANT_G2 = {1: 2e-5, 2: 1.5e-5, 3: 1e-5, 4: 8e-6, 5: 5e-6}
WIDTH_GRID = (8, 256, 1024, 4096)
BATCH = 64
RESOLUTIONS = (192, 224, 256)
BUDGETS = ("0.34", "0.20", "0.10")


def rows_to_net(name, resolution, rows, classes=1000):
    blocks = tuple(SuperBlock(BlockType[TYPE_NAMES[t]], d, c, s, k, float(r))
                   for t, d, c, s, k, r in rows)
    net = NetworkStructure(name, resolution, classes, blocks)
    problems = validate_structure(net)
    assert not problems, (name, problems)
    return net


def manual_net(i, spec):
    types, depths, widths, strides = spec
    depths = [int(x) for x in depths.split(",")]
    widths = [int(x) for x in widths.split(",")]
    strides = [int(x) for x in strides.split(",")]
    rows = []
    for j, t in enumerate(types):
        kernel = 3 if j == 0 else (1 if j == len(types) - 1 else 5)
        ratio = {"B": 0.25, "D": 6.0}.get(t, 1.0)
        rows.append((t, depths[j], widths[j], strides[j], kernel, ratio))
    return rows_to_net(f"net{i:02d}", 224, rows)


def write_structures():
    nets = {}
    for name, (res, rows) in GENETS.items():
        nets[name] = rows_to_net(name, res, rows)
    for i, spec in enumerate(MANUAL_NETS, start=1):
        nets[f"net{i:02d}"] = manual_net(i, spec)
    for name, net in nets.items():
        (FIXTURES / f"{name}.json").write_text(serialize_structure(net), encoding="utf-8")
    return nets


def write_network_latency_tables():
    for fname, batches, rows in [("latency-v100-fp16.csv", V100_BATCHES, V100_FP16),
                                 ("latency-t4-fp16.csv", T4_BATCHES, T4_FP16),
                                 ("latency-t4-int8.csv", T4_BATCHES, T4_INT8)]:
        lines = ["model,acc,batch,latency_ms"]
        for model, acc, lats in rows:
            for batch, lat in zip(batches, lats):
                lines.append(f"{model},{acc / 100:g},{batch},{lat:g}")
        (FIXTURES / fname).write_text("\n".join(lines) + "\n", encoding="utf-8")


def block_latency(block_type, width, ratio, kernel, stride, resolution):
    """Synthetic per-basic-block ms/image at batch 64; linear in width."""
    factor = {"CONV": 0.85, "XX": 1.0,
              "BL": 0.30 + 0.70 * ratio,
              "DW": 0.10 + 0.02 * ratio}[block_type]
    out_res = resolution / stride
    return 0.05 * factor * (width / 256) * (kernel / 3) ** 2 * (out_res / 56) ** 2 + 0.002


def write_dw_sweep():
    lines = ["block_type,width,ratio,kernel,stride,resolution,batch,latency_ms"]
    for width in (256, 512, 768, 1024, 1536, 2048):
        lat = block_latency("DW", width, 3.0, 3, 1, 224)
        lines.append(f"DW,{width},3,3,1,224,{BATCH},{lat!r}")
    (FIXTURES / "bench-dw-224-b64.csv").write_text("\n".join(lines) + "\n", encoding="utf-8")


def write_block_table(master):
    keys = {}
    ratio_sets = {"CONV": None, "XX": None, "BL": (0.25, 0.5), "DW": (3.0, 6.0, 9.0)}
    for res in RESOLUTIONS:
        at_res = NetworkStructure(master.name, res, master.num_classes, master.superblocks)
        for idx, block, _in, in_res in superblock_io(at_res):
            t = block.block_type.value
            body = idx in master.body_indices()
            ratios = ratio_sets[t] if (body and ratio_sets[t]) else (block.ratio,)
            kernels = (3, 5) if body else (block.kernel,)
            widths = WIDTH_GRID if body else (block.width,)
            for ratio in ratios:
                for kernel in kernels:
                    for width in widths:
                        key = (t, width, ratio, kernel, block.stride, in_res, BATCH)
                        keys[key] = block_latency(t, width, ratio, kernel, block.stride, in_res)
    lines = ["block_type,width,ratio,kernel,stride,resolution,batch,latency_ms"]
    for (t, w, r, k, s, res, b), lat in sorted(keys.items()):
        lines.append(f"{t},{w},{r:g},{k},{s},{res},{b},{lat!r}")
    (FIXTURES / "block-latency-synthetic.csv").write_text("\n".join(lines) + "\n", encoding="utf-8")


def write_planted_trials(master):
    plan = plan_trials(master, PerturbationRanges(), PLAN_SEED)
    trials = []
    for r in plan:
        base = master.superblocks[r.superblock_index]
        acc = (PLANT_A + PLANT_G1[r.superblock_index] * (r.depth - base.depth)
               + PLANT_G2[r.superblock_index] * (r.width - base.width))
        trials.append(TrialRecord(r.superblock_index, r.block_type, r.depth, r.width,
                                  r.kernel, r.ratio, acc))
    (FIXTURES / "llr-trials-net01.csv").write_text(write_trials(trials), encoding="utf-8")


def run_pipeline():
    master = str(FIXTURES / "net01.json")
    rc = cli_main(["fit", master, str(FIXTURES / "llr-trials-net01.csv"),
                   "--master-accuracy", str(PLANT_A),
                   "--out", str(FIXTURES / "gradients-net01.json")])
    assert rc == 0, "fit failed"
    for budget in BUDGETS:
        rc = cli_main(["search", master,
                       "--gradients", str(FIXTURES / "gradients-net01.json"),
                       "--latency-table", str(FIXTURES / "block-latency-synthetic.csv"),
                       "--budget", budget, "--seed", str(SEARCH_SEED),
                       "--num-candidates", str(NUM_CANDIDATES),
                       "--resolutions", ",".join(str(r) for r in RESOLUTIONS),
                       "--batch", str(BATCH),
                       "--out", str(FIXTURES / f"winner-report-{budget}ms.json")])
        assert rc == 0, f"search failed for budget {budget}"


def main():
    FIXTURES.mkdir(parents=True, exist_ok=True)
    nets = write_structures()
    write_network_latency_tables()
    write_dw_sweep()
    write_block_table(nets["net01"])
    write_planted_trials(nets["net01"])
    run_pipeline()
    print(f"wrote {len(list(FIXTURES.iterdir()))} fixture files to {FIXTURES}")


if __name__ == "__main__":
    main()
