"""Micro-benchmark the basic blocks into raw timing CSVs.

Block instantiation mirrors the cost model's layer expansion exactly (same
convs, batch norms, residual projections), so benchmarked shapes match what
the analytic accounting charges for.  Profiling stacks use 5 blocks for
XX/CONV and 10 for BL/DW so the stacks cover the same visual region; the
emitted latency is per image *per basic block* (stack time / batch / depth).

This module never aggregates: it emits one CSV row per repeat and leaves
the trimmed mean to the consumer's bench-aggregate command.  Warm-up
iterations run before timing and are excluded from the samples.
"""

import time
from dataclasses import dataclass

import torch
from torch import nn

from .errors import AdapterError

STACK_DEPTHS = {"CONV": 5, "XX": 5, "BL": 10, "DW": 10}
WARMUP_ITERS = 5

CSV_HEADER = "block_type,width,ratio,kernel,stride,resolution,batch,latency_ms"


@dataclass(frozen=True)
class GridPoint:
    block_type: str
    width: int
    ratio: float
    kernel: int
    stride: int
    resolution: int
    batch: int


def _conv_bn(cin, cout, k, stride=1, groups=1):
    return [nn.Conv2d(cin, cout, k, stride=stride, padding=k // 2, groups=groups, bias=False),
            nn.BatchNorm2d(cout)]


class _ResidualBlock(nn.Module):
    """Main branch + optional 1x1 projection, ReLU after the sum."""

    def __init__(self, main_layers, in_ch, out_ch, stride):
        super().__init__()
        self.main = nn.Sequential(*main_layers)
        self.proj = None
        if in_ch != out_ch or stride != 1:
            self.proj = nn.Sequential(*_conv_bn(in_ch, out_ch, 1, stride=stride))
        self.relu = nn.ReLU(inplace=True)

    def forward(self, x):
        out = self.main(x)
        res = self.proj(x) if self.proj is not None else x
        return self.relu(out + res)


def build_block(block_type, in_ch, width, ratio, kernel, stride):
    if block_type == "CONV":
        return nn.Sequential(*_conv_bn(in_ch, width, kernel, stride=stride), nn.ReLU(inplace=True))
    if block_type == "XX":
        layers = _conv_bn(in_ch, width, kernel, stride=stride) + [nn.ReLU(inplace=True)]
        layers += _conv_bn(width, width, kernel)
        return _ResidualBlock(layers, in_ch, width, stride)
    if block_type == "BL":
        inner = int(round(width * ratio))
        layers = _conv_bn(in_ch, inner, 1) + [nn.ReLU(inplace=True)]
        layers += _conv_bn(inner, inner, kernel, stride=stride) + [nn.ReLU(inplace=True)]
        layers += _conv_bn(inner, width, 1)
        return _ResidualBlock(layers, in_ch, width, stride)
    if block_type == "DW":
        expanded = int(round(width * ratio))
        layers = _conv_bn(in_ch, expanded, 1) + [nn.ReLU(inplace=True)]
        layers += _conv_bn(expanded, expanded, kernel, stride=stride, groups=expanded)
        layers += [nn.ReLU(inplace=True)]
        layers += _conv_bn(expanded, width, 1)
        return _ResidualBlock(layers, in_ch, width, stride)
    raise ValueError(f"unknown block type {block_type!r}")


def build_profiling_stack(point: GridPoint) -> nn.Module:
    """Stack of identical-width blocks; only the first block may down-sample."""
    depth = STACK_DEPTHS[point.block_type]
    blocks = [build_block(point.block_type, point.width, point.width, point.ratio,
                          point.kernel, point.stride if i == 0 else 1)
              for i in range(depth)]
    return nn.Sequential(*blocks)


def _resolve_device(device):
    if str(device).startswith("cuda") and not torch.cuda.is_available():
        raise AdapterError("DEVICE_UNAVAILABLE", "CUDA requested but no GPU is available")
    return torch.device(device)


def bench_blocks(grid, repeats=30, device="cuda", dtype=torch.float32, warmup=WARMUP_ITERS):
    """Time every grid point ``repeats`` times; returns (csv_text, metadata).

    The CSV repeats each key once per sample so the consumer's trimmed-mean
    aggregation sees the raw distribution.
    """
    if repeats < 1:
        raise ValueError("repeats must be >= 1")
    dev = _resolve_device(device)
    use_cuda = dev.type == "cuda"
    lines = [CSV_HEADER]
    for raw in grid:
        point = raw if isinstance(raw, GridPoint) else GridPoint(*raw)
        model = build_profiling_stack(point).to(device=dev, dtype=dtype).eval()
        x = torch.randn(point.batch, point.width, point.resolution, point.resolution,
                        device=dev, dtype=dtype)
        stack_depth = STACK_DEPTHS[point.block_type]
        with torch.no_grad():
            for _ in range(warmup):
                model(x)
            for _ in range(repeats):
                if use_cuda:
                    torch.cuda.synchronize(dev)
                start = time.perf_counter()
                model(x)
                if use_cuda:
                    torch.cuda.synchronize(dev)
                elapsed_ms = (time.perf_counter() - start) * 1000.0
                per_image_per_block = elapsed_ms / point.batch / stack_depth
                lines.append(f"{point.block_type},{point.width},{point.ratio:g},{point.kernel},"
                             f"{point.stride},{point.resolution},{point.batch},"
                             f"{per_image_per_block!r}")
    metadata = {"device": str(dev), "precision": str(dtype).replace("torch.", ""),
                "warmup_iterations": warmup, "repeats": repeats,
                "stack_depths": dict(STACK_DEPTHS)}
    return "\n".join(lines) + "\n", metadata
