"""Analytic FLOPs/parameter accounting and benchmark-table latency estimation.

Conventions (calibrated against the published structure tables):

* 1 multiply-accumulate = 1 FLOP.
* Every convolution is followed by a batch norm contributing 2 * out_channels
  parameters and zero inference FLOPs (foldable).
* Convolutions carry no bias.
* The classifier adds head_width * num_classes weights + num_classes biases
  (params) and head_width * num_classes MACs (FLOPs); pooling is free.

Latency is a lookup model, not a measurement: per-basic-block latencies come
from a benchmark table keyed on everything except width, with linear
interpolation in width; a network's latency is the depth-weighted sum over
its super-blocks.
"""

from dataclasses import dataclass, field
import csv
import io

from .errors import GenetError
from .structure import LayerSpec, NetworkStructure, superblock_io, enumerate_layers


@dataclass(frozen=True)
class CostReport:
    flops: int
    params: int
    resolution: int
    batch: int | None = None
    latency_ms_per_image: float | None = None

    def to_dict(self) -> dict:
        d = {"flops": self.flops, "params": self.params, "resolution": self.resolution}
        if self.batch is not None:
            d["batch"] = self.batch
        if self.latency_ms_per_image is not None:
            d["latency_ms_per_image"] = self.latency_ms_per_image
        return d


def layer_params(layer: LayerSpec) -> int:
    """Conv weights plus the trailing batch-norm affine for one layer."""
    weights = (layer.in_channels // layer.groups) * layer.out_channels * layer.kernel ** 2
    return weights + 2 * layer.out_channels


def layer_flops(layer: LayerSpec) -> int:
    """MACs for one convolution at its tracked feature-map size."""
    out_res = layer.input_resolution // layer.stride
    return (layer.in_channels // layer.groups) * layer.out_channels * layer.kernel ** 2 * out_res * out_res


def compute_params(net: NetworkStructure) -> int:
    """Total parameter count: all convs + batch norms + classifier."""
    total = sum(layer_params(l) for l in enumerate_layers(net))
    total += net.head_width * net.num_classes + net.num_classes
    return total


def compute_flops(net: NetworkStructure, resolution: int | None = None) -> int:
    """Total inference MACs at the given input resolution.

    Raises DIVISIBILITY if the resolution is incompatible with the net's
    stride product.
    """
    if resolution is None:
        resolution = net.resolution
    if resolution < 1 or resolution % net.stride_product != 0:
        raise GenetError("DIVISIBILITY",
                         f"resolution {resolution} is not divisible by stride product {net.stride_product}")
    scaled = NetworkStructure(net.name, resolution, net.num_classes, net.superblocks)
    total = sum(layer_flops(l) for l in enumerate_layers(scaled))
    total += net.head_width * net.num_classes
    return total


def aggregate_latency(samples) -> float:
    """Trimmed mean of timing samples.

    Sorts the samples, drops floor(n * 0.1) from each end, and returns the
    arithmetic mean of the remainder (plain mean for n < 10).
    """
    samples = list(samples)
    if not samples:
        raise GenetError("EMPTY_INPUT", "no timing samples to aggregate")
    samples.sort()
    k = int(len(samples) * 0.1)
    kept = samples[k:len(samples) - k]
    return sum(kept) / len(kept)


# (block_type, width, ratio, kernel, stride, input_resolution, batch)
TableKey = tuple[str, int, float, int, int, int, int]

BENCHMARK_HEADER = ["block_type", "width", "ratio", "kernel", "stride", "resolution", "batch", "latency_ms"]


@dataclass
class LatencyTable:
    """Per-basic-block latency lookup keyed by shape/operating point."""

    rows: dict[TableKey, float] = field(default_factory=dict)
    device: str = ""
    precision: str = ""

    def add(self, key: TableKey, latency_ms: float) -> None:
        if key in self.rows:
            raise GenetError("DUPLICATE_KEY", f"duplicate benchmark key {key}")
        if latency_ms <= 0:
            raise GenetError("MALFORMED_ROW", f"latency must be positive, got {latency_ms} for {key}")
        self.rows[key] = latency_ms

    def widths_for(self, block_type: str, ratio: float, kernel: int, stride: int,
                   resolution: int, batch: int) -> list[tuple[int, float]]:
        """All (width, latency) pairs matching the non-width key fields, sorted."""
        hits = [(w, v) for (t, w, r, k, s, res, b), v in self.rows.items()
                if (t, r, k, s, res, b) == (block_type, ratio, kernel, stride, resolution, batch)]
        hits.sort()
        return hits


def ingest_benchmark(text: str) -> LatencyTable:
    """Parse a benchmark CSV (header ``block_type,width,ratio,kernel,stride,resolution,batch,latency_ms``)."""
    reader = csv.reader(io.StringIO(text))
    try:
        header = next(reader)
    except StopIteration:
        raise GenetError("MALFORMED_ROW", "empty benchmark CSV") from None
    if header != BENCHMARK_HEADER:
        raise GenetError("MALFORMED_ROW", f"bad header {header}, expected {BENCHMARK_HEADER}")
    table = LatencyTable()
    for lineno, row in enumerate(reader, start=2):
        if not row:
            continue
        if len(row) != len(BENCHMARK_HEADER):
            raise GenetError("MALFORMED_ROW", f"line {lineno}: expected {len(BENCHMARK_HEADER)} fields, got {len(row)}")
        try:
            key = (row[0], int(row[1]), float(row[2]), int(row[3]), int(row[4]), int(row[5]), int(row[6]))
            latency = float(row[7])
        except ValueError as e:
            raise GenetError("MALFORMED_ROW", f"line {lineno}: {e}") from None
        table.add(key, latency)
    return table


@dataclass(frozen=True)
class LatencyEstimate:
    total_ms: float
    per_superblock_ms: tuple[float, ...]
    extrapolated: tuple[int, ...]  # super-block indices clamped to a table edge


def _superblock_latency(table: LatencyTable, sb_index: int, block_type: str, width: int,
                        ratio: float, kernel: int, stride: int, resolution: int,
                        batch: int) -> tuple[float, bool]:
    hits = table.widths_for(block_type, ratio, kernel, stride, resolution, batch)
    if not hits:
        raise GenetError(
            "MISSING_KEY",
            f"no benchmark row for (type={block_type}, ratio={ratio}, kernel={kernel}, "
            f"stride={stride}, resolution={resolution}, batch={batch})",
            index=sb_index)
    widths = [w for w, _ in hits]
    if width <= widths[0]:
        return hits[0][1], width < widths[0]
    if width >= widths[-1]:
        return hits[-1][1], width > widths[-1]
    for (w0, v0), (w1, v1) in zip(hits, hits[1:]):
        if w0 <= width <= w1:
            if width == w0:
                return v0, False
            if width == w1:
                return v1, False
            return v0 + (width - w0) / (w1 - w0) * (v1 - v0), False
    raise AssertionError("unreachable: widths are sorted")


def estimate_latency(net: NetworkStructure, table: LatencyTable, batch: int) -> LatencyEstimate:
    """Estimated ms/image: depth-weighted sum of per-basic-block table lookups.

    Every super-block (stem and head included) must be covered by the table
    at its exact (type, ratio, kernel, stride, input_resolution, batch) key
    for at least one width; latency is linearly interpolated in width and
    clamped (and flagged) outside the covered width range.
    """
    per_sb = []
    extrapolated = []
    for idx, sb, _in_ch, res in superblock_io(net):
        per_block, clamped = _superblock_latency(
            table, idx, sb.block_type.value, sb.width, sb.ratio, sb.kernel, sb.stride, res, batch)
        per_sb.append(per_block * sb.depth)
        if clamped:
            extrapolated.append(idx)
    return LatencyEstimate(sum(per_sb), tuple(per_sb), tuple(extrapolated))


def cost_report(net: NetworkStructure, resolution: int | None = None,
                table: LatencyTable | None = None, batch: int | None = None) -> CostReport:
    resolution = net.resolution if resolution is None else resolution
    flops = compute_flops(net, resolution)
    params = compute_params(net)
    latency = None
    if table is not None:
        at_res = NetworkStructure(net.name, resolution, net.num_classes, net.superblocks)
        latency = estimate_latency(at_res, table, 64 if batch is None else batch).total_ms
    return CostReport(flops=flops, params=params, resolution=resolution, batch=batch,
                      latency_ms_per_image=latency)
