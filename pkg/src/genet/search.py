"""Local linear regression NAS: trial planning, pseudo-gradient fitting,
accuracy prediction, and budget-constrained selection.

The pipeline mirrors a three-step protocol:

1. *Plan*: for every body super-block of a master net, sample N perturbed
   variants (depth/width/kernel/ratio) to be fine-tuned externally.
2. *Fit*: per (super-block index, block type), least-squares fit of
   ``g1 * (d' - d) + g2 * (c' - c) ~ A' - A*`` over the measured trial
   accuracies -- the pseudo-gradient.
3. *Select*: among randomly generated candidate structures, keep those whose
   estimated latency fits the budget and return the one with the highest
   predicted accuracy, independently at each input resolution (the fitted
   gradients are shared across resolutions).

Blocks that differ in kernel size or ratio count as distinct block types for
fitting; groups with fewer than two such samples fall back to the coarser
(index, base type) entry at prediction time.
"""

from dataclasses import dataclass, field
import csv
import io
import json
import math

import numpy as np

from .cost import LatencyTable, estimate_latency
from .errors import GenetError
from .rng import Rng
from .structure import BlockType, NetworkStructure, SuperBlock, structure_to_dict

WIDTH_QUANTUM = 8  # sampled widths snap to multiples of this

TRIAL_HEADER = ["superblock_index", "block_type", "depth", "width", "kernel", "ratio", "accuracy"]


@dataclass(frozen=True)
class PerturbationRanges:
    kernel_choices: tuple[int, ...] = (3, 5)
    width_factor: tuple[float, float] = (0.5, 2.0)
    depth_delta: tuple[int, int] = (-2, 2)
    bl_ratios: tuple[float, ...] = (0.25, 0.5)
    dw_ratios: tuple[float, ...] = (3.0, 6.0, 9.0)
    samples_per_superblock: int = 9

    def __post_init__(self):
        if not self.kernel_choices or not self.bl_ratios or not self.dw_ratios:
            raise GenetError("EMPTY_RANGE", "choice sets must be non-empty")
        if self.width_factor[0] > self.width_factor[1] or self.depth_delta[0] > self.depth_delta[1]:
            raise GenetError("EMPTY_RANGE", "interval bounds out of order")
        if self.samples_per_superblock < 1:
            raise GenetError("EMPTY_RANGE", "samples_per_superblock must be >= 1")

    def ratio_choices(self, block_type: BlockType) -> tuple[float, ...]:
        if block_type is BlockType.BL:
            return tuple(sorted(self.bl_ratios))
        if block_type is BlockType.DW:
            return tuple(sorted(self.dw_ratios))
        return (1.0,)


@dataclass(frozen=True)
class TrialRecord:
    superblock_index: int
    block_type: BlockType
    depth: int
    width: int
    kernel: int
    ratio: float
    accuracy: float | None = None


@dataclass(frozen=True)
class GradientEntry:
    index: int
    type_token: str
    g1: float  # accuracy per depth unit
    g2: float  # accuracy per channel
    n: int
    rms: float
    singular: bool


@dataclass
class PseudoGradientTable:
    master_accuracy: float
    entries: dict[tuple[int, str], GradientEntry] = field(default_factory=dict)


@dataclass(frozen=True)
class SearchConfig:
    latency_budget_ms: float
    seed: int
    num_candidates: int = 256
    resolutions: tuple[int, ...] = (192, 224, 256)
    batch: int = 64
    ranges: PerturbationRanges = PerturbationRanges()


def type_token(block_type: BlockType, kernel: int, ratio: float) -> str:
    """Fine-grained block-type key: kernel and ratio folded into the type."""
    return f"{block_type.value}:k{kernel}:r{ratio:g}"


def _legal_depths(base: int, delta: tuple[int, int], index: int) -> list[int]:
    lo, hi = base + delta[0], base + delta[1]
    depths = [d for d in range(lo, hi + 1) if d >= 1]
    if not depths:
        raise GenetError("EMPTY_RANGE", f"no legal depth in [{lo}, {hi}]", index=index)
    return depths


def _width_bounds(base: int, factor: tuple[float, float], index: int) -> tuple[int, int]:
    """Inclusive bounds of the quantized width range, in quantum steps."""
    lo = max(1, math.ceil(factor[0] * base / WIDTH_QUANTUM - 1e-9))
    hi = math.floor(factor[1] * base / WIDTH_QUANTUM + 1e-9)
    if hi < lo:
        raise GenetError("EMPTY_RANGE",
                         f"no multiple of {WIDTH_QUANTUM} in [{factor[0] * base}, {factor[1] * base}]",
                         index=index)
    return lo, hi


def _sample_block(rng: Rng, index: int, base: SuperBlock, block_type: BlockType,
                  ranges: PerturbationRanges) -> tuple[int, int, int, float]:
    """Draw (depth, width, kernel, ratio); draw order is part of the seed contract."""
    depth = rng.choice(_legal_depths(base.depth, ranges.depth_delta, index))
    lo, hi = _width_bounds(base.width, ranges.width_factor, index)
    width = WIDTH_QUANTUM * rng.randint(lo, hi)
    kernel = rng.choice(tuple(sorted(ranges.kernel_choices)))
    ratio = rng.choice(ranges.ratio_choices(block_type))
    return depth, width, kernel, ratio


def plan_trials(master: NetworkStructure, ranges: PerturbationRanges, seed: int) -> list[TrialRecord]:
    """Sample ``samples_per_superblock`` perturbations of every body super-block.

    Stem and head are never perturbed.  Deterministic for a fixed seed: the
    draws happen body-block by body-block, and per record in the order
    depth, width, kernel, ratio.
    """
    rng = Rng(seed)
    records = []
    for i in master.body_indices():
        sb = master.superblocks[i]
        for _ in range(ranges.samples_per_superblock):
            depth, width, kernel, ratio = _sample_block(rng, i, sb, sb.block_type, ranges)
            records.append(TrialRecord(i, sb.block_type, depth, width, kernel, ratio))
    return records


def write_trials(records) -> str:
    out = io.StringIO()
    w = csv.writer(out, lineterminator="\n")
    w.writerow(TRIAL_HEADER)
    for r in records:
        acc = "" if r.accuracy is None else repr(r.accuracy)
        w.writerow([r.superblock_index, r.block_type.value, r.depth, r.width,
                    r.kernel, f"{r.ratio:g}", acc])
    return out.getvalue()


def ingest_trials(text: str, require_accuracy: bool = True) -> list[TrialRecord]:
    """Parse a trial CSV; accuracies must be present and within [0, 1]."""
    reader = csv.reader(io.StringIO(text))
    try:
        header = next(reader)
    except StopIteration:
        raise GenetError("MALFORMED_ROW", "empty trial CSV") from None
    if header != TRIAL_HEADER:
        raise GenetError("MALFORMED_ROW", f"bad header {header}, expected {TRIAL_HEADER}")
    records = []
    for lineno, row in enumerate(reader, start=2):
        if not row:
            continue
        if len(row) != len(TRIAL_HEADER):
            raise GenetError("MALFORMED_ROW", f"line {lineno}: expected {len(TRIAL_HEADER)} fields")
        try:
            btype = BlockType(row[1])
            index, depth, width, kernel = int(row[0]), int(row[2]), int(row[3]), int(row[4])
            ratio = float(row[5])
        except ValueError as e:
            raise GenetError("MALFORMED_ROW", f"line {lineno}: {e}") from None
        if row[6] == "":
            if require_accuracy:
                raise GenetError("MALFORMED_ROW", f"line {lineno}: missing accuracy")
            accuracy = None
        else:
            try:
                accuracy = float(row[6])
            except ValueError as e:
                raise GenetError("MALFORMED_ROW", f"line {lineno}: {e}") from None
            if not 0.0 <= accuracy <= 1.0:
                raise GenetError("OUT_OF_RANGE_ACCURACY",
                                 f"line {lineno}: accuracy {accuracy} outside [0, 1]")
        records.append(TrialRecord(index, btype, depth, width, kernel, ratio, accuracy))
    return records


def _fit_group(index: int, token: str, base: SuperBlock, trials) -> GradientEntry:
    X = np.array([[t.depth - base.depth, t.width - base.width] for t in trials], dtype=np.float64)
    y = np.array([t.accuracy for t in trials], dtype=np.float64)
    if not X.any():
        rms = float(np.sqrt(np.mean(y ** 2))) if len(y) else 0.0
        return GradientEntry(index, token, 0.0, 0.0, len(trials), rms, singular=True)
    g, _, _, _ = np.linalg.lstsq(X, y, rcond=None)
    residual = y - X @ g
    rms = float(np.sqrt(np.mean(residual ** 2)))
    return GradientEntry(index, token, float(g[0]), float(g[1]), len(trials), rms, singular=False)


def fit_pseudo_gradients(master: NetworkStructure, master_accuracy: float,
                         trials) -> PseudoGradientTable:
    """Least-squares pseudo-gradients per (super-block index, block type).

    The no-intercept model ``g1 * delta_depth + g2 * delta_width ~
    accuracy - master_accuracy`` is solved in the minimum-norm sense, so
    rank-deficient designs (e.g. depth-only perturbations) stay well
    defined.  Fine-grained entries (type + kernel + ratio) are fitted
    alongside the coarse per-type entries whenever a fine group has at
    least two samples.
    """
    body = set(master.body_indices())
    for t in trials:
        if t.accuracy is None:
            raise ValueError(f"trial for super-block {t.superblock_index} has no accuracy")
        if t.superblock_index not in body:
            raise ValueError(f"trial references super-block {t.superblock_index}, "
                             f"not a body block of {master.name!r}")

    deltas = [TrialRecord(t.superblock_index, t.block_type, t.depth, t.width, t.kernel,
                          t.ratio, t.accuracy - master_accuracy) for t in trials]
    coarse: dict[tuple[int, str], list[TrialRecord]] = {}
    fine: dict[tuple[int, str], list[TrialRecord]] = {}
    for t in deltas:
        coarse.setdefault((t.superblock_index, t.block_type.value), []).append(t)
        fine.setdefault((t.superblock_index, type_token(t.block_type, t.kernel, t.ratio)), []).append(t)

    table = PseudoGradientTable(master_accuracy)
    for i in sorted(body):
        base = master.superblocks[i]
        key = (i, base.block_type.value)
        if key not in coarse:
            raise GenetError("NO_TRIALS", f"no trials for super-block {i} ({base.block_type.value})",
                             index=i)
    for (i, token), group in sorted(coarse.items()):
        table.entries[(i, token)] = _fit_group(i, token, master.superblocks[i], group)
    for (i, token), group in sorted(fine.items()):
        if len(group) >= 2:
            table.entries[(i, token)] = _fit_group(i, token, master.superblocks[i], group)
    return table


def _lookup_entry(table: PseudoGradientTable, index: int, sb: SuperBlock) -> GradientEntry:
    entry = table.entries.get((index, type_token(sb.block_type, sb.kernel, sb.ratio)))
    if entry is None:
        entry = table.entries.get((index, sb.block_type.value))
    if entry is None:
        raise GenetError("UNFITTED_TYPE",
                         f"no fitted entry for super-block {index} type {sb.block_type.value}",
                         index=index)
    return entry


def predict_accuracy(table: PseudoGradientTable, master: NetworkStructure,
                     candidate: NetworkStructure) -> float:
    """Master accuracy plus the fitted linear response to depth/width deltas."""
    if len(candidate.superblocks) != len(master.superblocks):
        raise ValueError("candidate and master must have the same super-block count")
    if any(c.stride != m.stride for c, m in zip(candidate.superblocks, master.superblocks)):
        raise ValueError("candidate and master must share the stride pattern")
    acc = table.master_accuracy
    for i in master.body_indices():
        cand, base = candidate.superblocks[i], master.superblocks[i]
        entry = _lookup_entry(table, i, cand)
        acc += entry.g1 * (cand.depth - base.depth) + entry.g2 * (cand.width - base.width)
    return acc


_SWITCHABLE_TYPES = (BlockType.XX, BlockType.BL, BlockType.DW)


def generate_candidates(master: NetworkStructure, ranges: PerturbationRanges, n: int,
                        seed: int, allow_type_switch: bool = False) -> list[NetworkStructure]:
    """Sample ``n`` valid structures around the master, stem/head untouched.

    Per body block the draws are uniform and independent: depth on the legal
    delta interval, width on the quantized factor interval, kernel and ratio
    on their sets.  Block types follow the master unless
    ``allow_type_switch`` draws them from {XX, BL, DW}.
    """
    rng = Rng(seed)
    out = []
    for c in range(n):
        blocks = list(master.superblocks)
        for i in master.body_indices():
            base = blocks[i]
            btype = rng.choice(_SWITCHABLE_TYPES) if allow_type_switch else base.block_type
            depth, width, kernel, ratio = _sample_block(rng, i, base, btype, ranges)
            blocks[i] = SuperBlock(btype, depth, width, base.stride, kernel, ratio)
        out.append(NetworkStructure(f"{master.name}-cand{c:04d}", master.resolution,
                                    master.num_classes, tuple(blocks)))
    return out


@dataclass(frozen=True)
class ResolutionResult:
    resolution: int
    feasible_count: int
    winner_index: int | None = None
    structure: NetworkStructure | None = None
    predicted_accuracy: float | None = None
    estimated_latency_ms: float | None = None
    error: str | None = None


def select_best(candidates, table: PseudoGradientTable, master: NetworkStructure,
                lat_table: LatencyTable, config: SearchConfig) -> dict[int, ResolutionResult]:
    """Best predicted candidate within the latency budget, per resolution.

    Resolutions are handled independently with the shared pseudo-gradient
    table; ties break toward the lowest candidate index.  A resolution with
    no feasible candidate yields a NO_FEASIBLE_CANDIDATE marker without
    blocking the others.
    """
    if not candidates:
        raise ValueError("candidate list is empty")
    predictions = [predict_accuracy(table, master, c) for c in candidates]
    results: dict[int, ResolutionResult] = {}
    for res in sorted(config.resolutions):
        best = None  # (prediction, index, structure, latency)
        feasible = 0
        for idx, cand in enumerate(candidates):
            at_res = NetworkStructure(cand.name, res, cand.num_classes, cand.superblocks)
            latency = estimate_latency(at_res, lat_table, config.batch).total_ms
            if latency > config.latency_budget_ms:
                continue
            feasible += 1
            if best is None or predictions[idx] > best[0]:
                best = (predictions[idx], idx, at_res, latency)
        if best is None:
            results[res] = ResolutionResult(res, 0, error="NO_FEASIBLE_CANDIDATE")
        else:
            pred, idx, winner, latency = best
            results[res] = ResolutionResult(res, feasible, winner_index=idx, structure=winner,
                                            predicted_accuracy=pred, estimated_latency_ms=latency)
    return results


def gradient_table_to_json(table: PseudoGradientTable) -> str:
    entries = [
        {"index": e.index, "type": e.type_token, "g1": e.g1, "g2": e.g2,
         "n": e.n, "rms": e.rms, "singular": e.singular}
        for _, e in sorted(table.entries.items())
    ]
    doc = {"master_accuracy": table.master_accuracy, "entries": entries}
    return json.dumps(doc, sort_keys=True, indent=2) + "\n"


def gradient_table_from_json(text: str) -> PseudoGradientTable:
    try:
        doc = json.loads(text)
        table = PseudoGradientTable(float(doc["master_accuracy"]))
        for e in doc["entries"]:
            entry = GradientEntry(int(e["index"]), str(e["type"]), float(e["g1"]), float(e["g2"]),
                                  int(e["n"]), float(e["rms"]), bool(e["singular"]))
            if (entry.index, entry.type_token) in table.entries:
                raise GenetError("DUPLICATE_KEY", f"duplicate gradient entry {entry.index}/{entry.type_token}")
            table.entries[(entry.index, entry.type_token)] = entry
    except (json.JSONDecodeError, KeyError, TypeError, ValueError) as e:
        raise GenetError("MALFORMED_DOCUMENT", f"bad gradient table: {e}") from None
    return table


def selection_report_to_dict(results: dict[int, ResolutionResult]) -> dict:
    out = {}
    for res, r in sorted(results.items()):
        if r.error is not None:
            out[str(res)] = {"error": r.error, "feasible_count": r.feasible_count}
        else:
            out[str(res)] = {
                "structure": structure_to_dict(r.structure),
                "predicted_accuracy": r.predicted_accuracy,
                "estimated_latency_ms": r.estimated_latency_ms,
                "feasible_count": r.feasible_count,
            }
    return out
