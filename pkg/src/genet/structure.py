"""Regularized network structure space: super-blocks, validation, JSON I/O.

A network is a chain of super-blocks (stem conv, body, 1x1 conv head)
followed by an implicit global average pool and a fully-connected
classifier.  Each super-block stacks ``depth`` identical basic blocks of a
single type and width; only the first basic block may down-sample.

Block internals used by :func:`enumerate_layers`:

* CONV -- plain full convolutions, no residual wrap.
* XX   -- two stacked k x k full convolutions, residual-wrapped.
* BL   -- 1x1 reduce -> k x k full -> 1x1 expand, bottleneck ratio r <= 1
          (inner width = width * r).
* DW   -- 1x1 expand -> k x k depth-wise -> 1x1 project, expansion ratio
          r >= 1 (depth-wise width = width * r).

For XX/BL/DW a 1x1 projection conv is inserted on the residual path of any
basic block whose input and output shapes differ (channel change or stride
2).  Down-sampling happens at the first k>1 layer of the first basic block.
"""

from dataclasses import dataclass
from enum import Enum
import json

from .errors import invariant_violation, malformed_document, schema_violation


class BlockType(Enum):
    CONV = "CONV"
    XX = "XX"
    BL = "BL"
    DW = "DW"


@dataclass(frozen=True)
class SuperBlock:
    """One stage of the network: ``depth`` basic blocks of one type/width."""

    block_type: BlockType
    depth: int
    width: int
    stride: int
    kernel: int
    ratio: float


@dataclass(frozen=True)
class NetworkStructure:
    """Full structural description of a network (no weights)."""

    name: str
    resolution: int
    num_classes: int
    superblocks: tuple[SuperBlock, ...]

    @property
    def head_width(self) -> int:
        return self.superblocks[-1].width

    @property
    def stride_product(self) -> int:
        p = 1
        for sb in self.superblocks:
            p *= sb.stride
        return p

    def body_indices(self) -> range:
        """Indices of the perturbable super-blocks (stem and head excluded)."""
        return range(1, len(self.superblocks) - 1)


@dataclass(frozen=True)
class LayerSpec:
    """A single convolution produced by expanding a super-block."""

    name: str
    in_channels: int
    out_channels: int
    kernel: int
    stride: int
    groups: int
    input_resolution: int
    projection: bool = False

    @property
    def output_resolution(self) -> int:
        return self.input_resolution // self.stride


@dataclass(frozen=True)
class Violation:
    """One broken invariant; ``index`` is None for network-level rules."""

    index: int | None
    rule: str
    message: str


def _is_int(x) -> bool:
    return type(x) is int


def inner_width(sb: SuperBlock) -> int:
    """Channel count of the inner (k x k) layer of a BL or DW block."""
    return int(round(sb.width * sb.ratio))


def dw_depthwise_parameterization(width: int, ratio: float) -> tuple[int, float]:
    """Alternate DW parameterization: width of the depth-wise layer itself.

    The stored convention keeps ``width`` as the block output channels and
    ``ratio >= 1`` as the expansion factor.  The alternate convention uses the
    depth-wise layer's channel count as the width, with bottleneck ratio
    ``1 / ratio``.  Returns ``(depthwise_width, new_ratio)``.
    """
    return int(round(width * ratio)), 1.0 / ratio


def dw_from_depthwise_parameterization(dw_width: int, new_ratio: float) -> tuple[int, float]:
    """Inverse of :func:`dw_depthwise_parameterization`."""
    return int(round(dw_width * new_ratio)), 1.0 / new_ratio


def _block_violations(i: int, sb: SuperBlock) -> list[Violation]:
    out = []
    if not _is_int(sb.depth) or sb.depth < 1:
        out.append(Violation(i, "DEPTH_RULE", f"depth must be a positive integer, got {sb.depth!r}"))
    if not _is_int(sb.width) or sb.width < 1:
        out.append(Violation(i, "WIDTH_RULE", f"width must be a positive integer, got {sb.width!r}"))
    if not _is_int(sb.stride) or sb.stride not in (1, 2):
        out.append(Violation(i, "STRIDE_RULE", f"stride must be 1 or 2, got {sb.stride!r}"))
    if not _is_int(sb.kernel) or sb.kernel < 1 or sb.kernel % 2 == 0:
        out.append(Violation(i, "KERNEL_RULE", f"kernel must be an odd positive integer, got {sb.kernel!r}"))

    r = sb.ratio
    if not isinstance(r, (int, float)) or isinstance(r, bool) or r <= 0:
        out.append(Violation(i, "RATIO_RULE", f"ratio must be a positive number, got {r!r}"))
        return out
    t = sb.block_type
    if t in (BlockType.CONV, BlockType.XX) and r != 1:
        out.append(Violation(i, "RATIO_RULE", f"{t.value} requires ratio = 1, got {r}"))
    elif t is BlockType.BL and not (0 < r <= 1):
        out.append(Violation(i, "RATIO_RULE", f"BL requires 0 < ratio <= 1, got {r}"))
    elif t is BlockType.DW and r < 1:
        out.append(Violation(i, "RATIO_RULE", f"DW requires ratio >= 1, got {r}"))

    if t in (BlockType.BL, BlockType.DW) and _is_int(sb.width) and sb.width >= 1:
        inner = sb.width * r
        if abs(inner - round(inner)) > 1e-9 or round(inner) < 1:
            out.append(Violation(i, "INNER_WIDTH_RULE",
                                 f"width * ratio = {inner} is not a positive integer"))
    return out


def validate_structure(net: NetworkStructure) -> list[Violation]:
    """Check every invariant; returns an empty list iff the net is valid.

    Accepts arbitrary field values (never raises on bad content).
    """
    out: list[Violation] = []
    if not _is_int(net.resolution) or net.resolution < 1:
        out.append(Violation(None, "RESOLUTION_RULE", f"resolution must be a positive integer, got {net.resolution!r}"))
    if not _is_int(net.num_classes) or net.num_classes < 1:
        out.append(Violation(None, "NUM_CLASSES_RULE", f"num_classes must be a positive integer, got {net.num_classes!r}"))
    if len(net.superblocks) < 2:
        out.append(Violation(None, "MIN_BLOCKS", "network needs at least a stem and a head super-block"))
        for i, sb in enumerate(net.superblocks):
            out.extend(_block_violations(i, sb))
        return out

    for i, sb in enumerate(net.superblocks):
        out.extend(_block_violations(i, sb))

    stem = net.superblocks[0]
    if stem.block_type is not BlockType.CONV or stem.stride != 2:
        out.append(Violation(0, "STEM_RULE", "first super-block must be CONV with stride 2"))

    if all(_is_int(sb.stride) and sb.stride in (1, 2) for sb in net.superblocks):
        prod = net.stride_product
        if _is_int(net.resolution) and net.resolution >= 1 and net.resolution % prod != 0:
            out.append(Violation(None, "DIVISIBILITY",
                                 f"resolution {net.resolution} is not divisible by stride product {prod}"))
    return out


_SB_FIELDS = {"type", "depth", "width", "stride", "kernel", "ratio"}
_NET_FIELDS = {"name", "resolution", "num_classes", "superblocks"}


def _parse_superblock(i: int, obj) -> SuperBlock:
    if not isinstance(obj, dict):
        raise schema_violation("super-block entry must be an object", index=i)
    missing = _SB_FIELDS - obj.keys()
    extra = obj.keys() - _SB_FIELDS
    if missing:
        raise schema_violation(f"missing field(s) {sorted(missing)}", index=i)
    if extra:
        raise schema_violation(f"unknown field(s) {sorted(extra)}", index=i)
    try:
        btype = BlockType(obj["type"])
    except ValueError:
        raise schema_violation(f"unknown block type {obj['type']!r}", index=i) from None
    for f in ("depth", "width", "stride", "kernel"):
        if not _is_int(obj[f]):
            raise schema_violation(f"field {f!r} must be an integer, got {obj[f]!r}", index=i)
    ratio = obj["ratio"]
    if not isinstance(ratio, (int, float)) or isinstance(ratio, bool):
        raise schema_violation(f"field 'ratio' must be a number, got {ratio!r}", index=i)
    return SuperBlock(btype, obj["depth"], obj["width"], obj["stride"], obj["kernel"], float(ratio))


def parse_structure(document: str, check_invariants: bool = True) -> NetworkStructure:
    """Parse a structure JSON document; raises on any schema or invariant breach.

    With ``check_invariants=False`` only the JSON schema is enforced, so
    callers (like the validate command) can collect the full violation list
    themselves via :func:`validate_structure`.
    """
    try:
        root = json.loads(document)
    except json.JSONDecodeError as e:
        raise malformed_document(f"invalid JSON: {e}") from None
    if not isinstance(root, dict):
        raise schema_violation("top level must be an object")
    missing = _NET_FIELDS - root.keys()
    extra = root.keys() - _NET_FIELDS
    if missing:
        raise schema_violation(f"missing field(s) {sorted(missing)}")
    if extra:
        raise schema_violation(f"unknown field(s) {sorted(extra)}")
    if not isinstance(root["name"], str):
        raise schema_violation("field 'name' must be a string")
    for f in ("resolution", "num_classes"):
        if not _is_int(root[f]):
            raise schema_violation(f"field {f!r} must be an integer, got {root[f]!r}")
    if not isinstance(root["superblocks"], list):
        raise schema_violation("field 'superblocks' must be an array")

    sbs = tuple(_parse_superblock(i, o) for i, o in enumerate(root["superblocks"]))
    net = NetworkStructure(root["name"], root["resolution"], root["num_classes"], sbs)
    if check_invariants:
        violations = validate_structure(net)
        if violations:
            v = violations[0]
            raise invariant_violation(f"[{v.rule}] {v.message}", index=v.index)
    return net


def structure_to_dict(net: NetworkStructure) -> dict:
    return {
        "name": net.name,
        "resolution": net.resolution,
        "num_classes": net.num_classes,
        "superblocks": [
            {
                "type": sb.block_type.value,
                "depth": sb.depth,
                "width": sb.width,
                "stride": sb.stride,
                "kernel": sb.kernel,
                "ratio": float(sb.ratio),
            }
            for sb in net.superblocks
        ],
    }


def serialize_structure(net: NetworkStructure) -> str:
    """Canonical JSON: sorted keys, two-space indent, trailing newline.

    Equal structures serialize to identical bytes, so fixtures diff cleanly
    and parse(serialize(net)) == net field-for-field.
    """
    return json.dumps(structure_to_dict(net), sort_keys=True, indent=2) + "\n"


def load_structure(path, check_invariants: bool = True) -> NetworkStructure:
    with open(path, encoding="utf-8") as f:
        return parse_structure(f.read(), check_invariants=check_invariants)


def save_structure(net: NetworkStructure, path) -> None:
    with open(path, "w", encoding="utf-8") as f:
        f.write(serialize_structure(net))


def _expand_superblock(idx: int, sb: SuperBlock, in_ch: int, res: int) -> list[LayerSpec]:
    layers: list[LayerSpec] = []
    t = sb.block_type
    for b in range(sb.depth):
        stride = sb.stride if b == 0 else 1
        prefix = f"sb{idx}.b{b}"
        if t is BlockType.CONV:
            layers.append(LayerSpec(f"{prefix}.conv", in_ch, sb.width, sb.kernel, stride, 1, res))
        elif t is BlockType.XX:
            layers.append(LayerSpec(f"{prefix}.conv1", in_ch, sb.width, sb.kernel, stride, 1, res))
            layers.append(LayerSpec(f"{prefix}.conv2", sb.width, sb.width, sb.kernel, 1, 1, res // stride))
        elif t is BlockType.BL:
            inner = inner_width(sb)
            layers.append(LayerSpec(f"{prefix}.conv1", in_ch, inner, 1, 1, 1, res))
            layers.append(LayerSpec(f"{prefix}.conv2", inner, inner, sb.kernel, stride, 1, res))
            layers.append(LayerSpec(f"{prefix}.conv3", inner, sb.width, 1, 1, 1, res // stride))
        else:  # DW
            expanded = inner_width(sb)
            layers.append(LayerSpec(f"{prefix}.conv1", in_ch, expanded, 1, 1, 1, res))
            layers.append(LayerSpec(f"{prefix}.conv2", expanded, expanded, sb.kernel, stride, expanded, res))
            layers.append(LayerSpec(f"{prefix}.conv3", expanded, sb.width, 1, 1, 1, res // stride))
        if t is not BlockType.CONV and (in_ch != sb.width or stride != 1):
            layers.append(LayerSpec(f"{prefix}.proj", in_ch, sb.width, 1, stride, 1, res, projection=True))
        in_ch = sb.width
        res //= stride
    return layers


def superblock_io(net: NetworkStructure, input_channels: int = 3):
    """Yield (index, superblock, in_channels, input_resolution) for each stage."""
    in_ch, res = input_channels, net.resolution
    for idx, sb in enumerate(net.superblocks):
        yield idx, sb, in_ch, res
        in_ch = sb.width
        res //= sb.stride


def enumerate_layers(net: NetworkStructure, input_channels: int = 3) -> list[LayerSpec]:
    """Expand every super-block into its constituent convolutions.

    Residual-path 1x1 projections are included (marked ``projection=True``);
    the feature-map resolution of each layer is tracked from
    ``net.resolution`` through the strides.
    """
    layers: list[LayerSpec] = []
    for idx, sb, in_ch, res in superblock_io(net, input_channels):
        layers.extend(_expand_superblock(idx, sb, in_ch, res))
    return layers
