import json

import pytest

from genet.errors import GenetError
from genet.structure import (
    BlockType,
    NetworkStructure,
    SuperBlock,
    enumerate_layers,
    parse_structure,
    serialize_structure,
    validate_structure,
)
from builders import sb

MINIMAL_DOC = json.dumps({
    "name": "mini", "resolution": 32, "num_classes": 10,
    "superblocks": [
        {"type": "CONV", "depth": 1, "width": 8, "stride": 2, "kernel": 3, "ratio": 1},
        {"type": "CONV", "depth": 1, "width": 16, "stride": 1, "kernel": 1, "ratio": 1},
    ],
})


def test_parse_minimal_document():
    net = parse_structure(MINIMAL_DOC)
    assert len(net.superblocks) == 2
    assert net.resolution == 32
    assert net.superblocks[0].block_type is BlockType.CONV
    assert net.superblocks[1].ratio == 1.0


def test_parse_rejects_dw_ratio_below_one():
    doc = json.loads(MINIMAL_DOC)
    doc["superblocks"].insert(1, {"type": "DW", "depth": 1, "width": 8, "stride": 1,
                                  "kernel": 3, "ratio": 0.5})
    with pytest.raises(GenetError) as e:
        parse_structure(json.dumps(doc))
    assert e.value.code == "INVARIANT_VIOLATION"
    assert e.value.index == 1


def test_parse_malformed_json():
    with pytest.raises(GenetError) as e:
        parse_structure("{not json")
    assert e.value.code == "MALFORMED_DOCUMENT"


@pytest.mark.parametrize("mutate", [
    lambda d: d.pop("resolution"),
    lambda d: d.update(extra=1),
    lambda d: d["superblocks"][0].pop("kernel"),
    lambda d: d["superblocks"][1].update(bogus=2),
    lambda d: d["superblocks"][0].update(type="YY"),
    lambda d: d["superblocks"][0].update(depth="one"),
])
def test_parse_schema_violations(mutate):
    doc = json.loads(MINIMAL_DOC)
    mutate(doc)
    with pytest.raises(GenetError) as e:
        parse_structure(json.dumps(doc))
    assert e.value.code == "SCHEMA_VIOLATION"


def test_schema_violation_names_superblock_index():
    doc = json.loads(MINIMAL_DOC)
    doc["superblocks"][1].pop("ratio")
    with pytest.raises(GenetError) as e:
        parse_structure(json.dumps(doc))
    assert e.value.index == 1


def test_round_trip_identity(minimal_net):
    assert parse_structure(serialize_structure(minimal_net)) == minimal_net


def test_serialization_is_canonical(minimal_net):
    text = serialize_structure(minimal_net)
    assert text == serialize_structure(parse_structure(text))
    assert json.loads(text)["superblocks"][0]["ratio"] == 1.0


def test_validate_clean_net(small_master):
    assert validate_structure(small_master) == []


def test_validate_divisibility():
    net = NetworkStructure("bad", 100, 10, (
        sb("CONV", 1, 8, 2, 3), sb("XX", 1, 8, 2, 3), sb("XX", 1, 8, 2, 3),
        sb("XX", 1, 8, 2, 3), sb("CONV", 1, 16, 2, 1)))
    rules = {v.rule for v in validate_structure(net)}
    assert "DIVISIBILITY" in rules  # stride product 32 does not divide 100


def test_validate_stem_rule():
    net = NetworkStructure("bad", 32, 10, (sb("XX", 1, 8, 2, 3), sb("CONV", 1, 16, 1, 1)))
    assert any(v.rule == "STEM_RULE" and v.index == 0 for v in validate_structure(net))


def test_validate_ratio_rules():
    net = NetworkStructure("bad", 32, 10, (
        sb("CONV", 1, 8, 2, 3),
        sb("BL", 1, 8, 1, 3, 1.5),      # BL needs r <= 1
        sb("XX", 1, 8, 1, 3, 2.0),      # XX needs r = 1
        sb("CONV", 1, 16, 1, 1)))
    bad = [v for v in validate_structure(net) if v.rule == "RATIO_RULE"]
    assert {v.index for v in bad} == {1, 2}


def test_validate_inner_width_must_be_integer():
    net = NetworkStructure("bad", 32, 10, (
        sb("CONV", 1, 8, 2, 3),
        sb("BL", 1, 10, 1, 3, 0.25),    # 10 * 0.25 = 2.5 channels
        sb("CONV", 1, 16, 1, 1)))
    assert any(v.rule == "INNER_WIDTH_RULE" and v.index == 1 for v in validate_structure(net))


def test_validate_accepts_arbitrary_garbage_without_raising():
    net = NetworkStructure("bad", -3, 0, (sb("CONV", 0, -1, 7, 4),))
    rules = {v.rule for v in validate_structure(net)}
    assert {"RESOLUTION_RULE", "NUM_CLASSES_RULE", "MIN_BLOCKS", "DEPTH_RULE",
            "WIDTH_RULE", "STRIDE_RULE", "KERNEL_RULE"} <= rules


def test_enumerate_minimal(minimal_net):
    layers = enumerate_layers(minimal_net)
    assert len(layers) == 2
    assert layers[0].input_resolution == 32
    assert layers[1].input_resolution == 16


def test_enumerate_xx_with_projection():
    # depth 3, stride 2, width change: 6 convolutions plus one projection
    net = NetworkStructure("xx", 64, 10, (
        sb("CONV", 1, 8, 2, 3), sb("XX", 3, 16, 2, 3), sb("CONV", 1, 32, 1, 1)))
    xx = [l for l in enumerate_layers(net) if l.name.startswith("sb1.")]
    assert len(xx) == 7
    assert sum(l.projection for l in xx) == 1
    proj = next(l for l in xx if l.projection)
    assert (proj.kernel, proj.stride, proj.in_channels, proj.out_channels) == (1, 2, 8, 16)


def test_enumerate_bl_and_dw_internals(small_master):
    layers = enumerate_layers(small_master)
    bl = [l for l in layers if l.name.startswith("sb2.b0")]
    assert [(l.in_channels, l.out_channels, l.kernel) for l in bl if not l.projection] == [
        (32, 16, 1), (16, 16, 3), (16, 64, 1)]
    dw = [l for l in layers if l.name.startswith("sb3.b0")]
    inner = [(l.in_channels, l.out_channels, l.kernel, l.groups) for l in dw if not l.projection]
    assert inner == [(64, 144, 1, 1), (144, 144, 3, 144), (144, 48, 1, 1)]


def test_stride_only_on_first_basic_block(small_master):
    layers = [l for l in enumerate_layers(small_master) if l.name.startswith("sb1.")]
    strided = [l for l in layers if l.stride == 2]
    assert all(l.name.startswith("sb1.b0") for l in strided)


def test_depth_doubling_doubles_conv_count():
    def net(depth):
        return NetworkStructure("n", 64, 10, (
            sb("CONV", 1, 16, 2, 3), sb("XX", depth, 16, 1, 3), sb("CONV", 1, 32, 1, 1)))

    count = lambda d: sum(1 for l in enumerate_layers(net(d)) if l.name.startswith("sb1."))
    assert count(4) == 2 * count(2)


def test_resolution_tracking_follows_strides(small_master):
    main = [l for l in enumerate_layers(small_master) if not l.projection]
    for prev, cur in zip(main, main[1:]):
        assert cur.input_resolution == prev.input_resolution // prev.stride
    assert main[-1].input_resolution == small_master.resolution // small_master.stride_product


def test_round_trip_over_generated_structures(small_master):
    from genet.search import PerturbationRanges, generate_candidates

    for net in generate_candidates(small_master, PerturbationRanges(), 200, seed=99,
                                   allow_type_switch=True):
        text = serialize_structure(net)
        assert parse_structure(text) == net
        assert serialize_structure(parse_structure(text)) == text


def test_structures_are_immutable(minimal_net):
    with pytest.raises(AttributeError):
        minimal_net.resolution = 64
    with pytest.raises(AttributeError):
        minimal_net.superblocks[0].depth = 2
