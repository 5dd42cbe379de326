import pytest

from genet import fixture_path
from genet.cost import compute_params, ingest_benchmark, layer_params
from genet.structure import (
    BlockType,
    dw_depthwise_parameterization,
    dw_from_depthwise_parameterization,
    enumerate_layers,
    load_structure,
    parse_structure,
    serialize_structure,
)


def test_genet_light_shape():
    net = load_structure(fixture_path("genet-light.json"))
    assert len(net.superblocks) == 7
    assert net.resolution == 192
    assert net.superblocks[0].block_type is BlockType.CONV
    assert net.superblocks[3].ratio == 0.25
    assert net.superblocks[4].ratio == 3.0


def test_genet_light_layers_agree_with_params():
    net = load_structure(fixture_path("genet-light.json"))
    layers = enumerate_layers(net)
    classifier = net.head_width * net.num_classes + net.num_classes
    assert sum(layer_params(l) for l in layers) + classifier == compute_params(net)


def test_profilingnet_round_trip():
    text = fixture_path("profilingnet-132.json").read_text(encoding="utf-8")
    net = parse_structure(text)
    assert len(net.superblocks) == 10
    assert all(b.kernel in (1, 3) for b in net.superblocks)
    assert parse_structure(serialize_structure(net)) == net


def test_dw_sweep_fixture_lookup():
    table = ingest_benchmark(fixture_path("bench-dw-224-b64.csv").read_text(encoding="utf-8"))
    widths = sorted(w for (t, w, *_rest) in table.rows)
    assert widths == [256, 512, 768, 1024, 1536, 2048]
    pairs = table.widths_for("DW", 3.0, 3, 1, 224, 64)
    assert [w for w, _ in pairs] == widths
    for (t, w, r, k, s, res, b), latency in table.rows.items():
        assert (t, r, k, s, res, b) == ("DW", 3.0, 3, 1, 224, 64)
        assert latency > 0


def test_manual_net_conventions():
    for i in range(1, 21):
        net = load_structure(fixture_path(f"net{i:02d}.json"))
        assert net.superblocks[0].kernel == 3
        assert net.superblocks[-1].kernel == 1
        assert all(b.kernel == 5 for b in net.superblocks[1:-1])
        for b in net.superblocks:
            if b.block_type is BlockType.BL:
                assert b.ratio == 0.25
            elif b.block_type is BlockType.DW:
                assert b.ratio == 6.0


def test_dw_parameterization_helpers():
    dw_width, new_ratio = dw_depthwise_parameterization(560, 3.0)
    assert (dw_width, new_ratio) == (1680, pytest.approx(1 / 3))
    assert dw_from_depthwise_parameterization(dw_width, new_ratio) == (560, pytest.approx(3.0))


def test_network_latency_reference_fixtures_parse():
    for name in ("latency-v100-fp16.csv", "latency-t4-fp16.csv", "latency-t4-int8.csv"):
        lines = fixture_path(name).read_text(encoding="utf-8").splitlines()
        assert lines[0] == "model,acc,batch,latency_ms"
        rows = [l.split(",") for l in lines[1:]]
        assert all(0 < float(acc) < 1 for _m, acc, _b, _l in rows)
        models = {r[0] for r in rows}
        assert {"GENet-light", "GENet-normal", "GENet-large"} <= models
