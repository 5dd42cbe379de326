import random

import pytest

from genet.cost import (
    LatencyTable,
    aggregate_latency,
    compute_flops,
    compute_params,
    estimate_latency,
    ingest_benchmark,
    layer_flops,
    layer_params,
)
from genet.errors import GenetError
from genet.structure import LayerSpec, NetworkStructure, enumerate_layers
from builders import sb
import oracles

# Table-5 Net1 rows and the frozen values of the independent expansion
# (oracles.expand_costs run on these rows before compute_* existed).
NET01_ROWS = [("C", 1, 32, 2, 3, 1.0), ("X", 1, 64, 2, 5, 1.0), ("X", 4, 96, 2, 5, 1.0),
              ("B", 8, 512, 2, 5, 0.25), ("D", 4, 320, 2, 5, 6.0), ("D", 2, 320, 1, 5, 6.0),
              ("C", 1, 1280, 1, 1, 1.0)]
NET01_PARAMS = 16_202_824
NET01_FLOPS_224 = 3_310_148_864

TYPE_NAMES = {"C": "CONV", "X": "XX", "B": "BL", "D": "DW"}


def rows_to_net(rows, resolution=224, classes=1000, name="net"):
    return NetworkStructure(name, resolution, classes,
                            tuple(sb(TYPE_NAMES[t], d, c, s, k, r) for t, d, c, s, k, r in rows))


def test_layer_params_single_conv_with_bn():
    assert layer_params(LayerSpec("l", 3, 4, 1, 1, 1, 8)) == 3 * 4 + 2 * 4


def test_layer_flops_stem_example():
    layer = LayerSpec("stem", 3, 32, 3, 2, 1, 224)
    assert layer_flops(layer) == 32 * 3 * 9 * 112 * 112 == 10_838_016


def test_net01_matches_independent_expansion():
    net = rows_to_net(NET01_ROWS)
    assert compute_params(net) == NET01_PARAMS
    assert compute_flops(net, 224) == NET01_FLOPS_224
    # the oracle itself still reproduces its frozen output
    assert oracles.expand_costs(NET01_ROWS, 1000, 224) == (NET01_PARAMS, NET01_FLOPS_224)


def test_params_independent_of_resolution(small_master):
    p = compute_params(small_master)
    for res in (64, 128, 256):
        assert compute_params(NetworkStructure("n", res, 100, small_master.superblocks)) == p


def test_body_flops_scale_quadratically(small_master):
    classifier = small_master.head_width * small_master.num_classes
    body1 = compute_flops(small_master, 64) - classifier
    body2 = compute_flops(small_master, 128) - classifier
    assert body2 == 4 * body1


def test_flops_divisibility_error(small_master):
    with pytest.raises(GenetError) as e:
        compute_flops(small_master, 100)
    assert e.value.code == "DIVISIBILITY"


def test_cost_additivity_over_superblocks(small_master):
    layers = enumerate_layers(small_master)
    total = sum(layer_params(l) for l in layers)
    by_stage = {}
    for l in layers:
        by_stage.setdefault(l.name.split(".")[0], 0)
        by_stage[l.name.split(".")[0]] += layer_params(l)
    assert sum(by_stage.values()) == total
    # each stage recomputed in isolation with matching input channels/resolution
    in_ch, res = 3, small_master.resolution
    for idx, block in enumerate(small_master.superblocks):
        isolated = NetworkStructure("iso", res, 1, (block,))
        iso_params = sum(layer_params(l) for l in enumerate_layers(isolated, input_channels=in_ch))
        assert iso_params == by_stage[f"sb{idx}"]
        in_ch, res = block.width, res // block.stride


def test_trimmed_mean_constant_samples():
    assert aggregate_latency([0.5] * 30) == 0.5


def test_trimmed_mean_hand_computed():
    assert aggregate_latency(list(range(1, 31))) == 15.5


def test_trimmed_mean_small_n_plain_mean():
    assert aggregate_latency([1.0, 2.0, 3.0, 4.0, 10.0]) == 4.0


def test_trimmed_mean_empty_input():
    with pytest.raises(GenetError) as e:
        aggregate_latency([])
    assert e.value.code == "EMPTY_INPUT"


def test_trimmed_mean_properties():
    rng = random.Random(7)
    for _ in range(1000):
        n = rng.randint(1, 60)
        samples = [rng.uniform(0.01, 5.0) for _ in range(n)]
        value = aggregate_latency(samples)
        shuffled = samples[:]
        rng.shuffle(shuffled)
        assert aggregate_latency(shuffled) == value
        assert min(samples) <= value <= max(samples)


BENCH_CSV = """block_type,width,ratio,kernel,stride,resolution,batch,latency_ms
XX,64,1,3,2,56,64,0.05
DW,256,3,3,1,14,64,0.10
DW,512,3,3,1,14,64,0.18
"""


def test_ingest_benchmark_three_rows():
    table = ingest_benchmark(BENCH_CSV)
    assert len(table.rows) == 3
    assert table.rows[("DW", 256, 3.0, 3, 1, 14, 64)] == 0.10


def test_ingest_benchmark_duplicate_key():
    text = BENCH_CSV + "DW,256,3,3,1,14,64,0.11\n"
    with pytest.raises(GenetError) as e:
        ingest_benchmark(text)
    assert e.value.code == "DUPLICATE_KEY"


def test_ingest_benchmark_malformed():
    with pytest.raises(GenetError) as e:
        ingest_benchmark("block_type,width\nXX,64\n")
    assert e.value.code == "MALFORMED_ROW"
    with pytest.raises(GenetError) as e:
        ingest_benchmark(BENCH_CSV + "DW,potato,3,3,1,14,64,0.2\n")
    assert e.value.code == "MALFORMED_ROW"


def table_covering(net, batch=64, value=0.1):
    """Exact-match table with one row per super-block key of ``net``."""
    from genet.structure import superblock_io

    table = LatencyTable()
    for idx, block, _in, res in superblock_io(net):
        table.add((block.block_type.value, block.width, block.ratio, block.kernel,
                   block.stride, res, batch), value * (idx + 1))
    return table


def test_estimate_latency_exact_match(small_master):
    table = table_covering(small_master)
    est = estimate_latency(small_master, table, 64)
    depths = [b.depth for b in small_master.superblocks]
    expected = sum(0.1 * (i + 1) * d for i, d in enumerate(depths))
    assert est.total_ms == pytest.approx(expected, rel=1e-12)
    assert est.extrapolated == ()


def test_estimate_latency_width_interpolation():
    net = NetworkStructure("n", 28, 10, (
        sb("CONV", 1, 32, 2, 3), sb("DW", 1, 300, 1, 3, 3.0), sb("CONV", 1, 64, 1, 1)))
    table = LatencyTable()
    table.add(("CONV", 32, 1.0, 3, 2, 28, 64), 0.01)
    table.add(("DW", 256, 3.0, 3, 1, 14, 64), 0.10)
    table.add(("DW", 512, 3.0, 3, 1, 14, 64), 0.18)
    table.add(("CONV", 64, 1.0, 1, 1, 14, 64), 0.02)
    est = estimate_latency(net, table, 64)
    # hand interpolation: 0.10 + (300-256)/(512-256) * 0.08 = 0.11375
    assert est.per_superblock_ms[1] == pytest.approx(0.11375, abs=1e-12)
    assert est.total_ms == pytest.approx(0.01 + 0.11375 + 0.02, abs=1e-12)


def test_estimate_latency_missing_key(small_master):
    table = table_covering(small_master)
    missing = {k: v for k, v in table.rows.items() if k[0] != "DW"}
    table2 = LatencyTable(rows=missing)
    with pytest.raises(GenetError) as e:
        estimate_latency(small_master, table2, 64)
    assert e.value.code == "MISSING_KEY"
    assert e.value.index == 3


def test_estimate_latency_extrapolation_clamps_and_flags():
    net = NetworkStructure("n", 28, 10, (
        sb("CONV", 1, 32, 2, 3), sb("DW", 1, 1024, 1, 3, 3.0), sb("CONV", 1, 64, 1, 1)))
    table = LatencyTable()
    table.add(("CONV", 32, 1.0, 3, 2, 28, 64), 0.01)
    table.add(("DW", 256, 3.0, 3, 1, 14, 64), 0.10)
    table.add(("DW", 512, 3.0, 3, 1, 14, 64), 0.18)
    table.add(("CONV", 64, 1.0, 1, 1, 14, 64), 0.02)
    est = estimate_latency(net, table, 64)
    assert est.per_superblock_ms[1] == 0.18
    assert est.extrapolated == (1,)


def test_estimate_latency_monotone_in_depth(small_master):
    table = table_covering(small_master)
    base = estimate_latency(small_master, table, 64).total_ms
    for i in range(1, len(small_master.superblocks) - 1):
        blocks = list(small_master.superblocks)
        b = blocks[i]
        blocks[i] = type(b)(b.block_type, b.depth + 1, b.width, b.stride, b.kernel, b.ratio)
        deeper = NetworkStructure("n", small_master.resolution, 100, tuple(blocks))
        assert estimate_latency(deeper, table, 64).total_ms >= base
