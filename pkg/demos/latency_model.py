#!/usr/bin/env python3
"""Benchmark-table latency estimation, start to finish.

Simulates a noisy timing run for a few operating points, aggregates it with
the trimmed mean, ingests the aggregated table, and estimates whole-network
latency with width interpolation.
"""

import random

from genet import fixture_path
from genet.cost import aggregate_latency, estimate_latency, ingest_benchmark
from genet.structure import load_structure


def main():
    rng = random.Random(0)
    true_latency = 0.125
    # mostly tight jitter, but a few scheduler hiccups spike 4x
    samples = [true_latency * (rng.uniform(3.5, 4.5) if rng.random() < 0.1 else rng.uniform(0.95, 1.05))
               for _ in range(30)]
    print(f"30 noisy samples around {true_latency} ms:")
    print(f"  plain mean   {sum(samples) / len(samples):.4f} ms")
    print(f"  trimmed mean {aggregate_latency(samples):.4f} ms  (drops 3 from each end)")

    table = ingest_benchmark(fixture_path("block-latency-synthetic.csv").read_text(encoding="utf-8"))
    print(f"\nsynthetic block table: {len(table.rows)} operating points")

    net = load_structure(fixture_path("net01.json"))
    for res in (192, 224, 256):
        at_res = type(net)(net.name, res, net.num_classes, net.superblocks)
        est = estimate_latency(at_res, table, batch=64)
        stages = "  ".join(f"{ms:.3f}" for ms in est.per_superblock_ms)
        print(f"  {net.name}@{res}: {est.total_ms:.4f} ms/image  (per super-block: {stages})")

    pairs = table.widths_for("DW", 6.0, 5, 2, 14, 64)
    print(f"\nwidth ladder for the DW stage at 14 px input: {pairs[:3]} ...")
    print("estimates interpolate linearly between those widths and clamp at the edges.")


if __name__ == "__main__":
    main()
