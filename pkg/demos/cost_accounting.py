#!/usr/bin/env python3
"""Analytic cost accounting for the shipped structure fixtures.

Walks the three GENet structures plus a few of the manually designed nets,
expands each into its convolution list, and prints FLOPs/params side by
side -- the published FLOPs/params land within a few percent of the
analytic model, which is what pins down the block-expansion conventions.
"""

from genet import fixture_path
from genet.cost import compute_flops, compute_params
from genet.structure import enumerate_layers, load_structure


def megs(x):
    return f"{x / 1e6:8.2f} M"


def main():
    print(f"{'net':20} {'resolution':>10} {'layers':>7} {'params':>11} {'flops':>11}")
    for name in ["genet-light", "genet-normal", "genet-large", "profilingnet-132",
                 "net01", "net08", "net15"]:
        net = load_structure(fixture_path(f"{name}.json"))
        layers = enumerate_layers(net)
        print(f"{name:20} {net.resolution:>10} {len(layers):>7} "
              f"{megs(compute_params(net))} {megs(compute_flops(net))}")

    print("\nper-stage breakdown of genet-light:")
    net = load_structure(fixture_path("genet-light.json"))
    layers = enumerate_layers(net)
    for idx, block in enumerate(net.superblocks):
        stage = [l for l in layers if l.name.startswith(f"sb{idx}.")]
        weights = sum((l.in_channels // l.groups) * l.out_channels * l.kernel ** 2 for l in stage)
        print(f"  sb{idx} {block.block_type.value:4} d={block.depth} c={block.width:4} "
              f"-> {len(stage)} convs, {weights / 1e6:6.3f} M weights")


if __name__ == "__main__":
    main()
