#!/usr/bin/env python3
"""Singular-value spectra of convolutional kernels with planted rank decay.

Builds four synthetic stage kernels whose intrinsic rank shrinks with
depth (full-rank early, strongly low-rank late), writes them as KT01
files, and reports the normalized spectra -- the decay_area summary drops
monotonically, the pattern that motivates full convolutions early and
bottlenecked/depth-wise blocks late.
"""

import tempfile
from pathlib import Path

import numpy as np

from genet.rank import KernelTensor, load_kernel, spectrum, stage_report, write_kernel


def planted_kernel(name, c_out, c_in, k, effective_rank, rng):
    """Random kernel whose singular values decay geometrically after a knee."""
    rows, cols = c_out, c_in * k * k
    u, _ = np.linalg.qr(rng.standard_normal((rows, rows)))
    v, _ = np.linalg.qr(rng.standard_normal((cols, rows)))
    sv = np.array([1.0 if i < effective_rank else 0.25 ** (i - effective_rank + 1)
                   for i in range(rows)])
    data = (u * sv) @ v.T
    return KernelTensor(name, (c_out, c_in, k, k), data.reshape(c_out, c_in, k, k).astype(np.float32))


def main():
    rng = np.random.default_rng(7)
    stages = [("stage1", 32, 16, 3, 30), ("stage2", 64, 32, 3, 40),
              ("stage3", 128, 64, 3, 48), ("stage4", 256, 128, 3, 40)]
    kernels = []
    with tempfile.TemporaryDirectory() as tmp:
        for i, (name, c_out, c_in, k, rank) in enumerate(stages):
            # deeper stages keep a smaller fraction of c_out at full strength
            eff = max(4, int(rank * (1.0 - 0.22 * i)))
            tensor = planted_kernel(name, c_out, c_in, k, eff, rng)
            path = Path(tmp) / f"{i}_{name}.kt01"
            write_kernel(tensor, path)
            kernels.append(load_kernel(path))

        print(f"{'stage':8} {'c_out':>6} {'decay_area':>11}")
        for tensor in kernels:
            rep = spectrum(tensor)
            print(f"{tensor.layer_name:8} {tensor.c_out:>6} {rep.decay_area:>11.4f}")

        csv_text = stage_report(kernels)
        print(f"\nstage_report emits {len(csv_text.splitlines())} CSV lines "
              "(points section + decay_area summary), ready for plotting.")


if __name__ == "__main__":
    main()
