"""Helpers for driving the consumer toolkit from the adapter tests."""

import subprocess
import sys
from pathlib import Path

import torch
from torch import nn

GOLDEN = Path(__file__).parent / "golden"


def run_toolkit(*args):
    """Invoke the consumer toolkit's CLI as an external process."""
    return subprocess.run([sys.executable, "-m", "genet.cli", *map(str, args)],
                          capture_output=True, text=True)


class TinyNet(nn.Module):
    """Four convs standing in for four stages (includes depth-wise and 1x1)."""

    def __init__(self):
        super().__init__()
        self.stem = nn.Conv2d(3, 8, 3, stride=2, padding=1, bias=False)
        self.mid = nn.Conv2d(8, 16, 3, padding=1, bias=False)
        self.dw = nn.Conv2d(16, 16, 3, padding=1, groups=16, bias=False)
        self.head = nn.Conv2d(16, 32, 1, bias=False)
        self.fc = nn.Linear(32, 10)


def tiny_net() -> TinyNet:
    torch.manual_seed(7)
    return TinyNet()
