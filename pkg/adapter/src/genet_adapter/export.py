"""Export convolution kernels from torch models/checkpoints into KT01 files.

Stage selection follows the last-convolution-per-stage recipe: for a
torchvision-style ResNet that is the final conv of each of layer1..layer4
(the stem is excluded).  Arbitrary selections are a list of
(state-dict key, stage index) pairs.
"""

from dataclasses import dataclass
import json
from pathlib import Path

import torch

from .errors import AdapterError
from .kt01 import write_kernel_file


@dataclass(frozen=True)
class ExportEntry:
    layer: str   # state-dict key of the conv weight
    file: str    # KT01 filename, stage-prefixed so lexicographic order == stage order
    stage: int


@dataclass
class ExportManifest:
    source: str
    entries: list
    device: str = "cpu"
    precision: str = "float32"

    def to_dict(self):
        return {"source": self.source, "device": self.device, "precision": self.precision,
                "entries": [{"layer": e.layer, "file": e.file, "stage": e.stage}
                            for e in self.entries]}


def load_checkpoint(path):
    """State dict from a .pt/.pth file; raises CHECKPOINT_UNREADABLE."""
    try:
        obj = torch.load(path, map_location="cpu", weights_only=True)
    except Exception as e:
        raise AdapterError("CHECKPOINT_UNREADABLE", f"{path}: {e}") from None
    if isinstance(obj, dict) and "state_dict" in obj and isinstance(obj["state_dict"], dict):
        obj = obj["state_dict"]
    if not isinstance(obj, dict) or not obj:
        raise AdapterError("CHECKPOINT_UNREADABLE", f"{path}: no state dict found")
    return obj


def _state_dict(source):
    if isinstance(source, torch.nn.Module):
        return source.state_dict()
    return source


def resnet_stage_selections(model) -> list:
    """(key, stage) for the last conv of each residual stage of a ResNet."""
    selections = []
    stage = 0
    for prefix in ("layer1", "layer2", "layer3", "layer4"):
        convs = [name for name, mod in model.named_modules()
                 if name.startswith(prefix + ".") and isinstance(mod, torch.nn.Conv2d)
                 and "downsample" not in name]
        if not convs:
            continue
        stage += 1
        selections.append((convs[-1] + ".weight", stage))
    if not selections:
        raise AdapterError("LAYER_NOT_CONV", "model has no layer1..layer4 conv stages")
    return selections


def export_kernels(source, selections, out_dir, source_name="model") -> ExportManifest:
    """Write one KT01 file per selected conv weight plus a manifest JSON.

    ``selections`` is a list of (state-dict key, stage index).  Every
    selected tensor must be a 4-D square-kernel convolution weight.
    """
    state = _state_dict(source)
    out_dir = Path(out_dir)
    out_dir.mkdir(parents=True, exist_ok=True)
    entries = []
    for key, stage in selections:
        tensor = state.get(key)
        if tensor is None:
            raise AdapterError("LAYER_NOT_CONV", f"{key}: no such tensor in the checkpoint")
        if tensor.ndim != 4 or tensor.shape[2] != tensor.shape[3]:
            raise AdapterError("LAYER_NOT_CONV",
                               f"{key}: shape {tuple(tensor.shape)} is not a (c_out, c_in, k, k) kernel")
        fname = f"stage{stage}_{key.replace('.', '_')}.kt01"
        write_kernel_file(out_dir / fname, key, tensor.detach().to(torch.float32).cpu().numpy())
        entries.append(ExportEntry(key, fname, stage))
    manifest = ExportManifest(source_name, entries)
    (out_dir / "manifest.json").write_text(
        json.dumps(manifest.to_dict(), sort_keys=True, indent=2) + "\n", encoding="utf-8")
    return manifest
