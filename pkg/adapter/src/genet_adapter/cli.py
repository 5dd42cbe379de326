"""genet-adapter: export kernels and run block micro-benchmarks.

Exit codes follow the consumer toolkit: 0 success, 1 domain error (code on
stderr), 2 usage error.
"""

import argparse
import json
import sys
from pathlib import Path

import torch

from .bench import GridPoint, bench_blocks
from .errors import AdapterError
from .export import export_kernels, load_checkpoint, resnet_stage_selections


def cmd_export(args) -> int:
    if args.torchvision:
        import torchvision.models as models

        factory = getattr(models, args.torchvision, None)
        if factory is None:
            raise AdapterError("CHECKPOINT_UNREADABLE", f"unknown torchvision model {args.torchvision!r}")
        weights = "DEFAULT" if args.pretrained else None
        model = factory(weights=weights)
        selections = resnet_stage_selections(model)
        manifest = export_kernels(model, selections, args.out, source_name=args.torchvision)
    else:
        state = load_checkpoint(args.checkpoint)
        selections = [(layer, i + 1) for i, layer in enumerate(args.layer)]
        if not selections:
            raise AdapterError("LAYER_NOT_CONV", "no --layer selections given")
        manifest = export_kernels(state, selections, args.out, source_name=args.checkpoint)
    print(json.dumps(manifest.to_dict(), sort_keys=True, indent=2))
    return 0


def cmd_bench(args) -> int:
    points = []
    for spec in args.point:
        t, w, r, k, s, res, b = spec.split(",")
        points.append(GridPoint(t, int(w), float(r), int(k), int(s), int(res), int(b)))
    dtype = {"float32": torch.float32, "float16": torch.float16}[args.precision]
    csv_text, metadata = bench_blocks(points, repeats=args.repeats, device=args.device, dtype=dtype)
    Path(args.out).write_text(csv_text, encoding="utf-8")
    meta_path = Path(args.out).with_suffix(".meta.json")
    meta_path.write_text(json.dumps(metadata, sort_keys=True, indent=2) + "\n", encoding="utf-8")
    print(f"wrote {args.out} and {meta_path}")
    return 0


def build_parser():
    p = argparse.ArgumentParser(prog="genet-adapter", description=__doc__)
    sub = p.add_subparsers(dest="command", required=True)

    sp = sub.add_parser("export", help="export conv kernels to KT01 files")
    sp.set_defaults(fn=cmd_export)
    src = sp.add_mutually_exclusive_group(required=True)
    src.add_argument("--checkpoint", help="state-dict .pt/.pth file")
    src.add_argument("--torchvision", help="torchvision model name (e.g. resnet18)")
    sp.add_argument("--pretrained", action="store_true",
                    help="load pretrained weights (torchvision source only)")
    sp.add_argument("--layer", action="append", default=[],
                    help="state-dict key of a conv weight; repeat per stage, in stage order")
    sp.add_argument("--out", required=True)

    sp = sub.add_parser("bench", help="micro-benchmark block grid points into a raw samples CSV")
    sp.set_defaults(fn=cmd_bench)
    sp.add_argument("--point", action="append", required=True,
                    help="block_type,width,ratio,kernel,stride,resolution,batch (repeatable)")
    sp.add_argument("--repeats", type=int, default=30)
    sp.add_argument("--device", default="cuda")
    sp.add_argument("--precision", choices=["float32", "float16"], default="float16")
    sp.add_argument("--out", required=True)
    return p


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.fn(args)
    except AdapterError as e:
        print(f"ERROR {e}", file=sys.stderr)
        return 1
    except OSError as e:
        print(f"ERROR IO: {e}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
