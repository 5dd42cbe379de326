"""Torch-side adapter for the design-calculus toolkit.

Produces the toolkit's input artifacts from real models: KT01 kernel files
exported from checkpoints, and raw block-timing CSVs from GPU (or CPU)
micro-benchmarks.  Communicates with the toolkit only through those file
formats.
"""

from .bench import GridPoint, bench_blocks, build_block, build_profiling_stack
from .errors import AdapterError
from .export import ExportManifest, export_kernels, load_checkpoint, resnet_stage_selections
from .kt01 import kernel_file_bytes, write_kernel_file

__version__ = "0.1.0"
