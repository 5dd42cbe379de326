"""GPU-efficient network design calculus.

Structure space (CONV/XX/BL/DW super-blocks), analytic FLOPs/params
accounting, benchmark-table latency estimation, singular-value rank
analysis of convolutional kernels, and the local-linear-regression NAS
pipeline.
"""

from importlib import resources

from .errors import GenetError
from .structure import (
    BlockType,
    LayerSpec,
    NetworkStructure,
    SuperBlock,
    Violation,
    enumerate_layers,
    load_structure,
    parse_structure,
    save_structure,
    serialize_structure,
    validate_structure,
)
from .cost import (
    CostReport,
    LatencyEstimate,
    LatencyTable,
    aggregate_latency,
    compute_flops,
    compute_params,
    cost_report,
    estimate_latency,
    ingest_benchmark,
)
from .rank import (
    KernelTensor,
    SpectrumReport,
    load_kernel,
    reshape_kernel,
    singular_values,
    spectrum,
    stage_report,
    write_kernel,
)
from .search import (
    PerturbationRanges,
    PseudoGradientTable,
    SearchConfig,
    TrialRecord,
    fit_pseudo_gradients,
    generate_candidates,
    ingest_trials,
    plan_trials,
    predict_accuracy,
    select_best,
)

__version__ = "0.1.0"


def fixture_path(name: str):
    """Path to one of the shipped structure/benchmark fixtures."""
    return resources.files("genet") / "fixtures" / name
