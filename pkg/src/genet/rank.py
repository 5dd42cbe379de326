"""Intrinsic-rank analysis of convolutional kernels.

A 4-D kernel (c_out, c_in, k, k) is reshaped to a (c_out, c_in * k^2)
matrix, its singular values are computed and normalized so the largest is
1.0, and the i-th value is plotted at x = i / c_out (1-indexed).  The mean
normalized singular value (``decay_area``) summarizes how fast the spectrum
decays: low-rank kernels score near 0, full-rank isometries score 1.

Kernels travel in KT01 files (little-endian binary):

    magic "KT01" | u16 name_len | name utf-8 | u32 ndim (= 4)
    | 4 x u32 dims (c_out, c_in, k, k) | float32 payload, row-major
"""

from dataclasses import dataclass
import io
import struct

import numpy as np

from .errors import GenetError

_MAGIC = b"KT01"
_MAX_ELEMENTS = 1 << 31  # refuse absurd allocations from corrupt headers


@dataclass(frozen=True)
class KernelTensor:
    layer_name: str
    dims: tuple[int, int, int, int]  # (c_out, c_in, k, k)
    data: np.ndarray  # float32, shape == dims

    @property
    def c_out(self) -> int:
        return self.dims[0]


@dataclass(frozen=True)
class SpectrumReport:
    layer_name: str
    points: tuple[tuple[float, float], ...]  # (x in (0,1], lambda in [0,1])
    decay_area: float


def write_kernel(tensor: KernelTensor, path) -> None:
    with open(path, "wb") as f:
        f.write(kernel_bytes(tensor))


def kernel_bytes(tensor: KernelTensor) -> bytes:
    name = tensor.layer_name.encode("utf-8")
    out = io.BytesIO()
    out.write(_MAGIC)
    out.write(struct.pack("<H", len(name)))
    out.write(name)
    out.write(struct.pack("<I", 4))
    out.write(struct.pack("<4I", *tensor.dims))
    payload = np.ascontiguousarray(tensor.data, dtype="<f4")
    out.write(payload.tobytes())
    return out.getvalue()


def _read_exact(f, n: int, what: str) -> bytes:
    buf = f.read(n)
    if len(buf) != n:
        raise GenetError("TRUNCATED", f"file ended while reading {what} ({len(buf)}/{n} bytes)")
    return buf


def load_kernel(path) -> KernelTensor:
    """Read a KT01 file; the float payload round-trips bit-exactly."""
    with open(path, "rb") as f:
        return parse_kernel(f)


def parse_kernel(f) -> KernelTensor:
    magic = f.read(4)
    if magic != _MAGIC:
        raise GenetError("BAD_MAGIC", f"expected {_MAGIC!r}, got {magic!r}")
    (name_len,) = struct.unpack("<H", _read_exact(f, 2, "name length"))
    name = _read_exact(f, name_len, "layer name").decode("utf-8")
    (ndim,) = struct.unpack("<I", _read_exact(f, 4, "ndim"))
    if ndim != 4:
        raise GenetError("DIM_OVERFLOW", f"expected 4 dimensions, got {ndim}")
    dims = struct.unpack("<4I", _read_exact(f, 16, "dims"))
    count = 1
    for d in dims:
        if d == 0:
            raise GenetError("DIM_OVERFLOW", f"zero-sized dimension in {dims}")
        count *= d
    if count > _MAX_ELEMENTS:
        raise GenetError("DIM_OVERFLOW", f"{count} elements exceeds the format limit")
    payload = _read_exact(f, 4 * count, "float payload")
    if f.read(1):
        raise GenetError("TRUNCATED", "trailing bytes after payload")
    data = np.frombuffer(payload, dtype="<f4").reshape(dims)
    return KernelTensor(name, dims, data)


def reshape_kernel(tensor: KernelTensor) -> np.ndarray:
    """(c_out, c_in, k, k) -> (c_out, c_in * k^2); row i is output filter i."""
    c_out = tensor.dims[0]
    return np.asarray(tensor.data, dtype=np.float64).reshape(c_out, -1)


def singular_values(m) -> np.ndarray:
    """Singular values of a matrix, non-increasing, all >= 0.

    Relative accuracy 1e-8 or better for well-scaled inputs.
    """
    m = np.asarray(m, dtype=np.float64)
    if not np.all(np.isfinite(m)):
        raise GenetError("NONFINITE_INPUT", "matrix contains NaN or infinity")
    return np.linalg.svd(m, compute_uv=False)


def spectrum(tensor: KernelTensor) -> SpectrumReport:
    """Normalized singular-value spectrum of one kernel.

    Values are divided by the largest; x-coordinates are i / c_out with i
    starting at 1; ``decay_area`` is the mean normalized value.
    """
    sv = singular_values(reshape_kernel(tensor))
    top = sv[0]
    if top == 0.0:
        raise GenetError("ZERO_KERNEL", f"kernel {tensor.layer_name!r} is all-zero")
    lam = sv / top
    c_out = tensor.c_out
    points = tuple((float((i + 1) / c_out), float(v)) for i, v in enumerate(lam))
    return SpectrumReport(tensor.layer_name, points, float(lam.mean()))


def stage_report(kernels) -> str:
    """CSV with one spectrum row per singular value plus a decay-area summary.

    Layout: a ``layer_name,x,lambda`` section with all points in input
    order, then a ``layer_name,decay_area`` section, one row per kernel.
    """
    reports = [spectrum(t) for t in kernels]
    lines = ["layer_name,x,lambda"]
    for r in reports:
        for x, lam in r.points:
            lines.append(f"{r.layer_name},{x!r},{lam!r}")
    lines.append("layer_name,decay_area")
    for r in reports:
        lines.append(f"{r.layer_name},{r.decay_area!r}")
    return "\n".join(lines) + "\n"
