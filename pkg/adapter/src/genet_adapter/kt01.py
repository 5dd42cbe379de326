"""KT01 kernel-file writer.

Implemented here from the wire format (not imported from the consumer
toolkit) so that conformance tests actually exercise the format contract:

    magic "KT01" | u16 name_len | name utf-8 | u32 ndim (= 4)
    | 4 x u32 dims (c_out, c_in, k, k) | float32 payload, row-major
"""

import struct

import numpy as np


def kernel_file_bytes(layer_name: str, array) -> bytes:
    data = np.ascontiguousarray(array, dtype="<f4")
    if data.ndim != 4:
        raise ValueError(f"kernel must be 4-D, got shape {data.shape}")
    name = layer_name.encode("utf-8")
    parts = [b"KT01", struct.pack("<H", len(name)), name, struct.pack("<I", 4),
             struct.pack("<4I", *data.shape), data.tobytes()]
    return b"".join(parts)


def write_kernel_file(path, layer_name: str, array) -> None:
    with open(path, "wb") as f:
        f.write(kernel_file_bytes(layer_name, array))
