"""Binary checkpoint format for parameter tables.

Layout: magic, format version, a small JSON metadata blob, then per
parameter: name length, name, tag length, tag, ndim, dims, raw float32
values in C order. Round-trips are bit-exact for float32 payloads.
"""
from __future__ import annotations

import json
import struct

import numpy as np

from .errors import DataError

_MAGIC = b"KGEMBCK1"
_VERSION = 1


def save_checkpoint(path, params: dict[str, np.ndarray], meta: dict | None = None,
                    tags: dict[str, str] | None = None) -> None:
    tags = tags or {}
    meta_blob = json.dumps(meta or {}, sort_keys=True).encode("utf-8")
    with open(path, "wb") as f:
        f.write(_MAGIC)
        f.write(struct.pack("<II", _VERSION, len(meta_blob)))
        f.write(meta_blob)
        f.write(struct.pack("<I", len(params)))
        for name, arr in params.items():
            data = np.ascontiguousarray(arr, dtype=np.float32)
            nb = name.encode("utf-8")
            tb = tags.get(name, "dense").encode("utf-8")
            f.write(struct.pack("<H", len(nb)))
            f.write(nb)
            f.write(struct.pack("<H", len(tb)))
            f.write(tb)
            f.write(struct.pack("<B", data.ndim))
            f.write(struct.pack(f"<{data.ndim}I", *data.shape))
            f.write(data.tobytes())


def load_checkpoint(path):
    """Returns (params dict name -> float32 array, meta dict, tags dict)."""
    try:
        f = open(path, "rb")
    except OSError as e:
        raise DataError(f"cannot open checkpoint {path}: {e}") from e
    with f:
        if f.read(8) != _MAGIC:
            raise DataError(f"not a checkpoint file: {path}")
        version, meta_len = struct.unpack("<II", f.read(8))
        if version != _VERSION:
            raise DataError(f"unsupported checkpoint version {version} in {path}")
        meta = json.loads(f.read(meta_len).decode("utf-8"))
        (count,) = struct.unpack("<I", f.read(4))
        params, tags = {}, {}
        for _ in range(count):
            (nlen,) = struct.unpack("<H", f.read(2))
            name = f.read(nlen).decode("utf-8")
            (tlen,) = struct.unpack("<H", f.read(2))
            tags[name] = f.read(tlen).decode("utf-8")
            (ndim,) = struct.unpack("<B", f.read(1))
            shape = struct.unpack(f"<{ndim}I", f.read(4 * ndim))
            n = int(np.prod(shape)) if ndim else 1
            data = np.frombuffer(f.read(4 * n), dtype="<f4").reshape(shape)
            params[name] = data.copy()
    return params, meta, tags
