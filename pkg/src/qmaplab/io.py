"""Deterministic artifact serialization.

All numeric output is written with 17 significant digits (lossless for
doubles) through a single formatter, so identical inputs yield
byte-identical artifacts. File writes are atomic (temp + rename).
"""

import hashlib
import json
import math
import os
import struct
import tempfile

import numpy as np

TOOL_VERSION = "0.1.0"

OQM_MAGIC = b"OQM1"


def format_float(x):
    """Decimal rendering with 17 significant digits; rejects non-finite values."""
    x = float(x)
    if math.isnan(x) or math.isinf(x):
        raise ValueError("non-finite number in artifact output")
    return format(x, ".17g")


def dumps_json(obj, _indent=0):
    """Deterministic JSON: insertion-ordered keys, 17-significant-digit floats."""
    pad = "  " * _indent
    inner = "  " * (_indent + 1)
    if obj is None:
        return "null"
    if obj is True:
        return "true"
    if obj is False:
        return "false"
    if isinstance(obj, (int, np.integer)):
        return str(int(obj))
    if isinstance(obj, (float, np.floating)):
        return format_float(obj)
    if isinstance(obj, str):
        return json.dumps(obj)
    if isinstance(obj, (list, tuple)):
        if not obj:
            return "[]"
        items = [inner + dumps_json(v, _indent + 1) for v in obj]
        return "[\n" + ",\n".join(items) + "\n" + pad + "]"
    if isinstance(obj, dict):
        if not obj:
            return "{}"
        items = [
            inner + json.dumps(str(k)) + ": " + dumps_json(v, _indent + 1)
            for k, v in obj.items()
        ]
        return "{\n" + ",\n".join(items) + "\n" + pad + "}"
    raise TypeError(f"cannot serialize {type(obj).__name__}")


def atomic_write_bytes(path, payload):
    """Write via a temp file in the same directory, then rename into place."""
    path = os.fspath(path)
    directory = os.path.dirname(path) or "."
    fd, tmp = tempfile.mkstemp(dir=directory, prefix=".tmp-", suffix="~")
    try:
        with os.fdopen(fd, "wb") as handle:
            handle.write(payload)
        os.replace(tmp, path)
    except BaseException:
        if os.path.exists(tmp):
            os.unlink(tmp)
        raise


def atomic_write_text(path, text):
    atomic_write_bytes(path, text.encode("utf-8"))


def write_json(path, obj):
    atomic_write_text(path, dumps_json(obj) + "\n")


def read_json(path):
    with open(path, "r", encoding="utf-8") as handle:
        return json.load(handle)


def sha256_file(path):
    digest = hashlib.sha256()
    with open(path, "rb") as handle:
        for chunk in iter(lambda: handle.read(1 << 20), b""):
            digest.update(chunk)
    return digest.hexdigest()


def write_spectrum_csv(path, result):
    """Spectrum CSV with columns N, index, re, im, abs."""
    n = len(result.eigenvalues)
    lines = ["N,index,re,im,abs"]
    for index, value in enumerate(result.eigenvalues):
        lines.append(
            f"{n},{index},{format_float(value.real)},"
            f"{format_float(value.imag)},{format_float(abs(value))}"
        )
    atomic_write_text(path, "\n".join(lines) + "\n")


def read_spectrum_csv(path):
    """Eigenvalues back out of a spectrum CSV."""
    with open(path, "r", encoding="utf-8") as handle:
        header = handle.readline().strip()
        if header != "N,index,re,im,abs":
            raise ValueError(f"unexpected spectrum CSV header: {header!r}")
        values = []
        for line in handle:
            _, _, re, im, _ = line.strip().split(",")
            values.append(complex(float(re), float(im)))
    return np.asarray(values, dtype=np.complex128)


def save_matrix_oqm(path, qmap):
    """Raw matrix dump: b"OQM1", u64 N, then N^2 row-major (re, im) float64 pairs.

    Everything little-endian.
    """
    matrix = np.ascontiguousarray(qmap.matrix, dtype=np.complex128)
    n = matrix.shape[0]
    payload = OQM_MAGIC + struct.pack("<Q", n) + matrix.astype("<c16").tobytes(order="C")
    atomic_write_bytes(path, payload)


def load_matrix_oqm(path):
    """Matrix back out of the raw dump; returns (N, matrix)."""
    with open(path, "rb") as handle:
        blob = handle.read()
    if blob[:4] != OQM_MAGIC:
        raise ValueError(f"bad magic {blob[:4]!r}, expected {OQM_MAGIC!r}")
    (n,) = struct.unpack("<Q", blob[4:12])
    expected = 12 + 16 * n * n
    if len(blob) != expected:
        raise ValueError(f"matrix dump has {len(blob)} bytes, expected {expected}")
    matrix = np.frombuffer(blob[12:], dtype="<c16").reshape(n, n)
    return int(n), matrix.astype(np.complex128)


def save_state_csv(path, amplitudes):
    """State CSV with columns index, re, im."""
    lines = ["index,re,im"]
    for index, value in enumerate(np.asarray(amplitudes)):
        lines.append(f"{index},{format_float(value.real)},{format_float(value.imag)}")
    atomic_write_text(path, "\n".join(lines) + "\n")


def load_state_csv(path):
    with open(path, "r", encoding="utf-8") as handle:
        header = handle.readline().strip()
        if header != "index,re,im":
            raise ValueError(f"unexpected state CSV header: {header!r}")
        values = [
            complex(float(re), float(im))
            for _, re, im in (line.strip().split(",") for line in handle)
        ]
    return np.asarray(values, dtype=np.complex128)
