"""NPY v1.0/2.0 reader and v1.0 writer for cubes and label maps.

Implemented directly from the public NPY format description so files can be
exchanged with any numpy-based tooling. 3-D little-endian float arrays are
read as :class:`SpectralCube`, 2-D u8/u16/i32 arrays as :class:`LabelMap`.
"""

from __future__ import annotations

import ast
from pathlib import Path

import numpy as np

from .core import LabelMap, SpectralCube

MAGIC = b"\x93NUMPY"
_PREAMBLE_ALIGN = 64

# accepted on-disk dtypes, keyed by the normalized descr string
_CUBE_DTYPES = {"<f4": np.dtype("<f4"), "<f8": np.dtype("<f8")}
_LABEL_DTYPES = {"|u1": np.dtype("|u1"), "<u2": np.dtype("<u2"), "<i4": np.dtype("<i4")}


class NpyFormatError(ValueError):
    """Malformed or unsupported NPY content; carries the failing byte offset."""

    def __init__(self, message: str, offset: int):
        super().__init__(f"{message} (byte offset {offset})")
        self.offset = offset


def _parse_header(raw: bytes):
    """Return (header_dict_text_length, dtype descr, fortran_order, shape)."""
    if len(raw) < len(MAGIC) or raw[: len(MAGIC)] != MAGIC:
        raise NpyFormatError("not an NPY file: bad magic", 0)
    if len(raw) < 10:
        raise NpyFormatError("truncated NPY header: missing version/length fields", len(raw))
    major, minor = raw[6], raw[7]
    if major == 1:
        header_len = int.from_bytes(raw[8:10], "little")
        header_start = 10
    elif major == 2:
        if len(raw) < 12:
            raise NpyFormatError("truncated NPY v2 header length field", len(raw))
        header_len = int.from_bytes(raw[8:12], "little")
        header_start = 12
    else:
        raise NpyFormatError(f"unsupported NPY version {major}.{minor}", 6)

    header_end = header_start + header_len
    if len(raw) < header_end:
        raise NpyFormatError(
            f"truncated NPY header: expected {header_len} header bytes", header_start
        )
    try:
        header = ast.literal_eval(raw[header_start:header_end].decode("latin1").strip())
    except (ValueError, SyntaxError) as exc:
        raise NpyFormatError(f"unparseable NPY header dict: {exc}", header_start) from None
    if not isinstance(header, dict) or not {"descr", "fortran_order", "shape"} <= set(header):
        raise NpyFormatError("NPY header missing descr/fortran_order/shape", header_start)

    descr = header["descr"]
    if not isinstance(descr, str):
        raise NpyFormatError(f"structured dtypes are not supported: {descr!r}", header_start)
    if header["fortran_order"] is not False:
        raise NpyFormatError("fortran_order=True is not supported (C order required)", header_start)
    shape = header["shape"]
    if not (isinstance(shape, tuple) and all(isinstance(d, int) and d >= 0 for d in shape)):
        raise NpyFormatError(f"bad shape {shape!r}", header_start)
    return header_end, descr, shape


def _normalize_descr(descr: str) -> str:
    # single-byte types carry '|' in numpy's descr; accept '<u1' == '|u1' etc.
    if len(descr) == 3 and descr[2] == "1" and descr[0] in "<|=":
        return "|" + descr[1:]
    if descr and descr[0] == "=":
        return "<" + descr[1:]
    return descr


def read_npy(path: str | Path) -> SpectralCube | LabelMap:
    """Parse an NPY file into a cube (3-D float) or label map (2-D integer)."""
    raw = Path(path).read_bytes()
    data_start, descr, shape = _parse_header(raw)
    descr = _normalize_descr(descr)

    if len(shape) == 3:
        if descr not in _CUBE_DTYPES:
            raise NpyFormatError(
                f"unsupported cube dtype {descr!r} (expected little-endian f4/f8)", data_start
            )
        dtype = _CUBE_DTYPES[descr]
        factory = SpectralCube
    elif len(shape) == 2:
        if descr not in _LABEL_DTYPES:
            raise NpyFormatError(
                f"unsupported label dtype {descr!r} (expected u1/u2/i4)", data_start
            )
        dtype = _LABEL_DTYPES[descr]
        factory = LabelMap
    else:
        raise NpyFormatError(f"unsupported rank {len(shape)} (need 2-D labels or 3-D cube)", data_start)

    expected = int(np.prod(shape, dtype=np.int64)) * dtype.itemsize
    got = len(raw) - data_start
    if got < expected:
        raise NpyFormatError(f"truncated data: expected {expected} bytes, got {got}", data_start)
    if got > expected:
        raise NpyFormatError(f"trailing bytes after data: expected {expected}, got {got}", data_start)
    values = np.frombuffer(raw, dtype=dtype, count=int(np.prod(shape, dtype=np.int64)), offset=data_start)
    return factory(values.reshape(shape).copy())


def _build_header(descr: str, shape: tuple[int, ...]) -> bytes:
    header = "{'descr': '%s', 'fortran_order': False, 'shape': %s, }" % (descr, repr(shape))
    unpadded = len(MAGIC) + 4 + len(header) + 1
    header += " " * (-unpadded % _PREAMBLE_ALIGN) + "\n"
    return MAGIC + b"\x01\x00" + len(header).to_bytes(2, "little") + header.encode("latin1")


def write_npy(obj: SpectralCube | LabelMap, path: str | Path) -> None:
    """Write a cube or label map as NPY v1.0 (little-endian, C order).

    Inverse of :func:`read_npy`: reading a written file reproduces the values
    exactly, and re-writing a file this module wrote is byte-identical.
    """
    if isinstance(obj, SpectralCube):
        arr = obj.values
        if _normalize_descr(arr.dtype.newbyteorder("<").str) not in _CUBE_DTYPES:
            arr = arr.astype("<f8")
    elif isinstance(obj, LabelMap):
        arr = obj.labels
        if _normalize_descr(arr.dtype.newbyteorder("<").str) not in _LABEL_DTYPES:
            if int(arr.max()) > np.iinfo(np.int32).max:
                raise ValueError("label values exceed int32 range")
            arr = arr.astype("<i4")
    else:
        raise ValueError(f"expected SpectralCube or LabelMap, got {type(obj).__name__}")
    dtype = arr.dtype.newbyteorder("<")
    descr = _normalize_descr(dtype.str)
    arr = np.ascontiguousarray(arr, dtype=dtype)
    out = Path(path)
    if str(out) == "":
        raise ValueError("empty output path")
    with open(out, "wb") as fh:
        fh.write(_build_header(descr, tuple(int(d) for d in arr.shape)))
        fh.write(arr.tobytes(order="C"))
