"""Matrix containers: native PDXM binary, CSV and grayscale PGM."""
from __future__ import annotations

import struct

import numpy as np

from .codec import DTYPES, as_matrix, element_width
from .errors import FormatError

PDXM_MAGIC = b"PDXM"
PDXM_VERSION = 1
_PDXM_HEADER = struct.Struct("<4sBBHII")
PDXM_HEADER_SIZE = _PDXM_HEADER.size

FORMATS = ("pdxm", "csv", "pgm")


def detect_format(data: bytes) -> str:
    if data[:4] == PDXM_MAGIC:
        return "pdxm"
    if data[:2] in (b"P5", b"P2"):
        return "pgm"
    return "csv"


def read_matrix(data: bytes, fmt: str | None = None, w: int | None = None, name: str = "<input>"):
    """Read any supported format; returns ``(matrix, format)``."""
    fmt = fmt or detect_format(data)
    if fmt == "pdxm":
        return read_pdxm(data, name=name), fmt
    if fmt == "pgm":
        return read_pgm(data, name=name), fmt
    if fmt == "csv":
        try:
            text = data.decode("ascii")
        except UnicodeDecodeError as exc:
            raise FormatError(f"{name}: CSV input is not ASCII text") from exc
        return read_csv(text, w=w, name=name), fmt
    raise FormatError(f"unknown format {fmt!r}")


def write_matrix(m: np.ndarray, fmt: str) -> bytes:
    if fmt == "pdxm":
        return write_pdxm(m)
    if fmt == "pgm":
        return write_pgm(m)
    if fmt == "csv":
        return write_csv(m).encode("ascii")
    raise FormatError(f"unknown format {fmt!r}")


# -- PDXM --------------------------------------------------------------------

def write_pdxm(m: np.ndarray) -> bytes:
    w = element_width(m)
    rows, cols = m.shape
    header = _PDXM_HEADER.pack(PDXM_MAGIC, PDXM_VERSION, w, 0, rows, cols)
    return header + np.ascontiguousarray(m, dtype=np.dtype(DTYPES[w]).newbyteorder("<")).tobytes()


def read_pdxm(data: bytes, name: str = "<input>") -> np.ndarray:
    if len(data) < PDXM_HEADER_SIZE:
        raise FormatError(f"{name}: truncated PDXM header at offset {len(data)}")
    magic, version, w, reserved, rows, cols = _PDXM_HEADER.unpack_from(data)
    if magic != PDXM_MAGIC:
        raise FormatError(f"{name}: bad PDXM magic {magic!r} at offset 0")
    if version != PDXM_VERSION:
        raise FormatError(f"{name}: unsupported PDXM version {version} at offset 4")
    if w not in DTYPES:
        raise FormatError(f"{name}: bad element width {w} at offset 5")
    if reserved:
        raise FormatError(f"{name}: reserved bytes at offset 6 must be zero")
    if rows < 1 or cols < 1:
        raise FormatError(f"{name}: empty matrix {rows}x{cols}")
    expected = PDXM_HEADER_SIZE + rows * cols * (w // 8)
    if len(data) < expected:
        raise FormatError(
            f"{name}: truncated payload at offset {len(data)}, expected {expected} bytes"
        )
    if len(data) > expected:
        raise FormatError(f"{name}: {len(data) - expected} trailing bytes at offset {expected}")
    dt = np.dtype(DTYPES[w]).newbyteorder("<")
    payload = np.frombuffer(data, dtype=dt, count=rows * cols, offset=PDXM_HEADER_SIZE)
    return payload.reshape(rows, cols).astype(DTYPES[w])


# -- CSV ---------------------------------------------------------------------

def read_csv(text: str, w: int | None = None, name: str = "<input>") -> np.ndarray:
    rows = []
    for lineno, line in enumerate(text.splitlines(), 1):
        if not line.strip():
            continue
        row = []
        for tok in line.split(","):
            tok = tok.strip()
            if not tok.isdigit():
                raise FormatError(f"{name}:{lineno}: not an unsigned integer: {tok!r}")
            value = int(tok)
            if value >= 1 << 32:
                raise FormatError(f"{name}:{lineno}: value {value} does not fit in 32 bits")
            row.append(value)
        if rows and len(row) != len(rows[0]):
            raise FormatError(
                f"{name}:{lineno}: ragged row of {len(row)} values, expected {len(rows[0])}"
            )
        rows.append(row)
    if not rows:
        raise FormatError(f"{name}: empty CSV")
    return as_matrix(np.array(rows, dtype=np.int64), w)


def write_csv(m: np.ndarray) -> str:
    return "".join(",".join(map(str, row)) + "\n" for row in np.asarray(m).tolist())


# -- PGM ---------------------------------------------------------------------

def _pgm_header(data: bytes, name: str):
    """Parse magic, width, height, maxval; return them with the payload offset."""
    tokens = []
    pos = 2
    n = len(data)
    while len(tokens) < 3:
        while pos < n and (data[pos:pos + 1].isspace() or data[pos:pos + 1] == b"#"):
            if data[pos:pos + 1] == b"#":
                while pos < n and data[pos:pos + 1] not in (b"\n", b"\r"):
                    pos += 1
            else:
                pos += 1
        start = pos
        while pos < n and not data[pos:pos + 1].isspace() and data[pos:pos + 1] != b"#":
            pos += 1
        tok = data[start:pos]
        if not tok:
            raise FormatError(f"{name}: truncated PGM header at offset {pos}")
        if not tok.isdigit():
            raise FormatError(f"{name}: bad PGM header token {tok!r} at offset {start}")
        tokens.append(int(tok))
    # exactly one whitespace byte separates maxval from a binary raster
    if pos >= n and data[:2] == b"P5":
        raise FormatError(f"{name}: missing PGM raster at offset {pos}")
    return tokens[0], tokens[1], tokens[2], pos + 1


def read_pgm(data: bytes, name: str = "<input>") -> np.ndarray:
    magic = data[:2]
    if magic in (b"P3", b"P6"):
        raise FormatError(f"{name}: colour PNM ({magic.decode()}) is not supported")
    if magic not in (b"P5", b"P2"):
        raise FormatError(f"{name}: not a PGM file")
    width, height, maxval, offset = _pgm_header(data, name)
    if width < 1 or height < 1:
        raise FormatError(f"{name}: empty image {width}x{height}")
    if not 0 < maxval <= 65535:
        raise FormatError(f"{name}: maxval {maxval} outside [1, 65535]")
    w = 8 if maxval <= 255 else 16
    count = width * height

    if magic == b"P5":
        dt = np.dtype(">u1") if w == 8 else np.dtype(">u2")
        expected = offset + count * dt.itemsize
        if len(data) != expected:
            raise FormatError(
                f"{name}: raster is {len(data) - offset} bytes, expected {count * dt.itemsize}"
            )
        samples = np.frombuffer(data, dtype=dt, count=count, offset=offset)
    else:
        fields = data[offset:].split()
        if len(fields) != count:
            raise FormatError(f"{name}: {len(fields)} samples, expected {count}")
        try:
            samples = np.array([int(f) for f in fields], dtype=np.int64)
        except ValueError as exc:
            raise FormatError(f"{name}: non-numeric sample in P2 raster") from exc
    if samples.size and int(samples.max()) > maxval:
        raise FormatError(f"{name}: sample exceeds maxval {maxval}")
    return samples.reshape(height, width).astype(DTYPES[w])


def write_pgm(m: np.ndarray) -> bytes:
    w = element_width(m)
    if w == 32:
        raise FormatError("PGM holds at most 16-bit samples")
    rows, cols = m.shape
    header = b"P5\n%d %d\n%d\n" % (cols, rows, (1 << w) - 1)
    dt = ">u1" if w == 8 else ">u2"
    return header + np.ascontiguousarray(m).astype(dt).tobytes()
