"""Geometry of a compound matrix and the cell encoding of ranks."""
from __future__ import annotations

from dataclasses import dataclass
from math import factorial

import numpy as np

from .errors import ConstraintError, DecodeError
from .perm_rank import MAX_WIDTH, MIN_WIDTH

WIDTHS = (8, 16, 32)


def bits_needed(v: int) -> int:
    return max(int(v).bit_length(), 1)


def cells_per_index(x: int, w: int) -> int:
    """Words of ``w`` bits needed to hold any rank - 1 for chunk width ``x``."""
    return -(-bits_needed(factorial(x) - 1) // w)


def check_params(x: int, w: int) -> None:
    if not MIN_WIDTH <= x <= MAX_WIDTH:
        raise ConstraintError(f"column constant must be in [{MIN_WIDTH}, {MAX_WIDTH}], got {x}")
    if w not in WIDTHS:
        raise ConstraintError(f"element width must be one of {WIDTHS}, got {w}")


@dataclass(frozen=True)
class GridGeometry:
    M: int
    N: int
    x: int
    w: int
    J: int
    O: int
    c: int
    Mx: int
    S: int

    @property
    def index_cells(self) -> int:
        """Slots of the appended region holding rank cells (the rest is filler)."""
        return self.O * self.c

    @property
    def filler_cells(self) -> int:
        return self.S - self.index_cells

    @property
    def compound_shape(self) -> tuple[int, int]:
        return (self.M + self.Mx, self.N)


def compute_geometry(M: int, N: int, x: int, w: int) -> GridGeometry:
    check_params(x, w)
    if M < 1 or N < 1:
        raise ConstraintError(f"matrix must be non-empty, got {M}x{N}")
    if (M * N) % x:
        raise ConstraintError(
            f"column constant {x} does not divide {M}x{N} = {M * N} elements"
        )
    J = M * N // x
    c = cells_per_index(x, w)
    Mx = -(-J * c // N)
    return GridGeometry(M=M, N=N, x=x, w=w, J=J, O=J, c=c, Mx=Mx, S=Mx * N)


def infer_original_rows(R: int, N: int, x: int, w: int) -> int:
    """Recover the parent row count from a compound of ``R`` rows.

    ``M + ceil(M*N*c / (x*N))`` is strictly increasing in ``M``, so at most one
    candidate matches.
    """
    check_params(x, w)
    c = cells_per_index(x, w)
    for M in range(1, R):
        if (M * N) % x:
            continue
        total = M + -(-(M * N // x) * c // N)
        if total == R:
            return M
        if total > R:
            break
    raise DecodeError(
        f"row inference failed: no parent height gives {R} rows for "
        f"N={N}, x={x}, w={w}"
    )


def encode_rank_cells(rank, geom: GridGeometry) -> np.ndarray:
    """Big-endian base-2**w digits of ``rank - 1``; accepts a scalar or an array of ranks.

    Returns shape ``(c,)`` for a scalar, ``(len(rank), c)`` otherwise.
    """
    ranks = np.asarray(rank, dtype=np.int64)
    limit = factorial(geom.x)
    if np.any(ranks < 1) or np.any(ranks > limit):
        raise ConstraintError(f"rank out of range [1, {limit}]")
    value = (ranks - 1)[..., None]
    shifts = geom.w * np.arange(geom.c - 1, -1, -1, dtype=np.int64)
    return (value >> shifts) & ((1 << geom.w) - 1)


def decode_rank_cells(cells, geom: GridGeometry):
    """Inverse of :func:`encode_rank_cells`. Last axis must have length ``c``."""
    cells = np.asarray(cells, dtype=np.int64)
    if cells.shape[-1] != geom.c:
        raise DecodeError(f"expected {geom.c} cells per index, got {cells.shape[-1]}")
    value = np.zeros(cells.shape[:-1], dtype=np.int64)
    for d in range(geom.c):
        value = (value << geom.w) | cells[..., d]
    if np.any(value >= factorial(geom.x)):
        raise DecodeError("rank cell value exceeds x! - 1: wrong key or corrupted data")
    ranks = value + 1
    return int(ranks) if ranks.ndim == 0 else ranks
