"""Encode a matrix into a compound matrix and back.

Encoding regroups the matrix row-major into chunks of ``x`` elements, ranks
each chunk, shuffles it, and scatters the rank cells over ``Mx`` rows appended
below the matrix. Decoding reads the cells back, sorts every chunk to its
multiset and unranks it. The shuffle is never stored; only the multiset and
the rank matter.
"""
from __future__ import annotations

import numpy as np

from .errors import ConstraintError, DecodeError
from .layout import GridGeometry, compute_geometry, decode_rank_cells, encode_rank_cells, infer_original_rows
from .passkey import Passkey, placement_permutation, shuffle_rows
from .perm_rank import OrderingMode, chunk_counts, rank_chunks, unrank_chunks

DTYPES = {8: np.uint8, 16: np.uint16, 32: np.uint32}


def element_width(m: np.ndarray) -> int:
    for w, dt in DTYPES.items():
        if m.dtype == dt:
            return w
    raise ConstraintError(f"unsupported element type {m.dtype}; use uint8, uint16 or uint32")


def as_matrix(values, w: int | None = None) -> np.ndarray:
    """Coerce nested sequences or an array into a 2-D unsigned matrix.

    With ``w`` omitted, the smallest width holding every value is used.
    """
    arr = np.asarray(values)
    if arr.ndim != 2 or arr.size == 0:
        raise ConstraintError("matrix must be a non-empty 2-D grid")
    if arr.dtype.kind not in "ui":
        raise ConstraintError(f"matrix elements must be integers, got {arr.dtype}")
    if arr.size and int(arr.min()) < 0:
        raise ConstraintError("matrix elements must be unsigned")
    top = int(arr.max())
    if w is None:
        w = next((v for v in DTYPES if top < (1 << v)), None)
        if w is None:
            raise ConstraintError(f"value {top} does not fit in 32 bits")
    elif w not in DTYPES:
        raise ConstraintError(f"element width must be one of {tuple(DTYPES)}, got {w}")
    elif top >= (1 << w):
        raise ConstraintError(f"value {top} does not fit in {w} bits")
    return arr.astype(DTYPES[w])


def chunk_matrix(m: np.ndarray, x: int) -> np.ndarray:
    """Row-major regrouping into a ``(M*N // x, x)`` array (a view when possible)."""
    m = np.asarray(m)
    if m.size % x:
        raise ConstraintError(f"column constant {x} does not divide {m.size} elements")
    return m.reshape(-1, x)


def permutation_indices(
    m: np.ndarray, x: int, ordering: OrderingMode = OrderingMode.REVERSE_LEX
) -> np.ndarray:
    """Rank of every chunk, in chunk order, without shuffling or placement."""
    return rank_chunks(chunk_matrix(m, x), ordering)


def _geometry(m: np.ndarray, k: Passkey) -> GridGeometry:
    if m.ndim != 2:
        raise ConstraintError("matrix must be 2-D")
    w = element_width(m)
    if w != k.w:
        raise ConstraintError(f"matrix is {w}-bit but the key is for {k.w}-bit data")
    return compute_geometry(m.shape[0], m.shape[1], k.x, k.w)


def encode(m: np.ndarray, k: Passkey) -> np.ndarray:
    m = np.asarray(m)
    geom = _geometry(m, k)
    chunks = chunk_matrix(m, k.x)
    ranks = rank_chunks(chunks, k.ordering)
    _, shuffled = shuffle_rows(chunks, k.shuffle_seed)

    cells = encode_rank_cells(ranks, geom).reshape(-1)
    region = np.full(geom.S, k.filler, dtype=m.dtype)
    slots = placement_permutation(k.placement_seed, geom.S)
    region[slots[: geom.index_cells]] = cells

    return np.concatenate(
        [shuffled.reshape(geom.M, geom.N), region.reshape(geom.Mx, geom.N)]
    )


def split_compound(cm: np.ndarray, k: Passkey) -> tuple[GridGeometry, np.ndarray, np.ndarray]:
    """Split into the geometry, the parent region and the flat appended region."""
    cm = np.asarray(cm)
    if cm.ndim != 2:
        raise ConstraintError("compound must be 2-D")
    w = element_width(cm)
    if w != k.w:
        raise ConstraintError(f"compound is {w}-bit but the key is for {k.w}-bit data")
    R, N = cm.shape
    M = infer_original_rows(R, N, k.x, k.w)
    geom = compute_geometry(M, N, k.x, k.w)
    return geom, cm[:M], cm[M:].reshape(-1)


def extract_ranks(cm: np.ndarray, k: Passkey) -> np.ndarray:
    geom, _, region = split_compound(cm, k)
    slots = placement_permutation(k.placement_seed, geom.S)
    cells = region[slots[: geom.index_cells]].reshape(geom.O, geom.c)
    return decode_rank_cells(cells, geom)


def decode(cm: np.ndarray, k: Passkey) -> np.ndarray:
    cm = np.asarray(cm)
    geom, parent, region = split_compound(cm, k)
    slots = placement_permutation(k.placement_seed, geom.S)
    ranks = decode_rank_cells(region[slots[: geom.index_cells]].reshape(geom.O, geom.c), geom)

    multisets = np.sort(chunk_matrix(parent, k.x), axis=1)
    counts = chunk_counts(multisets)
    bad = np.flatnonzero(ranks > counts)
    if bad.size:
        j = int(bad[0])
        raise DecodeError(
            f"chunk {j}: rank {int(ranks[j])} exceeds its {int(counts[j])} arrangements; "
            "wrong key or corrupted data"
        )
    chunks = unrank_chunks(multisets, ranks, k.ordering)
    return chunks.reshape(geom.M, geom.N).astype(cm.dtype, copy=False)
