"""Counting, ranking and unranking of multiset permutations.

Arrangements of a multiset are ordered either lexicographically (``LEX``) or
in reverse lexicographic order (``REVERSE_LEX``, larger sequences first).
Ranks are 1-based. All distinct arrangements are counted once, so chunks with
repeated values are handled the same way as chunks of distinct values.

Scalar functions work on plain sequences; ``rank_chunks`` / ``unrank_chunks``
do the same work for a whole ``(J, x)`` array at once and are what the codec
uses.
"""
from __future__ import annotations

import enum
import itertools
from collections import Counter
from math import factorial
from typing import Iterable, Sequence

import numpy as np

from .errors import ConstraintError

MIN_WIDTH = 2
MAX_WIDTH = 9
ENUMERATION_CAP = factorial(MAX_WIDTH)


class OrderingMode(enum.Enum):
    REVERSE_LEX = 0
    LEX = 1

    @classmethod
    def parse(cls, value: "OrderingMode | str | int") -> "OrderingMode":
        if isinstance(value, cls):
            return value
        if isinstance(value, int):
            return cls(value)
        key = str(value).strip().lower().replace("_", "-")
        if key in ("reverse-lex", "revlex", "rlex"):
            return cls.REVERSE_LEX
        if key == "lex":
            return cls.LEX
        raise ConstraintError(f"unknown ordering {value!r}")


def _check_length(n: int) -> None:
    if not MIN_WIDTH <= n <= MAX_WIDTH:
        raise ConstraintError(
            f"chunk length must be in [{MIN_WIDTH}, {MAX_WIDTH}], got {n}"
        )


def _as_values(seq: Iterable[int]) -> list[int]:
    values = [int(v) for v in seq]
    if any(v < 0 for v in values):
        raise ConstraintError("elements must be unsigned integers")
    return values


def _multiset_count(counts: Counter) -> int:
    total = factorial(sum(counts.values()))
    for m in counts.values():
        total //= factorial(m)
    return total


def arrangement_count(ms: Sequence[int]) -> int:
    """Number of distinct arrangements, ``n! / prod(m_i!)``."""
    values = _as_values(ms)
    _check_length(len(values))
    return _multiset_count(Counter(values))


def _lex_rank0(values: list[int]) -> int:
    # For each position, count the arrangements that start with a smaller
    # still-available value.
    remaining = Counter(values)
    rank0 = 0
    for v in values:
        for u in sorted(remaining):
            if u >= v:
                break
            remaining[u] -= 1
            rank0 += _multiset_count(remaining)
            remaining[u] += 1
        remaining[v] -= 1
        if remaining[v] == 0:
            del remaining[v]
    return rank0


def rank(arr: Sequence[int], ordering: OrderingMode = OrderingMode.REVERSE_LEX) -> int:
    """1-based position of ``arr`` among all distinct arrangements of its elements."""
    values = _as_values(arr)
    _check_length(len(values))
    ordering = OrderingMode.parse(ordering)
    rank0 = _lex_rank0(values)
    if ordering is OrderingMode.LEX:
        return rank0 + 1
    return _multiset_count(Counter(values)) - rank0


def unrank(
    ms: Sequence[int], idx: int, ordering: OrderingMode = OrderingMode.REVERSE_LEX
) -> list[int]:
    """Arrangement of the multiset ``ms`` sitting at 1-based position ``idx``."""
    values = _as_values(ms)
    _check_length(len(values))
    ordering = OrderingMode.parse(ordering)
    remaining = Counter(values)
    count = _multiset_count(remaining)
    idx = int(idx)
    if not 1 <= idx <= count:
        raise ConstraintError(f"index {idx} out of range [1, {count}]")
    rank0 = idx - 1 if ordering is OrderingMode.LEX else count - idx

    out = []
    for _ in range(len(values)):
        for u in sorted(remaining):
            remaining[u] -= 1
            block = _multiset_count(remaining)
            if rank0 < block:
                out.append(u)
                if remaining[u] == 0:
                    del remaining[u]
                break
            rank0 -= block
            remaining[u] += 1
    return out


def enumerate_arrangements(
    ms: Sequence[int], ordering: OrderingMode = OrderingMode.REVERSE_LEX
) -> list[tuple[int, ...]]:
    """Every distinct arrangement, in order. Brute force; exists as a test oracle."""
    values = _as_values(ms)
    if len(values) > MAX_WIDTH or factorial(len(values)) > ENUMERATION_CAP:
        raise ConstraintError(f"refusing to enumerate more than {ENUMERATION_CAP} arrangements")
    ordering = OrderingMode.parse(ordering)
    distinct = set(itertools.permutations(values))
    return sorted(distinct, reverse=ordering is OrderingMode.REVERSE_LEX)


# -- batched versions --------------------------------------------------------

def _suffix_terms(chunks: np.ndarray):
    """Yield (i, arrangements of chunk[i:], #later elements below chunk[i]) from the right."""
    J, x = chunks.shape
    perms = np.ones(J, dtype=np.int64)
    for i in range(x - 1, -1, -1):
        head = chunks[:, i : i + 1]
        tail = chunks[:, i:]
        equal = (tail == head).sum(axis=1)
        perms = perms * (x - i) // equal
        less = (chunks[:, i + 1 :] < head).sum(axis=1)
        yield i, perms, less


def chunk_counts(chunks: np.ndarray) -> np.ndarray:
    """Arrangement count of every row of a ``(J, x)`` array."""
    chunks = np.asarray(chunks)
    _check_length(chunks.shape[1])
    perms = None
    for _, perms, _ in _suffix_terms(chunks):
        pass
    return perms


def rank_chunks(
    chunks: np.ndarray, ordering: OrderingMode = OrderingMode.REVERSE_LEX
) -> np.ndarray:
    """1-based rank of every row of a ``(J, x)`` array, as int64."""
    chunks = np.asarray(chunks)
    if chunks.ndim != 2:
        raise ConstraintError("expected a 2-D array of chunks")
    _check_length(chunks.shape[1])
    ordering = OrderingMode.parse(ordering)
    x = chunks.shape[1]
    rank0 = np.zeros(chunks.shape[0], dtype=np.int64)
    perms = None
    for i, perms, less in _suffix_terms(chunks):
        # sum over smaller values u of perms * m_u / n collapses to perms * less / n
        rank0 += perms * less // (x - i)
    if ordering is OrderingMode.LEX:
        return rank0 + 1
    return perms - rank0


def unrank_chunks(
    multisets: np.ndarray,
    ranks: np.ndarray,
    ordering: OrderingMode = OrderingMode.REVERSE_LEX,
) -> np.ndarray:
    """Inverse of :func:`rank_chunks`. Rows of ``multisets`` need not be sorted."""
    rem = np.sort(np.asarray(multisets), axis=1)
    if rem.ndim != 2:
        raise ConstraintError("expected a 2-D array of chunks")
    J, x = rem.shape
    _check_length(x)
    ordering = OrderingMode.parse(ordering)
    ranks = np.asarray(ranks, dtype=np.int64).reshape(J)
    perms = chunk_counts(rem)
    if np.any(ranks < 1) or np.any(ranks > perms):
        raise ConstraintError("rank out of range for its multiset")
    r = ranks - 1 if ordering is OrderingMode.LEX else perms - ranks

    rows = np.arange(J)
    out = np.empty_like(rem)
    for i in range(x):
        n = x - i
        pick = r * n // perms
        v = rem[rows, pick]
        col = v[:, None]
        less = (rem < col).sum(axis=1)
        mult = (rem == col).sum(axis=1)
        r -= perms * less // n
        perms = perms * mult // n
        out[:, i] = v
        if n > 1:
            keep = np.arange(n - 1)[None, :]
            rem = np.take_along_axis(rem, keep + (keep >= less[:, None]), axis=1)
    return out
