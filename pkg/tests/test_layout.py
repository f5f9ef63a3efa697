from math import factorial

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from permindex.errors import ConstraintError, DecodeError
from permindex.layout import (
    compute_geometry,
    decode_rank_cells,
    encode_rank_cells,
    infer_original_rows,
)


def brute_rows(R, N, x, c):
    return [M for M in range(1, R) if (M * N) % x == 0 and M + -(-M * N // x * c // N) == R]


def test_three_by_four_geometry():
    g = compute_geometry(3, 4, 2, 8)
    assert (g.O, g.c, g.Mx, g.S) == (6, 1, 2, 8)
    assert g.filler_cells == 2


def test_magic5_geometry():
    g = compute_geometry(5, 5, 5, 8)
    assert (g.J, g.O, g.c, g.Mx, g.S) == (5, 5, 1, 1, 5)


def test_matrix_b_geometry():
    g = compute_geometry(2, 2, 2, 8)
    assert (g.O, g.c, g.Mx, g.S) == (2, 1, 1, 2)


@pytest.mark.parametrize(
    "x, w, c",
    # 6! - 1 = 719 needs 10 bits, 9! - 1 = 362879 needs 19
    [(5, 8, 1), (6, 8, 2), (8, 8, 2), (9, 8, 3), (8, 16, 1), (9, 16, 2), (9, 32, 1)],
)
def test_cells_per_index(x, w, c):
    assert compute_geometry(x, 1, x, w).c == c
    assert (factorial(x) - 1) < (1 << (w * c))


@pytest.mark.parametrize("args", [(3, 5, 2, 8), (5, 5, 3, 8), (2, 2, 1, 8), (2, 10, 10, 8), (2, 2, 2, 12)])
def test_geometry_rejects(args):
    with pytest.raises(ConstraintError):
        compute_geometry(*args)


@pytest.mark.parametrize("R, N, x, w, M", [(5, 4, 2, 8, 3), (6, 5, 5, 8, 5), (2, 2, 2, 8, 1)])
def test_infer_original_rows(R, N, x, w, M):
    c = compute_geometry(M, N, x, w).c
    assert brute_rows(R, N, x, c) == [M]
    assert infer_original_rows(R, N, x, w) == M


def test_infer_fails_for_non_compound():
    # N = 4, x = 2: M + ceil(M/2) runs 2, 3, 5, 6, ... and skips 4
    assert brute_rows(4, 4, 2, 1) == []
    with pytest.raises(DecodeError, match="row inference failed"):
        infer_original_rows(4, 4, 2, 8)


@given(
    M=st.integers(1, 80), N=st.integers(1, 80), x=st.integers(2, 9),
    w=st.sampled_from([8, 16, 32]),
)
def test_geometry_roundtrip(M, N, x, w):
    if (M * N) % x:
        return
    g = compute_geometry(M, N, x, w)
    assert g.S >= g.O * g.c
    assert g.S - g.O * g.c < g.N
    assert g.Mx == -(-M * g.c // x)
    assert infer_original_rows(M + g.Mx, N, x, w) == M
    assert brute_rows(M + g.Mx, N, x, g.c) == [M]


@pytest.mark.parametrize(
    "rank, x, w, cells",
    [(1, 5, 8, [0]), (120, 5, 8, [119]), (300, 9, 8, [0, 1, 43]), (362880, 9, 8, [5, 137, 127])],
)
def test_rank_cells_examples(rank, x, w, cells):
    g = compute_geometry(x, 1, x, w)
    # base-256 decomposition done by hand: 299 = 1*256 + 43; 362879 = 5*65536 + 137*256 + 127
    assert sum(d << (w * (len(cells) - 1 - i)) for i, d in enumerate(cells)) == rank - 1
    assert encode_rank_cells(rank, g).tolist() == cells
    assert decode_rank_cells(cells, g) == rank


@pytest.mark.parametrize("x, w", [(x, w) for x in range(2, 10) for w in (8, 16, 32)])
def test_rank_cells_inverse_full_range(x, w):
    g = compute_geometry(x, 1, x, w)
    ranks = np.arange(1, factorial(x) + 1)
    cells = encode_rank_cells(ranks, g)
    assert cells.shape == (len(ranks), g.c)
    assert cells.max() < (1 << w)
    np.testing.assert_array_equal(decode_rank_cells(cells, g), ranks)


def test_rank_cells_range_errors():
    g = compute_geometry(5, 1, 5, 8)
    with pytest.raises(ConstraintError):
        encode_rank_cells(0, g)
    with pytest.raises(ConstraintError):
        encode_rank_cells(121, g)
    with pytest.raises(DecodeError):
        decode_rank_cells([120], g)
    with pytest.raises(DecodeError):
        decode_rank_cells([1, 2], g)
