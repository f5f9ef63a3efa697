"""Exit criteria. Each test prints one PASS/FAIL line; run with ``pytest tests/test_acceptance.py -s``."""
import contextlib
import time
import tracemalloc
from pathlib import Path

import numpy as np
import pytest

from permindex import matrix_io
from permindex.cli import main
from permindex.codec import as_matrix, decode, encode, permutation_indices
from permindex.layout import compute_geometry
from permindex.passkey import Passkey, derive_passkey, parse_passkey, serialize_passkey
from permindex.perm_rank import (
    OrderingMode,
    arrangement_count,
    enumerate_arrangements,
    rank,
    rank_chunks,
    unrank,
    unrank_chunks,
)
from permindex.stats import guess_probability

DATA = Path(__file__).parent / "data"
MAGIC5 = as_matrix([[17, 24, 1, 8, 15], [23, 5, 7, 14, 16], [4, 6, 13, 20, 22],
                    [10, 12, 19, 21, 3], [11, 18, 25, 2, 9]])


@pytest.fixture
def criterion(capsys):
    @contextlib.contextmanager
    def run(number, title):
        ok = False
        start = time.perf_counter()
        try:
            yield
            ok = True
        finally:
            elapsed = time.perf_counter() - start
            with capsys.disabled():
                status = "PASS" if ok else "FAIL"
                print(f"\n[{status}] criterion {number}: {title} ({elapsed:.2f}s)")
    return run


def test_c1_matrix_b_lex_indices(criterion):
    with criterion(1, "2x2 matrix [[1,3],[4,2]] at x=2, LEX -> indices [1, 2]"):
        ranks = permutation_indices(as_matrix([[1, 3], [4, 2]]), 2, OrderingMode.LEX)
        assert ranks.tolist() == [1, 2]


def test_c2_guess_probability(criterion):
    with criterion(2, "5x5 magic square at x=5: p=0.008333 per chunk, total 4.018e-11 (0.1%)"):
        report = guess_probability(MAGIC5, 5)
        assert np.all(report.chunk_probabilities == 1 / 120)
        assert f"{report.chunk_probabilities[0]:.4g}" == "0.008333"
        assert report.probability == pytest.approx(4.018e-11, rel=1e-3)


def test_c3_three_by_four_geometry(criterion):
    with criterion(3, "geometry (3,4,2,8): O=6, 8 slots, 2 filler"):
        g = compute_geometry(3, 4, 2, 8)
        assert g.O == 6
        assert g.S == 8
        assert g.filler_cells == 2
        k = derive_passkey("three by four", 2, filler=251)
        m = as_matrix(np.arange(12).reshape(3, 4) * 10)
        region = encode(m, k)[3:]
        assert region.shape == (2, 4)
        # ranks here are 1 or 2 so their cells are 0 or 1, never the filler
        assert int((region == 251).sum()) == 2


def _random_case(rng):
    w = int(rng.choice([8, 16, 32]))
    x = int(rng.integers(2, 10))
    while True:
        M, N = (int(v) for v in rng.integers(1, 65, size=2))
        if (M * N) % x == 0:
            break
    kind = int(rng.integers(0, 4))
    if kind == 0:
        m = rng.integers(0, 2**w, size=(M, N), dtype=np.uint64)
    elif kind == 1:
        m = rng.integers(0, 3, size=(M, N))
    elif kind == 2:
        m = np.full((M, N), rng.integers(0, 2**w, dtype=np.uint64))
    else:
        m = rng.integers(0, 2**w, size=(M, N), dtype=np.uint64)
        m[rng.random((M, N)) < 0.7] = 0
    key = Passkey(
        x=x, w=w, ordering=OrderingMode(int(rng.integers(2))),
        filler=int(rng.integers(0, 2**w, dtype=np.uint64)),
        placement_seed=int(rng.integers(0, 2**64, dtype=np.uint64)),
        shuffle_seed=int(rng.integers(0, 2**64, dtype=np.uint64)),
    )
    return as_matrix(m, w), key, kind


def test_c4_roundtrip_suite(criterion):
    with criterion(4, "1000 random round trips, exact, < 30 s"):
        rng = np.random.default_rng(20261018)
        start = time.perf_counter()
        kinds = set()
        widths = set()
        xs = set()
        for _ in range(1000):
            m, key, kind = _random_case(rng)
            kinds.add(kind)
            widths.add(key.w)
            xs.add(key.x)
            out = decode(encode(m, key), key)
            assert out.dtype == m.dtype
            assert np.array_equal(out, m)
        assert time.perf_counter() - start < 30
        assert kinds == {0, 1, 2, 3} and widths == {8, 16, 32} and xs == set(range(2, 10))


def test_c5_oracle_equivalence(criterion):
    with criterion(5, "500 multisets per x in [2,7], both orderings, vs oracle, < 60 s"):
        rng = np.random.default_rng(5)
        start = time.perf_counter()
        for x in range(2, 8):
            for trial in range(500):
                high = int(rng.choice([2, 4, x + 1, 1000]))
                ms = sorted(rng.integers(0, high, size=x).tolist())
                count = arrangement_count(ms)
                assert count <= 5040
                positions = np.arange(1, count + 1)
                for ordering in OrderingMode:
                    listing = enumerate_arrangements(ms, ordering)
                    assert len(listing) == count
                    table = np.array(listing)
                    assert np.array_equal(rank_chunks(table, ordering), positions)
                    back = unrank_chunks(np.tile(ms, (count, 1)), positions, ordering)
                    assert np.array_equal(back, table)
                    i = int(rng.integers(count))
                    assert rank(listing[i], ordering) == i + 1
                    assert tuple(unrank(ms, i + 1, ordering)) == listing[i]
        assert time.perf_counter() - start < 60


def test_c6_fixed_point_fixtures(criterion):
    with criterion(6, "rank([1,2,3])=6, rank([4,9,2])=3 under REVERSE_LEX, oracle-validated"):
        rev = OrderingMode.REVERSE_LEX
        for arr, golden in (([1, 2, 3], 6), ([4, 9, 2], 3)):
            assert enumerate_arrangements(arr, rev).index(tuple(arr)) + 1 == golden
            assert rank(arr, rev) == golden
            assert rank_chunks(np.array([arr]), rev).tolist() == [golden]


def test_c7_scale(criterion):
    with criterion(7, "1024x1024 uint8 at x=8: encode+decode < 2 s, peak extra memory < 100 MB"):
        m = np.random.default_rng(7).integers(0, 256, size=(1024, 1024), dtype=np.uint8)
        key = derive_passkey("scale", 8)
        decode(encode(m[:8], key), key)  # warm-up

        start = time.perf_counter()
        out = decode(encode(m, key), key)
        elapsed = time.perf_counter() - start
        assert np.array_equal(out, m)

        tracemalloc.start()
        try:
            decode(encode(m, key), key)
            peak = tracemalloc.get_traced_memory()[1]
        finally:
            tracemalloc.stop()
        print(f"  time {elapsed:.3f} s, peak {peak / 1e6:.1f} MB")
        assert elapsed < 2.0
        assert peak < 100e6


def test_c8_format_fidelity(criterion):
    with criterion(8, "PDXK/PDXM/PGM/CSV golden round trips; encoded PGM is a PGM"):
        raw_key = (DATA / "key_cc5.pdxk").read_bytes()
        key = parse_passkey(raw_key)
        assert serialize_passkey(key) == raw_key
        for name in ("magic5.csv", "magic5.pdxm", "magic5.pgm",
                     "magic5_encoded.csv", "magic5_encoded.pdxm", "magic5_encoded.pgm"):
            raw = (DATA / name).read_bytes()
            m, fmt = matrix_io.read_matrix(raw)
            assert matrix_io.write_matrix(m, fmt) == raw, name
        encoded = matrix_io.read_pgm((DATA / "magic5_encoded.pgm").read_bytes())
        assert encoded.shape == (6, 5) and encoded.dtype == np.uint8
        assert np.array_equal(decode(encoded, key), MAGIC5)


def test_c9_determinism(criterion, tmp_path):
    with criterion(9, "keygen+encode twice -> byte-identical, equal to goldens"):
        for run in ("a", "b"):
            d = tmp_path / run
            d.mkdir()
            assert main(["keygen", "--secret", "magic square", "--cc", "5", "-o", str(d / "k")]) == 0
            for suffix in ("csv", "pdxm", "pgm"):
                assert main(["encode", "-k", str(d / "k"), "-i", str(DATA / f"magic5.{suffix}"),
                             "-o", str(d / f"e.{suffix}")]) == 0
            assert main(["keygen", "--secret", "matrix b", "--cc", "2", "--ordering", "lex",
                         "--filler", "7", "-o", str(d / "kb")]) == 0
            assert main(["encode", "-k", str(d / "kb"), "-i", str(DATA / "matrix_b.csv"),
                         "-o", str(d / "b.csv")]) == 0
        pairs = [("k", "key_cc5.pdxk"), ("kb", "key_cc2_lex.pdxk"), ("b.csv", "matrix_b_encoded.csv")]
        pairs += [(f"e.{s}", f"magic5_encoded.{s}") for s in ("csv", "pdxm", "pgm")]
        for produced, golden in pairs:
            a = (tmp_path / "a" / produced).read_bytes()
            assert a == (tmp_path / "b" / produced).read_bytes()
            assert a == (DATA / golden).read_bytes(), golden
