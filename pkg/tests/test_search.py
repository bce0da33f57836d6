"""Embedding index: ranking exactness, tie rules, binary round-trips."""

import numpy as np
import pytest

from alg.search_index import (
    EmbeddingRecord,
    build_index,
    load_index,
    save_index,
    select_guidance,
    top_k,
)


def _records(rng, count, dim):
    out = []
    for i in range(count):
        vec = rng.normal(size=dim)
        out.append(EmbeddingRecord(f"rec-{i:04d}", float(rng.uniform(0, 10)), vec))
    return out


# === build ===

def test_build_normalizes_rows():
    rng = np.random.default_rng(701)
    index = build_index(_records(rng, 10, 8))
    norms = np.linalg.norm(index.vectors.astype(np.float64), axis=1)
    assert norms == pytest.approx(np.ones(10), abs=1e-6)
    assert index.dim == 8
    assert index.count == 10


def test_build_rejects_dim_mismatch():
    recs = [EmbeddingRecord("a", 1.0, np.ones(4)), EmbeddingRecord("b", 1.0, np.ones(5))]
    with pytest.raises(ValueError, match="b"):
        build_index(recs)


def test_build_rejects_zero_vector():
    recs = [EmbeddingRecord("zed", 1.0, np.zeros(4))]
    with pytest.raises(ValueError, match="zed"):
        build_index(recs)


def test_build_rejects_duplicate_ids():
    recs = [EmbeddingRecord("dup", 1.0, np.ones(4)), EmbeddingRecord("dup", 2.0, np.ones(4))]
    with pytest.raises(ValueError, match="dup"):
        build_index(recs)


def test_build_rejects_empty():
    with pytest.raises(ValueError):
        build_index([])


# === query ===

def test_top_k_brute_force_oracle():
    rng = np.random.default_rng(702)
    records = _records(rng, 200, 16)
    index = build_index(records)
    for _ in range(10):
        query = rng.normal(size=16)
        got = top_k(index, query, k=7)
        # oracle: float64 cosine against the float32-normalized rows
        rows = index.vectors.astype(np.float64)
        q = query / np.linalg.norm(query)
        cosines = rows @ q
        order = sorted(range(len(records)), key=lambda i: (-cosines[i], index.ids[i]))
        want = [(index.ids[i], cosines[i]) for i in order[:7]]
        assert [(r.id, r.cosine) for r in got] == pytest.approx(want)


def test_top_k_exact_match_first():
    rng = np.random.default_rng(703)
    records = _records(rng, 50, 12)
    index = build_index(records)
    probe = records[17].vector
    got = top_k(index, probe, k=1)
    assert got[0].id == "rec-0017"
    assert got[0].cosine == pytest.approx(1.0, abs=1e-6)


def test_top_k_ties_break_by_id():
    records = [
        EmbeddingRecord("b", 1.0, np.array([1.0, 0.0])),
        EmbeddingRecord("a", 1.0, np.array([2.0, 0.0])),    # same direction
        EmbeddingRecord("c", 1.0, np.array([0.0, 1.0])),
    ]
    index = build_index(records)
    got = top_k(index, np.array([1.0, 0.0]), k=2)
    assert [r.id for r in got] == ["a", "b"]


def test_top_k_k_clamped_to_count():
    records = [EmbeddingRecord("only", 5.0, np.array([1.0, 1.0]))]
    index = build_index(records)
    assert len(top_k(index, np.array([1.0, 0.0]), k=10)) == 1


def test_top_k_validates_query():
    rng = np.random.default_rng(704)
    index = build_index(_records(rng, 5, 4))
    with pytest.raises(ValueError):
        top_k(index, np.zeros(4), k=1)
    with pytest.raises(ValueError):
        top_k(index, np.ones(3), k=1)
    with pytest.raises(ValueError):
        top_k(index, np.ones(4), k=0)


# === guidance selection ===

def test_select_guidance_highest_score():
    rng = np.random.default_rng(705)
    records = _records(rng, 30, 8)
    index = build_index(records)
    results = top_k(index, rng.normal(size=8), k=10)
    best_id = select_guidance(results)
    chosen = next(r for r in results if r.id == best_id)
    assert chosen.score == max(r.score for r in results)


def test_select_guidance_tie_breaks_cosine_then_id():
    from alg.search_index import QueryResult
    results = [
        QueryResult("b", 0.5, 9.0),
        QueryResult("a", 0.9, 9.0),
        QueryResult("c", 0.9, 9.0),
        QueryResult("d", 0.99, 8.0),
    ]
    assert select_guidance(results) == "a"
    with pytest.raises(ValueError):
        select_guidance([])


def test_select_guidance_permutation_invariant():
    rng = np.random.default_rng(706)
    records = _records(rng, 100, 8)
    index = build_index(records)
    query = rng.normal(size=8)
    baseline = select_guidance(top_k(index, query, k=10))
    for seed in range(5):
        perm = np.random.default_rng(seed).permutation(len(records))
        shuffled = build_index([records[i] for i in perm])
        assert select_guidance(top_k(shuffled, query, k=10)) == baseline


# === persistence ===

def test_save_load_round_trip_bit_exact(tmp_path):
    rng = np.random.default_rng(707)
    index = build_index(_records(rng, 64, 32))
    path = str(tmp_path / "vectors.algi")
    save_index(index, path)
    loaded = load_index(path)
    assert loaded.ids == index.ids
    assert np.array_equal(loaded.scores, index.scores)
    assert loaded.vectors.tobytes() == index.vectors.tobytes()
    assert loaded.dim == index.dim


def test_save_is_deterministic(tmp_path):
    rng = np.random.default_rng(708)
    index = build_index(_records(rng, 16, 8))
    p1, p2 = str(tmp_path / "a.algi"), str(tmp_path / "b.algi")
    save_index(index, p1)
    save_index(index, p2)
    assert open(p1, "rb").read() == open(p2, "rb").read()


def test_load_rejects_bad_magic(tmp_path):
    path = tmp_path / "junk.algi"
    path.write_bytes(b"NOPE" + b"\x00" * 32)
    with pytest.raises(ValueError, match="junk.algi"):
        load_index(str(path))


def test_load_rejects_truncation(tmp_path):
    rng = np.random.default_rng(709)
    index = build_index(_records(rng, 8, 8))
    path = str(tmp_path / "trunc.algi")
    save_index(index, path)
    blob = open(path, "rb").read()
    open(path, "wb").write(blob[:-5])
    with pytest.raises(ValueError, match="trunc.algi"):
        load_index(path)


def test_load_rejects_trailing_garbage(tmp_path):
    rng = np.random.default_rng(710)
    index = build_index(_records(rng, 4, 4))
    path = str(tmp_path / "extra.algi")
    save_index(index, path)
    with open(path, "ab") as fh:
        fh.write(b"\x00\x01")
    with pytest.raises(ValueError, match="extra.algi"):
        load_index(path)


def test_queries_identical_after_reload(tmp_path):
    rng = np.random.default_rng(711)
    index = build_index(_records(rng, 40, 16))
    path = str(tmp_path / "q.algi")
    save_index(index, path)
    loaded = load_index(path)
    query = rng.normal(size=16)
    a = [(r.id, r.cosine, r.score) for r in top_k(index, query, k=5)]
    b = [(r.id, r.cosine, r.score) for r in top_k(loaded, query, k=5)]
    assert a == b
