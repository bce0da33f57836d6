"""Embedding retrieval: exact cosine top-k over unit-normalized records and
guidance-image selection by aesthetic score, with a binary on-disk format."""

from __future__ import annotations

import struct
from dataclasses import dataclass

import numpy as np

MAGIC = b"ALGI"
VERSION = 1


@dataclass(frozen=True)
class EmbeddingRecord:
    id: str
    score: float
    vector: np.ndarray


@dataclass(frozen=True)
class QueryResult:
    id: str
    cosine: float
    score: float


@dataclass(frozen=True)
class EmbeddingIndex:
    dim: int
    ids: tuple[str, ...]
    scores: np.ndarray      # float32, (count,)
    vectors: np.ndarray     # float32, (count, dim), unit rows

    @property
    def count(self) -> int:
        return len(self.ids)


def build_index(records: list[EmbeddingRecord]) -> EmbeddingIndex:
    """Validate and unit-normalize records, preserving insertion order.

    Everything is cast to float32 up front so that queries, saves and loads
    all see bit-identical values.
    """
    if not records:
        raise ValueError("cannot build an index from zero records")
    dim = None
    seen: set[str] = set()
    vectors = []
    scores = []
    ids = []
    for rec in records:
        if not rec.id:
            raise ValueError("record with empty id")
        if rec.id in seen:
            raise ValueError(f"duplicate record id: {rec.id}")
        seen.add(rec.id)
        vec = np.asarray(rec.vector, dtype=np.float64)
        if vec.ndim != 1 or vec.size < 1:
            raise ValueError(f"record {rec.id}: vector must be one-dimensional")
        if dim is None:
            dim = int(vec.size)
        elif vec.size != dim:
            raise ValueError(f"record {rec.id}: dimension {vec.size} != index dimension {dim}")
        if not np.all(np.isfinite(vec)):
            raise ValueError(f"record {rec.id}: vector has non-finite entries")
        norm = float(np.linalg.norm(vec))
        if norm < 1e-12:
            raise ValueError(f"record {rec.id}: zero vector cannot be normalized")
        if not np.isfinite(rec.score):
            raise ValueError(f"record {rec.id}: non-finite score")
        vectors.append((vec / norm).astype(np.float32))
        scores.append(np.float32(rec.score))
        ids.append(rec.id)
    return EmbeddingIndex(dim, tuple(ids), np.array(scores, dtype=np.float32),
                          np.stack(vectors))


def top_k(index: EmbeddingIndex, query, k: int) -> list[QueryResult]:
    """Exact k nearest by cosine; ties break by id ascending."""
    if k < 1:
        raise ValueError("k must be at least 1")
    q = np.asarray(query, dtype=np.float64)
    if q.ndim != 1 or q.size != index.dim:
        raise ValueError(f"query dimension {q.size} != index dimension {index.dim}")
    norm = float(np.linalg.norm(q))
    if norm < 1e-12:
        raise ValueError("zero query vector")
    q = q / norm

    cosines = index.vectors.astype(np.float64) @ q
    order = sorted(range(index.count), key=lambda i: (-cosines[i], index.ids[i]))
    return [
        QueryResult(index.ids[i], float(cosines[i]), float(index.scores[i]))
        for i in order[:k]
    ]


def select_guidance(results: list[QueryResult]) -> str:
    """Guidance image = the candidate with the highest aesthetic score;
    ties by higher cosine, then id ascending."""
    if not results:
        raise ValueError("no candidates to select from")
    best = min(results, key=lambda r: (-r.score, -r.cosine, r.id))
    return best.id


# === Binary round-trip ===

def save_index(index: EmbeddingIndex, path: str) -> None:
    with open(path, "wb") as fh:
        fh.write(MAGIC)
        fh.write(struct.pack("<III", VERSION, index.dim, index.count))
        for i, rid in enumerate(index.ids):
            raw = rid.encode("utf-8")
            fh.write(struct.pack("<H", len(raw)))
            fh.write(raw)
            fh.write(struct.pack("<f", float(index.scores[i])))
            fh.write(index.vectors[i].astype("<f4").tobytes())


def load_index(path: str) -> EmbeddingIndex:
    with open(path, "rb") as fh:
        blob = fh.read()
    if blob[:4] != MAGIC:
        raise ValueError(f"{path}: not an index file (bad magic)")
    if len(blob) < 16:
        raise ValueError(f"{path}: truncated header")
    version, dim, count = struct.unpack_from("<III", blob, 4)
    if version != VERSION:
        raise ValueError(f"{path}: unsupported index version {version}")

    pos = 16
    ids = []
    scores = np.empty(count, dtype=np.float32)
    vectors = np.empty((count, dim), dtype=np.float32)
    for i in range(count):
        if pos + 2 > len(blob):
            raise ValueError(f"{path}: truncated at record {i}")
        (id_len,) = struct.unpack_from("<H", blob, pos)
        pos += 2
        end = pos + id_len + 4 + 4 * dim
        if end > len(blob):
            raise ValueError(f"{path}: truncated at record {i}")
        ids.append(blob[pos:pos + id_len].decode("utf-8"))
        pos += id_len
        (scores[i],) = struct.unpack_from("<f", blob, pos)
        pos += 4
        vectors[i] = np.frombuffer(blob, dtype="<f4", count=dim, offset=pos)
        pos += 4 * dim
    if pos != len(blob):
        raise ValueError(f"{path}: trailing bytes after record {count}")
    return EmbeddingIndex(int(dim), tuple(ids), scores, vectors)
