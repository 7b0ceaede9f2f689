"""Ordered first-success search over a coloring family.

Chunks of distinct colorings are evaluated by a batch kernel (parallel over the
rows of a chunk); the reduction takes the first succeeding row in canonical
order, so the selected coloring never depends on the thread count.
"""
from __future__ import annotations

import time
from dataclasses import dataclass, field
from typing import Callable, Iterable, Iterator

import numpy as np

from . import _accel
from .coloring import TABLE_DTYPE, Chunk, FamilyParams, family_params, iter_chunks


@dataclass
class Stats:
    family_size: int = 0
    colorings_checked: int = 0
    threads: int = 1
    millis: float = 0.0
    index: int | None = None
    extra: dict = field(default_factory=dict)

    def as_dict(self) -> dict:
        return {
            "family_size": self.family_size,
            "colorings_checked": self.colorings_checked,
            "threads": self.threads,
            "millis": round(self.millis, 3),
        }


def resolve_threads(threads: int | None) -> int:
    """Worker count actually used: the request capped at what the machine offers."""
    if threads is None or threads <= 0:
        return _accel.max_threads()
    return min(int(threads), _accel.max_threads())


def clamped_params(n: int, k: int, c: int, multiplier: int = 1) -> FamilyParams:
    """Family for subset size ``min(k, n)``: universality on the whole universe
    already covers every larger requested subset."""
    return family_params(max(n, 1), max(1, min(k, max(n, 1))), max(c, 1), multiplier)


@dataclass
class Hit:
    chunk: Chunk | None
    row: int
    table: np.ndarray

    @property
    def index(self) -> int | None:
        return None if self.chunk is None else self.chunk.index_at(self.row)


def first_success(
    chunks: Iterable[Chunk],
    evaluate: Callable[[np.ndarray], np.ndarray],
    stats: Stats | None = None,
    threads: int | None = None,
) -> Hit | None:
    stats = stats if stats is not None else Stats()
    stats.threads = resolve_threads(threads)
    t0 = time.perf_counter()
    try:
        with _accel.thread_limit(stats.threads):
            for chunk in chunks:
                ok = np.asarray(evaluate(chunk.tables))
                hits = np.flatnonzero(ok)
                if len(hits):
                    row = int(hits[0])
                    stats.colorings_checked += row + 1
                    hit = Hit(chunk, row, chunk.tables[row])
                    stats.index = hit.index
                    return hit
                stats.colorings_checked += len(chunk)
        return None
    finally:
        stats.millis += (time.perf_counter() - t0) * 1000.0


def minimum_over(
    chunks: Iterable[Chunk],
    evaluate: Callable[[np.ndarray], np.ndarray],
    stats: Stats | None = None,
    floor: int = 0,
) -> tuple[int, Hit | None]:
    """Smallest value any coloring reports (stops early once ``floor`` is reached)."""
    stats = stats if stats is not None else Stats()
    best, where = None, None
    for chunk in chunks:
        vals = np.asarray(evaluate(chunk.tables))
        stats.colorings_checked += len(chunk)
        row = int(np.argmin(vals))
        if best is None or vals[row] < best:
            best, where = int(vals[row]), Hit(chunk, row, chunk.tables[row])
        if best <= floor:
            break
    return (best if best is not None else np.iinfo(np.int64).max), where


@dataclass
class _RawChunk:
    tables: np.ndarray
    start: int

    def __len__(self) -> int:
        return len(self.tables)

    def index_at(self, row: int) -> int:
        return self.start + row


def exhaustive_chunks(n: int, c: int, batch: int = 4096) -> Iterator[_RawChunk]:
    """Every map {1..n} -> {1..c}, vertex 1 as the least significant digit."""
    total = c**n
    for start in range(0, total, batch):
        r = np.arange(start, min(start + batch, total), dtype=np.int64)
        tables = np.empty((len(r), n), dtype=TABLE_DTYPE)
        for j in range(n):
            tables[:, j] = (r // c**j) % c + 1
        yield _RawChunk(tables, start)


def family_chunks(params: FamilyParams, support=None) -> Iterator[Chunk]:
    return iter_chunks(params, support=support)
