"""Universal coloring families built from hash functions ``x -> (a*x mod p) mod k^2``.

A family member is ``omega o lambda_{p,a}`` where ``p`` runs over all integers
``2..p_bound``, ``a`` over ``0..p-1`` and ``omega`` over every map
``{0..k^2-1} -> {1..c}``. Members are never materialized as a whole; they are
addressed by a canonical index (p ascending, then a, then omega read as a
little-endian base-c number) and generated on demand.

Solvers do not iterate raw indices. They consume :func:`iter_chunks`, which
walks the family in index order but yields each *distinct* function table once
(restricted to the positions the solver actually reads), always represented by
its smallest-index member. First-success searches over the chunk stream
therefore return the same member as a naive scan of the full family.
"""
from __future__ import annotations

import functools
import itertools
from dataclasses import dataclass, field
from typing import Iterator, Sequence

import numpy as np

from .errors import GuardError, ParameterError

TABLE_DTYPE = np.int16
_BITMAP_LIMIT = 1 << 24
_CACHE_LIMIT = 1 << 20


@dataclass(frozen=True)
class FamilyParams:
    n: int
    k: int
    c: int
    multiplier: int = 1

    @property
    def hash_range(self) -> int:
        return self.k * self.k

    @property
    def p_bound(self) -> int:
        return max(2, self.multiplier * _ceil_k2_log2(self.n, self.k))

    @property
    def omega_count(self) -> int:
        return self.c ** self.hash_range

    @property
    def size(self) -> int:
        P = self.p_bound
        return (P * (P + 1) // 2 - 1) * self.omega_count

    def block_offset(self, p: int) -> int:
        """Index of the first member with prime-bound value ``p``."""
        return ((p - 1) * p // 2 - 1) * self.omega_count


def _ceil_k2_log2(n: int, k: int) -> int:
    # ceil(k^2 * log2 N) computed exactly as the bit length of N^(k^2) - 1
    N = max(n, 2)
    return (N ** (k * k) - 1).bit_length()


def family_params(n: int, k: int, c: int, multiplier: int = 1) -> FamilyParams:
    for name, value in (("n", n), ("k", k), ("c", c), ("multiplier", multiplier)):
        if not isinstance(value, (int, np.integer)) or value < 1:
            raise ParameterError(f"{name} must be a positive integer, got {value!r}")
    if k > n:
        raise ParameterError(f"subset size k={k} exceeds universe size n={n}")
    return FamilyParams(int(n), int(k), int(c), int(multiplier))


def family_size(params: FamilyParams) -> int:
    return params.size


@dataclass(frozen=True)
class Coloring:
    values: tuple[int, ...]
    index: int


@dataclass(frozen=True)
class CoverageReport:
    covered: bool
    counterexample: tuple[tuple[int, ...], tuple[int, ...]] | None = None


def decode_index(params: FamilyParams, index: int) -> tuple[int, int, int]:
    """Split a member index into ``(p, a, omega_index)``."""
    if not 0 <= index < params.size:
        raise ParameterError(f"index {index} outside family of size {params.size}")
    oc = params.omega_count
    # block offsets grow quadratically in p; a linear walk is fine for p_bound sizes
    p = 2
    while params.block_offset(p + 1) <= index:
        p += 1
    rem = index - params.block_offset(p)
    a, w = divmod(rem, oc)
    return p, a, w


def hash_values(params: FamilyParams, p: int, a: int) -> np.ndarray:
    """lambda_{p,a}(x) for x = 1..n."""
    xs = np.arange(1, params.n + 1, dtype=np.int64)
    return (a * xs % p) % params.hash_range


def get_coloring(params: FamilyParams, index: int) -> Coloring:
    p, a, w = decode_index(params, index)
    c, K2 = params.c, params.hash_range
    omega = np.empty(K2, dtype=np.int64)
    for j in range(K2):
        w, d = divmod(w, c)
        omega[j] = d + 1
    values = omega[hash_values(params, p, a)]
    return Coloring(tuple(int(v) for v in values), index)


@dataclass
class Chunk:
    """A batch of distinct family members sharing one hash function."""

    params: FamilyParams
    p: int
    a: int
    image: tuple[int, ...]
    base: int
    low: np.ndarray
    tables: np.ndarray = field(repr=False)

    def __len__(self) -> int:
        return len(self.low)

    def index_at(self, row: int) -> int:
        """Canonical family index of ``tables[row]``."""
        r = self.base + int(self.low[row])
        c = self.params.c
        w = 0
        for pos in self.image:
            r, d = divmod(r, c)
            w += d * c**pos
        return self.params.block_offset(self.p) + self.a * self.params.omega_count + w


def _partition_key(h: np.ndarray) -> bytes:
    _, first, inv = np.unique(h, return_index=True, return_inverse=True)
    rank = np.argsort(np.argsort(first))
    return rank[inv].astype(np.int32).tobytes()


def _digit_matrix(c: int, q: int) -> np.ndarray:
    rows = np.arange(c**q, dtype=np.int64)
    out = np.empty((c**q, q), dtype=np.int64)
    for j in range(q):
        out[:, j] = (rows // c**j) % c
    return out


def _generate(params: FamilyParams, support: tuple[int, ...] | None, batch: int) -> Iterator[Chunk]:
    n, c, K2 = params.n, params.c, params.hash_range
    sup = np.arange(n) if support is None else np.asarray(support, dtype=np.int64)
    s = len(sup)
    use_bitmap = c**s <= _BITMAP_LIMIT
    seen = np.zeros(c**s, dtype=bool) if use_bitmap else None
    weights = (c ** np.arange(s, dtype=np.int64)) if use_bitmap else None
    seen_keys: set[bytes] = set()
    for p in range(2, params.p_bound + 1):
        for a in range(p):
            h = hash_values(params, p, a)
            hs = h[sup]
            key = _partition_key(hs)
            if key in seen_keys:
                continue
            seen_keys.add(key)
            image = np.unique(hs)
            m = len(image)
            pos_of = np.full(K2, -1, dtype=np.int64)
            pos_of[image] = np.arange(m)
            # positions outside the support's image keep omega = 1 (digit 0),
            # which is the smallest-index member of each equivalence class
            col = pos_of[h]
            if c == 1:
                q = m
            else:
                q = 0
                while q < m and c ** (q + 1) <= batch:
                    q += 1
            low_digits = _digit_matrix(c, q)
            low = np.arange(c**q, dtype=np.int64)
            for hi in range(c ** (m - q)):
                hd = np.array([(hi // c**j) % c for j in range(m - q)], dtype=np.int64)
                digits = np.empty((len(low), m + 1), dtype=np.int64)
                digits[:, :q] = low_digits
                digits[:, q:m] = hd
                digits[:, m] = 0
                tables = (1 + digits[:, col]).astype(TABLE_DTYPE)
                keep_low = low
                if use_bitmap:
                    codes = (tables[:, sup].astype(np.int64) - 1) @ weights
                    fresh = ~seen[codes]
                    if not fresh.any():
                        continue
                    seen[codes[fresh]] = True
                    tables = tables[fresh]
                    keep_low = low[fresh]
                yield Chunk(params, p, a, tuple(int(v) for v in image), hi * c**q, keep_low, tables)
            if m == s:
                # injective on the support: every later block is a coarsening
                return


@functools.lru_cache(maxsize=256)
def _cached_chunks(params: FamilyParams, support: tuple[int, ...] | None, batch: int) -> tuple[Chunk, ...]:
    return tuple(_generate(params, support, batch))


def iter_chunks(params: FamilyParams, support: Sequence[int] | None = None, batch: int = 2048) -> Iterator[Chunk]:
    """Distinct members in canonical order, deduplicated on the ``support`` positions (0-based)."""
    sup = None if support is None else tuple(sorted(int(v) for v in support))
    if sup is not None and len(sup) == params.n:
        sup = None
    width = params.n if sup is None else len(sup)
    if params.c**width <= _CACHE_LIMIT:
        yield from _cached_chunks(params, sup, batch)
    else:
        yield from _generate(params, sup, batch)


VERIFY_LIMITS = {"n": 16, "k": 3, "c": 4}


def verify_family(params: FamilyParams) -> CoverageReport:
    """Exhaustively check the universal-coloring property."""
    n, k, c = params.n, params.k, params.c
    if n > VERIFY_LIMITS["n"] or k > VERIFY_LIMITS["k"] or c > VERIFY_LIMITS["c"]:
        raise GuardError(f"verify_family limited to n<=16, k<=3, c<=4 (got n={n}, k={k}, c={c})")
    subsets = np.array(list(itertools.combinations(range(n), k)), dtype=np.int64)
    weights = c ** np.arange(k, dtype=np.int64)
    target = c**k
    hit = np.zeros((len(subsets), target), dtype=bool)
    remaining = hit.size
    for chunk in iter_chunks(params):
        t = chunk.tables.astype(np.int64) - 1
        codes = np.einsum("rsk,k->rs", t[:, subsets], weights)
        for si in range(len(subsets)):
            hit[si, codes[:, si]] = True
        remaining = hit.size - int(hit.sum())
        if remaining == 0:
            return CoverageReport(True)
    si, code = np.argwhere(~hit)[0]
    mu = tuple(int(code // c**j % c) + 1 for j in range(k))
    return CoverageReport(False, (tuple(int(v) + 1 for v in subsets[si]), mu))


def threshold(bits: str, t: int) -> bool:
    """At least ``t`` ones, decided by searching an (|bits|, t, t) family for a
    coloring whose every color class holds a 1."""
    if t < 1:
        raise ParameterError("threshold t must be >= 1")
    if any(ch not in "01" for ch in bits):
        raise ParameterError("bits must be a binary string")
    n = len(bits)
    if t > n:
        return False
    ones = [i for i, ch in enumerate(bits) if ch == "1"]
    if not ones:
        return False
    params = family_params(n, t, t)
    colors = np.arange(1, t + 1, dtype=TABLE_DTYPE)
    for chunk in iter_chunks(params, support=ones):
        sub = chunk.tables[:, ones]
        present = (sub[:, :, None] == colors[None, None, :]).any(axis=1)
        if present.all(axis=1).any():
            return True
    return False


def dump_family(params: FamilyParams) -> Iterator[str]:
    """Lines of the ``ucf`` text dump: a header, then every member in index order."""
    n, k, c = params.n, params.k, params.c
    if n > VERIFY_LIMITS["n"] or k > VERIFY_LIMITS["k"] or c > VERIFY_LIMITS["c"]:
        raise GuardError("family dump limited to n<=16, k<=3, c<=4")
    yield f"ucf {n} {k} {c} {params.size}"
    for index in range(params.size):
        yield " ".join(map(str, get_coloring(params, index).values))
