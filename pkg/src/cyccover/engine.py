"""Vectorised covering search shared by :mod:`cover` and :mod:`groups`.

Vectors of F_q^n are encoded as integers ``sum x_i q^(n-1-i)``, so integer
order is lexicographic order with coordinate 0 leftmost.  An
:class:`OrbitTable` records the orbit of every code under some linear group
action.  A subspace covers iff it meets every orbit.

Codimension-c subspaces are enumerated once each as kernels of c x n
parity-check matrices in reduced row echelon form.  The canonical order is:
pivot tuples in lexicographic order, then the free entries (row-major) read
as a base-q number, most significant first.  Candidates are filtered in
batches, one orbit at a time, smallest orbits first; only orbits that are
not scalar multiples of an earlier one are tested.
"""

from __future__ import annotations

import itertools
import multiprocessing
import os
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass

import numpy as np
from scipy.sparse import coo_matrix
from scipy.sparse.csgraph import connected_components

from .errors import BudgetExceeded
from .gf import Field

MAX_VECTORS = 1 << 24
DEFAULT_BUDGET = 10**8
CHUNK = 1 << 14


def gaussian_binomial(n: int, k: int, q: int) -> int:
    """Number of k-dimensional subspaces of F_q^n."""
    if k < 0 or k > n:
        return 0
    num = den = 1
    for i in range(k):
        num *= q ** (n - i) - 1
        den *= q ** (i + 1) - 1
    return num // den


def floor_log(q: int, x: int) -> int:
    """Largest c with ``q^c <= x``."""
    c = 0
    while q ** (c + 1) <= x:
        c += 1
    return c


class _Arith:
    """Vectorised field arithmetic on arrays of codes."""

    def __init__(self, field: Field):
        self.q = field.q
        self.p = field.p
        self.prime = field.m == 1
        if not self.prime:
            q = field.q
            self.add_t = np.array([[field.add(a, b) for b in range(q)] for a in range(q)], np.int64)
            self.mul_t = np.array([[field.mul(a, b) for b in range(q)] for a in range(q)], np.int64)

    def matmul(self, A: np.ndarray, B: np.ndarray) -> np.ndarray:
        """``A @ B`` over the field for 2-D arrays of codes."""
        if self.prime:
            if A.shape[1] == 0:
                return np.zeros((A.shape[0], B.shape[1]), np.int64)
            prod = A.astype(np.float64) @ B.astype(np.float64)
            return np.remainder(prod, self.p).astype(np.int64)
        out = np.zeros((A.shape[0], B.shape[1]), np.int64)
        for j in range(A.shape[1]):
            out = self.add_t[out, self.mul_t[A[:, j, None], B[None, j, :]]]
        return out

    def add(self, a: np.ndarray, b: np.ndarray) -> np.ndarray:
        if self.prime:
            return (a + b) % self.p
        return self.add_t[a, b]

    def scale(self, lam: int, digits: np.ndarray) -> np.ndarray:
        if self.prime:
            return digits * lam % self.p
        return self.mul_t[lam][digits]


def encode(digits: np.ndarray, q: int) -> np.ndarray:
    n = digits.shape[-1]
    weights = q ** np.arange(n - 1, -1, -1, dtype=np.int64)
    return digits.astype(np.int64) @ weights


def decode(codes, q: int, n: int) -> np.ndarray:
    codes = np.asarray(codes, dtype=np.int64)
    weights = q ** np.arange(n - 1, -1, -1, dtype=np.int64)
    return (codes[..., None] // weights) % q


def code_of(vector, q: int) -> int:
    c = 0
    for x in vector:
        c = c * q + int(x)
    return c


class OrbitTable:
    """Orbits of a group acting linearly on F_q^n.

    Orbits are indexed in increasing order of their lex-least member, so
    orbit 0 is always ``{0}``.
    """

    def __init__(self, field: Field, n: int, labels: np.ndarray):
        self.field = field
        self.q = field.q
        self.n = n
        self.labels = labels
        order = np.argsort(labels, kind="stable")
        self.sizes = np.bincount(labels)
        self.offsets = np.concatenate([[0], np.cumsum(self.sizes)])
        self.order = order
        self.reps = order[self.offsets[:-1]]
        self._check = None

    @property
    def count(self) -> int:
        return len(self.sizes)

    def members(self, i: int) -> np.ndarray:
        return self.order[self.offsets[i]:self.offsets[i + 1]]

    def check_order(self) -> list[int]:
        """Nonzero orbits by (size, rep), dropping scalar multiples of earlier ones."""
        if self._check is None:
            idx = np.lexsort((self.reps, self.sizes))
            idx = idx[idx != 0]
            ar = _Arith(self.field)
            rep_digits = decode(self.reps, self.q, self.n)
            keys = self.reps.copy()
            for lam in range(2, self.q):
                img = self.labels[encode(ar.scale(lam, rep_digits), self.q)]
                keys = np.minimum(keys, self.reps[img])
            seen = set()
            out = []
            for i in idx.tolist():
                k = int(keys[i])
                if k not in seen:
                    seen.add(k)
                    out.append(i)
            self._check = out
        return self._check

    def check_members(self) -> list[np.ndarray]:
        return [decode(self.members(i), self.q, self.n) for i in self.check_order()]


def _check_size(q: int, n: int):
    if q**n > MAX_VECTORS:
        raise BudgetExceeded(f"q^n = {q}^{n} exceeds the enumeration limit of {MAX_VECTORS} vectors")


def cyclic_canon(codes: np.ndarray, q: int, n: int) -> np.ndarray:
    """Lex-least cyclic shift of each code."""
    top = q ** (n - 1)
    cur = np.array(codes, dtype=np.int64)
    rep = cur.copy()
    for _ in range(n - 1):
        cur = cur // q + (cur % q) * top
        np.minimum(rep, cur, out=rep)
    return rep


def cyclic_orbit_labels(q: int, n: int) -> np.ndarray:
    _check_size(q, n)
    rep = cyclic_canon(np.arange(q**n, dtype=np.int64), q, n)
    _, labels = np.unique(rep, return_inverse=True)
    return labels.astype(np.int64).ravel()


def action_orbit_labels(field: Field, n: int, matrices) -> np.ndarray:
    """Orbit labels under the group generated by ``matrices`` (acting on columns)."""
    q = field.q
    _check_size(q, n)
    N = q**n
    codes = np.arange(N, dtype=np.int64)
    digits = decode(codes, q, n)
    ar = _Arith(field)
    src, dst = [], []
    for M in matrices:
        Mt = np.array(M, dtype=np.int64).T
        img = encode(ar.matmul(digits, Mt), q)
        src.append(codes)
        dst.append(img)
    if src:
        src_a, dst_a = np.concatenate(src), np.concatenate(dst)
    else:
        src_a = dst_a = np.zeros(0, np.int64)
    graph = coo_matrix((np.ones(len(src_a), np.int8), (src_a, dst_a)), shape=(N, N))
    _, comp = connected_components(graph, directed=True, connection="weak")
    # codes ascend, so the first occurrence of each component is its rep
    _, first = np.unique(comp, return_index=True)
    # relabel components in order of their representatives
    rank = np.empty(len(first), np.int64)
    rank[np.argsort(first)] = np.arange(len(first))
    return rank[comp]


def span_codes(field: Field, rows, n: int, block: int = 1 << 20):
    """Yield arrays of codes covering every vector in the span of ``rows``."""
    q = field.q
    rows = [tuple(r) for r in rows]
    dim = len(rows)
    low = min(dim, floor_log(q, block))
    if q == 2:
        # codes add by xor over GF(2)
        lo = np.zeros(1, np.int64)
        for r in rows[dim - low:]:
            lo = np.concatenate([lo, lo ^ code_of(r, 2)])
        for hi in itertools.product(range(2), repeat=dim - low):
            off = 0
            for bit, r in zip(hi, rows):
                if bit:
                    off ^= code_of(r, 2)
            yield lo ^ off
        return
    ar = _Arith(field)
    basis = np.array(rows, dtype=np.int64).reshape(dim, n)
    hi_rows, lo_rows = basis[: dim - low], basis[dim - low:]
    lo_vecs = ar.matmul(decode(np.arange(q**low), q, low), lo_rows)
    for hi in itertools.product(range(q), repeat=dim - low):
        off = ar.matmul(np.array([hi], np.int64).reshape(1, -1), hi_rows)[0]
        yield encode(ar.add(lo_vecs, off), q)


def uncovered(table: OrbitTable, rows) -> np.ndarray:
    """Indices of orbits that miss the span of ``rows``."""
    hit = np.zeros(table.count, dtype=bool)
    for codes in span_codes(table.field, rows, table.n):
        hit[table.labels[codes]] = True
    return np.flatnonzero(~hit)


# -- band enumeration ------------------------------------------------------

def pivot_sets(n: int, c: int):
    return list(itertools.combinations(range(n), c))


def free_positions(pivots, n: int) -> list[tuple[int, int]]:
    pset = set(pivots)
    return [(r, j) for r, p in enumerate(pivots) for j in range(p + 1, n) if j not in pset]


def build_batch(q: int, n: int, pivots, start: int, stop: int) -> np.ndarray:
    c = len(pivots)
    free = free_positions(pivots, n)
    idx = np.arange(start, stop, dtype=np.int64)
    H = np.zeros((stop - start, c, n), np.int64)
    for r, p in enumerate(pivots):
        H[:, r, p] = 1
    f = len(free)
    for k, (r, j) in enumerate(free):
        H[:, r, j] = (idx // q ** (f - 1 - k)) % q
    return H


def iter_parity_checks(q: int, n: int, c: int):
    """Every RREF c x n matrix of rank c over the codes 0..q-1, canonical order."""
    for piv in pivot_sets(n, c):
        free = free_positions(piv, n)
        for vals in itertools.product(range(q), repeat=len(free)):
            H = [[0] * n for _ in range(c)]
            for r, p in enumerate(piv):
                H[r][p] = 1
            for (r, j), v in zip(free, vals):
                H[r][j] = v
            yield tuple(tuple(row) for row in H)


def scan(H: np.ndarray, members: list[np.ndarray], ar: _Arith) -> tuple[int, np.ndarray]:
    """Filter a batch; return (first covering index or -1, per-candidate test counts)."""
    B, c, n = H.shape
    depth = np.zeros(B, np.int64)
    alive = np.arange(B)
    Hs = H.reshape(B * c, n)
    for M in members:
        if not alive.size:
            break
        depth[alive] += 1
        S = ar.matmul(Hs, M.T).reshape(alive.size, c, M.shape[0])
        keep = (S == 0).all(axis=1).any(axis=1)
        alive = alive[keep]
        Hs = Hs.reshape(-1, c, n)[keep].reshape(-1, n)
    return (int(alive[0]) if alive.size else -1), depth


@dataclass
class BandResult:
    codim: int
    cover: tuple | None  # parity-check rows of the first cover, canonical order
    candidates: int
    tests: int
    exhausted: bool


_STATE = {}


def _init_worker(field, n, members):
    _STATE["args"] = (field, n, members, _Arith(field))


def _run_task(task):
    field, n, members, ar = _STATE["args"]
    pivots, start, stop = task
    H = build_batch(field.q, n, pivots, start, stop)
    first, depth = scan(H, members, ar)
    if first >= 0:
        return first, int(depth[: first + 1].sum()), H[first].tolist()
    return -1, int(depth.sum()), None


def tasks_for_band(q: int, n: int, c: int, chunk: int):
    for piv in pivot_sets(n, c):
        total = q ** len(free_positions(piv, n))
        for start in range(0, total, chunk):
            yield piv, start, min(total, start + chunk)


def _pool_context():
    try:
        return multiprocessing.get_context("fork")
    except ValueError:  # pragma: no cover - non-POSIX
        return multiprocessing.get_context()


def search_band(
    table: OrbitTable,
    c: int,
    threads: int = 1,
    budget: int | None = DEFAULT_BUDGET,
    chunk: int | None = None,
) -> BandResult:
    """Scan every codimension-c subspace in canonical order until one covers.

    The outcome (first cover, candidate and test counts, budget verdict) is
    independent of ``threads`` and ``chunk``: chunks are merged in order and
    counts are taken per candidate up to the first cover.
    """
    q, n = table.q, table.n
    total = gaussian_binomial(n, c, q)
    if c == 0:
        return BandResult(0, (), 1, 0, False)
    if budget is not None and total > budget:
        raise BudgetExceeded(
            f"codimension {c} band has {total} candidates, budget is {budget}", band=c
        )
    members = table.check_members()
    if chunk is None:
        chunk = CHUNK if threads <= 1 else max(256, min(CHUNK, total // (4 * threads) + 1))
    tasks = tasks_for_band(q, n, c, chunk)

    examined = 0
    tests = 0

    def account(task, res):
        nonlocal examined, tests
        first, t, H = res
        tests += t
        if budget is not None and tests > budget:
            raise BudgetExceeded(
                f"codimension {c} band exceeded the budget of {budget} membership tests", band=c
            )
        if first >= 0:
            examined += first + 1
            return BandResult(c, tuple(tuple(r) for r in H), examined, tests, False)
        examined += task[2] - task[1]
        return None

    if threads <= 1:
        _init_worker(table.field, n, members)
        for task in tasks:
            found = account(task, _run_task(task))
            if found:
                return found
    else:
        task_list = list(tasks)
        with ProcessPoolExecutor(
            max_workers=threads,
            mp_context=_pool_context(),
            initializer=_init_worker,
            initargs=(table.field, n, members),
        ) as pool:
            try:
                for task, res in zip(task_list, pool.map(_run_task, task_list)):
                    found = account(task, res)
                    if found:
                        return found
            finally:
                pool.shutdown(wait=True, cancel_futures=True)
    return BandResult(c, None, examined, tests, True)


def default_threads() -> int:
    return os.cpu_count() or 1


def default_budget() -> int:
    env = os.environ.get("CYCCOVER_BUDGET")
    return int(env) if env else DEFAULT_BUDGET


@dataclass
class SearchOutcome:
    h: int
    parity_check: tuple
    exhausted: bool
    candidates: int


def ascending_search(table: OrbitTable, cap: int, threads: int = 1, budget: int | None = None) -> SearchOutcome:
    """Largest c <= cap admitting a cover, scanning bands c = 1, 2, ... upwards.

    Supersets of covers are covers, so every band below the largest covering
    codimension also has a cover; the first band without one settles h.
    """
    best = ()
    candidates = 0
    tests = 0
    for c in range(1, cap + 1):
        remaining = None if budget is None else budget - tests
        band = search_band(table, c, threads=threads, budget=remaining)
        candidates += band.candidates
        tests += band.tests
        if band.exhausted:
            return SearchOutcome(c - 1, best, True, candidates)
        best = band.cover
    return SearchOutcome(cap, best, False, candidates)
