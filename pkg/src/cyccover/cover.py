"""Cyclic shift orbits, the covering test, and exact computation of h_q(n).

A subspace U of F_q^n covers when every vector has some cyclic shift in U.
``h_search`` finds the largest codimension of a covering subspace by
exhaustive enumeration and returns a witness.
"""

from __future__ import annotations

import functools
import json
import math
from dataclasses import dataclass

import numpy as np

from . import engine
from .engine import BandResult, OrbitTable, default_budget, floor_log, gaussian_binomial
from .errors import BudgetExceeded, DimensionMismatch, NotCovering
from .gf import Field, gf
from .linalg import Subspace, from_parity_check, intersect, subspace_sum

__all__ = [
    "OrbitTable",
    "CoverResult",
    "orbits",
    "burnside_count",
    "gaussian_binomial",
    "is_covering",
    "first_uncovered",
    "search_band",
    "h_search",
    "h_upper_bound",
    "restrict_even_weight",
    "lift_even_weight",
    "even_weight_space",
]

_USE_DEFAULT = object()


def _phi(t: int) -> int:
    return sum(1 for k in range(1, t + 1) if math.gcd(k, t) == 1)


def burnside_count(q: int, n: int) -> int:
    """Number of shift orbits on F_q^n: ``(1/n) sum_{t | n} phi(t) q^(n/t)``."""
    total = sum(_phi(t) * q ** (n // t) for t in range(1, n + 1) if n % t == 0)
    return total // n


@functools.lru_cache(maxsize=8)
def orbits(q: int, n: int) -> OrbitTable:
    """All shift orbits of F_q^n, indexed by lex-least representative."""
    return OrbitTable(gf(q), n, engine.cyclic_orbit_labels(q, n))


def h_upper_bound(q: int, n: int) -> int:
    """``floor(log_q n)``: the orbits have size at most n."""
    return floor_log(q, n)


def _table_for(U: Subspace) -> OrbitTable:
    return orbits(U.field.q, U.n)


def first_uncovered(U: Subspace, table: OrbitTable | None = None) -> tuple[int, ...] | None:
    """Lex-least orbit representative with no shift in ``U``, or None."""
    table = table or _table_for(U)
    if (table.q, table.n) != (U.field.q, U.n):
        raise DimensionMismatch("orbit table and subspace live in different spaces")
    missing = engine.uncovered(table, U.rows)
    if not missing.size:
        return None
    rep = int(table.reps[missing[0]])
    return tuple(int(x) for x in engine.decode(rep, table.q, table.n))


def is_covering(U: Subspace, table: OrbitTable | None = None) -> bool:
    """Every vector of F_q^n has a cyclic shift in ``U``.

    Without a table this counts the distinct shift-canonical forms of the
    elements of ``U`` against the orbit count, touching only q^dim vectors.
    """
    if table is not None:
        return first_uncovered(U, table) is None
    q, n = U.field.q, U.n
    if n * math.log2(q) > 62:
        raise BudgetExceeded(f"vectors of F_{q}^{n} do not fit in 64-bit codes")
    if q**U.dim > engine.MAX_VECTORS:
        raise BudgetExceeded(f"subspace has {q}^{U.dim} elements, limit is {engine.MAX_VECTORS}")
    seen = [np.unique(engine.cyclic_canon(codes, q, n)) for codes in engine.span_codes(U.field, U.rows, n)]
    return len(np.unique(np.concatenate(seen))) == burnside_count(q, n)


def _budget(budget):
    return default_budget() if budget is _USE_DEFAULT else budget


def search_band(q: int, n: int, c: int, threads: int = 1, budget=_USE_DEFAULT) -> BandResult:
    """Scan the whole codimension-c band of F_q^n in canonical order."""
    return engine.search_band(orbits(q, n), c, threads=threads, budget=_budget(budget))


@dataclass(frozen=True)
class CoverResult:
    q: int
    n: int
    h: int
    witness: Subspace
    exhausted: bool
    candidates_tested: int

    def to_json(self) -> dict:
        return {
            "q": self.q,
            "n": self.n,
            "h": self.h,
            "witness": self.witness.to_text(),
            "exhausted": self.exhausted,
            "candidates_tested": self.candidates_tested,
        }

    def dumps(self) -> str:
        return json.dumps(self.to_json(), indent=2, sort_keys=True)


def result_from_outcome(field: Field, n: int, out: engine.SearchOutcome) -> CoverResult:
    witness = from_parity_check(out.parity_check, field, n)
    return CoverResult(field.q, n, out.h, witness, out.exhausted, out.candidates)


def h_search(q: int, n: int, threads: int = 1, budget=_USE_DEFAULT) -> CoverResult:
    """Exact h_q(n) with the canonically first witness of that codimension.

    ``exhausted`` is True when the band at codimension h + 1 was scanned
    completely without a cover; it is False when h reached the orbit-size
    bound, which already rules out anything larger.
    """
    table = orbits(q, n)
    out = engine.ascending_search(table, h_upper_bound(q, n), threads=threads, budget=_budget(budget))
    return result_from_outcome(table.field, n, out)


# -- odd n over GF(2): covering inside the even-weight space ---------------

def _even_weight_check(U: Subspace):
    if U.field.q != 2 or U.n % 2 == 0:
        raise ValueError("even-weight restriction needs q = 2 and odd n")


def even_weight_space(n: int) -> Subspace:
    """V_n: vectors of F_2^n with an even number of ones."""
    F = gf(2)
    return from_parity_check([(1,) * n], F, n)


def restrict_even_weight(U: Subspace) -> Subspace:
    """``U`` intersected with the even-weight space V_n.

    For a cover of F_2^n (n odd) the all-ones vector lies in U, so the
    codimension of the result inside V_n equals that of U in F_2^n.
    """
    _even_weight_check(U)
    if not is_covering(U):
        raise NotCovering("subspace does not cover F_2^n")
    return intersect(U, even_weight_space(U.n))


def lift_even_weight(W: Subspace) -> Subspace:
    """``span(W, 11...1)``; inverse of :func:`restrict_even_weight`."""
    _even_weight_check(W)
    return subspace_sum(W, Subspace(W.field, W.n, [(1,) * W.n]))
