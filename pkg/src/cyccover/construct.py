"""Explicit covering subspaces with known codimension.

Each builder returns a :class:`ConstructionReport`.  With ``verify=True``
(the default) the covering property and the codimension are checked
exhaustively before the report is returned.
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass, field
from fractions import Fraction

import numpy as np

from . import engine
from .cover import is_covering
from .cyclo import factor_xn_minus_1, order_mod
from .errors import BadDivisor, BadN, NotCoprime, NotCovering, PreconditionC, PreconditionGcd
from .gf import gf, prime_power
from .linalg import Subspace, contains, direct_sum, intersect, kernel, shifted, subspace_sum
from .polyring import shift


@dataclass
class ConstructionReport:
    name: str
    parameters: dict
    subspace: Subspace
    claimed_codim: int
    verified: bool
    ambient: Subspace | None = None  # None means the whole of F_q^n
    extra: dict = field(default_factory=dict)

    @property
    def n(self) -> int:
        return self.subspace.n

    @property
    def codim(self) -> int:
        top = self.subspace.n if self.ambient is None else self.ambient.dim
        return top - self.subspace.dim

    def to_json(self) -> dict:
        out = {
            "name": self.name,
            "parameters": self.parameters,
            "q": self.subspace.field.q,
            "n": self.subspace.n,
            "claimed_codim": self.claimed_codim,
            "verified": self.verified,
            "subspace": self.subspace.to_text(),
        }
        if self.ambient is not None:
            out["ambient"] = self.ambient.to_text()
        if self.extra:
            out["extra"] = self.extra
        return out

    def dumps(self) -> str:
        return json.dumps(self.to_json(), indent=2, sort_keys=True)


def _finish(report: ConstructionReport, verify: bool) -> ConstructionReport:
    if report.codim != report.claimed_codim:
        raise AssertionError(f"{report.name}: built codim {report.codim}, expected {report.claimed_codim}")
    if verify:
        if report.ambient is None:
            ok = is_covering(report.subspace)
        else:
            ok = covers_invariant(report.subspace, report.ambient)
        if not ok:
            raise NotCovering(f"{report.name} {report.parameters} did not produce a cover")
        report.verified = True
    return report


def covers_invariant(U: Subspace, V: Subspace) -> bool:
    """Every vector of the shift-invariant space ``V`` has a shift in ``U``."""
    n = U.n
    for v in V.elements():
        x = v
        for _ in range(n):
            if contains(U, x):
                break
            x = x[-1:] + x[:-1]
        else:
            return False
    return True


def _others(F, skip) -> list[Subspace]:
    return [F.component(i) for i in range(len(F.factors)) if i not in skip]


def _with_components(core: Subspace, F, skip) -> Subspace:
    return direct_sum(core, *_others(F, skip)) if len(F.factors) > len(skip) else core


# -- small-n pattern and products -----------------------------------------

def odd_cover(n: int, verify: bool = True) -> ConstructionReport:
    """Codimension-2 cover of F_2^n for odd n > 3.

    Basis: the all-ones vector, 1010...0, and the adjacent pairs
    e_j + e_(j+1) for j = 4, ..., n-1 (1-based).
    """
    if n <= 3 or n % 2 == 0:
        raise BadN(f"n must be odd and greater than 3, got {n}")
    rows = [(1,) * n, tuple(1 if i in (0, 2) else 0 for i in range(n))]
    for j in range(3, n - 1):
        rows.append(tuple(1 if i in (j, j + 1) else 0 for i in range(n)))
    U = Subspace(gf(2), n, rows)
    rep = ConstructionReport("odd_cover", {"n": n}, U, 2, False)
    return _finish(rep, verify)


def product_cover(U: Subspace, m: int, verify: bool = True) -> ConstructionReport:
    """Cover of F_q^(nm) with the codimension of a cover ``U`` of F_q^n.

    Each basis vector of U is spread onto the coordinates m-1, 2m-1, ...
    (0-based); every other coordinate contributes its unit vector.
    """
    if m < 1:
        raise ValueError(f"m must be positive, got {m}")
    if verify and not is_covering(U):
        raise NotCovering("input subspace does not cover")
    n = U.n
    N = n * m
    rows = []
    for u in U.rows:
        x = [0] * N
        for j, c in enumerate(u):
            x[j * m + m - 1] = c
        rows.append(tuple(x))
    for t in range(N):
        if (t + 1) % m:
            rows.append(tuple(1 if i == t else 0 for i in range(N)))
    W = Subspace(U.field, N, rows)
    rep = ConstructionReport("product", {"n": n, "m": m, "q": U.field.q}, W, U.codim, False)
    return _finish(rep, verify)


# -- constructions from the factorisation of X^n - 1 -----------------------

def field_cover(q: int, d: int, verify: bool = True) -> ConstructionReport:
    """Codimension d-1 cover of F_q^n, n = q^d - 1.

    V_1 (the component for the coset of 1) is a field of order q^d whose
    nonzero elements form one shift orbit, so the line through u_1 plus all
    other components covers.
    """
    prime_power(q)
    if d < 1:
        raise ValueError(f"d must be >= 1, got {d}")
    n = q**d - 1
    F = factor_xn_minus_1(q, n)
    i1 = F.index_of(1)
    core = Subspace(F.field, n, [F.idempotents[i1]])
    U = _with_components(core, F, {i1})
    rep = ConstructionReport("field_cover", {"q": q, "d": d}, U, d - 1, False)
    return _finish(rep, verify)


def _component_codes(V: Subspace) -> np.ndarray:
    return np.concatenate(list(engine.span_codes(V.field, V.rows, V.n)))


def component_orbits(V: Subspace) -> dict[int, int]:
    """Shift-canonical code -> orbit size, over the nonzero vectors of ``V``."""
    q, n = V.field.q, V.n
    codes = _component_codes(V)
    canon = engine.cyclic_canon(codes[codes != 0], q, n)
    reps, counts = np.unique(canon, return_counts=True)
    return dict(zip(reps.tolist(), counts.tolist()))


def orbit_rep_modulus(q: int, k: int, d: int) -> int:
    """``M = (q-1)(q^(k(d+1)) - 1)/(q^k - 1)``."""
    return (q - 1) * (q ** (k * (d + 1)) - 1) // (q**k - 1)


def orbit_rep_cover(q: int, k: int, d: int, c: int, verify: bool = True) -> ConstructionReport:
    """Cover of F_q^n, n = M/c, from one representative per shift orbit of V_1.

    Requires c | M and c < (q-1)(q^k - q^(-kd))/(q^k - 1).  The built
    codimension is at least k(d+1) - s with s = c(q^k-1)/(q-1); the report
    records the exact value and the bound separately.
    """
    prime_power(q)
    if min(k, d, c) < 1:
        raise ValueError("k, d and c must be positive")
    M = orbit_rep_modulus(q, k, d)
    limit = Fraction(q - 1) * (Fraction(q**k) - Fraction(1, q ** (k * d))) / (q**k - 1)
    if not c < limit:
        raise PreconditionC(f"c={c} is not below {limit} = {float(limit):.4f}")
    if M % c:
        raise BadDivisor(f"c={c} does not divide M={M}")
    n = M // c
    F = factor_xn_minus_1(q, n)
    i1 = F.index_of(1)
    V1 = F.component(i1)
    deg = k * (d + 1)
    if V1.dim != deg:
        raise AssertionError(f"component of 1 has dimension {V1.dim}, expected {deg}")
    orbs = component_orbits(V1)
    s = c * (q**k - 1) // (q - 1)
    regular = all(size == n for size in orbs.values())
    if not regular or len(orbs) != s:
        raise AssertionError(f"V_1 has orbits {sorted(set(orbs.values()))}, count {len(orbs)}; expected {s} of size {n}")
    reps = [tuple(int(x) for x in engine.decode(r, q, n)) for r in sorted(orbs)]
    core = Subspace(F.field, n, reps)
    U = _with_components(core, F, {i1})
    bound = k * d + k - s
    rep = ConstructionReport(
        "orbit_rep_cover",
        {"q": q, "k": k, "d": d, "c": c},
        U,
        U.codim,
        False,
        extra={"n": n, "orbit_count": s, "lower_bound": bound, "span_rank": core.dim},
    )
    if U.codim < bound:
        raise AssertionError(f"codim {U.codim} below the bound {bound}")
    return _finish(rep, verify)


def frobenius_fixed(V: Subspace, e: int) -> Subspace:
    """Vectors v of ``V`` with ``v(X^e) = v``, i.e. fixed by i -> e*i mod n."""
    n = V.n
    F = V.field
    # v(X^e) has coordinate e*i equal to v_i; fixed points satisfy v_{e*i} = v_i
    rows = []
    for i in range(n):
        j = e * i % n
        if j != i:
            r = [0] * n
            r[i] = 1
            r[j] = F.neg(1)
            rows.append(r)
    return intersect(V, Subspace(F, n, kernel(rows, F, n)) if rows else V)


def subfield_cover(q: int, k: int, d: int, verify: bool = True) -> ConstructionReport:
    """Codimension kd cover of F_q^n, n = (q^(k(d+1)) - 1)/(q^k - 1).

    V_1 is a field of order q^(k(d+1)) with identity u_1.  Its subfield of
    order q^k is the fixed space of v -> v^(q^k) = v(X^(q^k)); the n shifts
    of that subfield meet pairwise in 0 and tile V_1.
    """
    prime_power(q)
    if min(k, d) < 1:
        raise ValueError("k and d must be positive")
    Q = q**k
    if math.gcd(d + 1, Q - 1) != 1:
        raise PreconditionGcd(f"gcd(d+1={d + 1}, q^k-1={Q - 1}) = {math.gcd(d + 1, Q - 1)}")
    n = (Q ** (d + 1) - 1) // (Q - 1)
    F = factor_xn_minus_1(q, n)
    i1 = F.index_of(1)
    V1 = F.component(i1)
    L = V1.dim
    if L != k * (d + 1) or order_mod(q, n) != L:
        raise AssertionError(f"component of 1 has dimension {L}")
    line = frobenius_fixed(V1, Q % n)
    if line.dim != k or F.idempotents[i1].coeffs not in line:
        raise AssertionError(f"subfield of V_1 has dimension {line.dim}, expected {k}")
    tiling = shifts_tile(line, V1)
    U = _with_components(line, F, {i1})
    rep = ConstructionReport("subfield_cover", {"q": q, "k": k, "d": d}, U, k * d, False, extra={"n": n})
    if verify and not tiling:
        raise NotCovering("shifts of the subfield do not meet pairwise in 0")
    rep.extra["pairwise_trivial"] = tiling
    return _finish(rep, verify)


def shifts_tile(line: Subspace, V: Subspace) -> bool:
    """The n shifts of ``line`` meet pairwise in 0 and fill ``V``."""
    n = line.n
    images = [shifted(line, a) for a in range(n)]
    for a in range(n):
        for b in range(a + 1, n):
            if subspace_sum(images[a], images[b]).dim != 2 * line.dim:
                return False
    q = line.field.q
    return n * (q**line.dim - 1) == q**V.dim - 1


def idempotent_sum_cover(m_list, verify: bool = True) -> ConstructionReport:
    """Cover of the shift-invariant V = V_(n/n_1) + ... inside R_n over GF(2).

    With n_i = 2^(m_i) - 1 pairwise coprime and n the product, the component
    for the coset of n/n_i is a copy of GF(2^(m_i)).  The span of their
    idempotents covers V with codimension sum(m_i - 1).
    """
    m_list = [int(m) for m in m_list]
    if not m_list or min(m_list) < 1:
        raise ValueError("m_list must hold positive integers")
    sizes = [2**m - 1 for m in m_list]
    for a in range(len(sizes)):
        for b in range(a + 1, len(sizes)):
            if math.gcd(sizes[a], sizes[b]) != 1:
                raise NotCoprime(f"gcd({sizes[a]}, {sizes[b]}) = {math.gcd(sizes[a], sizes[b])}")
    n = math.prod(sizes)
    F = factor_xn_minus_1(2, n)
    idx = [F.index_of(n // ni) for ni in sizes]
    parts = [F.component(i) for i in idx]
    for V_i, m in zip(parts, m_list):
        if V_i.dim != m:
            raise AssertionError(f"component has dimension {V_i.dim}, expected {m}")
    V = direct_sum(*parts)
    U = Subspace(F.field, n, [F.idempotents[i] for i in idx])
    rep = ConstructionReport(
        "idempotent_sum_cover",
        {"m_list": m_list},
        U,
        sum(m - 1 for m in m_list),
        False,
        ambient=V,
        extra={"n": n, "ambient_dim": V.dim},
    )
    return _finish(rep, verify)


def shift_orbit(v, n: int) -> list:
    """The distinct shifts of a ring element."""
    out = []
    x = v
    for _ in range(n):
        if x in out:
            break
        out.append(x)
        x = shift(x, 1)
    return out
