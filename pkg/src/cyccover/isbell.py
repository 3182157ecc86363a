"""Transitive permutation groups from covering subspaces.

Let W cover F_p^b under the cyclic shift sigma, with gcd(p, b) = 1 and
codim(W) = a.  The group G = F_p^b x| <sigma> acts by left multiplication on
the p^a * b left cosets of {(w, id) : w in W}.  The image H of this action
is transitive, and every element of p-power order fixes some coset, so
degree p^a * b has no fixed-point-free p-element: m_p(b) > a.

Points are numbered from 0.  The coset (v, sigma^j) * W is keyed by j and
the syndrome of v with respect to the RREF parity check of sigma^j(W);
point index = j * p^a + (syndrome read as a base-p number).
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass

import numpy as np

from . import engine
from .cover import is_covering
from .errors import CapExceeded, NotCoprime, NotCovering
from .gf import is_prime
from .linalg import Subspace, annihilator, shifted

DEFAULT_CAP = 1 << 17


@dataclass
class PermGroup:
    degree: int
    generators: np.ndarray  # (k, degree) images of points
    elements: np.ndarray  # (order, degree), sorted rows, identity included

    @property
    def order(self) -> int:
        return len(self.elements)


def trivial_group(degree: int = 1) -> PermGroup:
    ident = np.arange(degree, dtype=np.int64)[None, :]
    return PermGroup(degree, ident[:0], ident)


def build_isbell_group(
    p: int, b: int, W: Subspace, cap: int = DEFAULT_CAP, require_cover: bool = True
) -> PermGroup:
    """The permutation image of ``F_p^b x| <sigma>`` on the cosets of ``W``.

    ``require_cover=False`` skips the covering check, for building control
    groups from arbitrary subspaces.
    """
    if not is_prime(p):
        raise ValueError(f"{p} is not prime")
    if math.gcd(p, b) != 1:
        raise NotCoprime(f"gcd(p={p}, b={b}) = {math.gcd(p, b)}")
    if W.field.q != p or W.n != b:
        raise ValueError(f"witness must be a subspace of F_{p}^{b}")
    if require_cover and not is_covering(W):
        raise NotCovering("witness does not cover F_p^b")
    size = p**b * b
    if size > cap:
        raise CapExceeded(f"|G| = {size} exceeds the cap {cap}")
    a = W.codim
    block = p**a
    degree = block * b
    checks = [np.array(annihilator(shifted(W, j)), np.int64).reshape(a, b) for j in range(b)]
    weights = p ** np.arange(a - 1, -1, -1, dtype=np.int64)

    # coset representatives: pivot entries of sigma^j(W)'s check equal the syndrome
    syndromes = engine.decode(np.arange(block), p, a).reshape(block, a)
    reps = []
    for H in checks:
        piv = [int(np.flatnonzero(row)[0]) for row in H]
        v = np.zeros((block, b), np.int64)
        v[:, piv] = syndromes
        reps.append(v)

    us = engine.decode(np.arange(p**b), p, b).reshape(-1, b)
    images = np.empty((b, p**b, degree), np.int64)
    for i in range(b):
        for j in range(b):
            t = (i + j) % b
            Ht = checks[t]
            syn_u = us @ Ht.T
            shifted_reps = np.roll(reps[j], i, axis=1)  # sigma^i moves coordinate k to k + i
            const = shifted_reps @ Ht.T
            total = (syn_u[:, None, :] + const[None, :, :]) % p
            images[i, :, j * block:(j + 1) * block] = t * block + total @ weights
    flat = images.reshape(-1, degree)
    elements = np.unique(flat, axis=0)
    gens = [images[1 % b, 0]] + [images[0, p ** (b - 1 - k)] for k in range(b)]
    return PermGroup(degree, np.array(gens), elements)


def _orders(elements: np.ndarray) -> np.ndarray:
    """Element orders as the lcm of cycle lengths."""
    m, degree = elements.shape
    points = np.arange(degree)
    cycle = np.zeros((m, degree), np.int64)
    cur = elements.copy()
    for k in range(1, degree + 1):
        hit = (cur == points) & (cycle == 0)
        cycle[hit] = k
        if (cycle > 0).all():
            break
        cur = np.take_along_axis(elements, cur, axis=1)
    return np.lcm.reduce(cycle, axis=1)


def _is_power_of(x: int, p: int) -> bool:
    while x % p == 0:
        x //= p
    return x == 1


@dataclass
class IsbellReport:
    p: int
    b: int
    a: int
    degree: int
    group_order: int
    transitive: bool
    fpf_p_power_found: bool

    @property
    def m_p_lower(self) -> int:
        return self.a + 1

    @property
    def valid(self) -> bool:
        return self.transitive and not self.fpf_p_power_found

    def to_json(self) -> dict:
        return {
            "p": self.p,
            "b": self.b,
            "a": self.a,
            "degree": self.degree,
            "group_order": self.group_order,
            "transitive": self.transitive,
            "fpf_p_power_found": self.fpf_p_power_found,
            "m_p_lower": self.m_p_lower,
            "valid": self.valid,
        }

    def dumps(self) -> str:
        return json.dumps(self.to_json(), indent=2, sort_keys=True)

    def summary(self) -> str:
        return f"m_{self.p}({self.b}) > {self.a}"


def verify_isbell(H: PermGroup, p: int) -> IsbellReport:
    """Transitivity and the fixed-point scan over elements of p-power order.

    The degree is split as p^a * b with p not dividing b.
    """
    degree = H.degree
    a, b = 0, degree
    while b % p == 0:
        b //= p
        a += 1
    transitive = len(np.unique(H.elements[:, 0])) == degree
    orders = _orders(H.elements)
    ppow = np.array([o > 1 and _is_power_of(int(o), p) for o in orders], dtype=bool)
    has_fixed = (H.elements == np.arange(degree)).any(axis=1)
    fpf = bool((ppow & ~has_fixed).any())
    return IsbellReport(p, b, a, degree, H.order, bool(transitive), fpf)
