"""Generalized cyclotomic classes modulo p^j, Euler-quotient classes and fibers.

Class ``D_n`` at level ``j`` is ``{g^(n + k*f*p^(j-1)) mod p^j : 0 <= k < e}``.
There are ``f*p^(j-1)`` of them and they partition the units modulo ``p^j``.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from math import gcd, isqrt

import numpy as np

from .numtheory import ParameterError, Params, factorize


@lru_cache(maxsize=32)
def power_table(p: int, j: int, g: int) -> np.ndarray:
    """``table[i] = g^i mod p^j`` for ``0 <= i < phi(p^j)``; read-only int64 array."""
    m = p**j
    phi = (p - 1) * p ** (j - 1)
    block = max(1, isqrt(phi))
    head = np.empty(block, dtype=np.int64)
    x = 1
    for i in range(block):
        head[i] = x
        x = x * g % m
    step = x  # g^block
    nblocks = -(-phi // block)
    table = np.empty(nblocks * block, dtype=np.int64)
    scale = 1
    for b in range(nblocks):
        # products stay below m^2, well inside int64 at desk scale
        table[b * block:(b + 1) * block] = head * scale % m
        scale = scale * step % m
    table = table[:phi]
    table.flags.writeable = False
    return table


@lru_cache(maxsize=32)
def dlog_table(p: int, j: int, g: int) -> np.ndarray:
    """``table[u] = log_g(u) mod phi(p^j)``; -1 where p divides u."""
    pw = power_table(p, j, g)
    table = np.full(p**j, -1, dtype=np.int64)
    table[pw] = np.arange(pw.size, dtype=np.int64)
    table.flags.writeable = False
    return table


@dataclass(frozen=True)
class ClassIndex:
    j: int
    n: int
    p: int
    f: int

    @property
    def l(self) -> int:  # noqa: E743
        return self.n % self.p ** (self.j - 1)

    @property
    def m(self) -> int:
        return self.n // self.p ** (self.j - 1)

    @classmethod
    def from_pair(cls, params: Params, j: int, l: int, m: int) -> "ClassIndex":  # noqa: E741
        return cls(j, l + m * params.p ** (j - 1), params.p, params.f)


def _check_index(params: Params, j: int, n: int) -> None:
    if j < 1:
        raise ParameterError(f"level must be >= 1, got {j}")
    if not 0 <= n < params.num_classes(j):
        raise ParameterError(
            f"class index {n} out of range [0, {params.num_classes(j)}) at level {j}"
        )


def class_exponents(params: Params, j: int, n: int) -> np.ndarray:
    step = params.f * params.p ** (j - 1)
    return n + step * np.arange(params.e, dtype=np.int64)


def class_elements(params: Params, j: int, n: int) -> frozenset[int]:
    _check_index(params, j, n)
    pw = power_table(params.p, j, params.g)
    return frozenset(int(x) for x in pw[class_exponents(params, j, n)])


def all_classes(params: Params, j: int) -> list[list[int]]:
    """Every class at level ``j`` as a sorted list, indexed by class number."""
    pw = power_table(params.p, j, params.g)
    nc = params.num_classes(j)
    grid = np.arange(nc)[:, None] + nc * np.arange(params.e)[None, :]
    return [sorted(int(x) for x in row) for row in pw[grid]]


def class_of(params: Params, u: int, j: int) -> ClassIndex:
    m = params.p**j
    if not 0 < u < m:
        u %= m
    if u % params.p == 0:
        raise ValueError(f"{u} is divisible by p={params.p}; it lies in no class")
    a = int(dlog_table(params.p, j, params.g)[u])
    return ClassIndex(j, a % params.num_classes(j), params.p, params.f)


def mul_class_index(params: Params, j: int, l: int, l2: int) -> ClassIndex:  # noqa: E741
    """Index of ``u*D_l`` for any ``u`` in ``D_l2``."""
    return ClassIndex(j, (l + l2) % params.num_classes(j), params.p, params.f)


def reduce_index(params: Params, from_j: int, to_j: int, n: int) -> ClassIndex:
    """Index of ``D_n^(p^from_j) mod p^to_j``.

    Uses the pair form ``(l, m) -> (l mod p^(to_j-1), (l // p^(to_j-1) + m) mod f)``.
    Because ``p = 1 (mod f)`` this coincides with ``n mod f*p^(to_j-1)``.
    """
    if to_j > from_j:
        raise ParameterError(f"cannot reduce from level {from_j} up to level {to_j}")
    if to_j < 1:
        raise ParameterError(f"target level must be >= 1, got {to_j}")
    _check_index(params, from_j, n)
    p, f = params.p, params.f
    l, m = n % p ** (from_j - 1), n // p ** (from_j - 1)
    q = p ** (to_j - 1)
    return ClassIndex(to_j, l % q + ((l // q + m) % f) * q, p, f)


def euler_quotient(p: int, r: int, u: int) -> int:
    """``(u^phi(p^r) - 1) / p^r mod p^r``, and 0 on multiples of p."""
    if u % p == 0:
        return 0
    pr = p**r
    t = pow(u, (p - 1) * p ** (r - 1), pr * pr)
    return (t - 1) // pr % pr


def euler_class_elements(p: int, r: int, l: int) -> frozenset[int]:  # noqa: E741
    if not 0 <= l < p**r:
        raise ParameterError(f"index {l} out of range [0, {p**r})")
    return frozenset(
        u for u in range(p ** (r + 1)) if u % p and euler_quotient(p, r, u) == l
    )


def normalized_primitive_root(p: int, j: int) -> int:
    """Smallest primitive root ``g`` modulo ``p^j`` (j >= 2) with Euler quotient 1.

    With such a ``g`` the Euler-quotient class of index ``l`` at level ``j`` is the
    union of ``D_(l + m*p^(j-1))`` over ``m``.
    """
    if j < 2:
        raise ParameterError("normalized primitive roots need level >= 2")
    m = p**j
    phi = (p - 1) * p ** (j - 1)
    cofactors = [phi // q for q, _ in factorize(phi)]
    for g in range(2, m):
        if g % p and euler_quotient(p, j - 1, g) == 1 and all(
            pow(g, c, m) != 1 for c in cofactors
        ):
            return g
    raise LookupError(f"no primitive root mod {p}^{j} has Euler quotient 1")


@dataclass(frozen=True)
class Fiber:
    """``{v + k*p^n mod p^(n+1) : 0 <= k < p}``."""

    p: int
    n: int
    v: int
    elements: frozenset[int]


def fiber(p: int, n: int, v: int) -> Fiber:
    if not 0 <= v < p**n:
        raise ParameterError(f"fiber base {v} out of range [0, {p**n})")
    pn = p**n
    return Fiber(p, n, v, frozenset((v + k * pn) % (pn * p) for k in range(p)))


def fiber_orbit(params: Params, n: int, l: int, m: int) -> list[int]:  # noqa: E741
    """Classes at level ``n+1`` met by a fiber through ``D_(l,m)``, in order i = 0..p-1.

    Returns flat indices of ``D_(l + i*p^(n-1), <m - i>_f)``; ``l + i*p^(n-1)`` may
    spill past ``p^n``, which carries into the second coordinate.
    """
    if n < 1:
        raise ParameterError("fiber orbits are defined for n >= 1")
    p, f = params.p, params.f
    nc = params.num_classes(n + 1)
    return [
        (l + i * p ** (n - 1) + ((m - i) % f) * p**n) % nc for i in range(p)
    ]


def is_orbit_union(indices, period: int, step: int) -> bool:
    """True if the index set is invariant under ``+step mod period``."""
    s = set(indices)
    return all((x + step) % period in s for x in s)


def units(m: int, p: int) -> list[int]:
    return [u for u in range(1, m) if gcd(u, p) == 1]
