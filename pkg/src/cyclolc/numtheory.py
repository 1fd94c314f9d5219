"""Modular arithmetic and the number-theoretic predicates on (p, f)."""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from math import gcd, isqrt


class ParameterError(ValueError):
    """Invalid arithmetic frame (non-prime p, f not dividing p - 1, ...)."""


class AssumptionError(Exception):
    """The non-Wieferich / gcd condition needed by the fast engines fails."""

    def __init__(self, predicate: str, message: str):
        super().__init__(message)
        self.predicate = predicate


def mod_pow(base: int, exp: int, modulus: int) -> int:
    if modulus < 2:
        raise ParameterError(f"modulus must be >= 2, got {modulus}")
    return pow(base, exp, modulus)


def mod_inv(u: int, modulus: int) -> int:
    if modulus < 2:
        raise ParameterError(f"modulus must be >= 2, got {modulus}")
    d = gcd(u, modulus)
    if d != 1:
        raise ValueError(f"{u} is not invertible modulo {modulus} (gcd = {d})")
    return pow(u, -1, modulus)


def is_prime(n: int) -> bool:
    if n < 2:
        return False
    if n % 2 == 0:
        return n == 2
    for d in range(3, isqrt(n) + 1, 2):
        if n % d == 0:
            return False
    return True


@lru_cache(maxsize=None)
def factorize(n: int) -> tuple[tuple[int, int], ...]:
    """Trial-division factorization as ((prime, exponent), ...), primes ascending."""
    out = []
    d = 2
    while d * d <= n:
        if n % d == 0:
            k = 0
            while n % d == 0:
                n //= d
                k += 1
            out.append((d, k))
        d += 1 if d == 2 else 2
    if n > 1:
        out.append((n, 1))
    return tuple(out)


def euler_phi(n: int) -> int:
    result = n
    for q, _ in factorize(n):
        result -= result // q
    return result


def divisors(n: int) -> list[int]:
    return [d for d in range(1, n + 1) if n % d == 0]


def multiplicative_order(a: int, modulus: int) -> int:
    if modulus < 2:
        raise ParameterError(f"modulus must be >= 2, got {modulus}")
    a %= modulus
    if gcd(a, modulus) != 1:
        raise ValueError(f"{a} is not a unit modulo {modulus}")
    order = euler_phi(modulus)
    for q, k in factorize(order):
        for _ in range(k):
            if pow(a, order // q, modulus) == 1:
                order //= q
            else:
                break
    return order


@lru_cache(maxsize=None)
def find_primitive_root(p: int, j: int) -> int:
    """Smallest primitive root modulo p**j."""
    if p < 3 or not is_prime(p):
        raise ParameterError(f"{p} is not an odd prime")
    if j < 1:
        raise ParameterError(f"level must be >= 1, got {j}")
    m = p**j
    phi = (p - 1) * p ** (j - 1)
    cofactors = [phi // q for q, _ in factorize(phi)]
    for g in range(2, m):
        if g % p and all(pow(g, c, m) != 1 for c in cofactors):
            return g
    raise AssertionError("unreachable: odd prime powers have primitive roots")


def is_wieferich(p: int) -> bool:
    return pow(2, p - 1, p * p) == 1


@dataclass(frozen=True)
class AssumptionReport:
    non_wieferich: bool
    gcd_ok: bool

    @property
    def ok(self) -> bool:
        return self.non_wieferich and self.gcd_ok

    def failing_predicate(self) -> str | None:
        if not self.non_wieferich:
            return "non_wieferich"
        if not self.gcd_ok:
            return "gcd_ok"
        return None

    def require(self, p: int, f: int) -> None:
        """Raise AssumptionError naming the first failing predicate."""
        pred = self.failing_predicate()
        if pred == "non_wieferich":
            raise AssumptionError(pred, f"p={p} is a Wieferich prime: 2^(p-1) = 1 mod p^2")
        if pred == "gcd_ok":
            raise AssumptionError(
                pred, f"gcd((p-1)/ord_p(2), f) != 1 for p={p}, f={f}"
            )


def check_assumptions(p: int, f: int) -> AssumptionReport:
    if f < 1 or (p - 1) % f:
        raise ParameterError(f"f={f} does not divide p-1={p - 1}")
    ord2 = multiplicative_order(2, p)
    return AssumptionReport(
        non_wieferich=not is_wieferich(p),
        gcd_ok=gcd((p - 1) // ord2, f) == 1,
    )


@dataclass(frozen=True)
class Params:
    """The frame (p, r, e, f, g) with p = e*f + 1 and g a primitive root mod p^2."""

    p: int
    r: int
    e: int
    f: int
    g: int
    ord2: int
    wieferich: bool

    @classmethod
    def build(cls, p: int, r: int, f: int, g: int | None = None) -> "Params":
        if p < 3 or not is_prime(p):
            raise ParameterError(f"p={p} is not an odd prime")
        if r < 1:
            raise ParameterError(f"r must be >= 1, got {r}")
        if f < 1 or (p - 1) % f:
            raise ParameterError(f"f={f} does not divide p-1={p - 1}")
        if g is None:
            g = find_primitive_root(p, 2)
        elif g % p == 0 or multiplicative_order(g, p * p) != p * (p - 1):
            raise ParameterError(f"g={g} is not a primitive root modulo {p * p}")
        return cls(
            p=p,
            r=r,
            e=(p - 1) // f,
            f=f,
            g=g,
            ord2=multiplicative_order(2, p),
            wieferich=is_wieferich(p),
        )

    @property
    def N(self) -> int:
        return self.p**self.r

    def num_classes(self, j: int) -> int:
        return self.f * self.p ** (j - 1)

    def assumptions(self) -> AssumptionReport:
        return check_assumptions(self.p, self.f)
