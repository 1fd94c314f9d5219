"""Polynomials over GF(2) packed into Python integers (bit i = coefficient of x^i).

Python's arbitrary-precision ints already store their magnitude as machine
words, so shifts and XORs below act on packed words.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable


def degree(a: int) -> int:
    """Degree of ``a``; -1 for the zero polynomial."""
    return a.bit_length() - 1


def poly_mod(a: int, b: int) -> int:
    if b == 0:
        raise ZeroDivisionError("polynomial division by zero")
    db = b.bit_length()
    while True:
        shift = a.bit_length() - db
        if shift < 0:
            return a
        a ^= b << shift


def poly_divmod(a: int, b: int) -> tuple[int, int]:
    if b == 0:
        raise ZeroDivisionError("polynomial division by zero")
    db = b.bit_length()
    q = 0
    while True:
        shift = a.bit_length() - db
        if shift < 0:
            return q, a
        q |= 1 << shift
        a ^= b << shift


def poly_mul(a: int, b: int) -> int:
    out = 0
    while b:
        low = b & -b
        out ^= a << (low.bit_length() - 1)
        b ^= low
    return out


def poly_gcd(a: int, b: int) -> int:
    while b:
        a, b = b, poly_mod(a, b)
    return a


def x_pow_minus_one(n: int) -> int:
    """``x^n - 1`` (which is ``x^n + 1`` in characteristic 2)."""
    return (1 << n) | 1


def phi_level(p: int, n: int) -> int:
    """``1 + x^(p^n) + ... + x^((p-1) p^n)``, the p^(n+1)-th cyclotomic polynomial."""
    step = p**n
    out = 0
    for k in range(p):
        out |= 1 << (k * step)
    return out


@dataclass(frozen=True)
class BinaryPoly:
    """Dense GF(2) polynomial, stored packed; ``coefficients`` lists lowest degree first."""

    value: int = 0

    @classmethod
    def from_coefficients(cls, coeffs: Iterable[int]) -> "BinaryPoly":
        v = 0
        for i, c in enumerate(coeffs):
            if c & 1:
                v |= 1 << i
        return cls(v)

    @property
    def degree(self) -> int | None:
        return None if self.value == 0 else degree(self.value)

    @property
    def coefficients(self) -> list[int]:
        return [(self.value >> i) & 1 for i in range(self.value.bit_length())]

    def __mul__(self, other: "BinaryPoly") -> "BinaryPoly":
        return BinaryPoly(poly_mul(self.value, other.value))

    def __mod__(self, other: "BinaryPoly") -> "BinaryPoly":
        return BinaryPoly(poly_mod(self.value, other.value))

    def __add__(self, other: "BinaryPoly") -> "BinaryPoly":
        return BinaryPoly(self.value ^ other.value)

    def gcd(self, other: "BinaryPoly") -> "BinaryPoly":
        return BinaryPoly(poly_gcd(self.value, other.value))

    def __repr__(self) -> str:
        if self.value == 0:
            return "BinaryPoly(0)"
        terms = [
            "1" if i == 0 else ("x" if i == 1 else f"x^{i}")
            for i in range(self.value.bit_length())
            if (self.value >> i) & 1
        ]
        return f"BinaryPoly({' + '.join(terms)})"
