"""Slow, independent reference computations used to freeze expected values."""

import re
from itertools import product
from pathlib import Path

DATA = Path(__file__).parent / "data"


def load_reference_listing() -> list[int]:
    return [int(c) for c in re.findall(r"[01]", (DATA / "p11_r2_listing.txt").read_text())]


def lfsr_length_by_linear_algebra(bits) -> int:
    """Smallest L such that s_(i+L) = sum c_j s_(i+j) holds for all i (indices mod N).

    Solves each candidate L as a GF(2) linear system by Gaussian elimination.
    """
    N = len(bits)
    if not any(bits):
        return 0
    for L in range(1, N + 1):
        rows = []
        for i in range(N):
            coeffs = 0
            for j in range(L):
                if bits[(i + j) % N]:
                    coeffs |= 1 << j
            rows.append((coeffs, bits[(i + L) % N]))
        if _solvable(rows, L):
            return L
    return N


def _solvable(rows, width) -> bool:
    pivots = {}
    for coeffs, rhs in rows:
        for col in reversed(range(width)):
            if not (coeffs >> col) & 1:
                continue
            if col in pivots:
                pc, pr = pivots[col]
                coeffs ^= pc
                rhs ^= pr
            else:
                pivots[col] = (coeffs, rhs)
                break
        else:
            if rhs:
                return False
    return True


def powers(g, m, count):
    out, x = [], 1
    for _ in range(count):
        out.append(x)
        x = x * g % m
    return out


def brute_class(p, f, g, j, n):
    """Class D_n at level j by literally enumerating g^(n + k f p^(j-1))."""
    e = (p - 1) // f
    m = p**j
    return {pow(g, n + k * f * p ** (j - 1), m) for k in range(e)}


def brute_dlog(g, u, m):
    x = 1
    for a in range(m):
        if x == u % m:
            return a
        x = x * g % m
    raise ValueError("not a power")


def all_subsets(n):
    for mask in product((0, 1), repeat=n):
        yield {i for i in range(n) if mask[i]}
