"""Linear complexity engines.

``bm`` and ``gcd`` work on raw bits and are valid for any sequence of odd
period. ``fiber`` and ``lemma6`` use the level structure
``L = delta + (p-1) * sum(delta_n * p^n)``, which only holds when p is not a
Wieferich prime and ``gcd((p-1)/ord_p(2), f) = 1``; they refuse otherwise.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Sequence

import numpy as np

from .cyclotomy import class_of, is_orbit_union
from .gf2 import BinaryPoly, degree, phi_level, poly_gcd, x_pow_minus_one
from .numtheory import AssumptionReport, ParameterError, Params, factorize
from .seqgen import (
    BitSequence,
    SupportSpec,
    generate_sequence,
    reduce_mod2_array,
    reduce_multiset_mod2,
    support_residues,
)

ENGINES = ("bm", "gcd", "fiber", "lemma6")


class EngineDisagreement(AssertionError):
    pass


@dataclass
class LCReport:
    engine: str
    L: int
    N: int
    delta: int | None = None
    deltas: list[int] | None = None
    weight: int | None = None
    params: Params | None = None
    b: int | None = None
    assumptions: AssumptionReport | None = None
    witnesses: dict | None = field(default=None, repr=False)

    def to_json(self) -> dict:
        prm = self.params
        asm = self.assumptions
        return {
            "p": prm.p if prm else None,
            "r": prm.r if prm else None,
            "f": prm.f if prm else None,
            "b": self.b,
            "g": prm.g if prm else None,
            "N": self.N,
            "engine": self.engine,
            "L": self.L,
            "delta": self.delta,
            "deltas": self.deltas,
            "weight": self.weight,
            "assumptions": None
            if asm is None
            else {"wieferich": not asm.non_wieferich, "gcd_ok": asm.gcd_ok},
        }


def _bits(seq) -> np.ndarray:
    if isinstance(seq, BitSequence):
        return seq.bits
    return np.asarray(seq, dtype=np.uint8)


def berlekamp_massey(seq) -> tuple[int, BinaryPoly]:
    """Linear complexity and connection polynomial ``1 + c_1 x + ... + c_L x^L``.

    Runs over two concatenated periods, which pins down the periodic LFSR.
    """
    bits = _bits(seq)
    n_period = bits.size
    if n_period == 0:
        return 0, BinaryPoly(1)
    doubled = np.concatenate([bits, bits])
    M = doubled.size
    # rev has bit k equal to s_(M-1-k), so rev >> (M-1-n) exposes s_n, s_(n-1), ...
    rev = int((doubled.astype(np.uint8) + ord("0")).tobytes().decode(), 2)
    C, B = 1, 1
    L, shift = 0, 1
    for n in range(M):
        window = rev >> (M - 1 - n)
        if (C & window).bit_count() & 1:
            T = C
            C ^= B << shift
            if 2 * L <= n:
                L = n + 1 - L
                B = T
                shift = 1
            else:
                shift += 1
        else:
            shift += 1
    return min(L, n_period), BinaryPoly(C)


def gcd_lc(seq) -> int:
    """``N - deg gcd(S(x), x^N - 1)``; needs odd N so that x^N - 1 is squarefree."""
    bits = _bits(seq)
    N = bits.size
    if N % 2 == 0:
        raise ParameterError(f"period must be odd, got N={N}")
    S = BitSequence(bits).to_int()
    return N - degree(poly_gcd(x_pow_minus_one(N), S))


def fold(bits: np.ndarray, modulus: int) -> np.ndarray:
    """Coefficients of ``S(x) mod (x^modulus - 1)`` for ``modulus`` dividing N."""
    return (bits.reshape(-1, modulus).sum(axis=0) & 1).astype(np.uint8)


def lemma3_level_degrees(seq, p: int, r: int) -> list[int]:
    """``deg gcd(S(x), Phi_n(x))`` for each level n = 0..r-1."""
    bits = _bits(seq)
    if bits.size != p**r:
        raise ParameterError(f"sequence length {bits.size} is not {p}^{r}")
    out = []
    for n in range(r):
        folded = BitSequence(fold(bits, p ** (n + 1))).to_int()
        out.append(max(degree(poly_gcd(phi_level(p, n), folded)), 0))
    return out


def decompose_lc(L: int, p: int, r: int) -> tuple[int, list[int]] | None:
    """Split ``L = delta + (p-1) * sum(delta_n p^n)`` into binary digits, if possible."""
    delta = L % (p - 1)
    if delta > 1:
        return None
    q = (L - delta) // (p - 1)
    deltas = []
    for _ in range(r):
        q, d = divmod(q, p)
        if d > 1:
            return None
        deltas.append(d)
    if q:
        return None
    return delta, deltas


def assemble_lc(p: int, delta: int, deltas: Sequence[int]) -> int:
    return delta + (p - 1) * sum(d * p**n for n, d in enumerate(deltas))


def _require_assumptions(params: Params) -> AssumptionReport:
    report = params.assumptions()
    report.require(params.p, params.f)
    return report


def fiber_delta(spec: SupportSpec, n: int, residues: np.ndarray | None = None):
    """``(delta_n, U)`` from the support reduced mod p^(n+1).

    ``delta_n = 0`` iff every fiber ``{v + k p^n}`` (v < p^n) lies wholly inside or
    wholly outside the odd-multiplicity residues; ``U`` lists the covered ``v``.
    """
    prm = spec.params
    _require_assumptions(prm)
    if not 0 <= n < prm.r:
        raise ParameterError(f"level n={n} out of range [0, {prm.r})")
    if residues is None:
        residues = support_residues(spec)
    p = prm.p
    grid = reduce_mod2_array(residues, p ** (n + 1)).reshape(p, p**n).astype(bool)
    full = grid.all(axis=0)
    empty = ~grid.any(axis=0)
    if np.all(full | empty):
        return 0, [int(v) for v in np.flatnonzero(full)]
    return 1, None


@dataclass
class IndexTestOutcome:
    delta: int
    condition: str | None  # "i", "ii" or None when delta = 1
    W: dict[int, list[int]]  # j -> orbit representatives of X_(r-j) mod f p^(n-j)
    failed: str | None = None


def lemma6_delta(spec: SupportSpec, n: int) -> IndexTestOutcome:
    """Decide ``delta_n`` from the index sets alone, never touching sequence bits.

    Level ``j < n``: ``X_(r-j)``, reduced mod ``f p^(n-j)`` with odd multiplicity,
    must be a union of progressions ``{w + k f p^(n-j-1)}``. Level ``j = n``:
    ``X_(r-n)`` reduced mod ``f`` must be everything with odd zero-count parity
    (condition i) or nothing with even parity (condition ii).
    """
    prm = spec.params
    _require_assumptions(prm)
    p, r, f, e = prm.p, prm.r, prm.f, prm.e
    if not 0 <= n < r:
        raise ParameterError(f"level n={n} out of range [0, {r})")

    top = reduce_multiset_mod2(spec.X[r - n - 1], f)
    zero_parity = (1 + e * sum(len(spec.X[t - 1]) for t in range(1, r - n))) % 2
    if len(top) == f and zero_parity == 1:
        condition = "i"
    elif not top and zero_parity == 0:
        condition = "ii"
    else:
        return IndexTestOutcome(1, None, {}, failed=f"level j={n}")

    W = {}
    for j in range(n):
        period = f * p ** (n - j)
        step = period // p
        reduced = reduce_multiset_mod2(spec.X[r - j - 1], period)
        if not is_orbit_union(reduced, period, step):
            return IndexTestOutcome(1, None, W, failed=f"level j={j}")
        W[j] = sorted(x for x in reduced if x < step)
    return IndexTestOutcome(0, condition, W)


def _context(spec: SupportSpec) -> dict:
    return {"params": spec.params, "b": spec.b, "N": spec.params.N, "weight": spec.weight()}


def fiber_lc(spec: SupportSpec) -> LCReport:
    asm = _require_assumptions(spec.params)
    residues = support_residues(spec)
    deltas, U = [], {}
    for n in range(spec.params.r):
        d, witness = fiber_delta(spec, n, residues)
        deltas.append(d)
        if witness is not None:
            U[n] = witness
    delta = spec.weight() % 2
    L = assemble_lc(spec.params.p, delta, deltas)
    return LCReport("fiber", L, delta=delta, deltas=deltas, assumptions=asm,
                    witnesses={"U": U}, **_context(spec))


def theorem_lc(spec: SupportSpec, cross_check: bool = False) -> LCReport:
    """Level-by-level assembly from :func:`lemma6_delta`.

    With ``cross_check`` each ``delta_n`` is also computed by :func:`fiber_delta`
    and any difference raises :class:`EngineDisagreement`.
    """
    asm = _require_assumptions(spec.params)
    residues = support_residues(spec) if cross_check else None
    deltas, W, conditions = [], {}, {}
    for n in range(spec.params.r):
        out = lemma6_delta(spec, n)
        deltas.append(out.delta)
        if out.delta == 0:
            W[n] = out.W
            conditions[n] = out.condition
        if cross_check:
            d, _ = fiber_delta(spec, n, residues)
            if d != out.delta:
                raise EngineDisagreement(
                    f"level {n}: lemma6 gives delta={out.delta}, fiber gives {d}"
                )
    delta = spec.weight() % 2
    L = assemble_lc(spec.params.p, delta, deltas)
    return LCReport("lemma6", L, delta=delta, deltas=deltas, assumptions=asm,
                    witnesses={"W": W, "conditions": conditions}, **_context(spec))


def conjecture_lc(params: Params) -> int:
    """Conjectured linear complexity of the half-window sequence."""
    if params.f % 2:
        raise ParameterError(f"the conjecture needs even f, got f={params.f}")
    if params.wieferich:
        raise ParameterError(f"the conjecture excludes Wieferich primes (p={params.p})")
    N = params.N
    half = (N + 1) // 2
    d = 1 if half % 2 == 0 else 0
    if class_of(params, 2, 1).n == 0:
        return N - (params.p - 1) // 2 - d
    return N - d


def _oracle_report(engine: str, L: int, seq: BitSequence, spec: SupportSpec | None) -> LCReport:
    prm = spec.params if spec is not None else seq.params
    report = LCReport(engine, L, N=len(seq), weight=seq.weight(), params=prm,
                      b=spec.b if spec is not None else None)
    if prm is not None:
        report.assumptions = prm.assumptions()
        split = decompose_lc(L, prm.p, prm.r)
        if split is not None:
            report.delta, report.deltas = split
    return report


def run_engine(engine: str, spec: SupportSpec | None = None, seq: BitSequence | None = None) -> LCReport:
    """Dispatch by name; oracle engines accept either a spec or raw bits."""
    if engine not in ENGINES:
        raise ParameterError(f"unknown engine {engine!r}; choose from {', '.join(ENGINES)}")
    if engine in ("fiber", "lemma6"):
        if spec is None:
            raise ParameterError(f"engine {engine} needs a support spec, not raw bits")
        return fiber_lc(spec) if engine == "fiber" else theorem_lc(spec)
    if seq is None:
        if spec is None:
            raise ParameterError("nothing to analyse")
        seq = generate_sequence(spec)
    L = berlekamp_massey(seq)[0] if engine == "bm" else gcd_lc(seq)
    return _oracle_report(engine, L, seq, spec)


def infer_prime_power(N: int) -> tuple[int, int] | None:
    """``(p, r)`` if ``N = p^r`` for an odd prime p."""
    if N < 3 or N % 2 == 0:
        return None
    fac = factorize(N)
    if len(fac) != 1:
        return None
    return fac[0]
