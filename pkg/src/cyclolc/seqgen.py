"""Support sets and the p^r-periodic binary sequences built from them."""

from __future__ import annotations

import json
from collections import Counter
from dataclasses import dataclass, field
from pathlib import Path
from typing import Iterable

import numpy as np

from .cyclotomy import class_exponents, power_table
from .numtheory import ParameterError, Params


@dataclass(frozen=True)
class SupportSpec:
    """Index sets ``X[t-1]`` (subsets of ``[0, f*p^(t-1))``) for levels t = 1..r.

    Level ``t`` contributes ``p^(r-t) * D_i^(p^t)`` for every ``i`` in ``X[t-1]``.
    """

    params: Params
    X: tuple[tuple[int, ...], ...]
    b: int | None = None

    def __post_init__(self):
        prm = self.params
        if len(self.X) != prm.r:
            raise ParameterError(f"expected {prm.r} index sets, got {len(self.X)}")
        cleaned = []
        for t, xs in enumerate(self.X, start=1):
            xs = tuple(sorted(set(int(x) for x in xs)))
            bound = prm.num_classes(t)
            if xs and not (0 <= xs[0] and xs[-1] < bound):
                raise ParameterError(f"X_{t} must lie in [0, {bound})")
            cleaned.append(xs)
        object.__setattr__(self, "X", tuple(cleaned))

    @classmethod
    def from_sets(cls, params: Params, X: Iterable[Iterable[int]], b: int | None = None):
        return cls(params, tuple(tuple(xs) for xs in X), b)

    def pairs(self, t: int) -> list[tuple[int, int]]:
        """The ``(l, m)`` view of ``X_t``: ``n = l + m*p^(t-1)``."""
        q = self.params.p ** (t - 1)
        return [(n % q, n // q) for n in self.X[t - 1]]

    def weight(self) -> int:
        return 1 + self.params.e * sum(len(xs) for xs in self.X)

    def to_json(self) -> dict:
        prm = self.params
        out = {"p": prm.p, "r": prm.r, "f": prm.f, "g": prm.g}
        if self.b is not None:
            out["b"] = self.b
        out["X"] = [list(xs) for xs in self.X]
        return out

    @classmethod
    def from_json(cls, data: dict) -> "SupportSpec":
        try:
            params = Params.build(int(data["p"]), int(data["r"]), int(data["f"]), data.get("g"))
            X = data["X"]
        except KeyError as exc:
            raise ParameterError(f"support file is missing key {exc}") from None
        if not isinstance(X, list) or not all(isinstance(xs, list) for xs in X):
            raise ParameterError("X must be a list of integer arrays")
        return cls.from_sets(params, X, data.get("b"))


def load_support(path: str | Path) -> SupportSpec:
    try:
        data = json.loads(Path(path).read_text())
    except json.JSONDecodeError as exc:
        raise ParameterError(f"{path}: malformed JSON ({exc})") from None
    return SupportSpec.from_json(data)


def xiao_support(params: Params, b: int = 0) -> SupportSpec:
    """Half-window support: ``X_t = {(b + i) mod f*p^(t-1) : 0 <= i < f*p^(t-1)/2}``."""
    if params.f % 2:
        raise ParameterError(f"the half-window preset needs even f, got f={params.f}")
    if not 0 <= b < params.num_classes(params.r):
        raise ParameterError(f"shift b={b} out of range [0, {params.num_classes(params.r)})")
    X = []
    for t in range(1, params.r + 1):
        nc = params.num_classes(t)
        X.append(tuple((b + i) % nc for i in range(nc // 2)))
    return SupportSpec(params, tuple(X), b)


def level_residues(spec: SupportSpec, t: int) -> np.ndarray:
    """Residues mod p^r contributed by level ``t``: ``p^(r-t) * D_i^(p^t)``, i in X_t."""
    prm = spec.params
    xs = np.asarray(spec.X[t - 1], dtype=np.int64)
    if xs.size == 0:
        return np.empty(0, dtype=np.int64)
    pw = power_table(prm.p, t, prm.g)
    exps = xs[:, None] + class_exponents(prm, t, 0)[None, :]
    return (pw[exps] * prm.p ** (prm.r - t)).ravel()


def support_residues(spec: SupportSpec) -> np.ndarray:
    """Sorted residues of the support set C_1 (0 is always included)."""
    parts = [np.zeros(1, dtype=np.int64)]
    parts += [level_residues(spec, t) for t in range(1, spec.params.r + 1)]
    return np.sort(np.concatenate(parts))


@dataclass(eq=False)
class BitSequence:
    """One period of the sequence, ``bits[i] = 1`` iff ``i`` is in the support."""

    bits: np.ndarray
    params: Params | None = field(default=None, compare=False)

    def __len__(self) -> int:
        return int(self.bits.size)

    def __str__(self) -> str:
        return (self.bits.astype(np.uint8) + ord("0")).tobytes().decode()

    @classmethod
    def from_string(cls, text: str, params: Params | None = None) -> "BitSequence":
        text = text.strip()
        if not text or set(text) - {"0", "1"}:
            raise ParameterError("sequence text must be a nonempty string of 0/1")
        return cls(np.frombuffer(text.encode(), dtype=np.uint8) - ord("0"), params)

    def to_int(self) -> int:
        """Pack as an integer with bit ``i`` equal to ``s_i``."""
        return int(str(self)[::-1], 2)

    def weight(self) -> int:
        return int(np.count_nonzero(self.bits))


def generate_sequence(spec: SupportSpec) -> BitSequence:
    bits = np.zeros(spec.params.N, dtype=np.uint8)
    bits[support_residues(spec)] = 1
    return BitSequence(bits, spec.params)


def weight(seq: BitSequence) -> int:
    return seq.weight()


def parity_delta(seq: BitSequence) -> int:
    return seq.weight() % 2


def reduce_multiset_mod2(values: Iterable[int], modulus: int) -> set[int]:
    """Residues mod ``modulus`` that occur an odd number of times."""
    if modulus < 1:
        raise ParameterError(f"modulus must be >= 1, got {modulus}")
    counts = Counter(int(v) % modulus for v in values)
    return {x for x, c in counts.items() if c % 2}


def reduce_mod2_array(values: np.ndarray, modulus: int) -> np.ndarray:
    """Vectorized form of :func:`reduce_multiset_mod2` as a 0/1 indicator array."""
    return (np.bincount(np.asarray(values) % modulus, minlength=modulus) & 1).astype(np.uint8)


def write_sequence(seq: BitSequence, path: str | Path) -> None:
    Path(path).write_text(str(seq) + "\n")


def read_sequence(path: str | Path) -> BitSequence:
    return BitSequence.from_string(Path(path).read_text())
