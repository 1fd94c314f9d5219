"""Grid sweeps comparing every applicable engine, written as CSV rows."""

from __future__ import annotations

import csv
import io
from concurrent.futures import ProcessPoolExecutor
from dataclasses import astuple, dataclass, fields

import numpy as np

from .lincomp import berlekamp_massey, conjecture_lc, fiber_lc, gcd_lc, theorem_lc
from .numtheory import Params, divisors
from .seqgen import SupportSpec, generate_sequence, xiao_support

COLUMNS = ("p", "r", "f", "b", "g", "L_bm", "L_gcd", "L_fiber", "L_lemma6", "L_conjecture", "all_agree")
SUPPORT_KINDS = ("xiao", "random", "structured")


@dataclass
class SweepRow:
    p: int
    r: int
    f: int
    b: int | None
    g: int
    L_bm: int | None = None
    L_gcd: int | None = None
    L_fiber: int | None = None
    L_lemma6: int | None = None
    L_conjecture: int | None = None
    all_agree: bool = True

    def values(self) -> list[int]:
        return [v for v in (self.L_bm, self.L_gcd, self.L_fiber, self.L_lemma6, self.L_conjecture)
                if v is not None]


assert tuple(f.name for f in fields(SweepRow)) == COLUMNS


def random_support(params: Params, rng: np.random.Generator) -> SupportSpec:
    """Each index of each level kept independently with probability 1/2."""
    X = []
    for t in range(1, params.r + 1):
        nc = params.num_classes(t)
        X.append(np.flatnonzero(rng.random(nc) < 0.5).tolist())
    return SupportSpec.from_sets(params, X)


def structured_support(params: Params, rng: np.random.Generator) -> SupportSpec:
    """A random support built to vanish (often) at one randomly chosen level.

    For target level ``n``, every ``X_(r-j)`` with ``j < n`` is a union of
    progressions ``{w + k f p^(n-j-1)}`` modulo ``f p^(n-j)`` padded with pairs
    that cancel mod 2, and ``X_(r-n)`` covers each residue mod ``f`` with the
    same count parity. Levels ``t < r - n`` are arbitrary, so the zero-count
    parity matches about half the time.
    """
    p, r, f = params.p, params.r, params.f
    n = int(rng.integers(r))
    X: list[list[int]] = [[] for _ in range(r)]

    def lift(residues, period: int, t: int) -> list[int]:
        # residues mod `period` -> indices at level t with the same odd-count residues
        nc = params.num_classes(t)
        copies = nc // period
        out = set()
        for x in residues:
            out.add(x + period * int(rng.integers(copies)))
        for x in range(period):
            if copies >= 3 and rng.random() < 0.3:
                a, b = rng.choice(copies, size=2, replace=False)
                ia, ib = x + period * int(a), x + period * int(b)
                if ia not in out and ib not in out:
                    out.update((ia, ib))
        return sorted(out)

    for j in range(n):
        period = f * p ** (n - j)
        step = period // p
        W = np.flatnonzero(rng.random(step) < 0.5)
        residues = [int(w) + k * step for w in W for k in range(p)]
        X[r - j - 1] = lift(residues, period, r - j)
    top = list(range(f)) if rng.random() < 0.5 else []
    X[r - n - 1] = lift(top, f, r - n)
    for t in range(1, r - n):
        X[t - 1] = np.flatnonzero(rng.random(params.num_classes(t)) < 0.5).tolist()
    return SupportSpec.from_sets(params, X)


def f_values(p: int, policy: str) -> list[int]:
    """``all``, ``even``, or a comma-separated list of divisors of p - 1."""
    divs = divisors(p - 1)
    if policy == "all":
        return divs
    if policy == "even":
        return [f for f in divs if f % 2 == 0]
    wanted = [int(x) for x in policy.split(",") if x.strip()]
    return [f for f in wanted if f in divs]


def build_grid(primes, r_max: int, f_policy: str, support: str, count: int, seed: int):
    """Support specs in grid order; all randomness is drawn here, up front."""
    rng = np.random.default_rng(seed)
    grid = []
    for p in primes:
        for r in range(1, r_max + 1):
            for f in f_values(p, f_policy):
                params = Params.build(p, r, f)
                if support == "xiao":
                    if f % 2:
                        continue
                    shifts = [0]
                    if count > 1:
                        shifts.append(int(rng.integers(params.num_classes(r))))
                    grid.extend(xiao_support(params, b) for b in shifts)
                elif support == "random":
                    grid.extend(random_support(params, rng) for _ in range(count))
                elif support == "structured":
                    grid.extend(structured_support(params, rng) for _ in range(count))
                else:
                    raise ValueError(f"unknown support kind {support!r}")
    return grid


def evaluate(spec: SupportSpec, period_bound: int = 10_000, conjecture: bool = False) -> SweepRow:
    prm = spec.params
    row = SweepRow(prm.p, prm.r, prm.f, spec.b, prm.g)
    if prm.N <= period_bound:
        seq = generate_sequence(spec)
        row.L_bm = berlekamp_massey(seq)[0]
        row.L_gcd = gcd_lc(seq)
    if prm.assumptions().ok:
        row.L_fiber = fiber_lc(spec).L
        row.L_lemma6 = theorem_lc(spec).L
    if conjecture and prm.f % 2 == 0 and not prm.wieferich:
        row.L_conjecture = conjecture_lc(prm)
    row.all_agree = len(set(row.values())) <= 1
    return row


def _evaluate_star(args):
    return evaluate(*args)


def run_sweep(specs, period_bound: int = 10_000, conjecture: bool = False, jobs: int = 1) -> list[SweepRow]:
    """Rows come back in input order regardless of ``jobs``."""
    tasks = [(s, period_bound, conjecture) for s in specs]
    if jobs <= 1:
        return [evaluate(*t) for t in tasks]
    with ProcessPoolExecutor(max_workers=jobs) as pool:
        return list(pool.map(_evaluate_star, tasks, chunksize=8))


def rows_to_csv(rows, header_comment: str | None = None) -> str:
    buf = io.StringIO()
    if header_comment:
        buf.write(f"# {header_comment}\n")
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(COLUMNS)
    for row in rows:
        w.writerow(
            "" if v is None else ("true" if v is True else "false" if v is False else v)
            for v in astuple(row)
        )
    return buf.getvalue()
