import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from cyclolc.cyclotomy import class_elements, class_of
from cyclolc.lincomp import (
    assemble_lc,
    berlekamp_massey,
    conjecture_lc,
    decompose_lc,
    fiber_delta,
    fiber_lc,
    gcd_lc,
    lemma3_level_degrees,
    lemma6_delta,
    run_engine,
    theorem_lc,
)
from cyclolc.numtheory import AssumptionError, ParameterError, Params, divisors
from cyclolc.seqgen import (
    BitSequence,
    SupportSpec,
    generate_sequence,
    reduce_multiset_mod2,
    support_residues,
    xiao_support,
)

from oracles import lfsr_length_by_linear_algebra

P11 = SupportSpec.from_sets(Params.build(11, 2, 5), [range(5), range(25)])
P5 = SupportSpec.from_sets(Params.build(5, 3, 2), [[0, 1], [0, 2, 4, 6, 8], [0, 10, 20, 30, 40]])

# (p, r, f) frames passing both assumptions, small enough for the oracles
GOOD_FRAMES = [
    (p, r, f)
    for p, rmax in [(3, 4), (5, 3), (11, 2), (13, 2)]
    for r in range(1, rmax + 1)
    for f in divisors(p - 1)
    if Params.build(p, 1, f).assumptions().ok
]


def test_bm_examples():
    assert berlekamp_massey([0] * 9)[0] == 0
    assert berlekamp_massey([1] + [0] * 8)[0] == 9
    assert berlekamp_massey(generate_sequence(P11))[0] == 111


def test_bm_connection_polynomial_generates_sequence():
    bits = generate_sequence(P5).bits
    L, C = berlekamp_massey(bits)
    c = C.coefficients + [0] * (L + 1 - len(C.coefficients))
    doubled = np.concatenate([bits, bits])
    for n in range(L, doubled.size):
        assert doubled[n] == sum(c[i] * doubled[n - i] for i in range(1, L + 1)) % 2


def test_gcd_examples():
    assert gcd_lc([1, 1, 0]) == 2
    assert gcd_lc([1] * 15) == 1
    assert gcd_lc(generate_sequence(P5)) == 25
    with pytest.raises(ParameterError):
        gcd_lc([1, 0])


@settings(max_examples=150, deadline=None)
@given(st.lists(st.integers(0, 1), min_size=1, max_size=40))
def test_bm_matches_linear_algebra_oracle(bits):
    assert berlekamp_massey(bits)[0] == lfsr_length_by_linear_algebra(bits)


@settings(max_examples=150, deadline=None)
@given(st.integers(0, 60).map(lambda k: 2 * k + 1).flatmap(
    lambda n: st.lists(st.integers(0, 1), min_size=n, max_size=n)))
def test_bm_equals_gcd_on_odd_periods(bits):
    assert berlekamp_massey(bits)[0] == gcd_lc(bits)


def test_fiber_delta_examples():
    assert [fiber_delta(P11, n)[0] for n in range(2)] == [0, 1]
    assert [fiber_delta(P5, n)[0] for n in range(3)] == [1, 1, 0]
    empty = SupportSpec.from_sets(Params.build(11, 2, 5), [[], []])
    assert [fiber_delta(empty, n)[0] for n in range(2)] == [1, 1]


def test_fiber_witness_reconstructs_reduced_support():
    p = 11
    d, U = fiber_delta(P11, 0)
    assert d == 0
    parity = reduce_multiset_mod2(support_residues(P11).tolist(), p)
    assert parity == {v + k for v in U for k in range(p)}


def test_index_engine_examples():
    out = lemma6_delta(P11, 0)
    assert (out.delta, out.condition) == (0, "i")
    assert lemma6_delta(P11, 1).delta == 1
    out = lemma6_delta(P5, 2)
    assert out.delta == 0 and out.condition in ("i", "ii")
    # W reproduces the reduced index sets as unions of progressions
    for j, W in out.W.items():
        period = 2 * 5 ** (2 - j)
        step = period // 5
        assert reduce_multiset_mod2(P5.X[3 - j - 1], period) == {
            w + k * step for w in W for k in range(5)
        }
    xiao = xiao_support(Params.build(11, 2, 2))
    assert [lemma6_delta(xiao, n).delta for n in range(2)] == [1, 1]


def test_theorem_lc_examples():
    rep = theorem_lc(P11, cross_check=True)
    assert (rep.L, rep.delta, rep.deltas) == (111, 1, [0, 1])
    rep = theorem_lc(P5, cross_check=True)
    assert (rep.L, rep.delta, rep.deltas) == (25, 1, [1, 1, 0])
    empty = SupportSpec.from_sets(Params.build(5, 3, 2), [[], [], []])
    rep = theorem_lc(empty)
    assert (rep.L, rep.delta, rep.deltas) == (125, 1, [1, 1, 1])


def test_report_json_layout():
    data = theorem_lc(P11).to_json()
    assert list(data) == ["p", "r", "f", "b", "g", "N", "engine", "L", "delta", "deltas",
                          "weight", "assumptions"]
    assert data["assumptions"] == {"wieferich": False, "gcd_ok": True}


def test_fast_engines_refuse_without_assumptions():
    spec = xiao_support(Params.build(7, 2, 2))
    for fn in (fiber_lc, theorem_lc):
        with pytest.raises(AssumptionError) as info:
            fn(spec)
        assert info.value.predicate == "gcd_ok"
    with pytest.raises(AssumptionError):
        lemma6_delta(spec, 0)
    assert berlekamp_massey(generate_sequence(spec))[0] == gcd_lc(generate_sequence(spec))


def test_run_engine_dispatch():
    assert run_engine("gcd", spec=P11).L == 111
    rep = run_engine("bm", seq=generate_sequence(P5))
    assert (rep.L, rep.delta, rep.deltas) == (25, 1, [1, 1, 0])
    with pytest.raises(ParameterError):
        run_engine("lemma6", seq=generate_sequence(P5))
    with pytest.raises(ParameterError):
        run_engine("magic", spec=P11)


def test_closed_form_examples():
    prm = Params.build(11, 2, 2)
    assert class_of(prm, 2, 1).n == 1
    assert conjecture_lc(prm) == 121
    assert conjecture_lc(Params.build(5, 3, 2)) == 125
    assert berlekamp_massey(generate_sequence(xiao_support(Params.build(5, 3, 2))))[0] == 125
    with pytest.raises(ParameterError):
        conjecture_lc(Params.build(11, 2, 5))


def test_closed_form_parity_branch():
    # (p^r + 1)/2 even and 2 outside D_0: p = 3, r = 1 gives (3 + 1)/2 = 2
    prm = Params.build(3, 1, 2)
    assert class_of(prm, 2, 1).n != 0
    assert conjecture_lc(prm) == prm.N - 1


def test_level_degrees_examples():
    assert lemma3_level_degrees(generate_sequence(P11), 11, 2) == [10, 0]
    assert lemma3_level_degrees([1] + [0] * 24, 5, 2) == [0, 0]
    assert lemma3_level_degrees([1] * 125, 5, 3) == [4, 20, 100]


def test_decompose_roundtrip():
    assert decompose_lc(111, 11, 2) == (1, [0, 1])
    assert decompose_lc(25, 5, 3) == (1, [1, 1, 0])
    assert decompose_lc(7, 5, 2) is None
    for p, r in [(3, 4), (5, 3), (11, 2)]:
        seen = set()
        for mask in range(2 ** (r + 1)):
            bits = [(mask >> i) & 1 for i in range(r + 1)]
            L = assemble_lc(p, bits[0], bits[1:])
            assert decompose_lc(L, p, r) == (bits[0], bits[1:])
            seen.add(L)
        assert len(seen) == 2 ** (r + 1)


def random_spec(prm, rng):
    return SupportSpec.from_sets(
        prm, [np.flatnonzero(rng.random(prm.num_classes(t)) < 0.5).tolist()
              for t in range(1, prm.r + 1)]
    )


@settings(max_examples=60, deadline=None)
@given(st.sampled_from(GOOD_FRAMES), st.integers(0, 2**32 - 1))
def test_four_engines_agree(frame, seed):
    spec = random_spec(Params.build(*frame), np.random.default_rng(seed))
    seq = generate_sequence(spec)
    bm = berlekamp_massey(seq)[0]
    assert bm == gcd_lc(seq) == fiber_lc(spec).L == theorem_lc(spec, cross_check=True).L


@settings(max_examples=60, deadline=None)
@given(st.sampled_from(GOOD_FRAMES), st.integers(0, 2**32 - 1))
def test_top_level_nonvanishing_bound(frame, seed):
    prm = Params.build(*frame)
    rep = theorem_lc(random_spec(prm, np.random.default_rng(seed)))
    if rep.deltas[-1] == 1:
        assert rep.L >= (prm.p - 1) * prm.p ** (prm.r - 1) > prm.N / 2


@pytest.mark.parametrize("p, f, n", [(5, 2, 2), (11, 5, 2), (13, 3, 2), (7, 3, 2)])
def test_class_multiplier_polynomials_coincide(p, f, n):
    prm = Params.build(p, n, f)
    m = p**n
    nc = prm.num_classes(n)
    for l2 in range(0, nc, max(1, nc // 6)):
        members = sorted(class_elements(prm, n, l2))
        for l in range(nc):
            polys = set()
            for a in members:
                poly = 0
                for u in class_elements(prm, n, l):
                    poly ^= 1 << (a * u % m)
                polys.add(poly)
            assert len(polys) == 1


def test_bits_wrapper_accepts_bitsequence():
    seq = BitSequence.from_string("110")
    assert berlekamp_massey(seq)[0] == gcd_lc(seq) == 2
