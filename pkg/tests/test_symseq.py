import pytest
from hypothesis import given, settings, strategies as st

from operadic.operads import ASS, COM, LIE, ONE, pois
from operadic.symseq import (GradedSpace, TruncationMismatch, compose, day_convolution, free_algebra_weights,
                             from_json, suspend, termwise_dual, to_json, unit_sequence)
from oracles import bell

N = 5


def _witt(k, w):
    def mu(n):
        out, p, m = 1, 2, n
        while p * p <= m:
            if m % p == 0:
                m //= p
                if m % p == 0:
                    return 0
                out = -out
            p += 1
        return -out if m > 1 else out
    return sum(mu(d) * k ** (w // d) for d in range(1, w + 1) if w % d == 0) // w


def test_com_com_counts_set_partitions():
    c = compose(COM.symseq(N), COM.symseq(N))
    assert [c[n].dim for n in range(1, N + 1)] == [bell(n) for n in range(1, N + 1)]


def test_ass_ass_frozen_dims():
    # ordered set partitions with a linear order on each block, times orderings of blocks
    c = compose(ASS.symseq(N), ASS.symseq(N))
    assert [c[n].dim for n in range(1, N + 1)] == [1, 4, 24, 192, 1920]


def test_com_lie_is_ass_and_com_slie_is_pois2():
    assert compose(COM.symseq(N), LIE.symseq(N)).table() == {n: {0: ASS.dim(n)} for n in range(1, N + 1)}
    slie = suspend(LIE.symseq(N), 1)
    assert compose(COM.symseq(N), slie).table() == pois(2).symseq(N).table()


@pytest.mark.parametrize("a,b", [(COM, LIE), (LIE, COM), (ASS, COM), (ONE, ASS)])
def test_orbit_and_idempotent_coinvariants_agree(a, b):
    compose(a.symseq(4), b.symseq(4), method="idempotent")


def test_unit_is_two_sided():
    u = unit_sequence(N)
    for o in (COM, ASS, LIE):
        s = o.symseq(N)
        assert compose(u, s).table() == s.table() == compose(s, u).table()


def test_truncation_mismatch():
    with pytest.raises(TruncationMismatch):
        compose(COM.symseq(3), COM.symseq(4))


def test_day_convolution_dims():
    # (Com (x) Com)(n): ordered pairs of nonempty complementary subsets
    d = day_convolution(COM.symseq(N), COM.symseq(N))
    assert [d[n].dim for n in range(1, N + 1)] == [0] + [2 ** n - 2 for n in range(2, N + 1)]


def test_suspension_and_dual_shift_degrees():
    s = suspend(COM.symseq(4), 2)
    assert s.table() == {n: {2 * (n - 1): 1} for n in range(1, 5)}
    assert termwise_dual(s).table() == {n: {-2 * (n - 1): 1} for n in range(1, 5)}


@settings(max_examples=10, deadline=None)
@given(st.integers(1, 3))
def test_free_lie_matches_witt_formula(k):
    weights = free_algebra_weights(LIE.symseq(4), GradedSpace.from_dims({0: k}))
    assert {w: sum(v.values()) for w, v in weights.items() if sum(v.values())} == {w: _witt(k, w) for w in range(1, 5)
                                                                if _witt(k, w)}


def test_free_com_on_odd_generator_is_exterior():
    weights = free_algebra_weights(COM.symseq(N), GradedSpace.from_dims({1: 1}))
    assert {w: v for w, v in weights.items() if v} == {1: {1: 1}}


def test_json_roundtrip_is_canonical():
    s = pois(2).symseq(4)
    text = to_json(s)
    back = from_json(text)
    assert back.table() == s.table()
    assert to_json(back) == text
