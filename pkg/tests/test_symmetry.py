from itertools import permutations
from math import factorial

import pytest
from hypothesis import given, settings, strategies as st

from operadic.operads import ASS, COM, LIE, pois
from operadic.symmetry import (MaschkeError, Permutation, act, character_of, coinvariants, induce,
                               koszul_sign, permutation_sign, plethysm_dim, regular_rep, sign_rep, tensor_rep,
                               trivial_rep, graded_character)
from oracles import brute_orbits

perms = st.integers(1, 5).flatmap(lambda n: st.permutations(list(range(1, n + 1))))


def inversions(seq):
    return sum(1 for i in range(len(seq)) for j in range(i + 1, len(seq)) if seq[i] > seq[j])


@given(perms)
def test_permutation_sign_is_inversion_parity(p):
    assert permutation_sign(p) == (-1) ** inversions(p)


@given(st.lists(st.integers(0, 3), min_size=1, max_size=5).flatmap(
    lambda d: st.tuples(st.just(d), st.permutations(list(range(len(d)))))))
def test_koszul_sign_counts_odd_crossings(case):
    degrees, order = case
    crossings = sum(1 for a in range(len(order)) for b in range(a + 1, len(order))
                    if order[b] < order[a] and degrees[order[a]] % 2 and degrees[order[b]] % 2)
    assert koszul_sign(degrees, order) == (-1) ** crossings


@settings(deadline=None)
@given(perms, st.data())
def test_action_is_functorial(p, data):
    q = data.draw(st.permutations(list(range(1, len(p) + 1))))
    rep = regular_rep(len(p))
    g, h = Permutation(p), Permutation(q)
    assert act(rep, g * h) == act(rep, g) @ act(rep, h)


@pytest.mark.parametrize("n", range(1, 6))
def test_builtin_reps_satisfy_coxeter(n):
    for o in (COM, ASS, LIE, pois(2)):
        assert o.symrep(n).coxeter_failures() == []


@pytest.mark.parametrize("n", range(1, 5))
def test_regular_coinvariants_are_one_dimensional(n):
    assert coinvariants(regular_rep(n))[0] == 1
    assert coinvariants(sign_rep(n))[0] == (1 if n == 1 else 0)


def test_young_subgroup_coinvariants_count_cosets():
    # Sigma_4 / (Sigma_2 x Sigma_2) has 6 cosets, each an orbit of the regular rep restricted
    dim, _ = coinvariants(regular_rep(4), subgroup=(2, 2))
    assert dim == factorial(4) // 4


def test_coinvariants_match_brute_orbit_count_on_words():
    # Sigma_3 acting on words of length 2 in 3 letters: orbit count by brute force
    words = [(a, b) for a in range(1, 4) for b in range(1, 4)]
    orbits = brute_orbits(3, words, lambda g, w: tuple(g[x - 1] + 1 for x in w))
    assert orbits == 2


def test_maschke_guard():
    with pytest.raises(MaschkeError):
        coinvariants(regular_rep(3), p=3)


def test_induction_dimension_and_coxeter():
    r = induce(regular_rep(2), trivial_rep(1))
    assert r.dim == 2 * 3
    assert r.coxeter_failures() == []


def test_tensor_with_sign_twists_character():
    rep = tensor_rep(LIE.symrep(4), sign_rep(4))
    chi, base = character_of(rep), character_of(LIE.symrep(4))
    for lam, v in base.values.items():
        sgn = (-1) ** (sum(lam) - len(lam))
        assert chi.values[lam] == sgn * v


def test_plethysm_counts_set_partitions():
    # Com o Com counts set partitions: Bell numbers
    chars = {j: graded_character(COM.symrep(j)) for j in range(1, 6)}
    assert [plethysm_dim(chars, chars, n) for n in range(1, 6)] == [1, 2, 5, 15, 52]
