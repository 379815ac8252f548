from math import factorial

import pytest

from operadic import operads as ops
from operadic.bar import ModuleMismatch, bar_complex, level_action, relative_composition_homology
from operadic.operads import (ASS, COM, LIE, ONE, SPECTRAL_LIE, beta_power, iota, lie_to_ass, module_along, pois,
                              regular_module, trivial_module)


def triv(o, side):
    return trivial_module(o, side)


def koszul(o, k):
    return bar_complex(triv(o, "right"), o, triv(o, "left"), k)


@pytest.mark.parametrize("k", range(1, 6))
def test_bar_of_com_is_shifted_lie(k):
    assert koszul(COM, k).homology() == {k - 1: factorial(k - 1)}


@pytest.mark.parametrize("k", range(2, 5))
def test_bar_of_lie_is_shifted_com(k):
    # one class in degree k-1; the Koszul dual of Lie is Com
    assert koszul(LIE, k).homology() == {k - 1: 1}


def test_bar_of_ass_is_self_dual():
    assert [koszul(ASS, k).homology() for k in range(1, 5)] == [{0: 1}, {1: 2}, {2: 6}, {3: 24}]


@pytest.mark.parametrize("k", range(1, 5))
def test_regular_module_contracts(k):
    o = pois(2)
    h = bar_complex(triv(o, "right"), o, regular_module(o, "left"), k).homology()
    assert h == ({0: 1} if k == 1 else {})


@pytest.mark.parametrize("k", range(2, 5))
def test_differential_squares_to_zero_and_euler(k):
    for m, o, n in [(triv(COM, "right"), COM, triv(COM, "left")),
                    (module_along(lie_to_ass(), "right"), LIE, triv(LIE, "left")),
                    (module_along(beta_power(1, 1), "right"), pois(2), triv(pois(2), "left"))]:
        bc = bar_complex(m, o, n, k)
        assert bc.differential_squares_to_zero()
        h = bc.homology()
        assert bc.euler_characteristic() == sum((-1) ** d * c for d, c in h.items())


def test_differential_is_equivariant():
    bc = bar_complex(module_along(lie_to_ass(), "right"), LIE, triv(LIE, "left"), 4)
    for s in bc.levels:
        if s == 0:
            continue
        src, tgt, d = level_action(bc, s), level_action(bc, s - 1), bc.differential(s)
        assert src.coxeter_failures() == []
        for g, h in zip(src.generators, tgt.generators):
            assert d @ g == h @ d


def test_modular_homology_agrees_for_large_prime():
    bc = koszul(pois(2), 4)
    assert bc.homology(p=32003) == bc.homology()


def test_module_mismatch():
    with pytest.raises(ModuleMismatch):
        bar_complex(triv(COM, "right"), LIE, triv(LIE, "left"), 2)
    with pytest.raises(ModuleMismatch):
        bar_complex(triv(COM, "left"), COM, triv(COM, "left"), 2)


def test_relative_composition_table():
    table = relative_composition_homology(triv(ASS, "right"), ASS, module_along(iota(1, None), "left"), 4)
    assert table == {k: {k - 1: 1} for k in range(1, 5)}


def test_lie_to_en_arity_three_n_two():
    L = SPECTRAL_LIE
    bc = bar_complex(triv(L, "right"), L, module_along(ops.suspension_morphism_shadow(L, 2), "left"), 3)
    assert bc.homology() == {0: 1, 1: 3, 2: 2}
