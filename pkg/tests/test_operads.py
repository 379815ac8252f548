from fractions import Fraction
from math import factorial

import pytest

from operadic import operads as ops
from operadic.operads import (ASS, COM, LIE, ONE, SPECTRAL_LIE, Lie, MorphismValidationError, UnknownOperad,
                              beta_power, beta_shadow, builtin, check_operad_axioms, from_generators, identity_morphism,
                              iota, leaves, lie_to_ass, pois, suspend_operad)
from oracles import necklace_lie_dim

TIERS = [(ONE, 5), (COM, 5), (ASS, 4), (LIE, 5), (SPECTRAL_LIE, 4), (pois(2), 4), (pois(3), 4),
         (suspend_operad(pois(2), 1), 4), (suspend_operad(pois(2), -1), 4), (pois(4), 3)]


@pytest.mark.parametrize("o,arity", TIERS, ids=lambda v: getattr(v, "name", str(v)))
def test_builtin_operads_satisfy_axioms(o, arity):
    assert check_operad_axioms(o, arity) == []


@pytest.mark.parametrize("n", range(1, 8))
def test_classical_dims(n):
    assert (COM.dim(n), ASS.dim(n), LIE.dim(n)) == (1, factorial(n), necklace_lie_dim(n))


def test_poisson_dims_are_stirling_numbers():
    # coefficients of prod (1 + i t^{n-1}): unsigned Stirling numbers of the first kind
    assert pois(2).dims(4) == {0: 1, 1: 6, 2: 11, 3: 6}
    assert pois(3).dims(3) == {0: 1, 2: 3, 4: 2}


class CorruptedLie(Lie):
    """Lie with the sign of one partial composition flipped."""

    name = "CorruptedLie"

    def compose(self, a, x, b):
        out = super().compose(a, x, b)
        if len(a) == 2 and len(b) == 2 and x == a[0]:
            out = {k: -v for k, v in out.items()}
        return out


def test_corrupted_composition_is_reported_with_its_triple():
    report = check_operad_axioms(CorruptedLie(), 3)
    assert report
    # each line names the composition a o_x b that breaks an identity
    assert all(" o_" in line or " o " in line for line in report)


def test_unknown_operad():
    with pytest.raises(UnknownOperad):
        builtin("Foo")


@pytest.mark.parametrize("f", [lie_to_ass(), iota(1, 1), iota(1, None), iota(2, 1), beta_shadow(2), beta_power(1, 1),
                               beta_power(2, 0), ops.suspension_morphism_shadow(SPECTRAL_LIE, 2)],
                         ids=lambda f: f.name)
def test_named_morphisms_validate(f):
    assert f.validate(4) == []


@pytest.mark.parametrize("m", [0, 1, 2])
def test_beta_after_iota_vanishes(m):
    comp = iota(1, m).then(beta_power(1, m))
    for n in range(2, 5):
        for k in ASS.basis(leaves(n)):
            assert comp(k) == {}


def test_from_generators_with_own_generators_is_identity():
    for o in (LIE, pois(2), pois(3)):
        f = from_generators(o, o, o.generators(), "id")
        for n in range(1, 4):
            for k in o.basis(leaves(n)):
                assert f(k) == {k: Fraction(1)}


def test_broken_morphism_fails_validation():
    # the bracket cannot go to the commutative product: antisymmetry fails
    product = {COM.basis(leaves(2))[0]: Fraction(1)}
    with pytest.raises(MorphismValidationError):
        bad = from_generators(LIE, COM, {"br": product}, "bad")
        if bad.validate(3):
            raise MorphismValidationError(bad.validate(3)[0])
