import json
import random
from fractions import Fraction
from math import comb

import pytest
from hypothesis import given, settings, strategies as st

from operadic.pbw import (BUILTIN_LIE, ConfluenceError, JacobiError, LiePresentation, ModeMismatch, abelian, c1,
                          constant, envelope_gr_dims, gr, graded, heisenberg, lie_from_json, pbw_certificate, perturb,
                          random_lie, sl2, triv, universal_envelope, weighted_day_tensor)
from operadic.squares import square_check
from operadic.symseq import GradedSpace


def fake_heisenberg():
    h = heisenberg()
    brackets = {k: dict(v) for k, v in h.brackets.items()}
    brackets[(0, 2)] = {0: Fraction(1)}
    return LiePresentation(3, h.labels, brackets, "fake")


def test_gr_of_c1_sits_in_weight_one():
    assert gr(c1(3)).dims_by_weight == {1: 3}
    assert gr(constant(2)).dims_by_weight == {0: 2}
    assert c1(3).colimit_dim() == 3
    assert gr(c1(0)).dims_by_weight == {}


def test_telescoping_on_filtered_tensor():
    x = weighted_day_tensor(c1(2), constant(3))
    assert sum(gr(x).dims_by_weight.values()) == x.dim(x.top) == 6
    assert gr(x).dims_by_weight == {1: 6}


def test_mode_mismatch():
    with pytest.raises(ModeMismatch):
        weighted_day_tensor(c1(2), graded({1: 2}))
    with pytest.raises(ModeMismatch):
        gr(graded({0: 1}))


def test_triv_structure_maps_vanish_by_weight():
    t = triv(graded({1: 3}), "Lie")
    assert t.structure_map_is_zero(2) and t.forced_zero_by_weight(2) and t.forced_zero_by_weight(5)


def test_json_roundtrip_and_validation():
    g = sl2()
    back = lie_from_json(g.to_json(), name="sl2")
    assert back.brackets == g.brackets
    with pytest.raises(JacobiError):
        lie_from_json(fake_heisenberg().to_json())


def test_envelope_filtration_dims():
    assert universal_envelope(sl2(), 2).filtration_dims() == [1, 4, 10]
    d = 4
    assert universal_envelope(abelian(d), 2).filtration_dims()[2] == 1 + d + comb(d + 1, 2)
    u = universal_envelope(heisenberg(), 6)
    assert u.filtration_dims() == [sum(comb(v + 2, 2) for v in range(w + 1)) for w in range(7)]


def test_sl2_relation_in_normal_form():
    # e f = f e + h in the ordered basis (e, f, h)
    u = universal_envelope(sl2(), 3)
    assert u.multiply({(1,): 1}, {(0,): 1}) == {(0, 1): 1, (2,): -1}


def test_confluence_failure_names_overlap():
    with pytest.raises(ConfluenceError, match="overlap e2 e1 e0"):
        universal_envelope(fake_heisenberg(), 3)


@pytest.mark.parametrize("name", sorted(BUILTIN_LIE))
def test_certificates_for_builtins(name):
    g = BUILTIN_LIE[name]()
    cert = pbw_certificate(g, 5)
    assert cert["match"], cert
    assert [r["gr"] for r in cert["rows"]] == [comb(w + g.dim - 1, g.dim - 1) for w in range(6)]


def test_negative_control_reports_first_failing_weight():
    cert = pbw_certificate(fake_heisenberg(), 4)
    assert not cert["match"]
    assert cert["first_failing_weight"] == 1
    assert cert["overlap_failures"] and cert["jacobi_failures"]


def test_product_respects_filtration():
    assert universal_envelope(sl2(), 4).product_respects_filtration()


@settings(max_examples=40, deadline=None)
@given(st.integers(0, 10 ** 6))
def test_random_lie_algebras_are_confluent(seed):
    g = random_lie(random.Random(seed))
    assert not g.jacobi_failures()
    assert not universal_envelope(g, 3, check=False).overlap_failures()


@settings(max_examples=40, deadline=None)
@given(st.integers(1, 4), st.lists(st.tuples(st.integers(0, 3), st.integers(0, 3), st.integers(0, 3),
                                            st.integers(-2, 2)), max_size=8))
def test_jacobi_iff_confluent(d, terms):
    brackets = {}
    for i, j, k, c in terms:
        i, j, k = i % d, j % d, k % d
        if i < j and c:
            brackets.setdefault((i, j), {})[k] = Fraction(c)
    g = LiePresentation(d, tuple(range(d)), brackets)
    confluent = not universal_envelope(g, 3, check=False).overlap_failures()
    assert confluent == (not g.jacobi_failures())


def test_envelope_k1_n0_one_generator():
    res = envelope_gr_dims(1, 0, GradedSpace.from_dims({0: 1}), 4)
    assert res["match"]
    assert {w: r["predicted"] for w, r in res["weights"].items()} == {w: {w - 1: 1} for w in range(1, 5)}


def test_envelope_zero_space():
    assert envelope_gr_dims(1, 1, GradedSpace.from_dims({}), 3)["weights"] == {}


def test_envelope_weight_two_agrees_with_square():
    res = envelope_gr_dims(1, 1, GradedSpace.from_dims({0: 1}), 2)
    assert res["match"]
    arity_two = square_check("envelope", 2, k=1, n=1).rows[1].computed
    # with one even generator the coinvariants pick the symmetric part of the arity-2 homology
    assert sum(res["weights"][2]["bar"].values()) <= sum(arity_two.values())


def test_envelope_out_of_range():
    assert envelope_gr_dims(3, 3, GradedSpace.from_dims({0: 1}), 2)["status"] == "unsupported"
