import json

import pytest

from operadic.cache import CacheCorrupted, HomologyCache
from operadic.operads import ASS, COM, LIE, pois, suspend_operad
from operadic.spectral import skeletal_e1_page
from operadic.squares import (POISSON_RANGE, koszul_report, non_pushout_report, poisson_dims, shifted,
                              square_check)
from operadic.symseq import GradedSpace


def test_poisson_dims_match_stirling_rows():
    assert poisson_dims(2, 4) == {0: 1, 1: 6, 2: 11, 3: 6}
    assert poisson_dims(3, 3) == {0: 1, 2: 3, 4: 2}
    assert shifted({0: 1, 1: 1}, 2, dual=True) == {1: 1, 2: 1}


@pytest.mark.parametrize("name,kw,arity", [
    ("main-PBW", {}, 4),
    ("En", {"k": 1, "m": 0, "n": 1}, 4),
    ("En", {"k": 1, "m": 1, "n": 1}, 3),
    ("En", {"k": 2, "m": 0, "n": 1}, 3),
    ("lie-to-en", {"n": 1}, 4),
    ("lie-to-en", {"n": 2}, 4),
    ("lie-to-en", {"n": 3}, 3),
    ("en-to-comm", {"n": 1}, 4),
    ("en-to-comm", {"n": 2}, 3),
    ("envelope", {"k": 1, "n": 1}, 3),
    ("envelope", {"k": 2, "n": 1}, 3),
])
def test_squares_match(name, kw, arity):
    rep = square_check(name, arity, **kw)
    assert rep.match, rep.table()


def test_beta_scalar_does_not_change_homology():
    assert square_check("En", 3, k=1, m=1, n=1, scalar=3).match


def test_out_of_range_is_unsupported():
    rep = square_check("En", 3, k=1, m=0, n=POISSON_RANGE + 5)
    assert rep.status == "unsupported" and not rep.match


@pytest.mark.parametrize("o", [COM, LIE, ASS, pois(2), pois(3), suspend_operad(pois(2), 1)], ids=lambda o: o.name)
def test_koszul_duals(o):
    assert koszul_report(o, 4).match


def test_non_pushout_euler_characteristics():
    rep = non_pushout_report(range(2, 9))
    assert [r["chi"] for r in rep["rows"]] == [0, -3, -17, -95, -599, -4319, -35279]
    assert rep["match"]


@pytest.mark.parametrize("n,x", [(0, {0: 1}), (1, {0: 2}), (2, {0: 1, 1: 1}), (3, {0: 2})])
def test_e1_page_abuts_to_free_poisson_algebra(n, x):
    assert skeletal_e1_page(n, GradedSpace.from_dims(x), 3)["match"]


def test_zero_space_gives_empty_page():
    assert skeletal_e1_page(2, GradedSpace.from_dims({}), 3) == {"n": 2, "weights": {}, "match": True}


def test_cache_is_transparent(tmp_path):
    cache = HomologyCache(str(tmp_path))
    first = square_check("main-PBW", 4, cache=cache).to_json()
    assert len(cache.entries()) == 4
    assert square_check("main-PBW", 4, cache=cache).to_json() == first == square_check("main-PBW", 4).to_json()


def test_tampered_cache_shows_as_mismatch(tmp_path):
    cache = HomologyCache(str(tmp_path))
    square_check("main-PBW", 3, cache=cache)
    entry = cache.entries()[0]
    data = json.loads(entry.read_text())
    data["homology"] = {"0": 7}
    entry.write_text(json.dumps(data))
    assert not square_check("main-PBW", 3, cache=cache).match
    entry.write_text("{not json")
    with pytest.raises(CacheCorrupted):
        square_check("main-PBW", 3, cache=cache)


def test_parallel_workers_agree():
    assert square_check("en-to-comm", 4, n=1, workers=2).to_json() == square_check("en-to-comm", 4, n=1).to_json()
