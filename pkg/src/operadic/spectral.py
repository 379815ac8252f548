"""The skeletal filtration of 1 o_L s^n L applied to a graded space.

In weight w the E^1 term in filtration s is the coinvariant space
(B_s(w) (x) X^{(x)w})_{Sigma_w}, and d^1 is induced by the bar differential.
Coinvariants are exact over Q, so the E^2 page is the abutment and must agree
with the free Pois(n)-algebra on X.
"""

from __future__ import annotations

from .bar import bar_complex, level_action
from .linalg import SparseMatrix, rank
from .operads import SPECTRAL_LIE, module_along, pois, suspension_morphism_shadow, trivial_module
from .symmetry import coinvariants, tensor_rep
from .symseq import GradedSpace, free_algebra_weights, restrict_degree, tensor_power_rep


def _kron_identity(m: SparseMatrix, k: int) -> SparseMatrix:
    entries = [(r * k + t, c * k + t, v) for r, c, v in m.entries() for t in range(k)]
    return SparseMatrix(m.shape[0] * k, m.shape[1] * k, entries)


def _weight_page(n: int, x: GradedSpace, w: int) -> dict:
    L = SPECTRAL_LIE
    bc = bar_complex(trivial_module(L, "right"), L, module_along(suspension_morphism_shadow(L, n), "left"), w)
    return coinvariant_page(bc, x)


def coinvariant_page(bc, x: GradedSpace) -> dict:
    """E^1, d^1 ranks and homology of (B(w) (x) X^{(x)w})_{Sigma_w} for a bar complex in arity w."""
    xt = tensor_power_rep(x, bc.arity)
    proj: dict[tuple[int, int], tuple[list[int], SparseMatrix]] = {}
    e1: dict[int, dict[int, int]] = {}
    for s in bc.levels:
        t = tensor_rep(level_action(bc, s), xt)
        for q in sorted(set(t.degrees)):
            idx = [i for i, d in enumerate(t.degrees) if d == q]
            dim, p = coinvariants(restrict_degree(t, q))
            if dim:
                e1.setdefault(s, {})[q] = dim
                proj[(s, q)] = (idx, p)
    d1: dict[int, dict[int, int]] = {}
    for s in bc.levels:
        if s == 0:
            continue
        big = _kron_identity(bc.differential(s), xt.dim)
        for q in e1.get(s, {}):
            if (s - 1, q) not in proj:
                continue
            src_idx, _ = proj[(s, q)]
            tgt_idx, p = proj[(s - 1, q)]
            r = rank(p @ big.submatrix(tgt_idx, src_idx))
            if r:
                d1.setdefault(s, {})[q] = r
    abutment: dict[int, int] = {}
    for s, row in e1.items():
        for q, dim in row.items():
            h = dim - d1.get(s, {}).get(q, 0) - d1.get(s + 1, {}).get(q, 0)
            if h:
                abutment[q + s] = abutment.get(q + s, 0) + h
    return {"e1": e1, "d1": d1, "abutment": dict(sorted(abutment.items()))}


def skeletal_e1_page(n: int, x: GradedSpace, max_weight: int) -> dict:
    """Per weight: E^1 dims (level -> internal degree -> dim), d^1 ranks, abutment and the free-algebra oracle."""
    weights = {}
    if x.total == 0:
        return {"n": n, "weights": {}, "match": True}
    expected = free_algebra_weights(pois(n).symseq(max_weight), x)
    ok = True
    for w in range(1, max_weight + 1):
        page = _weight_page(n, x, w)
        page["expected"] = expected.get(w, {})
        page["match"] = page["abutment"] == page["expected"]
        ok = ok and page["match"]
        weights[w] = page
    return {"n": n, "weights": weights, "match": ok}
