"""Named composition squares, Koszul-dual tables and their reports.

Each square Q o_O P = R is checked at the level of homology: the bar complex
B(Q, O, P) is built from the homology shadows of the square's legs, and its
homology dims are compared with a declared expectation for R.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from math import factorial

from . import operads as ops
from .bar import bar_complex
from .operads import (COM, LIE, ONE, SPECTRAL_LIE, Determinant, LevelwiseTensor, Operad, Poisson,
                      SideModule, beta_power, iota, lie_to_ass, module_along, pois, regular_module,
                      suspension_morphism_shadow, trivial_module)

POISSON_RANGE = 4  # largest n for which E_n is offered


class UnsupportedParameters(ValueError):
    pass


@dataclass
class SquareSpec:
    """Bar inputs plus the declared expected homology, arity -> degree -> dim."""

    name: str
    params: dict
    right: SideModule
    operad: Operad
    left: SideModule
    expected: callable
    provenance: str


@dataclass
class ArityResult:
    arity: int
    expected: dict[int, int]
    computed: dict[int, int]

    @property
    def match(self) -> bool:
        return self.expected == self.computed


@dataclass
class Report:
    name: str
    params: dict
    rows: list[ArityResult] = field(default_factory=list)
    status: str = "ok"
    note: str = ""

    @property
    def match(self) -> bool:
        return self.status == "ok" and all(r.match for r in self.rows)

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), sort_keys=True, separators=(",", ":"))

    def to_dict(self) -> dict:
        return {
            "square": self.name,
            "params": self.params,
            "status": self.status,
            "note": self.note,
            "match": self.match,
            "results": [
                {"arity": r.arity,
                 "expected": {str(d): c for d, c in r.expected.items()},
                 "computed": {str(d): c for d, c in r.computed.items()},
                 "match": r.match}
                for r in self.rows
            ],
        }

    def table(self) -> str:
        head = f"{self.name} {json.dumps(self.params, sort_keys=True)}"
        if self.status != "ok":
            return f"{head}\n  {self.status}: {self.note}"
        lines = [head, f"  {'arity':>5}  {'expected':<28}  {'computed':<28}  match"]
        for r in self.rows:
            lines.append(f"  {r.arity:>5}  {_fmt(r.expected):<28}  {_fmt(r.computed):<28}  "
                         f"{'yes' if r.match else 'NO'}")
        return "\n".join(lines)


def _fmt(dims: dict[int, int]) -> str:
    return ", ".join(f"{d}:{c}" for d, c in sorted(dims.items())) or "0"


# ---------------------------------------------------------------------------
# expected dims


def poisson_dims(n: int, k: int) -> dict[int, int]:
    """Coefficients of prod_{i<k} (1 + i t^{n-1}), the Poincare polynomial of Conf_k(R^n)."""
    if n == 0:
        return {0: 1} if k == 1 else {}
    poly = {0: 1}
    for i in range(1, k):
        nxt: dict[int, int] = {}
        for d, c in poly.items():
            nxt[d] = nxt.get(d, 0) + c
            nxt[d + n - 1] = nxt.get(d + n - 1, 0) + c * i
        poly = nxt
    return {d: c for d, c in sorted(poly.items()) if c}


def shifted(dims: dict[int, int], shift: int, dual: bool = False) -> dict[int, int]:
    return dict(sorted(((-d if dual else d) + shift, c) for d, c in dims.items()))


def _check_n(*values: int) -> None:
    for v in values:
        if v < 0:
            raise UnsupportedParameters("parameters must be nonnegative")
        if v > POISSON_RANGE:
            raise UnsupportedParameters(f"E_{v} is outside the implemented Poisson range n <= {POISSON_RANGE}")


# ---------------------------------------------------------------------------
# the named squares


def square_spec(name: str, k: int | None = None, m: int | None = None, n: int | None = None,
                scalar=1) -> SquareSpec:
    if name == "main-PBW":
        return SquareSpec(name, {}, module_along(lie_to_ass(), "right"), LIE, trivial_module(LIE, "left"),
                          lambda a: {0: 1}, "Ass o_Lie 1 = Com: one class in degree 0 per arity")
    if name == "En":
        k, m, n = _need(k, 1), _need(m, 0), _need(n, 1)
        _check_n(k + m + n)
        right = module_along(beta_power(k, m, scalar), "right")
        left = module_along(iota(k + m, n), "left")
        return SquareSpec(name, {"k": k, "m": m, "n": n, "scalar": scalar}, right, pois(k + m), left,
                          lambda a: shifted(poisson_dims(m + n, a), k * (a - 1)),
                          "s^k Pois(m+n): Poincare polynomial shifted by k(arity-1)")
    if name == "lie-to-en":
        n = _need(n, 1)
        _check_n(n)
        left = module_along(suspension_morphism_shadow(SPECTRAL_LIE, n), "left")
        return SquareSpec(name, {"n": n}, trivial_module(SPECTRAL_LIE, "right"), SPECTRAL_LIE, left,
                          lambda a: poisson_dims(n, a),
                          "Pois(n) dims with no global shift for L = s^-1 Lie")
    if name == "en-to-comm":
        n = _need(n, 1)
        _check_n(n)
        left = module_along(iota(n, None), "left")
        return SquareSpec(name, {"n": n}, trivial_module(pois(n), "right"), pois(n), left,
                          lambda a: {n * (a - 1): 1}, "s^n Com: one class in degree n(arity-1)")
    if name == "envelope":
        k, n = _need(k, 1), _need(n, 1)
        _check_n(k + n)
        right = module_along(beta_power(k, n, scalar), "right")
        return SquareSpec(name, {"k": k, "n": n, "scalar": scalar}, right, pois(k + n),
                          trivial_module(pois(k + n), "left"),
                          lambda a: shifted(poisson_dims(k, a), k * (a - 1), dual=True),
                          "s^k of the termwise dual of Pois(k)")
    raise UnsupportedParameters(f"unknown square {name!r}")


def _need(v, default):
    return default if v is None else v


SQUARE_NAMES = ("main-PBW", "En", "lie-to-en", "en-to-comm", "envelope")


def _arity_job(args):
    name, params, a = args
    spec = square_spec(name, **params)
    return bar_complex(spec.right, spec.operad, spec.left, a).homology()


def square_check(name: str, max_arity: int, k=None, m=None, n=None, scalar=1, workers: int = 1,
                 cache=None) -> Report:
    """Compare H(B(Q, O, P)) with the declared shadow of R in arities 1..max_arity."""
    params = {key: v for key, v in (("k", k), ("m", m), ("n", n)) if v is not None}
    if scalar != 1:
        params["scalar"] = scalar
    try:
        spec = square_spec(name, **params)
    except UnsupportedParameters as exc:
        return Report(name, params, status="unsupported", note=str(exc))
    report = Report(name, spec.params, note=spec.provenance)
    jobs = [(name, params, a) for a in range(1, max_arity + 1)]
    computed = {}
    todo = []
    for job in jobs:
        hit = cache.get_homology(job) if cache is not None else None
        if hit is None:
            todo.append(job)
        else:
            computed[job[2]] = hit
    if workers > 1 and len(todo) > 1:
        from concurrent.futures import ProcessPoolExecutor

        with ProcessPoolExecutor(max_workers=workers) as pool:
            results = list(pool.map(_arity_job, todo))
    else:
        results = [_arity_job(j) for j in todo]
    for job, res in zip(todo, results):
        computed[job[2]] = res
        if cache is not None:
            cache.put_homology(job, res)
    for a in range(1, max_arity + 1):
        report.rows.append(ArityResult(a, spec.expected(a), computed[a]))
    return report


# ---------------------------------------------------------------------------
# Koszul duals


def _unsuspend(o: Operad) -> tuple[Operad, int]:
    shift = 0
    while isinstance(o, LevelwiseTensor) and isinstance(o.q, Determinant):
        shift += o.q.sign
        o = o.p
    return o, shift


def koszul_expected(o: Operad, arity: int) -> dict[int, int]:
    """Declared homology of B(1, O, 1): s K(O) with Com <-> Lie, Ass and Pois(n) self-dual up to s^n."""
    base, shift = _unsuspend(o)
    a = arity
    if base is ONE:
        dims = {0: 1} if a == 1 else {}
    elif base is COM:
        dims = shifted({0: factorial(a - 1)}, a - 1)
    elif base is LIE:
        dims = {a - 1: 1}
    elif isinstance(base, ops.Ass):
        dims = {a - 1: factorial(a)}
    elif isinstance(base, Poisson):
        dims = shifted(poisson_dims(base.n, a), base.n * (a - 1), dual=True)
    else:
        raise UnsupportedParameters(f"no declared Koszul dual for {o.name}")
    return shifted(dims, shift * (a - 1))


def koszul_report(o: Operad, max_arity: int) -> Report:
    report = Report(f"koszul {o.name}", {}, note="H(B(1, O, 1)) against the declared dual")
    try:
        koszul_expected(o, 1)
    except UnsupportedParameters as exc:
        return Report(report.name, {}, status="unsupported", note=str(exc))
    for a in range(1, max_arity + 1):
        h = bar_complex(trivial_module(o, "right"), o, trivial_module(o, "left"), a).homology()
        report.rows.append(ArityResult(a, koszul_expected(o, a), h))
    return report


# ---------------------------------------------------------------------------
# non-pushout arithmetic


def non_pushout_report(n_values) -> dict:
    """chi(n) = dim Com(n) - dim Ass(n) + dim Lie(n) from the built-in bases."""
    rows = []
    for n in n_values:
        if n < 2:
            raise UnsupportedParameters("arities start at 2")
        chi = COM.dim(n) - ops.ASS.dim(n) + LIE.dim(n)
        rows.append({"n": n, "com": COM.dim(n), "ass": ops.ASS.dim(n), "lie": LIE.dim(n),
                     "chi": chi, "zero": chi == 0})
    ok = all(r["zero"] == (r["n"] == 2) for r in rows)
    return {"rows": rows, "match": ok}
