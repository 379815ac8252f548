"""Truncated symmetric sequences and their monoidal products.

A :class:`SymSeq` stores, for each arity 1..N, one degree-homogeneous
:class:`SymRep`.  Arity 0 is always zero.  Products are computed exactly in
arities up to the shared truncation bound.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from fractions import Fraction
from itertools import product as cartesian
from typing import Mapping, Sequence

from .linalg import SparseMatrix
from .symmetry import (ArityMismatch, SymRep, coinvariants, induce, rep_from_action, sign_rep,
                       tensor_rep, trivial_rep, zero_rep)


class TruncationMismatch(ValueError):
    pass


@dataclass(frozen=True)
class GradedSpace:
    """Finite-dimensional graded space; ``labels[d]`` lists the basis in degree d."""

    labels: Mapping[int, tuple]

    @classmethod
    def from_dims(cls, dims: Mapping[int, int]) -> "GradedSpace":
        return cls({d: tuple(f"x{d}_{i}" for i in range(c)) for d, c in dims.items() if c})

    @property
    def dims(self) -> dict[int, int]:
        return {d: len(v) for d, v in sorted(self.labels.items()) if v}

    def basis(self) -> list[tuple]:
        """(label, degree) pairs in degree order."""
        return [(lab, d) for d in sorted(self.labels) for lab in self.labels[d]]

    @property
    def total(self) -> int:
        return sum(self.dims.values())


def restrict_degree(rep: SymRep, degree: int) -> SymRep:
    idx = [i for i, d in enumerate(rep.degrees) if d == degree]
    gens = tuple(g.submatrix(idx, idx) for g in rep.generators)
    return SymRep(rep.n, tuple(rep.labels[i] for i in idx), gens, (degree,) * len(idx), rep.name)


def coinvariant_dims(rep: SymRep, subgroup: Sequence[int] | None = None) -> dict[int, int]:
    """Dimension of the coinvariants in each degree."""
    out = {}
    for d in sorted(set(rep.degrees)):
        dim, _ = coinvariants(restrict_degree(rep, d), subgroup)
        if dim:
            out[d] = dim
    return out


@dataclass(frozen=True, eq=False)
class SymSeq:
    max_arity: int
    terms: Mapping[int, SymRep]
    name: str = ""
    _memo: dict = field(default_factory=dict, repr=False)

    def __post_init__(self):
        for n in range(1, self.max_arity + 1):
            if n not in self.terms:
                raise ValueError(f"arity {n} missing below the truncation bound")
            if self.terms[n].n != n:
                raise ArityMismatch(f"term at arity {n} is a Sigma_{self.terms[n].n} rep")
        if 0 in self.terms and self.terms[0].dim:
            raise ValueError("arity 0 must be zero")

    def __getitem__(self, n: int) -> SymRep:
        if n < 1:
            return zero_rep(0)
        if n > self.max_arity:
            raise TruncationMismatch(f"arity {n} above truncation {self.max_arity}")
        return self.terms[n]

    def dims(self, n: int) -> dict[int, int]:
        return self[n].degree_dims()

    def table(self) -> dict[int, dict[int, int]]:
        return {n: self.dims(n) for n in range(1, self.max_arity + 1)}


def _shared(a: SymSeq, b: SymSeq) -> int:
    if a.max_arity != b.max_arity:
        raise TruncationMismatch(f"truncations differ: {a.max_arity} vs {b.max_arity}")
    return a.max_arity


def unit_sequence(max_arity: int) -> SymSeq:
    terms = {n: trivial_rep(1) if n == 1 else zero_rep(n) for n in range(1, max_arity + 1)}
    return SymSeq(max_arity, terms, "1")


def zero_sequence(max_arity: int) -> SymSeq:
    return SymSeq(max_arity, {n: zero_rep(n) for n in range(1, max_arity + 1)}, "0")


def constant_sequence(max_arity: int, degree_of=lambda n: 0, signed: bool = False, name="") -> SymSeq:
    """A line in every arity; trivial or sign action."""
    make = sign_rep if signed else trivial_rep
    return SymSeq(max_arity, {n: make(n, degree_of(n)) for n in range(1, max_arity + 1)}, name)


def _sum_reps(n: int, reps: list[tuple]) -> SymRep:
    """Direct sum with caller-chosen tags; labels become (tag, label)."""
    reps = [(t, r) for t, r in reps if r.dim]
    if not reps:
        return zero_rep(n)
    labels, degrees, blocks = [], [], []
    for t, r in reps:
        labels.extend((t, lab) for lab in r.labels)
        degrees.extend(r.degrees)
    from .linalg import block_diag

    gens = tuple(block_diag([r.generators[i] for _, r in reps]) for i in range(n - 1))
    return SymRep(n, tuple(labels), gens, tuple(degrees))


def day_convolution(a: SymSeq, b: SymSeq) -> SymSeq:
    """(A (x) B)(n) = sum over a + b = n of Ind (A(a) (x) B(b))."""
    N = _shared(a, b)
    terms = {}
    for n in range(1, N + 1):
        parts = [((i, n - i), induce(a[i], b[n - i])) for i in range(1, n)]
        terms[n] = _sum_reps(n, parts)
    return SymSeq(N, terms, f"({a.name} (x) {b.name})")


def levelwise_tensor(a: SymSeq, b: SymSeq) -> SymSeq:
    N = _shared(a, b)
    return SymSeq(N, {n: tensor_rep(a[n], b[n]) for n in range(1, N + 1)}, f"({a.name} (x)lev {b.name})")


def suspend(a: SymSeq, k: int) -> SymSeq:
    """Levelwise tensor with End of the k-fold shifted line: sgn^k in degree k(n-1)."""
    if k == 0:
        return a
    line = constant_sequence(a.max_arity, lambda n: k * (n - 1), signed=bool(k % 2), name=f"Lambda^{k}")
    out = levelwise_tensor(a, line)
    return SymSeq(out.max_arity, out.terms, f"s^{k}{a.name}")


def termwise_dual(a: SymSeq) -> SymSeq:
    """Degrees negated; the dual action is the inverse transpose, i.e. the transpose for involutions."""
    terms = {}
    for n in range(1, a.max_arity + 1):
        r = a[n]
        gens = tuple(g.transpose() for g in r.generators)
        terms[n] = SymRep(n, r.labels, gens, tuple(-d for d in r.degrees), f"{r.name}^v")
    return SymSeq(a.max_arity, terms, f"{a.name}^v")


# ---------------------------------------------------------------------------
# composition product


def set_compositions(k: int, j: int) -> list[tuple[tuple[int, ...], ...]]:
    """Unordered partitions of 1..k into j blocks, blocks sorted by minimum."""
    out = []

    def rec(i, blocks):
        if i > k:
            if len(blocks) == j:
                out.append(tuple(tuple(b) for b in blocks))
            return
        for b in blocks:
            b.append(i)
            rec(i + 1, blocks)
            b.pop()
        if len(blocks) < j:
            blocks.append([i])
            rec(i + 1, blocks)
            blocks.pop()

    rec(1, [])
    return out


def _compose_labels(a: SymSeq, b: SymSeq, k: int):
    labels, degrees = [], []
    for j in range(1, k + 1):
        for part in set_compositions(k, j):
            brep = [b[len(block)] for block in part]
            if any(r.dim == 0 for r in brep):
                continue
            for ai, alab in enumerate(a[j].labels):
                for combo in cartesian(*[range(r.dim) for r in brep]):
                    labels.append((part, alab, tuple(brep[t].labels[c] for t, c in enumerate(combo))))
                    degrees.append(a[j].degrees[ai] + sum(brep[t].degrees[c] for t, c in enumerate(combo)))
    return labels, degrees


def _compose_orbit(a: SymSeq, b: SymSeq, k: int) -> SymRep:
    labels, degrees = _compose_labels(a, b, k)
    acols = {j: [g.columns() for g in a[j].generators] for j in range(1, k + 1)}
    bcols = {m: [g.columns() for g in b[m].generators] for m in range(1, k + 1)}

    def bdeg(m, lab):
        return b[m].degrees[b[m].index(lab)]

    def swap(lab, i):
        part, alab, blabs = lab
        bi = next(t for t, blk in enumerate(part) if i in blk)
        bj = next(t for t, blk in enumerate(part) if i + 1 in blk)
        if bi == bj:
            blk = part[bi]
            pos = blk.index(i) + 1
            col = bcols[len(blk)][pos - 1][b[len(blk)].index(blabs[bi])]
            return {(part, alab, blabs[:bi] + (b[len(blk)].labels[r],) + blabs[bi + 1:]): v for r, v in col.items()}
        moved = [tuple(i + 1 if x == i else i if x == i + 1 else x for x in blk) for blk in part]
        moved = [tuple(sorted(blk)) for blk in moved]
        if all(moved[t][0] < moved[t + 1][0] for t in range(len(moved) - 1)):
            # block order by minimum is unchanged
            return {(tuple(moved), alab, blabs): Fraction(1)}
        # i and i+1 were the minima of adjacent blocks bi, bi+1: reorder them
        p = min(bi, bj)
        new_part = tuple(moved[:p] + [moved[p + 1], moved[p]] + moved[p + 2:])
        new_b = blabs[:p] + (blabs[p + 1], blabs[p]) + blabs[p + 2:]
        d1, d2 = bdeg(len(part[p]), blabs[p]), bdeg(len(part[p + 1]), blabs[p + 1])
        sign = -1 if (d1 * d2) % 2 else 1
        j = len(part)
        col = acols[j][p][a[j].index(alab)]
        return {(new_part, a[j].labels[r], new_b): sign * v for r, v in col.items()}

    return rep_from_action(k, labels, swap, degrees, f"({a.name} o {b.name})({k})")


def _ordered_block_rep(a: SymSeq, b: SymSeq, k: int, j: int) -> SymRep:
    """Sigma_j acting on A(j) (x) (B^{(x)j})(k), blocks permuted with Koszul signs."""
    labels, degrees = [], []
    from itertools import permutations

    for part in set_compositions(k, j):
        for order in permutations(range(j)):
            blocks = tuple(part[t] for t in order)
            brep = [b[len(blk)] for blk in blocks]
            for ai, alab in enumerate(a[j].labels):
                for combo in cartesian(*[range(r.dim) for r in brep]):
                    labels.append((blocks, alab, tuple(brep[t].labels[c] for t, c in enumerate(combo))))
                    degrees.append(a[j].degrees[ai] + sum(brep[t].degrees[c] for t, c in enumerate(combo)))
    acols = [g.columns() for g in a[j].generators]

    def swap(lab, p):
        blocks, alab, blabs = lab
        q = p - 1
        d1 = b[len(blocks[q])].degrees[b[len(blocks[q])].index(blabs[q])]
        d2 = b[len(blocks[q + 1])].degrees[b[len(blocks[q + 1])].index(blabs[q + 1])]
        sign = -1 if (d1 * d2) % 2 else 1
        nb = blocks[:q] + (blocks[q + 1], blocks[q]) + blocks[q + 2:]
        nl = blabs[:q] + (blabs[q + 1], blabs[q]) + blabs[q + 2:]
        return {(nb, a[j].labels[r], nl): sign * v for r, v in acols[q][a[j].index(alab)].items()}

    return rep_from_action(j, labels, swap, degrees)


def compose_dims_idempotent(a: SymSeq, b: SymSeq, k: int) -> dict[int, int]:
    """Graded dims of (A o B)(k) from explicit Sigma_j coinvariants (slow cross-check)."""
    out: dict[int, int] = {}
    for j in range(1, k + 1):
        rep = _ordered_block_rep(a, b, k, j)
        for d, c in coinvariant_dims(rep).items():
            out[d] = out.get(d, 0) + c
    return dict(sorted(out.items()))


def compose(a: SymSeq, b: SymSeq, method: str = "orbit") -> SymSeq:
    """Composition product (A o B)(k) = sum_j (A(j) (x) B^{(x)j}(k))_{Sigma_j}.

    Sigma_j permutes ordered block decompositions freely, so the coinvariants
    have a basis indexed by partitions with blocks sorted by minimum.
    ``method="idempotent"`` recomputes the graded dims by brute force and
    raises if they disagree.
    """
    N = _shared(a, b)
    terms = {k: _compose_orbit(a, b, k) for k in range(1, N + 1)}
    if method == "idempotent":
        for k in range(1, N + 1):
            if compose_dims_idempotent(a, b, k) != terms[k].degree_dims():
                raise AssertionError(f"orbit and idempotent coinvariants disagree at arity {k}")
    elif method != "orbit":
        raise ValueError(f"unknown method {method!r}")
    return SymSeq(N, terms, f"({a.name} o {b.name})")


def tensor_power_rep(x: GradedSpace, n: int) -> SymRep:
    """X^{(x)n} with Sigma_n permuting factors and the Koszul sign."""
    basis = x.basis()
    labels = list(cartesian(range(len(basis)), repeat=n))
    degrees = [sum(basis[t][1] for t in lab) for lab in labels]

    def swap(lab, i):
        d1, d2 = basis[lab[i - 1]][1], basis[lab[i]][1]
        new = lab[:i - 1] + (lab[i], lab[i - 1]) + lab[i + 1:]
        return {new: -1 if (d1 * d2) % 2 else 1}

    return rep_from_action(n, labels, swap, degrees)


def free_algebra(a: SymSeq, x: GradedSpace) -> GradedSpace:
    """sum_{n <= N} (A(n) (x) X^{(x)n})_{Sigma_n}, truncated at the arity bound."""
    dims: dict[int, int] = {}
    if x.total:
        for n in range(1, a.max_arity + 1):
            if not a[n].dim:
                continue
            for d, c in coinvariant_dims(tensor_rep(a[n], tensor_power_rep(x, n))).items():
                dims[d] = dims.get(d, 0) + c
    return GradedSpace.from_dims(dict(sorted(dims.items())))


def free_algebra_weights(a: SymSeq, x: GradedSpace) -> dict[int, dict[int, int]]:
    """Per-weight graded dims of the free algebra."""
    out = {}
    for n in range(1, a.max_arity + 1):
        if a[n].dim and x.total:
            out[n] = coinvariant_dims(tensor_rep(a[n], tensor_power_rep(x, n)))
    return out


# ---------------------------------------------------------------------------
# maps


@dataclass(frozen=True)
class SymSeqMap:
    """Per arity, per degree matrices; rows and columns follow the label order of that degree."""

    source: SymSeq
    target: SymSeq
    blocks: Mapping[int, Mapping[int, SparseMatrix]]

    def full(self, n: int) -> SparseMatrix:
        src, tgt = self.source[n], self.target[n]
        entries = []
        for d, m in self.blocks.get(n, {}).items():
            cols = [i for i, e in enumerate(src.degrees) if e == d]
            rows = [i for i, e in enumerate(tgt.degrees) if e == d]
            if m.shape != (len(rows), len(cols)):
                raise ValueError(f"block at arity {n}, degree {d} has shape {m.shape}")
            entries.extend((rows[r], cols[c], v) for r, c, v in m.entries())
        return SparseMatrix(tgt.dim, src.dim, entries)

    def equivariance_failures(self) -> list[str]:
        bad = []
        for n in range(1, self.source.max_arity + 1):
            m = self.full(n)
            for i, (gs, gt) in enumerate(zip(self.source[n].generators, self.target[n].generators), 1):
                if m @ gs != gt @ m:
                    bad.append(f"arity {n}: fails to commute with s_{i}")
        return bad


# ---------------------------------------------------------------------------
# canonical JSON


def _encode(obj):
    if isinstance(obj, frozenset):
        return {"set": sorted(_encode(x) for x in obj)}
    if isinstance(obj, (tuple, list)):
        return [_encode(x) for x in obj]
    if isinstance(obj, Fraction):
        return str(obj)
    return obj


def _decode(obj):
    if isinstance(obj, dict) and set(obj) == {"set"}:
        return frozenset(_decode(x) for x in obj["set"])
    if isinstance(obj, list):
        return tuple(_decode(x) for x in obj)
    return obj


def to_json(s: SymSeq) -> str:
    terms = {}
    for n in range(1, s.max_arity + 1):
        r = s[n]
        terms[str(n)] = {
            "labels": _encode(r.labels),
            "degrees": list(r.degrees),
            "generators": [[[rr, c, str(v)] for rr, c, v in sorted(g.entries())] for g in r.generators],
        }
    return json.dumps({"name": s.name, "max_arity": s.max_arity, "terms": terms},
                      sort_keys=True, separators=(",", ":"))


def from_json(text: str) -> SymSeq:
    data = json.loads(text)
    terms = {}
    for key, t in data["terms"].items():
        n = int(key)
        labels = _decode(t["labels"])
        gens = tuple(SparseMatrix(len(labels), len(labels), [(r, c, Fraction(v)) for r, c, v in g])
                     for g in t["generators"])
        terms[n] = SymRep(n, labels, gens, tuple(t["degrees"]))
    return SymSeq(data["max_arity"], terms, data["name"])
