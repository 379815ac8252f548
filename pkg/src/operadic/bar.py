"""Normalized two-sided bar complexes B(M, O, N) and their homology.

A basis element of simplicial level s is a strict chain of set partitions
P_0 > P_1 > ... > P_s of the leaves, coarse to fine, decorated by

* an element of M on the blocks of P_0,
* for each level t and each block B of P_{t-1} with at least two children in
  P_t, an element of O on those children (one child means an implicit unit),
* for each block C of P_s, an element of N on the leaves of C.

Degenerate simplices are exactly the chains with a repeated partition, so
strict chains span the normalized complex.  Factors are ordered M, level 1,
..., level s, N, with blocks by minimum inside a level; faces regroup factors
with the Koszul sign before composing.  d_0 is the right action on M, d_s the
left action on N.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from itertools import product as cartesian

from .linalg import ChainComplex, SparseMatrix, homology_dims, rank
from .operads import Operad, SideModule, leaves, set_partitions, sort_labels
from .symmetry import koszul_sign


class ModuleMismatch(ValueError):
    pass


class SimplicialIdentityError(AssertionError):
    def __init__(self, i: int, j: int, s: int):
        super().__init__(f"d_{i} d_{j} != d_{j - 1} d_{i} on level {s}")
        self.i, self.j, self.s = i, j, s


def _partitions_of(labels: tuple) -> list[tuple[frozenset, ...]]:
    """Set partitions of a tuple of leaf labels; blocks are frozensets of leaf indices."""
    out = []
    for part in set_partitions(labels):
        out.append(tuple(frozenset().union(*blk) for blk in part))
    return out


def _children(block: frozenset, finer: tuple) -> tuple:
    return tuple(c for c in finer if c <= block)


def _refinements(part: tuple) -> list[tuple]:
    """Strict refinements of a partition (at least one block split)."""
    options = []
    for block in part:
        opts = _partitions_of(tuple(frozenset({i}) for i in sorted(block)))
        options.append(opts)
    out = []
    for choice in cartesian(*options):
        if all(len(c) == 1 for c in choice):
            continue
        blocks = [b for c in choice for b in c]
        out.append(tuple(sorted(blocks, key=min)))
    return out


@dataclass
class BarComplex:
    """Levels, faces and the totalized complex of B(M, O, N) in one arity."""

    arity: int
    bases: dict[int, list]
    degrees: dict[int, list[int]]
    faces: dict[int, list[SparseMatrix]]  # faces[s][i] = d_i : level s -> level s-1
    builder: "_Builder | None" = field(default=None, repr=False)
    _complexes: dict = field(default_factory=dict, repr=False)

    @property
    def levels(self) -> list[int]:
        return sorted(s for s, b in self.bases.items() if b)

    def level_dims(self) -> dict[int, dict[int, int]]:
        """level -> internal degree -> dim."""
        out = {}
        for s, degs in self.degrees.items():
            d: dict[int, int] = {}
            for q in degs:
                d[q] = d.get(q, 0) + 1
            if d:
                out[s] = dict(sorted(d.items()))
        return out

    def differential(self, s: int) -> SparseMatrix:
        total = None
        for i, f in enumerate(self.faces.get(s, [])):
            term = f if i % 2 == 0 else -f
            total = term if total is None else total + term
        if total is None:
            return SparseMatrix.zeros(len(self.bases.get(s - 1, [])), len(self.bases.get(s, [])))
        return total

    def internal_degrees(self) -> list[int]:
        return sorted({q for degs in self.degrees.values() for q in degs})

    def complex_at(self, q: int) -> ChainComplex:
        """The summand of internal degree q, graded by total degree q + s."""
        if q in self._complexes:
            return self._complexes[q]
        idx = {s: [i for i, d in enumerate(self.degrees[s]) if d == q] for s in self.bases}
        top = max(self.bases) if self.bases else 0
        dims = {q + s: len(idx[s]) for s in range(0, top + 1)}
        diffs = {}
        for s in range(1, top + 1):
            diffs[q + s] = self.differential(s).submatrix(idx[s - 1], idx[s])
        c = ChainComplex(dims, diffs)
        self._complexes[q] = c
        return c

    def homology(self, p: int | None = None) -> dict[int, int]:
        """Total degree -> dim of homology."""
        out: dict[int, int] = {}
        for q in self.internal_degrees():
            for d, h in homology_dims(self.complex_at(q), p).items():
                if h:
                    out[d] = out.get(d, 0) + h
        return dict(sorted(out.items()))

    def chain_dims(self) -> dict[int, int]:
        out: dict[int, int] = {}
        for s, degs in self.degrees.items():
            for q in degs:
                out[q + s] = out.get(q + s, 0) + 1
        return dict(sorted(out.items()))

    def euler_characteristic(self) -> int:
        return sum((-1) ** d * c for d, c in self.chain_dims().items())

    def check_simplicial(self) -> None:
        for s, fs in self.faces.items():
            below = self.faces.get(s - 1, [])
            for j in range(len(fs)):
                for i in range(j):
                    if i >= len(below) or j - 1 >= len(below):
                        continue
                    if below[i] @ fs[j] != below[j - 1] @ fs[i]:
                        raise SimplicialIdentityError(i, j, s)

    def differential_squares_to_zero(self) -> bool:
        return all((self.differential(s - 1) @ self.differential(s)).is_zero()
                   for s in self.bases if s >= 2)


# ---------------------------------------------------------------------------
# construction


class _Builder:
    def __init__(self, m: SideModule, o: Operad, n: SideModule, k: int):
        if m.side != "right" or n.side != "left":
            raise ModuleMismatch("expected a right module on the left and a left module on the right")
        if m.over != o or n.over != o:
            raise ModuleMismatch(f"modules over {m.over.name} and {n.over.name}, bar over {o.name}")
        self.m, self.o, self.n, self.k = m, o, n, k
        self.M, self.N = m.underlying, n.underlying
        self.leaves = leaves(k)

    # basis ---------------------------------------------------------------

    def chains(self) -> dict[int, list[tuple]]:
        out: dict[int, list[tuple]] = {}
        for p0 in _partitions_of(self.leaves):
            if not self.M.basis(tuple(p0)):
                continue
            stack = [(p0,)]
            while stack:
                chain = stack.pop()
                out.setdefault(len(chain) - 1, []).append(chain)
                for finer in _refinements(chain[-1]):
                    stack.append(chain + (finer,))
        return out

    def decorate(self, chain: tuple) -> list[tuple]:
        """All basis elements on a chain: tuples of (role, slot, key) factors in canonical order."""
        slots = [("M", None, tuple(chain[0]))]
        for t in range(1, len(chain)):
            for block in chain[t - 1]:
                kids = _children(block, chain[t])
                if len(kids) >= 2:
                    slots.append(("O", (t, block), kids))
        for block in chain[-1]:
            slots.append(("N", block, tuple(frozenset({i}) for i in sorted(block))))
        choices = []
        for role, slot, labs in slots:
            op = self.M if role == "M" else self.o if role == "O" else self.N
            keys = op.basis(labs)
            if not keys:
                return []
            choices.append([(role, slot, key) for key in keys])
        return [tuple(c) for c in cartesian(*choices)]

    def degree_of(self, factor) -> int:
        role, _, key = factor
        op = self.M if role == "M" else self.o if role == "O" else self.N
        return op.degree(key)

    # faces -----------------------------------------------------------------

    def face(self, chain: tuple, factors: tuple, i: int) -> dict:
        s = len(chain) - 1
        groups: list[tuple[tuple, list[int]]] = []  # (new slot, old factor indices)
        pos = {(f[0], f[1]): idx for idx, f in enumerate(factors)}
        if i == 0:
            new_chain = chain[1:]
            outer = [0] + [pos[("O", (1, b))] for b in chain[0] if ("O", (1, b)) in pos]
            groups.append((("M", None), outer))
            rest = [idx for idx, f in enumerate(factors) if idx not in outer]
            for idx in rest:
                groups.append((self._shift(factors[idx], -1), [idx]))
        elif i == s:
            new_chain = chain[:-1]
            for idx, f in enumerate(factors):
                if f[0] == "M" or (f[0] == "O" and f[1][0] < s):
                    groups.append(((f[0], f[1]), [idx]))
            for block in chain[s - 1]:
                kids = _children(block, chain[s])
                head = [pos[("O", (s, block))]] if ("O", (s, block)) in pos else []
                groups.append((("N", block), head + [pos[("N", c)] for c in kids]))
        else:
            new_chain = chain[:i] + chain[i + 1:]
            for idx, f in enumerate(factors):
                if f[0] == "M" or (f[0] == "O" and f[1][0] < i):
                    groups.append(((f[0], f[1]), [idx]))
            for block in chain[i - 1]:
                head = [pos[("O", (i, block))]] if ("O", (i, block)) in pos else []
                kids = _children(block, chain[i])
                inner = [pos[("O", (i + 1, c))] for c in kids if ("O", (i + 1, c)) in pos]
                if head or inner:
                    groups.append((("O", (i, block)), head + inner))
            for idx, f in enumerate(factors):
                if f[0] == "N" or (f[0] == "O" and f[1][0] > i + 1):
                    groups.append((self._shift(f, -1), [idx]))
        order = [idx for _, g in groups for idx in g]
        sign = koszul_sign([self.degree_of(f) for f in factors], order)
        results = []
        for slot, g in groups:
            val = self._combine(slot, [factors[idx] for idx in g], chain, new_chain)
            if not val:
                return {}
            results.append([((slot[0], slot[1], key), c) for key, c in val.items()])
        out: dict = {}
        for combo in cartesian(*results):
            coeff = Fraction(sign)
            for _, c in combo:
                coeff *= c
            new = tuple(f for f, _ in combo)
            out[(new_chain, new)] = out.get((new_chain, new), 0) + coeff
        return {k: v for k, v in out.items() if v}

    @staticmethod
    def _shift(f, delta):
        if f[0] == "O":
            return (f[0], (f[1][0] + delta, f[1][1]))
        return (f[0], f[1])

    def _combine(self, slot, group, chain, new_chain) -> dict:
        role = slot[0]
        if len(group) == 1 and group[0][0] == role:
            return {group[0][2]: Fraction(1)}
        head = group[0]
        if role == "M":
            cur = {head[2]: Fraction(1)}
            for f in group[1:]:
                cur = self.M.compose_elements(cur, f[1][1], self.m.morphism(f[2]))
            return cur
        if role == "N":
            if head[0] == "O":
                cur = dict(self.n.morphism(head[2]))
                rest = group[1:]
            else:
                cur = {head[2]: Fraction(1)}
                rest = group[1:]
            for f in rest:
                cur = self.N.compose_elements(cur, f[1], {f[2]: Fraction(1)})
            return cur
        # merged O vertex
        t, block = slot[1]
        if head[1] == (t, block):
            cur = {head[2]: Fraction(1)}
            rest = group[1:]
        else:
            cur = {head[2]: Fraction(1)}
            rest = group[1:]
            return self._finish_vertex(cur, rest) if rest else cur
        return self._finish_vertex(cur, rest)

    def relabel(self, chain: tuple, factors: tuple, perm: dict) -> tuple[tuple, int, dict]:
        """Apply a permutation of leaf indices; returns (new chain, sign, factor images)."""
        def img(block):
            return frozenset(perm[i] for i in block)

        new_chain = tuple(tuple(sorted((img(b) for b in p), key=min)) for p in chain)
        moved = []
        for role, slot, key in factors:
            if role == "M":
                mapping = {b: img(b) for b in chain[0]}
                moved.append((("M", None), self.M.relabel(key, mapping)))
            elif role == "O":
                t, block = slot
                mapping = {c: img(c) for c in _children(block, chain[t])}
                moved.append((("O", (t, img(block))), self.o.relabel(key, mapping)))
            else:
                mapping = {frozenset({i}): frozenset({perm[i]}) for i in slot}
                moved.append((("N", img(slot)), self.N.relabel(key, mapping)))
        order = sorted(range(len(moved)), key=lambda i: _slot_rank(moved[i][0]))
        sign = koszul_sign([self.degree_of(f) for f in factors], order)
        return new_chain, sign, [moved[i] for i in order]

    def _finish_vertex(self, cur, rest):
        for f in rest:
            cur = self.o.compose_elements(cur, f[1][1], {f[2]: Fraction(1)})
        return cur


def _slot_rank(slot):
    role, where = slot
    if role == "M":
        return (0, 0, 0)
    if role == "O":
        return (1, where[0], min(where[1]))
    return (2, 0, min(where))


def level_action(bc: BarComplex, s: int):
    """Sigma_k acting on the level-s basis, as a SymRep."""
    from .symmetry import rep_from_action

    b = bc.builder
    k = bc.arity

    def swap(elem, i):
        chain, factors = elem
        perm = {j: j for j in range(1, k + 1)}
        perm[i], perm[i + 1] = i + 1, i
        new_chain, sign, moved = b.relabel(chain, factors, perm)
        out = {}
        for combo in cartesian(*[list(v.items()) for _, v in moved]):
            coeff = sign
            for _, c in combo:
                coeff *= c
            new = tuple((slot[0], slot[1], key) for (slot, _), (key, _) in zip(moved, combo))
            out[(new_chain, new)] = out.get((new_chain, new), 0) + coeff
        return out

    return rep_from_action(k, bc.bases[s], swap, bc.degrees[s], f"B_{s}({k})")


def bar_complex(m: SideModule, o: Operad, n: SideModule, k: int, check: bool = True) -> BarComplex:
    """The normalized bar complex B(M, O, N) in arity k."""
    b = _Builder(m, o, n, k)
    bases: dict[int, list] = {}
    for s, chains in sorted(b.chains().items()):
        elems = []
        for chain in chains:
            elems.extend((chain, f) for f in b.decorate(chain))
        elems.sort(key=_sort_key)
        if elems:
            bases[s] = elems
    top = max(bases) if bases else -1
    for s in range(0, top + 1):
        bases.setdefault(s, [])
    degrees = {s: [sum(b.degree_of(f) for f in e[1]) for e in elems] for s, elems in bases.items()}
    index = {s: {e: i for i, e in enumerate(elems)} for s, elems in bases.items()}
    faces: dict[int, list[SparseMatrix]] = {}
    for s in range(1, top + 1):
        mats = []
        for i in range(s + 1):
            cols = []
            for chain, factors in bases[s]:
                img = b.face(chain, factors, i)
                try:
                    cols.append({index[s - 1][e]: c for e, c in img.items()})
                except KeyError as exc:
                    raise AssertionError(f"face d_{i} left the normalized basis: {exc}") from None
            mats.append(SparseMatrix.from_columns(len(bases[s - 1]), cols))
        faces[s] = mats
    bc = BarComplex(k, bases, degrees, faces, b)
    if check:
        bc.check_simplicial()
    return bc


def _sort_key(elem):
    chain, factors = elem
    return (tuple(tuple(sorted(min(b) for b in p)) for p in chain), repr(factors))


def relative_composition_homology(m: SideModule, o: Operad, n: SideModule, max_arity: int,
                                  p: int | None = None) -> dict[int, dict[int, int]]:
    """arity -> total degree -> dim of H(B(M, O, N))."""
    return {k: bar_complex(m, o, n, k).homology(p) for k in range(1, max_arity + 1)}
