"""Symmetric groups acting on labeled bases.

Permutations are tuples in one-line notation on {1..n}; composition is
``(g*h)(i) = g(h(i))``.  A :class:`SymRep` stores one matrix per adjacent
transposition and every other group element is reached by multiplying
generators, memoized per representation.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from itertools import combinations, permutations
from math import comb, factorial
from typing import Callable, Hashable, Mapping, Sequence

from .linalg import SparseMatrix, rref


class ArityMismatch(ValueError):
    pass


class MaschkeError(ValueError):
    """Coinvariants requested in a characteristic dividing the group order."""


class MissingArity(KeyError):
    pass


# ---------------------------------------------------------------------------
# permutations


class Permutation(tuple):
    """Bijection of {1..n} in one-line notation."""

    def __new__(cls, images: Sequence[int]):
        images = tuple(int(i) for i in images)
        if sorted(images) != list(range(1, len(images) + 1)):
            raise ValueError(f"{images} is not a permutation of 1..{len(images)}")
        return super().__new__(cls, images)

    @classmethod
    def identity(cls, n: int) -> "Permutation":
        return cls(range(1, n + 1))

    @classmethod
    def transposition(cls, n: int, i: int) -> "Permutation":
        """The adjacent transposition s_i = (i i+1)."""
        img = list(range(1, n + 1))
        img[i - 1], img[i] = img[i], img[i - 1]
        return cls(img)

    @classmethod
    def from_cycles(cls, n: int, cycles: Sequence[Sequence[int]]) -> "Permutation":
        img = list(range(1, n + 1))
        for cyc in cycles:
            for a, b in zip(cyc, list(cyc[1:]) + [cyc[0]]):
                img[a - 1] = b
        return cls(img)

    @property
    def n(self) -> int:
        return len(self)

    def __call__(self, i: int) -> int:
        return self[i - 1]

    def __mul__(self, other: "Permutation") -> "Permutation":
        if len(self) != len(other):
            raise ArityMismatch("permutations of different sizes")
        return Permutation(self[other[i] - 1] for i in range(len(other)))

    def inverse(self) -> "Permutation":
        inv = [0] * len(self)
        for i, g in enumerate(self):
            inv[g - 1] = i + 1
        return Permutation(inv)

    def sign(self) -> int:
        return permutation_sign([i - 1 for i in self])

    def cycle_type(self) -> tuple[int, ...]:
        seen, lengths = set(), []
        for start in range(1, len(self) + 1):
            if start in seen:
                continue
            k, j = 0, start
            while j not in seen:
                seen.add(j)
                j = self(j)
                k += 1
            lengths.append(k)
        return tuple(sorted(lengths, reverse=True))

    def adjacent_word(self) -> list[int]:
        """Indices i with self = s_{i_1} s_{i_2} ... (leftmost applied last)."""
        # bubble sort self down to the identity: s_a ... s_b self = id
        arr = list(self)
        word = []
        changed = True
        while changed:
            changed = False
            for j in range(len(arr) - 1):
                if arr[j] > arr[j + 1]:
                    arr[j], arr[j + 1] = arr[j + 1], arr[j]
                    word.append(j + 1)
                    changed = True
        # arr = self * s_{w1} * s_{w2} ... ; so self = ... s_{w2} s_{w1}
        return word[::-1]


def permutation_sign(seq: Sequence) -> int:
    """Sign of the permutation sorting ``seq`` (distinct comparable items)."""
    seq = list(seq)
    sign = 1
    visited = [False] * len(seq)
    order = sorted(range(len(seq)), key=lambda i: seq[i])
    for i in range(len(seq)):
        if visited[i]:
            continue
        j, length = i, 0
        while not visited[j]:
            visited[j] = True
            j = order[j]
            length += 1
        if length % 2 == 0:
            sign = -sign
    return sign


def koszul_sign(degrees: Sequence[int], order: Sequence[int]) -> int:
    """Sign of reordering factors with ``degrees`` into positions ``order``.

    ``order[k]`` is the index of the factor placed k-th.
    """
    odd = 0
    parity = [d % 2 for d in degrees]
    for a in range(len(order)):
        if not parity[order[a]]:
            continue
        for b in range(a + 1, len(order)):
            if parity[order[b]] and order[b] < order[a]:
                odd ^= 1
    return -1 if odd else 1


@lru_cache(maxsize=None)
def all_permutations(n: int) -> tuple[Permutation, ...]:
    return tuple(Permutation(p) for p in permutations(range(1, n + 1)))


@lru_cache(maxsize=None)
def partitions(n: int) -> tuple[tuple[int, ...], ...]:
    """Integer partitions of n (weakly decreasing parts), lexicographically sorted."""

    def gen(rest, cap):
        if rest == 0:
            yield ()
            return
        for k in range(min(rest, cap), 0, -1):
            for tail in gen(rest - k, k):
                yield (k,) + tail

    return tuple(sorted(gen(n, n)))


def class_representative(lam: Sequence[int]) -> Permutation:
    n = sum(lam)
    cycles, start = [], 1
    for part in lam:
        cycles.append(list(range(start, start + part)))
        start += part
    return Permutation.from_cycles(n, cycles)


def z_lambda(lam: Sequence[int]) -> int:
    out = 1
    for part in set(lam):
        m = list(lam).count(part)
        out *= part ** m * factorial(m)
    return out


# ---------------------------------------------------------------------------
# representations


@dataclass(frozen=True, eq=False)
class SymRep:
    """A representation of Sigma_n on a labeled, degree-homogeneous basis."""

    n: int
    labels: tuple
    generators: tuple[SparseMatrix, ...]
    degrees: tuple[int, ...] = ()
    name: str = ""
    _memo: dict = field(default_factory=dict, repr=False, compare=False)

    def __post_init__(self):
        dim = len(self.labels)
        if not self.degrees:
            object.__setattr__(self, "degrees", (0,) * dim)
        if len(self.degrees) != dim:
            raise ValueError("one degree per basis label required")
        if len(self.generators) != max(self.n - 1, 0):
            raise ValueError(f"Sigma_{self.n} needs {max(self.n - 1, 0)} generator matrices")
        for g in self.generators:
            if g.shape != (dim, dim):
                raise ValueError("generator matrix has wrong shape")
            for r, c, _ in g.entries():
                if self.degrees[r] != self.degrees[c]:
                    raise ValueError("action must preserve homological degree")

    @property
    def dim(self) -> int:
        return len(self.labels)

    def index(self, label) -> int:
        idx = self._memo.get("index")
        if idx is None:
            idx = {lab: i for i, lab in enumerate(self.labels)}
            self._memo["index"] = idx
        return idx[label]

    def degree_dims(self) -> dict[int, int]:
        out: dict[int, int] = {}
        for d in self.degrees:
            out[d] = out.get(d, 0) + 1
        return dict(sorted(out.items()))

    def coxeter_failures(self) -> list[str]:
        """Violated Coxeter relations; empty when the generators define a rep."""
        gens, one = self.generators, SparseMatrix.identity(self.dim)
        bad = []
        for i, s in enumerate(gens, 1):
            if s @ s != one:
                bad.append(f"s_{i}^2")
        for i in range(len(gens) - 1):
            st = gens[i] @ gens[i + 1]
            if st @ st @ st != one:
                bad.append(f"(s_{i + 1} s_{i + 2})^3")
        for i in range(len(gens)):
            for j in range(i + 2, len(gens)):
                if gens[i] @ gens[j] != gens[j] @ gens[i]:
                    bad.append(f"(s_{i + 1} s_{j + 1})^2")
        return bad


def rep_from_action(n: int, labels: Sequence, swap: Callable[[Hashable, int], Mapping], degrees=(), name="") -> SymRep:
    """Build a rep from ``swap(label, i)``, the image of a basis label under s_i."""
    labels = tuple(labels)
    index = {lab: k for k, lab in enumerate(labels)}
    gens = []
    for i in range(1, n):
        cols = []
        for lab in labels:
            cols.append({index[t]: c for t, c in swap(lab, i).items() if c})
        gens.append(SparseMatrix.from_columns(len(labels), cols))
    return SymRep(n, labels, tuple(gens), tuple(degrees), name)


def trivial_rep(n: int, degree: int = 0) -> SymRep:
    return rep_from_action(n, [()], lambda lab, i: {lab: 1}, [degree], "trivial")


def sign_rep(n: int, degree: int = 0) -> SymRep:
    return rep_from_action(n, [()], lambda lab, i: {lab: -1}, [degree], "sign")


def regular_rep(n: int) -> SymRep:
    """Sigma_n acting on words (orderings of 1..n) by relabeling letters."""

    def swap(word, i):
        return {tuple(i + 1 if a == i else i if a == i + 1 else a for a in word): 1}

    return rep_from_action(n, sorted(permutations(range(1, n + 1))), swap, name="regular")


def act(rep: SymRep, g: Sequence[int]) -> SparseMatrix:
    """Matrix of ``g``; functorial: act(g*h) = act(g) @ act(h)."""
    g = Permutation(g)
    if g.n != rep.n:
        raise ArityMismatch(f"permutation of {g.n} letters acting on a Sigma_{rep.n} rep")
    cache = rep._memo.setdefault("act", {})
    if g in cache:
        return cache[g]
    m = SparseMatrix.identity(rep.dim)
    for i in g.adjacent_word()[::-1]:
        m = rep.generators[i - 1] @ m
    cache[g] = m
    return m


def group_elements(n: int, generators: Sequence[int] | None = None) -> list[Permutation]:
    """Elements of the subgroup generated by the listed adjacent transpositions."""
    if generators is None:
        return list(all_permutations(n))
    gens = [Permutation.transposition(n, i) for i in generators]
    seen = {Permutation.identity(n)}
    queue = deque(seen)
    while queue:
        h = queue.popleft()
        for s in gens:
            g = s * h
            if g not in seen:
                seen.add(g)
                queue.append(g)
    return sorted(seen)


def young_generators(composition: Sequence[int]) -> list[int]:
    gens, start = [], 1
    for part in composition:
        gens.extend(range(start, start + part - 1))
        start += part
    return gens


def tensor_rep(a: SymRep, b: SymRep) -> SymRep:
    """Diagonal action on A(n) (x) B(n); no Koszul signs arise from relabeling."""
    if a.n != b.n:
        raise ArityMismatch("tensor of representations of different arity")
    labels = [(x, y) for x in a.labels for y in b.labels]
    degrees = [dx + dy for dx in a.degrees for dy in b.degrees]
    acols = [g.columns() for g in a.generators]
    bcols = [g.columns() for g in b.generators]

    def swap(lab, i):
        x, y = lab
        out = {}
        for xr, xv in acols[i - 1][a.index(x)].items():
            for yr, yv in bcols[i - 1][b.index(y)].items():
                out[(a.labels[xr], b.labels[yr])] = xv * yv
        return out

    return rep_from_action(a.n, labels, swap, degrees, f"{a.name}*{b.name}")


def induce(a: SymRep, b: SymRep) -> SymRep:
    """Ind from Sigma_a x Sigma_b to Sigma_{a+b} of A (x) B.

    Basis labels are (shuffle, label_a, label_b) where the shuffle is the
    sorted tuple of positions carrying the A-inputs; shuffles are the
    minimal-length coset representatives, in lexicographic order.
    """
    n = a.n + b.n
    acols = [g.columns() for g in a.generators]
    bcols = [g.columns() for g in b.generators]
    labels, degrees = [], []
    for shuffle in combinations(range(1, n + 1), a.n):
        for x, dx in zip(a.labels, a.degrees):
            for y, dy in zip(b.labels, b.degrees):
                labels.append((shuffle, x, y))
                degrees.append(dx + dy)

    def swap(lab, i):
        shuffle, x, y = lab
        ina, inb = i in shuffle, i + 1 in shuffle
        if ina and inb:
            pos = shuffle.index(i) + 1
            return {(shuffle, a.labels[r], y): v for r, v in acols[pos - 1][a.index(x)].items()}
        if not ina and not inb:
            rest = [j for j in range(1, n + 1) if j not in shuffle]
            pos = rest.index(i) + 1
            return {(shuffle, x, b.labels[r]): v for r, v in bcols[pos - 1][b.index(y)].items()}
        moved = tuple(sorted(i + 1 if j == i else i if j == i + 1 else j for j in shuffle))
        return {(moved, x, y): 1}

    return rep_from_action(n, labels, swap, degrees, f"Ind({a.name},{b.name})")


def direct_sum(reps: Sequence[SymRep], tags: Sequence | None = None) -> SymRep:
    if not reps:
        raise ValueError("empty direct sum")
    n = reps[0].n
    tags = list(tags) if tags is not None else list(range(len(reps)))
    labels, degrees, blocks = [], [], []
    for t, r in zip(tags, reps):
        if r.n != n:
            raise ArityMismatch("direct sum of different arities")
        labels.extend((t, lab) for lab in r.labels)
        degrees.extend(r.degrees)
    from .linalg import block_diag

    gens = tuple(block_diag([r.generators[i] for r in reps]) for i in range(n - 1))
    return SymRep(n, tuple(labels), gens, tuple(degrees))


def zero_rep(n: int) -> SymRep:
    return SymRep(n, (), tuple(SparseMatrix.zeros(0, 0) for _ in range(max(n - 1, 0))))


# ---------------------------------------------------------------------------
# coinvariants


def _is_monomial(rep: SymRep, gens: Sequence[int]) -> bool:
    for i in gens:
        for col in rep.generators[i - 1].columns():
            if len(col) != 1 or abs(next(iter(col.values()))) != 1:
                return False
    return True


def averaging_idempotent(rep: SymRep, subgroup: Sequence[int] | None = None) -> SparseMatrix:
    elements = group_elements(rep.n, young_generators(subgroup) if subgroup else None)
    total = SparseMatrix.zeros(rep.dim, rep.dim)
    for g in elements:
        total = total + act(rep, g)
    return total.scale(Fraction(1, len(elements)))


def coinvariants(rep: SymRep, subgroup: Sequence[int] | None = None, p: int | None = None):
    """Coinvariants under Sigma_n or the Young subgroup ``subgroup`` (a composition of n).

    Returns ``(dim, projection)``: the projection sends a vector to the
    coordinates of its averaged image in the basis formed by the first
    independent columns of the averaging idempotent.
    """
    if subgroup is not None and sum(subgroup) != rep.n:
        raise ArityMismatch("Young subgroup composition must sum to n")
    order = 1
    for part in subgroup or [rep.n]:
        order *= factorial(part)
    if p is not None and order % p == 0:
        raise MaschkeError(f"characteristic {p} divides the group order {order}; averaging is undefined")
    gens = young_generators(subgroup) if subgroup else list(range(1, rep.n))
    if _is_monomial(rep, gens):
        return _monomial_coinvariants(rep, gens)
    e = averaging_idempotent(rep, subgroup)
    reduced, pivots = rref(e)
    proj = SparseMatrix(len(reduced), rep.dim, ((r, c, v) for r, row in enumerate(reduced) for c, v in row.items()))
    return len(reduced), proj


def _monomial_coinvariants(rep: SymRep, gens: Sequence[int]):
    # signed orbits: an orbit survives iff no group element maps a vector to its negative
    cols = [rep.generators[i - 1].columns() for i in gens]
    sign_of: dict[int, int] = {}
    orbit_of: dict[int, int] = {}
    surviving: list[int] = []
    dead: set[int] = set()
    for start in range(rep.dim):
        if start in orbit_of:
            continue
        sign_of[start], orbit_of[start] = 1, start
        queue, ok = deque([start]), True
        while queue:
            v = queue.popleft()
            for gc in cols:
                (w, s), = gc[v].items()
                s = int(s) * sign_of[v]
                if w in orbit_of:
                    if sign_of[w] != s:
                        ok = False
                else:
                    orbit_of[w], sign_of[w] = start, s
                    queue.append(w)
        if ok:
            surviving.append(start)
        else:
            dead.add(start)
    pos = {rep_: k for k, rep_ in enumerate(surviving)}
    entries = [(pos[orbit_of[v]], v, sign_of[v]) for v in range(rep.dim) if orbit_of[v] in pos]
    return len(surviving), SparseMatrix(len(surviving), rep.dim, entries)


# ---------------------------------------------------------------------------
# characters and plethysm


@dataclass(frozen=True)
class ClassFunction:
    n: int
    values: dict  # partition -> Fraction

    def __call__(self, lam) -> Fraction:
        return self.values[tuple(lam)]

    def dim(self) -> Fraction:
        return self.values[(1,) * self.n] if self.n else Fraction(1)


def character_of(rep: SymRep, degree: int | None = None) -> ClassFunction:
    """Trace of each conjugacy class, optionally restricted to one degree."""
    keep = [i for i, d in enumerate(rep.degrees) if degree is None or d == degree]
    values = {}
    for lam in partitions(rep.n):
        m = act(rep, class_representative(lam))
        values[lam] = sum((m[i, i] for i in keep), Fraction(0))
    return ClassFunction(rep.n, values)


def graded_character(rep: SymRep) -> dict[int, ClassFunction]:
    return {d: character_of(rep, d) for d in sorted(set(rep.degrees))}


# symmetric functions in the power-sum basis, graded by a homological degree:
# {(partition, degree): coefficient}
SymFunc = dict


def frobenius(chars: Mapping[int, ClassFunction]) -> SymFunc:
    out: SymFunc = {}
    for d, cf in chars.items():
        for lam, v in cf.values.items():
            if v:
                key = (tuple(sorted(lam, reverse=True)), d)
                out[key] = out.get(key, 0) + Fraction(v, z_lambda(lam))
    return out


def _mul(f: SymFunc, g: SymFunc, cap: int) -> SymFunc:
    out: SymFunc = {}
    for (lf, df), cf in f.items():
        for (lg, dg), cg in g.items():
            if sum(lf) + sum(lg) > cap:
                continue
            key = (tuple(sorted(lf + lg, reverse=True)), df + dg)
            out[key] = out.get(key, 0) + cf * cg
    return {k: v for k, v in out.items() if v}


def _adams(f: SymFunc, m: int, cap: int) -> SymFunc:
    # p_m[f] with the super sign (-1)^{d(m-1)} for homological degree d
    out = {}
    for (lam, d), c in f.items():
        if sum(lam) * m <= cap:
            key = (tuple(x * m for x in lam), d * m)
            out[key] = out.get(key, 0) + c * (-1) ** ((d * (m - 1)) % 2)
    return out


def plethysm(outer: Mapping[int, SymFunc], inner: SymFunc, cap: int) -> SymFunc:
    """sum_j outer[j][inner], truncated to symmetric functions of degree <= cap."""
    total: SymFunc = {}
    adams_cache: dict[int, SymFunc] = {}
    for j, fa in outer.items():
        for (lam, da), ca in fa.items():
            term: SymFunc = {((), da): ca}
            for part in lam:
                if part not in adams_cache:
                    adams_cache[part] = _adams(inner, part, cap)
                term = _mul(term, adams_cache[part], cap)
                if not term:
                    break
            for k, v in term.items():
                total[k] = total.get(k, 0) + v
    return {k: v for k, v in total.items() if v}


def plethysm_character(outer: Mapping[int, Mapping[int, ClassFunction]],
                       inner: Mapping[int, Mapping[int, ClassFunction]], n: int) -> dict[int, ClassFunction]:
    """Graded character of (A o B)(n) predicted from characters of A and B."""
    for j in range(1, n + 1):
        if j not in outer or j not in inner:
            raise MissingArity(f"characters required for every arity <= {n}; missing {j}")
    fa = {j: frobenius(outer[j]) for j in range(1, n + 1)}
    fb: SymFunc = {}
    for j in range(1, n + 1):
        for k, v in frobenius(inner[j]).items():
            fb[k] = fb.get(k, 0) + v
    result = plethysm(fa, fb, n)
    out: dict[int, dict] = {}
    for (lam, d), c in result.items():
        if sum(lam) == n:
            out.setdefault(d, {mu: Fraction(0) for mu in partitions(n)})[_canon(lam)] = c * z_lambda(lam)
    return {d: ClassFunction(n, vals) for d, vals in sorted(out.items())}


def _canon(lam):
    # partitions() stores parts in decreasing order
    return tuple(sorted(lam, reverse=True))


def plethysm_dim(outer, inner, n: int) -> int:
    """Total dimension of (A o B)(n) from the plethysm of Frobenius characteristics."""
    chars = plethysm_character(outer, inner, n)
    return int(sum((cf.dim() for cf in chars.values()), Fraction(0)))


def frobenius_induced_character(a: ClassFunction, b: ClassFunction) -> ClassFunction:
    """Character of Ind_{Sigma_a x Sigma_b}^{Sigma_{a+b}} via the product of characteristics."""
    fa = frobenius({0: a})
    fb = frobenius({0: b})
    prod = _mul(fa, fb, a.n + b.n)
    vals = {lam: Fraction(0) for lam in partitions(a.n + b.n)}
    for (lam, _), c in prod.items():
        vals[_canon(lam)] += c * z_lambda(lam)
    return ClassFunction(a.n + b.n, vals)
