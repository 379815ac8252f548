"""Operads in graded vector spaces, presented by partial compositions.

Elements live on finite label sets: every label is a nonempty frozenset of
leaf indices, ordered by its minimum.  ``compose(a, x, b)`` substitutes
``b`` (on labels T) into the input ``x`` of ``a`` (on labels S), producing an
element on (S - {x}) | T.  Relabeling along bijections of label sets gives
the symmetric-group actions, so equivariance becomes naturality and is
checked as such.
"""

from __future__ import annotations

from fractions import Fraction
from functools import lru_cache
from itertools import permutations
from typing import Callable, Iterable, Mapping

from . import freealg
from .freealg import lkey
from .symmetry import SymRep, permutation_sign, rep_from_action


def leaves(n: int) -> tuple:
    return tuple(frozenset({i}) for i in range(1, n + 1))


def sort_labels(labels: Iterable) -> tuple:
    return tuple(sorted(labels, key=lkey))


def _add(acc: dict, key, c) -> None:
    v = acc.get(key, 0) + c
    if v:
        acc[key] = v
    else:
        acc.pop(key, None)


def set_partitions(items: tuple) -> list[tuple[tuple, ...]]:
    """All set partitions of ``items``; blocks keep item order and are ordered by first item."""
    if not items:
        return [()]
    first, rest = items[0], items[1:]
    out = []
    for part in set_partitions(rest):
        out.append(((first,),) + part)
        for i, block in enumerate(part):
            merged = tuple(sorted((first,) + block, key=lkey))
            new = part[:i] + (merged,) + part[i + 1:]
            out.append(tuple(sorted(new, key=lambda b: lkey(b[0]))))
    return out


class UnknownOperad(KeyError):
    pass


class MorphismValidationError(ValueError):
    pass


class Operad:
    """Base class; subclasses supply basis, degree, compose, relabel and unit."""

    name = "O"

    def basis(self, labels: tuple) -> list:
        raise NotImplementedError

    def degree(self, key) -> int:
        raise NotImplementedError

    def compose(self, a, x, b) -> dict:
        raise NotImplementedError

    def relabel(self, a, mapping: Mapping) -> dict:
        raise NotImplementedError

    def unit(self, label):
        raise NotImplementedError

    def expression(self, key):
        raise NotImplementedError(f"{self.name} has no generator expressions")

    def generators(self) -> dict[str, dict]:
        """Binary generators as elements on leaves(2)."""
        return {}

    # -- derived structure ---------------------------------------------------

    def compose_elements(self, a: Mapping, x, b: Mapping) -> dict:
        out: dict = {}
        for ka, ca in a.items():
            for kb, cb in b.items():
                for k, v in self.compose(ka, x, kb).items():
                    _add(out, k, ca * cb * v)
        return out

    def relabel_element(self, a: Mapping, mapping: Mapping) -> dict:
        out: dict = {}
        for ka, ca in a.items():
            for k, v in self.relabel(ka, mapping).items():
                _add(out, k, ca * v)
        return out

    def dims(self, n: int) -> dict[int, int]:
        out: dict[int, int] = {}
        for key in self.basis(leaves(n)):
            d = self.degree(key)
            out[d] = out.get(d, 0) + 1
        return dict(sorted(out.items()))

    def dim(self, n: int) -> int:
        return len(self.basis(leaves(n)))

    def symrep(self, n: int) -> SymRep:
        labs = leaves(n)
        keys = self.basis(labs)

        def swap(key, i):
            mapping = {l: l for l in labs}
            mapping[labs[i - 1]], mapping[labs[i]] = labs[i], labs[i - 1]
            return self.relabel(key, mapping)

        return rep_from_action(n, keys, swap, [self.degree(k) for k in keys], f"{self.name}({n})")

    def symseq(self, max_arity: int):
        from .symseq import SymSeq

        return SymSeq(max_arity, {n: self.symrep(n) for n in range(1, max_arity + 1)}, self.name)

    def __repr__(self) -> str:
        return f"<Operad {self.name}>"


class One(Operad):
    """The trivial operad: a unit in arity 1 and nothing else."""

    name = "One"

    def basis(self, labels):
        return [(labels[0],)] if len(labels) == 1 else []

    def degree(self, key):
        return 0

    def compose(self, a, x, b):
        if a != (x,) or len(b) != 1:
            raise ValueError("One only composes units")
        return {b: Fraction(1)}

    def relabel(self, a, mapping):
        return {(mapping[a[0]],): Fraction(1)}

    def unit(self, label):
        return (label,)

    def expression(self, key):
        return ("leaf", key[0])


class Com(Operad):
    name = "Com"

    def generators(self):
        return {"mu": {(leaves(2)[0], leaves(2)[1]): Fraction(1)}}

    def basis(self, labels):
        return [sort_labels(labels)] if labels else []

    def degree(self, key):
        return 0

    def compose(self, a, x, b):
        return {sort_labels([l for l in a if l != x] + list(b)): Fraction(1)}

    def relabel(self, a, mapping):
        return {sort_labels(mapping[l] for l in a): Fraction(1)}

    def unit(self, label):
        return (label,)

    def expression(self, key):
        tree = ("leaf", key[0])
        for l in key[1:]:
            tree = ("mu", tree, ("leaf", l))
        return tree


class Ass(Operad):
    """Words in the labels; Sigma_n acts by the regular representation."""

    name = "Ass"

    def generators(self):
        return {"mu": {(leaves(2)[0], leaves(2)[1]): Fraction(1)}}

    @lru_cache(maxsize=None)
    def basis(self, labels):
        return sorted(permutations(labels), key=lambda w: tuple(lkey(l) for l in w))

    def degree(self, key):
        return 0

    def compose(self, a, x, b):
        i = a.index(x)
        return {a[:i] + b + a[i + 1:]: Fraction(1)}

    def relabel(self, a, mapping):
        return {tuple(mapping[l] for l in a): Fraction(1)}

    def unit(self, label):
        return (label,)

    def expression(self, key):
        tree = ("leaf", key[0])
        for l in key[1:]:
            tree = ("mu", tree, ("leaf", l))
        return tree


def _lie_words(labels: tuple) -> list:
    labels = sort_labels(labels)
    first, rest = labels[0], labels[1:]
    words = [(first,) + p for p in permutations(rest)]
    return sorted(words, key=lambda w: tuple(lkey(l) for l in w))


class Lie(Operad):
    """Classical Lie operad; basis of min-first left-normed brackets, dim (n-1)!."""

    name = "Lie"

    def generators(self):
        return {"br": {(leaves(2)[0], leaves(2)[1]): Fraction(1)}}

    @lru_cache(maxsize=None)
    def basis(self, labels):
        return _lie_words(labels) if labels else []

    def degree(self, key):
        return 0

    @lru_cache(maxsize=None)
    def _compose(self, a, x, b):
        values = {l: freealg.generator(l) for l in a if l != x}
        values[x] = {(b,): Fraction(1)}
        return tuple((m[0], c) for m, c in freealg.evaluate((a,), values, 0).items())

    def compose(self, a, x, b):
        return dict(self._compose(a, x, b))

    def relabel(self, a, mapping):
        return dict(freealg.normal_word(tuple(mapping[l] for l in a), 0))

    def unit(self, label):
        return (label,)

    def expression(self, key):
        tree = ("leaf", key[0])
        for l in key[1:]:
            tree = ("br", tree, ("leaf", l))
        return tree


class Poisson(Operad):
    """Homology of the little n-disks: products of Lie words with a degree n-1 bracket."""

    def __init__(self, n: int):
        if n < 2:
            raise ValueError("Poisson(n) requires n >= 2; use pois() for n = 0, 1")
        self.n = n
        self.d = n - 1
        self.name = f"Pois{n}"

    def __eq__(self, other):
        return isinstance(other, Poisson) and other.n == self.n

    def __hash__(self):
        return hash(("Pois", self.n))

    @lru_cache(maxsize=None)
    def basis(self, labels):
        out = []
        for part in set_partitions(sort_labels(labels)):
            blocks = [_lie_words(b) for b in part]
            combos = [()]
            for ws in blocks:
                combos = [c + (w,) for c in combos for w in ws]
            out.extend(combos)
        return sorted(out, key=lambda m: (self.degree(m), tuple(tuple(lkey(l) for l in w) for w in m)))

    def degree(self, key):
        return freealg.monomial_degree(key, self.d)

    @lru_cache(maxsize=None)
    def _compose(self, a, x, b):
        values = {l: freealg.generator(l) for w in a for l in w if l != x}
        values[x] = {b: Fraction(1)}
        # b passes the factors right of its slot, and the inline bracket
        # [u, v] carries (-1)^{d|u|} relative to the bracket operation
        j = next(i for i, w in enumerate(a) if x in w)
        later = sum(freealg.word_degree(w, self.d) for w in a[j + 1:])
        inside = self.d * (len(a[j]) - 1 - a[j].index(x))
        sign = -1 if ((later + inside) * self.degree(b)) % 2 else 1
        return tuple((k, sign * v) for k, v in freealg.evaluate(a, values, self.d).items())

    def compose(self, a, x, b):
        return dict(self._compose(a, x, b))

    def relabel(self, a, mapping):
        return freealg.evaluate(a, {l: freealg.generator(mapping[l]) for w in a for l in w}, self.d)

    def unit(self, label):
        return ((label,),)

    def generators(self):
        l1, l2 = leaves(2)
        return {"mu": {((l1,), (l2,)): Fraction(1)}, "br": {((l1, l2),): Fraction(1)}}

    def expression(self, key):
        def word_tree(w):
            tree = ("leaf", w[0])
            for l in w[1:]:
                tree = ("br", tree, ("leaf", l))
            return tree

        tree = word_tree(key[0])
        for w in key[1:]:
            tree = ("mu", tree, word_tree(w))
        return tree


class Determinant(Operad):
    """End of a one-dimensional space in degree -sign: arity-n part is sgn_n in degree sign*(n-1).

    ``sign=+1`` is the suspension operad End(S^-1); ``sign=-1`` is End(S^1).
    """

    def __init__(self, sign: int = 1):
        if sign not in (1, -1):
            raise ValueError("sign must be +1 or -1")
        self.sign = sign
        self.name = "Lambda" if sign == 1 else "Lambda^-1"

    def __eq__(self, other):
        return isinstance(other, Determinant) and other.sign == self.sign

    def __hash__(self):
        return hash(("Det", self.sign))

    def basis(self, labels):
        return [("e",) + sort_labels(labels)] if labels else []

    def degree(self, key):
        return self.sign * (len(key) - 2)

    def compose(self, a, x, b):
        s_labels, t_labels = a[1:], b[1:]
        pos = s_labels.index(x)
        inserted = s_labels[:pos] + t_labels + s_labels[pos + 1:]
        sign = permutation_sign([lkey(l) for l in inserted])
        if ((len(t_labels) - 1) * pos) % 2:
            sign = -sign
        return {("e",) + sort_labels(inserted): Fraction(sign)}

    def relabel(self, a, mapping):
        images = [mapping[l] for l in a[1:]]
        return {("e",) + sort_labels(images): Fraction(permutation_sign([lkey(l) for l in images]))}

    def unit(self, label):
        return ("e", label)


class LevelwiseTensor(Operad):
    """(P (x)_lev Q)(n) = P(n) (x) Q(n) with the Koszul-signed composition."""

    def __init__(self, p: Operad, q: Operad, name: str | None = None):
        self.p, self.q = p, q
        self.name = name or f"({p.name}(x){q.name})"

    def __eq__(self, other):
        return isinstance(other, LevelwiseTensor) and (other.p, other.q) == (self.p, self.q)

    def __hash__(self):
        return hash(("lev", self.p, self.q))

    @lru_cache(maxsize=None)
    def basis(self, labels):
        return [(a, b) for a in self.p.basis(labels) for b in self.q.basis(labels)]

    def degree(self, key):
        return self.p.degree(key[0]) + self.q.degree(key[1])

    @lru_cache(maxsize=None)
    def _compose(self, a, x, b):
        sign = -1 if (self.q.degree(a[1]) * self.p.degree(b[0])) % 2 else 1
        left = self.p.compose(a[0], x, b[0])
        right = self.q.compose(a[1], x, b[1])
        out = {}
        for k1, c1 in left.items():
            for k2, c2 in right.items():
                out[(k1, k2)] = sign * c1 * c2
        return tuple(out.items())

    def compose(self, a, x, b):
        return dict(self._compose(a, x, b))

    def relabel(self, a, mapping):
        out = {}
        for k1, c1 in self.p.relabel(a[0], mapping).items():
            for k2, c2 in self.q.relabel(a[1], mapping).items():
                out[(k1, k2)] = c1 * c2
        return out

    def unit(self, label):
        return (self.p.unit(label), self.q.unit(label))


def suspend_operad(o: Operad, k: int) -> Operad:
    """k-fold operadic suspension, realized as levelwise tensor with Lambda^{+-1}."""
    out = o
    for _ in range(abs(k)):
        out = LevelwiseTensor(out, Determinant(1 if k > 0 else -1))
    if k:
        out.name = f"s^{k}{o.name}"
    return out


def pois(n: int) -> Operad:
    """Homology of E_n: One for n=0, Ass for n=1, Poisson(n) above."""
    if n < 0:
        raise ValueError("n must be nonnegative")
    if n == 0:
        return ONE
    if n == 1:
        return ASS
    return _poisson(n)


@lru_cache(maxsize=None)
def _poisson(n: int) -> Poisson:
    return Poisson(n)


ONE, COM, ASS, LIE = One(), Com(), Ass(), Lie()
SPECTRAL_LIE = suspend_operad(LIE, -1)
SPECTRAL_LIE.name = "SpectralLie"


def builtin(name: str, n: int | None = None, validate_arity: int | None = None) -> Operad:
    """Named operad; validated by :func:`check_operad_axioms` when ``validate_arity`` is set."""
    table = {"One": ONE, "Com": COM, "Ass": ASS, "Lie": LIE, "SpectralLie": SPECTRAL_LIE}
    if name in table:
        op = table[name]
    elif name in ("Pois", "Poisson"):
        if n is None:
            raise ValueError("Pois requires a parameter n")
        op = pois(n)
    else:
        raise UnknownOperad(name)
    if validate_arity:
        report = check_operad_axioms(op, validate_arity)
        if report:
            raise MorphismValidationError(f"{op.name} failed its axioms: {report[:3]}")
    return op


# ---------------------------------------------------------------------------
# axioms


def _fresh(n: int, start: int) -> tuple:
    return tuple(frozenset({i}) for i in range(start, start + n))


def check_operad_axioms(o: Operad, max_arity: int) -> list[str]:
    """Every violated identity up to ``max_arity``; an empty list means pass."""
    failures: list[str] = []
    one = Fraction(1)
    # units
    for n in range(1, max_arity + 1):
        labs = leaves(n)
        for a in o.basis(labs):
            y = frozenset({n + 1})
            if o.compose(o.unit(y), y, a) != {a: one}:
                failures.append(f"left unit fails on {a}")
            for x in labs:
                back = o.compose(a, x, o.unit(x))
                if back != {a: one}:
                    failures.append(f"right unit fails on {a} at {set(x)}")
    # triples of non-unit operations
    for m in range(2, max_arity + 1):
        for k in range(2, max_arity - m + 2):
            S, T = leaves(m), _fresh(k, m + 1)
            for a in o.basis(S):
                for b in o.basis(T):
                    for x in S:
                        ab = o.compose(a, x, b)
                        U = sort_labels([l for l in S if l != x] + list(T))
                        _check_naturality(o, a, x, b, ab, U, failures)
                        for l in range(2, max_arity - m - k + 3):
                            R = _fresh(l, m + k + 1)
                            for c in o.basis(R):
                                _check_assoc(o, a, x, b, c, ab, S, T, failures)
    return failures


def _check_naturality(o, a, x, b, ab, U, failures):
    S = [l for l in U if l not in set(_fresh_labels(o, b))]
    for i in range(len(U) - 1):
        f = {l: l for l in U}
        f[U[i]], f[U[i + 1]] = U[i + 1], U[i]
        lhs = o.relabel_element(ab, f)
        fa = {l: f[l] for l in S}
        fa[x] = x
        fb = {l: f[l] for l in U if l not in S}
        rhs = o.compose_elements(o.relabel(a, fa), x, o.relabel(b, fb))
        if lhs != rhs:
            failures.append(f"equivariance fails: {a} o_{set(x)} {b} under swap {set(U[i])}<->{set(U[i + 1])}")


def _fresh_labels(o, b):
    return _key_labels(o, b)


def _check_assoc(o, a, x, b, c, ab, S, T, failures):
    db, dc = o.degree(b), o.degree(c)
    for y in T:
        lhs = o.compose_elements(ab, y, {c: 1})
        rhs = o.compose_elements({a: 1}, x, o.compose(b, y, c))
        if lhs != rhs:
            failures.append(f"sequential associativity fails: ({a} o {b}) o {c} at {set(x)},{set(y)}")
    for y in S:
        if y == x:
            continue
        lhs = o.compose_elements(ab, y, {c: 1})
        sign = -1 if (db * dc) % 2 else 1
        rhs = o.compose_elements(o.compose(a, y, c), x, {b: sign})
        if lhs != rhs:
            failures.append(f"parallel associativity fails: {a} o {b}, {c} at {set(x)},{set(y)}")


# ---------------------------------------------------------------------------
# morphisms


def leaf_set(tree) -> frozenset:
    if tree[0] == "leaf":
        return tree[1]
    return leaf_set(tree[1]) | leaf_set(tree[2])


class OperadMorphism:
    """A degree-preserving map of operads given on basis elements."""

    def __init__(self, source: Operad, target: Operad, fn: Callable, name: str = "f"):
        self.source, self.target, self._fn, self.name = source, target, fn, name
        self._cache: dict = {}

    def __call__(self, key) -> dict:
        if key not in self._cache:
            self._cache[key] = {k: v for k, v in self._fn(key).items() if v}
        return self._cache[key]

    def apply(self, elem: Mapping) -> dict:
        out: dict = {}
        for k, c in elem.items():
            for k2, v in self(k).items():
                _add(out, k2, c * v)
        return out

    def matrices(self, n: int) -> dict[int, "SparseMatrix"]:
        """Per-degree matrices on the arity-n bases."""
        from .linalg import SparseMatrix

        src, tgt = self.source.basis(leaves(n)), self.target.basis(leaves(n))
        out = {}
        for d in sorted({self.source.degree(k) for k in src} | {self.target.degree(k) for k in tgt}):
            cols = [k for k in src if self.source.degree(k) == d]
            rows = [k for k in tgt if self.target.degree(k) == d]
            ridx = {k: i for i, k in enumerate(rows)}
            entries = [(ridx[k2], j, v) for j, k in enumerate(cols) for k2, v in self(k).items()]
            out[d] = SparseMatrix(len(rows), len(cols), entries)
        return out

    def symseq_map(self, max_arity: int):
        from .symseq import SymSeqMap

        return SymSeqMap(self.source.symseq(max_arity), self.target.symseq(max_arity),
                         {n: self.matrices(n) for n in range(1, max_arity + 1)})

    def validate(self, max_arity: int) -> list[str]:
        failures = []
        src, tgt = self.source, self.target
        for n in range(1, max_arity + 1):
            labs = leaves(n)
            for a in src.basis(labs):
                for k in self(a):
                    if tgt.degree(k) != src.degree(a):
                        failures.append(f"{self.name} does not preserve degree on {a}")
                for i in range(n - 1):
                    f = {l: l for l in labs}
                    f[labs[i]], f[labs[i + 1]] = labs[i + 1], labs[i]
                    if self.apply(src.relabel(a, f)) != tgt.relabel_element(self(a), f):
                        failures.append(f"{self.name} not equivariant on {a}")
        y = frozenset({1})
        if self(src.unit(y)) != {tgt.unit(y): 1}:
            failures.append(f"{self.name} does not preserve the unit")
        for m in range(2, max_arity + 1):
            for k in range(2, max_arity - m + 2):
                S, T = leaves(m), _fresh(k, m + 1)
                for a in src.basis(S):
                    fa = self(a)
                    for b in src.basis(T):
                        fb = self(b)
                        for x in S:
                            lhs = self.apply(src.compose(a, x, b))
                            rhs = tgt.compose_elements(fa, x, fb)
                            if lhs != rhs:
                                failures.append(f"{self.name} fails on {a} o_{set(x)} {b}")
        return failures

    def then(self, other: "OperadMorphism") -> "OperadMorphism":
        """The composite ``other . self``."""
        return OperadMorphism(self.source, other.target, lambda k: other.apply(self(k)),
                              f"{other.name}.{self.name}")


def evaluate_expression(target: Operad, tree, images: Mapping[str, dict]) -> dict:
    """Evaluate a generator expression in ``target``; images live on leaves(2)."""
    if tree[0] == "leaf":
        return {target.unit(tree[1]): Fraction(1)}
    gen, left, right = tree
    img = images[gen]
    if not img:
        return {}
    A, B = leaf_set(left), leaf_set(right)
    l1, l2 = leaves(2)
    g = target.relabel_element(img, {l1: A, l2: B})
    vl = evaluate_expression(target, left, images)
    if not vl:
        return {}
    out = target.compose_elements(g, A, vl)
    vr = evaluate_expression(target, right, images)
    return target.compose_elements(out, B, vr)


def expression_coefficient(o: Operad, key) -> Fraction:
    """c with tree(generators) = c * key, where tree = o.expression(key)."""
    value = evaluate_expression(o, o.expression(key), o.generators())
    if set(value) != {key}:
        raise ValueError(f"expression of {key} in {o.name} does not evaluate to a multiple of it")
    return Fraction(value[key])


def from_generators(source: Operad, target: Operad, images: Mapping[str, dict], name: str) -> OperadMorphism:
    def fn(key):
        value = evaluate_expression(target, source.expression(key), images)
        c = expression_coefficient(source, key)
        return {k: v / c for k, v in value.items()}

    return OperadMorphism(source, target, fn, name)


def identity_morphism(o: Operad) -> OperadMorphism:
    return OperadMorphism(o, o, lambda k: {k: Fraction(1)}, f"id_{o.name}")


def augmentation(o: Operad) -> OperadMorphism:
    """O -> One: identity in arity 1, zero above (O reduced)."""

    def fn(key):
        labs = _key_labels(o, key)
        return {(labs[0],): Fraction(1)} if len(labs) == 1 else {}

    return OperadMorphism(o, ONE, fn, f"aug_{o.name}")


def unit_map(o: Operad) -> OperadMorphism:
    return OperadMorphism(ONE, o, lambda k: {o.unit(k[0]): Fraction(1)}, f"unit_{o.name}")


def _key_labels(o: Operad, key) -> tuple:
    """Labels an element lives on, recovered structurally."""
    if isinstance(o, LevelwiseTensor):
        return _key_labels(o.q, key[1])
    if isinstance(o, Determinant):
        return key[1:]
    if isinstance(o, Poisson):
        return sort_labels(l for w in key for l in w)
    return sort_labels(key)


def _product2(target: Operad) -> dict:
    l1, l2 = leaves(2)
    if isinstance(target, Com):
        return {(l1, l2): Fraction(1)}
    if isinstance(target, Ass):
        return {(l1, l2): Fraction(1)}
    if isinstance(target, Poisson):
        return {((l1,), (l2,)): Fraction(1)}
    raise TypeError(f"{target.name} has no commutative product generator")


def _bracket2(target: Operad) -> dict:
    l1, l2 = leaves(2)
    if isinstance(target, (Ass,)):
        return {(l1, l2): Fraction(1), (l2, l1): Fraction(-1)}
    if isinstance(target, Lie):
        return {(l1, l2): Fraction(1)}
    if isinstance(target, Poisson):
        return {((l1, l2),): Fraction(1)}
    raise TypeError(f"{target.name} has no bracket generator")


def iota(m: int, n: int | None) -> OperadMorphism:
    """Homology of E_m -> E_{m+n}; ``n=None`` targets E_infinity (Com)."""
    source = pois(m)
    if n == 0:
        return identity_morphism(source)
    target = COM if n is None else pois(m + n)
    if m == 0:
        return unit_map(target)
    images = {"mu": _product2(target), "br": {}}
    return from_generators(source, target, images, f"iota({m},{'inf' if n is None else n})")


def beta_shadow(n: int, scalar=1) -> OperadMorphism:
    """Homology of beta: E_{n+1} -> s E_n; product to 0, bracket to ``scalar`` * shifted bracket."""
    source = pois(n + 1)
    if n == 0:
        f = augmentation(source)
        f.name = "beta(0)"
        return f
    base = pois(n)
    target = suspended(base, 1)
    l1, l2 = leaves(2)
    e = ("e", l1, l2)
    bracket = {(k, e): Fraction(scalar) * v for k, v in _bracket2(base).items()}
    return from_generators(source, target, {"mu": {}, "br": bracket}, f"beta({n})")


@lru_cache(maxsize=None)
def suspended(o: Operad, k: int) -> Operad:
    return suspend_operad(o, k)


def lie_to_ass() -> OperadMorphism:
    """Bracket to the commutator xy - yx."""
    return from_generators(LIE, ASS, {"br": _bracket2(ASS)}, "Lie->Ass")


def suspension_morphism_shadow(o: Operad, k: int = 1) -> OperadMorphism:
    """Homology of sigma^k: O -> s^k O; identity in arity 1, zero above for degree reasons."""
    if k == 0:
        return identity_morphism(o)
    target = suspended(o, k)

    def fn(key):
        labs = _key_labels(o, key)
        if len(labs) != 1:
            return {}
        return {target.unit(labs[0]): Fraction(1)}

    return OperadMorphism(o, target, fn, f"sigma^{k}_{o.name}")


class SideModule:
    """The target operad of ``morphism`` viewed as a left or right module over its source."""

    def __init__(self, side: str, morphism: OperadMorphism):
        if side not in ("left", "right"):
            raise ValueError("side must be 'left' or 'right'")
        self.side = side
        self.morphism = morphism
        self.over = morphism.source
        self.underlying = morphism.target

    @property
    def name(self) -> str:
        return f"{self.underlying.name}[{self.side} via {self.morphism.name}]"

    def validate(self, max_arity: int) -> list[str]:
        return self.morphism.validate(max_arity)


def module_along(f: OperadMorphism, side: str) -> SideModule:
    return SideModule(side, f)


def regular_module(o: Operad, side: str) -> SideModule:
    return SideModule(side, identity_morphism(o))


def trivial_module(o: Operad, side: str) -> SideModule:
    """One as a module over a reduced operad through the augmentation."""
    return SideModule(side, augmentation(o))


def suspend_morphism(f: OperadMorphism, k: int = 1) -> OperadMorphism:
    """s^k f: levelwise tensor of f with the identity of Lambda^{k}."""
    if k == 0:
        return f
    inner = suspend_morphism(f, k - 1 if k > 0 else k + 1)
    det = Determinant(1 if k > 0 else -1)
    source = LevelwiseTensor(inner.source, det)
    target = LevelwiseTensor(inner.target, det)

    def fn(key):
        return {(img, key[1]): c for img, c in inner(key[0]).items()}

    g = OperadMorphism(source, target, fn, f"s^{k}{f.name}")
    return g


def beta_power(k: int, m: int, scalar=1) -> OperadMorphism:
    """Composite E_{k+m} -> s E_{k+m-1} -> ... -> s^k E_m of suspended beta maps."""
    if k < 0 or m < 0:
        raise ValueError("k and m must be nonnegative")
    f = identity_morphism(pois(k + m))
    for j in range(k):
        step = suspend_morphism(beta_shadow(k + m - 1 - j, scalar), j)
        f = f.then(step) if j else step
    if k:
        f.name = f"beta^{k}({m})"
    return f
