"""Multilinear normal forms in free Lie and free n-Poisson algebras.

Generators are labels (frozensets of leaf indices) placed in degree 0; the
bracket has degree ``d`` and the product degree 0.  For a homogeneous
element ``a`` the bracket parity is ``|a| + d``, which gives the signs

    [a, b]       = -(-1)^{p(a)p(b)} [b, a]
    [a, [b, c]]  = [[a, b], c] + (-1)^{p(a)p(b)} [b, [a, c]]
    [a, b c]     = [a, b] c + (-1)^{p(a)|b|} b [a, c]
    a b          = (-1)^{|a||b|} b a

A Lie word is a tuple of labels read as the left-normed bracket
``[[..[w0, w1], ..], wk]`` with ``w0`` the smallest label.  A Poisson
monomial is a tuple of Lie words sorted by their smallest label.
"""

from __future__ import annotations

from fractions import Fraction
from functools import lru_cache

Label = frozenset
Word = tuple
Monomial = tuple


def lkey(label) -> int:
    return min(label)


def word_degree(word: Word, d: int) -> int:
    return d * (len(word) - 1)


def _parity(word: Word, d: int) -> int:
    return (d * len(word)) % 2


def _add(acc: dict, key, c) -> None:
    v = acc.get(key, 0) + c
    if v:
        acc[key] = v
    else:
        acc.pop(key, None)


@lru_cache(maxsize=None)
def _bracket_left_normed(p: Word, y: Word, d: int) -> tuple:
    """[L_p, L_y] as left-normed words that all start with p[0]."""
    if len(y) == 1:
        return ((p + y, 1),)
    yp, last = y[:-1], y[-1:]
    out: dict = {}
    for w, c in _bracket_left_normed(p, yp, d):
        _add(out, w + last, c)
    # [p,[y',l]] = [[p,y'],l] + s1 [y',[p,l]] and [y',pl] = s2 [pl,y']
    s1 = -1 if (_parity(p, d) * _parity(yp, d)) % 2 else 1
    s2 = 1 if (_parity(yp, d) * _parity(p + last, d)) % 2 else -1
    for w, c in _bracket_left_normed(p + last, yp, d):
        _add(out, w, s1 * s2 * c)
    return tuple(out.items())


@lru_cache(maxsize=None)
def bracket_words(u: Word, v: Word, d: int) -> tuple:
    """Normal form of [u, v] for normal-form words u, v on disjoint labels."""
    if lkey(u[0]) < lkey(v[0]):
        return _bracket_left_normed(u, v, d)
    s = 1 if (_parity(u, d) * _parity(v, d)) % 2 else -1
    return tuple((w, s * c) for w, c in _bracket_left_normed(v, u, d))


def lie_bracket(a: dict, b: dict, d: int) -> dict:
    out: dict = {}
    for u, cu in a.items():
        for v, cv in b.items():
            for w, c in bracket_words(u, v, d):
                _add(out, w, cu * cv * c)
    return out


@lru_cache(maxsize=None)
def normal_word(word: Word, d: int) -> tuple:
    """Normal form of an arbitrary left-normed word (first letter not necessarily minimal)."""
    cur = {(word[0],): 1}
    for letter in word[1:]:
        cur = lie_bracket(cur, {(letter,): 1}, d)
    return tuple(cur.items())


# ---------------------------------------------------------------------------
# Poisson monomials


def monomial_degree(m: Monomial, d: int) -> int:
    return sum(word_degree(w, d) for w in m)


def _sort_monomial(factors: list, d: int) -> tuple[int, Monomial]:
    degs = [word_degree(w, d) % 2 for w in factors]
    order = sorted(range(len(factors)), key=lambda i: lkey(factors[i][0]))
    odd = 0
    for a in range(len(order)):
        if degs[order[a]]:
            for b in range(a + 1, len(order)):
                if degs[order[b]] and order[b] < order[a]:
                    odd ^= 1
    return (-1 if odd else 1), tuple(factors[i] for i in order)


def product(a: dict, b: dict, d: int) -> dict:
    out: dict = {}
    for m1, c1 in a.items():
        for m2, c2 in b.items():
            s, m = _sort_monomial(list(m1) + list(m2), d)
            _add(out, m, s * c1 * c2)
    return out


@lru_cache(maxsize=None)
def _bracket_monomials(a: Monomial, b: Monomial, d: int) -> tuple:
    if len(b) > 1:
        # [a, b1 b'] = [a, b1] b' + (-1)^{p(a)|b1|} b1 [a, b']
        b1, rest = b[:1], b[1:]
        pa = (monomial_degree(a, d) + d) % 2
        db1 = monomial_degree(b1, d) % 2
        out: dict = {}
        for k, v in product(dict(_bracket_monomials(a, b1, d)), {rest: 1}, d).items():
            _add(out, k, v)
        sign = -1 if pa * db1 else 1
        for k, v in product({b1: 1}, dict(_bracket_monomials(a, rest, d)), d).items():
            _add(out, k, sign * v)
        return tuple(out.items())
    if len(a) > 1:
        pa = (monomial_degree(a, d) + d) % 2
        pb = (monomial_degree(b, d) + d) % 2
        s = 1 if pa * pb else -1
        return tuple((k, s * v) for k, v in _bracket_monomials(b, a, d))
    return tuple(((w,), c) for w, c in bracket_words(a[0], b[0], d))


def poisson_bracket(a: dict, b: dict, d: int) -> dict:
    out: dict = {}
    for m1, c1 in a.items():
        for m2, c2 in b.items():
            for k, v in _bracket_monomials(m1, m2, d):
                _add(out, k, c1 * c2 * v)
    return out


def evaluate(m: Monomial, values: dict, d: int) -> dict:
    """Substitute ``values[label]`` (elements) for the generators of ``m``."""
    total = None
    for word in m:
        cur = values[word[0]]
        for letter in word[1:]:
            cur = poisson_bracket(cur, values[letter], d)
        total = cur if total is None else product(total, cur, d)
        if not total:
            return {}
    return total


def generator(label) -> dict:
    return {((label,),): Fraction(1)}


# ---------------------------------------------------------------------------
# independent Lie check: embed into the free associative algebra


def lie_word_to_assoc(word: Word) -> dict:
    """Expand a left-normed bracket into words via [x, y] = xy - yx (ungraded)."""
    cur = {(word[0],): 1}
    for letter in word[1:]:
        nxt: dict = {}
        for w, c in cur.items():
            _add(nxt, w + (letter,), c)
            _add(nxt, (letter,) + w, -c)
        cur = nxt
    return cur


def assoc_to_lie_coordinates(poly: dict) -> dict:
    """Coordinates of a Lie polynomial in the min-first left-normed basis.

    The basis word w expands to w plus words not starting with min, so the
    coefficients of words beginning with the smallest letter are the coordinates.
    """
    if not poly:
        return {}
    first = min(lkey(l) for l in next(iter(poly)))
    return {w: c for w, c in poly.items() if lkey(w[0]) == first}
