"""Independent reference computations used by the tests (dense, brute force)."""

from fractions import Fraction
from itertools import permutations
from math import factorial


def dense_rank(rows, p=None):
    m = [[Fraction(x) % p if p else Fraction(x) for x in r] for r in rows]
    rank, ncols = 0, len(m[0]) if m else 0
    for c in range(ncols):
        piv = next((r for r in range(rank, len(m)) if m[r][c]), None)
        if piv is None:
            continue
        m[rank], m[piv] = m[piv], m[rank]
        inv = pow(int(m[rank][c]), -1, p) if p else 1 / m[rank][c]
        m[rank] = [(x * inv) % p if p else x * inv for x in m[rank]]
        for r in range(len(m)):
            if r != rank and m[r][c]:
                f = m[r][c]
                m[r] = [((a - f * b) % p) if p else a - f * b for a, b in zip(m[r], m[rank])]
        rank += 1
    return rank


def necklace_lie_dim(n):
    """dim Lie(n) = (n-1)!, counted as the multilinear part of the free Lie algebra."""
    return factorial(n - 1) if n >= 1 else 0


def bell(n):
    row = [1]
    for _ in range(n - 1):
        nxt = [row[-1]]
        for x in row:
            nxt.append(nxt[-1] + x)
        row = nxt
    return row[-1]


def brute_orbits(n, labels, act):
    """Number of orbits of Sigma_n acting on a finite set of labels."""
    seen, count = set(), 0
    for lab in labels:
        if lab in seen:
            continue
        count += 1
        for g in permutations(range(n)):
            seen.add(act(g, lab))
    return count
