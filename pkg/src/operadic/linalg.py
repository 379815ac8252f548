"""Exact sparse linear algebra over Q (authoritative) and F_p (cross-checks).

Matrices are immutable dictionaries of nonzero entries.  Ranks are computed
by fraction-free elimination on integer rows with Markowitz-style pivot
choice; the modular path uses the same loop with inverses mod p.
"""

from __future__ import annotations

import heapq
from dataclasses import dataclass, field
from fractions import Fraction
from math import gcd
from typing import Iterable, Mapping

DEFAULT_PRIME = 32003


class NotAComplexError(ValueError):
    """Raised when a differential composite d_k . d_{k+1} is nonzero."""

    def __init__(self, degree: int):
        super().__init__(f"not a complex: d_{degree - 1} . d_{degree} != 0 at degree {degree}")
        self.degree = degree


def to_scalar(x) -> Fraction:
    if isinstance(x, Fraction):
        return x
    if isinstance(x, str):
        return Fraction(x)
    return Fraction(x)


def is_prime(p: int) -> bool:
    if p < 2:
        return False
    i = 2
    while i * i <= p:
        if p % i == 0:
            return False
        i += 1
    return True


def mod_p(x: Fraction, p: int) -> int:
    x = to_scalar(x)
    den = x.denominator % p
    if den == 0:
        raise ZeroDivisionError(f"denominator {x.denominator} vanishes mod {p}")
    return (x.numerator % p) * pow(den, -1, p) % p


class SparseMatrix:
    """Immutable sparse matrix with exact rational entries."""

    __slots__ = ("nrows", "ncols", "_data")

    def __init__(self, nrows: int, ncols: int, entries: Iterable | Mapping = ()):
        if nrows < 0 or ncols < 0:
            raise ValueError("negative shape")
        data: dict[tuple[int, int], Fraction] = {}
        items = entries.items() if isinstance(entries, Mapping) else entries
        for item in items:
            if isinstance(entries, Mapping):
                (r, c), v = item
            else:
                r, c, v = item
            if not (0 <= r < nrows and 0 <= c < ncols):
                raise IndexError(f"entry ({r}, {c}) outside {nrows}x{ncols}")
            if (r, c) in data:
                raise ValueError(f"duplicate coordinate ({r}, {c})")
            v = to_scalar(v)
            if v:
                data[(r, c)] = v
        self.nrows = nrows
        self.ncols = ncols
        self._data = data

    @classmethod
    def _trusted(cls, nrows, ncols, data):
        m = cls.__new__(cls)
        m.nrows, m.ncols, m._data = nrows, ncols, data
        return m

    @classmethod
    def from_columns(cls, nrows: int, columns: list[Mapping[int, Fraction]]) -> "SparseMatrix":
        data = {}
        for c, col in enumerate(columns):
            for r, v in col.items():
                if v:
                    if not 0 <= r < nrows:
                        raise IndexError(r)
                    data[(r, c)] = to_scalar(v)
        return cls._trusted(nrows, len(columns), data)

    @classmethod
    def from_dense(cls, rows) -> "SparseMatrix":
        rows = [list(r) for r in rows]
        ncols = len(rows[0]) if rows else 0
        return cls(len(rows), ncols, ((i, j, v) for i, r in enumerate(rows) for j, v in enumerate(r)))

    @classmethod
    def identity(cls, n: int) -> "SparseMatrix":
        return cls._trusted(n, n, {(i, i): Fraction(1) for i in range(n)})

    @classmethod
    def zeros(cls, nrows: int, ncols: int) -> "SparseMatrix":
        return cls._trusted(nrows, ncols, {})

    @property
    def shape(self) -> tuple[int, int]:
        return (self.nrows, self.ncols)

    def __getitem__(self, rc) -> Fraction:
        return self._data.get(rc, Fraction(0))

    def entries(self) -> list[tuple[int, int, Fraction]]:
        return [(r, c, v) for (r, c), v in sorted(self._data.items())]

    def nnz(self) -> int:
        return len(self._data)

    def is_zero(self) -> bool:
        return not self._data

    def rows(self) -> list[dict[int, Fraction]]:
        out: list[dict[int, Fraction]] = [{} for _ in range(self.nrows)]
        for (r, c), v in self._data.items():
            out[r][c] = v
        return out

    def columns(self) -> list[dict[int, Fraction]]:
        out: list[dict[int, Fraction]] = [{} for _ in range(self.ncols)]
        for (r, c), v in self._data.items():
            out[c][r] = v
        return out

    def to_dense(self) -> list[list[Fraction]]:
        out = [[Fraction(0)] * self.ncols for _ in range(self.nrows)]
        for (r, c), v in self._data.items():
            out[r][c] = v
        return out

    def transpose(self) -> "SparseMatrix":
        return SparseMatrix._trusted(self.ncols, self.nrows, {(c, r): v for (r, c), v in self._data.items()})

    def scale(self, s) -> "SparseMatrix":
        s = to_scalar(s)
        if not s:
            return SparseMatrix.zeros(self.nrows, self.ncols)
        return SparseMatrix._trusted(self.nrows, self.ncols, {k: v * s for k, v in self._data.items()})

    def __add__(self, other: "SparseMatrix") -> "SparseMatrix":
        if self.shape != other.shape:
            raise ValueError(f"shape mismatch {self.shape} vs {other.shape}")
        data = dict(self._data)
        for k, v in other._data.items():
            w = data.get(k, 0) + v
            if w:
                data[k] = w
            else:
                data.pop(k, None)
        return SparseMatrix._trusted(self.nrows, self.ncols, data)

    def __sub__(self, other: "SparseMatrix") -> "SparseMatrix":
        return self + other.scale(-1)

    def __neg__(self) -> "SparseMatrix":
        return self.scale(-1)

    def __matmul__(self, other: "SparseMatrix") -> "SparseMatrix":
        if self.ncols != other.nrows:
            raise ValueError(f"cannot multiply {self.shape} by {other.shape}")
        orows = other.rows()
        acc: dict[tuple[int, int], Fraction] = {}
        for (r, k), v in self._data.items():
            for c, w in orows[k].items():
                key = (r, c)
                acc[key] = acc.get(key, 0) + v * w
        return SparseMatrix._trusted(self.nrows, other.ncols, {k: v for k, v in acc.items() if v})

    def apply(self, vec: Mapping[int, Fraction]) -> dict[int, Fraction]:
        out: dict[int, Fraction] = {}
        cols = self.columns()
        for c, x in vec.items():
            for r, v in cols[c].items():
                out[r] = out.get(r, 0) + v * x
        return {r: v for r, v in out.items() if v}

    def submatrix(self, rows: list[int], cols: list[int]) -> "SparseMatrix":
        rpos = {r: i for i, r in enumerate(rows)}
        cpos = {c: j for j, c in enumerate(cols)}
        data = {(rpos[r], cpos[c]): v for (r, c), v in self._data.items() if r in rpos and c in cpos}
        return SparseMatrix._trusted(len(rows), len(cols), data)

    def __eq__(self, other) -> bool:
        return isinstance(other, SparseMatrix) and self.shape == other.shape and self._data == other._data

    def __hash__(self):
        return hash((self.nrows, self.ncols, frozenset(self._data.items())))

    def __repr__(self) -> str:
        return f"SparseMatrix({self.nrows}x{self.ncols}, nnz={len(self._data)})"


def hstack(blocks: list[SparseMatrix]) -> SparseMatrix:
    if not blocks:
        return SparseMatrix.zeros(0, 0)
    n = blocks[0].nrows
    data, off = {}, 0
    for b in blocks:
        if b.nrows != n:
            raise ValueError("row mismatch in hstack")
        for (r, c), v in b._data.items():
            data[(r, c + off)] = v
        off += b.ncols
    return SparseMatrix._trusted(n, off, data)


def vstack(blocks: list[SparseMatrix]) -> SparseMatrix:
    return hstack([b.transpose() for b in blocks]).transpose() if blocks else SparseMatrix.zeros(0, 0)


def block_diag(blocks: list[SparseMatrix]) -> SparseMatrix:
    data, ro, co = {}, 0, 0
    for b in blocks:
        for (r, c), v in b._data.items():
            data[(r + ro, c + co)] = v
        ro += b.nrows
        co += b.ncols
    return SparseMatrix._trusted(ro, co, data)


# ---------------------------------------------------------------------------
# elimination


def _integer_rows(m: SparseMatrix) -> list[dict[int, int]]:
    out = []
    for row in m.rows():
        if not row:
            continue
        den = 1
        for v in row.values():
            den = den * v.denominator // gcd(den, v.denominator)
        irow = {c: int(v * den) for c, v in row.items()}
        g = 0
        for v in irow.values():
            g = gcd(g, v)
        out.append({c: v // g for c, v in irow.items()})
    return out


def _eliminate(rows: list[dict[int, int]], p: int | None) -> int:
    """Rank of the row set; rows are consumed.  p=None means exact over Q."""
    col_index: dict[int, set[int]] = {}
    for i, row in enumerate(rows):
        for c in row:
            col_index.setdefault(c, set()).add(i)
    heap = [(len(row), i) for i, row in enumerate(rows) if row]
    heapq.heapify(heap)
    alive = [bool(r) for r in rows]
    rank = 0
    while heap:
        length, i = heapq.heappop(heap)
        if not alive[i] or length != len(rows[i]):
            continue
        row = rows[i]
        # Markowitz: the pivot column with the fewest competing rows
        pc = min(row, key=lambda c: (len(col_index[c]), c))
        pv = row[pc]
        alive[i] = False
        for c in row:
            col_index[c].discard(i)
        rank += 1
        for t in list(col_index[pc]):
            trow = rows[t]
            tv = trow[pc]
            if p is None:
                g = gcd(pv, tv)
                a, b = pv // g, tv // g
                new = {}
                for c, v in trow.items():
                    new[c] = a * v
                for c, v in row.items():
                    w = new.get(c, 0) - b * v
                    if w:
                        new[c] = w
                    else:
                        new.pop(c, None)
                if new:
                    g = 0
                    for v in new.values():
                        g = gcd(g, v)
                        if g == 1:
                            break
                    if g > 1:
                        new = {c: v // g for c, v in new.items()}
            else:
                f = tv * pow(pv, -1, p) % p
                new = dict(trow)
                for c, v in row.items():
                    w = (new.get(c, 0) - f * v) % p
                    if w:
                        new[c] = w
                    else:
                        new.pop(c, None)
            for c in trow:
                if c not in new:
                    col_index[c].discard(t)
            for c in new:
                if c not in trow:
                    col_index.setdefault(c, set()).add(t)
            rows[t] = new
            if new:
                heapq.heappush(heap, (len(new), t))
            else:
                alive[t] = False
    return rank


def rank(m: SparseMatrix, p: int | None = None) -> int:
    """Exact rank over Q, or over F_p when ``p`` is given."""
    if m.nnz() == 0:
        return 0
    # eliminate along the shorter dimension
    if m.nrows > m.ncols:
        m = m.transpose()
    rows = _integer_rows(m)
    if p is not None:
        rows = [{c: v % p for c, v in r.items() if v % p} for r in rows]
    return _eliminate(rows, p)


def rref(m: SparseMatrix) -> tuple[list[dict[int, Fraction]], list[int]]:
    """Reduced row echelon form as (nonzero rows, pivot columns)."""
    rows = [dict(r) for r in m.rows() if r]
    pivots: list[int] = []
    reduced: list[dict[int, Fraction]] = []
    for col in range(m.ncols):
        idx = next((i for i, r in enumerate(rows) if col in r), None)
        if idx is None:
            continue
        prow = rows.pop(idx)
        inv = 1 / prow[col]
        prow = {c: v * inv for c, v in prow.items()}
        for group in (rows, reduced):
            for i, r in enumerate(group):
                f = r.get(col)
                if f:
                    new = dict(r)
                    for c, v in prow.items():
                        w = new.get(c, 0) - f * v
                        if w:
                            new[c] = w
                        else:
                            new.pop(c, None)
                    group[i] = new
        rows = [r for r in rows if r]
        reduced.append(prow)
        pivots.append(col)
    return reduced, pivots


def kernel_basis(m: SparseMatrix) -> list[dict[int, Fraction]]:
    """Basis of {v : m v = 0}, one sparse column vector per free column."""
    reduced, pivots = rref(m)
    pset = set(pivots)
    basis = []
    for free in range(m.ncols):
        if free in pset:
            continue
        v = {free: Fraction(1)}
        for prow, pc in zip(reduced, pivots):
            x = prow.get(free)
            if x:
                v[pc] = -x
        basis.append(v)
    return basis


def column_space_basis(m: SparseMatrix) -> list[int]:
    """Indices of the first linearly independent columns (in column order)."""
    return rref(m)[1]


# ---------------------------------------------------------------------------
# chain complexes


@dataclass(frozen=True)
class ChainComplex:
    """Homologically graded complex; ``differentials[k]`` maps degree k to k-1."""

    dims: dict[int, int]
    differentials: dict[int, SparseMatrix] = field(default_factory=dict)
    labels: dict[int, list] | None = None

    def __post_init__(self):
        if self.dims:
            lo, hi = min(self.dims), max(self.dims)
            if sorted(self.dims) != list(range(lo, hi + 1)):
                raise ValueError("degrees must form a contiguous range")
        for k, d in self.differentials.items():
            expected = (self.dims.get(k - 1, 0), self.dims.get(k, 0))
            if d.shape != expected:
                raise ValueError(f"d_{k} has shape {d.shape}, expected {expected}")

    def d(self, k: int) -> SparseMatrix:
        if k in self.differentials:
            return self.differentials[k]
        return SparseMatrix.zeros(self.dims.get(k - 1, 0), self.dims.get(k, 0))

    def check(self) -> None:
        for k in sorted(self.dims):
            if k + 1 in self.dims and k - 1 in self.dims:
                if not (self.d(k) @ self.d(k + 1)).is_zero():
                    raise NotAComplexError(k)

    def euler_characteristic(self) -> int:
        return sum((-1) ** (k % 2) * n for k, n in self.dims.items())


def homology_dims(c: ChainComplex, p: int | None = None, check: bool = True) -> dict[int, int]:
    """dim ker d_k - rank d_{k+1} for every degree of ``c``."""
    if check:
        c.check()
    ranks = {k: rank(c.d(k), p) for k in c.dims}
    return {k: n - ranks[k] - ranks.get(k + 1, 0) for k, n in sorted(c.dims.items())}
