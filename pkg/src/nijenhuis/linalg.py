"""Sparse exact matrices over the rationals.

Matrices are stored column-wise as ``{row: value}`` dictionaries with Python
int or Fraction values. Products are formed with vectorised numpy joins on
triplets (int64 when entries are small integers, object arrays otherwise).
Rank, kernels and linear solves use fraction-free column reduction: every
working column is kept as a primitive integer vector, and the pivot of a
column is its first nonzero row.
"""

from __future__ import annotations

from fractions import Fraction
from math import gcd, lcm
from typing import Iterable, Mapping, Sequence

import numpy as np

from .scalars import INT_BOUND, to_scalar

__all__ = ["ExactMatrix", "ColumnReducer", "rank", "nullspace", "solve"]

Vector = dict  # sparse vector: {index: value}


def _clean(v):
    if isinstance(v, Fraction) and v.denominator == 1:
        return v.numerator
    return v


class ExactMatrix:
    """Immutable sparse matrix with exact entries."""

    __slots__ = ("rows", "cols", "_data")

    def __init__(self, rows: int, cols: int, columns: Mapping[int, Mapping[int, object]] | None = None):
        self.rows = int(rows)
        self.cols = int(cols)
        data: dict[int, dict[int, object]] = {}
        if columns:
            for j, col in columns.items():
                if not 0 <= j < self.cols:
                    raise IndexError(f"column {j} outside 0..{self.cols - 1}")
                kept = {}
                for i, v in col.items():
                    if not 0 <= i < self.rows:
                        raise IndexError(f"row {i} outside 0..{self.rows - 1}")
                    if v != 0:
                        kept[i] = _clean(v)
                if kept:
                    data[j] = kept
        self._data = data

    # construction -----------------------------------------------------

    @classmethod
    def zero(cls, rows: int, cols: int) -> "ExactMatrix":
        return cls(rows, cols)

    @classmethod
    def identity(cls, n: int) -> "ExactMatrix":
        return cls(n, n, {j: {j: 1} for j in range(n)})

    @classmethod
    def from_dense(cls, dense: Sequence[Sequence[object]] | np.ndarray) -> "ExactMatrix":
        arr = np.asarray(dense, dtype=object)
        if arr.ndim != 2:
            raise ValueError("dense matrix must be 2-dimensional")
        r, c = arr.shape
        cols = {}
        for j in range(c):
            col = {i: to_scalar(arr[i, j]) for i in range(r) if arr[i, j] != 0}
            if col:
                cols[j] = col
        return cls(r, c, cols)

    @classmethod
    def from_triplets(cls, rows: int, cols: int, r: np.ndarray, c: np.ndarray, v: np.ndarray) -> "ExactMatrix":
        """Triplets must already be free of duplicates."""
        out = cls(rows, cols)
        data = out._data
        for i, j, x in zip(r.tolist(), c.tolist(), v.tolist()):
            if x != 0:
                data.setdefault(j, {})[i] = _clean(x) if isinstance(x, Fraction) else x
        return out

    @classmethod
    def from_columns(cls, rows: int, vectors: Sequence[Mapping[int, object]]) -> "ExactMatrix":
        return cls(rows, len(vectors), {j: dict(v) for j, v in enumerate(vectors)})

    @classmethod
    def block(cls, blocks: Sequence[Sequence["ExactMatrix | None"]], row_sizes: Sequence[int], col_sizes: Sequence[int]) -> "ExactMatrix":
        """Assemble a block matrix; ``None`` entries are zero blocks."""
        rows = sum(row_sizes)
        cols = sum(col_sizes)
        data: dict[int, dict[int, object]] = {}
        r0 = 0
        for bi, brow in enumerate(blocks):
            c0 = 0
            for bj, blk in enumerate(brow):
                if blk is not None:
                    if (blk.rows, blk.cols) != (row_sizes[bi], col_sizes[bj]):
                        raise ValueError(
                            f"block ({bi},{bj}) has shape {blk.shape}, expected {(row_sizes[bi], col_sizes[bj])}"
                        )
                    for j, col in blk._data.items():
                        tgt = data.setdefault(c0 + j, {})
                        for i, v in col.items():
                            tgt[r0 + i] = v
                c0 += col_sizes[bj]
            r0 += row_sizes[bi]
        out = cls(rows, cols)
        out._data = data
        return out

    # access ------------------------------------------------------------

    @property
    def shape(self) -> tuple[int, int]:
        return (self.rows, self.cols)

    @property
    def nnz(self) -> int:
        return sum(len(c) for c in self._data.values())

    def column(self, j: int) -> dict[int, object]:
        return dict(self._data.get(j, {}))

    def columns(self) -> Iterable[tuple[int, dict[int, object]]]:
        return ((j, self._data[j]) for j in sorted(self._data))

    def __getitem__(self, key: tuple[int, int]):
        i, j = key
        return Fraction(self._data.get(j, {}).get(i, 0))

    def triplets(self) -> tuple[np.ndarray, np.ndarray, list]:
        r, c, v = [], [], []
        for j in sorted(self._data):
            col = self._data[j]
            for i in sorted(col):
                r.append(i)
                c.append(j)
                v.append(col[i])
        return np.array(r, dtype=np.int64), np.array(c, dtype=np.int64), v

    def to_dense(self) -> np.ndarray:
        out = np.empty((self.rows, self.cols), dtype=object)
        out.reshape(-1)[:] = [Fraction(0)] * out.size
        for j, col in self._data.items():
            for i, v in col.items():
                out[i, j] = Fraction(v)
        return out

    def is_zero(self) -> bool:
        return not self._data

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, ExactMatrix):
            return NotImplemented
        return self.shape == other.shape and self._data == other._data

    def __repr__(self) -> str:
        return f"ExactMatrix({self.rows}x{self.cols}, nnz={self.nnz})"

    # arithmetic --------------------------------------------------------

    def transpose(self) -> "ExactMatrix":
        data: dict[int, dict[int, object]] = {}
        for j, col in self._data.items():
            for i, v in col.items():
                data.setdefault(i, {})[j] = v
        out = ExactMatrix(self.cols, self.rows)
        out._data = data
        return out

    def scale(self, c) -> "ExactMatrix":
        c = to_scalar(c)
        if c == 0:
            return ExactMatrix(self.rows, self.cols)
        out = ExactMatrix(self.rows, self.cols)
        out._data = {j: {i: _clean(c * v) for i, v in col.items()} for j, col in self._data.items()}
        return out

    def __add__(self, other: "ExactMatrix") -> "ExactMatrix":
        if self.shape != other.shape:
            raise ValueError(f"shape mismatch {self.shape} vs {other.shape}")
        data = {j: dict(col) for j, col in self._data.items()}
        for j, col in other._data.items():
            tgt = data.setdefault(j, {})
            for i, v in col.items():
                s = tgt.get(i, 0) + v
                if s == 0:
                    tgt.pop(i, None)
                else:
                    tgt[i] = _clean(s)
            if not tgt:
                del data[j]
        out = ExactMatrix(self.rows, self.cols)
        out._data = data
        return out

    def __neg__(self) -> "ExactMatrix":
        return self.scale(-1)

    def __sub__(self, other: "ExactMatrix") -> "ExactMatrix":
        return self + (-other)

    def apply(self, vec: Sequence[object] | Mapping[int, object]) -> list[Fraction]:
        """Dense result of multiplying by a (dense or sparse) vector."""
        items = vec.items() if isinstance(vec, Mapping) else enumerate(vec)
        out = [Fraction(0)] * self.rows
        for j, x in items:
            if x == 0:
                continue
            for i, v in self._data.get(j, {}).items():
                out[i] += x * v
        return out

    def __matmul__(self, other: "ExactMatrix") -> "ExactMatrix":
        if self.cols != other.rows:
            raise ValueError(f"cannot multiply {self.shape} by {other.shape}")
        return _matmul(self, other)


def _triplet_arrays(m: ExactMatrix):
    r, c, v = m.triplets()
    ints = all(isinstance(x, int) and abs(x) < INT_BOUND for x in v)
    vals = np.array(v, dtype=np.int64) if ints else np.array(v + [None], dtype=object)[:-1]
    return r, c, vals, ints


def _matmul(a: ExactMatrix, b: ExactMatrix) -> ExactMatrix:
    ra, ca, va, ia = _triplet_arrays(a)
    rb, cb, vb, ib = _triplet_arrays(b)
    if ra.size == 0 or rb.size == 0:
        return ExactMatrix(a.rows, b.cols)
    use_int = ia and ib
    if not use_int:
        va = va.astype(object)
        vb = vb.astype(object)
    # a is sorted by column already (triplets are column-major)
    counts = np.bincount(ca, minlength=a.cols)
    ptr = np.concatenate(([0], np.cumsum(counts)))
    per_b = counts[rb]
    total = int(per_b.sum())
    if total == 0:
        return ExactMatrix(a.rows, b.cols)
    rep = np.repeat(np.arange(rb.size), per_b)
    offsets = np.arange(total) - np.repeat(np.cumsum(per_b) - per_b, per_b)
    ia_idx = ptr[rb][rep] + offsets
    rows = ra[ia_idx]
    cols = cb[rep]
    vals = va[ia_idx] * vb[rep]
    keys = cols * a.rows + rows
    keys, vals = compact(keys, vals)
    return ExactMatrix.from_triplets(a.rows, b.cols, keys % a.rows, keys // a.rows, vals)


def compact(keys: np.ndarray, vals: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
    """Sum values sharing a key and drop zeros. Exact for int64 and object."""
    if keys.size == 0:
        return keys, vals
    order = np.argsort(keys, kind="stable")
    keys = keys[order]
    vals = vals[order]
    starts = np.flatnonzero(np.concatenate(([True], keys[1:] != keys[:-1])))
    if vals.dtype != object:
        sizes = np.diff(np.append(starts, keys.size))
        bound = int(np.abs(vals).max()) * int(sizes.max())
        if bound >= 1 << 62:
            vals = vals.astype(object)
    summed = np.add.reduceat(vals, starts)
    keys = keys[starts]
    nz = summed != 0
    return keys[nz], summed[nz]


# ---------------------------------------------------------------------------
# fraction-free column reduction


def _primitive(vec: dict[int, int]) -> tuple[dict[int, int], int]:
    g = 0
    for v in vec.values():
        g = gcd(g, v)
        if g == 1:
            break
    if g <= 1:
        return vec, 1
    return {i: v // g for i, v in vec.items()}, g


def _integral(vec: Mapping[int, object]) -> tuple[dict[int, int], int]:
    """Scale a rational vector to integers; returns (vector, scale)."""
    den = 1
    for v in vec.values():
        if isinstance(v, Fraction):
            den = lcm(den, v.denominator)
    out = {}
    for i, v in vec.items():
        if v != 0:
            out[i] = int(v * den) if den != 1 else int(v)
    return out, den


class ColumnReducer:
    """Incremental fraction-free reduction of a list of columns.

    Each stored column has a distinct pivot (its first nonzero row). With
    ``track=True`` the reducer records, for every stored column, the
    combination of original columns producing it, and collects a kernel
    basis from the columns that reduce to zero.
    """

    def __init__(self, track: bool = False):
        self.track = track
        self.pivots: dict[int, dict[int, int]] = {}
        self.combos: dict[int, dict[int, Fraction]] = {}
        self.kernel: list[dict[int, Fraction]] = []
        self.count = 0

    @property
    def rank(self) -> int:
        return len(self.pivots)

    def _reduce(self, vec: dict[int, int], combo: dict[int, Fraction] | None):
        pivots = self.pivots
        while vec:
            low = min(vec)
            piv = pivots.get(low)
            if piv is None:
                break
            a = piv[low]
            b = vec[low]
            g = gcd(a, b)
            fa, fb = a // g, b // g
            if fa < 0:
                fa, fb = -fa, -fb
            new = {i: fa * v for i, v in vec.items()} if fa != 1 else dict(vec)
            for i, v in piv.items():
                s = new.get(i, 0) - fb * v
                if s:
                    new[i] = s
                else:
                    new.pop(i, None)
            vec, g2 = _primitive(new)
            if combo is not None:
                pc = self.combos[low]
                nc = {k: fa * x for k, x in combo.items()}
                for k, x in pc.items():
                    s = nc.get(k, 0) - fb * x
                    if s:
                        nc[k] = s
                    else:
                        nc.pop(k, None)
                if g2 != 1:
                    nc = {k: x / g2 for k, x in nc.items()}
                combo = nc
        return vec, combo

    def add(self, column: Mapping[int, object]) -> bool:
        """Insert a column; returns True when it enlarges the span."""
        index = self.count
        self.count += 1
        vec, _ = _integral(column)
        vec, g = _primitive(vec)
        combo = None
        if self.track:
            _, den = _integral(column)
            combo = {index: Fraction(den, g)}
        vec, combo = self._reduce(vec, combo)
        if vec:
            low = min(vec)
            self.pivots[low] = vec
            if self.track:
                self.combos[low] = combo
            return True
        if self.track:
            self.kernel.append(combo)
        return False

    def express(self, target: Mapping[int, object]) -> dict[int, Fraction] | None:
        """Coefficients c with sum_k c_k column_k = target, or None."""
        if not self.track:
            raise RuntimeError("express needs a tracking reducer")
        vec, den = _integral(target)
        # cur = scale*target - sum_p y_p R_p, with R_p the stored columns
        scale = Fraction(den)
        y: dict[int, Fraction] = {}
        cur = vec
        while cur:
            low = min(cur)
            piv = self.pivots.get(low)
            if piv is None:
                return None
            a = piv[low]
            b = cur[low]
            g = gcd(a, b)
            fa, fb = a // g, b // g
            new = {i: fa * v for i, v in cur.items()}
            for i, v in piv.items():
                s = new.get(i, 0) - fb * v
                if s:
                    new[i] = s
                else:
                    new.pop(i, None)
            scale *= fa
            y = {p: fa * c for p, c in y.items()}
            y[low] = y.get(low, 0) + fb
            cur = new
        out: dict[int, Fraction] = {}
        for p, c in y.items():
            coef = Fraction(c) / scale
            for k, x in self.combos[p].items():
                s = out.get(k, 0) + coef * x
                if s:
                    out[k] = s
                else:
                    out.pop(k, None)
        return out


def rank(m: ExactMatrix) -> int:
    """Exact rank. Reduces whichever of rows/columns is fewer."""
    if m.is_zero():
        return 0
    src = m if m.cols <= m.rows else m.transpose()
    red = ColumnReducer()
    for _, col in src.columns():
        red.add(col)
    return red.rank


def nullspace(m: ExactMatrix) -> list[list[Fraction]]:
    """Basis of {x : m x = 0} as dense rational vectors, scaled to be primitive integral."""
    red = ColumnReducer(track=True)
    for j in range(m.cols):
        red.add(m._data.get(j, {}))
    basis = []
    for combo in red.kernel:
        vec, _ = _integral(combo)
        vec, _ = _primitive(vec)
        dense = [Fraction(0)] * m.cols
        for k, v in vec.items():
            dense[k] = Fraction(v)
        basis.append(dense)
    return basis


def solve(m: ExactMatrix, rhs: Sequence[object]) -> list[Fraction] | None:
    """Some x with m x = rhs, or None when the system is inconsistent."""
    if len(rhs) != m.rows:
        raise ValueError(f"right-hand side has length {len(rhs)}, expected {m.rows}")
    red = ColumnReducer(track=True)
    for j in range(m.cols):
        red.add(m._data.get(j, {}))
    target = {i: to_scalar(v) for i, v in enumerate(rhs) if v != 0}
    coeffs = red.express(target)
    if coeffs is None:
        return None
    x = [Fraction(0)] * m.cols
    for k, v in coeffs.items():
        x[k] = Fraction(v)
    return x
