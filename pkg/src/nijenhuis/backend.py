"""Two array backends for batched multilinear maps.

A batch of maps A_1 x ... x A_n -> W is held either densely, as an array of
shape (B, d_1, ..., d_n, w), or sparsely, as coordinate triplets. Both
backends expose the same handful of elementary moves, and every formula in
:mod:`nijenhuis.kernels` is written against that common surface:

``out(t, Q)``       post-compose with a linear map Q (matrix, column = image)
``arg(t, i, P)``    substitute P in argument slot i (0-based)
``insert(t, i, c)`` feed c(x_i, x_{i+1}) into slot i; arity grows by one
``left(t, L)``      (x_0, rest) -> L(x_0, t(rest)) with L[j][k][v]
``right(t, R)``     (rest, x_last) -> R(t(rest), x_last) with R[k][j][v]

The dense backend serves single maps; the sparse backend applies a formula
to the whole identity batch at once, which yields the matrix of the formula.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from .linalg import ExactMatrix, compact
from .scalars import INT_BOUND, tensordot_exact

__all__ = ["Dense", "Sparse", "SparseBatch", "DENSE"]


class Dense:
    """Backend over plain numpy arrays with a leading batch axis."""

    @staticmethod
    def arity(t: np.ndarray) -> int:
        return t.ndim - 2

    @staticmethod
    def out(t: np.ndarray, q: np.ndarray) -> np.ndarray:
        return tensordot_exact(t, q, ([-1], [1]))

    @staticmethod
    def arg(t: np.ndarray, i: int, p: np.ndarray) -> np.ndarray:
        res = tensordot_exact(t, p, ([1 + i], [0]))
        return np.moveaxis(res, -1, 1 + i)

    @staticmethod
    def insert(t: np.ndarray, i: int, c: np.ndarray) -> np.ndarray:
        res = tensordot_exact(t, c, ([1 + i], [2]))
        return np.moveaxis(res, [-2, -1], [1 + i, 2 + i])

    @staticmethod
    def left(t: np.ndarray, lt: np.ndarray) -> np.ndarray:
        res = tensordot_exact(t, lt, ([-1], [1]))
        return np.moveaxis(res, -2, 1)

    @staticmethod
    def right(t: np.ndarray, rt: np.ndarray) -> np.ndarray:
        return tensordot_exact(t, rt, ([-1], [0]))

    @staticmethod
    def add(a: np.ndarray, b: np.ndarray) -> np.ndarray:
        return a + b

    @staticmethod
    def scale(t: np.ndarray, c) -> np.ndarray:
        if c == 1:
            return t
        return t * c

    @staticmethod
    def zero_like(t: np.ndarray, slots: tuple[int, ...], w: int) -> np.ndarray:
        out = np.empty((t.shape[0],) + tuple(slots) + (w,), dtype=object)
        out.reshape(-1)[:] = [Fraction(0)] * out.size
        return out


DENSE = Dense()


@dataclass
class SparseBatch:
    """Coordinate form: coords[:, 0] batch, then slots, then output index."""

    coords: np.ndarray
    vals: np.ndarray
    dims: tuple[int, ...]

    @property
    def arity(self) -> int:
        return len(self.dims) - 2

    def to_matrix(self) -> ExactMatrix:
        rows = int(np.prod(self.dims[1:], dtype=np.int64))
        if self.vals.size == 0:
            return ExactMatrix(rows, self.dims[0])
        r = np.ravel_multi_index(tuple(self.coords[:, 1:].T), self.dims[1:])
        return ExactMatrix.from_triplets(rows, self.dims[0], r, self.coords[:, 0], self.vals)


def _table(t: np.ndarray, key_axis: int, use_int: bool):
    """CSR-style lookup: key value -> list of (remaining indices, coefficient)."""
    moved = np.moveaxis(t, key_axis, 0)
    ptr = [0]
    targets: list[tuple[int, ...]] = []
    coefs: list[object] = []
    rest = moved.shape[1:]
    for k in range(moved.shape[0]):
        block = moved[k]
        for idx in np.ndindex(*rest):
            v = block[idx]
            if v != 0:
                targets.append(idx)
                coefs.append(v)
        ptr.append(len(targets))
    ptr_a = np.array(ptr, dtype=np.int64)
    tg = np.array(targets, dtype=np.int64).reshape(len(targets), len(rest))
    if use_int:
        ints = []
        for v in coefs:
            f = Fraction(v)
            if f.denominator != 1 or abs(f.numerator) >= INT_BOUND:
                ints = None
                break
            ints.append(f.numerator)
        if ints is not None:
            return ptr_a, tg, np.array(ints, dtype=np.int64)
    cf = np.empty(len(coefs), dtype=object)
    for k, v in enumerate(coefs):
        cf[k] = Fraction(v)
    return ptr_a, tg, cf


class Sparse:
    """Backend over :class:`SparseBatch`. Results are always compacted."""

    def __init__(self, integer: bool = True):
        self.integer = integer

    # helpers -----------------------------------------------------------

    @staticmethod
    def identity(slots: tuple[int, ...], w: int, integer: bool = True) -> SparseBatch:
        shape = tuple(slots) + (w,)
        size = int(np.prod(shape, dtype=np.int64))
        b = np.arange(size, dtype=np.int64)
        coords = np.column_stack((b,) + np.unravel_index(b, shape)) if size else np.zeros((0, len(shape) + 1), dtype=np.int64)
        vals = np.ones(size, dtype=np.int64) if integer else np.array([Fraction(1)] * size + [None], dtype=object)[:-1]
        return SparseBatch(coords.astype(np.int64), vals, (size,) + shape)

    def _expand(self, t: SparseBatch, col: int, table):
        ptr, tg, cf = table
        vals = t.vals
        if vals.dtype != object and cf.dtype == object:
            vals = vals.astype(object)
        if vals.dtype != object and vals.size and cf.size:
            if int(np.abs(vals).max()) * int(np.abs(cf).max()) >= 1 << 62:
                vals = vals.astype(object)
                cf = cf.astype(object)
        keys = t.coords[:, col]
        counts = ptr[keys + 1] - ptr[keys]
        total = int(counts.sum())
        rep = np.repeat(np.arange(keys.size), counts)
        within = np.arange(total) - np.repeat(np.cumsum(counts) - counts, counts)
        tidx = ptr[keys][rep] + within
        new_vals = vals[rep] * cf[tidx] if total else vals[:0]
        return rep, tg[tidx], new_vals

    def _finish(self, coords: np.ndarray, vals: np.ndarray, dims: tuple[int, ...]) -> SparseBatch:
        if vals.size == 0:
            return SparseBatch(np.zeros((0, len(dims)), dtype=np.int64), vals, dims)
        keys = np.ravel_multi_index(tuple(coords.T), dims)
        keys, vals = compact(keys, vals)
        coords = np.column_stack(np.unravel_index(keys, dims)).astype(np.int64)
        return SparseBatch(coords, vals, dims)

    def _int(self, t: SparseBatch) -> bool:
        return self.integer and t.vals.dtype != object

    # elementary moves --------------------------------------------------

    def out(self, t: SparseBatch, q: np.ndarray) -> SparseBatch:
        rep, tg, vals = self._expand(t, -1, _table(q, 1, self._int(t)))
        coords = t.coords[rep].copy()
        coords[:, -1] = tg[:, 0]
        return self._finish(coords, vals, t.dims[:-1] + (q.shape[0],))

    def arg(self, t: SparseBatch, i: int, p: np.ndarray) -> SparseBatch:
        rep, tg, vals = self._expand(t, 1 + i, _table(p, 0, self._int(t)))
        coords = t.coords[rep].copy()
        coords[:, 1 + i] = tg[:, 0]
        dims = list(t.dims)
        dims[1 + i] = p.shape[1]
        return self._finish(coords, vals, tuple(dims))

    def insert(self, t: SparseBatch, i: int, c: np.ndarray) -> SparseBatch:
        rep, tg, vals = self._expand(t, 1 + i, _table(c, 2, self._int(t)))
        base = t.coords[rep]
        coords = np.concatenate([base[:, : 1 + i], tg, base[:, 2 + i :]], axis=1)
        dims = t.dims[: 1 + i] + (c.shape[0], c.shape[1]) + t.dims[2 + i :]
        return self._finish(coords, vals, dims)

    def left(self, t: SparseBatch, lt: np.ndarray) -> SparseBatch:
        rep, tg, vals = self._expand(t, -1, _table(lt, 1, self._int(t)))
        base = t.coords[rep]
        coords = np.concatenate([base[:, :1], tg[:, :1], base[:, 1:-1], tg[:, 1:]], axis=1)
        dims = t.dims[:1] + (lt.shape[0],) + t.dims[1:-1] + (lt.shape[2],)
        return self._finish(coords, vals, dims)

    def right(self, t: SparseBatch, rt: np.ndarray) -> SparseBatch:
        rep, tg, vals = self._expand(t, -1, _table(rt, 0, self._int(t)))
        base = t.coords[rep]
        coords = np.concatenate([base[:, :-1], tg], axis=1)
        dims = t.dims[:-1] + (rt.shape[1], rt.shape[2])
        return self._finish(coords, vals, dims)

    def add(self, a: SparseBatch, b: SparseBatch) -> SparseBatch:
        if a.dims != b.dims:
            raise ValueError(f"cannot add batches of shapes {a.dims} and {b.dims}")
        va, vb = a.vals, b.vals
        if va.dtype != vb.dtype:
            va, vb = va.astype(object), vb.astype(object)
        return self._finish(np.concatenate([a.coords, b.coords]), np.concatenate([va, vb]), a.dims)

    def scale(self, t: SparseBatch, c) -> SparseBatch:
        if c == 1:
            return t
        c = Fraction(c)
        if c == 0:
            return SparseBatch(t.coords[:0], t.vals[:0], t.dims)
        if t.vals.dtype != object and c.denominator == 1 and abs(c.numerator) < INT_BOUND:
            return SparseBatch(t.coords, t.vals * c.numerator, t.dims)
        return SparseBatch(t.coords, t.vals.astype(object) * c, t.dims)

    @staticmethod
    def zero_like(t: SparseBatch, slots: tuple[int, ...], w: int) -> SparseBatch:
        dims = (t.dims[0],) + tuple(slots) + (w,)
        return SparseBatch(np.zeros((0, len(dims)), dtype=np.int64), t.vals[:0], dims)
