"""Multilinear maps as dense exact tensors, with the graded operations on them.

``MultiMap.entries`` has shape (d,)*n + (w,): entry [i_1, ..., i_n, k] is the
coefficient of target basis vector k in f(e_{i_1}, ..., e_{i_n}). Flattening
the input indices in C order makes i_1 the most significant digit, which is
the convention for every matrix in the package. As a cochain vector, f is
the C-order flattening of ``entries`` (input tuple first, output index last).
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Any

import numpy as np

from . import kernels, signs
from .backend import DENSE as ops
from .core import Algebra, Bimodule, LinearMap, StructureError
from .scalars import tensor, to_scalar, zeros

__all__ = [
    "MultiMap",
    "contraction",
    "cup_product",
    "cup_bracket",
    "hochschild_delta",
    "fn_bracket",
    "operator_differential",
]


@dataclass(frozen=True, eq=False)
class MultiMap:
    arity: int
    source: int
    target: int
    entries: np.ndarray

    def __post_init__(self):
        if self.arity < 0:
            raise StructureError("arity must be non-negative")
        shape = (self.source,) * self.arity + (self.target,)
        arr = tensor(self.entries)
        if arr.shape != shape:
            if arr.size == 0 and int(np.prod(shape)) == 0:
                arr = zeros(shape)
            else:
                raise StructureError(f"entries: expected shape {shape}, got {arr.shape}")
        arr.setflags(write=False)
        object.__setattr__(self, "entries", arr)

    # constructors ------------------------------------------------------

    @classmethod
    def zero(cls, arity: int, source: int, target: int) -> "MultiMap":
        return cls(arity, source, target, zeros((source,) * arity + (target,)))

    @classmethod
    def from_vector(cls, arity: int, source: int, target: int, vec) -> "MultiMap":
        arr = tensor(list(vec))
        return cls(arity, source, target, arr.reshape((source,) * arity + (target,)))

    @classmethod
    def from_linear_map(cls, m: LinearMap) -> "MultiMap":
        return cls(1, m.cols, m.rows, m.matrix.T.copy())

    @classmethod
    def from_product(cls, a: Algebra) -> "MultiMap":
        return cls(2, a.dim, a.dim, a.mu)

    @classmethod
    def identity(cls, d: int) -> "MultiMap":
        return cls.from_linear_map(LinearMap.identity(d))

    @classmethod
    def _raw(cls, arity: int, source: int, target: int, arr: np.ndarray) -> "MultiMap":
        return cls(arity, source, target, arr)

    # views -------------------------------------------------------------

    def vector(self) -> list[Fraction]:
        return [Fraction(x) for x in self.entries.reshape(-1)]

    def to_linear_map(self) -> LinearMap:
        if self.arity != 1:
            raise StructureError("only arity-1 maps are linear maps")
        return LinearMap(self.entries.T.copy())

    def __call__(self, *args) -> np.ndarray:
        """Evaluate on vectors (each a sequence of scalars)."""
        if len(args) != self.arity:
            raise ValueError(f"expected {self.arity} arguments")
        res = self.entries
        for a in args:
            res = np.tensordot(tensor(a), res, axes=([0], [0]))
        return res

    def batch(self) -> np.ndarray:
        return self.entries[None]

    def like(self, arr: np.ndarray, arity: int | None = None) -> "MultiMap":
        return MultiMap(self.arity if arity is None else arity, self.source, arr.shape[-1], arr)

    # arithmetic --------------------------------------------------------

    def _check(self, other: "MultiMap") -> None:
        if (self.arity, self.source, self.target) != (other.arity, other.source, other.target):
            raise StructureError("maps of different shapes")

    def __add__(self, other: "MultiMap") -> "MultiMap":
        self._check(other)
        return MultiMap(self.arity, self.source, self.target, self.entries + other.entries)

    def __sub__(self, other: "MultiMap") -> "MultiMap":
        self._check(other)
        return MultiMap(self.arity, self.source, self.target, self.entries - other.entries)

    def __neg__(self) -> "MultiMap":
        return self.scale(-1)

    def scale(self, c: Any) -> "MultiMap":
        return MultiMap(self.arity, self.source, self.target, self.entries * to_scalar(c))

    def is_zero(self) -> bool:
        return all(x == 0 for x in self.entries.reshape(-1))

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, MultiMap):
            return NotImplemented
        return (self.arity, self.source, self.target) == (other.arity, other.source, other.target) and bool(
            np.all(self.entries == other.entries)
        )

    __hash__ = object.__hash__

    def __repr__(self) -> str:
        return f"MultiMap(arity={self.arity}, {self.source}->{self.target})"


def contraction(f: MultiMap, g: MultiMap) -> MultiMap:
    """i_g f: sum over positions i of (-1)^{(i-1)(n-1)} f(.., g(a_i..a_{i+n-1}), ..)."""
    m, n = f.arity, g.arity
    if m < 1 or n < 1:
        raise StructureError("contraction needs arities at least 1")
    if f.source != g.source or g.target != f.source:
        raise StructureError("g must map into the source of f")
    d = f.source
    acc = zeros((d,) * (m + n - 1) + (f.target,))
    for i in range(1, m + 1):
        # contract g's output with f's slot i-1, then move g's inputs into place
        res = np.tensordot(g.entries, f.entries, axes=([n], [i - 1]))
        # axes now: g inputs (n), f slots before i-1, f slots after, f output
        order = list(range(n, n + i - 1)) + list(range(n)) + list(range(n + i - 1, m + n))
        res = np.transpose(res, order)
        acc = acc + res * signs.contraction(i, n)
    return MultiMap(m + n - 1, d, f.target, acc)


def cup_product(f: MultiMap, g: MultiMap, a: Algebra) -> MultiMap:
    """(f u g)(a_1..a_{m+n}) = f(a_1..a_m) . g(a_{m+1}..a_{m+n})."""
    d = a.dim
    for h in (f, g):
        if h.source != d or h.target != d:
            raise StructureError("cup product needs maps A^n -> A")
    fm = np.tensordot(f.entries, a.mu, axes=([f.arity], [0]))  # f inputs, q, k
    res = np.tensordot(fm, g.entries, axes=([f.arity], [g.arity]))  # f inputs, k, g inputs
    res = np.moveaxis(res, f.arity, -1)
    return MultiMap(f.arity + g.arity, d, d, res)


def cup_bracket(f: MultiMap, g: MultiMap, a: Algebra) -> MultiMap:
    """[f, g] = f u g - (-1)^{mn} g u f."""
    res = cup_product(f, g, a) - cup_product(g, f, a).scale(signs.cup_bracket(f.arity, g.arity))
    swapped = cup_product(g, f, a) - cup_product(f, g, a).scale(signs.cup_bracket(g.arity, f.arity))
    if not (res + swapped.scale(signs.cup_bracket(f.arity, g.arity))).is_zero():
        raise AssertionError("cup bracket is not graded antisymmetric")
    return res


def hochschild_delta(a: Algebra, b: Bimodule, f: MultiMap) -> MultiMap:
    """Hochschild coboundary with coefficients in the bimodule b."""
    if f.source != a.dim or f.target != b.dim or b.over != a:
        raise StructureError("cochain does not fit the algebra and bimodule")
    res = kernels.hochschild(ops, f.batch(), f.arity, a.mu, b.left, b.right)[0]
    return MultiMap(f.arity + 1, a.dim, b.dim, res)


def fn_bracket(f: MultiMap, g: MultiMap, a: Algebra) -> MultiMap:
    """[f,g]_FN = [f,g] + (-1)^m i_{delta f} g - (-1)^{(m+1)n} i_{delta g} f."""
    m, n = f.arity, g.arity
    if m < 1 or n < 1:
        raise StructureError("the FN bracket needs arities at least 1")
    adj = Bimodule.adjoint(a)
    c1, c2 = signs.fn_terms(m, n)
    res = cup_bracket(f, g, a)
    res = res + contraction(g, hochschild_delta(a, adj, f)).scale(c1)
    res = res + contraction(f, hochschild_delta(a, adj, g)).scale(c2)
    return res


def operator_differential(a: Algebra, n_op: LinearMap, f: MultiMap) -> MultiMap:
    """d_N f by the explicit formula; arity 0 inputs use the degree-0 extension."""
    adj = Bimodule.adjoint(a)
    n = n_op.matrix
    res = kernels.relative_operator(ops, f.batch(), f.arity, a.mu, adj.left, adj.right, n, n)[0]
    return MultiMap(f.arity + 1, a.dim, a.dim, res)
