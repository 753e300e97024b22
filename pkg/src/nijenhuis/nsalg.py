"""NS-algebras, labeled cochains O_A(n) and their partial compositions.

Labels are 1-based, matching the symbols [1], ..., [n+1]; every other index
is 0-based. A labeled cochain of arity 1 has the single label 1, and of
arity n >= 2 the labels 1..n+1.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Any, Sequence

import numpy as np

from . import kernels, signs
from .backend import DENSE as ops
from .backend import Sparse
from .core import Algebra, NijAlgebra, Report, StructureError
from .linalg import ExactMatrix
from .scalars import int64_view, tensor, tensordot_exact, to_scalar, zeros
from .tensor import MultiMap

__all__ = [
    "NSAlgebra",
    "LabeledCochain",
    "induced_ns",
    "verify_ns",
    "encode",
    "decode",
    "partial_composition",
    "ns_bracket",
    "ns_differential",
    "theta_map",
    "theta_matrix",
    "psi_map",
    "ns_space_dim",
]


def ns_space_dim(n: int, d: int) -> int:
    """dim O_A(n) = d^2 for n = 1 and (n+1) d^{n+1} otherwise."""
    return len(kernels.labels(n)) * d ** (n + 1)


@dataclass(frozen=True, eq=False)
class NSAlgebra:
    dim: int
    prec: np.ndarray
    succ: np.ndarray
    vee: np.ndarray

    def __post_init__(self):
        shape = (self.dim,) * 3
        for name in ("prec", "succ", "vee"):
            arr = tensor(getattr(self, name))
            if arr.shape != shape:
                raise StructureError(f"{name}: expected shape {shape}, got {arr.shape}")
            arr.setflags(write=False)
            object.__setattr__(self, name, arr)

    def components(self) -> dict[int, np.ndarray]:
        return {1: self.prec, 2: self.succ, 3: self.vee}

    def total(self) -> np.ndarray:
        return self.prec + self.succ + self.vee

    def total_algebra(self) -> Algebra:
        return Algebra(self.dim, self.total())

    @property
    def dendriform(self) -> bool:
        return all(x == 0 for x in self.vee.reshape(-1))


@dataclass(frozen=True, eq=False)
class LabeledCochain:
    """An element of O_A(n): one arity-n MultiMap A^n -> A per label."""

    arity: int
    dim: int
    components: tuple[MultiMap, ...]

    def __post_init__(self):
        if self.arity < 1:
            raise StructureError("labeled cochains have arity at least 1")
        want = len(kernels.labels(self.arity))
        comps = tuple(self.components)
        if len(comps) != want:
            raise StructureError(f"arity {self.arity} needs {want} components, got {len(comps)}")
        for c in comps:
            if (c.arity, c.source, c.target) != (self.arity, self.dim, self.dim):
                raise StructureError("components must be maps A^n -> A of the cochain's arity")
        object.__setattr__(self, "components", comps)

    @classmethod
    def from_arrays(cls, arity: int, dim: int, arrays: Sequence[Any]) -> "LabeledCochain":
        return cls(arity, dim, tuple(MultiMap(arity, dim, dim, a) for a in arrays))

    @classmethod
    def zero(cls, arity: int, dim: int) -> "LabeledCochain":
        return cls(arity, dim, tuple(MultiMap.zero(arity, dim, dim) for _ in kernels.labels(arity)))

    @classmethod
    def from_vector(cls, arity: int, dim: int, vec: Sequence[Any]) -> "LabeledCochain":
        size = dim ** (arity + 1)
        vec = list(vec)
        if len(vec) != ns_space_dim(arity, dim):
            raise StructureError("vector length does not match dim O_A(n)")
        parts = [vec[j * size : (j + 1) * size] for j in range(len(kernels.labels(arity)))]
        return cls(arity, dim, tuple(MultiMap.from_vector(arity, dim, dim, p) for p in parts))

    @classmethod
    def single(cls, f: MultiMap) -> "LabeledCochain":
        """Arity-n cochain with every label evaluating to f."""
        return cls(f.arity, f.source, tuple(f for _ in kernels.labels(f.arity)))

    def labels(self) -> range:
        return kernels.labels(self.arity)

    def component(self, r: int) -> MultiMap:
        return self.components[r - 1]

    def as_dict(self) -> dict[int, np.ndarray]:
        return {r: self.component(r).entries for r in self.labels()}

    def vector(self) -> list:
        out: list = []
        for c in self.components:
            out.extend(c.vector())
        return out

    def total(self) -> MultiMap:
        """Evaluation at [1] + ... + [n+1]."""
        acc = self.components[0]
        for c in self.components[1:]:
            acc = acc + c
        return acc

    def __add__(self, other: "LabeledCochain") -> "LabeledCochain":
        self._check(other)
        return LabeledCochain(self.arity, self.dim, tuple(a + b for a, b in zip(self.components, other.components)))

    def __sub__(self, other: "LabeledCochain") -> "LabeledCochain":
        return self + other.scale(-1)

    def scale(self, c: Any) -> "LabeledCochain":
        c = to_scalar(c)
        return LabeledCochain(self.arity, self.dim, tuple(x.scale(c) for x in self.components))

    def is_zero(self) -> bool:
        return all(c.is_zero() for c in self.components)

    def _check(self, other: "LabeledCochain") -> None:
        if (self.arity, self.dim) != (other.arity, other.dim):
            raise StructureError("labeled cochains of different shapes")

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, LabeledCochain):
            return NotImplemented
        return (self.arity, self.dim) == (other.arity, other.dim) and all(
            a == b for a, b in zip(self.components, other.components)
        )

    __hash__ = object.__hash__

    def __repr__(self) -> str:
        return f"LabeledCochain(arity={self.arity}, dim={self.dim})"


def induced_ns(na: NijAlgebra) -> NSAlgebra:
    """a < b = a N(b), a > b = N(a) b, a v b = -N(ab)."""
    mu = na.mu[None]
    n = na.n
    prec = ops.arg(mu, 1, n)[0]
    succ = ops.arg(mu, 0, n)[0]
    vee = ops.scale(ops.out(mu, n), -1)[0]
    return NSAlgebra(na.dim, prec, succ, vee)


def encode(ns: NSAlgebra) -> LabeledCochain:
    """pi([1]) = <, pi([2]) = >, pi([3]) = v."""
    return LabeledCochain.from_arrays(2, ns.dim, [ns.prec, ns.succ, ns.vee])


def decode(pi: LabeledCochain) -> NSAlgebra:
    if pi.arity != 2:
        raise StructureError("an NS structure is an arity-2 labeled cochain")
    return NSAlgebra(pi.dim, *(c.entries for c in pi.components))


def _compose2(outer: np.ndarray, inner: np.ndarray, first: bool) -> np.ndarray:
    """outer(inner(a,b), c) if first else outer(a, inner(b,c)), as a d^3 x d tensor."""
    if first:
        return np.einsum("abq,qck->abck", inner, outer)
    return np.einsum("bcq,aqk->abck", inner, outer)


def verify_ns(ns: NSAlgebra) -> Report:
    """The four NS identities on all basis triples; notes['dendriform'] flags v = 0."""
    rep = Report("ns-algebra")
    p, s, v = ns.prec, ns.succ, ns.vee
    t = ns.total()

    def c(outer, inner, first):
        return _compose2(outer, inner, first)

    rep.compare("ns-1", c(p, p, True), c(p, t, False), 3)
    rep.compare("ns-2", c(p, s, True), c(s, p, False), 3)
    rep.compare("ns-3", c(s, t, True), c(s, s, False), 3)
    rep.compare("ns-4", c(v, t, True) + c(p, v, True), c(s, v, False) + c(v, t, False), 3)
    rep.notes["dendriform"] = ns.dendriform
    return rep


# ---------------------------------------------------------------------------
# partial compositions


def insert_map(f: np.ndarray, i: int, g: np.ndarray, dot=tensordot_exact) -> np.ndarray:
    """f(a_1..a_{i-1}, g(a_i..a_{i+n-1}), ...) for dense tensors; i is 1-based."""
    m, n = f.ndim - 1, g.ndim - 1
    res = dot(f, g, ([i - 1], [n]))
    # axes: f slots before, f slots after, f output, g inputs
    order = list(range(i - 1)) + list(range(m, m + n)) + list(range(i - 1, m - 1)) + [m - 1]
    return np.transpose(res, order)


def partial_composition(f: LabeledCochain, g: LabeledCochain, i: int) -> LabeledCochain:
    m, n = f.arity, g.arity
    if f.dim != g.dim:
        raise StructureError("cochains over different spaces")
    if not 1 <= i <= m:
        raise ValueError(f"position {i} outside 1..{m}")
    d = f.dim
    out = kernels.compose_labeled(
        m,
        n,
        i,
        f.as_dict(),
        g.as_dict(),
        lambda a, b: insert_map(a, i, b),
        np.add,
        lambda: zeros((d,) * (m + n - 1) + (d,)),
    )
    return LabeledCochain.from_arrays(m + n - 1, d, [out[r] for r in kernels.labels(m + n - 1)])


def ns_bracket(f: LabeledCochain, g: LabeledCochain) -> LabeledCochain:
    """[[f, g]] = sum_i (-1)^{(i-1)(n-1)} f o_i g - (-1)^{(m-1)(n-1)} sum_i (-1)^{(i-1)(m-1)} g o_i f."""
    m, n = f.arity, g.arity
    acc = LabeledCochain.zero(m + n - 1, f.dim)
    for i in range(1, m + 1):
        acc = acc + partial_composition(f, g, i).scale(signs.ns_bracket(i, m, n))
    swap = signs.ns_bracket_swap(m, n)
    for i in range(1, n + 1):
        acc = acc - partial_composition(g, f, i).scale(swap * signs.ns_bracket(i, n, m))
    return acc


def ns_differential(pi: LabeledCochain, f: LabeledCochain, check: bool = True) -> LabeledCochain:
    """delta_pi f = (-1)^{n-1} [[pi, f]]; pi must be Maurer-Cartan."""
    if pi.arity != 2:
        raise StructureError("pi must have arity 2")
    if check and not ns_bracket(pi, pi).is_zero():
        raise StructureError("pi is not a Maurer-Cartan element")
    return ns_bracket(pi, f).scale(signs.ns_differential(f.arity))


def ns_differential_fast(pi: LabeledCochain, f: LabeledCochain) -> LabeledCochain:
    """Same map through the shared batched kernel."""
    d = f.dim
    comps = {r: f.component(r).batch() for r in f.labels()}
    out = kernels.ns_differential(ops, comps, f.arity, pi.as_dict(), d)
    return LabeledCochain.from_arrays(f.arity + 1, d, [out[r][0] for r in kernels.labels(f.arity + 1)])


# ---------------------------------------------------------------------------
# comparison maps


def theta_map(na: NijAlgebra, f: MultiMap) -> LabeledCochain:
    """Theta_n(f) in O_A(n+1)."""
    if f.arity < 1:
        raise StructureError("Theta_n needs n >= 1")
    if f.source != na.dim or f.target != na.dim:
        raise StructureError("f must be a map A^n -> A")
    comps = kernels.theta(ops, f.batch(), f.arity, na.mu, na.dim)
    return LabeledCochain.from_arrays(f.arity + 1, na.dim, [comps[r][0] for r in kernels.labels(f.arity + 1)])


def theta_matrix(na: NijAlgebra, n: int) -> ExactMatrix:
    """Matrix of Theta_n: Hom(A^n, A) -> O_A(n+1), target blocks ordered by label."""
    if n < 1:
        raise StructureError("Theta_n needs n >= 1")
    d = na.dim
    integer = int64_view(na.mu) is not None
    sparse = Sparse(integer)
    comps = kernels.theta(sparse, Sparse.identity((d,) * n, d, integer), n, na.mu, d)
    tgt = list(kernels.labels(n + 1))
    return ExactMatrix.block([[comps[r].to_matrix()] for r in tgt], [d ** (n + 2)] * len(tgt), [d ** (n + 1)])


def psi_map(na: NijAlgebra, f: MultiMap) -> MultiMap:
    """Psi_n(f): the total of Theta_n(f)."""
    return theta_map(na, f).total()
