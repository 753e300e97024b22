"""2-term A-infinity algebras, homotopy Nijenhuis operators and NS-infinity algebras.

Gradings are homological: mu_n has degree n - 2, so mu_1 lowers degree by
one and a 2-term algebra lives in degrees 0 and 1 with mu_1 = d: A_1 -> A_0.
A graded space is a list of (degree, dim) blocks; its basis is the
concatenation of the blocks, and every operation is one dense tensor over
the whole space whose entries vanish off the allowed degrees.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations
from typing import Any, Mapping, Sequence

import numpy as np

from . import kernels, signs
from .backend import DENSE as ops
from .core import (
    Algebra,
    Bimodule,
    LinearMap,
    NijAlgebra,
    NijBimodule,
    Report,
    StructureError,
    require,
    verify_core,
)
from .nsalg import insert_map
from .scalars import tensor, to_scalar, zeros

__all__ = [
    "TwoTermAInf",
    "HomotopyNijOp",
    "CrossedModule",
    "GradedAInf",
    "NSInfAlgebra",
    "verify_homotopy",
    "skeletal_correspondence",
    "crossed_correspondence",
    "to_graded",
    "graded_operator",
    "induced_nsinf",
    "deformed_ainf",
    "ainf_semidirect",
    "rb_lift",
    "is_strict_relative_rb",
    "DEFAULT_K_MAX",
]

DEFAULT_K_MAX = 4


# ---------------------------------------------------------------------------
# types


@dataclass(frozen=True, eq=False)
class TwoTermAInf:
    """d: A_1 -> A_0, mu2 on A0xA0, A0xA1, A1xA0, and mu3: A0^3 -> A1."""

    a0: int
    a1: int
    bdry: LinearMap
    m00: np.ndarray
    m01: np.ndarray
    m10: np.ndarray
    mu3: np.ndarray

    def __post_init__(self):
        a0, a1 = self.a0, self.a1
        object.__setattr__(self, "bdry", LinearMap(self.bdry, a0, a1))
        shapes = {"m00": (a0, a0, a0), "m01": (a0, a1, a1), "m10": (a1, a0, a1), "mu3": (a0, a0, a0, a1)}
        for name, shape in shapes.items():
            arr = tensor(getattr(self, name))
            if arr.shape != shape:
                if arr.size == 0 and int(np.prod(shape)) == 0:
                    arr = zeros(shape)
                else:
                    raise StructureError(f"{name}: expected shape {shape}, got {arr.shape}")
            arr.setflags(write=False)
            object.__setattr__(self, name, arr)

    @property
    def d(self) -> np.ndarray:
        return self.bdry.matrix

    @property
    def skeletal(self) -> bool:
        return self.bdry.is_zero()

    @property
    def strict(self) -> bool:
        return all(x == 0 for x in self.mu3.reshape(-1))

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, TwoTermAInf):
            return NotImplemented
        return (self.a0, self.a1) == (other.a0, other.a1) and all(
            np.array_equal(getattr(self, k), getattr(other, k)) for k in ("d", "m00", "m01", "m10", "mu3")
        )

    __hash__ = object.__hash__


@dataclass(frozen=True, eq=False)
class HomotopyNijOp:
    n0: LinearMap
    n1: LinearMap
    n2: np.ndarray

    def __post_init__(self):
        n0, n1 = LinearMap(self.n0), LinearMap(self.n1)
        object.__setattr__(self, "n0", n0)
        object.__setattr__(self, "n1", n1)
        shape = (n0.rows, n0.rows, n1.rows)
        arr = tensor(self.n2)
        if arr.shape != shape:
            if arr.size == 0 and int(np.prod(shape)) == 0:
                arr = zeros(shape)
            else:
                raise StructureError(f"n2: expected shape {shape}, got {arr.shape}")
        arr.setflags(write=False)
        object.__setattr__(self, "n2", arr)

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, HomotopyNijOp):
            return NotImplemented
        return self.n0 == other.n0 and self.n1 == other.n1 and np.array_equal(self.n2, other.n2)

    __hash__ = object.__hash__


@dataclass(frozen=True, eq=False)
class CrossedModule:
    base: NijAlgebra
    top: NijAlgebra
    phi: LinearMap
    actions: Bimodule

    def __post_init__(self):
        object.__setattr__(self, "phi", LinearMap(self.phi, self.base.dim, self.top.dim))
        if self.actions.over != self.base.algebra or self.actions.dim != self.top.dim:
            raise StructureError("actions must make the top space a bimodule over the base algebra")

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, CrossedModule):
            return NotImplemented
        return (
            self.base == other.base
            and self.top == other.top
            and self.phi == other.phi
            and self.actions == other.actions
        )

    __hash__ = object.__hash__


def _degrees(blocks: Sequence[tuple[int, int]]) -> list[int]:
    out: list[int] = []
    for deg, dim in blocks:
        out += [deg] * dim
    return out


@dataclass(frozen=True, eq=False)
class GradedAInf:
    """Truncated A-infinity algebra: ops[n] is the tensor of mu_n, absent arities are zero."""

    blocks: tuple[tuple[int, int], ...]
    ops: Mapping[int, np.ndarray]
    window: tuple[int, int] | None = None

    def __post_init__(self):
        blocks = tuple((int(d), int(n)) for d, n in self.blocks)
        object.__setattr__(self, "blocks", blocks)
        lo = min((d for d, _ in blocks), default=0)
        hi = max((d for d, _ in blocks), default=0)
        window = (lo, hi) if self.window is None else tuple(self.window)
        if any(not window[0] <= d <= window[1] for d, _ in blocks):
            raise StructureError("a block lies outside the degree window")
        object.__setattr__(self, "window", window)
        dim = self.dim
        clean = {}
        for n, t in self.ops.items():
            n = int(n)
            if n < 1:
                raise StructureError("operations have arity at least 1")
            arr = tensor(t)
            if arr.shape != (dim,) * (n + 1):
                raise StructureError(f"mu_{n}: expected shape {(dim,) * (n + 1)}, got {arr.shape}")
            _check_degree(arr, self.degrees, n - 2, f"mu_{n}")
            arr.setflags(write=False)
            clean[n] = arr
        object.__setattr__(self, "ops", clean)

    @property
    def degrees(self) -> list[int]:
        return _degrees(self.blocks)

    @property
    def dim(self) -> int:
        return sum(n for _, n in self.blocks)

    @property
    def n_max(self) -> int:
        return max(self.ops, default=0)

    def op(self, n: int) -> np.ndarray:
        if n in self.ops:
            return self.ops[n]
        return zeros((self.dim,) * (n + 1))


@dataclass(frozen=True, eq=False)
class NSInfAlgebra:
    """eta[n][r] is the tensor of eta_n([r]; -), labels as in O_A(n)."""

    blocks: tuple[tuple[int, int], ...]
    eta: Mapping[int, Mapping[int, np.ndarray]]

    def __post_init__(self):
        blocks = tuple((int(d), int(n)) for d, n in self.blocks)
        object.__setattr__(self, "blocks", blocks)
        dim = sum(n for _, n in blocks)
        degs = _degrees(blocks)
        clean = {}
        for n, comps in self.eta.items():
            if set(comps) != set(kernels.labels(n)):
                raise StructureError(f"eta_{n} needs labels {list(kernels.labels(n))}")
            clean[n] = {}
            for r, t in comps.items():
                arr = tensor(t)
                if arr.shape != (dim,) * (n + 1):
                    raise StructureError(f"eta_{n}[{r}] has the wrong shape")
                _check_degree(arr, degs, n - 2, f"eta_{n}[{r}]")
                arr.setflags(write=False)
                clean[n][r] = arr
        object.__setattr__(self, "eta", clean)

    @property
    def degrees(self) -> list[int]:
        return _degrees(self.blocks)

    @property
    def dim(self) -> int:
        return sum(n for _, n in self.blocks)

    def component(self, n: int, r: int) -> np.ndarray:
        if n in self.eta:
            return self.eta[n][r]
        return zeros((self.dim,) * (n + 1))

    def total(self, n: int) -> np.ndarray:
        acc = zeros((self.dim,) * (n + 1))
        for r in kernels.labels(n):
            acc = acc + self.component(n, r)
        return acc


def _check_degree(arr: np.ndarray, degs: Sequence[int], shift: int, name: str) -> None:
    for idx in zip(*np.nonzero(arr != 0)):
        *ins, out = idx
        if degs[out] != sum(degs[i] for i in ins) + shift:
            raise StructureError(f"{name} has a nonzero entry of the wrong degree at {tuple(int(i) for i in idx)}")


# ---------------------------------------------------------------------------
# 2-term identities


def _b(t):
    return t[None]


def _two_term_laws(rep: Report, g: TwoTermAInf) -> None:
    d, m00, m01, m10, mu3 = g.d, g.m00, g.m01, g.m10, g.mu3
    c = rep.compare
    # (1) d mu2(a,u) = mu2(a, du)
    c("ainf-1", ops.out(_b(m01), d)[0], ops.arg(_b(m00), 1, d)[0], 2)
    # (2) d mu2(u,a) = mu2(du, a)
    c("ainf-2", ops.out(_b(m10), d)[0], ops.arg(_b(m00), 0, d)[0], 2)
    # (3) mu2(du, v) = mu2(u, dv)
    c("ainf-3", ops.arg(_b(m01), 0, d)[0], ops.arg(_b(m10), 1, d)[0], 2)
    # (4) d mu3(a,b,c) = mu2(mu2(a,b),c) - mu2(a,mu2(b,c))
    c("ainf-4", ops.out(_b(mu3), d)[0], insert_map(m00, 1, m00) - insert_map(m00, 2, m00), 3)
    # (5)-(7)
    c("ainf-5", ops.arg(_b(mu3), 2, d)[0], insert_map(m01, 1, m00) - insert_map(m01, 2, m01), 3)
    c("ainf-6", ops.arg(_b(mu3), 1, d)[0], insert_map(m10, 1, m01) - insert_map(m01, 2, m10), 3)
    c("ainf-7", ops.arg(_b(mu3), 0, d)[0], insert_map(m10, 1, m10) - insert_map(m10, 2, m00), 3)
    # (8)
    lhs = (
        insert_map(m01, 2, mu3)
        - insert_map(mu3, 1, m00)
        + insert_map(mu3, 2, m00)
        - insert_map(mu3, 3, m00)
        + insert_map(m10, 1, mu3)
    )
    c("ainf-8", lhs, zeros(lhs.shape), 4)


def _deformed(t: np.ndarray, slots: Sequence[int], n_in: Sequence[np.ndarray], n_out: np.ndarray) -> np.ndarray:
    """sum over the listed slots of t(N on that slot) - N_out(t), for a binary tensor."""
    acc = ops.scale(ops.out(_b(t), n_out), -1)
    for s in slots:
        acc = ops.add(acc, ops.arg(_b(t), s, n_in[s]))
    return acc[0]


def _homotopy_nij_laws(rep: Report, g: TwoTermAInf, h: HomotopyNijOp) -> None:
    d, m00, m01, m10, mu3 = g.d, g.m00, g.m01, g.m10, g.mu3
    n0, n1, n2 = h.n0.matrix, h.n1.matrix, h.n2
    c = rep.compare
    c("infnij-1", d.dot(n1).T, n0.dot(d).T, 1)
    # (2) N0(a._N b) - mu2(N0 a, N0 b) = d N2(a,b)
    p00 = _deformed(m00, (0, 1), (n0, n0), n0)
    lhs = ops.out(_b(p00), n0)[0] - ops.arg(ops.arg(_b(m00), 0, n0), 1, n0)[0]
    c("infnij-2", lhs, ops.out(_b(n2), d)[0], 2)
    # (3) N1(mu2(N0 a,u) + mu2(a,N1 u) - N1 mu2(a,u)) - mu2(N0 a, N1 u) = N2(a, du)
    p01 = _deformed(m01, (0, 1), (n0, n1), n1)
    lhs = ops.out(_b(p01), n1)[0] - ops.arg(ops.arg(_b(m01), 0, n0), 1, n1)[0]
    c("infnij-3", lhs, ops.arg(_b(n2), 1, d)[0], 2)
    # (4)
    p10 = _deformed(m10, (0, 1), (n1, n0), n1)
    lhs = ops.out(_b(p10), n1)[0] - ops.arg(ops.arg(_b(m10), 0, n1), 1, n0)[0]
    c("infnij-4", lhs, ops.arg(_b(n2), 0, d)[0], 2)
    # (5) transcribed term by term
    lhs = (
        ops.arg(_b(insert_map(m01, 2, n2)), 0, n0)[0]
        - ops.arg(_b(insert_map(m10, 1, n2)), 2, n0)[0]
        - insert_map(n2, 1, p00)
        + insert_map(n2, 2, p00)
    )
    inner = insert_map(m01, 2, n2) - insert_map(n2, 1, m00) + insert_map(n2, 2, m00) - insert_map(m10, 1, n2)
    lhs = lhs - ops.out(_b(inner), n1)[0]
    rhs = zeros(mu3.shape)
    for k in range(4):
        for plain in combinations(range(3), k):
            t = _b(mu3)
            for s in range(3):
                if s not in plain:
                    t = ops.arg(t, s, n0)
            for _ in range(k):
                t = ops.out(t, n1)
            rhs = rhs + t[0] * signs.alternating(k)
    c("infnij-5", lhs, rhs, 3)


def _crossed_laws(rep: Report, cm: CrossedModule) -> None:
    base, top, phi, act = cm.base, cm.top, cm.phi.matrix, cm.actions
    lt, rt, m1, mu = act.left, act.right, top.mu, base.mu
    nb = NijBimodule(base, act, top.n_op)
    rep.merge(verify_core("nij-algebra", base), "base:")
    rep.merge(verify_core("nij-algebra", top), "top:")
    rep.merge(verify_core("nij-bimodule", nb), "actions:")
    rep.merge(verify_core("nij-morphism", (top, base), cm.phi), "phi:")
    c = rep.compare
    # a |> (u v) = (a |> u) v
    c("crossed-1a", insert_map(lt, 2, m1), insert_map(m1, 1, lt), 3)
    # (u <| a) v = u (a |> v)
    c("crossed-1b", insert_map(m1, 1, rt), insert_map(m1, 2, lt), 3)
    # (u v) <| a = u (v <| a)
    c("crossed-1c", insert_map(rt, 1, m1), insert_map(m1, 2, rt), 3)
    # phi(a |> u) = a phi(u), phi(u <| a) = phi(u) a
    c("crossed-2a", ops.out(_b(lt), phi)[0], ops.arg(_b(mu), 1, phi)[0], 2)
    c("crossed-2b", ops.out(_b(rt), phi)[0], ops.arg(_b(mu), 0, phi)[0], 2)
    # phi(u) |> v = u v = u <| phi(v)
    c("crossed-2c", ops.arg(_b(lt), 0, phi)[0], m1, 2)
    c("crossed-2d", ops.arg(_b(rt), 1, phi)[0], m1, 2)


# ---------------------------------------------------------------------------
# graded identities


def _koszul_mask(degs: Sequence[int], count: int, n: int, total_axes: int) -> np.ndarray | int:
    """(-1)^{n (|a_1| + ... + |a_count|)} as a broadcastable integer array."""
    if count == 0 or n % 2 == 0:
        return 1
    s = np.array([signs.parity(dg) for dg in degs], dtype=np.int64)
    mask = s
    for _ in range(count - 1):
        mask = np.multiply.outer(mask, s)
    return mask.reshape(mask.shape + (1,) * (total_axes - count))


class _Integers:
    """Tensors rescaled by one common denominator, so that identities of the
    form (sum of two-fold compositions) = 0 can be tested on integers."""

    def __init__(self, tensors: Sequence[np.ndarray], dim: int, k_max: int):
        flat = [to_scalar(x) for t in tensors for x in t.reshape(-1)]
        self.den = math.lcm(1, *(q.denominator for q in flat))
        top = max((abs(q.numerator) * (self.den // q.denominator) for q in flat), default=0)
        # at most 2^k_max compositions with dim^(k_max) summands each
        small = top * top * dim ** max(k_max, 1) * 2 ** (k_max + 2) < 2**62
        self.dtype = np.int64 if small else object

    def __call__(self, t: np.ndarray) -> np.ndarray:
        out = np.empty(t.shape, dtype=object)
        out.reshape(-1)[:] = [int(to_scalar(x) * self.den) for x in t.reshape(-1)]
        return out.astype(self.dtype)

    def zeros(self, shape) -> np.ndarray:
        return np.zeros(shape, dtype=np.int64).astype(self.dtype)

    def record(self, rep: Report, law: str, total: np.ndarray, lead: int) -> None:
        """Compare den^2 * (identity) with zero, reporting rescaled values."""
        if total.any():
            lhs = np.empty(total.shape, dtype=object)
            lhs.reshape(-1)[:] = [Fraction(int(x), self.den**2) for x in total.reshape(-1)]
            rep.compare(law, lhs, zeros(total.shape), lead)
        else:
            rep.compare(law, total, total, lead)


def _int_insert(f: np.ndarray, i: int, g: np.ndarray) -> np.ndarray:
    return insert_map(f, i, g, dot=lambda a, b, axes: np.tensordot(a, b, axes=axes))


def _ainf_laws(rep: Report, g: GradedAInf, k_max: int) -> None:
    dim, degs = g.dim, g.degrees
    arities = range(1, k_max + 1)
    conv = _Integers([g.ops[n] for n in g.ops if n <= k_max], dim, k_max)
    ints = {n: conv(g.ops[n]) for n in g.ops if n <= k_max}
    for k in arities:
        acc = conv.zeros((dim,) * (k + 1))
        for n in range(1, k + 1):
            m = k + 1 - n
            if m not in ints or n not in ints or not (ints[m].any() and ints[n].any()):
                continue
            for i in range(1, m + 1):
                term = _int_insert(ints[m], i, ints[n]) * signs.nsinf_outer(i, n)
                acc = acc + term * _koszul_mask(degs, i - 1, n, k + 1)
        conv.record(rep, f"ainf-k{k}", acc, k)


def _strict_hn_term(mu: np.ndarray, n: int, nmat: np.ndarray) -> np.ndarray:
    """sum over subsets S of (-1)^{|S|} N^{|S|} mu(N off S); zero iff the strict identity holds."""
    return kernels.partial(ops, _b(mu), n, nmat, nmat)[0]


def _strict_hn_laws(rep: Report, g: GradedAInf, nmat: np.ndarray) -> None:
    _check_degree(nmat.T, g.degrees, 0, "operator")
    for n in sorted(g.ops):
        t = _strict_hn_term(g.ops[n], n, nmat)
        rep.compare(f"strict-hn-{n}", t, zeros(t.shape), n)


def _nsinf_laws(rep: Report, ns: NSInfAlgebra, k_max: int) -> None:
    dim, degs = ns.dim, ns.degrees
    conv = _Integers([t for n in ns.eta if n <= k_max for t in ns.eta[n].values()], dim, k_max)
    eta = {n: {r: conv(t) for r, t in comps.items()} for n, comps in ns.eta.items() if n <= k_max}
    for k in range(1, k_max + 1):
        total = {r: conv.zeros((dim,) * (k + 1)) for r in kernels.labels(k)}
        for n in range(1, k + 1):
            m = k + 1 - n
            if m not in eta or n not in eta:
                continue
            for i in range(1, m + 1):
                # eta_m o_i eta_n carries the Koszul sign of the inserted block
                mask = _koszul_mask(degs, i - 1, n, k + 1) * signs.nsinf_outer(i, n)
                part = kernels.compose_labeled(
                    m,
                    n,
                    i,
                    eta[m],
                    eta[n],
                    lambda a, b: _int_insert(a, i, b),
                    np.add,
                    lambda: conv.zeros((dim,) * (k + 1)),
                )
                for r, v in part.items():
                    total[r] = total[r] + v * mask
        for r, v in total.items():
            conv.record(rep, f"nsinf-k{k}-r{r}", v, k)


def verify_homotopy(kind: str, data: Any, k_max: int = DEFAULT_K_MAX) -> Report:
    """kinds: two-term-ainf, homotopy-nij ((TwoTermAInf, HomotopyNijOp)),
    crossed-module, graded-ainf, strict-hn ((GradedAInf, LinearMap)), nsinf."""
    if not 1 <= k_max <= 6:
        raise ValueError("k_max must lie in 1..6")
    rep = Report(kind)
    if kind == "two-term-ainf":
        _two_term_laws(rep, data)
    elif kind == "homotopy-nij":
        g, h = data
        if (h.n0.rows, h.n1.rows) != (g.a0, g.a1):
            raise StructureError("operator does not fit the 2-term algebra")
        _homotopy_nij_laws(rep, g, h)
    elif kind == "crossed-module":
        _crossed_laws(rep, data)
    elif kind == "graded-ainf":
        _ainf_laws(rep, data, k_max)
    elif kind == "strict-hn":
        g, n_op = data
        _strict_hn_laws(rep, g, LinearMap(n_op, g.dim, g.dim).matrix)
    elif kind == "nsinf":
        _nsinf_laws(rep, data, k_max)
    else:
        raise ValueError(f"unknown homotopy kind {kind!r}")
    if kind in ("graded-ainf", "strict-hn", "nsinf"):
        degs = (data[0] if kind == "strict-hn" else data).degrees
        # reproducible order: by degree vector, then by index vector
        rep.violations.sort(key=lambda v: (rep.checked.index(v.law), [degs[i] for i in v.basis], v.basis))
    return rep


# ---------------------------------------------------------------------------
# correspondences


def skeletal_correspondence(direction: str, data: Any):
    """to-cocycle: (TwoTermAInf, HomotopyNijOp) -> (NijAlgebra, NijBimodule, (mu3, N2)).
    from-cocycle: (NijAlgebra, NijBimodule, (chi, F)) -> (TwoTermAInf, HomotopyNijOp)."""
    from .complexes import build_complex, is_cocycle

    if direction == "to-cocycle":
        g, h = data
        if not g.skeletal:
            raise StructureError("the 2-term algebra is not skeletal")
        require(verify_homotopy("two-term-ainf", g), "2-term A-infinity algebra")
        require(verify_homotopy("homotopy-nij", (g, h)), "homotopy Nijenhuis operator")
        na = NijAlgebra(Algebra(g.a0, g.m00), h.n0)
        nb = NijBimodule(na, Bimodule(na.algebra, g.a1, g.m01, g.m10), h.n1)
        require(verify_core("nij-algebra", na), "degree-0 Nijenhuis algebra")
        require(verify_core("nij-bimodule", nb), "degree-1 Nijenhuis bimodule")
        chi, f = g.mu3, h.n2
        vec = list(chi.reshape(-1)) + list(f.reshape(-1))
        if not is_cocycle(build_complex("cone-reduced", (na, nb), 3), 3, vec):
            raise AssertionError("(mu3, N2) is not a 3-cocycle")
        return na, nb, (chi, f)
    if direction == "from-cocycle":
        na, nb, (chi, f) = data
        d, m = na.dim, nb.dim
        chi, f = tensor(chi, (d, d, d, m)), tensor(f, (d, d, m))
        vec = list(chi.reshape(-1)) + list(f.reshape(-1))
        if not is_cocycle(build_complex("cone-reduced", (na, nb), 3), 3, vec):
            raise ValueError("(chi, F) is not a 3-cocycle")
        g = TwoTermAInf(d, m, LinearMap.zero(d, m), na.mu, nb.left, nb.right, chi)
        h = HomotopyNijOp(na.n_op, nb.nm_op, f)
        require(verify_homotopy("two-term-ainf", g), "2-term A-infinity algebra")
        require(verify_homotopy("homotopy-nij", (g, h)), "homotopy Nijenhuis operator")
        return g, h
    raise ValueError(f"unknown direction {direction!r}")


def crossed_correspondence(direction: str, data: Any):
    """to-crossed: strict (TwoTermAInf, HomotopyNijOp) -> CrossedModule; from-crossed: the reverse."""
    if direction == "to-crossed":
        g, h = data
        if not g.strict or any(x != 0 for x in h.n2.reshape(-1)):
            raise StructureError("input is not strict")
        require(verify_homotopy("two-term-ainf", g), "2-term A-infinity algebra")
        require(verify_homotopy("homotopy-nij", (g, h)), "homotopy Nijenhuis operator")
        base = NijAlgebra(Algebra(g.a0, g.m00), h.n0)
        # u .1 v = mu2(du, v) = mu2(u, dv)
        prod = ops.arg(_b(g.m01), 0, g.d)[0]
        if not np.array_equal(prod, ops.arg(_b(g.m10), 1, g.d)[0]):
            raise AssertionError("the two top products disagree")
        top = NijAlgebra(Algebra(g.a1, prod), h.n1)
        cm = CrossedModule(base, top, g.bdry, Bimodule(base.algebra, g.a1, g.m01, g.m10))
        require(verify_homotopy("crossed-module", cm), "crossed module")
        return cm
    if direction == "from-crossed":
        cm = data
        require(verify_homotopy("crossed-module", cm), "crossed module")
        d, m = cm.base.dim, cm.top.dim
        g = TwoTermAInf(d, m, cm.phi, cm.base.mu, cm.actions.left, cm.actions.right, zeros((d, d, d, m)))
        h = HomotopyNijOp(cm.base.n_op, cm.top.n_op, zeros((d, d, m)))
        require(verify_homotopy("two-term-ainf", g), "2-term A-infinity algebra")
        require(verify_homotopy("homotopy-nij", (g, h)), "homotopy Nijenhuis operator")
        return g, h
    raise ValueError(f"unknown direction {direction!r}")


def to_graded(g: TwoTermAInf) -> GradedAInf:
    """The same structure as a graded A-infinity algebra on A_0 + A_1."""
    a0, a1 = g.a0, g.a1
    dim = a0 + a1
    mu1 = zeros((dim, dim))
    mu1[a0:, :a0] = g.d.T
    mu2 = zeros((dim, dim, dim))
    mu2[:a0, :a0, :a0] = g.m00
    mu2[:a0, a0:, a0:] = g.m01
    mu2[a0:, :a0, a0:] = g.m10
    mu3 = zeros((dim,) * 4)
    mu3[:a0, :a0, :a0, a0:] = g.mu3
    blocks = ((0, a0), (1, a1))
    return GradedAInf(blocks, {1: mu1, 2: mu2, 3: mu3}, (0, 1))


def graded_operator(h: HomotopyNijOp) -> LinearMap:
    """N_0 + N_1 as one degree-0 map; only meaningful when N_2 = 0."""
    n0, n1 = h.n0.matrix, h.n1.matrix
    a0, a1 = n0.shape[0], n1.shape[0]
    out = zeros((a0 + a1, a0 + a1))
    out[:a0, :a0] = n0
    out[a0:, a0:] = n1
    return LinearMap(out)


# ---------------------------------------------------------------------------
# NS-infinity algebras and deformations


def _require_strict(g: GradedAInf, n_op: LinearMap) -> np.ndarray:
    nmat = LinearMap(n_op, g.dim, g.dim).matrix
    require(verify_homotopy("strict-hn", (g, LinearMap(nmat))), "strict homotopy Nijenhuis operator")
    return nmat


def _subset_terms(mu: np.ndarray, n: int, nmat: np.ndarray, k: int) -> np.ndarray:
    """(-1)^{k-1} N^{k-1} of the sum over k-element sets S of mu(N off S)."""
    acc = zeros(mu.shape)
    for plain in combinations(range(n), k):
        t = _b(mu)
        for s in range(n):
            if s not in plain:
                t = ops.arg(t, s, nmat)
        for _ in range(k - 1):
            t = ops.out(t, nmat)
        acc = acc + t[0]
    return acc * signs.alternating(k - 1)


def induced_nsinf(g: GradedAInf, n_op: LinearMap) -> NSInfAlgebra:
    """eta_n([r]) = mu_n(N a_1, .., a_r, .., N a_n); eta_n([n+1]) collects the terms with two or more plain slots."""
    nmat = _require_strict(g, n_op)
    eta: dict[int, dict[int, np.ndarray]] = {}
    for n, mu in g.ops.items():
        comps = {}
        for r in range(1, n + 1):
            t = _b(mu)
            for s in range(n):
                if s != r - 1:
                    t = ops.arg(t, s, nmat)
            comps[r] = t[0]
        if n >= 2:
            acc = zeros(mu.shape)
            for k in range(2, n + 1):
                acc = acc + _subset_terms(mu, n, nmat, k)
            comps[n + 1] = acc
        eta[n] = comps
    return NSInfAlgebra(g.blocks, eta)


def deformed_ainf(g: GradedAInf, n_op: LinearMap) -> GradedAInf:
    """mu_{1,N} = mu_1 and mu_{n,N} = sum_k (-1)^{k-1} N^{k-1} sum_{|S|=k} mu_n(N off S)."""
    nmat = _require_strict(g, n_op)
    new = {}
    for n, mu in g.ops.items():
        if n == 1:
            new[1] = mu
            continue
        acc = zeros(mu.shape)
        for k in range(1, n + 1):
            acc = acc + _subset_terms(mu, n, nmat, k)
        new[n] = acc
    return GradedAInf(g.blocks, new, g.window)


def _rep_blocks(g: GradedAInf, rep_blocks: Sequence[tuple[int, int]]) -> tuple[tuple[int, int], ...]:
    return tuple(g.blocks) + tuple(rep_blocks)


def ainf_semidirect(
    g: GradedAInf,
    rep_blocks: Sequence[tuple[int, int]],
    nu: Mapping[int, Mapping[int, np.ndarray]],
    k_max: int = DEFAULT_K_MAX,
) -> GradedAInf:
    """A + M with mu_n on A-inputs and nu_n when exactly the r-th input is in M.

    ``nu[n][r]`` has shape (dA,)*(r-1) + (dM,) + (dA,)*(n-r) + (dM,).
    """
    da = g.dim
    dm = sum(k for _, k in rep_blocks)
    dim = da + dm
    arities = set(g.ops) | set(nu)
    new = {}
    for n in sorted(arities):
        t = zeros((dim,) * (n + 1))
        t[(slice(0, da),) * (n + 1)] = g.op(n)
        for r, v in nu.get(n, {}).items():
            if not 1 <= r <= n:
                raise StructureError(f"nu_{n} has no slot {r}")
            idx = [slice(0, da)] * n + [slice(da, dim)]
            idx[r - 1] = slice(da, dim)
            t[tuple(idx)] = tensor(v)
        new[n] = t
    lo = min(g.window[0], min((d for d, _ in rep_blocks), default=g.window[0]))
    hi = max(g.window[1], max((d for d, _ in rep_blocks), default=g.window[1]))
    out = GradedAInf(_rep_blocks(g, rep_blocks), new, (lo, hi))
    require(verify_homotopy("graded-ainf", out, k_max), "representation (semidirect product)")
    return out


def is_strict_relative_rb(
    g: GradedAInf, rep_blocks: Sequence[tuple[int, int]], nu: Mapping[int, Mapping[int, np.ndarray]], r_map: LinearMap
) -> Report:
    """mu_n(R u_1, .., R u_n) = sum_r R nu_n(R u_1, .., u_r, .., R u_n)."""
    da = g.dim
    dm = sum(k for _, k in rep_blocks)
    rmat = LinearMap(r_map, da, dm).matrix
    rep = Report("strict-relative-rb")
    for n in sorted(set(g.ops) | set(nu)):
        lhs = _b(g.op(n))
        for s in range(n):
            lhs = ops.arg(lhs, s, rmat)
        rhs = zeros((dm,) * n + (da,))
        for r, v in nu.get(n, {}).items():
            t = _b(tensor(v))
            for s in range(n):
                if s != r - 1:
                    t = ops.arg(t, s, rmat)
            rhs = rhs + ops.out(t, rmat)[0]
        rep.compare(f"relative-rb-{n}", lhs[0], rhs, n)
    return rep


def rb_lift(
    g: GradedAInf, rep_blocks: Sequence[tuple[int, int]], nu: Mapping[int, Mapping[int, np.ndarray]], r_map: LinearMap
) -> tuple[LinearMap, bool]:
    """(a, u) -> (R u, 0) on the semidirect product, and whether it is strict homotopy Nijenhuis."""
    semi = ainf_semidirect(g, rep_blocks, nu)
    da = g.dim
    dm = semi.dim - da
    rmat = LinearMap(r_map, da, dm).matrix
    lift = zeros((semi.dim, semi.dim))
    lift[:da, da:] = rmat
    _check_degree(lift.T, semi.degrees, 0, "lift of R")
    lift_map = LinearMap(lift)
    return lift_map, verify_homotopy("strict-hn", (semi, lift_map)).ok
