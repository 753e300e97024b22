"""Infinitesimal deformations, abelian extensions and the Wells map.

Extensions live on E = A + M with A first: the inclusion is u -> (0, u),
the projection (a, u) -> a and the canonical section a -> (a, 0). Cochains
(chi, F) are read in the reduced cone complex, whose degree-1 differential
is g -> (delta g, -partial g), i.e. F-part N_M g - g N.

Automorphism groups are never enumerated. Questions about them are reduced
to exact linear systems: with alpha and beta fixed, the maps
phi(s(a) + u) = s(alpha a) + beta u + lambda(a) form an affine family in
lambda, because products inside M vanish.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import lru_cache
from fractions import Fraction
from typing import Any, Sequence

import numpy as np

from .backend import DENSE as ops
from .complexes import build_complex, coboundary_witness, is_cocycle
from .core import (
    Algebra,
    LinearMap,
    NijAlgebra,
    NijBimodule,
    Report,
    StructureError,
    require,
    verify_core,
)
from .linalg import ExactMatrix, nullspace, solve
from .scalars import identity, tensor, tensordot_exact, zeros
from .tensor import MultiMap

__all__ = [
    "Cocycle2",
    "Extension",
    "AutoPair",
    "WellsResult",
    "reduced_complex",
    "check_infinitesimal",
    "truncated_algebra",
    "deformation_equivalence",
    "extension_from_cocycle",
    "cocycle_from_extension",
    "extension_isomorphism",
    "verify_extension",
    "check_pair",
    "wells_obstruction",
    "induce_automorphism",
    "restrict_automorphism",
    "z1_derivations",
    "solve_inducing",
    "aut_ma_dimension",
    "compatible_betas",
]


@dataclass(frozen=True, eq=False)
class Cocycle2:
    chi: MultiMap
    f_part: MultiMap

    def __post_init__(self):
        if self.chi.arity != 2 or self.f_part.arity != 1:
            raise StructureError("a degree-2 cochain is (chi of arity 2, F of arity 1)")
        if (self.chi.source, self.chi.target) != (self.f_part.source, self.f_part.target):
            raise StructureError("chi and F must share source and target")

    @classmethod
    def zero(cls, d: int, m: int) -> "Cocycle2":
        return cls(MultiMap.zero(2, d, m), MultiMap.zero(1, d, m))

    @classmethod
    def from_vector(cls, d: int, m: int, vec: Sequence[Any]) -> "Cocycle2":
        vec = list(vec)
        h = d * d * m
        return cls(MultiMap.from_vector(2, d, m, vec[:h]), MultiMap.from_vector(1, d, m, vec[h:]))

    def vector(self) -> list[Fraction]:
        return self.chi.vector() + self.f_part.vector()

    def __add__(self, other: "Cocycle2") -> "Cocycle2":
        return Cocycle2(self.chi + other.chi, self.f_part + other.f_part)

    def __sub__(self, other: "Cocycle2") -> "Cocycle2":
        return Cocycle2(self.chi - other.chi, self.f_part - other.f_part)

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, Cocycle2):
            return NotImplemented
        return self.chi == other.chi and self.f_part == other.f_part

    __hash__ = object.__hash__


@dataclass(frozen=True, eq=False)
class Extension:
    total: NijAlgebra
    incl: LinearMap
    proj: LinearMap
    section: LinearMap
    base: NijAlgebra
    fiber: NijBimodule


@dataclass(frozen=True, eq=False)
class AutoPair:
    beta: LinearMap
    alpha: LinearMap


@dataclass
class WellsResult:
    compatible: bool
    obstruction_trivial: bool
    lam: LinearMap | None
    failing: list[tuple[str, tuple[int, ...]]] = field(default_factory=list)


# ---------------------------------------------------------------------------
# the reduced cone complex


@lru_cache(maxsize=64)
def _reduced(na: NijAlgebra, nb: NijBimodule):
    return build_complex("cone-reduced", (na, nb), 2)


def reduced_complex(na: NijAlgebra, nb: NijBimodule):
    """Reduced cone complex through degree 2 (cached per structure pair)."""
    return _reduced(na, nb)


def _coboundary(na: NijAlgebra, nb: NijBimodule, g: LinearMap) -> Cocycle2:
    vec = reduced_complex(na, nb).diff(1).apply(MultiMap.from_linear_map(g).vector())
    return Cocycle2.from_vector(na.dim, nb.dim, vec)


def _as_multimap(f: Any, arity: int, d: int, w: int) -> MultiMap:
    if isinstance(f, MultiMap):
        if (f.arity, f.source, f.target) != (arity, d, w):
            raise StructureError(f"expected an arity-{arity} map {d} -> {w}")
        return f
    if isinstance(f, LinearMap):
        if arity != 1:
            raise StructureError("a linear map has arity 1")
        return _as_multimap(MultiMap.from_linear_map(f), 1, d, w)
    return MultiMap(arity, d, w, f)


def _lin(f: MultiMap) -> LinearMap:
    return f.to_linear_map()


# ---------------------------------------------------------------------------
# infinitesimal deformations


def truncated_algebra(na: NijAlgebra, mu1: MultiMap, n1: LinearMap) -> NijAlgebra:
    """A[t]/(t^2) as a 2d-dimensional algebra over Q, basis e_i then t e_i.

    (a + tb)(c + td) = ac + t(ad + bc + mu1(a, c)), N_t(a + tb) = N a + t(N b + N1 a).
    """
    d = na.dim
    mu = zeros((2 * d, 2 * d, 2 * d))
    mu[:d, :d, :d] = na.mu
    mu[:d, :d, d:] = mu1.entries
    mu[:d, d:, d:] = na.mu
    mu[d:, :d, d:] = na.mu
    n = zeros((2 * d, 2 * d))
    n[:d, :d] = na.n
    n[d:, d:] = na.n
    n[d:, :d] = n1.matrix
    return NijAlgebra(Algebra(2 * d, mu), LinearMap(n))


def check_infinitesimal(na: NijAlgebra, mu1: Any, n1: Any) -> bool:
    """Is (mu1, N1) a 2-cocycle of the adjoint reduced complex?

    Cross-checked against the Nijenhuis algebra axioms on A[t]/(t^2).
    """
    d = na.dim
    mu1 = _as_multimap(mu1, 2, d, d)
    n1 = LinearMap(n1.matrix if isinstance(n1, LinearMap) else _lin(_as_multimap(n1, 1, d, d)).matrix)
    if n1.rows != d or n1.cols != d:
        raise StructureError("N1 must be a d x d map")
    adj = NijBimodule.adjoint(na)
    vec = mu1.vector() + MultiMap.from_linear_map(n1).vector()
    by_complex = is_cocycle(reduced_complex(na, adj), 2, vec)
    by_expansion = verify_core("nij-algebra", truncated_algebra(na, mu1, n1)).ok
    if by_complex != by_expansion:
        raise AssertionError("cocycle test and truncated expansion disagree")
    return by_complex


def deformation_equivalence(na: NijAlgebra, d1: tuple[Any, Any], d2: tuple[Any, Any]) -> LinearMap | None:
    """phi1 with (mu1, N1) - (mu1', N1') = delta(phi1), or None."""
    d = na.dim
    parts = []
    for mu1, n1 in (d1, d2):
        mu1 = _as_multimap(mu1, 2, d, d)
        n1 = n1 if isinstance(n1, LinearMap) else _lin(_as_multimap(n1, 1, d, d))
        if not check_infinitesimal(na, mu1, n1):
            raise ValueError("not an infinitesimal deformation")
        parts.append((mu1, n1))
    (m1, n1), (m2, n2) = parts
    adj = NijBimodule.adjoint(na)
    diff = (m1 - m2).vector() + (MultiMap.from_linear_map(n1) - MultiMap.from_linear_map(n2)).vector()
    w = coboundary_witness(reduced_complex(na, adj), 2, diff)
    if w is None:
        return None
    phi1 = _lin(MultiMap.from_vector(1, d, d, w))
    # Id + t phi1 must be an isomorphism of the truncations
    src, tgt = truncated_algebra(na, m1, n1), truncated_algebra(na, m2, n2)
    iso = identity(2 * d)
    iso[d:, :d] = phi1.matrix
    require(verify_core("nij-morphism", (src, tgt), LinearMap(iso)), "Id + t phi1")
    return phi1


# ---------------------------------------------------------------------------
# abelian extensions


def _standard_maps(d: int, m: int) -> tuple[LinearMap, LinearMap, LinearMap]:
    incl = zeros((d + m, m))
    incl[d:, :] = identity(m)
    proj = zeros((d, d + m))
    proj[:, :d] = identity(d)
    sec = zeros((d + m, d))
    sec[:d, :] = identity(d)
    return LinearMap(incl, d + m, m), LinearMap(proj, d, d + m), LinearMap(sec, d + m, d)


def extension_from_cocycle(na: NijAlgebra, nb: NijBimodule, z: Cocycle2) -> Extension:
    """(a,u)(b,v) = (ab, a|>v + u<|b + chi(a,b)), N_E(a,u) = (N a, N_M u + F a)."""
    if nb.over != na:
        raise StructureError("the Nijenhuis bimodule is not over this Nijenhuis algebra")
    d, m = na.dim, nb.dim
    if (z.chi.source, z.chi.target) != (d, m):
        raise StructureError("cocycle does not fit the algebra and bimodule")
    if not is_cocycle(reduced_complex(na, nb), 2, z.vector()):
        raise ValueError("(chi, F) is not a 2-cocycle")
    mu = zeros((d + m, d + m, d + m))
    mu[:d, :d, :d] = na.mu
    mu[:d, :d, d:] = z.chi.entries
    mu[:d, d:, d:] = nb.left
    mu[d:, :d, d:] = nb.right
    n = zeros((d + m, d + m))
    n[:d, :d] = na.n
    n[d:, d:] = nb.nm
    n[d:, :d] = z.f_part.entries.T
    total = NijAlgebra(Algebra(d + m, mu), LinearMap(n))
    incl, proj, sec = _standard_maps(d, m)
    e = Extension(total, incl, proj, sec, na, nb)
    require(verify_extension(e), "extension")
    return e


def _retraction(e: Extension, s: LinearMap) -> LinearMap:
    """r: E -> M with i r + s p = Id_E."""
    q = np.concatenate([s.matrix, e.incl.matrix], axis=1)
    qinv = LinearMap(q).inverse().matrix
    return LinearMap(qinv[e.base.dim :, :].copy())


def _check_section(e: Extension, s: LinearMap) -> None:
    if (s.rows, s.cols) != (e.total.dim, e.base.dim) or not (e.proj @ s) == LinearMap.identity(e.base.dim):
        raise ValueError("not a section of the projection")


def cocycle_from_extension(e: Extension, s: LinearMap | None = None) -> Cocycle2:
    """chi(a,b) = s(a)s(b) - s(ab), F(a) = N_E s(a) - s N(a), read in M."""
    s = e.section if s is None else s
    _check_section(e, s)
    r = _retraction(e, s).matrix
    smat = s.matrix
    d, m = e.base.dim, e.fiber.dim
    # s(e_i) s(e_j) as a (d, d, D) tensor
    prod = _pullback(smat, smat, e.total.mu)
    s_ab = _out(e.base.mu, smat)
    chi = _out(prod - s_ab, r)
    f = r.dot(e.total.n.dot(smat) - smat.dot(e.base.n))
    out = Cocycle2(MultiMap(2, d, m, chi), MultiMap(1, d, m, f.T.copy()))
    if not is_cocycle(reduced_complex(e.base, e.fiber), 2, out.vector()):
        raise AssertionError("extracted cochain is not a cocycle")
    return out


def _pullback(x: np.ndarray, y: np.ndarray, mu: np.ndarray) -> np.ndarray:
    """t[a, b, k] = sum_{p,q} x[p, a] y[q, b] mu[p, q, k]."""
    inner = tensordot_exact(x, mu, ([0], [0]))
    return np.moveaxis(tensordot_exact(y, inner, ([0], [1])), 0, 1)


def _out(t: np.ndarray, q: np.ndarray) -> np.ndarray:
    """Apply q to the output index of t."""
    return tensordot_exact(t, q, ([t.ndim - 1], [1]))


def verify_extension(e: Extension) -> Report:
    """Exactness, trivial fiber product, operator compatibility, prescribed actions."""
    rep = Report("extension")
    d, m, dim_e = e.base.dim, e.fiber.dim, e.total.dim
    if dim_e != d + m:
        raise StructureError("total dimension must be dim A + dim M")
    rep.merge(verify_core("nij-algebra", e.total), "total:")
    i, p, s = e.incl.matrix, e.proj.matrix, e.section.matrix

    def cmp(law, lhs, rhs, lead):
        rep.compare(law, tensor(lhs), tensor(rhs), lead)

    cmp("proj-incl", p.dot(i).T, zeros((m, d)), 1)
    cmp("proj-section", p.dot(s).T, identity(d), 1)
    # p is a Nijenhuis morphism; i is multiplicative onto a square-zero ideal
    rep.merge(verify_core("nij-morphism", (e.total, e.base), e.proj), "proj:")
    cmp("incl-operator", e.total.n.dot(i).T, i.dot(e.fiber.nm).T, 1)
    ii = _pullback(i, i, e.total.mu)
    cmp("fiber-product", ii, zeros((m, m, dim_e)), 2)
    r = _retraction(e, e.section).matrix
    left = _pullback(s, i, e.total.mu)
    right = _pullback(i, s, e.total.mu)
    # actions land in M and agree with the fiber
    cmp("left-in-fiber", _out(left, p), zeros((d, m, d)), 2)
    cmp("right-in-fiber", _out(right, p), zeros((m, d, d)), 2)
    cmp("left-action", _out(left, r), e.fiber.left, 2)
    cmp("right-action", _out(right, r), e.fiber.right, 2)
    return rep


def extension_isomorphism(e1: Extension, e2: Extension) -> LinearMap | None:
    """phi(a, u) = (a, u + g(a)) from e1 to e2 when the cocycles are cohomologous."""
    if e1.base != e2.base or e1.fiber != e2.fiber:
        raise StructureError("extensions of different data")
    z1, z2 = cocycle_from_extension(e1), cocycle_from_extension(e2)
    c = reduced_complex(e1.base, e1.fiber)
    w = coboundary_witness(c, 2, (z1 - z2).vector())
    if w is None:
        return None
    d, m = e1.base.dim, e1.fiber.dim
    g = _lin(MultiMap.from_vector(1, d, m, w))
    phi = _assemble(e1, LinearMap.identity(d), LinearMap.identity(m), g, target=e2)
    require(verify_core("nij-morphism", (e1.total, e2.total), phi), "extension isomorphism")
    if not (phi @ e1.incl == e2.incl and e2.proj @ phi == e1.proj):
        raise AssertionError("isomorphism does not commute with the sequences")
    return phi


# ---------------------------------------------------------------------------
# automorphism pairs and the Wells map


def check_pair(e: Extension, pair: AutoPair) -> None:
    """beta in Aut(M, N_M), alpha in Aut(A, N); raises StructureError otherwise."""
    d, m = e.base.dim, e.fiber.dim
    beta, alpha = LinearMap(pair.beta), LinearMap(pair.alpha)
    if (beta.rows, beta.cols) != (m, m) or (alpha.rows, alpha.cols) != (d, d):
        raise StructureError("pair has the wrong shapes")
    if not beta.is_invertible() or not alpha.is_invertible():
        raise StructureError("pair maps must be invertible")
    if not beta @ e.fiber.nm_op == e.fiber.nm_op @ beta:
        raise StructureError("beta does not commute with N_M")
    if not verify_core("nij-morphism", (e.base, e.base), alpha).ok:
        raise StructureError("alpha is not a Nijenhuis algebra automorphism")


def _compatibility(e: Extension, pair: AutoPair) -> list[tuple[str, tuple[int, ...]]]:
    """beta(a |> u) = alpha(a) |> beta(u) and beta(u <| a) = beta(u) <| alpha(a)."""
    b, al = pair.beta.matrix, pair.alpha.matrix
    lt, rt = e.fiber.left, e.fiber.right
    fails = []
    lhs = ops.out(lt[None], b)[0]
    rhs = ops.arg(ops.arg(lt[None], 0, al), 1, b)[0]
    for idx in np.ndindex(*lhs.shape[:2]):
        if any(x != 0 for x in lhs[idx] - rhs[idx]):
            fails.append(("compatible-left", idx))
    lhs = ops.out(rt[None], b)[0]
    rhs = ops.arg(ops.arg(rt[None], 0, b), 1, al)[0]
    for idx in np.ndindex(*lhs.shape[:2]):
        if any(x != 0 for x in lhs[idx] - rhs[idx]):
            fails.append(("compatible-right", idx))
    return fails


def twisted_cocycle(z: Cocycle2, pair: AutoPair) -> Cocycle2:
    """chi_(b,a)(x, y) = b chi(a^-1 x, a^-1 y), F_(b,a)(x) = b F(a^-1 x)."""
    ainv = pair.alpha.inverse().matrix
    b = pair.beta.matrix
    t = ops.arg(ops.arg(z.chi.batch(), 0, ainv), 1, ainv)
    chi = ops.out(t, b)[0]
    f = ops.out(ops.arg(z.f_part.batch(), 0, ainv), b)[0]
    return Cocycle2(z.chi.like(chi), z.f_part.like(f))


def _lambda_equations(e: Extension, z: Cocycle2, pair: AutoPair, lam: LinearMap) -> bool:
    """The two displayed conditions on lambda, checked on basis tuples."""
    b, al, lm = pair.beta.matrix, pair.alpha.matrix, lam.matrix
    lt, rt = e.fiber.left, e.fiber.right
    chi = z.chi.batch()
    lhs = ops.add(ops.out(chi, b), ops.scale(ops.arg(ops.arg(chi, 0, al), 1, al), -1))[0]
    rhs = (
        ops.arg(ops.arg(lt[None], 0, al), 1, lm)[0]
        + ops.arg(ops.arg(rt[None], 0, lm), 1, al)[0]
        - ops.out(e.base.mu[None], lm)[0]
    )
    if not np.all(lhs == rhs):
        return False
    f = z.f_part.entries.T
    lhs = b.dot(f) - f.dot(al)
    rhs = e.fiber.nm.dot(lm) - lm.dot(e.base.n)
    return bool(np.all(lhs == rhs))


def wells_obstruction(e: Extension, pair: AutoPair) -> WellsResult:
    check_pair(e, pair)
    fails = _compatibility(e, pair)
    if fails:
        return WellsResult(False, False, None, fails)
    z = cocycle_from_extension(e)
    diff = twisted_cocycle(z, pair) - z
    g = coboundary_witness(reduced_complex(e.base, e.fiber), 2, diff.vector())
    if g is None:
        return WellsResult(True, False, None)
    gmap = _lin(MultiMap.from_vector(1, e.base.dim, e.fiber.dim, g))
    lam = gmap @ pair.alpha
    if not _lambda_equations(e, z, pair, lam):
        raise AssertionError("lambda from the Wells class fails the defining equations")
    return WellsResult(True, True, lam)


def _assemble(
    e: Extension, alpha: LinearMap, beta: LinearMap, lam: LinearMap, target: Extension | None = None
) -> LinearMap:
    """phi(s(a) + i(u)) = s'(alpha a) + i'(beta u + lam a) in coordinates of E."""
    t = e if target is None else target
    image = np.concatenate(
        [t.section.matrix.dot(alpha.matrix) + t.incl.matrix.dot(lam.matrix), t.incl.matrix.dot(beta.matrix)], axis=1
    )
    q = np.concatenate([e.section.matrix, e.incl.matrix], axis=1)
    return LinearMap(image.dot(LinearMap(q).inverse().matrix))


def induce_automorphism(e: Extension, pair: AutoPair, lam: LinearMap) -> LinearMap:
    check_pair(e, pair)
    if _compatibility(e, pair):
        raise ValueError("pair is not compatible")
    lam = LinearMap(lam)
    if (lam.rows, lam.cols) != (e.fiber.dim, e.base.dim):
        raise StructureError("lambda must map A to M")
    if not _lambda_equations(e, cocycle_from_extension(e), pair, lam):
        raise ValueError("lambda fails the inducing equations")
    phi = _assemble(e, pair.alpha, pair.beta, lam)
    require(verify_core("nij-morphism", (e.total, e.total), phi), "induced automorphism")
    if not phi.is_invertible():
        raise AssertionError("induced map is not invertible")
    back = restrict_automorphism(e, phi)
    if not (back.beta == pair.beta and back.alpha == pair.alpha):
        raise AssertionError("restriction does not return the pair")
    return phi


def restrict_automorphism(e: Extension, phi: LinearMap, s: LinearMap | None = None) -> AutoPair:
    """(phi restricted to M, p phi s)."""
    s = e.section if s is None else s
    _check_section(e, s)
    phi = LinearMap(phi)
    if not (e.proj @ phi @ e.incl).is_zero():
        raise ValueError("phi does not preserve M")
    if not phi.is_invertible():
        raise ValueError("phi is not invertible")
    require(verify_core("nij-morphism", (e.total, e.total), phi), "automorphism")
    r = _retraction(e, s)
    return AutoPair(r @ phi @ e.incl, e.proj @ phi @ s)


def z1_derivations(na: NijAlgebra, nb: NijBimodule) -> list[LinearMap]:
    """Basis of the degree-1 cocycles of the reduced complex, as maps A -> M."""
    if nb.dim == 0:
        return []
    c = reduced_complex(na, nb)
    return [_lin(MultiMap.from_vector(1, na.dim, nb.dim, v)) for v in c.cycles(1)]


# ---------------------------------------------------------------------------
# direct linear solves on E


def _residual(e: Extension, phi: np.ndarray) -> list:
    """Entries of phi(xy) - phi(x)phi(y) and phi N_E - N_E phi on basis elements."""
    mu = e.total.mu
    mult = _out(mu, phi) - _pullback(phi, phi, mu)
    comm = tensordot_exact(phi, e.total.n, ([1], [0])) - tensordot_exact(e.total.n, phi, ([1], [0]))
    return list(mult.reshape(-1)) + list(comm.reshape(-1))


def solve_inducing(e: Extension, pair: AutoPair) -> tuple[LinearMap, list[LinearMap]] | None:
    """All automorphisms phi(s(a) + u) = s(alpha a) + beta u + lambda(a) of E.

    Returns (one solution, basis of lambda-directions) or None, by solving the
    automorphism equations on E directly as a linear system in lambda.
    """
    d, m = e.base.dim, e.fiber.dim
    zero = LinearMap.zero(m, d)
    base = _assemble(e, pair.alpha, pair.beta, zero).matrix
    r0 = _residual(e, base)
    cols = []
    for j in range(d):
        for k in range(m):
            unit = zeros((m, d))
            unit[k, j] = 1
            phi = _assemble(e, pair.alpha, pair.beta, LinearMap(unit)).matrix
            cols.append([x - y for x, y in zip(_residual(e, phi), r0)])
    mat = ExactMatrix.from_dense(np.array(cols, dtype=object).T) if cols else ExactMatrix(len(r0), 0)
    sol = solve(mat, [-x for x in r0])
    if sol is None:
        return None
    lam = _lin(MultiMap.from_vector(1, d, m, sol))
    phi = _assemble(e, pair.alpha, pair.beta, lam)
    if any(x != 0 for x in _residual(e, phi.matrix)):
        raise AssertionError("automorphism equations are not affine in lambda")
    kernel = [_lin(MultiMap.from_vector(1, d, m, v)) for v in nullspace(mat)]
    return phi, kernel


def aut_ma_dimension(e: Extension) -> int:
    """Dimension of the automorphisms fixing M and A pointwise, solved on E."""
    pair = AutoPair(LinearMap.identity(e.fiber.dim), LinearMap.identity(e.base.dim))
    res = solve_inducing(e, pair)
    if res is None:
        raise AssertionError("the identity is not an automorphism")
    return len(res[1])


def compatible_betas(e: Extension) -> list[LinearMap]:
    """Basis of bimodule endomorphisms of M commuting with N_M (pairs with alpha = Id)."""
    m = e.fiber.dim
    lt, rt, nm = e.fiber.left, e.fiber.right, e.fiber.nm
    cols = []
    for j in range(m):
        for k in range(m):
            b = zeros((m, m))
            b[k, j] = 1
            left = ops.out(lt[None], b)[0] - ops.arg(lt[None], 1, b)[0]
            right = ops.out(rt[None], b)[0] - ops.arg(rt[None], 0, b)[0]
            comm = b.dot(nm) - nm.dot(b)
            cols.append(list(left.reshape(-1)) + list(right.reshape(-1)) + list(comm.reshape(-1)))
    if not cols:
        return []
    mat = ExactMatrix.from_dense(np.array(cols, dtype=object).T)
    return [LinearMap(np.array(v, dtype=object).reshape(m, m).T.copy()) for v in nullspace(mat)]
