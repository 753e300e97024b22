"""Finite-dimensional algebras, bimodules and Nijenhuis operators over Q.

Bases are 0-based. ``Algebra.mu[i, j, k]`` is the coefficient of e_k in
e_i e_j. A ``LinearMap`` matrix has the image of source basis vector j in
column j. ``Bimodule.left[i, u, v]`` is the coefficient of m_v in e_i |> m_u
and ``Bimodule.right[u, i, v]`` that of m_v in m_u <| e_i.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from itertools import product
from typing import Any, Iterable, Sequence

import numpy as np

from .backend import DENSE as ops
from .kernels import deformed_product
from .scalars import identity, tensor, to_scalar, zeros

__all__ = [
    "StructureError",
    "VerificationError",
    "Violation",
    "Report",
    "LinearMap",
    "Algebra",
    "Bimodule",
    "NijAlgebra",
    "NijBimodule",
    "verify_core",
    "deformed_algebra",
    "deformed_bimodule",
    "semidirect",
    "lift_to_semidirect",
    "is_relative_rota_baxter",
    "dual_nij_bimodule",
]


class StructureError(ValueError):
    """Shapes or dimensions do not fit together."""


class VerificationError(ValueError):
    """A structure failed one of its defining laws."""

    def __init__(self, message: str, report: "Report | None" = None):
        super().__init__(message)
        self.report = report


@dataclass(frozen=True)
class Violation:
    law: str
    basis: tuple[int, ...]
    lhs: tuple[Fraction, ...]
    rhs: tuple[Fraction, ...]


@dataclass
class Report:
    kind: str
    checked: list[str] = field(default_factory=list)
    violations: list[Violation] = field(default_factory=list)
    notes: dict[str, Any] = field(default_factory=dict)

    @property
    def ok(self) -> bool:
        return not self.violations

    def failed_laws(self) -> list[str]:
        seen: list[str] = []
        for v in self.violations:
            if v.law not in seen:
                seen.append(v.law)
        return seen

    def compare(self, law: str, lhs: np.ndarray, rhs: np.ndarray, lead: int) -> None:
        """Record law ``law``; the first ``lead`` axes index basis tuples."""
        if law not in self.checked:
            self.checked.append(law)
        if lhs.shape != rhs.shape:
            raise StructureError(f"{law}: sides have shapes {lhs.shape} and {rhs.shape}")
        diff = np.asarray(lhs - rhs)
        lead_shape = lhs.shape[:lead]
        if diff.size == 0:
            return
        bad = (diff != 0).reshape(lead_shape + (-1,)).any(axis=-1)
        spots = [tuple(int(i) for i in idx) for idx in zip(*np.nonzero(bad))] if lead else ([()] if bad else [])
        for idx in spots:
            self.violations.append(
                Violation(
                    law,
                    idx,
                    tuple(Fraction(x) for x in np.asarray(lhs[idx]).reshape(-1)),
                    tuple(Fraction(x) for x in np.asarray(rhs[idx]).reshape(-1)),
                )
            )

    def merge(self, other: "Report", prefix: str = "") -> None:
        for law in other.checked:
            if prefix + law not in self.checked:
                self.checked.append(prefix + law)
        for v in other.violations:
            self.violations.append(Violation(prefix + v.law, v.basis, v.lhs, v.rhs))


# ---------------------------------------------------------------------------
# types


class LinearMap:
    """Exact matrix of a linear map; column j is the image of basis vector j."""

    __slots__ = ("matrix",)

    def __init__(self, matrix: Any, rows: int | None = None, cols: int | None = None):
        arr = matrix.matrix if isinstance(matrix, LinearMap) else matrix
        arr = tensor(arr)
        if arr.ndim != 2:
            if arr.size == 0 and rows is not None and cols is not None:
                arr = zeros((rows, cols))
            else:
                raise StructureError(f"a linear map needs a 2-dimensional matrix, got shape {arr.shape}")
        if rows is not None and arr.shape[0] != rows or cols is not None and arr.shape[1] != cols:
            raise StructureError(f"expected a {rows}x{cols} matrix, got {arr.shape[0]}x{arr.shape[1]}")
        arr.setflags(write=False)
        object.__setattr__(self, "matrix", arr)

    @classmethod
    def identity(cls, n: int) -> "LinearMap":
        return cls(identity(n))

    @classmethod
    def zero(cls, rows: int, cols: int) -> "LinearMap":
        return cls(zeros((rows, cols)))

    @classmethod
    def diag(cls, entries: Sequence[Any]) -> "LinearMap":
        m = zeros((len(entries), len(entries)))
        for i, x in enumerate(entries):
            m[i, i] = to_scalar(x)
        return cls(m)

    @property
    def rows(self) -> int:
        return self.matrix.shape[0]

    @property
    def cols(self) -> int:
        return self.matrix.shape[1]

    def __call__(self, vec: Sequence[Any]) -> np.ndarray:
        return self.matrix.dot(tensor(vec))

    def __matmul__(self, other: "LinearMap") -> "LinearMap":
        if self.cols != other.rows:
            raise StructureError(f"cannot compose {self.rows}x{self.cols} with {other.rows}x{other.cols}")
        return LinearMap(self.matrix.dot(other.matrix))

    def __add__(self, other: "LinearMap") -> "LinearMap":
        return LinearMap(self.matrix + other.matrix)

    def __sub__(self, other: "LinearMap") -> "LinearMap":
        return LinearMap(self.matrix - other.matrix)

    def __neg__(self) -> "LinearMap":
        return LinearMap(-self.matrix)

    def scale(self, c: Any) -> "LinearMap":
        return LinearMap(self.matrix * to_scalar(c))

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, LinearMap):
            return NotImplemented
        return self.matrix.shape == other.matrix.shape and bool(np.all(self.matrix == other.matrix))

    def __hash__(self) -> int:
        return hash((self.matrix.shape, tuple(self.matrix.reshape(-1))))

    def __repr__(self) -> str:
        return f"LinearMap({[[str(x) for x in row] for row in self.matrix]})"

    def power(self, k: int) -> "LinearMap":
        if self.rows != self.cols:
            raise StructureError("only square maps have powers")
        if k < 0:
            raise ValueError("negative power")
        out = LinearMap.identity(self.rows)
        for _ in range(k):
            out = out @ self
        return out

    def transpose(self) -> "LinearMap":
        return LinearMap(self.matrix.T.copy())

    def is_zero(self) -> bool:
        return all(x == 0 for x in self.matrix.reshape(-1))

    def inverse(self) -> "LinearMap":
        """Exact inverse by Gauss-Jordan; raises ValueError when singular."""
        n = self.rows
        if n != self.cols:
            raise StructureError("only square maps can be inverted")
        a = [list(row) + [Fraction(int(i == j)) for j in range(n)] for i, row in enumerate(self.matrix)]
        for c in range(n):
            piv = next((r for r in range(c, n) if a[r][c] != 0), None)
            if piv is None:
                raise ValueError("map is not invertible")
            a[c], a[piv] = a[piv], a[c]
            inv = 1 / a[c][c]
            a[c] = [x * inv for x in a[c]]
            for r in range(n):
                if r != c and a[r][c] != 0:
                    f = a[r][c]
                    a[r] = [x - f * y for x, y in zip(a[r], a[c])]
        return LinearMap([row[n:] for row in a])

    def is_invertible(self) -> bool:
        try:
            self.inverse()
        except ValueError:
            return False
        return True


def _as_map(m: Any, rows: int, cols: int, name: str) -> LinearMap:
    try:
        return LinearMap(m, rows, cols)
    except StructureError as exc:
        raise StructureError(f"{name}: {exc}") from None


@dataclass(frozen=True, eq=False)
class Algebra:
    dim: int
    mu: np.ndarray

    def __post_init__(self):
        if self.dim < 0:
            raise StructureError("dimension must be non-negative")
        d = self.dim
        mu = tensor(self.mu) if self.mu is not None else zeros((d, d, d))
        if d == 0:
            mu = zeros((0, 0, 0))
        if mu.shape != (d, d, d):
            raise StructureError(f"mu: expected shape {(d, d, d)}, got {mu.shape}")
        mu.setflags(write=False)
        object.__setattr__(self, "mu", mu)

    @classmethod
    def from_table(cls, dim: int, products: dict[tuple[int, int], dict[int, Any]]) -> "Algebra":
        """Build from sparse rules {(i, j): {k: coefficient}}."""
        mu = zeros((dim, dim, dim))
        for (i, j), out in products.items():
            for k, c in out.items():
                mu[i, j, k] = to_scalar(c)
        return cls(dim, mu)

    def mul(self, a: Sequence[Any], b: Sequence[Any]) -> np.ndarray:
        return np.einsum("i,j,ijk->k", tensor(a), tensor(b), self.mu)

    def left_mult(self, a: Sequence[Any]) -> LinearMap:
        """Matrix of b -> a.b."""
        return LinearMap(np.tensordot(tensor(a), self.mu, axes=([0], [0])).T.copy())

    def right_mult(self, a: Sequence[Any]) -> LinearMap:
        """Matrix of b -> b.a."""
        return LinearMap(np.tensordot(tensor(a), self.mu, axes=([0], [1])).T.copy())

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, Algebra):
            return NotImplemented
        return self.dim == other.dim and bool(np.all(self.mu == other.mu))

    __hash__ = object.__hash__


@dataclass(frozen=True, eq=False)
class Bimodule:
    over: Algebra
    dim: int
    left: np.ndarray
    right: np.ndarray

    def __post_init__(self):
        d, m = self.over.dim, self.dim
        lt = tensor(self.left) if m and d else zeros((d, m, m))
        rt = tensor(self.right) if m and d else zeros((m, d, m))
        if lt.shape != (d, m, m):
            raise StructureError(f"left: expected shape {(d, m, m)}, got {lt.shape}")
        if rt.shape != (m, d, m):
            raise StructureError(f"right: expected shape {(m, d, m)}, got {rt.shape}")
        lt.setflags(write=False)
        rt.setflags(write=False)
        object.__setattr__(self, "left", lt)
        object.__setattr__(self, "right", rt)

    @classmethod
    def adjoint(cls, a: Algebra) -> "Bimodule":
        return cls(a, a.dim, a.mu, a.mu)

    @classmethod
    def zero(cls, a: Algebra) -> "Bimodule":
        return cls(a, 0, zeros((a.dim, 0, 0)), zeros((0, a.dim, 0)))

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, Bimodule):
            return NotImplemented
        return (
            self.over == other.over
            and self.dim == other.dim
            and bool(np.all(self.left == other.left))
            and bool(np.all(self.right == other.right))
        )

    __hash__ = object.__hash__


@dataclass(frozen=True, eq=False)
class NijAlgebra:
    algebra: Algebra
    n_op: LinearMap

    def __post_init__(self):
        d = self.algebra.dim
        object.__setattr__(self, "n_op", _as_map(self.n_op, d, d, "nijenhuis operator"))

    @property
    def dim(self) -> int:
        return self.algebra.dim

    @property
    def mu(self) -> np.ndarray:
        return self.algebra.mu

    @property
    def n(self) -> np.ndarray:
        return self.n_op.matrix

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, NijAlgebra):
            return NotImplemented
        return self.algebra == other.algebra and self.n_op == other.n_op

    __hash__ = object.__hash__


@dataclass(frozen=True, eq=False)
class NijBimodule:
    over: NijAlgebra
    bimodule: Bimodule
    nm_op: LinearMap

    def __post_init__(self):
        if self.bimodule.over != self.over.algebra:
            raise StructureError("bimodule is not over the Nijenhuis algebra's underlying algebra")
        m = self.bimodule.dim
        object.__setattr__(self, "nm_op", _as_map(self.nm_op, m, m, "bimodule operator"))

    @classmethod
    def adjoint(cls, na: NijAlgebra) -> "NijBimodule":
        return cls(na, Bimodule.adjoint(na.algebra), na.n_op)

    @classmethod
    def zero(cls, na: NijAlgebra) -> "NijBimodule":
        return cls(na, Bimodule.zero(na.algebra), LinearMap.zero(0, 0))

    @property
    def dim(self) -> int:
        return self.bimodule.dim

    @property
    def left(self) -> np.ndarray:
        return self.bimodule.left

    @property
    def right(self) -> np.ndarray:
        return self.bimodule.right

    @property
    def nm(self) -> np.ndarray:
        return self.nm_op.matrix

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, NijBimodule):
            return NotImplemented
        return self.over == other.over and self.bimodule == other.bimodule and self.nm_op == other.nm_op

    __hash__ = object.__hash__


# ---------------------------------------------------------------------------
# verification


def _b(t: np.ndarray) -> np.ndarray:
    return t[None]


def _associativity(rep: Report, mu: np.ndarray, law: str = "associativity") -> None:
    t = _b(mu)
    # (ab)c: feed a.b into slot 0 of mu; a(bc): feed b.c into slot 1
    lhs = ops.insert(t, 0, mu)[0]
    rhs = ops.insert(t, 1, mu)[0]
    rep.compare(law, lhs, rhs, 3)


def _bimodule_laws(rep: Report, mu: np.ndarray, lt: np.ndarray, rt: np.ndarray, prefix: str = "") -> None:
    # (ab) |> u = a |> (b |> u)
    lhs = ops.insert(_b(lt), 0, mu)[0]
    rhs = ops.left(_b(lt), lt)[0]
    rep.compare(prefix + "left-action", lhs, rhs, 3)
    # (a |> u) <| b = a |> (u <| b)
    lhs = ops.right(_b(lt), rt)[0]
    rhs = ops.left(_b(rt), lt)[0]
    rep.compare(prefix + "middle", lhs, rhs, 3)
    # (u <| a) <| b = u <| (ab)
    lhs = ops.right(_b(rt), rt)[0]
    rhs = ops.insert(_b(rt), 1, mu)[0]
    rep.compare(prefix + "right-action", lhs, rhs, 3)


def _nijenhuis_law(rep: Report, mu: np.ndarray, n: np.ndarray) -> None:
    t = _b(mu)
    lhs = ops.arg(ops.arg(t, 0, n), 1, n)[0]
    rhs = ops.out(_b(deformed_product(mu, n)), n)[0]
    rep.compare("nijenhuis", lhs, rhs, 2)


def _nij_bimodule_laws(rep: Report, na: NijAlgebra, b: Bimodule, nm: np.ndarray) -> None:
    n = na.n
    lt, rt = b.left, b.right
    # N(a) |> N_M(u) = N_M(N(a) |> u + a |> N_M(u) - N_M(a |> u))
    t = _b(lt)
    lhs = ops.arg(ops.arg(t, 0, n), 1, nm)[0]
    inner = ops.add(ops.add(ops.arg(t, 0, n), ops.arg(t, 1, nm)), ops.scale(ops.out(t, nm), -1))
    rhs = ops.out(inner, nm)[0]
    rep.compare("nijenhuis-left", lhs, rhs, 2)
    # N_M(u) <| N(a) = N_M(N_M(u) <| a + u <| N(a) - N_M(u <| a))
    t = _b(rt)
    lhs = ops.arg(ops.arg(t, 0, nm), 1, n)[0]
    inner = ops.add(ops.add(ops.arg(t, 0, nm), ops.arg(t, 1, n)), ops.scale(ops.out(t, nm), -1))
    rhs = ops.out(inner, nm)[0]
    rep.compare("nijenhuis-right", lhs, rhs, 2)


def _admissible_laws(rep: Report, na: NijAlgebra, b: Bimodule, beta: np.ndarray) -> None:
    n = na.n
    beta2 = beta.dot(beta)
    # beta(N(a) |> u) + a |> beta^2(u) = N(a) |> beta(u) + beta(a |> beta(u))
    t = _b(b.left)
    lhs = ops.add(ops.out(ops.arg(t, 0, n), beta), ops.arg(t, 1, beta2))[0]
    rhs = ops.add(ops.arg(ops.arg(t, 0, n), 1, beta), ops.out(ops.arg(t, 1, beta), beta))[0]
    rep.compare("admissible-left", lhs, rhs, 2)
    # beta(u <| N(a)) + beta^2(u) <| a = beta(u) <| N(a) + beta(beta(u) <| a)
    t = _b(b.right)
    lhs = ops.add(ops.out(ops.arg(t, 1, n), beta), ops.arg(t, 0, beta2))[0]
    rhs = ops.add(ops.arg(ops.arg(t, 1, n), 0, beta), ops.out(ops.arg(t, 0, beta), beta))[0]
    rep.compare("admissible-right", lhs, rhs, 2)


def _morphism_laws(rep: Report, src: NijAlgebra, tgt: NijAlgebra, phi: np.ndarray) -> None:
    # phi(e_i e_j) = phi(e_i) phi(e_j)
    lhs = ops.out(_b(src.mu), phi)[0]
    rhs = ops.arg(ops.arg(_b(tgt.mu), 0, phi), 1, phi)[0]
    rep.compare("multiplicative", lhs, rhs, 2)
    rep.compare("commutes-with-operator", tgt.n.dot(phi).T, phi.dot(src.n).T, 1)


def verify_core(kind: str, data: Any, candidate: Any = None) -> Report:
    """Check every defining identity of ``kind`` on every basis tuple.

    kinds: algebra (Algebra), nij-algebra (NijAlgebra), bimodule (Bimodule),
    nij-bimodule (NijBimodule), admissible-map ((NijAlgebra, Bimodule) with
    candidate beta), nij-morphism ((source, target) NijAlgebras with candidate
    phi).
    """
    rep = Report(kind)
    if kind == "algebra":
        _associativity(rep, data.mu)
    elif kind == "nij-algebra":
        _associativity(rep, data.mu)
        _nijenhuis_law(rep, data.mu, data.n)
    elif kind == "bimodule":
        _bimodule_laws(rep, data.over.mu, data.left, data.right)
    elif kind == "nij-bimodule":
        _bimodule_laws(rep, data.over.mu, data.left, data.right)
        _nij_bimodule_laws(rep, data.over, data.bimodule, data.nm)
    elif kind == "admissible-map":
        na, b = data
        if b.over != na.algebra:
            raise StructureError("bimodule is not over the Nijenhuis algebra")
        beta = _as_map(candidate, b.dim, b.dim, "admissible map").matrix
        _admissible_laws(rep, na, b, beta)
    elif kind == "nij-morphism":
        src, tgt = data
        phi = _as_map(candidate, tgt.dim, src.dim, "morphism").matrix
        _morphism_laws(rep, src, tgt, phi)
    else:
        raise ValueError(f"unknown verification kind {kind!r}")
    return rep


def require(rep: Report, what: str) -> None:
    if not rep.ok:
        laws = ", ".join(rep.failed_laws())
        raise VerificationError(f"{what} fails: {laws}", rep)


# ---------------------------------------------------------------------------
# constructions


def deformed_algebra(na: NijAlgebra, k: int) -> Algebra:
    """The product a._{N^k} b = N^k(a)b + aN^k(b) - N^k(ab)."""
    if k < 0:
        raise ValueError("k must be non-negative")
    nk = na.n_op.power(k).matrix
    out = Algebra(na.dim, deformed_product(na.mu, nk))
    require(verify_core("algebra", out), "deformed product")
    return out


def deformed_bimodule(na: NijAlgebra, nb: NijBimodule, k: int) -> Bimodule:
    """Actions a |> u -> N^k(a) |> u + a |> N_M^k(u) - N_M^k(a |> u), likewise on the right."""
    if nb.over != na:
        raise StructureError("the Nijenhuis bimodule is not over this Nijenhuis algebra")
    if k < 0:
        raise ValueError("k must be non-negative")
    nk = na.n_op.power(k).matrix
    nmk = nb.nm_op.power(k).matrix

    def deform(t: np.ndarray, slot_a: int, slot_m: int) -> np.ndarray:
        tb = _b(t)
        res = ops.add(ops.arg(tb, slot_a, nk), ops.arg(tb, slot_m, nmk))
        return ops.add(res, ops.scale(ops.out(tb, nmk), -1))[0]

    base = deformed_algebra(na, k)
    out = Bimodule(base, nb.dim, deform(nb.left, 0, 1), deform(nb.right, 1, 0))
    require(verify_core("bimodule", out), "deformed bimodule")
    return out


def _semidirect_algebra(a: Algebra, b: Bimodule) -> Algebra:
    d, m = a.dim, b.dim
    mu = zeros((d + m, d + m, d + m))
    mu[:d, :d, :d] = a.mu
    mu[:d, d:, d:] = b.left
    mu[d:, :d, d:] = b.right
    return Algebra(d + m, mu)


def _block_diag(x: np.ndarray, y: np.ndarray) -> np.ndarray:
    out = zeros((x.shape[0] + y.shape[0], x.shape[1] + y.shape[1]))
    out[: x.shape[0], : x.shape[1]] = x
    out[x.shape[0] :, x.shape[1] :] = y
    return out


def semidirect(na: NijAlgebra, nb: NijBimodule) -> NijAlgebra:
    """(a,u)(b,v) = (ab, a|>v + u<|b) with operator N + N_M."""
    if nb.over != na:
        raise StructureError("the Nijenhuis bimodule is not over this Nijenhuis algebra")
    total = NijAlgebra(_semidirect_algebra(na.algebra, nb.bimodule), LinearMap(_block_diag(na.n, nb.nm)))
    require(verify_core("nij-algebra", total), "semidirect product")
    incl = zeros((na.dim + nb.dim, na.dim))
    incl[: na.dim, :] = identity(na.dim)
    require(verify_core("nij-morphism", (na, total), LinearMap(incl)), "inclusion of the base")
    return total


def lift_to_semidirect(a: Algebra, b: Bimodule, map_: LinearMap, variant: str) -> tuple[LinearMap, bool]:
    """Lift d: A -> M to (a,u) -> (0, d(a)), or R: M -> A to (a,u) -> (R(u), 0)."""
    if b.over != a:
        raise StructureError("bimodule is not over the algebra")
    d, m = a.dim, b.dim
    lift = zeros((d + m, d + m))
    if variant == "derivation-lift":
        mat = _as_map(map_, m, d, "derivation-lift map").matrix
        lift[d:, :d] = mat
    elif variant == "rb-lift":
        mat = _as_map(map_, d, m, "rb-lift map").matrix
        lift[:d, d:] = mat
    else:
        raise ValueError(f"unknown lift variant {variant!r}")
    cand = LinearMap(lift)
    ok = verify_core("nij-algebra", NijAlgebra(_semidirect_algebra(a, b), cand)).ok
    return cand, ok


def is_relative_rota_baxter(a: Algebra, b: Bimodule, r: LinearMap) -> Report:
    """R(u)R(v) = R(R(u) |> v + u <| R(v)) on basis pairs of M."""
    rmat = _as_map(r, a.dim, b.dim, "relative Rota-Baxter map").matrix
    rep = Report("relative-rota-baxter")
    lhs = ops.arg(ops.arg(_b(a.mu), 0, rmat), 1, rmat)[0]
    inner = ops.add(ops.arg(_b(b.left), 0, rmat), ops.arg(_b(b.right), 1, rmat))
    rhs = ops.out(inner, rmat)[0]
    rep.compare("relative-rota-baxter", lhs, rhs, 2)
    return rep


def dual_nij_bimodule(na: NijAlgebra, b: Bimodule, beta: LinearMap) -> NijBimodule:
    """Dual actions (a |> f)(u) = f(u <| a), (f <| a)(u) = f(a |> u), operator beta^T."""
    adm = verify_core("admissible-map", (na, b), beta)
    require(adm, "admissibility of the operator")
    # (e_i |> phi_w)(m_u) = phi_w(m_u <| e_i) = R[u, i, w]
    left = np.transpose(b.right, (1, 2, 0)).copy()
    # (phi_w <| e_i)(m_u) = phi_w(e_i |> m_u) = L[i, u, w]
    right = np.transpose(b.left, (2, 0, 1)).copy()
    dual = Bimodule(na.algebra, b.dim, left, right)
    out = NijBimodule(na, dual, LinearMap(beta).transpose())
    require(verify_core("nij-bimodule", out), "dual Nijenhuis bimodule")
    return out


def basis_tuples(dims: Iterable[int]):
    return product(*(range(k) for k in dims))
