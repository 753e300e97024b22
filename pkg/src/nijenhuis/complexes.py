"""Cochain complexes as exact sparse differential matrices.

A complex built with ``n_max`` has spaces in degrees 0..n_max+1 and
differentials D_0..D_{n_max}, so cohomology is available in degrees
0..n_max. Cochain vectors follow :mod:`nijenhuis.tensor`: the entry of f at
(i_1..i_n, k) sits at index (i_1 d^{n-1} + ... + i_n) w + k. In the cone
complexes a degree-n vector is the chi part followed by the F part.

Kinds and their degree-n spaces (d = dim A, m = dim M):

``hochschild``          Hom(A^n, M)
``operator``            Hom(A^n, A) with d_N (adjoint coefficients)
``relative-operator``   Hom(A^n, M) with d_{N,N_M}
``cone-full``           M in degree 0, Hom(A^n, M) + Hom(A^{n-1}, M) above
``cone-reduced``        0, Hom(A, M), then as cone-full from degree 2
``ns-shifted``          O_A(n+1) with delta_pi
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Any, Callable, Sequence

import numpy as np

from . import kernels, signs
from .backend import DENSE, Sparse
from .core import Algebra, Bimodule, NijAlgebra, NijBimodule, StructureError, require, verify_core
from .linalg import ColumnReducer, ExactMatrix, nullspace, rank, solve
from .scalars import int64_view
from .tensor import MultiMap

__all__ = [
    "KINDS",
    "DEFAULT_CAP",
    "CochainComplex",
    "CohomologyReport",
    "build_complex",
    "partial_map",
    "partial_matrix",
    "cohomology",
    "is_cocycle",
    "coboundary_witness",
    "les_report",
    "differential_matrix",
]

KINDS = ("hochschild", "operator", "relative-operator", "cone-full", "cone-reduced", "ns-shifted")
DEFAULT_CAP = 4


@dataclass
class CochainComplex:
    kind: str
    n_max: int
    spaces: list[int]
    diffs: list[ExactMatrix]
    blocks: list[tuple[int, ...]] = field(default_factory=list)
    data: Any = None
    _cache: dict = field(default_factory=dict, repr=False)

    def dim(self, n: int) -> int:
        if n < 0 or n >= len(self.spaces):
            return 0
        return self.spaces[n]

    def diff(self, n: int) -> ExactMatrix:
        """D_n; D_{-1} is the zero map into degree 0."""
        if n == -1:
            return ExactMatrix(self.spaces[0], 0)
        if not 0 <= n < len(self.diffs):
            raise ValueError(f"degree {n} outside 0..{self.n_max}")
        return self.diffs[n]

    def rank(self, n: int) -> int:
        key = ("rank", n)
        if key not in self._cache:
            self._cache[key] = 0 if n < 0 else rank(self.diff(n))
        return self._cache[key]

    def cycles(self, n: int) -> list[list[Fraction]]:
        key = ("cycles", n)
        if key not in self._cache:
            self._cache[key] = nullspace(self.diff(n))
        return self._cache[key]

    def check_squares(self) -> list[int]:
        """Degrees n where D_{n+1} D_n is not exactly zero."""
        return [n for n in range(len(self.diffs) - 1) if not (self.diffs[n + 1] @ self.diffs[n]).is_zero()]


@dataclass
class CohomologyReport:
    kind: str
    fixture: str | None
    degrees: list[dict[str, int]]

    def betti(self, n: int) -> int:
        return self.degrees[n]["betti"]

    @property
    def bettis(self) -> list[int]:
        return [row["betti"] for row in self.degrees]


# ---------------------------------------------------------------------------
# matrices of the formulas


def _integral(*tensors: np.ndarray) -> bool:
    return all(int64_view(t) is not None for t in tensors if t.size)


def differential_matrix(formula: Callable, slots: int, d: int, w: int, tensors: Sequence[np.ndarray]) -> ExactMatrix:
    """Matrix of ``formula(ops, batch)`` on Hom(A^slots, W), columns = basis cochains."""
    integer = _integral(*tensors)
    ops = Sparse(integer)
    t = Sparse.identity((d,) * slots, w, integer)
    return formula(ops, t).to_matrix()


def _coeffs(data) -> tuple[Algebra, Bimodule, np.ndarray | None, np.ndarray | None]:
    if isinstance(data, tuple) and len(data) == 2 and isinstance(data[0], NijAlgebra):
        na, nb = data
        if nb.over != na:
            raise StructureError("the Nijenhuis bimodule is not over this Nijenhuis algebra")
        return na.algebra, nb.bimodule, na.n, nb.nm
    if isinstance(data, tuple) and len(data) == 2 and isinstance(data[0], Algebra):
        a, b = data
        if b.over != a:
            raise StructureError("bimodule is not over the algebra")
        return a, b, None, None
    if isinstance(data, NijAlgebra):
        return data.algebra, Bimodule.adjoint(data.algebra), data.n, data.n
    if isinstance(data, Algebra):
        return data, Bimodule.adjoint(data), None, None
    raise StructureError("complex data must be an algebra, a Nijenhuis algebra, or a pair with a bimodule")


class _Pieces:
    """Per-degree matrices of delta, d_{N,N_M} and the partial map, cached."""

    def __init__(self, a: Algebra, b: Bimodule, n_a, n_m):
        self.a, self.b, self.n_a, self.n_m = a, b, n_a, n_m
        self.d, self.m = a.dim, b.dim
        self.mu_n = kernels.deformed_product(a.mu, n_a) if n_a is not None else None
        self._cache: dict = {}

    def _tensors(self):
        ts = [self.a.mu, self.b.left, self.b.right]
        if self.n_a is not None:
            ts += [self.n_a, self.n_m, self.mu_n]
        return ts

    def hoch(self, n: int) -> ExactMatrix:
        key = ("h", n)
        if key not in self._cache:
            a, b = self.a, self.b
            f = lambda ops, t: kernels.hochschild(ops, t, n, a.mu, b.left, b.right)  # noqa: E731
            self._cache[key] = differential_matrix(f, n, self.d, self.m, self._tensors())
        return self._cache[key]

    def rel(self, n: int) -> ExactMatrix:
        key = ("d", n)
        if key not in self._cache:
            a, b = self.a, self.b
            f = lambda ops, t: kernels.relative_operator(  # noqa: E731
                ops, t, n, a.mu, b.left, b.right, self.n_a, self.n_m, self.mu_n
            )
            self._cache[key] = differential_matrix(f, n, self.d, self.m, self._tensors())
        return self._cache[key]

    def part(self, n: int) -> ExactMatrix:
        key = ("p", n)
        if key not in self._cache:
            f = lambda ops, t: kernels.partial(ops, t, n, self.n_a, self.n_m)  # noqa: E731
            self._cache[key] = differential_matrix(f, n, self.d, self.m, self._tensors())
        return self._cache[key]

    def hom(self, n: int) -> int:
        return self.d**n * self.m


def _cone_diff(p: _Pieces, n: int, reduced: bool) -> tuple[ExactMatrix, tuple[int, ...]]:
    h = p.hom
    if n == 0:
        if reduced:
            return ExactMatrix(h(1), 0), (h(1),)
        return ExactMatrix.block([[p.hoch(0)], [ExactMatrix.identity(h(0))]], [h(1), h(0)], [h(0)]), (h(1), h(0))
    if n == 1 and reduced:
        return (
            ExactMatrix.block([[p.hoch(1)], [p.part(1).scale(signs.reduced_degree_one())]], [h(2), h(1)], [h(1)]),
            (h(2), h(1)),
        )
    blocks = [[p.hoch(n), None], [p.part(n).scale(signs.cone(n)), p.rel(n - 1)]]
    return ExactMatrix.block(blocks, [h(n + 1), h(n)], [h(n), h(n - 1)]), (h(n + 1), h(n))


def _verify_data(kind: str, data) -> None:
    if kind == "hochschild":
        a, b, _, _ = _coeffs(data)
        require(verify_core("algebra", a), "algebra")
        require(verify_core("bimodule", b), "bimodule")
    elif kind == "operator":
        require(verify_core("nij-algebra", data), "Nijenhuis algebra")
    elif kind in ("relative-operator", "cone-full", "cone-reduced"):
        na, nb = data
        require(verify_core("nij-algebra", na), "Nijenhuis algebra")
        require(verify_core("nij-bimodule", nb), "Nijenhuis bimodule")


def build_complex(kind: str, data: Any, n_max: int, cap: int = DEFAULT_CAP, verify: bool = True) -> CochainComplex:
    """Build the complex ``kind`` up to cohomological degree ``n_max``.

    data: hochschild takes (Algebra, Bimodule) or an Algebra (adjoint);
    operator takes a NijAlgebra; relative-operator and the cones take
    (NijAlgebra, NijBimodule); ns-shifted takes an NSAlgebra or a NijAlgebra
    (whose induced NS structure is used).
    """
    if kind not in KINDS:
        raise ValueError(f"unknown complex kind {kind!r}")
    if not 1 <= n_max <= cap:
        raise ValueError(f"n_max must lie in 1..{cap}")
    if verify:
        _verify_data(kind, data)
    if kind == "ns-shifted":
        return _ns_complex(data, n_max, verify)
    if kind == "operator":
        if not isinstance(data, NijAlgebra):
            raise StructureError("the operator complex takes a Nijenhuis algebra")
    elif kind in ("relative-operator", "cone-full", "cone-reduced"):
        if not (isinstance(data, tuple) and isinstance(data[0], NijAlgebra)):
            raise StructureError(f"{kind} takes (NijAlgebra, NijBimodule)")
    a, b, n_a, n_m = _coeffs(data)
    if kind == "hochschild":
        n_a = n_m = None
    p = _Pieces(a, b, n_a, n_m)
    diffs, blocks = [], []
    if kind == "hochschild":
        diffs = [p.hoch(n) for n in range(n_max + 1)]
        spaces = [p.hom(n) for n in range(n_max + 2)]
    elif kind in ("operator", "relative-operator"):
        diffs = [p.rel(n) for n in range(n_max + 1)]
        spaces = [p.hom(n) for n in range(n_max + 2)]
    else:
        reduced = kind == "cone-reduced"
        for n in range(n_max + 1):
            mat, blk = _cone_diff(p, n, reduced)
            diffs.append(mat)
        spaces = [diffs[0].cols] + [mat.rows for mat in diffs]
        blocks = [_cone_split(p, n, reduced) for n in range(n_max + 2)]
    cx = CochainComplex(kind, n_max, spaces, diffs, blocks, data)
    cx._cache["pieces"] = p
    return cx


def _cone_split(p: _Pieces, n: int, reduced: bool) -> tuple[int, ...]:
    if n == 0:
        return (0, 0) if reduced else (p.hom(0), 0)
    if n == 1 and reduced:
        return (p.hom(1), 0)
    return (p.hom(n), p.hom(n - 1))


def _ns_complex(data, n_max: int, verify: bool) -> CochainComplex:
    from .nsalg import NSAlgebra, induced_ns, verify_ns

    ns = induced_ns(data) if isinstance(data, NijAlgebra) else data
    if not isinstance(ns, NSAlgebra):
        raise StructureError("ns-shifted takes an NSAlgebra or a NijAlgebra")
    if verify:
        require(verify_ns(ns), "NS-algebra")
    d = ns.dim
    pi = ns.components()
    tensors = list(pi.values())
    diffs, spaces, blocks = [], [], []
    for n in range(n_max + 2):
        k = n + 1
        spaces.append(len(kernels.labels(k)) * d ** (k + 1))
        blocks.append(tuple(d ** (k + 1) for _ in kernels.labels(k)))
    for n in range(n_max + 1):
        diffs.append(_ns_matrix(pi, n + 1, d, tensors))
    return CochainComplex("ns-shifted", n_max, spaces, diffs, blocks, ns)


def _ns_matrix(pi, k: int, d: int, tensors) -> ExactMatrix:
    """Matrix of delta_pi: O_A(k) -> O_A(k+1), blocks ordered by label."""
    integer = _integral(*tensors)
    ops = Sparse(integer)
    src, tgt = list(kernels.labels(k)), list(kernels.labels(k + 1))
    size = d ** (k + 1)
    cols = []
    for s in src:
        t = Sparse.identity((d,) * k, d, integer)
        comps = {r: (t if r == s else ops.zero_like(t, (d,) * k, d)) for r in src}
        out = kernels.ns_differential(ops, comps, k, pi, d)
        cols.append([out[r].to_matrix() for r in tgt])
    blocks = [[cols[j][i] for j in range(len(src))] for i in range(len(tgt))]
    return ExactMatrix.block(blocks, [d ** (k + 2)] * len(tgt), [size] * len(src))


# ---------------------------------------------------------------------------
# single cochains


def partial_map(na: NijAlgebra, nb: NijBimodule, f: MultiMap) -> MultiMap:
    """Sum over subsets S of positions of (-1)^{|S|} N_M^{|S|} f(N on positions outside S)."""
    if nb.over != na:
        raise StructureError("the Nijenhuis bimodule is not over this Nijenhuis algebra")
    if f.source != na.dim or f.target != nb.dim:
        raise StructureError("cochain does not fit the algebra and bimodule")
    res = kernels.partial(DENSE, f.batch(), f.arity, na.n, nb.nm)[0]
    return MultiMap(f.arity, na.dim, nb.dim, res)


def partial_matrix(na: NijAlgebra, nb: NijBimodule, n: int) -> ExactMatrix:
    """Matrix of the partial map on Hom(A^n, M), columns = basis cochains."""
    if nb.over != na:
        raise StructureError("the Nijenhuis bimodule is not over this Nijenhuis algebra")
    f = lambda ops, t: kernels.partial(ops, t, n, na.n, nb.nm)  # noqa: E731
    return differential_matrix(f, n, na.dim, nb.dim, [na.n, nb.nm])


def relative_differential(na: NijAlgebra, nb: NijBimodule, f: MultiMap) -> MultiMap:
    """d_{N,N_M} f for a single cochain."""
    b = nb.bimodule
    res = kernels.relative_operator(DENSE, f.batch(), f.arity, na.mu, b.left, b.right, na.n, nb.nm)[0]
    return MultiMap(f.arity + 1, na.dim, nb.dim, res)


def cone_vector(chi: MultiMap | None, f_part: MultiMap | None) -> list[Fraction]:
    out: list[Fraction] = []
    for part in (chi, f_part):
        if part is not None:
            out.extend(part.vector())
    return out


def split_cone_vector(c: CochainComplex, n: int, v: Sequence[Any]) -> tuple[list[Fraction], list[Fraction]]:
    h, _ = c.blocks[n]
    v = [Fraction(x) for x in v]
    return v[:h], v[h:]


# ---------------------------------------------------------------------------
# cohomology and membership


def cohomology(c: CochainComplex, fixture: str | None = None) -> CohomologyReport:
    rows = []
    for n in range(c.n_max + 1):
        r = c.rank(n)
        nul = c.dim(n) - r
        betti = nul - c.rank(n - 1)
        if betti < 0:
            raise AssertionError(f"negative Betti number in degree {n}; D squared is not zero")
        rows.append({"degree": n, "dim": c.dim(n), "rank": r, "nullity": nul, "betti": betti})
    return CohomologyReport(c.kind, fixture, rows)


def _vector(c: CochainComplex, n: int, v: Sequence[Any]) -> list[Fraction]:
    if len(v) != c.dim(n):
        raise StructureError(f"degree-{n} vector must have length {c.dim(n)}, got {len(v)}")
    return [Fraction(x) for x in v]


def is_cocycle(c: CochainComplex, degree: int, v: Sequence[Any]) -> bool:
    vec = _vector(c, degree, v)
    return all(x == 0 for x in c.diff(degree).apply(vec))


def coboundary_witness(c: CochainComplex, degree: int, v: Sequence[Any]) -> list[Fraction] | None:
    """Some w with D_{degree-1} w = v, or None. v must be a cocycle."""
    vec = _vector(c, degree, v)
    if not is_cocycle(c, degree, vec):
        raise ValueError("not a cocycle")
    if degree == 0:
        return [] if all(x == 0 for x in vec) else None
    return solve(c.diff(degree - 1), vec)


# ---------------------------------------------------------------------------
# long exact sequence


def _span_rank(vectors: Sequence[dict[int, Any]]) -> int:
    red = ColumnReducer()
    for v in vectors:
        red.add(v)
    return red.rank


def _image_vectors(mat: ExactMatrix) -> list[dict[int, Any]]:
    return [col for _, col in mat.columns()]


def _sparse(v: Sequence[Fraction]) -> dict[int, Fraction]:
    return {i: x for i, x in enumerate(v) if x != 0}


def _induced_rank(src: CochainComplex, n: int, chain: ExactMatrix, tgt: CochainComplex, k: int) -> int:
    """Rank of the map H^n(src) -> H^k(tgt) induced by the chain-level matrix."""
    boundaries = _image_vectors(tgt.diff(k - 1))
    base = _span_rank(boundaries)
    images = [_sparse(chain.apply(z)) for z in src.cycles(n)]
    return _span_rank(boundaries + images) - base


def _maps_into_boundaries(src: CochainComplex, n: int, chain: ExactMatrix, tgt: CochainComplex, k: int) -> bool:
    return _induced_rank(src, n, chain, tgt, k) == 0


def _embed(rows: int, offset: int, cols: int) -> ExactMatrix:
    return ExactMatrix(rows, cols, {j: {offset + j: 1} for j in range(cols)})


def _project(cols: int, offset: int, rows: int) -> ExactMatrix:
    return ExactMatrix(rows, cols, {offset + j: {j: 1} for j in range(rows)})


def les_report(na: NijAlgebra, nb: NijBimodule, n_max: int, cap: int = DEFAULT_CAP) -> dict[str, Any]:
    """Exactness of ... -> H^{n-1}(N;N_M) -i-> H^n_cone -p-> H^n_Hoch -c-> H^n(N;N_M) -> ...

    The connecting map c is computed by the zig-zag: lift chi to (chi, 0),
    apply the cone differential, read off the second component. A node is
    checked when both of its adjacent maps are available, i.e. every node up
    to H^{n_max}_Hoch.
    """
    data = (na, nb)
    hoch = build_complex("hochschild", (na.algebra, nb.bimodule), n_max, cap)
    rel = build_complex("relative-operator", data, n_max, cap, verify=False)
    cone = build_complex("cone-full", data, n_max, cap, verify=False)

    def hoch_dim(n):
        return hoch.dim(n)

    terms = []  # (label, complex, degree)
    maps = []  # chain-level matrix from term j to term j+1
    for n in range(n_max + 1):
        terms += [(f"H^{n}_cone", cone, n), (f"H^{n}_Hoch", hoch, n), (f"H^{n}(N)", rel, n)]
        # p: cone degree n -> hochschild degree n
        maps.append(_project(cone.dim(n), 0, hoch_dim(n)))
        # zig-zag: chi -> (chi, 0) -> D -> second component
        lift = _embed(cone.dim(n), 0, hoch_dim(n))
        down = _project(cone.dim(n + 1), hoch_dim(n + 1), rel.dim(n))
        maps.append(down @ (cone.diff(n) @ lift))
        # i: relative degree n -> cone degree n+1
        maps.append(_embed(cone.dim(n + 1), hoch_dim(n + 1), rel.dim(n)) if n < n_max else None)

    # the zig-zag must land in the image of i on cocycles
    for n in range(n_max + 1):
        lift = _embed(cone.dim(n), 0, hoch_dim(n))
        top = _project(cone.dim(n + 1), 0, hoch_dim(n + 1)) @ (cone.diff(n) @ lift)
        for z in hoch.cycles(n):
            if any(x != 0 for x in top.apply(z)):
                raise AssertionError("zig-zag image does not lie in the subcomplex")

    bettis = {label: cohomology(cx).betti(k) for label, cx, k in terms}
    ranks = []
    for j, mat in enumerate(maps):
        if mat is None or j + 1 >= len(terms):
            ranks.append(None)
            continue
        _, sc, sk = terms[j]
        _, tc, tk = terms[j + 1]
        ranks.append(_induced_rank(sc, sk, mat, tc, tk))
    nodes = []
    for j, (label, cx, k) in enumerate(terms):
        incoming = ranks[j - 1] if j > 0 else 0
        outgoing = ranks[j] if j < len(ranks) else None
        if incoming is None or outgoing is None:
            continue
        kernel = bettis[label] - outgoing
        composite_zero = True
        if 0 < j < len(maps) and maps[j] is not None and maps[j - 1] is not None:
            _, sc, sk = terms[j - 1]
            _, tc, tk = terms[j + 1]
            composite_zero = _maps_into_boundaries(sc, sk, maps[j] @ maps[j - 1], tc, tk)
        nodes.append(
            {
                "node": label,
                "degree": k,
                "dim": bettis[label],
                "image_in": incoming,
                "kernel_out": kernel,
                "exact": incoming == kernel and composite_zero,
            }
        )
    return {
        "n_max": n_max,
        "betti": {label: bettis[label] for label, _, _ in terms},
        "nodes": nodes,
        "exact": all(nd["exact"] for nd in nodes),
        "connecting_map": "zig-zag on representatives (engine construction)",
    }
