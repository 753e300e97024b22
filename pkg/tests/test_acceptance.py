"""Acceptance run: one test per criterion, each at its stated scope and exact tolerance.

The terminal summary lists one PASS/FAIL line per criterion (see conftest).
"""

from __future__ import annotations

import random
from fractions import Fraction
from itertools import product

import numpy as np
import pytest

import oracle as orc
from conftest import FIXTURE_NAMES, rand_linear, standard
from crosscheck import fixture_mismatches
from golden_cases import CASES, GOLDEN, INPUTS, run_case
from test_complexes import data_for
from test_defext import coboundary, nontrivial_cocycle, rand_cocycle
from test_homotopy import BASES, ainf_defects, nsinf_defects, scaled_crossed, skeletal, strict_fixtures
from nijenhuis import fixtures
from nijenhuis.cli import emit_document, parse_document
from nijenhuis.complexes import KINDS, build_complex, cohomology, les_report, partial_matrix
from nijenhuis.core import LinearMap, NijAlgebra, NijBimodule, deformed_algebra, verify_core
from nijenhuis.defext import (
    AutoPair,
    Cocycle2,
    aut_ma_dimension,
    cocycle_from_extension,
    compatible_betas,
    extension_from_cocycle,
    extension_isomorphism,
    induce_automorphism,
    restrict_automorphism,
    solve_inducing,
    verify_extension,
    wells_obstruction,
    z1_derivations,
)
from nijenhuis.homotopy import (
    crossed_correspondence,
    deformed_ainf,
    induced_nsinf,
    skeletal_correspondence,
    verify_homotopy,
)
from nijenhuis.nsalg import induced_ns, theta_matrix
from nijenhuis.tensor import MultiMap, fn_bracket

criterion = pytest.mark.criterion


def adjoint(na: NijAlgebra) -> NijBimodule:
    return NijBimodule.adjoint(na)


@criterion(1, "every complex builder squares to zero for n <= 4 on all fixtures")
def test_differential_laws():
    bad = []
    for name, kind in product(FIXTURE_NAMES, KINDS):
        cx = build_complex(kind, data_for(kind, standard(name)), 5, cap=5)
        bad += [(name, kind, n) for n in cx.check_squares()]
    assert bad == []


@criterion(2, "H^n(Id_A) = d^(n+1) for d in {2, 3}, n <= 3")
def test_identity_operator_cohomology():
    bad = []
    for a in (fixtures.k2(), fixtures.t3(), fixtures.upper_triangular()):
        na = NijAlgebra(a, LinearMap.identity(a.dim))
        bettis = cohomology(build_complex("operator", na, 3)).bettis
        want = [a.dim ** (n + 1) for n in range(4)]
        if bettis[:4] != want:
            bad.append((a.dim, bettis, want))
    assert bad == []


def _oracle_is_nijenhuis(na: NijAlgebra, n: LinearMap) -> bool:
    s = orc.Structure(na.mu)
    nl = orc._lists(n.matrix)
    d = na.dim
    for i, j in product(range(d), repeat=2):
        a, b = orc.basis(i), orc.basis(j)
        na_, nb_ = orc.apply_matrix(nl, a), orc.apply_matrix(nl, b)
        lhs = s.prod(na_, nb_)
        inner = orc.vec_add(s.prod(na_, b), s.prod(a, nb_), orc.vec_scale(-1, orc.apply_matrix(nl, s.prod(a, b))))
        if lhs != orc.apply_matrix(nl, inner):
            return False
    return True


def _candidates(na: NijAlgebra, rng: random.Random, count: int) -> list[LinearMap]:
    d = na.dim
    ident = LinearMap.identity(d)
    out = []
    for i in range(count):
        kind = i % 3
        if kind == 0:
            out.append(rand_linear(rng, d, d, -1, 1))
        elif kind == 1:
            k = rng.randint(0, 3)
            out.append(LinearMap(na.n_op.power(k).matrix * rng.randint(-2, 2) + ident.matrix * rng.randint(-2, 2)))
        else:
            m = np.array(na.n_op.matrix, dtype=object)
            m[rng.randrange(d), rng.randrange(d)] += rng.choice([-1, 1])
            out.append(LinearMap(m))
    return out


@criterion(3, "fn_bracket(N, N) = 0 iff N is Nijenhuis, 50 candidates per fixture")
def test_maurer_cartan_equivalence():
    bad, seen = [], set()
    for name in FIXTURE_NAMES:
        na = standard(name)
        for n in _candidates(na, random.Random(name), 50):
            nm = MultiMap.from_linear_map(n)
            mc = fn_bracket(nm, nm, na.algebra).is_zero()
            pointwise = verify_core("nij-algebra", NijAlgebra(na.algebra, n)).ok
            if not mc == pointwise == _oracle_is_nijenhuis(na, n):
                bad.append((name, n.matrix.tolist()))
            seen.add(mc)
    assert bad == []
    assert seen == {True, False}


@criterion(4, "partial and Theta are chain maps as exact matrices, n <= 3")
def test_chain_maps():
    bad = []
    for name in FIXTURE_NAMES:
        na = standard(name)
        nb = adjoint(na)
        hoch = build_complex("hochschild", (na.algebra, nb.bimodule), 3)
        rel = build_complex("relative-operator", (na, nb), 3)
        parts = [partial_matrix(na, nb, n) for n in range(5)]
        for n in range(4):
            if rel.diff(n) @ parts[n] != parts[n + 1] @ hoch.diff(n):
                bad.append((name, "partial", n))
        op = build_complex("operator", na, 3)
        ns = build_complex("ns-shifted", na, 3)
        thetas = {n: theta_matrix(na, n) for n in range(1, 5)}
        for n in range(1, 4):
            if ns.diff(n) @ thetas[n] != thetas[n + 1] @ op.diff(n):
                bad.append((name, "theta", n))
    assert bad == []


@criterion(5, "deformed products compose for k + l <= 3 and the NS total is the deformed product")
def test_deformed_coherence():
    bad = []
    for name in FIXTURE_NAMES:
        na = standard(name)
        for k in range(4):
            for l in range(4 - k):
                once = NijAlgebra(deformed_algebra(na, k), na.n_op)
                if deformed_algebra(once, l) != deformed_algebra(na, k + l):
                    bad.append((name, k, l))
        if not np.array_equal(induced_ns(na).total(), np.asarray(deformed_algebra(na, 1).mu, dtype=object)):
            bad.append((name, "ns-total"))
    assert bad == []


@criterion(6, "cocycle -> extension -> cocycle is the identity, cohomologous cocycles give isomorphic extensions")
def test_extension_bijection():
    bad = []
    for name in FIXTURE_NAMES:
        na = standard(name)
        nb = adjoint(na)
        rng = random.Random(f"ext-{name}")
        for i in range(25):
            z = rand_cocycle(rng, na, nb)
            e = extension_from_cocycle(na, nb, z)
            if not (verify_extension(e).ok and cocycle_from_extension(e) == z):
                bad.append((name, i, "roundtrip"))
            if i % 5:
                continue
            w = z + coboundary(na, nb, rand_linear(rng, na.dim, nb.dim))
            e2 = extension_from_cocycle(na, nb, w)
            phi = extension_isomorphism(e, e2)
            ok = (
                phi is not None
                and verify_core("nij-morphism", (e.total, e2.total), phi).ok
                and phi @ e.incl == e2.incl
                and e2.proj @ phi == e.proj
                and phi.is_invertible()
            )
            if not ok:
                bad.append((name, i, "isomorphism"))
    assert bad == []


def _random_beta(rng: random.Random, e) -> LinearMap:
    m = e.fiber.dim
    betas = compatible_betas(e)
    while True:
        beta = LinearMap.identity(m).scale(rng.choice([-3, -2, -1, 2, 3, Fraction(1, 2)]))
        for b in betas:
            beta = beta + b.scale(rng.randint(-1, 1))
        if beta.is_invertible():
            return beta


@criterion(7, "Wells: 25 inducible pairs lift and restrict back, obstructed pairs have no lift")
def test_wells_criterion():
    bad = []
    rng = random.Random(7)
    for i in range(25):
        name = FIXTURE_NAMES[i % len(FIXTURE_NAMES)]
        na = standard(name)
        nb = adjoint(na)
        e = extension_from_cocycle(na, nb, coboundary(na, nb, rand_linear(rng, na.dim, nb.dim)))
        pair = AutoPair(_random_beta(rng, e), LinearMap.identity(na.dim))
        res = wells_obstruction(e, pair)
        if not (res.compatible and res.obstruction_trivial and res.lam is not None):
            bad.append((i, name, "not inducible"))
            continue
        # induce then restrict
        phi = induce_automorphism(e, pair, res.lam)
        back = restrict_automorphism(e, phi)
        if not (back.beta == pair.beta and back.alpha == pair.alpha):
            bad.append((i, name, "induce-restrict"))
        # restrict then re-lift
        res2 = wells_obstruction(e, back)
        if res2.lam is None or restrict_automorphism(e, induce_automorphism(e, back, res2.lam)).beta != back.beta:
            bad.append((i, name, "restrict-induce"))
    for name in FIXTURE_NAMES:
        na = standard(name)
        nb = adjoint(na)
        assert cohomology(build_complex("cone-reduced", (na, nb), 2)).betti(2) > 0
        e = extension_from_cocycle(na, nb, nontrivial_cocycle(na, nb))
        for c in (2, 3, -1, Fraction(1, 2)):
            pair = AutoPair(LinearMap.identity(nb.dim).scale(c), LinearMap.identity(na.dim))
            res = wells_obstruction(e, pair)
            if not res.compatible or res.obstruction_trivial or res.lam is not None:
                bad.append((name, c, "obstruction missed"))
            if solve_inducing(e, pair) is not None:
                bad.append((name, c, "automorphism exists"))
    assert bad == []


@criterion(8, "dim Z^1 equals the dimension of automorphisms fixing both ends")
def test_z1_is_aut():
    bad = []
    for name in FIXTURE_NAMES:
        for na in (standard(name), NijAlgebra(standard(name).algebra, LinearMap.zero(standard(name).dim, standard(name).dim))):
            nb = adjoint(na)
            z1 = len(z1_derivations(na, nb))
            for z in (Cocycle2.zero(na.dim, nb.dim), rand_cocycle(random.Random(name), na, nb)):
                e = extension_from_cocycle(na, nb, z)
                if aut_ma_dimension(e) != z1:
                    bad.append((name, z1, aut_ma_dimension(e)))
    assert bad == []


@criterion(9, "skeletal <-> 3-cocycle and strict <-> crossed module roundtrips, 10 instances each")
def test_homotopy_correspondences():
    bad = []
    for i in range(10):
        name = ("K2", "T3")[i % 2]
        na, nb, (g, h) = skeletal(name, 100 + i)
        na2, nb2, (chi, f) = skeletal_correspondence("to-cocycle", (g, h))
        ok = (
            verify_homotopy("homotopy-nij", (g, h)).ok
            and na2 == na
            and nb2 == nb
            and skeletal_correspondence("from-cocycle", (na2, nb2, (chi, f))) == (g, h)
        )
        if not ok:
            bad.append(("skeletal", i))
    rng = random.Random(9)
    for i in range(10):
        name = ("K2", "T3")[i % 2]
        c = Fraction(rng.choice([-1, 1]) * rng.randint(1, 5), rng.randint(1, 3))
        cm = scaled_crossed(BASES[name](), c)
        g, h = crossed_correspondence("from-crossed", cm)
        ok = (
            verify_homotopy("crossed-module", cm).ok
            and verify_homotopy("homotopy-nij", (g, h)).ok
            and crossed_correspondence("to-crossed", (g, h)) == cm
            and crossed_correspondence("from-crossed", crossed_correspondence("to-crossed", (g, h))) == (g, h)
        )
        if not ok:
            bad.append(("crossed", i, c))
    assert bad == []


@criterion(10, "induced NS-infinity identities for k <= 3, component sums are the deformed A-infinity structure")
def test_nsinf_induction():
    bad = []
    for label, gr, nop in strict_fixtures():
        if not verify_homotopy("strict-hn", (gr, nop)).ok:
            bad.append((label, "not strict"))
            continue
        eta = induced_nsinf(gr, nop)
        if not verify_homotopy("nsinf", eta, 3).ok or nsinf_defects(eta, 3):
            bad.append((label, "nsinf"))
        dg = deformed_ainf(gr, nop)
        if any(not np.array_equal(eta.total(n), dg.op(n)) for n in gr.ops):
            bad.append((label, "sums"))
        if not verify_homotopy("graded-ainf", dg).ok or ainf_defects(dg, 3):
            bad.append((label, "ainf"))
    assert bad == []


@criterion(11, "the long exact sequence is exact at every node for n <= 3")
def test_les_exactness():
    bad = []
    for name in FIXTURE_NAMES:
        na = standard(name)
        rep = les_report(na, adjoint(na), 3)
        bad += [(name, node["node"]) for node in rep["nodes"] if not node["exact"]]
        if not rep["exact"] or not rep["nodes"]:
            bad.append((name, "report"))
    assert bad == []


@criterion(12, "tensor operations and differentials agree with the brute-force oracle on K2 and T3")
def test_oracle_equivalence():
    assert {name: fixture_mismatches(name) for name in ("K2", "T3")} == {"K2": ((), ()), "T3": ((), ())}


@criterion(13, "CLI golden reports are byte-identical and documents roundtrip")
def test_cli_corpus():
    bad = []
    for name, argv, want in CASES:
        code, out, _ = run_case(argv)
        if code != want or out != (GOLDEN / f"{name}.out").read_text(encoding="utf-8"):
            bad.append(name)
    for path in sorted(INPUTS.glob("*.json")):
        if path.name.startswith(("bad-", "trunc")):
            continue
        text = path.read_text(encoding="utf-8")
        if emit_document(parse_document(text)) != text:
            bad.append(path.name)
    assert bad == []
