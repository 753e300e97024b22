from __future__ import annotations

import random
from fractions import Fraction

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from conftest import FIXTURE_NAMES, rand_map, standard
from nijenhuis import fixtures
from nijenhuis.complexes import (
    KINDS,
    build_complex,
    coboundary_witness,
    cohomology,
    cone_vector,
    is_cocycle,
    les_report,
    partial_map,
    partial_matrix,
    relative_differential,
    split_cone_vector,
)
from nijenhuis.core import LinearMap, NijAlgebra, NijBimodule, VerificationError
from nijenhuis.linalg import ExactMatrix
from nijenhuis.tensor import MultiMap, hochschild_delta


def data_for(kind: str, na: NijAlgebra):
    if kind == "hochschild":
        return na.algebra
    if kind in ("operator", "ns-shifted"):
        return na
    return na, NijBimodule.adjoint(na)


def rand_vector(rng: random.Random, n: int) -> list[Fraction]:
    return [Fraction(rng.randint(-2, 2)) for _ in range(n)]


@pytest.mark.parametrize("kind", KINDS)
@pytest.mark.parametrize("name", ["K2", "T3", "random3"])
def test_differential_squares_to_zero(kind, name):
    cx = build_complex(kind, data_for(kind, standard(name)), 3 if kind == "ns-shifted" else 4)
    assert cx.check_squares() == []


@pytest.mark.parametrize("kind", ["hochschild", "operator", "relative-operator", "cone-full", "cone-reduced"])
def test_semidirect_squares_to_zero(kind):
    cx = build_complex(kind, data_for(kind, standard("K2-semidirect")), 3)
    assert cx.check_squares() == []


@pytest.mark.parametrize("make", [fixtures.k2, fixtures.t3, fixtures.upper_triangular])
def test_identity_operator_complex_is_zero(make):
    a = make()
    na = NijAlgebra(a, LinearMap.identity(a.dim))
    cx = build_complex("operator", na, 3)
    assert all(cx.diff(n).is_zero() for n in range(4))
    rep = cohomology(cx)
    assert rep.bettis == [a.dim ** (n + 1) for n in range(4)]


def test_operator_cohomology_of_k2_in_degree_zero():
    assert cohomology(build_complex("operator", fixtures.k2_nij(), 2)).betti(0) == 2


def test_hochschild_cohomology_of_k2():
    rep = cohomology(build_complex("hochschild", fixtures.k2(), 3))
    assert rep.bettis == [2, 0, 0, 0]


def test_hochschild_kernel_in_degree_zero_by_enumeration():
    # the centre of T3 is all of T3; of the upper triangular algebra, the span of the identity
    for a, want in [(fixtures.t3(), 3), (fixtures.upper_triangular(), 1)]:
        cx = build_complex("hochschild", a, 1)
        assert cohomology(cx).betti(0) == want


@pytest.mark.parametrize("name", FIXTURE_NAMES)
def test_reduced_cone_top_left_block_is_hochschild(name):
    na = standard(name)
    nb = NijBimodule.adjoint(na)
    cone = build_complex("cone-reduced", (na, nb), 3)
    hoch = build_complex("hochschild", (na.algebra, nb.bimodule), 3)
    for n in range(1, 4):
        dense = cone.diff(n).to_dense()
        h = hoch.diff(n).to_dense()
        assert np.array_equal(dense[: h.shape[0], : h.shape[1]], h)
        if n >= 2:
            # the block above the operator part is zero
            assert not dense[: h.shape[0], h.shape[1] :].any()


@pytest.mark.parametrize("name", FIXTURE_NAMES)
def test_full_and_reduced_cones_agree_from_degree_three(name):
    na = standard(name)
    data = (na, NijBimodule.adjoint(na))
    full = cohomology(build_complex("cone-full", data, 4 if na.dim < 4 else 3))
    red = cohomology(build_complex("cone-reduced", data, 4 if na.dim < 4 else 3))
    for n in range(3, len(full.bettis)):
        assert full.betti(n) == red.betti(n)


def test_cap_and_verification_errors():
    na = fixtures.k2_nij()
    with pytest.raises(ValueError):
        build_complex("operator", na, 5)
    with pytest.raises(ValueError):
        build_complex("operator", na, 0)
    with pytest.raises(ValueError):
        build_complex("other", na, 2)
    bad = NijAlgebra(fixtures.k2(), LinearMap([[0, 1], [1, 0]]))
    with pytest.raises(VerificationError):
        build_complex("operator", bad, 2)
    assert build_complex("operator", na, 5, cap=5).n_max == 5


# ---------------------------------------------------------------------------
# the map between the Hochschild and operator complexes


def test_partial_of_identity_vanishes_on_t3():
    na = fixtures.t3_nij()
    assert partial_map(na, NijBimodule.adjoint(na), MultiMap.identity(3)).is_zero()


def test_partial_of_an_element_is_itself():
    na = fixtures.t3_nij()
    u = MultiMap(0, 3, 3, [1, 2, 3])
    assert partial_map(na, NijBimodule.adjoint(na), u) == u


@pytest.mark.parametrize("name", FIXTURE_NAMES)
def test_partial_of_product_is_the_nijenhuis_defect(name):
    na = standard(name)
    assert partial_map(na, NijBimodule.adjoint(na), MultiMap.from_product(na.algebra)).is_zero()
    swap = NijAlgebra(fixtures.k2(), LinearMap([[0, 1], [1, 0]]))
    assert not partial_map(swap, NijBimodule.adjoint(swap), MultiMap.from_product(swap.algebra)).is_zero()


@pytest.mark.parametrize("name", FIXTURE_NAMES)
@settings(max_examples=10)
@given(arity=st.integers(0, 3), seed=st.integers(0, 10**6))
def test_partial_is_a_chain_map(name, arity, seed):
    na = standard(name)
    if na.dim > 3 and arity == 3:
        arity = 2
    nb = NijBimodule.adjoint(na)
    f = rand_map(random.Random(seed), arity, na.dim, nb.dim)
    lhs = relative_differential(na, nb, partial_map(na, nb, f))
    rhs = partial_map(na, nb, hochschild_delta(na.algebra, nb.bimodule, f))
    assert lhs == rhs


def partial_columns(na, nb, n: int) -> ExactMatrix:
    size = na.dim**n * nb.dim
    cols = []
    for j in range(size):
        unit = [0] * size
        unit[j] = 1
        cols.append(partial_map(na, nb, MultiMap.from_vector(n, na.dim, nb.dim, unit)).vector())
    return ExactMatrix.from_dense(np.array(cols, dtype=object).T.reshape(size, size))


@pytest.mark.parametrize("name", FIXTURE_NAMES)
def test_chain_map_as_matrices(name):
    na = standard(name)
    nb = NijBimodule.adjoint(na)
    n_max = 3 if na.dim < 4 else 2
    hoch = build_complex("hochschild", (na.algebra, nb.bimodule), n_max)
    rel = build_complex("relative-operator", (na, nb), n_max)
    for n in range(n_max):
        lhs = rel.diff(n) @ partial_columns(na, nb, n)
        rhs = partial_columns(na, nb, n + 1) @ hoch.diff(n)
        assert lhs.to_dense().tolist() == rhs.to_dense().tolist()


@pytest.mark.parametrize("name", FIXTURE_NAMES)
def test_partial_matrix_matches_single_cochains(name):
    na = standard(name)
    nb = NijBimodule.adjoint(na)
    for n in range(3):
        assert partial_matrix(na, nb, n) == partial_columns(na, nb, n)


# ---------------------------------------------------------------------------
# cocycles and coboundaries


def test_zero_is_a_cocycle():
    na = fixtures.k2_nij()
    cx = build_complex("cone-reduced", (na, NijBimodule.adjoint(na)), 2)
    assert is_cocycle(cx, 2, [0] * cx.dim(2))
    assert coboundary_witness(cx, 2, [0] * cx.dim(2)) is not None


@pytest.mark.parametrize("kind", ["hochschild", "operator", "cone-full", "cone-reduced"])
@pytest.mark.parametrize("name", FIXTURE_NAMES)
@settings(max_examples=5)
@given(seed=st.integers(0, 10**6))
def test_coboundaries_have_witnesses(kind, name, seed):
    rng = random.Random(seed)
    cx = build_complex(kind, data_for(kind, standard(name)), 3)
    for n in (1, 2):
        w0 = rand_vector(rng, cx.dim(n - 1))
        v = cx.diff(n - 1).apply(w0)
        assert is_cocycle(cx, n, v)
        w = coboundary_witness(cx, n, v)
        assert w is not None and cx.diff(n - 1).apply(w) == v


@pytest.mark.parametrize("name", FIXTURE_NAMES)
def test_random_vector_is_not_a_cocycle(name):
    rng = random.Random(3)
    cx = build_complex("cone-reduced", data_for("cone-reduced", standard(name)), 2)
    while True:
        v = rand_vector(rng, cx.dim(2))
        if any(cx.diff(2).apply(v)):
            break
    assert not is_cocycle(cx, 2, v)
    with pytest.raises(ValueError):
        coboundary_witness(cx, 2, v)


@pytest.mark.parametrize("name", FIXTURE_NAMES)
def test_nontrivial_class_has_no_witness(name):
    cx = build_complex("cone-reduced", data_for("cone-reduced", standard(name)), 2)
    assert cohomology(cx).betti(2) > 0
    found = [z for z in cx.cycles(2) if coboundary_witness(cx, 2, z) is None]
    assert found


def test_wrong_length_rejected():
    cx = build_complex("hochschild", fixtures.k2(), 2)
    with pytest.raises(Exception):
        is_cocycle(cx, 1, [0])


def test_cone_vector_split():
    na = fixtures.k2_nij()
    cx = build_complex("cone-full", (na, NijBimodule.adjoint(na)), 2)
    chi = MultiMap(2, 2, 2, np.arange(8).reshape(2, 2, 2))
    f = MultiMap(1, 2, 2, [[1, 2], [3, 4]])
    v = cone_vector(chi, f)
    top, bottom = split_cone_vector(cx, 2, v)
    assert top == chi.vector() and bottom == f.vector()


# ---------------------------------------------------------------------------
# long exact sequence


@pytest.mark.parametrize("name", FIXTURE_NAMES)
def test_long_exact_sequence(name):
    na = standard(name)
    rep = les_report(na, NijBimodule.adjoint(na), 3 if na.dim < 4 else 2)
    assert rep["exact"]
    assert rep["nodes"]


def test_long_exact_sequence_for_identity():
    na = NijAlgebra(fixtures.t3(), LinearMap.identity(3))
    rep = les_report(na, NijBimodule.adjoint(na), 3)
    assert rep["exact"]
    assert rep["betti"]["H^2(N)"] == 27


def test_long_exact_sequence_with_zero_module():
    na = fixtures.t3_nij()
    rep = les_report(na, fixtures.zero_bimodule(na), 3)
    assert rep["exact"]
    assert all(v == 0 for v in rep["betti"].values())


def test_exact_matrix_products():
    a = ExactMatrix.from_dense([[1, 2], [0, 1]])
    b = ExactMatrix.from_dense([[0, 1], [1, 0]])
    assert (a @ b).to_dense().tolist() == [[2, 1], [1, 0]]
