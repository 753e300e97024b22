from __future__ import annotations

import pytest

import oracle as orc
from crosscheck import compare_matrix, fixture_mismatches
from nijenhuis import fixtures
from nijenhuis.complexes import build_complex
from nijenhuis.linalg import ExactMatrix
from nijenhuis.tensor import MultiMap


@pytest.mark.parametrize("name", ["K2", "T3"])
def test_tensor_operations_match_oracle(name):
    tensor_bad, _ = fixture_mismatches(name)
    assert tensor_bad == ()


@pytest.mark.parametrize("name", ["K2", "T3"])
def test_differential_matrices_match_oracle(name):
    _, matrix_bad = fixture_mismatches(name)
    assert matrix_bad == ()


def test_oracle_lift_is_multilinear():
    a = fixtures.t3()
    s = orc.Structure(a.mu)
    mu = orc.from_entries(MultiMap.from_product(a).entries)
    u = {0: 1, 1: 1}
    assert orc.lift(mu, [u, u]) == s.prod(u, u) == {0: 1, 1: 2, 2: 1}


def test_column_comparison_catches_a_single_wrong_entry():
    a = fixtures.k2()
    s = orc.Structure(a.mu)
    mat = build_complex("hochschild", a, 1).diff(1)

    def formula(fs):
        return [orc.hochschild(s, fs[0], 1, True)]

    assert compare_matrix(mat, [1], [2], 2, 2, formula)
    dense = mat.to_dense().copy()
    dense[3, 1] += 1
    assert not compare_matrix(ExactMatrix.from_dense(dense), [1], [2], 2, 2, formula)
