"""Standard small Nijenhuis algebras used by tests, docs and the CLI."""

from __future__ import annotations

import random
from functools import lru_cache

from .core import Algebra, Bimodule, LinearMap, NijAlgebra, NijBimodule, semidirect, verify_core

__all__ = [
    "k2",
    "t3",
    "upper_triangular",
    "k2_nij",
    "t3_nij",
    "k2_semidirect",
    "random3",
    "search_nijenhuis",
    "standard",
]


def k2() -> Algebra:
    """k x k with the componentwise product."""
    return Algebra.from_table(2, {(0, 0): {0: 1}, (1, 1): {1: 1}})


def t3() -> Algebra:
    """k[x]/(x^3) in the basis 1, x, x^2."""
    rules = {}
    for i in range(3):
        for j in range(3):
            if i + j < 3:
                rules[(i, j)] = {i + j: 1}
    return Algebra.from_table(3, rules)


def upper_triangular() -> Algebra:
    """Upper triangular 2x2 matrices in the basis E11, E12, E22."""
    return Algebra.from_table(
        3,
        {(0, 0): {0: 1}, (0, 1): {1: 1}, (1, 2): {1: 1}, (2, 2): {2: 1}},
    )


def k2_nij() -> NijAlgebra:
    return NijAlgebra(k2(), LinearMap.diag([1, 0]))


def t3_nij() -> NijAlgebra:
    """T3 with N = left multiplication by x."""
    a = t3()
    return NijAlgebra(a, a.left_mult([0, 1, 0]))


def k2_semidirect() -> NijAlgebra:
    na = k2_nij()
    return semidirect(na, NijBimodule.adjoint(na))


def search_nijenhuis(a: Algebra, seed: int, entries=(-1, 0, 1), tries: int = 20000) -> LinearMap:
    """First random integer operator passing the Nijenhuis test that is neither
    diagonal nor a multiple of the identity."""
    rng = random.Random(seed)
    d = a.dim
    for _ in range(tries):
        m = [[rng.choice(entries) for _ in range(d)] for _ in range(d)]
        if all(m[i][j] == 0 for i in range(d) for j in range(d) if i != j):
            continue
        n = LinearMap(m)
        if verify_core("nij-algebra", NijAlgebra(a, n)).ok:
            return n
    raise RuntimeError("no Nijenhuis operator found")


@lru_cache(maxsize=None)
def random3(seed: int = 7) -> NijAlgebra:
    """A 3-dimensional noncommutative Nijenhuis algebra found by random search."""
    a = upper_triangular()
    return NijAlgebra(a, search_nijenhuis(a, seed))


def standard() -> dict[str, NijAlgebra]:
    return {
        "K2": k2_nij(),
        "T3": t3_nij(),
        "K2-semidirect": k2_semidirect(),
        "random3": random3(),
    }


def adjoint(na: NijAlgebra) -> NijBimodule:
    return NijBimodule.adjoint(na)


def zero_bimodule(na: NijAlgebra) -> NijBimodule:
    return NijBimodule(na, Bimodule.zero(na.algebra), LinearMap.zero(0, 0))
