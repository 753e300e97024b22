"""Every graded sign used by the engine, one function per formula.

Positions named ``i`` are 1-based, as in the displayed formulas. Each helper
returns +1 or -1.
"""

from __future__ import annotations

from typing import Sequence


def parity(k: int) -> int:
    return -1 if k % 2 else 1


def contraction(i: int, n: int) -> int:
    """Insertion of an arity-n map at position i: (-1)^{(i-1)(n-1)}."""
    return parity((i - 1) * (n - 1))


def cup_bracket(m: int, n: int) -> int:
    """[f, g] = f u g - (-1)^{mn} g u f; returns (-1)^{mn}."""
    return parity(m * n)


def fn_terms(m: int, n: int) -> tuple[int, int]:
    """Coefficients of i_{delta f} g and i_{delta g} f in the FN bracket."""
    return parity(m), -parity((m + 1) * n)


def hochschild_inner(i: int) -> int:
    """Sign of the term that multiplies a_i and a_{i+1}."""
    return parity(i)


def hochschild_last(n: int) -> int:
    """Sign of f(a_1..a_n) acted on by a_{n+1} from the right."""
    return parity(n + 1)


def hochschild_via_contraction(n: int) -> int:
    """delta f = (-1)^{n-1} i_f mu - i_mu f."""
    return parity(n - 1)


def operator_right(n: int) -> int:
    """Coefficient of f(a_1..a_n) acted on by N(a_{n+1}) in d_{N,N_M}: -(-1)^n."""
    return -parity(n)


def cone(n: int) -> int:
    """Coefficient of the partial map in the cone differential at degree n."""
    return parity(n)


def reduced_degree_one() -> int:
    """delta_NAlg(f) = (delta f, -partial f) on degree 1."""
    return -1


def alternating(k: int) -> int:
    """Alternating sums over k undecorated positions: (-1)^k."""
    return parity(k)


def ns_bracket(i: int, m: int, n: int) -> int:
    """Sign of f o_i g (f arity m, g arity n) in the NS bracket."""
    return parity((i - 1) * (n - 1))


def ns_bracket_swap(m: int, n: int) -> int:
    return parity((m - 1) * (n - 1))


def ns_differential(n: int) -> int:
    """delta_pi f = (-1)^{n-1} [[pi, f]]."""
    return parity(n - 1)


def theta_first(n: int) -> int:
    return parity(n + 1)


def theta_inner(n: int, i: int) -> int:
    return parity(n + i + 1)


def psi(n: int) -> int:
    return parity(n + 1)


def ainf(i: int, n: int, degrees_before: Sequence[int]) -> int:
    """Stasheff sign (-1)^{i(n+1) + n(|a_1|+...+|a_{i-1}|)}."""
    return parity(i * (n + 1) + n * sum(degrees_before))


def nsinf_outer(i: int, n: int) -> int:
    return parity(i * (n + 1))


def koszul(n: int, degrees_before: Sequence[int]) -> int:
    """Sign for passing an arity-n operation past inputs of given degrees."""
    return parity(n * sum(degrees_before))
