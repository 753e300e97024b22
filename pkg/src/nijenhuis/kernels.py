"""The cochain-level formulas, written once against the backend surface.

``ops`` is either the dense or the sparse backend from
:mod:`nijenhuis.backend`; ``t`` is a batch of n-ary maps. Structure data
arrives as plain tensors:

``mu``   c[i][j][k] of the algebra
``lt``   L[i][u][v] for a |> u
``rt``   R[u][i][v] for u <| a
``n_a``  matrix of N on A, ``n_m`` matrix of N_M on M
"""

from __future__ import annotations

from typing import Callable, Mapping

import numpy as np

from . import signs


def deformed_product(mu: np.ndarray, n_a: np.ndarray) -> np.ndarray:
    """Tensor of a._N b = N(a)b + aN(b) - N(ab)."""
    from .backend import DENSE as ops

    t = mu[None]
    res = ops.add(ops.add(ops.arg(t, 0, n_a), ops.arg(t, 1, n_a)), ops.scale(ops.out(t, n_a), -1))
    return res[0]


def hochschild(ops, t, n: int, mu, lt, rt):
    """delta f(a_1..a_{n+1}) with bimodule coefficients."""
    res = ops.left(t, lt)
    for i in range(1, n + 1):
        res = ops.add(res, ops.scale(ops.insert(t, i - 1, mu), signs.hochschild_inner(i)))
    return ops.add(res, ops.scale(ops.right(t, rt), signs.hochschild_last(n)))


def relative_operator(ops, t, n: int, mu, lt, rt, n_a, n_m, mu_n=None):
    """d_{N,N_M} f; at n = 0 this reduces to the degree-0 formula."""
    if mu_n is None:
        mu_n = deformed_product(mu, n_a)
    res = ops.arg(ops.left(t, lt), 0, n_a)
    res = ops.add(res, ops.scale(ops.arg(ops.right(t, rt), n, n_a), signs.operator_right(n)))
    for i in range(1, n + 1):
        res = ops.add(res, ops.scale(ops.insert(t, i - 1, mu_n), signs.hochschild_inner(i)))
    delta = hochschild(ops, t, n, mu, lt, rt)
    return ops.add(res, ops.scale(ops.out(delta, n_m), -1))


def partial(ops, t, n: int, n_a, n_m):
    """Alternating sum over the undecorated positions.

    The factors (substitute N in slot i) and (apply N_M to the output) all
    commute, so the sum equals the product over slots of (slot_i - N_M).
    """
    res = t
    for i in range(n):
        res = ops.add(ops.arg(res, i, n_a), ops.scale(ops.out(res, n_m), signs.alternating(1)))
    return res


# ---------------------------------------------------------------------------
# labeled cochains


def labels(n: int) -> range:
    """Label set of O_A(n): {1} for n = 1, {1..n+1} otherwise."""
    return range(1, 2) if n == 1 else range(1, n + 2)


def case_terms(m: int, n: int, i: int, r: int) -> list[tuple[int, int | None]]:
    """Terms of (f o_i g)([r]) as (label of f, label of g or None for the sum)."""
    if r <= i - 1:
        terms = [(r, None)]
    elif r <= i + n - 1:
        terms = [(i, r - i + 1)]
    elif r <= m + n - 1:
        terms = [(r - n + 1, None)]
    else:
        terms = [(i, n + 1), (m + 1, None)]
    fl, gl = set(labels(m)), set(labels(n))
    return [(a, b) for a, b in terms if a in fl and (b is None or b in gl)]


def compose_labeled(
    m: int,
    n: int,
    i: int,
    f: Mapping[int, object],
    g: Mapping[int, object],
    compose: Callable[[object, object], object],
    add: Callable[[object, object], object],
    zero: Callable[[], object],
    g_add: Callable[[object, object], object] | None = None,
) -> dict[int, object]:
    """Generic partial composition driven by the case table.

    ``compose(f_r, g_s)`` inserts one component into another at position i.
    """
    g_add = g_add or add
    g_sum = None
    for s in labels(n):
        g_sum = g[s] if g_sum is None else g_add(g_sum, g[s])
    out = {}
    for r in labels(m + n - 1):
        acc = None
        for a, b in case_terms(m, n, i, r):
            term = compose(f[a], g_sum if b is None else g[b])
            acc = term if acc is None else add(acc, term)
        out[r] = zero() if acc is None else acc
    return out


def ns_differential(ops, comps: Mapping[int, object], n: int, pi: Mapping[int, np.ndarray], d: int):
    """(-1)^{n-1} [[pi, f]] for a batched labeled cochain f of arity n."""

    def zero():
        return ops.zero_like(comps[1], (d,) * (n + 1), d)

    total: dict[int, object] = {r: None for r in labels(n + 1)}

    def accumulate(part: Mapping[int, object], sign: int):
        for r, v in part.items():
            v = ops.scale(v, sign)
            total[r] = v if total[r] is None else ops.add(total[r], v)

    # pi o_i f: pi is outer and constant, f is inner and batched
    for i in (1, 2):
        if i == 1:
            comp = lambda outer, inner: ops.right(inner, outer)  # noqa: E731
        else:
            comp = lambda outer, inner: ops.left(inner, outer)  # noqa: E731
        part = compose_labeled(2, n, i, pi, comps, comp, ops.add, zero)
        accumulate(part, signs.ns_bracket(i, 2, n))
    # f o_i pi: f outer and batched, pi inner and constant
    swap = signs.ns_bracket_swap(2, n)
    for i in range(1, n + 1):
        comp = lambda outer, inner, i=i: ops.insert(outer, i - 1, inner)  # noqa: E731
        part = compose_labeled(n, 2, i, comps, pi, comp, ops.add, zero, g_add=np.add)
        accumulate(part, -swap * signs.ns_bracket(i, n, 2))
    sign = signs.ns_differential(n)
    return {r: ops.scale(v, sign) for r, v in total.items()}


def theta(ops, t, n: int, mu, d: int) -> dict[int, object]:
    """Components of Theta_n(f), labels 1..n+2."""
    comps: dict[int, object] = {}
    comps[1] = ops.scale(ops.left(t, mu), signs.theta_first(n))
    for r in range(2, n + 1):
        comps[r] = ops.zero_like(t, (d,) * (n + 1), d)
    comps[n + 1] = ops.right(t, mu)
    acc = ops.zero_like(t, (d,) * (n + 1), d)
    for i in range(1, n + 1):
        acc = ops.add(acc, ops.scale(ops.insert(t, i - 1, mu), signs.theta_inner(n, i)))
    comps[n + 2] = acc
    return comps
