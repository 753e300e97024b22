"""Exact rational scalars and object-dtype tensors built from them."""

from __future__ import annotations

import math
import numbers
from fractions import Fraction
from typing import Any, Iterable

import numpy as np

__all__ = [
    "to_scalar",
    "tensor",
    "zeros",
    "identity",
    "format_scalar",
    "parse_scalar",
    "int64_view",
    "is_zero_tensor",
]

# int64 fast paths stay below this bound so that products of two entries
# and modest sums of them cannot wrap around.
INT_BOUND = 1 << 30


def to_scalar(x: Any) -> Fraction:
    """Coerce an int, Fraction or "p/q" string to a Fraction. Floats are refused."""
    if isinstance(x, Fraction):
        return x
    if isinstance(x, bool):
        raise TypeError("booleans are not scalars")
    if isinstance(x, numbers.Integral):
        return Fraction(int(x))
    if isinstance(x, str):
        return parse_scalar(x)
    if isinstance(x, numbers.Rational):
        return Fraction(int(x.numerator), int(x.denominator))
    raise TypeError(f"not an exact scalar: {x!r}")


def parse_scalar(text: str) -> Fraction:
    s = text.strip()
    if not s:
        raise ValueError("empty scalar")
    num, sep, den = s.partition("/")
    try:
        p = int(num)
        q = int(den) if sep else 1
    except ValueError:
        raise ValueError(f"malformed scalar {text!r}") from None
    if q == 0:
        raise ValueError(f"zero denominator in {text!r}")
    return Fraction(p, q)


def format_scalar(x: Any) -> int | str:
    """Shortest emission form: an int when integral, else "p/q"."""
    q = to_scalar(x)
    if q.denominator == 1:
        return q.numerator
    return f"{q.numerator}/{q.denominator}"


def tensor(data: Any, shape: tuple[int, ...] | None = None) -> np.ndarray:
    """Object array of Fractions from nested lists or another array."""
    arr = np.array(data, dtype=object)
    if shape is not None and arr.shape != tuple(shape):
        if arr.size == 0 and int(np.prod(shape)) == 0:
            arr = np.empty(shape, dtype=object)
        else:
            raise ValueError(f"expected shape {tuple(shape)}, got {arr.shape}")
    out = np.empty(arr.shape, dtype=object)
    flat_in = arr.reshape(-1)
    flat_out = out.reshape(-1)
    for k in range(flat_in.size):
        flat_out[k] = to_scalar(flat_in[k])
    return out


def zeros(shape: Iterable[int]) -> np.ndarray:
    shape = tuple(shape)
    out = np.empty(shape, dtype=object)
    out.reshape(-1)[:] = [Fraction(0)] * out.size
    return out


def identity(n: int) -> np.ndarray:
    out = zeros((n, n))
    for i in range(n):
        out[i, i] = Fraction(1)
    return out


def int64_view(arr: np.ndarray) -> np.ndarray | None:
    """Return an int64 copy when every entry is an integer of small size."""
    flat = arr.reshape(-1)
    vals = []
    for x in flat:
        q = to_scalar(x)
        if q.denominator != 1 or abs(q.numerator) >= INT_BOUND:
            return None
        vals.append(q.numerator)
    return np.array(vals, dtype=np.int64).reshape(arr.shape)


def is_zero_tensor(arr: np.ndarray) -> bool:
    return all(x == 0 for x in arr.reshape(-1))


def normalize(arr: np.ndarray) -> np.ndarray:
    """Turn every entry of an object array back into a Fraction."""
    out = np.empty(arr.shape, dtype=object)
    flat_in = arr.reshape(-1)
    flat_out = out.reshape(-1)
    for k in range(flat_in.size):
        v = flat_in[k]
        flat_out[k] = v if isinstance(v, Fraction) else Fraction(int(v)) if isinstance(v, (int, np.integer)) else to_scalar(v)
    return out


def _integer_form(arr: np.ndarray) -> tuple[np.ndarray, int, int]:
    """(integer object array, common denominator, max |numerator|)."""
    flat = [to_scalar(x) for x in arr.reshape(-1)]
    den = math.lcm(1, *(q.denominator for q in flat))
    ints = [q.numerator * (den // q.denominator) for q in flat]
    out = np.empty(arr.shape, dtype=object)
    out.reshape(-1)[:] = ints
    return out, den, max((abs(x) for x in ints), default=0)


def tensordot_exact(a: np.ndarray, b: np.ndarray, axes) -> np.ndarray:
    """np.tensordot over Fractions, contracted on integers after clearing denominators."""
    ia, da, ma = _integer_form(a)
    ib, db, mb = _integer_form(b)
    summands = max(1, int(np.prod([a.shape[k] for k in np.atleast_1d(axes[0])], dtype=np.int64)))
    if ma * mb * summands < 2**62:
        res = np.tensordot(ia.astype(np.int64), ib.astype(np.int64), axes=axes).astype(object)
    else:
        res = np.tensordot(ia, ib, axes=axes)
    den = da * db
    out = np.empty(res.shape, dtype=object)
    out.reshape(-1)[:] = [Fraction(int(x), den) for x in res.reshape(-1)]
    return out
