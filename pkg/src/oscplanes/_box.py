"""Dense polynomial arithmetic on the exponent box [0, cap]^v.

Coefficient arrays are numpy object arrays holding Python ints, so all
arithmetic stays exact. Multiplying in Z[x_0..x_{v-1}] / (x_i^(cap+1)) is
plain truncation, which is harmless whenever only coefficients with every
exponent <= cap are read afterwards.
"""

from __future__ import annotations

from functools import lru_cache

import numpy as np

from .symcore import MonomialSymPoly


def zeros(nvars: int, cap: int) -> np.ndarray:
    arr = np.empty((cap + 1,) * nvars, dtype=object)
    arr.fill(0)
    return arr


def one(nvars: int, cap: int) -> np.ndarray:
    arr = zeros(nvars, cap)
    arr[(0,) * nvars] = 1
    return arr


@lru_cache(maxsize=32)
def degree_grid(nvars: int, cap: int) -> np.ndarray:
    grids = np.indices((cap + 1,) * nvars)
    return grids.sum(axis=0)


def _shifted(arr: np.ndarray, axis: int, by: int = 1) -> np.ndarray:
    """arr * x_axis^by, truncated."""
    out = np.empty_like(arr)
    out.fill(0)
    if by > arr.shape[axis] - 1:
        return out
    dst = [slice(None)] * arr.ndim
    src = [slice(None)] * arr.ndim
    dst[axis] = slice(by, None)
    src[axis] = slice(None, arr.shape[axis] - by)
    out[tuple(dst)] = arr[tuple(src)]
    return out


def _add_shifted(acc: np.ndarray, arr: np.ndarray, shift: tuple, coeff: int) -> None:
    """acc += coeff * x^shift * arr, in place."""
    n = arr.shape[0]
    if any(s > n - 1 for s in shift):
        return
    dst = tuple(slice(s, None) for s in shift)
    src = tuple(slice(None, n - s) for s in shift)
    if coeff == 1:
        acc[dst] += arr[src]
    else:
        acc[dst] += coeff * arr[src]


def times_linear(arr: np.ndarray, coeffs: tuple) -> np.ndarray:
    """arr * (1 + sum_i coeffs[i] x_i)."""
    out = arr.copy()
    for axis, a in enumerate(coeffs):
        if a:
            shift = tuple(1 if i == axis else 0 for i in range(arr.ndim))
            _add_shifted(out, arr, shift, a)
    return out


def times_e1(arr: np.ndarray) -> np.ndarray:
    out = zeros(arr.ndim, arr.shape[0] - 1)
    for axis in range(arr.ndim):
        shift = tuple(1 if i == axis else 0 for i in range(arr.ndim))
        _add_shifted(out, arr, shift, 1)
    return out


def times_all_complete(arr: np.ndarray) -> np.ndarray:
    """arr * sum_j h_j, i.e. multiplication by prod_i 1/(1 - x_i)."""
    out = arr
    for axis in range(arr.ndim):
        out = np.cumsum(out, axis=axis, dtype=object)
    return out


def times_all_elementary(arr: np.ndarray) -> np.ndarray:
    """arr * sum_j e_j, i.e. multiplication by prod_i (1 + x_i)."""
    out = arr
    for axis in range(arr.ndim):
        out = out + _shifted(out, axis)
    return out


def times_sparse(arr: np.ndarray, poly: MonomialSymPoly) -> np.ndarray:
    out = zeros(arr.ndim, arr.shape[0] - 1)
    for exps, c in poly.items():
        _add_shifted(out, arr, exps, c)
    return out


def degree_part(arr: np.ndarray, k: int) -> np.ndarray:
    grid = degree_grid(arr.ndim, arr.shape[0] - 1)
    out = np.empty_like(arr)
    out.fill(0)
    mask = grid == k
    out[mask] = arr[mask]
    return out


def to_poly(arr: np.ndarray) -> MonomialSymPoly:
    idx = np.argwhere(arr != 0)
    terms = {tuple(int(i) for i in e): int(arr[tuple(e)]) for e in idx}
    return MonomialSymPoly._raw(arr.ndim, terms)


def from_poly(poly: MonomialSymPoly, cap: int) -> np.ndarray:
    arr = zeros(poly.nvars, cap)
    for exps, c in poly.items():
        if max(exps, default=0) <= cap:
            arr[exps] = c
    return arr


def lookup(arr: np.ndarray):
    cap = arr.shape[0] - 1

    def get(exps):
        if max(exps) > cap:
            return 0
        return arr[exps]

    return get
