"""Chow ring of P^n x P^n: Q[A, B] / (A^(n+1), B^(n+1)) with A = H x 1, B = 1 x H."""

from __future__ import annotations

from collections import defaultdict
from fractions import Fraction
from typing import Mapping


class PPClass:
    __slots__ = ("n", "_terms")

    def __init__(self, n: int, terms: Mapping[tuple[int, int], object] = ()):
        if n < 1:
            raise ValueError(f"need n >= 1, got {n}")
        self.n = n
        acc: dict[tuple[int, int], Fraction] = defaultdict(Fraction)
        for (i, j), c in dict(terms).items():
            if not (0 <= i <= n and 0 <= j <= n):
                raise ValueError(f"exponent ({i}, {j}) outside [0, {n}]")
            acc[(i, j)] += Fraction(c)
        self._terms = {k: v for k, v in acc.items() if v != 0}

    @classmethod
    def one(cls, n: int) -> "PPClass":
        return cls(n, {(0, 0): 1})

    @classmethod
    def monomial(cls, n: int, i: int, j: int, c=1) -> "PPClass":
        return cls(n, {(i, j): c})

    @property
    def terms(self) -> dict[tuple[int, int], Fraction]:
        return dict(self._terms)

    def items(self):
        return self._terms.items()

    def __getitem__(self, key: tuple[int, int]) -> Fraction:
        return self._terms.get(tuple(key), Fraction(0))

    def coefficient(self, i: int, j: int) -> Fraction:
        return self[(i, j)]

    def __bool__(self) -> bool:
        return bool(self._terms)

    def _check(self, other: "PPClass") -> None:
        if self.n != other.n:
            raise ValueError(f"dimension mismatch: {self.n} vs {other.n}")

    def __add__(self, other: "PPClass") -> "PPClass":
        self._check(other)
        out = dict(self._terms)
        for k, c in other._terms.items():
            out[k] = out.get(k, 0) + c
        return PPClass(self.n, out)

    def __neg__(self) -> "PPClass":
        return PPClass(self.n, {k: -c for k, c in self._terms.items()})

    def __sub__(self, other: "PPClass") -> "PPClass":
        return self + (-other)

    def scale(self, c) -> "PPClass":
        c = Fraction(c)
        return PPClass(self.n, {k: c * v for k, v in self._terms.items()})

    def __mul__(self, other):
        if isinstance(other, PPClass):
            return pp_mul(self, other)
        if isinstance(other, (int, Fraction)):
            return self.scale(other)
        return NotImplemented

    __rmul__ = __mul__

    def swap(self) -> "PPClass":
        return PPClass(self.n, {(j, i): c for (i, j), c in self._terms.items()})

    def is_integral(self) -> bool:
        return all(c.denominator == 1 for c in self._terms.values())

    def __eq__(self, other) -> bool:
        if not isinstance(other, PPClass):
            return NotImplemented
        return self.n == other.n and self._terms == other._terms

    def __hash__(self) -> int:
        return hash((self.n, frozenset(self._terms.items())))

    def __repr__(self) -> str:
        if not self._terms:
            return f"PPClass(n={self.n}, 0)"
        body = " + ".join(f"{c}*A^{i}B^{j}" for (i, j), c in sorted(self._terms.items()))
        return f"PPClass(n={self.n}, {body})"


def pp_mul(x: PPClass, y: PPClass) -> PPClass:
    x._check(y)
    n = x.n
    out: dict[tuple[int, int], Fraction] = defaultdict(Fraction)
    for (i1, j1), c1 in x.items():
        for (i2, j2), c2 in y.items():
            i, j = i1 + i2, j1 + j2
            if i <= n and j <= n:
                out[(i, j)] += c1 * c2
    return PPClass(n, out)


def geom_series_inverse(d: int, n: int) -> PPClass:
    """Inverse of (1 + d A)(1 + d B) in the truncated ring."""
    if d < 1 or n < 1:
        raise ValueError(f"need d >= 1 and n >= 1, got d={d}, n={n}")
    first = PPClass(n, {(i, 0): (-d) ** i for i in range(n + 1)})
    second = PPClass(n, {(0, j): (-d) ** j for j in range(n + 1)})
    return pp_mul(first, second)


def homogeneous_part(x: PPClass, k: int) -> PPClass:
    return PPClass(x.n, {(i, j): c for (i, j), c in x.items() if i + j == k})
