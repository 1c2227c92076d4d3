"""Exact symmetric-function kernel.

Partitions, Schur-basis vectors with Littlewood-Richardson products, sparse
symmetric polynomials in the monomial basis, and the alternant integration
functional used as an independent check on Schur-basis arithmetic.
"""

from __future__ import annotations

import itertools
from collections import Counter, defaultdict
from functools import lru_cache
from math import factorial
from typing import Iterable, Iterator, Mapping


class Partition(tuple):
    """Weakly decreasing tuple of positive integers."""

    def __new__(cls, parts: Iterable[int] = ()):
        parts = [int(p) for p in parts]
        while parts and parts[-1] == 0:
            parts.pop()
        for i, p in enumerate(parts):
            if p < 1:
                raise ValueError(f"partition entries must be positive: {parts}")
            if i and p > parts[i - 1]:
                raise ValueError(f"partition is not weakly decreasing: {parts}")
        return super().__new__(cls, parts)

    def __repr__(self) -> str:
        return f"Partition{tuple(self)!r}" if len(self) != 1 else f"Partition(({self[0]},))"

    @property
    def weight(self) -> int:
        return sum(self)

    def fits(self, rows: int, cols: int) -> bool:
        return len(self) <= rows and (not self or self[0] <= cols)

    def complement(self, rows: int, cols: int) -> "Partition":
        """Complement inside the ``rows`` x ``cols`` rectangle."""
        if not self.fits(rows, cols):
            raise ValueError(f"{self} does not fit a {rows}x{cols} rectangle")
        padded = list(self) + [0] * (rows - len(self))
        return Partition(cols - p for p in reversed(padded))

    def conjugate(self) -> "Partition":
        if not self:
            return self
        return Partition(sum(1 for p in self if p > j) for j in range(self[0]))


def make_partition(parts: Iterable[int]) -> Partition:
    return Partition(parts)


def partitions_in_box(weight: int, rows: int, cols: int) -> Iterator[Partition]:
    """All partitions of ``weight`` with at most ``rows`` parts, each <= ``cols``."""

    def rec(remaining, max_part, slots):
        if remaining == 0:
            yield ()
            return
        if slots == 0:
            return
        for p in range(min(remaining, max_part), 0, -1):
            if p * slots < remaining:
                break
            for rest in rec(remaining - p, p, slots - 1):
                yield (p,) + rest

    if weight < 0:
        return
    for parts in rec(weight, cols, rows):
        yield Partition(parts)


# ---------------------------------------------------------------------------
# Schur basis


class SchurVector:
    """Finitely supported integer combination of Schur functions."""

    __slots__ = ("_terms", "_hash")

    def __init__(self, terms: Mapping | Iterable = ()):
        items = terms.items() if isinstance(terms, Mapping) else terms
        acc: dict[Partition, int] = defaultdict(int)
        for lam, c in items:
            if not isinstance(lam, Partition):
                lam = Partition(lam)
            acc[lam] += int(c)
        self._terms = {lam: c for lam, c in acc.items() if c != 0}
        self._hash = None

    @classmethod
    def _raw(cls, terms: dict) -> "SchurVector":
        obj = cls.__new__(cls)
        obj._terms = {k: v for k, v in terms.items() if v != 0}
        obj._hash = None
        return obj

    @classmethod
    def unit(cls) -> "SchurVector":
        return cls._raw({Partition(): 1})

    @classmethod
    def basis(cls, parts: Iterable[int], coeff: int = 1) -> "SchurVector":
        return cls._raw({Partition(parts): int(coeff)})

    @property
    def terms(self) -> dict[Partition, int]:
        return dict(self._terms)

    def items(self):
        return self._terms.items()

    def __iter__(self):
        return iter(self._terms)

    def __len__(self) -> int:
        return len(self._terms)

    def __bool__(self) -> bool:
        return bool(self._terms)

    def __getitem__(self, lam) -> int:
        if not isinstance(lam, Partition):
            lam = Partition(lam)
        return self._terms.get(lam, 0)

    def coefficient(self, lam) -> int:
        return self[lam]

    def degrees(self) -> set[int]:
        return {lam.weight for lam in self._terms}

    @property
    def degree(self) -> int | None:
        """Common weight of all terms, or None when empty or mixed."""
        degs = self.degrees()
        return degs.pop() if len(degs) == 1 else None

    def is_homogeneous(self) -> bool:
        return len(self.degrees()) <= 1

    def truncate(self, rows: int, cols: int) -> "SchurVector":
        return SchurVector._raw({lam: c for lam, c in self._terms.items() if lam.fits(rows, cols)})

    def homogeneous_part(self, k: int) -> "SchurVector":
        return SchurVector._raw({lam: c for lam, c in self._terms.items() if lam.weight == k})

    def __add__(self, other: "SchurVector") -> "SchurVector":
        if not isinstance(other, SchurVector):
            return NotImplemented
        out = dict(self._terms)
        for lam, c in other._terms.items():
            out[lam] = out.get(lam, 0) + c
        return SchurVector._raw(out)

    def __neg__(self) -> "SchurVector":
        return SchurVector._raw({lam: -c for lam, c in self._terms.items()})

    def __sub__(self, other: "SchurVector") -> "SchurVector":
        return self + (-other)

    def __rmul__(self, scalar: int) -> "SchurVector":
        if not isinstance(scalar, int):
            return NotImplemented
        return SchurVector._raw({lam: scalar * c for lam, c in self._terms.items()})

    def __mul__(self, other):
        if isinstance(other, int):
            return other * self
        if isinstance(other, SchurVector):
            return lr_mul(self, other)
        return NotImplemented

    def __eq__(self, other) -> bool:
        if isinstance(other, int):
            other = other * SchurVector.unit()
        if not isinstance(other, SchurVector):
            return NotImplemented
        return self._terms == other._terms

    def __hash__(self) -> int:
        if self._hash is None:
            self._hash = hash(frozenset(self._terms.items()))
        return self._hash

    def __repr__(self) -> str:
        if not self._terms:
            return "0"
        parts = []
        for lam in sorted(self._terms, key=lambda p: (-p.weight, [-x for x in p])):
            c = self._terms[lam]
            label = "s(" + ",".join(map(str, lam)) + ")"
            sign = "-" if c < 0 else "+"
            body = label if abs(c) == 1 else f"{abs(c)}*{label}"
            parts.append(f"{sign} {body}")
        text = " ".join(parts)
        return text[2:] if text.startswith("+ ") else "-" + text[2:]


def _lr_strips(shape, size, prev_counts, label_index, rows, cols):
    """Ways to add a horizontal strip of ``size`` boxes to ``shape``.

    ``prev_counts[r]`` is the number of boxes carrying the previous label in
    row r; the lattice condition requires the running count of the new label
    through row r to stay within the running count of the previous label
    through row r-1. Returns (new_shape, counts_per_row) pairs.
    """
    nrows = len(shape)
    limit_rows = nrows + 1 if rows is None else min(nrows + 1, rows)
    padded = list(shape) + [0]

    out = []

    def rec(r, remaining, cum_new, cum_prev, acc):
        if remaining == 0:
            new_shape = [padded[i] + (acc[i] if i < len(acc) else 0) for i in range(len(padded))]
            while new_shape and new_shape[-1] == 0:
                new_shape.pop()
            counts = list(acc) + [0] * (len(new_shape) - len(acc))
            out.append((tuple(new_shape), tuple(counts[: len(new_shape)])))
            return
        if r >= limit_rows:
            return
        room = remaining
        if r > 0:
            room = min(room, padded[r - 1] - padded[r])
        if cols is not None:
            room = min(room, cols - padded[r])
        if label_index > 0:
            room = min(room, cum_prev - cum_new)
        next_prev = cum_prev + (prev_counts[r] if r < len(prev_counts) else 0)
        for t in range(max(room, 0), -1, -1):
            rec(r + 1, remaining - t, cum_new + t, next_prev, acc + [t])

    rec(0, size, 0, 0, [])
    return out


@lru_cache(maxsize=1 << 18)
def _lr_pair(lam: Partition, mu: Partition, rows, cols) -> tuple:
    """Littlewood-Richardson expansion of s_lam * s_mu, optionally truncated."""
    states: Counter = Counter({(tuple(lam), ()): 1})
    for idx, size in enumerate(mu):
        nxt: Counter = Counter()
        for (shape, prev), mult in states.items():
            for new_shape, counts in _lr_strips(shape, size, prev, idx, rows, cols):
                nxt[(new_shape, counts)] += mult
        states = nxt
        if not states:
            break
    result: Counter = Counter()
    for (shape, _), mult in states.items():
        result[Partition(shape)] += mult
    return tuple(result.items())


def lr_coefficients(lam, mu, rectangle=None) -> dict[Partition, int]:
    lam, mu = Partition(lam), Partition(mu)
    rows, cols = rectangle if rectangle is not None else (None, None)
    if rectangle is not None and not (lam.fits(rows, cols) and mu.fits(rows, cols)):
        return {}
    # fewer strips to add when mu is the smaller shape
    if (len(mu), mu.weight) > (len(lam), lam.weight):
        lam, mu = mu, lam
    return dict(_lr_pair(lam, mu, rows, cols))


def lr_mul(x: SchurVector, y: SchurVector, rectangle: tuple[int, int] | None = None) -> SchurVector:
    """Schur-basis product; with ``rectangle=(rows, cols)`` drop shapes outside it."""
    if rectangle is not None:
        rows, cols = rectangle
        x = x.truncate(rows, cols)
        y = y.truncate(rows, cols)
    out: dict[Partition, int] = defaultdict(int)
    for lam, a in x.items():
        for mu, b in y.items():
            ab = a * b
            for nu, c in lr_coefficients(lam, mu, rectangle).items():
                out[nu] += ab * c
    return SchurVector._raw(out)


# ---------------------------------------------------------------------------
# Monomial basis


def _multiset_permutation_count(exps: tuple) -> int:
    total = factorial(len(exps))
    for mult in Counter(exps).values():
        total //= factorial(mult)
    return total


class MonomialSymPoly:
    """Sparse symmetric polynomial in ``nvars`` variables with integer coefficients."""

    __slots__ = ("nvars", "_terms")

    def __init__(self, nvars: int, terms: Mapping | Iterable = (), check: bool = True):
        if nvars < 1:
            raise ValueError("need at least one variable")
        self.nvars = int(nvars)
        items = terms.items() if isinstance(terms, Mapping) else terms
        acc: dict[tuple, int] = defaultdict(int)
        for exps, c in items:
            exps = tuple(int(e) for e in exps)
            if len(exps) != self.nvars or min(exps, default=0) < 0:
                raise ValueError(f"bad exponent vector {exps} for {nvars} variables")
            acc[exps] += int(c)
        self._terms = {k: v for k, v in acc.items() if v != 0}
        if check and not self.is_symmetric():
            raise ValueError("polynomial is not symmetric")

    @classmethod
    def _raw(cls, nvars: int, terms: dict) -> "MonomialSymPoly":
        obj = cls.__new__(cls)
        obj.nvars = nvars
        obj._terms = {k: v for k, v in terms.items() if v != 0}
        return obj

    @classmethod
    def constant(cls, nvars: int, c: int = 1) -> "MonomialSymPoly":
        return cls._raw(nvars, {(0,) * nvars: c})

    @property
    def terms(self) -> dict[tuple, int]:
        return dict(self._terms)

    def items(self):
        return self._terms.items()

    def __len__(self) -> int:
        return len(self._terms)

    def __bool__(self) -> bool:
        return bool(self._terms)

    def __getitem__(self, exps) -> int:
        return self._terms.get(tuple(exps), 0)

    def is_symmetric(self) -> bool:
        groups: dict[tuple, list] = defaultdict(list)
        for exps, c in self._terms.items():
            groups[tuple(sorted(exps, reverse=True))].append(c)
        for key, coeffs in groups.items():
            if len(coeffs) != _multiset_permutation_count(key):
                return False
            if any(c != coeffs[0] for c in coeffs):
                return False
        return True

    def degrees(self) -> set[int]:
        return {sum(e) for e in self._terms}

    def homogeneous_part(self, k: int) -> "MonomialSymPoly":
        return MonomialSymPoly._raw(self.nvars, {e: c for e, c in self._terms.items() if sum(e) == k})

    def permuted(self, perm: Iterable[int]) -> "MonomialSymPoly":
        perm = tuple(perm)
        return MonomialSymPoly._raw(
            self.nvars, {tuple(e[perm[i]] for i in range(self.nvars)): c for e, c in self._terms.items()}
        )

    def _same_ring(self, other: "MonomialSymPoly") -> None:
        if other.nvars != self.nvars:
            raise ValueError("variable counts differ")

    def __add__(self, other: "MonomialSymPoly") -> "MonomialSymPoly":
        if not isinstance(other, MonomialSymPoly):
            return NotImplemented
        self._same_ring(other)
        out = dict(self._terms)
        for e, c in other._terms.items():
            out[e] = out.get(e, 0) + c
        return MonomialSymPoly._raw(self.nvars, out)

    def __neg__(self) -> "MonomialSymPoly":
        return MonomialSymPoly._raw(self.nvars, {e: -c for e, c in self._terms.items()})

    def __sub__(self, other: "MonomialSymPoly") -> "MonomialSymPoly":
        return self + (-other)

    def __rmul__(self, scalar: int) -> "MonomialSymPoly":
        if not isinstance(scalar, int):
            return NotImplemented
        return MonomialSymPoly._raw(self.nvars, {e: scalar * c for e, c in self._terms.items()})

    def __mul__(self, other):
        if isinstance(other, int):
            return other * self
        if not isinstance(other, MonomialSymPoly):
            return NotImplemented
        self._same_ring(other)
        out: dict[tuple, int] = defaultdict(int)
        for e1, c1 in self._terms.items():
            for e2, c2 in other._terms.items():
                out[tuple(a + b for a, b in zip(e1, e2))] += c1 * c2
        return MonomialSymPoly._raw(self.nvars, out)

    def __pow__(self, k: int) -> "MonomialSymPoly":
        result = MonomialSymPoly.constant(self.nvars)
        for _ in range(k):
            result = result * self
        return result

    def __eq__(self, other) -> bool:
        if not isinstance(other, MonomialSymPoly):
            return NotImplemented
        return self.nvars == other.nvars and self._terms == other._terms

    def __hash__(self) -> int:
        return hash((self.nvars, frozenset(self._terms.items())))

    def __repr__(self) -> str:
        return f"MonomialSymPoly({self.nvars}, {self._terms!r})"


def generator(kind: str, j: int, nvars: int) -> MonomialSymPoly:
    """Elementary ``e_j`` or complete homogeneous ``h_j`` in ``nvars`` variables."""
    if j < 0:
        raise ValueError(f"negative index {j}")
    if kind == "elementary":
        terms = {}
        for support in itertools.combinations(range(nvars), j):
            exps = [0] * nvars
            for i in support:
                exps[i] = 1
            terms[tuple(exps)] = 1
        return MonomialSymPoly._raw(nvars, terms)
    if kind == "complete":
        terms = {}
        for combo in itertools.combinations_with_replacement(range(nvars), j):
            exps = [0] * nvars
            for i in combo:
                exps[i] += 1
            terms[tuple(exps)] = 1
        return MonomialSymPoly._raw(nvars, terms)
    raise ValueError(f"unknown generator kind {kind!r}")


@lru_cache(maxsize=4096)
def _schur_poly_terms(lam: Partition, nvars: int) -> tuple:
    # branching rule: strip a horizontal strip for the last variable
    if not lam:
        return (((0,) * nvars, 1),)
    if nvars == 0 or len(lam) > nvars:
        return ()
    if nvars == 1:
        return (((lam[0],), 1),)
    out: dict[tuple, int] = defaultdict(int)
    for inner in _horizontal_strip_removals(lam):
        k = lam.weight - inner.weight
        for exps, c in _schur_poly_terms(inner, nvars - 1):
            out[exps + (k,)] += c
    return tuple(out.items())


def _horizontal_strip_removals(lam: Partition) -> Iterator[Partition]:
    """All mu with lam/mu a horizontal strip."""
    lam = list(lam)
    n = len(lam)

    def rec(i, acc):
        if i == n:
            yield Partition(acc)
            return
        lo = lam[i + 1] if i + 1 < n else 0
        for v in range(lam[i], lo - 1, -1):
            yield from rec(i + 1, acc + [v])

    yield from rec(0, [])


def schur_to_poly(lam, nvars: int) -> MonomialSymPoly:
    """The Schur polynomial s_lam in ``nvars`` variables (tableau generating function)."""
    lam = Partition(lam)
    if len(lam) > nvars:
        raise ValueError(f"{lam} has more than {nvars} rows")
    return MonomialSymPoly._raw(nvars, dict(_schur_poly_terms(lam, nvars)))


def _signed_staircase_perms(nvars: int) -> tuple:
    """(sign, sigma(delta)) for every permutation of delta = (v-1, ..., 0)."""
    delta = tuple(range(nvars - 1, -1, -1))
    out = []
    for perm in itertools.permutations(range(nvars)):
        inversions = sum(1 for i in range(nvars) for j in range(i + 1, nvars) if perm[i] > perm[j])
        out.append((-1 if inversions % 2 else 1, tuple(delta[p] for p in perm)))
    return tuple(out)


_SIGNED_CACHE: dict[int, tuple] = {}


def signed_staircase_perms(nvars: int) -> tuple:
    if nvars not in _SIGNED_CACHE:
        _SIGNED_CACHE[nvars] = _signed_staircase_perms(nvars)
    return _SIGNED_CACHE[nvars]


def alternant_coefficient(lookup, target: tuple, nvars: int) -> int:
    """Coefficient of x^target in (poly * Vandermonde).

    ``lookup(exps)`` returns the polynomial's coefficient at an exponent
    vector (components may be negative, which must read as zero).
    """
    total = 0
    for sign, shifted in signed_staircase_perms(nvars):
        exps = tuple(t - s for t, s in zip(target, shifted))
        if min(exps) < 0:
            continue
        c = lookup(exps)
        if c:
            total += sign * c
    return total


def schur_expand(p: MonomialSymPoly, rectangle: tuple[int, int] | None = None) -> SchurVector:
    """Schur-basis expansion of a symmetric polynomial.

    With ``rectangle`` only partitions fitting it are computed; that result is
    exact for those partitions even when p was truncated to exponents at most
    rows - 1 + cols in each variable.
    """
    if not p.is_symmetric():
        raise ValueError("polynomial is not symmetric")
    v = p.nvars
    delta = tuple(range(v - 1, -1, -1))
    terms = p._terms
    lookup = lambda e: terms.get(e, 0)  # noqa: E731
    rows, cols = rectangle if rectangle is not None else (v, None)
    rows = min(rows, v)
    out = {}
    for deg in p.degrees():
        max_part = max((max(e) for e in terms if sum(e) == deg), default=0)
        col_bound = max_part if cols is None else cols
        for lam in partitions_in_box(deg, rows, col_bound):
            padded = tuple(lam) + (0,) * (v - len(lam))
            target = tuple(a + b for a, b in zip(padded, delta))
            c = alternant_coefficient(lookup, target, v)
            if c:
                out[lam] = c
    return SchurVector._raw(out)


def alternant_integrate(p: MonomialSymPoly, kappa: int, n: int) -> int:
    """Integral over the Grassmannian of kappa-planes in P^n of a top-degree symmetric polynomial.

    Multiplies by the Vandermonde determinant and reads the coefficient of
    x_0^n x_1^(n-1) ... x_kappa^(n-kappa).
    """
    v = kappa + 1
    if p.nvars != v:
        raise ValueError(f"expected {v} variables, got {p.nvars}")
    top = v * (n - kappa)
    degs = p.degrees()
    if degs and degs != {top}:
        raise ValueError(f"integrand must be homogeneous of degree {top}, got degrees {sorted(degs)}")
    if not p.is_symmetric():
        raise ValueError("integrand is not symmetric")
    target = tuple(range(n, n - kappa - 1, -1))
    terms = p._terms
    return alternant_coefficient(lambda e: terms.get(e, 0), target, v)
