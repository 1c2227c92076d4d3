"""Chow ring of the Grassmannian of kappa-planes in P^n.

Classes live in the Schur basis, truncated to the (kappa+1) x (n-kappa)
rectangle. With V the tautological subbundle and x_0..x_kappa the Chern roots
of V^dual: c_j(QV) = h_j, c_j(V^dual) = e_j, and the Chern roots of
Sym^d(V^dual) are the sums over size-d multisets of the x_i.

Every class also records how it was built (a sum of products of generator
factors). The oracle integration mode replays that recipe in the monomial
basis and integrates with the Vandermonde alternant, so it never touches the
Littlewood-Richardson code.
"""

from __future__ import annotations

import itertools
import threading
from collections import Counter
from dataclasses import dataclass
from functools import cached_property, lru_cache
from math import comb
from typing import Iterable, Sequence

import numpy as np

from . import _box
from .symcore import (
    MonomialSymPoly,
    Partition,
    SchurVector,
    alternant_coefficient,
    lr_mul,
    partitions_in_box,
    schur_expand,
    schur_to_poly,
)

MODES = ("schur", "oracle", "both")


class DegreeError(ValueError):
    """Integrand is not of pure top degree."""


class OracleMismatch(AssertionError):
    """Schur-basis and alternant integration disagree."""


_comparisons = [0]


def oracle_comparisons() -> int:
    """Number of both-mode integrals checked so far in this process."""
    return _comparisons[0]


def _compare(schur: int, oracle: int, what: str) -> None:
    _comparisons[0] += 1
    if schur != oracle:
        raise OracleMismatch(f"schur={schur} oracle={oracle} for {what}")


@dataclass(frozen=True)
class GrContext:
    n: int
    kappa: int

    def __post_init__(self):
        if not (1 <= self.kappa <= self.n - 1):
            raise ValueError(f"need 1 <= kappa <= n-1, got n={self.n}, kappa={self.kappa}")

    @property
    def rank_v(self) -> int:
        return self.kappa + 1

    @property
    def rank_qv(self) -> int:
        return self.n - self.kappa

    @property
    def dim_gr(self) -> int:
        return self.rank_v * self.rank_qv

    @property
    def rectangle(self) -> tuple[int, int]:
        return (self.rank_v, self.rank_qv)

    @cached_property
    def top_partition(self) -> Partition:
        return Partition([self.rank_qv] * self.rank_v)


# A factor is one of
#   ("e1", s)       c_1(V^dual)^s
#   ("h", j)        xi_j = c_j(QV)
#   ("e", j)        c_j(V^dual)
#   ("cqe", d, j)   c_j(Sym^d V^dual)
#   ("schur", lam)  Schur class
# Products are stored sorted so equal recipes share oracle cache entries.
_FACTOR_ORDER = {"e1": 0, "cqe": 1, "e": 2, "h": 3, "schur": 4}


def _factor_key(f):
    return (_FACTOR_ORDER[f[0]], f[1:])


def _factor_degree(f) -> int:
    kind = f[0]
    if kind == "cqe":
        return f[2]
    if kind == "schur":
        return sum(f[1])
    return f[1]


def _normalize(factors: Iterable) -> tuple:
    merged_e1 = 0
    rest = []
    for f in factors:
        if f[0] == "e1":
            merged_e1 += f[1]
        else:
            rest.append(f)
    if merged_e1:
        rest.append(("e1", merged_e1))
    return tuple(sorted(rest, key=_factor_key))


def _combine_shadow(terms: Iterable) -> tuple:
    acc: Counter = Counter()
    for coeff, factors in terms:
        acc[factors] += coeff
    return tuple((c, f) for f, c in sorted(acc.items(), key=lambda t: repr(t[0])) if c)


@dataclass(frozen=True, eq=False)
class GrClass:
    """A class in CH^*(Gr) with its formal degrees and its build recipe."""

    ctx: GrContext
    value: SchurVector
    degrees: frozenset
    shadow: tuple | None = None

    def __post_init__(self):
        rows, cols = self.ctx.rectangle
        for lam in self.value:
            if not lam.fits(rows, cols):
                raise ValueError(f"{lam} lies outside the {rows}x{cols} rectangle")

    @property
    def degree(self) -> int | None:
        return next(iter(self.degrees)) if len(self.degrees) == 1 else None

    def __add__(self, other: "GrClass") -> "GrClass":
        _check_ctx(self.ctx, [other])
        shadow = None
        if self.shadow is not None and other.shadow is not None:
            shadow = _combine_shadow(self.shadow + other.shadow)
        return GrClass(self.ctx, self.value + other.value, self.degrees | other.degrees, shadow)

    def __rmul__(self, scalar: int) -> "GrClass":
        if not isinstance(scalar, int):
            return NotImplemented
        shadow = None if self.shadow is None else _combine_shadow((scalar * c, f) for c, f in self.shadow)
        return GrClass(self.ctx, scalar * self.value, self.degrees, shadow)

    def __mul__(self, other):
        if isinstance(other, int):
            return other * self
        if isinstance(other, GrClass):
            return gr_mul(self.ctx, [self, other])
        return NotImplemented

    def __eq__(self, other) -> bool:
        if not isinstance(other, GrClass):
            return NotImplemented
        return self.ctx == other.ctx and self.value == other.value

    def __hash__(self) -> int:
        return hash((self.ctx, self.value))

    def __repr__(self) -> str:
        return f"GrClass(n={self.ctx.n}, kappa={self.ctx.kappa}, {self.value!r})"


def _check_ctx(ctx: GrContext, classes: Iterable[GrClass]) -> None:
    for c in classes:
        if c.ctx != ctx:
            raise ValueError(f"context mismatch: {c.ctx} vs {ctx}")


def _generator_class(ctx: GrContext, value: SchurVector, factor) -> GrClass:
    rows, cols = ctx.rectangle
    return GrClass(ctx, value.truncate(rows, cols), frozenset({_factor_degree(factor)}), ((1, (factor,)),))


def unit_class(ctx: GrContext) -> GrClass:
    return GrClass(ctx, SchurVector.unit(), frozenset({0}), ((1, ()),))


def scalar_class(ctx: GrContext, c: int) -> GrClass:
    return int(c) * unit_class(ctx)


def class_xi(ctx: GrContext, j: int) -> GrClass:
    """xi_j = c_j(QV), the one-row Schur class s_(j); zero outside [0, n-kappa]."""
    if j < 0:
        raise ValueError(f"negative index {j}")
    if j == 0:
        return unit_class(ctx)
    return _generator_class(ctx, SchurVector.basis([j]), ("h", j))


def class_e(ctx: GrContext, j: int) -> GrClass:
    """c_j(V^dual), the one-column Schur class s_(1^j)."""
    if j < 0:
        raise ValueError(f"negative index {j}")
    if j == 0:
        return unit_class(ctx)
    return _generator_class(ctx, SchurVector.basis([1] * j), ("e", j))


def class_schur(ctx: GrContext, parts: Iterable[int]) -> GrClass:
    lam = Partition(parts)
    if not lam:
        return unit_class(ctx)
    if len(lam) > ctx.rank_v:
        # s_lam vanishes in kappa+1 Chern roots
        return GrClass(ctx, SchurVector(), frozenset({lam.weight}), ())
    return _generator_class(ctx, SchurVector.basis(lam), ("schur", tuple(lam)))


def class_e1_pow(ctx: GrContext, s: int) -> GrClass:
    """c_1(V^dual)^s reduced to the rectangle."""
    if s < 0:
        raise ValueError(f"negative exponent {s}")
    if s == 0:
        return unit_class(ctx)
    return GrClass(ctx, _e1_power_value(ctx, s), frozenset({s}), ((1, (("e1", s),)),))


@lru_cache(maxsize=256)
def _e1_power_value(ctx: GrContext, s: int) -> SchurVector:
    if s == 0:
        return SchurVector.unit()
    return lr_mul(_e1_power_value(ctx, s - 1), SchurVector.basis([1]), ctx.rectangle)


@lru_cache(maxsize=64)
def sym_power_roots(nvars: int, d: int) -> tuple:
    """Chern roots of Sym^d as coefficient vectors over the original roots."""
    roots = []
    for combo in itertools.combinations_with_replacement(range(nvars), d):
        counts = [0] * nvars
        for i in combo:
            counts[i] += 1
        roots.append(tuple(counts))
    return tuple(roots)


def chern_total_box(nvars: int, d: int, cap: int) -> np.ndarray:
    """prod over roots r of Sym^d of (1 + r), truncated to the box [0, cap]^nvars."""
    arr = _box.one(nvars, cap)
    for root in sym_power_roots(nvars, d):
        arr = _box.times_linear(arr, root)
    return arr


@lru_cache(maxsize=64)
def _chern_sym_values(ctx: GrContext, d: int) -> tuple:
    v = ctx.rank_v
    total = chern_total_box(v, d, ctx.n)
    rank = comb(d + ctx.kappa, ctx.kappa)
    values = []
    for j in range(min(rank, ctx.dim_gr) + 1):
        part = _box.to_poly(_box.degree_part(total, j))
        values.append(schur_expand(part, ctx.rectangle))
    return tuple(values)


def chern_sym_power(ctx: GrContext, d: int, j: int) -> GrClass:
    """c_j(Sym^d V^dual)."""
    if d < 1:
        raise ValueError(f"need d >= 1, got {d}")
    if j < 0:
        raise ValueError(f"negative index {j}")
    if j == 0:
        return unit_class(ctx)
    values = _chern_sym_values(ctx, d)
    value = values[j] if j < len(values) else SchurVector()
    return GrClass(ctx, value, frozenset({j}), ((1, (("cqe", d, j),)),))


def gr_mul(ctx: GrContext, factors: Sequence[GrClass]) -> GrClass:
    """Product in the truncated Schur basis."""
    _check_ctx(ctx, factors)
    result = unit_class(ctx)
    for f in factors:
        value = lr_mul(result.value, f.value, ctx.rectangle)
        degrees = frozenset(a + b for a in result.degrees for b in f.degrees)
        shadow = None
        if result.shadow is not None and f.shadow is not None:
            shadow = _combine_shadow(
                (c1 * c2, _normalize(f1 + f2)) for c1, f1 in result.shadow for c2, f2 in f.shadow
            )
        result = GrClass(ctx, value, degrees, shadow)
    return result


def gr_pow(x: GrClass, k: int) -> GrClass:
    if k < 0:
        raise ValueError(f"negative exponent {k}")
    return gr_mul(x.ctx, [x] * k)


# ---------------------------------------------------------------------------
# integration


def _check_mode(mode: str) -> None:
    if mode not in MODES:
        raise ValueError(f"unknown integration mode {mode!r}; expected one of {MODES}")


def pair(ctx: GrContext, x: SchurVector, y: SchurVector) -> int:
    """Rectangle coefficient of x*y via Poincare duality: s_lam * s_mu integrates to 1 iff mu is lam's complement."""
    rows, cols = ctx.rectangle
    total = 0
    for lam, c in x.items():
        if lam.fits(rows, cols):
            d = y[lam.complement(rows, cols)]
            if d:
                total += c * d
    return total


def _schur_integrate(ctx: GrContext, x: GrClass) -> int:
    return x.value[ctx.top_partition]


def gr_integrate(ctx: GrContext, x: GrClass, mode: str = "schur") -> int:
    """Degree of the top-dimensional part of x.

    Classes of a single degree other than dim_gr integrate to 0; mixed
    degrees raise DegreeError.
    """
    _check_mode(mode)
    _check_ctx(ctx, [x])
    if len(x.degrees) > 1:
        raise DegreeError(f"mixed-degree class (degrees {sorted(x.degrees)}) cannot be integrated")
    if x.degree is not None and x.degree != ctx.dim_gr:
        return 0
    schur = oracle = None
    if mode in ("schur", "both"):
        schur = _schur_integrate(ctx, x)
    if mode in ("oracle", "both"):
        oracle = oracle_engine(ctx).integrate_class(x)
    if mode == "both":
        _compare(schur, oracle, repr(x))
    return schur if schur is not None else oracle


def integrate_product(ctx: GrContext, factors: Sequence[GrClass], mode: str = "schur") -> int:
    """Integral of a product of homogeneous classes whose degrees add up to dim_gr.

    The degree audit is strict: anything else is a DegreeError.
    """
    _check_mode(mode)
    _check_ctx(ctx, factors)
    total_degree = 0
    for f in factors:
        if f.degree is None:
            raise DegreeError(f"factor {f!r} is not homogeneous")
        total_degree += f.degree
    if total_degree != ctx.dim_gr:
        raise DegreeError(f"integrand has degree {total_degree}, expected {ctx.dim_gr}")
    schur = oracle = None
    if mode in ("schur", "both"):
        schur = _schur_integrate_product(ctx, factors)
    if mode in ("oracle", "both"):
        product_shadow = gr_mul_shadow(factors)
        oracle = oracle_engine(ctx).integrate_shadow(product_shadow)
    if mode == "both":
        _compare(schur, oracle, f"factors {factors!r}")
    return schur if schur is not None else oracle


def _schur_integrate_product(ctx: GrContext, factors: Sequence[GrClass]) -> int:
    if not factors:
        return 1 if ctx.dim_gr == 0 else 0
    if any(not f.value for f in factors):
        return 0
    # pair against the bulkiest factor instead of multiplying it in
    widest = max(range(len(factors)), key=lambda i: len(factors[i].value))
    acc = SchurVector.unit()
    for i, f in enumerate(factors):
        if i != widest:
            acc = lr_mul(acc, f.value, ctx.rectangle)
            if not acc:
                return 0
    return pair(ctx, acc, factors[widest].value)


def gr_mul_shadow(factors: Sequence[GrClass]) -> tuple:
    shadow = ((1, ()),)
    for f in factors:
        if f.shadow is None:
            raise ValueError("class has no recipe for oracle integration")
        shadow = _combine_shadow((c1 * c2, _normalize(f1 + f2)) for c1, f1 in shadow for c2, f2 in f.shadow)
    return shadow


class OracleEngine:
    """Monomial-basis replay of class recipes on the box [0, n]^(kappa+1).

    Exponents above n never reach the alternant target x_0^n ... x_kappa^(n-kappa),
    so truncating there is exact. Partial products are memoized by recipe
    prefix.
    """

    def __init__(self, ctx: GrContext, cache_size: int = 12):
        self.ctx = ctx
        self.nvars = ctx.rank_v
        self.cap = ctx.n
        self.target = tuple(range(ctx.n, ctx.n - ctx.kappa - 1, -1))
        self._lock = threading.Lock()
        self._prefix = lru_cache(maxsize=cache_size)(self._prefix_uncached)
        self._chern_applied = lru_cache(maxsize=4)(self._chern_applied_uncached)

    def _prefix_uncached(self, factors: tuple) -> np.ndarray:
        if not factors:
            return _box.one(self.nvars, self.cap)
        base = self._prefix(factors[:-1])
        deg = sum(_factor_degree(f) for f in factors[:-1])
        return self._apply(base, deg, factors[:-1], factors[-1])

    def _chern_applied_uncached(self, prefix: tuple, d: int) -> np.ndarray:
        arr = self._prefix(prefix)
        for root in sym_power_roots(self.nvars, d):
            arr = _box.times_linear(arr, root)
        return arr

    def _apply(self, arr: np.ndarray, deg: int, prefix: tuple, factor) -> np.ndarray:
        kind = factor[0]
        if kind == "e1":
            for _ in range(factor[1]):
                arr = _box.times_e1(arr)
            return arr
        if kind == "h":
            return _box.degree_part(_box.times_all_complete(arr), deg + factor[1])
        if kind == "e":
            return _box.degree_part(_box.times_all_elementary(arr), deg + factor[1])
        if kind == "cqe":
            return _box.degree_part(self._chern_applied(prefix, factor[1]), deg + factor[2])
        if kind == "schur":
            return _box.times_sparse(arr, schur_to_poly(factor[1], self.nvars))
        raise ValueError(f"unknown factor {factor!r}")

    def integrate_term(self, factors: tuple) -> int:
        if sum(_factor_degree(f) for f in factors) != self.ctx.dim_gr:
            return 0
        with self._lock:
            arr = self._prefix(_normalize(factors))
        return int(alternant_coefficient(_box.lookup(arr), self.target, self.nvars))

    def integrate_shadow(self, shadow: tuple) -> int:
        return sum(c * self.integrate_term(f) for c, f in shadow)

    def integrate_class(self, x: GrClass) -> int:
        if x.shadow is not None:
            return self.integrate_shadow(x.shadow)
        # no recipe: fall back to the Schur polynomials of the stored value
        return self.integrate_shadow(tuple((c, (("schur", tuple(lam)),)) for lam, c in x.value.items()))

    def to_poly(self, x: GrClass) -> MonomialSymPoly:
        """Monomial form of x truncated to the box (exact for exponents <= n)."""
        total = _box.zeros(self.nvars, self.cap)
        shadow = x.shadow
        if shadow is None:
            shadow = tuple((c, (("schur", tuple(lam)),)) for lam, c in x.value.items())
        for c, f in shadow:
            with self._lock:
                total = total + c * self._prefix(_normalize(f))
        return _box.to_poly(total)


_ENGINES: dict[GrContext, OracleEngine] = {}
_ENGINES_LOCK = threading.Lock()


def oracle_engine(ctx: GrContext) -> OracleEngine:
    with _ENGINES_LOCK:
        engine = _ENGINES.get(ctx)
        if engine is None:
            # one live engine at a time keeps the big object arrays bounded
            _ENGINES.clear()
            engine = _ENGINES[ctx] = OracleEngine(ctx)
        return engine


def all_classes_of_degree(ctx: GrContext, k: int) -> list[Partition]:
    rows, cols = ctx.rectangle
    return list(partitions_in_box(k, rows, cols))


def parse_class_expr(ctx: GrContext, text: str) -> GrClass:
    from .expr import parse_class_expr as _parse

    return _parse(ctx, text)
