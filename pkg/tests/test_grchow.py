import random
from math import comb

import pytest
import sympy

from oscplanes.expr import ExprSyntaxError, UnknownSymbol
from oscplanes.grchow import (
    DegreeError,
    GrContext,
    chern_sym_power,
    class_e,
    class_e1_pow,
    class_schur,
    class_xi,
    gr_integrate,
    gr_mul,
    integrate_product,
    oracle_engine,
    parse_class_expr,
    sym_power_roots,
    unit_class,
)
from oscplanes.symcore import MonomialSymPoly, Partition, SchurVector, partitions_in_box, schur_expand

from oracles import bott_integral, complete_values, elementary_values, sym_power_root_values

S = SchurVector.basis
G24 = GrContext(3, 1)


def test_context_bounds():
    assert G24.dim_gr == 4 and G24.rectangle == (2, 2)
    with pytest.raises(ValueError):
        GrContext(3, 3)
    with pytest.raises(ValueError):
        GrContext(3, 0)


def test_class_xi():
    assert class_xi(G24, 0) == unit_class(G24)
    assert class_xi(G24, 2).value == S([2])
    zero = class_xi(G24, 3)
    assert zero.value == SchurVector() and zero.degree == 3


def test_class_e1_pow():
    assert class_e1_pow(G24, 0) == unit_class(G24)
    assert class_e1_pow(G24, 1).value == S([1])
    assert class_e1_pow(G24, 2).value == S([2]) + S([1, 1])
    with pytest.raises(ValueError):
        class_e1_pow(G24, -1)


def _sparse_chern(ctx, d, j):
    """Independent route: expand the root product with sympy, then schur_expand."""
    xs = sympy.symbols(f"x0:{ctx.rank_v}")
    total = sympy.Integer(1)
    for root in sym_power_roots(ctx.rank_v, d):
        total *= 1 + sum(a * x for a, x in zip(root, xs))
    poly = sympy.Poly(sympy.expand(total), *xs)
    terms = {tuple(m): int(c) for m, c in poly.terms() if sum(m) == j}
    return schur_expand(MonomialSymPoly(ctx.rank_v, terms)).truncate(*ctx.rectangle)


def test_chern_identity_case():
    ctx = GrContext(5, 2)
    for j in range(5):
        assert chern_sym_power(ctx, 1, j).value == class_e(ctx, j).value


def test_chern_quadric_c1():
    assert chern_sym_power(G24, 2, 1).value == 3 * S([1])


def test_chern_cubic_c2():
    # (1+3a)(1+2a+b)(1+a+2b)(1+3b) has degree-2 part 11a^2 + 32ab + 11b^2
    a, b = sympy.symbols("a b")
    expanded = sympy.Poly(sympy.expand((1 + 3 * a) * (1 + 2 * a + b) * (1 + a + 2 * b) * (1 + 3 * b)), a, b)
    deg2 = {m: int(c) for m, c in expanded.terms() if sum(m) == 2}
    assert deg2 == {(2, 0): 11, (1, 1): 32, (0, 2): 11}
    assert schur_expand(MonomialSymPoly(2, deg2)) == 11 * S([2]) + 21 * S([1, 1])
    assert chern_sym_power(G24, 3, 2).value == 11 * S([2]) + 21 * S([1, 1])


@pytest.mark.parametrize("n,kappa,d", [(3, 1, 3), (4, 1, 5), (5, 2, 2), (6, 2, 3), (6, 3, 2)])
def test_chern_fast_path_matches_sparse_route(n, kappa, d):
    ctx = GrContext(n, kappa)
    for j in range(comb(d + kappa, kappa) + 1):
        assert chern_sym_power(ctx, d, j).value == _sparse_chern(ctx, d, j)


@pytest.mark.parametrize("kappa", [1, 2, 3])
@pytest.mark.parametrize("d", [1, 2, 3, 4, 5])
def test_chern_vanishing_and_c1(kappa, d):
    n = kappa + 4
    ctx = GrContext(n, kappa)
    rank = comb(d + kappa, kappa)
    assert chern_sym_power(ctx, d, 0) == unit_class(ctx)
    assert chern_sym_power(ctx, d, rank + 1).value == SchurVector()
    scalar, rem = divmod(d * rank, kappa + 1)
    assert rem == 0
    assert chern_sym_power(ctx, d, 1).value == scalar * S([1])


def test_gr_mul_examples():
    x = class_xi(G24, 1) + class_xi(G24, 2)
    assert gr_mul(G24, [unit_class(G24), x]) == x
    assert gr_mul(G24, [class_schur(G24, [2]), class_schur(G24, [1, 1])]).value == SchurVector()
    assert gr_mul(G24, [class_xi(G24, 1), class_xi(G24, 1)]).value == S([2]) + S([1, 1])


def test_gr_mul_context_mismatch():
    with pytest.raises(ValueError):
        gr_mul(G24, [class_xi(GrContext(4, 1), 1)])


def _random_class(rng, ctx, weight):
    rows, cols = ctx.rectangle
    shapes = list(partitions_in_box(weight, rows, cols))
    total = None
    for lam in rng.sample(shapes, min(2, len(shapes))):
        term = rng.randint(-3, 5) * class_schur(ctx, lam)
        total = term if total is None else total + term
    return total


def test_mul_commutative_associative():
    rng = random.Random(5)
    ctx = GrContext(6, 2)
    for _ in range(25):
        x, y, z = (_random_class(rng, ctx, rng.randint(1, 4)) for _ in range(3))
        assert gr_mul(ctx, [x, y]) == gr_mul(ctx, [y, x])
        assert gr_mul(ctx, [gr_mul(ctx, [x, y]), z]) == gr_mul(ctx, [x, gr_mul(ctx, [y, z])])


@pytest.mark.parametrize("ctx", [GrContext(3, 1), GrContext(4, 1)])
def test_duality(ctx):
    rows, cols = ctx.rectangle
    shapes = [lam for w in range(ctx.dim_gr + 1) for lam in partitions_in_box(w, rows, cols)]
    for lam in shapes:
        for mu in shapes:
            if lam.weight + mu.weight != ctx.dim_gr:
                continue
            value = gr_integrate(ctx, gr_mul(ctx, [class_schur(ctx, lam), class_schur(ctx, mu)]), "both")
            assert value == (1 if mu == lam.complement(rows, cols) else 0)


def test_integrate_examples():
    assert gr_integrate(G24, class_schur(G24, [2, 2])) == 1
    assert gr_integrate(G24, chern_sym_power(G24, 3, 4), "both") == 27
    g25 = GrContext(4, 1)
    # top Chern class of Sym^5 on Gr(2,5) lives in degree 6 = dim Gr
    assert gr_integrate(g25, chern_sym_power(g25, 5, 6), "both") == 2875
    assert gr_integrate(g25, chern_sym_power(g25, 5, 8), "both") == 0


def test_integrate_degree_rules():
    assert gr_integrate(G24, class_xi(G24, 1)) == 0
    with pytest.raises(DegreeError):
        gr_integrate(G24, class_xi(G24, 1) + class_xi(G24, 2))
    with pytest.raises(DegreeError):
        integrate_product(G24, [class_xi(G24, 1), class_xi(G24, 2)])


def test_bott_oracle_agrees():
    ctx = GrContext(5, 2)
    d, s = 2, 2
    for j in range(0, 5):
        k = ctx.dim_gr - s - j - 2
        if k < 0:
            continue
        factors = [class_e1_pow(ctx, s), class_xi(ctx, j), class_xi(ctx, 2), chern_sym_power(ctx, d, k)]
        expected = bott_integral(
            5,
            2,
            lambda x: sum(x) ** s
            * complete_values(x, j)
            * complete_values(x, 2)
            * elementary_values(sym_power_root_values(x, d), k),
        )
        assert integrate_product(ctx, factors, "both") == expected


def test_random_products_schur_vs_oracle():
    rng = random.Random(99)
    contexts = [GrContext(3, 1), GrContext(4, 1), GrContext(6, 2)]
    checked = 0
    for ctx in contexts:
        for _ in range(40):
            w = rng.randint(0, ctx.dim_gr)
            x = _random_class(rng, ctx, w)
            y = _random_class(rng, ctx, ctx.dim_gr - w)
            assert integrate_product(ctx, [x, y], "both") is not None
            checked += 1
    assert checked >= 100


def test_oracle_to_poly_is_symmetric():
    ctx = GrContext(4, 2)
    x = gr_mul(ctx, [chern_sym_power(ctx, 2, 3), class_xi(ctx, 1)])
    p = oracle_engine(ctx).to_poly(x)
    assert p.is_symmetric()
    assert schur_expand(p, ctx.rectangle) == x.value


# -- expressions -------------------------------------------------------------


def test_parse_examples():
    assert parse_class_expr(G24, "xi(2)*xi(2)").value == S([2, 2])
    assert parse_class_expr(G24, "e1^0") == unit_class(G24)
    with pytest.raises(ExprSyntaxError) as info:
        parse_class_expr(G24, "xi(2)+*xi(1)")
    assert info.value.offset == 6


def test_parse_grammar_coverage():
    ctx = GrContext(4, 1)
    x = parse_class_expr(ctx, " 2*s[2,1] + (e(1) + h(1))^2 * xi(1) + cqe(2, 3) ")
    assert x.degrees == frozenset({3})
    expected = (
        2 * class_schur(ctx, [2, 1])
        + gr_mul(ctx, [gr_mul(ctx, [class_e(ctx, 1) + class_xi(ctx, 1)] * 2), class_xi(ctx, 1)])
        + chern_sym_power(ctx, 2, 3)
    )
    assert x == expected
    top = parse_class_expr(ctx, "e1^3*xi(3) + 3*s[3,3]")
    assert gr_integrate(ctx, top, "both") == gr_integrate(ctx, top, "schur")


@pytest.mark.parametrize(
    "text,exc",
    [("foo(1)", UnknownSymbol), ("xi(1)^-1", ExprSyntaxError), ("xi(1", ExprSyntaxError), ("s[1,2]", ExprSyntaxError), ("xi(1) $", ExprSyntaxError)],
)
def test_parse_errors(text, exc):
    with pytest.raises(exc):
        parse_class_expr(G24, text)


def test_schur_class_too_many_rows_is_zero():
    assert class_schur(G24, [1, 1, 1]).value == SchurVector()
    assert Partition([1, 1, 1]).weight == 3
