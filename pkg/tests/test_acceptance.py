"""Acceptance criteria, one test per criterion.

Run with ``pytest tests/test_acceptance.py -v``; the terminal summary ends with
one PASS/FAIL line per criterion.  Timed criteria run in a fresh interpreter so
that no warm cache flatters the clock.
"""

import json
import random
import subprocess
import sys
import time
from fractions import Fraction
from math import comb

import pytest

from oscplanes.grchow import GrContext, integrate_product, oracle_comparisons
from oscplanes.motive import (
    PAPER_TRIPLES,
    audit_triple,
    b_matrix,
    betas,
    condition_b,
    m_direct,
    m_from_gamma,
    m_value,
    osculating_count,
    plane_count,
    scan,
    scan_triples,
    sum_ai,
    triple_params,
)

from test_grchow import _random_class


def _cold(code, timeout):
    start = time.perf_counter()
    proc = subprocess.run([sys.executable, "-c", code], capture_output=True, text=True, timeout=timeout, check=True)
    return time.perf_counter() - start, json.loads(proc.stdout)


def d2_triples():
    return list(scan_triples(range(1, 5), [2], 12))


def kappa1_triples():
    return list(scan_triples([1], range(1, 7), 12))


def elv_triples():
    out = []
    for t in scan_triples(range(1, 4), range(3, 13), 12):
        if triple_params(*t).elv_sufficient:
            out.append(t)
    return out


def criteria_triples():
    return sorted(set(PAPER_TRIPLES) | {(5, 2, 3)} | set(d2_triples()) | set(kappa1_triples()) | set(elv_triples()))


@pytest.mark.criterion(1)
def test_c1_quoted_triples(record_property):
    code = (
        "import json\n"
        "from oscplanes.motive import PAPER_TRIPLES, condition_b, triple_params\n"
        "out = []\n"
        "for t in PAPER_TRIPLES:\n"
        "    r = condition_b(triple_params(*t), 'both')\n"
        "    out.append([list(t), r.params.s_excess, str(r.m), r.holds])\n"
        "print(json.dumps(out))\n"
    )
    elapsed, rows = _cold(code, 600)
    record_property("detail", f"{len(rows)} triples in {elapsed:.1f}s, m = " + ", ".join(r[2] for r in rows))
    for triple, s, m, holds in rows:
        assert s >= 0 and int(m) != 0 and holds, triple
    assert elapsed < 120


@pytest.mark.criterion(2)
def test_c2_first_d2_failure(record_property):
    params = triple_params(5, 2, 3)
    m = m_value(params, "both")
    record_property("detail", f"(5,2,3): s = {params.s_excess}, m = {m}")
    assert params.s_excess == 0 and m == 0
    assert not condition_b(params).holds


@pytest.mark.criterion(3)
def test_c3_d2_equivalence(record_property):
    code = (
        "import json\n"
        "from oscplanes.motive import scan, scan_triples\n"
        "reports = scan(scan_triples(range(1, 5), [2], 12), 'both')\n"
        "print(json.dumps([[r.n, r.kappa, r.condition_b] for r in reports]))\n"
    )
    elapsed, rows = _cold(code, 900)
    bad = [(n, k) for n, k, holds in rows if holds != (n >= 2 * k)]
    record_property("detail", f"{len(rows) - len(bad)}/{len(rows)} triples agree in {elapsed:.1f}s")
    assert len(rows) == len(d2_triples()) and not bad
    assert elapsed < 600


@pytest.mark.criterion(4)
def test_c4_kappa1_equivalence(record_property):
    reports = scan(kappa1_triples(), "both")
    bad = [(r.n, r.d) for r in reports if r.condition_b != (r.n >= r.d) or (r.s_excess >= 0) != (r.n >= r.d)]
    record_property("detail", f"{len(reports) - len(bad)}/{len(reports)} triples agree")
    assert len(reports) == 6 * 11 and not bad


@pytest.mark.criterion(5)
def test_c5_elv_sufficiency(record_property):
    triples = elv_triples()
    reports = scan(triples, "both")
    bad = [(r.n, r.d, r.kappa) for r in reports if not r.m]
    record_property("detail", f"{len(reports) - len(bad)}/{len(reports)} bounded triples have m != 0")
    # kappa = 1 reaches d = 12, kappa = 2 reaches d = 4, kappa = 3 only d = 3
    assert max(d for _, d, k in triples if k == 1) == 12
    assert max(d for _, d, k in triples if k == 2) == 4
    assert {d for _, d, k in triples if k == 3} == {3}
    assert not bad


@pytest.mark.criterion(6)
def test_c6_oracle_equivalence(record_property):
    rng = random.Random(20261016)
    start = oracle_comparisons()
    random_cases = 0
    for ctx in (GrContext(3, 1), GrContext(4, 1), GrContext(6, 2)):
        for _ in range(50):
            w = rng.randint(0, ctx.dim_gr)
            x = _random_class(rng, ctx, w)
            y = _random_class(rng, ctx, ctx.dim_gr - w)
            integrate_product(ctx, [x, y], "both")
            random_cases += 1
    assert oracle_comparisons() - start == random_cases >= 100
    mid = oracle_comparisons()
    triples = [t for t in criteria_triples() if triple_params(*t).s_excess >= 0]
    for t in triples:
        params = triple_params(*t)
        m_direct(params, None, "both")
        b_matrix(params, mode="both")
    integrands = oracle_comparisons() - mid
    record_property(
        "detail", f"{random_cases} random products, {integrands} integrands over {len(triples)} triples agree"
    )
    assert integrands > len(triples)


@pytest.mark.criterion(7)
@pytest.mark.parametrize("triple,count", [((3, 3, 1), 27), ((4, 5, 1), 2875), ((2, 1, 1), 1)])
def test_c7_classical_counts(record_property, triple, count):
    value = plane_count(triple_params(*triple), "both")
    record_property("detail", f"{triple} -> {value}")
    assert value == count


@pytest.mark.criterion(8)
def test_c8_cubic_surface(record_property):
    params = triple_params(3, 3, 1)
    b = b_matrix(params, mode="both")
    m = m_value(params, "both")
    beta = betas(params, "both")
    count = osculating_count(params, m)
    record_property("detail", f"m = {m}, count = {count}, betas = ({', '.join(map(str, beta))})")
    assert b == [[1, 6, 11], [6, 32, 42], [11, 42, 27]]
    assert m == 6 and count == 2
    assert beta == [1, Fraction(5, 2), 1]


@pytest.mark.criterion(9)
def test_c9_property_suite(record_property):
    triples = sorted(set(criteria_triples()) | set(scan_triples(range(1, 5), range(1, 7), 12)))
    checked = 0
    for t in triples:
        params = triple_params(*t)
        report = audit_triple(params)
        if params.s_excess < 0:
            assert report.m is None and not report.condition_b
            continue
        b = b_matrix(params)
        assert all(b[p][q] == b[q][p] for p in range(len(b)) for q in range(len(b))), t
        assert sum_ai(params).is_integral(), t
        assert m_direct(params) == m_from_gamma(params) == report.m, t
        assert report.m % params.d == 0, t
        if report.condition_b:
            assert report.osculating_count == (-1) ** (params.kappa - 1) * (report.m // params.d), t
            assert report.betas == report.betas[::-1], t
            assert len(report.betas) == params.n
        checked += 1
    record_property("detail", f"{checked} triples with s >= 0 out of {len(triples)} scanned")
    assert checked > 0


def test_elv_bound_formula():
    assert triple_params(12, 3, 3).elv_sufficient == (12 - 3 + 1 >= comb(3 - 1 + 3, 3))
