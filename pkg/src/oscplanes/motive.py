"""Invariants of the osculating-plane construction for hypersurfaces of P^n.

For a triple (n, d, kappa) the Grassmannian of kappa-planes carries
QE = Sym^d(V^dual); the excess s, the integrals b_{p,q}, the classes a_i on
P^n x P^n, the diagonal multiplicity m and the coefficients beta_i are
computed exactly, together with a checker for the surjectivity criterion
(s >= 0 and m != 0) over ranges of triples.
"""

from __future__ import annotations

import logging
from concurrent.futures import ProcessPoolExecutor
from dataclasses import asdict, dataclass, field
from fractions import Fraction
from functools import lru_cache
from math import comb

from .grchow import (
    DegreeError,
    GrClass,
    GrContext,
    chern_sym_power,
    class_e1_pow,
    class_xi,
    gr_integrate,
    gr_mul,
    integrate_product,
)
from .ppchow import PPClass, geom_series_inverse, homogeneous_part, pp_mul

log = logging.getLogger(__name__)

PAPER_TRIPLES = ((6, 3, 2), (8, 4, 2), (11, 5, 2), (9, 3, 3))


class ParamError(ValueError):
    pass


@dataclass(frozen=True)
class TripleParams:
    n: int
    d: int
    kappa: int

    def __post_init__(self):
        if self.kappa < 1:
            raise ParamError(f"kappa must be >= 1, got {self.kappa}")
        if self.d < 1:
            raise ParamError(f"d must be >= 1, got {self.d}")
        if self.n < self.kappa + 1:
            raise ParamError(f"n must be >= kappa + 1 = {self.kappa + 1}, got {self.n}")
        assert self.expected_fano_dim - self.s_excess == self.hf_dim

    @property
    def rank_qe(self) -> int:
        return comb(self.d + self.kappa, self.kappa)

    @property
    def dim_gr(self) -> int:
        return (self.kappa + 1) * (self.n - self.kappa)

    @property
    def s_excess(self) -> int:
        return self.kappa * (self.n - self.kappa) - self.rank_qe + self.kappa + 1

    @property
    def codim_shift(self) -> int:
        return self.n - 1 - self.s_excess

    @property
    def N(self) -> int:
        return comb(self.n + self.d, self.d) - 1

    @property
    def expected_fano_dim(self) -> int:
        return self.dim_gr - self.rank_qe

    @property
    def hf_dim(self) -> int:
        return self.n - 2 * self.kappa - 1

    @property
    def elv_sufficient(self) -> bool:
        return self.d >= 3 and self.n - self.kappa + 1 >= comb(self.kappa - 1 + self.d, self.kappa)

    @property
    def intro_bound(self) -> bool:
        return self.n >= comb(self.kappa + self.d - 1, self.kappa) + self.kappa - 1

    @property
    def ctx(self) -> GrContext:
        return GrContext(self.n, self.kappa)


def triple_params(n: int, d: int, kappa: int) -> TripleParams:
    return TripleParams(int(n), int(d), int(kappa))


def default_a(params: TripleParams) -> GrClass:
    if params.s_excess < 0:
        raise ParamError(f"excess s = {params.s_excess} < 0: c_1(V^dual)^s is undefined")
    return class_e1_pow(params.ctx, params.s_excess)


def _resolve_a(params: TripleParams, a: GrClass | None) -> GrClass:
    if a is None:
        return default_a(params)
    if a.ctx != params.ctx:
        raise ValueError(f"class lives on {a.ctx}, expected {params.ctx}")
    if a.degree != params.s_excess:
        raise DegreeError(f"a must have degree s = {params.s_excess}, got degrees {sorted(a.degrees)}")
    return a


def _chern_or_none(params: TripleParams, k: int) -> GrClass | None:
    # indices outside [0, rank] carry no class; those terms are zero
    if k < 0 or k > params.rank_qe:
        return None
    return chern_sym_power(params.ctx, params.d, k)


def b_coeff(params: TripleParams, p: int, q: int, a: GrClass | None = None, mode: str = "schur") -> int:
    """b_{p,q} = integral of xi_{n-k-p} xi_{n-k-q} c_{rk-n+p+q-1}(QE) a."""
    top = params.n - params.kappa
    if not (0 <= p <= top and 0 <= q <= top):
        raise ValueError(f"(p, q) = ({p}, {q}) outside [0, {top}]")
    a = _resolve_a(params, a)
    chern = _chern_or_none(params, params.rank_qe - params.n + p + q - 1)
    if chern is None:
        return 0
    ctx = params.ctx
    return integrate_product(ctx, [a, class_xi(ctx, top - p), class_xi(ctx, top - q), chern], mode)


def b_matrix(params: TripleParams, a: GrClass | None = None, mode: str = "schur") -> list[list[int]]:
    a = _resolve_a(params, a)
    return [list(row) for row in _b_matrix(params, a, mode)]


@lru_cache(maxsize=64)
def _b_matrix(params: TripleParams, a: GrClass, mode: str) -> tuple:
    ctx = params.ctx
    top = params.n - params.kappa
    rows = []
    for p in range(top + 1):
        a_p = gr_mul(ctx, [a, class_xi(ctx, top - p)])
        row = []
        for q in range(top + 1):
            chern = _chern_or_none(params, params.rank_qe - params.n + p + q - 1)
            if chern is None:
                row.append(0)
            else:
                row.append(integrate_product(ctx, [a_p, class_xi(ctx, top - q), chern], mode))
        rows.append(tuple(row))
    return tuple(rows)


def b_polynomial(params: TripleParams, a: GrClass | None = None, mode: str = "schur") -> PPClass:
    b = b_matrix(params, a, mode)
    return PPClass(params.n, {(p, q): v for p, row in enumerate(b) for q, v in enumerate(row)})


def t_class(params: TripleParams, a: GrClass | None, i: int, mode: str = "schur") -> PPClass:
    """Degree-i pushforward class: sum over p + q = i of b_{p,q} A^p B^q."""
    if i < 0:
        raise ValueError(f"negative degree {i}")
    return homogeneous_part(b_polynomial(params, a, mode), i)


def sum_ai(params: TripleParams, a: GrClass | None = None, mode: str = "schur") -> PPClass:
    """sum_i a_i = (sum b_{p,q} A^p B^q) / ((1 + d A)(1 + d B))."""
    total = pp_mul(b_polynomial(params, a, mode), geom_series_inverse(params.d, params.n))
    if not total.is_integral():
        raise AssertionError(f"sum of a_i is not integral for {params}")
    return total


def m_terms(params: TripleParams, a: GrClass | None = None, mode: str = "schur") -> list[tuple[int, int]]:
    """(j, integral of xi_{n-k} xi_{j-k+1} c_{rk-2-j}(QE) a) for j = kappa-1 .. n-1."""
    a = _resolve_a(params, a)
    ctx = params.ctx
    k = params.kappa
    head = gr_mul(ctx, [a, class_xi(ctx, params.n - k)])
    out = []
    for j in range(k - 1, params.n):
        xi_index = j - k + 1
        chern = _chern_or_none(params, params.rank_qe - 2 - j)
        if chern is None or xi_index > params.n - k:
            out.append((j, 0))
            continue
        out.append((j, integrate_product(ctx, [head, class_xi(ctx, xi_index), chern], mode)))
    return out


def m_direct(params: TripleParams, a: GrClass | None = None, mode: str = "schur") -> int:
    d = params.d
    return d * sum((-d) ** j * value for j, value in m_terms(params, a, mode))


def m_from_gamma(params: TripleParams, a: GrClass | None = None, mode: str = "schur") -> int:
    """d * gamma, gamma = coefficient of 1 x H^(n-1) in a_{n-1}, read off sum_ai."""
    gamma = sum_ai(params, a, mode).coefficient(0, params.n - 1)
    assert gamma.denominator == 1
    return params.d * int(gamma)


def m_value(params: TripleParams, mode: str = "schur", a: GrClass | None = None, check: bool = True) -> int:
    if params.s_excess < 0:
        raise ParamError(f"m is undefined for s = {params.s_excess} < 0")
    m = m_direct(params, a, mode)
    if check:
        # second path goes through the b-matrix and the series inversion
        other = m_from_gamma(params, a, "schur" if mode == "both" else mode)
        if other != m:
            raise AssertionError(f"m paths disagree for {params}: direct {m}, via gamma {other}")
    if m % params.d:
        raise AssertionError(f"d = {params.d} does not divide m = {m} for {params}")
    return m


@dataclass(frozen=True)
class ConditionBReport:
    params: TripleParams
    m: int | None
    holds: bool
    osculating_count: int | None
    elv_sufficient: bool
    intro_bound: bool


def osculating_count(params: TripleParams, m: int) -> int:
    q, r = divmod(m, params.d)
    if r:
        raise AssertionError(f"d = {params.d} does not divide m = {m}")
    return (-1) ** (params.kappa - 1) * q


def condition_b(params: TripleParams, mode: str = "schur", check: bool = True) -> ConditionBReport:
    if params.s_excess < 0:
        m = None
        holds = False
        count = None
    else:
        m = m_value(params, mode, check=check)
        holds = m != 0
        count = osculating_count(params, m)
    return ConditionBReport(params, m, holds, count, params.elv_sufficient, params.intro_bound)


def betas(params: TripleParams, mode: str = "schur", m: int | None = None) -> list[Fraction]:
    """beta_i with a_{n-1} = (m/d) sum beta_i H^(n-1-i) x H^i."""
    if params.s_excess < 0:
        raise ParamError(f"betas undefined for s = {params.s_excess} < 0")
    if m is None:
        m = m_value(params, mode)
    if m == 0:
        raise ParamError(f"betas undefined: m = 0 for {params}")
    top = homogeneous_part(sum_ai(params, None, "schur" if mode == "both" else mode), params.n - 1)
    scale = Fraction(params.d, m)
    n = params.n
    return [scale * top.coefficient(n - 1 - i, i) for i in range(n)]


def plane_count(params: TripleParams, mode: str = "schur") -> int:
    """Number of kappa-planes on a general hypersurface when the expected Fano dimension is 0."""
    if params.expected_fano_dim != 0:
        raise ParamError(f"expected Fano dimension is {params.expected_fano_dim}, not 0")
    return gr_integrate(params.ctx, chern_sym_power(params.ctx, params.d, params.rank_qe), mode)


# ---------------------------------------------------------------------------
# full reports


REPORT_KEYS = (
    "n",
    "d",
    "kappa",
    "rank_qe",
    "dim_gr",
    "s_excess",
    "codim_shift",
    "m",
    "condition_b",
    "osculating_count",
    "betas",
    "elv_sufficient",
    "intro_bound",
    "expected_fano_dim",
    "hf_dim",
)


@dataclass(frozen=True)
class TripleReport:
    n: int
    d: int
    kappa: int
    rank_qe: int
    dim_gr: int
    s_excess: int
    codim_shift: int
    m: int | None
    condition_b: bool
    osculating_count: int | None
    betas: tuple | None
    elv_sufficient: bool
    intro_bound: bool
    expected_fano_dim: int
    hf_dim: int

    @property
    def params(self) -> TripleParams:
        return TripleParams(self.n, self.d, self.kappa)

    def to_json(self) -> dict:
        out = asdict(self)
        out["m"] = None if self.m is None else str(self.m)
        out["osculating_count"] = None if self.osculating_count is None else str(self.osculating_count)
        out["betas"] = None if self.betas is None else [str(b) for b in self.betas]
        return {k: out[k] for k in REPORT_KEYS}

    @classmethod
    def from_json(cls, data: dict) -> "TripleReport":
        if set(data) != set(REPORT_KEYS):
            raise ValueError(f"unexpected report keys {sorted(set(data) ^ set(REPORT_KEYS))}")
        fields = dict(data)
        fields["m"] = None if data["m"] is None else int(data["m"])
        if data["osculating_count"] is not None:
            fields["osculating_count"] = int(data["osculating_count"])
        if data["betas"] is not None:
            fields["betas"] = tuple(Fraction(b) for b in data["betas"])
        return cls(**fields)


def audit_triple(params: TripleParams, mode: str = "schur", with_betas: bool = True) -> TripleReport:
    """Compute every invariant of a triple, asserting the structural identities on the way.

    Raises AssertionError when an identity fails (divisibility, integrality,
    symmetry, agreement of the two routes to m).
    """
    report = condition_b(params, mode)
    beta_values = None
    if params.s_excess >= 0:
        b = b_matrix(params)
        if any(b[p][q] != b[q][p] for p in range(len(b)) for q in range(len(b))):
            raise AssertionError(f"b-matrix not symmetric for {params}")
        total = sum_ai(params)
        if total.swap() != total:
            raise AssertionError(f"sum of a_i not swap-symmetric for {params}")
        if with_betas and report.holds:
            beta_values = tuple(betas(params, mode, m=report.m))
            if beta_values != beta_values[::-1]:
                raise AssertionError(f"betas not palindromic for {params}")
    return TripleReport(
        n=params.n,
        d=params.d,
        kappa=params.kappa,
        rank_qe=params.rank_qe,
        dim_gr=params.dim_gr,
        s_excess=params.s_excess,
        codim_shift=params.codim_shift,
        m=report.m,
        condition_b=report.holds,
        osculating_count=report.osculating_count,
        betas=beta_values,
        elv_sufficient=params.elv_sufficient,
        intro_bound=params.intro_bound,
        expected_fano_dim=params.expected_fano_dim,
        hf_dim=params.hf_dim,
    )


def _audit_task(args) -> TripleReport:
    (n, d, kappa), mode = args
    return audit_triple(TripleParams(n, d, kappa), mode)


def scan_triples(kappas, ds, n_max: int):
    for kappa in kappas:
        for d in ds:
            for n in range(kappa + 1, n_max + 1):
                yield (n, d, kappa)


def scan(triples, mode: str = "schur", jobs: int = 1) -> list[TripleReport]:
    """Audit every triple; output sorted by (kappa, d, n) whatever the job count."""
    triples = sorted(set(triples), key=lambda t: (t[2], t[1], t[0]))
    tasks = [(t, mode) for t in triples]
    if jobs > 1 and len(tasks) > 1:
        with ProcessPoolExecutor(max_workers=jobs) as pool:
            reports = list(pool.map(_audit_task, tasks))
    else:
        reports = []
        for task in tasks:
            log.debug("auditing %s", task[0])
            reports.append(_audit_task(task))
    return sorted(reports, key=lambda r: (r.kappa, r.d, r.n))


# ---------------------------------------------------------------------------
# claim verification


@dataclass
class ClaimRecord:
    claim_id: str
    statement: str
    triple_range: str
    expected: str
    computed: str
    passed: bool
    failures: list = field(default_factory=list)


@dataclass
class ClaimsReport:
    claims: list[ClaimRecord]
    triples: list[TripleReport]
    diagnostics: dict

    @property
    def passed(self) -> bool:
        return all(c.passed for c in self.claims)

    def to_json(self) -> dict:
        return {
            "passed": self.passed,
            "claims": [asdict(c) for c in self.claims],
            "diagnostics": self.diagnostics,
            "triples": [r.to_json() for r in self.triples],
        }


def _fmt(t) -> str:
    return f"(n={t[0]}, d={t[1]}, kappa={t[2]})"


def verify_claims(
    kappa_max: int = 4,
    d_max: int = 6,
    n_max: int = 12,
    mode: str = "both",
    jobs: int = 1,
) -> ClaimsReport:
    if kappa_max < 3 or d_max < 3 or n_max < 11:
        raise ValueError("scan bounds must cover kappa <= 3, d <= 3 and n <= 11 to reach every quoted triple")
    triples = set(scan_triples(range(1, kappa_max + 1), range(1, d_max + 1), n_max))
    triples.update(PAPER_TRIPLES)
    reports = scan(triples, mode, jobs)
    by_triple = {(r.n, r.d, r.kappa): r for r in reports}
    claims = []

    # d = 2: holds iff n >= 2 kappa
    d2 = [r for r in reports if r.d == 2]
    bad = [_fmt((r.n, r.d, r.kappa)) for r in d2 if r.condition_b != (r.n >= 2 * r.kappa)]
    claims.append(
        ClaimRecord(
            "d2_equivalence",
            "for d = 2 the criterion holds exactly when n >= 2 kappa",
            f"d=2, 1<=kappa<={kappa_max}, kappa+1<=n<={n_max}",
            "condition_b == (n >= 2 kappa) on every triple",
            f"{len(d2) - len(bad)}/{len(d2)} triples agree",
            not bad,
            bad,
        )
    )

    # first d = 2 triple with s >= 0 but m = 0
    failing = sorted(
        ((r.kappa, r.n) for r in d2 if r.s_excess >= 0 and not r.condition_b),
    )
    first = by_triple.get((5, 2, 3))
    computed = "none" if not failing else f"kappa={failing[0][0]}, n={failing[0][1]}"
    ok = (
        bool(failing)
        and failing[0] == (3, 5)
        and min(n for _, n in failing) == 5
        and first is not None
        and first.s_excess == 0
        and first.m == 0
    )
    claims.append(
        ClaimRecord(
            "d2_first_failure",
            "for d = 2, s >= 0 is not sufficient; the first failure is kappa = 3, n = 5",
            f"d=2, kappa<={kappa_max}, n<={n_max}",
            "smallest failing (kappa, n) = (3, 5) with s = 0, m = 0",
            f"{computed}; (5,2,3): s={first.s_excess if first else '?'}, m={first.m if first else '?'}",
            ok,
            [] if ok else [computed],
        )
    )

    # kappa = 1: holds iff s >= 0
    k1 = [r for r in reports if r.kappa == 1]
    bad = [_fmt((r.n, r.d, r.kappa)) for r in k1 if r.condition_b != (r.s_excess >= 0)]
    claims.append(
        ClaimRecord(
            "kappa1_equivalence",
            "for kappa = 1 the criterion holds exactly when s >= 0 (n >= d)",
            f"kappa=1, 1<=d<={d_max}, 2<=n<={n_max}",
            "condition_b == (s >= 0) on every triple",
            f"{len(k1) - len(bad)}/{len(k1)} triples agree",
            not bad,
            bad,
        )
    )

    # the quoted triples
    bad = [_fmt(t) for t in PAPER_TRIPLES if not by_triple[t].condition_b]
    claims.append(
        ClaimRecord(
            "quoted_triples",
            "the criterion holds for (6,3,2), (8,4,2), (11,5,2), (9,3,3)",
            "four triples",
            "condition_b true, s >= 0, m != 0",
            ", ".join(f"{_fmt(t)}: m={by_triple[t].m}" for t in PAPER_TRIPLES),
            not bad,
            bad,
        )
    )

    # known sufficient bound for d >= 3
    elv = [r for r in reports if r.elv_sufficient]
    bad = [_fmt((r.n, r.d, r.kappa)) for r in elv if not r.condition_b]
    claims.append(
        ClaimRecord(
            "elv_sufficiency",
            "d >= 3 and n - kappa + 1 >= C(kappa - 1 + d, kappa) imply the criterion",
            f"kappa<={kappa_max}, 3<=d<={d_max}, n<={n_max}",
            "m != 0 on every bounded triple",
            f"{len(elv) - len(bad)}/{len(elv)} triples have m != 0",
            bool(elv) and not bad,
            bad,
        )
    )

    # bound quoted in the introduction, all d
    intro = [r for r in reports if r.intro_bound]
    bad = [_fmt((r.n, r.d, r.kappa)) for r in intro if not r.condition_b]
    claims.append(
        ClaimRecord(
            "intro_bound",
            "n >= C(kappa + d - 1, kappa) + kappa - 1 implies the criterion",
            f"kappa<={kappa_max}, d<={d_max}, n<={n_max}",
            "condition_b true on every bounded triple",
            f"{len(intro) - len(bad)}/{len(intro)} triples hold",
            bool(intro) and not bad,
            bad,
        )
    )

    counterexamples = [
        _fmt((r.n, r.d, r.kappa)) for r in reports if r.d > 2 and r.s_excess >= 0 and not r.condition_b
    ]
    nonpositive = [
        _fmt((r.n, r.d, r.kappa)) for r in reports if r.condition_b and r.osculating_count <= 0
    ]
    diagnostics = {
        "triples_scanned": len(reports),
        "triples_with_nonnegative_excess": sum(1 for r in reports if r.s_excess >= 0),
        "d_gt_2_counterexamples": counterexamples,
        "nonpositive_osculating_counts": nonpositive,
        "integration_mode": mode,
    }
    return ClaimsReport(claims, reports, diagnostics)
