"""Shape of the expected Betti curve: quotients, peak, growth constants.

``M1(m) = E[m] / E[m-1]`` and ``M2(m) = M1(m) / M1(m-1)``. The curve has a
single peak when ``M2 < 1`` everywhere (``M1`` strictly decreasing) and
``M1`` crosses 1 at most once.
"""
from __future__ import annotations

import csv
import io
from dataclasses import dataclass
from enum import Enum
from fractions import Fraction
from math import e as _E, log, sqrt
from typing import Iterable, Sequence

from .bernoulli import (
    BernoulliParams,
    expected_betti,
    expected_betti_exact,
    log_expected_betti,
    support_range,
)

SPECIAL_P = 3.0 - sqrt(8.0)
EXACT_CURVE_MAX_N = 5000
REL_TOL = 1e-10


class SupportBoundaryError(ValueError):
    """A forward quotient was requested where one of its denominators vanishes."""


class PeakConsistencyError(RuntimeError):
    pass


def _m1_parts(params: BernoulliParams, m: int) -> tuple[int, int]:
    N, q = params.N, params.q
    den = (2 * m + 3 - q) * (2 * m + 2 - q)
    if den == 0:
        raise SupportBoundaryError(f"M1 undefined at m={m} for q={q}")
    return (N - m) * (q - m - 1), den


def _check_open_p(p: float) -> None:
    if not 0.0 < p < 1.0:
        raise ValueError(f"p must lie in (0, 1), got {p}")


def forward_quotient_1(params: BernoulliParams, m: int) -> float:
    """(pbar^2/p) (N-m)(q-m-1) / ((2m+3-q)(2m+2-q))."""
    _check_open_p(params.p)
    num, den = _m1_parts(params, m)
    return params.pbar**2 / params.p * num / den


def _m2_exact(params: BernoulliParams, m: int) -> Fraction:
    N, q = params.N, params.q
    factors = [(2 * m - q, 2 * m - q + 2), (2 * m - q + 1, 2 * m - q + 3), (N - m, N - m + 1), (q - m - 1, q - m)]
    # M1(m-1) needs 2m-q and 2m-q+1 nonzero as well
    if any(den == 0 for _, den in factors) or 2 * m - q == 0 or 2 * m - q + 1 == 0:
        raise SupportBoundaryError(f"M2 undefined at m={m} for q={q}")
    out = Fraction(1)
    for num, den in factors:
        out *= Fraction(num, den)
    return out


def forward_quotient_2(params: BernoulliParams, m: int) -> float:
    """Product form of M1(m)/M1(m-1); independent of p."""
    return float(_m2_exact(params, m))


def _m1_exact(params: BernoulliParams, m: int, p: Fraction) -> Fraction:
    num, den = _m1_parts(params, m)
    return (1 - p) ** 2 / p * Fraction(num, den)


@dataclass(frozen=True)
class QuotientRow:
    m: int
    expectation: float
    M1: float | None
    M2: float | None


@dataclass(frozen=True)
class QuotientTable:
    params: BernoulliParams
    rows: tuple[QuotientRow, ...]

    def to_csv(self) -> str:
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(["m", "expectation", "M1", "M2"])
        for r in self.rows:
            w.writerow([r.m, repr(r.expectation), "" if r.M1 is None else repr(r.M1), "" if r.M2 is None else repr(r.M2)])
        return buf.getvalue()


def quotient_table(params: BernoulliParams) -> QuotientTable:
    """One row per support point; M1 needs m-1 and M2 needs m-2 in the support."""
    support = support_range(params)
    rows = []
    for m in support:
        m1 = forward_quotient_1(params, m) if m - 1 in support else None
        m2 = forward_quotient_2(params, m) if m - 2 in support else None
        rows.append(QuotientRow(m, expected_betti(params, m), m1, m2))
    return QuotientTable(params, tuple(rows))


@dataclass(frozen=True)
class UnimodalityReport:
    is_unimodal: bool
    m_peak: int
    m_peak_tied: int | None  # set when E[m_peak] == E[m_peak + 1]
    m2_below_one: bool
    single_crossing: bool
    curve_unimodal: bool
    exact: bool
    table: QuotientTable


def _curve_shape_ok(values: Sequence, exact: bool) -> bool:
    """Strictly up, then at most one flat step, then strictly down."""
    def cmp(a, b) -> int:
        if exact:
            return (b > a) - (b < a)
        scale = max(abs(a), abs(b), 1.0)
        if abs(b - a) <= REL_TOL * scale:
            return 0
        return 1 if b > a else -1

    steps = [cmp(a, b) for a, b in zip(values, values[1:])]
    phase, flats = 0, 0  # phase 0 rising, 1 falling
    for s in steps:
        if s == 0:
            flats += 1
            if flats > 1 or phase == 1:
                return False
            phase = 1
        elif s < 0:
            phase = 1
        elif phase == 1:
            return False
    return True


def check_unimodality(params: BernoulliParams) -> UnimodalityReport:
    """Verify single-peakedness of the expected Betti curve for one (N, q, p).

    Quotient signs are decided in exact rationals using the binary value of
    ``p``. The curve itself is compared exactly when ``N`` is moderate and
    in log space (relative tolerance 1e-10) otherwise.
    """
    _check_open_p(params.p)
    support = support_range(params)
    if not support:
        raise ValueError(f"empty support for {params}")
    pf = Fraction(params.p)

    m2_ok = all(_m2_exact(params, m) < 1 for m in support if m - 2 in support)
    signs = []
    for m in support:
        if m - 1 in support:
            v = _m1_exact(params, m, pf)
            signs.append((m, (v > 1) - (v < 1)))
    crossing_ok = True
    seen_nonpos = False
    zeros = 0
    for _, s in signs:
        if s == 0:
            zeros += 1
            if zeros > 1 or seen_nonpos:
                crossing_ok = False
            seen_nonpos = True
        elif s < 0:
            seen_nonpos = True
        elif seen_nonpos:
            crossing_ok = False

    # peak: last m whose quotient is >= 1 (a quotient of exactly 1 is a tie)
    m_peak, tied = support.start, None
    for m, s in signs:
        if s > 0:
            m_peak = m
        elif s == 0:
            tied = m
            break
        else:
            break
    if tied is not None:
        m_peak = tied - 1

    exact = params.N <= EXACT_CURVE_MAX_N
    if exact:
        curve = [expected_betti_exact(params, m, pf) for m in support]
    else:
        curve = [log_expected_betti(params, m) for m in support]
    curve_ok = _curve_shape_ok(curve, exact)
    best = max(range(len(curve)), key=lambda i: curve[i])
    if support[best] not in (m_peak, tied):
        curve_ok = False

    return UnimodalityReport(
        is_unimodal=m2_ok and crossing_ok and curve_ok,
        m_peak=m_peak,
        m_peak_tied=tied,
        m2_below_one=m2_ok,
        single_crossing=crossing_ok,
        curve_unimodal=curve_ok,
        exact=exact,
        table=quotient_table(params),
    )


def quadratic_T(tau: float, p: float, d: float) -> float:
    pbar2 = (1.0 - p) ** 2
    return tau * tau * (pbar2 - 4 * p) + tau * (4 * p - pbar2 * (d + 1)) + pbar2 * d - p


@dataclass(frozen=True)
class PeakSolution:
    tau_infinity: float
    branch: str  # "linear-special-case" or "quadratic-minus-root"
    discriminant: float
    alpha: float
    p: float
    d: float

    def to_dict(self) -> dict:
        return {
            "p": self.p,
            "d": self.d,
            "tau_infinity": self.tau_infinity,
            "branch": self.branch,
            "discriminant": self.discriminant,
            "alpha": self.alpha,
        }


def solve_tau_infinity(p: float, d: float) -> PeakSolution:
    """Limit of (m_peak + 1)/q as q grows with N + 1 = d q.

    The root of ``alpha t^2 - B t + c`` lying in [1/2, 1), where
    ``alpha = pbar^2 - 4p``, ``B = pbar^2 (d+1) - 4p`` and
    ``c = pbar^2 d - p``. That is always the ``(B - sqrt(D)) / (2 alpha)``
    root; it is evaluated as ``2c / (B + sqrt(D))`` when ``B > 0`` to avoid
    cancellation, and as ``c / B`` when ``alpha`` is negligible.
    """
    _check_open_p(p)
    if d < 0.5:
        raise ValueError(f"d must be >= 1/2, got {d}")
    pbar2 = (1.0 - p) ** 2
    alpha = pbar2 - 4 * p
    B = pbar2 * (d + 1) - 4 * p
    c = pbar2 * d - p
    D = B * B - 4 * alpha * c
    if abs(alpha) <= 1e-12 * max(pbar2, 4 * p):
        branch = "linear-special-case"
        tau = c / B
    else:
        branch = "quadratic-minus-root"
        root = sqrt(max(D, 0.0))
        tau = 2 * c / (B + root) if B > 0 else (B - root) / (2 * alpha)
    scale = max(abs(alpha), abs(B), abs(c), 1e-300)
    if not (0.5 - 1e-12 <= tau < 1.0) or abs(quadratic_T(tau, p, d)) > 1e-10 * scale:
        raise PeakConsistencyError(f"root {tau} for p={p}, d={d} fails the [1/2, 1) / T=0 check")
    return PeakSolution(max(tau, 0.5), branch, D, alpha, p, d)


@dataclass(frozen=True)
class BoundConstants:
    c1: float
    c2: float
    tau: float
    p: float
    d: float


def bound_constants(p: float, d: float, tau: float) -> BoundConstants:
    """Leading constants of the lower/upper bounds on log E[m] / m (natural log)."""
    _check_open_p(p)
    lead = 2.0 - 1.0 / tau
    c1 = (lead * log((1.0 - p) / tau) if lead else 0.0) + log(d) + (1.0 / tau - 1.0) * log(p)
    return BoundConstants(c1, c1 + 1.0 / tau, tau, p, d)


def sandwich_logs(params: BernoulliParams, m: int, simplified: bool = True) -> tuple[float, float, float]:
    """(log lower, log E, log upper) for the binomial-coefficient bounds on E[m].

    ``simplified=True`` gives ``N^(m+1) (p/q)^j (pbar/(m+1))^(2m+3-q)`` with
    ``j = q-m-2`` and the upper bound that times ``e^(q-1)``. With
    ``simplified=False`` the factor ``q^-j`` is replaced by ``j^-j``, which
    is what the bounds ``(n/k)^k <= C(n,k) <= (ne/k)^k`` give directly.
    """
    _check_open_p(params.p)
    if m not in support_range(params):
        raise ValueError(f"m={m} outside the support")
    N, q, p, pbar = params.N, params.q, params.p, params.pbar
    j, light = q - m - 2, 2 * m + 3 - q
    lower = (m + 1) * log(N) + light * log(pbar / (m + 1)) + j * log(p)
    if j:
        lower -= j * log(q if simplified else j)
    return lower, log_expected_betti(params, m), lower + (q - 1) * log(_E)


def sandwich_check(params: BernoulliParams, m: int, simplified: bool = True, rel_slack: float = 1e-9) -> bool:
    lo, mid, hi = sandwich_logs(params, m, simplified)
    slack = rel_slack * max(1.0, abs(mid))
    return lo <= mid + slack and mid <= hi + slack


class Region(str, Enum):
    BOTH_NEG = "BOTH_NEG"
    BOTH_POS = "BOTH_POS"
    MIXED = "MIXED"


@dataclass(frozen=True)
class RegionRow:
    p: float
    d: float
    tau_inf: float
    c1: float
    c2: float
    region: Region


def region_row(p: float, d: float) -> RegionRow:
    tau = solve_tau_infinity(p, d).tau_infinity
    bc = bound_constants(p, d, tau)
    if bc.c2 < 0:
        cls = Region.BOTH_NEG
    elif bc.c1 > 0:
        cls = Region.BOTH_POS
    else:
        cls = Region.MIXED
    return RegionRow(p, d, tau, bc.c1, bc.c2, cls)


def classify_region(p: float, d: float) -> Region:
    return region_row(p, d).region


REGION_HEADER = ("p", "d", "tau_inf", "c1", "c2", "class")


@dataclass(frozen=True)
class RegionReport:
    rows: tuple[RegionRow, ...]
    window: tuple[float, float, float, float]
    resolution: int

    def counts(self) -> dict[str, int]:
        out = {r.value: 0 for r in Region}
        for row in self.rows:
            out[row.region.value] += 1
        return out

    def write_csv(self, fh) -> None:
        w = csv.writer(fh, lineterminator="\n")
        w.writerow(REGION_HEADER)
        for r in self.rows:
            w.writerow([f"{r.p:.10g}", f"{r.d:.10g}", f"{r.tau_inf:.10g}", f"{r.c1:.10g}", f"{r.c2:.10g}", r.region.value])

    def to_csv(self) -> str:
        buf = io.StringIO()
        self.write_csv(buf)
        return buf.getvalue()


def _linspace(a: float, b: float, n: int) -> list[float]:
    return [a + (b - a) * i / (n - 1) for i in range(n)]


def region_grid(
    p_min: float = 0.01,
    p_max: float = 0.99,
    d_min: float = 0.51,
    d_max: float = 2.0,
    resolution: int = 200,
) -> RegionReport:
    """Classify a uniform resolution x resolution (p, d) grid; rows sorted by (d, p)."""
    if not 0.0 < p_min < p_max < 1.0:
        raise ValueError("need 0 < p_min < p_max < 1")
    if not 0.5 < d_min < d_max:
        raise ValueError("need 1/2 < d_min < d_max")
    if int(resolution) != resolution or resolution < 2:
        raise ValueError("resolution must be an integer >= 2")
    ps = _linspace(p_min, p_max, resolution)
    rows = tuple(region_row(p, d) for d in _linspace(d_min, d_max, resolution) for p in ps)
    return RegionReport(rows, (p_min, p_max, d_min, d_max), int(resolution))


@dataclass(frozen=True)
class ConvergenceRow:
    q: int
    N: int
    d_actual: float
    m_peak: int | None
    tau_peak: float | None
    tau_infinity: float
    gap: float | None


def peak_convergence_study(p: float, d: float, q_list: Iterable[int]) -> list[ConvergenceRow]:
    """Empirical peak location (m_peak + 1)/q against its large-q limit.

    ``N = round(d q) - 1``; the limit is evaluated at the realized
    ``d = (N + 1)/q`` and recorded alongside.
    """
    rows = []
    for q in sorted(int(x) for x in q_list):
        N = int(round(d * q)) - 1
        if N < 1 or q < 2:
            rows.append(ConvergenceRow(q, N, (N + 1) / q, None, None, float("nan"), None))
            continue
        params = BernoulliParams(N, q, p)
        d_act = params.d
        tau_inf = solve_tau_infinity(p, d_act).tau_infinity
        if not support_range(params):
            rows.append(ConvergenceRow(q, N, d_act, None, None, tau_inf, None))
            continue
        m_peak = check_unimodality(params).m_peak
        tau_peak = (m_peak + 1) / q
        rows.append(ConvergenceRow(q, N, d_act, m_peak, tau_peak, tau_inf, abs(tau_peak - tau_inf)))
    return rows
