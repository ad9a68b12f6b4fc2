"""Cross-checks behind ``quota-betti verify``.

Each suite returns ``None`` on success or a string describing the first
counterexample. Suites are deterministic given the seed.
"""
from __future__ import annotations

import random
from dataclasses import dataclass
from typing import Callable

import numpy as np

from . import analysis, bernoulli, homology
from .core import QuotaSystem, betti_by_counting


@dataclass(frozen=True)
class Level:
    name: str
    systems: int
    max_vertices: int
    max_enum_n: int
    sandwich_n: int
    sandwich_q: int


LEVELS = {
    "quick": Level("quick", 60, 8, 9, 30, 20),
    "full": Level("full", 300, 10, 12, 60, 30),
}


def random_system(rng: random.Random, max_vertices: int) -> QuotaSystem:
    """Random integer system with a nonempty complex."""
    while True:
        n = rng.randint(1, max_vertices)
        ws = [rng.randint(1, 8) for _ in range(n)]
        q = rng.randint(2, 20)
        if min(ws) < q:
            return QuotaSystem(ws, q)


def check_boundary_squares(level: Level, seed: int) -> str | None:
    rng = random.Random(seed)
    for _ in range(max(10, level.systems // 4)):
        cx = homology.ExplicitComplex.from_quota_system(random_system(rng, level.max_vertices))
        for m in range(1, cx.dimension + 1):
            prod = homology.boundary_matrix(cx, m - 1) @ homology.boundary_matrix(cx, m)
            if np.any(prod):
                return f"∂∂ ≠ 0: ∂_{m - 1}·∂_{m} nonzero on complex with {cx.chain_dims()} faces"
    return None


def check_counting_vs_homology(level: Level, seed: int) -> str | None:
    rng = random.Random(seed + 1)
    for _ in range(level.systems):
        s = random_system(rng, level.max_vertices)
        fast = betti_by_counting(s)
        slow = homology.reduced_betti(homology.ExplicitComplex.from_quota_system(s))
        if fast != slow:
            return (f"counting {fast.to_list()} != homology {slow.to_list()} "
                    f"for weights {[int(w) for w in s.weights]}, q={s.quota}")
    return None


def check_formula_vs_enumeration(level: Level, seed: int) -> str | None:
    for N in range(1, level.max_enum_n + 1):
        for q in range(3, N + 2):
            for p in (0.1, 0.3, 0.5, 0.7, 0.9):
                params = bernoulli.BernoulliParams(N, q, p)
                for m in range(0, q):
                    a = bernoulli.expected_betti(params, m)
                    b = bernoulli.exact_expectation_by_enumeration(params, m)
                    if abs(a - b) > 1e-12 * max(1.0, abs(b)):
                        return f"closed form {a!r} != enumeration {b!r} at N={N}, q={q}, p={p}, m={m}"
    return None


def check_quotients(level: Level, seed: int) -> str | None:
    for q in (9, 21, 41):
        for d in (0.75, 1.0, 1.5):
            N = int(round(d * q)) - 1
            for p in (0.2, 0.5, 0.8):
                params = bernoulli.BernoulliParams(N, q, p)
                sup = bernoulli.support_range(params)
                for m in sup:
                    if m - 1 not in sup:
                        continue
                    m1 = analysis.forward_quotient_1(params, m)
                    lr = bernoulli.log_expected_betti(params, m) - bernoulli.log_expected_betti(params, m - 1)
                    ratio = float(np.exp(lr))
                    if abs(m1 - ratio) > 1e-10 * ratio:
                        return f"M1 {m1!r} != E ratio {ratio!r} at {params}, m={m}"
                    if m - 2 in sup:
                        m2 = analysis.forward_quotient_2(params, m)
                        if not m2 < 1:
                            return f"M2 = {m2!r} >= 1 at {params}, m={m}"
                        prev = analysis.forward_quotient_1(params, m - 1)
                        if abs(m2 * prev - m1) > 1e-12 * abs(m1):
                            return f"M2*M1(m-1) != M1(m) at {params}, m={m}"
    return None


def check_sandwich(level: Level, seed: int) -> str | None:
    # the unsimplified binomial bounds; see analysis.sandwich_logs
    for N in range(1, level.sandwich_n + 1):
        for q in range(2, level.sandwich_q + 1):
            for p in (0.2, 0.5, 0.8):
                params = bernoulli.BernoulliParams(N, q, p)
                for m in bernoulli.support_range(params):
                    if not analysis.sandwich_check(params, m, simplified=False):
                        return f"binomial sandwich fails at {params}, m={m}: {analysis.sandwich_logs(params, m, False)}"
    return None


def check_tau_roots(level: Level, seed: int) -> str | None:
    for i in range(50):
        p = 0.01 + 0.98 * i / 49
        for j in range(50):
            d = 0.51 + 1.49 * j / 49
            try:
                sol = analysis.solve_tau_infinity(p, d)
            except analysis.PeakConsistencyError as exc:
                return str(exc)
            if abs(analysis.quadratic_T(sol.tau_infinity, p, d)) > 1e-10:
                return f"T(tau_inf) != 0 at p={p}, d={d}"
    return None


SUITES: list[tuple[str, Callable[[Level, int], str | None]]] = [
    ("boundary ∂∂ = 0", check_boundary_squares),
    ("counting vs homology oracle", check_counting_vs_homology),
    ("closed form vs enumeration", check_formula_vs_enumeration),
    ("forward quotient identities", check_quotients),
    ("binomial sandwich bounds", check_sandwich),
    ("tau_inf root checks", check_tau_roots),
]


def simplified_sandwich_violations(n_max: int = 60, q_max: int = 30) -> tuple[int, int]:
    """(violations, cases) of the simplified upper bound over the grid."""
    bad = total = 0
    for N in range(1, n_max + 1):
        for q in range(2, q_max + 1):
            for p in (0.2, 0.5, 0.8):
                params = bernoulli.BernoulliParams(N, q, p)
                for m in bernoulli.support_range(params):
                    total += 1
                    bad += not analysis.sandwich_check(params, m, simplified=True)
    return bad, total


def run(level: str = "quick", seed: int = 0, emit=print) -> bool:
    lv = LEVELS[level]
    for name, suite in SUITES:
        problem = suite(lv, seed)
        if problem is not None:
            emit(f"FAIL  {name}: {problem}")
            return False
        emit(f"ok    {name}")
    bad, total = simplified_sandwich_violations(lv.sandwich_n, lv.sandwich_q)
    emit(f"note  simplified upper sandwich bound violated in {bad}/{total} cases (q^-j in place of j^-j)")
    return True
