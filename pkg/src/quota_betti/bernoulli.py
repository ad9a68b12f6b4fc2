"""The Bernoulli random quota model.

Vertex 0 has weight 1; vertices 1..N independently get weight 2 with
probability ``p`` and weight 1 otherwise. With an integer quota ``q`` the
reduced Betti number in dimension ``m`` counts the ``(m+1)``-subsets of the
random vertices whose weight is exactly ``q - 1``.
"""
from __future__ import annotations

import os
import secrets
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from math import comb, exp, fsum, lgamma, log, sqrt

import numpy as np

from .core import QuotaSystem

RNG_ALGORITHM = "numpy.Philox4x64-10 via SeedSequence.spawn"
CHUNK_TRIALS = 1 << 16
MAX_ENUMERATION_N = 20
_DIRECT_LIMIT = 1 << 900
_TINY = 1e-290


class EnumerationTooLarge(RuntimeError):
    pass


@dataclass(frozen=True)
class BernoulliParams:
    N: int
    q: int
    p: float

    def __post_init__(self) -> None:
        if int(self.N) != self.N or self.N < 1:
            raise ValueError(f"N must be a positive integer, got {self.N}")
        if int(self.q) != self.q or self.q < 2:
            raise ValueError(f"q must be an integer >= 2, got {self.q}")
        if not 0.0 <= self.p <= 1.0:
            raise ValueError(f"p must lie in [0, 1], got {self.p}")
        object.__setattr__(self, "N", int(self.N))
        object.__setattr__(self, "q", int(self.q))
        object.__setattr__(self, "p", float(self.p))

    @property
    def d(self) -> float:
        return (self.N + 1) / self.q

    @property
    def pbar(self) -> float:
        return 1.0 - self.p


def sample_weights(params: BernoulliParams, seed) -> QuotaSystem:
    rng = np.random.Generator(np.random.Philox(seed))
    heavy = rng.random(params.N) < params.p
    return QuotaSystem([1] + [2 if h else 1 for h in heavy], params.q)


def support_range(params: BernoulliParams) -> range:
    """Dimensions m with (q-1)/2 <= m+1 < q and m+1 <= N."""
    return range(params.q // 2 - 1, min(params.q - 2, params.N - 1) + 1)


def _exponents(params: BernoulliParams, m: int) -> tuple[int, int]:
    # number of weight-2 vertices, number of weight-1 vertices in a qualifying face
    return params.q - m - 2, 2 * m + 3 - params.q


def log_expected_betti(params: BernoulliParams, m: int) -> float:
    """Natural log of the closed-form expectation; ``-inf`` where it is 0."""
    if m not in support_range(params):
        return float("-inf")
    heavy, light = _exponents(params, m)
    p, pbar = params.p, params.pbar
    if (heavy and p == 0.0) or (light and pbar == 0.0):
        return float("-inf")
    N, k = params.N, m + 1
    out = lgamma(N + 1) - lgamma(N - k + 1) - lgamma(heavy + 1) - lgamma(light + 1)
    if heavy:
        out += heavy * log(p)
    if light:
        out += light * log(pbar)
    return out


def expected_betti(params: BernoulliParams, m: int) -> float:
    """C(N, m+1) C(m+1, q-m-2) p^(q-m-2) (1-p)^(2m+3-q).

    The binomial prefactor is taken exactly while it fits comfortably in a
    double; otherwise the whole product is formed in log space with
    log-gamma. Returns ``inf`` past the float range.
    """
    if m not in support_range(params):
        return 0.0
    heavy, light = _exponents(params, m)
    if (heavy and params.p == 0.0) or (light and params.pbar == 0.0):
        return 0.0  # with 0**0 == 1 the other cases stay positive
    prefactor = comb(params.N, m + 1) * comb(m + 1, heavy)
    if prefactor < _DIRECT_LIMIT:
        power = params.p**heavy * params.pbar**light
        if power >= _TINY:
            return prefactor * power
    lv = log_expected_betti(params, m)
    if lv == float("-inf"):
        return 0.0
    try:
        return exp(lv)
    except OverflowError:
        return float("inf")


def expected_betti_exact(params: BernoulliParams, m: int, p=None) -> Fraction:
    """Same closed form in exact rational arithmetic.

    ``p`` defaults to the exact binary value of ``params.p``.
    """
    if m not in support_range(params):
        return Fraction(0)
    p = Fraction(params.p) if p is None else Fraction(p)
    heavy, light = _exponents(params, m)
    return comb(params.N, m + 1) * comb(m + 1, heavy) * p**heavy * (1 - p) ** light


def subset_count(N: int, q: int, m: int, k: int) -> int:
    """(m+1)-subsets of N random vertices, k of them heavy, with weight q-1."""
    heavy = q - m - 2
    light = m + 1 - heavy
    if heavy < 0 or light < 0 or k < 0 or k > N:
        return 0
    return comb(k, heavy) * comb(N - k, light)


@lru_cache(maxsize=None)
def _popcounts(N: int) -> np.ndarray:
    idx = np.arange(1 << N, dtype=np.int64)
    k = np.zeros(1 << N, dtype=np.int64)
    for bit in range(N):
        k += (idx >> bit) & 1
    return k


def exact_expectation_by_enumeration(params: BernoulliParams, m: int) -> float:
    """Average the realized Betti number over all 2^N weight outcomes."""
    N = params.N
    if N > MAX_ENUMERATION_N:
        raise EnumerationTooLarge(f"2^{N} outcomes exceeds the enumeration limit 2^{MAX_ENUMERATION_N}")
    k = _popcounts(N)
    counts = np.array([subset_count(N, params.q, m, kk) for kk in range(N + 1)], dtype=float)
    prob = np.power(params.p, k) * np.power(params.pbar, N - k)
    return fsum((prob * counts[k]).tolist())


@dataclass(frozen=True)
class McEstimate:
    mean: float
    std_error: float
    trials: int
    seed: int
    params: BernoulliParams | None = None
    m: int | None = None
    rng_algorithm: str = RNG_ALGORITHM
    chunk_trials: int = CHUNK_TRIALS

    def to_dict(self) -> dict:
        out = {}
        if self.params is not None:
            out.update(N=self.params.N, q=self.params.q, p=self.params.p)
        out.update(
            m=self.m,
            trials=self.trials,
            seed=self.seed,
            mean=self.mean,
            std_error=self.std_error,
            rng_algorithm=self.rng_algorithm,
            chunk_trials=self.chunk_trials,
        )
        return out


def _thread_cap() -> int:
    try:
        return max(1, int(os.environ.get("QUOTA_BETTI_THREADS", "1")))
    except ValueError:
        return 1


def monte_carlo_expectation(
    params: BernoulliParams,
    m: int,
    trials: int,
    seed: int | None = None,
    workers: int | None = None,
) -> McEstimate:
    """Monte Carlo estimate of the expected Betti number in dimension m.

    Trials are split into fixed chunks of ``CHUNK_TRIALS``; chunk ``i`` draws
    from the ``i``-th child of ``SeedSequence(seed)``, so the result depends
    only on ``(params, m, trials, seed)`` and not on ``workers``.
    """
    if trials < 1:
        raise ValueError("trials must be >= 1")
    if seed is None:
        seed = secrets.randbits(63)
    table = np.array([float(subset_count(params.N, params.q, m, k)) for k in range(params.N + 1)])
    sizes = [CHUNK_TRIALS] * (trials // CHUNK_TRIALS)
    if trials % CHUNK_TRIALS:
        sizes.append(trials % CHUNK_TRIALS)
    children = np.random.SeedSequence(seed).spawn(len(sizes))

    def run(i: int) -> tuple[int, float, float]:
        rng = np.random.Generator(np.random.Philox(children[i]))
        x = table[rng.binomial(params.N, params.p, size=sizes[i])]
        mu = float(x.mean())
        return sizes[i], mu, float(((x - mu) ** 2).sum())

    workers = min(workers or _thread_cap(), len(sizes))
    if workers > 1:
        with ThreadPoolExecutor(workers) as pool:
            parts = list(pool.map(run, range(len(sizes))))
    else:
        parts = [run(i) for i in range(len(sizes))]

    # pairwise merge of (count, mean, sum of squared deviations), in chunk order
    n, mean, m2 = 0, 0.0, 0.0
    for nb, mb, m2b in parts:
        tot = n + nb
        delta = mb - mean
        mean += delta * nb / tot
        m2 += m2b + delta * delta * n * nb / tot
        n = tot
    stderr = sqrt(m2 / (n - 1) / n) if n > 1 else 0.0
    return McEstimate(mean=mean, std_error=stderr, trials=trials, seed=int(seed), params=params, m=m)
