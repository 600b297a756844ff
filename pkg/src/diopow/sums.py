"""Exponential sums over primes and powers of two, the tent kernel, and
moment/measure estimates for the power-of-two sum.

Evaluators accept a scalar or a 1-d numpy array of frequencies and are
deterministic: fixed summation order, fixed chunking.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from .arith import sieve_primes

TWO_PI = 2.0 * math.pi


@dataclass
class SumContext:
    """Shared evaluation ranges for one choice of X and eps.

    Primes p run over eps*X <= p <= X for the linear sum and
    eps*X <= p^2 <= X for the square sum. L is the number of powers of two,
    floor(log2(eps*X / (2M))) by default with M the sum of |mu_i|.
    """

    X: float
    eps: float
    mu_abs_sum: float
    L: int
    primes_linear: np.ndarray
    log_linear: np.ndarray
    primes_square: np.ndarray
    log_square: np.ndarray
    flags: list[str] = field(default_factory=list)

    @classmethod
    def build(cls, X: float, eps: float, mu_abs_sum: float,
              L: int | None = None, primes: np.ndarray | None = None) -> "SumContext":
        if not (0 < eps < 1):
            raise ValueError(f"eps must lie in (0, 1), got {eps}")
        if X <= 0:
            raise ValueError(f"X must be positive, got {X}")
        if mu_abs_sum <= 0:
            raise ValueError(f"mu_abs_sum must be positive, got {mu_abs_sum}")
        ratio = eps * X / (2.0 * mu_abs_sum)
        if L is None:
            if ratio <= 2.0:
                raise ValueError(
                    f"eps*X/(2M) = {ratio:.4g} <= 2: no room for even one power of two")
            L = int(math.floor(math.log2(ratio)))
        if primes is None:
            primes = sieve_primes(int(X))
        lo, hi = eps * X, X
        lin = primes[(primes >= lo) & (primes <= hi)].astype(np.float64)
        sq = primes[(primes * primes >= lo) & (primes * primes <= hi)].astype(np.float64)
        flags = []
        if len(lin) == 0:
            flags.append("linear prime range empty")
        if len(sq) == 0:
            flags.append("square prime range empty")
        return cls(X=float(X), eps=float(eps), mu_abs_sum=float(mu_abs_sum), L=int(L),
                   primes_linear=lin, log_linear=np.log(lin),
                   primes_square=sq, log_square=np.log(sq), flags=flags)


def _weighted_exp_sum(values: np.ndarray, weights: np.ndarray, alpha):
    """sum_j w_j e(values_j * alpha), chunked over alpha to bound memory."""
    a = np.atleast_1d(np.asarray(alpha, dtype=np.float64))
    scalar = np.ndim(alpha) == 0
    out = np.zeros(a.shape, dtype=np.complex128)
    if len(values):
        block = max(1, int(4_000_000 // max(len(values), 1)))
        for i in range(0, len(a), block):
            ph = np.mod(np.outer(a[i:i + block], values), 1.0)
            out[i:i + block] = np.exp(TWO_PI * 1j * ph) @ weights
    return complex(out[0]) if scalar else out


def eval_S1(alpha, ctx: SumContext):
    """Linear prime sum: sum of log p * e(p alpha) over eps X <= p <= X."""
    return _weighted_exp_sum(ctx.primes_linear, ctx.log_linear, alpha)


def eval_S2(alpha, ctx: SumContext):
    """Square prime sum: sum of log p * e(p^2 alpha) over eps X <= p^2 <= X."""
    return _weighted_exp_sum(ctx.primes_square * ctx.primes_square, ctx.log_square, alpha)


def eval_G(alpha, L: int):
    """Power-of-two sum: sum of e(2^m alpha) for m = 1..L.

    Phases are reduced mod 1 by repeated doubling of the fractional part,
    which is exact in binary floating point, so large m lose nothing
    beyond the representation of alpha itself.
    """
    if L < 0:
        raise ValueError(f"L must be nonnegative, got {L}")
    a = np.atleast_1d(np.asarray(alpha, dtype=np.float64))
    scalar = np.ndim(alpha) == 0
    t = np.mod(a, 1.0)
    out = np.zeros(a.shape, dtype=np.complex128)
    for _ in range(L):
        t = np.mod(2.0 * t, 1.0)
        out += np.exp(TWO_PI * 1j * t)
    return complex(out[0]) if scalar else out


def fejer_K(alpha, eta: float):
    """Squared-sinc kernel (sin(pi eta alpha) / (pi alpha))^2; value eta^2 at 0."""
    if eta <= 0:
        raise ValueError(f"eta must be positive, got {eta}")
    a = np.atleast_1d(np.asarray(alpha, dtype=np.float64))
    scalar = np.ndim(alpha) == 0
    out = np.empty(a.shape, dtype=np.float64)
    small = np.abs(a) < 1e-12
    out[small] = eta * eta
    an = a[~small]
    s = np.sin(math.pi * eta * an) / (math.pi * an)
    out[~small] = s * s
    return float(out[0]) if scalar else out


def k_hat(t, eta: float):
    """Fourier transform of the kernel: the tent max(0, eta - |t|)."""
    if eta <= 0:
        raise ValueError(f"eta must be positive, got {eta}")
    a = np.asarray(t, dtype=np.float64)
    out = np.maximum(0.0, eta - np.abs(a))
    return float(out) if np.ndim(t) == 0 else out


def moment_count_Nk(k: int, L: int) -> int:
    """Exact count of 2k-tuples with matching power-of-two sums:

        #{(m_1..m_k, n_1..n_k) in [1,L]^2k : sum 2^m = sum 2^n}

    via exact-integer value grouping; equals the 2k-th moment integral of
    the power-of-two sum over one period.
    """
    if k < 1 or L < 1:
        raise ValueError(f"need k >= 1 and L >= 1, got k={k}, L={L}")
    # iterative k-fold accumulation keeps this exact for any k
    counts = {0: 1}
    for _ in range(k):
        nxt: dict[int, int] = {}
        for v, c in counts.items():
            for m in range(1, L + 1):
                key = v + (1 << m)
                nxt[key] = nxt.get(key, 0) + c
        counts = nxt
    return sum(c * c for c in counts.values())


def moment_quadrature(k: int, L: int, points: int | None = None) -> float:
    """Rectangle rule for the [0, 1] integral of |G|^(2k).

    The integrand is a trigonometric polynomial with top frequency below
    k 2^(L+1); a midpoint rule with more points than that is exact up to
    rounding, so this doubles as an independent check of moment_count_Nk.
    """
    if k < 1 or L < 1:
        raise ValueError(f"need k >= 1 and L >= 1, got k={k}, L={L}")
    if points is None:
        points = 1 << (L + k + 3)
    if points <= k * (1 << (L + 1)):
        raise ValueError(f"{points} points cannot resolve frequency {k * (1 << (L + 1))}")
    al = (np.arange(points, dtype=np.float64) + 0.5) / points
    total = 0.0
    block = 1 << 20
    for i in range(0, points, block):
        g = eval_G(al[i:i + block], L)
        total += float(np.sum(np.abs(g) ** (2 * k)))
    return total / points


def markov_bound(nu: float, L: int, k: int) -> float:
    """Moment bound for the exceedance measure: N_k(L) / (nu L)^(2k)."""
    if not (0 < nu <= 1):
        raise ValueError(f"nu must lie in (0, 1], got {nu}")
    return moment_count_Nk(k, L) / float((nu * L) ** (2 * k))


@dataclass(frozen=True)
class MeasureEstimate:
    nu: float
    L: int
    resolution: int
    measure: float
    crossings: int
    refinement_depth: int
    markov_k: int
    markov_value: float


def measure_exceed(nu: float, L: int, resolution: int | None = None,
                   markov_k: int = 2, workers: int = 1) -> MeasureEstimate:
    """Estimated measure of {alpha in (0,1) : |G(alpha)| > nu L}.

    Uniform trapezoid grid of at least 2^(L+4) points with one bisection
    refinement pass at cells whose endpoints disagree. Deterministic for
    any worker count (workers only sizes the evaluation chunks).
    """
    if not (0 < nu <= 1):
        raise ValueError(f"nu must lie in (0, 1], got {nu}")
    if L < 1:
        raise ValueError(f"L must be >= 1, got {L}")
    floor_res = 1 << (L + 4)
    if resolution is None:
        resolution = floor_res
    if resolution < floor_res:
        raise ValueError(f"resolution {resolution} below floor 2^(L+4) = {floor_res}")

    thresh = nu * L
    n = int(resolution)
    h = 1.0 / n
    chunk = max(1 << 16, n // max(workers, 1) + 1)
    flags = np.empty(n + 1, dtype=bool)
    for i in range(0, n + 1, chunk):
        xs = np.arange(i, min(i + chunk, n + 1), dtype=np.float64) * h
        flags[i:i + len(xs)] = np.abs(eval_G(xs, L)) > thresh
    ind = flags.astype(np.float64)

    base_cells = 0.5 * (ind[:-1] + ind[1:])
    crossing = flags[:-1] != flags[1:]
    idx = np.nonzero(crossing)[0]
    if len(idx):
        mids = (idx + 0.5) * h
        mflag = (np.abs(eval_G(mids, L)) > thresh).astype(np.float64)
        base_cells[idx] = 0.25 * (ind[idx] + 2.0 * mflag + ind[idx + 1])
    measure = float(base_cells.sum() * h)
    return MeasureEstimate(nu=nu, L=L, resolution=n, measure=measure,
                           crossings=int(len(idx)), refinement_depth=1,
                           markov_k=markov_k,
                           markov_value=markov_bound(nu, L, markov_k))
