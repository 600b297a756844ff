"""Arc dissection, archimedean profiles, quadrature of the weighted
integral, the tent-form main-term integral, and Selberg-type variance
integrals.

Quadrature is composite Gauss-Legendre on fixed panels, evaluated twice
(half and full panel count); the declared panel error is the difference
between the two levels. Truncation to |alpha| <= A carries the explicit
worst-case tail bound of the kernel.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np
from scipy.special import fresnel

from fractions import Fraction

from .arith import sieve_primes
from .hp import HPReal, hp, hp_log
from .s0 import CoefficientSystem
from .sums import SumContext, eval_G, eval_S1, eval_S2, fejer_K

TWO_PI = 2.0 * math.pi


# -- dissection --------------------------------------------------------


@dataclass(frozen=True)
class ArcDissection:
    """Partition of the line into central, intermediate, and outer pieces
    by |alpha|, with high-precision boundary values."""

    X: float
    L: int
    P: HPReal            # X^(2/5) / log X
    major_bound: HPReal  # P / X
    minor_bound: int     # L^2; beyond lies the outer (trivial) region

    def classify(self, alpha: float) -> str:
        a = abs(alpha)
        if a <= float(self.major_bound):
            return "major"
        if a <= self.minor_bound:
            return "minor"
        return "trivial"


def dissect(X: float, L: int) -> ArcDissection:
    if X <= 1:
        raise ValueError(f"X must exceed 1, got {X}")
    if L < 1:
        raise ValueError(f"L must be >= 1, got {L}")
    hx = hp(X)
    P = hx ** Fraction(2, 5) / hp_log(hx)
    major = P / hx
    minor = L * L
    if not (major < minor):
        raise ValueError(f"degenerate dissection: P/X = {float(major)} >= L^2 = {minor}")
    return ArcDissection(X=float(X), L=int(L), P=P, major_bound=major, minor_bound=minor)


# -- archimedean profiles ---------------------------------------------


def eval_T1(alpha, X: float, eps: float):
    """Integral of e(t alpha) over eps X <= t <= X, in closed form."""
    a = np.atleast_1d(np.asarray(alpha, dtype=np.float64))
    scalar = np.ndim(alpha) == 0
    out = np.empty(a.shape, dtype=np.complex128)
    zero = a == 0.0
    out[zero] = X * (1.0 - eps)
    az = a[~zero]
    out[~zero] = (np.exp(TWO_PI * 1j * az * X) - np.exp(TWO_PI * 1j * az * (eps * X))) \
        / (TWO_PI * 1j * az)
    return complex(out[0]) if scalar else out


def eval_T2(alpha, X: float, eps: float):
    """Integral of e(t^2 alpha) over sqrt(eps X) <= t <= sqrt(X).

    Evaluated through Fresnel integrals (exact closed form of the
    half-power representation), so fast oscillation costs nothing.
    """
    a = np.atleast_1d(np.asarray(alpha, dtype=np.float64))
    scalar = np.ndim(alpha) == 0
    lo, hi = math.sqrt(eps * X), math.sqrt(X)
    out = np.empty(a.shape, dtype=np.complex128)
    zero = a == 0.0
    out[zero] = hi - lo
    az = a[~zero]
    sign = np.sign(az)
    r = np.sqrt(np.abs(az))
    s_hi, c_hi = fresnel(2.0 * r * hi)
    s_lo, c_lo = fresnel(2.0 * r * lo)
    val = ((c_hi - c_lo) + 1j * (s_hi - s_lo)) / (2.0 * r)
    out[~zero] = np.where(sign > 0, val, np.conj(val))
    return complex(out[0]) if scalar else out


def eval_T2_quadrature(alpha: float, X: float, eps: float, n: int = 20000) -> complex:
    """Direct quadrature of the half-power form (cross-check route):

        (1/2) * integral of v^(-1/2) e(v alpha) dv over [eps X, X]

    Plain midpoint rule; only trustworthy while X |alpha| stays small.
    """
    v = np.linspace(eps * X, X, n + 1)
    mid = 0.5 * (v[:-1] + v[1:])
    w = np.diff(v)
    vals = 0.5 * mid ** -0.5 * np.exp(TWO_PI * 1j * alpha * mid)
    return complex(np.sum(vals * w))


def eval_U1(alpha, X: float, eps: float):
    """Geometric sum of e(n alpha) over integers eps X <= n <= X."""
    n0 = math.ceil(eps * X)
    n1 = math.floor(X)
    count = n1 - n0 + 1
    if count <= 0:
        return 0.0j if np.ndim(alpha) == 0 else np.zeros(np.shape(alpha), np.complex128)
    a = np.atleast_1d(np.asarray(alpha, dtype=np.float64))
    scalar = np.ndim(alpha) == 0
    # e(alpha n) for integer n only sees the fractional part of alpha
    d = a - np.round(a)
    out = np.empty(a.shape, dtype=np.complex128)
    zero = d == 0.0
    out[zero] = count
    dz = d[~zero]
    q = np.exp(TWO_PI * 1j * dz)
    out[~zero] = np.exp(TWO_PI * 1j * dz * n0) * (np.exp(TWO_PI * 1j * dz * count) - 1.0) / (q - 1.0)
    return complex(out[0]) if scalar else out


def eval_U2(alpha, X: float, eps: float):
    """Sum of e(n^2 alpha) over integers sqrt(eps X) <= n <= sqrt(X)."""
    n0 = math.ceil(math.sqrt(eps * X))
    n1 = math.floor(math.sqrt(X))
    if n1 < n0:
        return 0.0j if np.ndim(alpha) == 0 else np.zeros(np.shape(alpha), np.complex128)
    ns = np.arange(n0, n1 + 1, dtype=np.float64)
    a = np.atleast_1d(np.asarray(alpha, dtype=np.float64))
    scalar = np.ndim(alpha) == 0
    ph = np.mod(np.outer(a, ns * ns), 1.0)
    out = np.exp(TWO_PI * 1j * ph).sum(axis=1)
    return complex(out[0]) if scalar else out


# -- quadrature engine -------------------------------------------------


@dataclass(frozen=True)
class QuadratureSpec:
    """Fixed-panel composite Gauss-Legendre configuration.

    truncation: half-width A of the integration range on the line.
    order: nodes per panel. panels_per_unit: density; pick with
    panels_for_frequency so the fastest oscillation is resolved.
    """

    truncation: float = 1000.0
    order: int = 16
    panels_per_unit: float = 64.0

    def panel_count(self, a: float, b: float) -> int:
        return max(1, int(math.ceil((b - a) * self.panels_per_unit)))


def panels_for_frequency(f_max: float, order: int = 16, safety: float = 1.2) -> float:
    """Panel density (per unit alpha) resolving frequency f_max at the
    given order; calibrated so phase advance per panel stays within the
    rule's exactness window."""
    return max(4.0, TWO_PI * f_max / (safety * 2.0 * order))


@dataclass(frozen=True)
class IntegralResult:
    value: float
    panel_error: float
    tail_bound: float
    nodes: int

    @property
    def declared_error(self) -> float:
        return self.panel_error + self.tail_bound


def _gl_sum(f, a: float, b: float, panels: int, order: int) -> float:
    x, w = np.polynomial.legendre.leggauss(order)
    edges = np.linspace(a, b, panels + 1)
    mids = 0.5 * (edges[:-1] + edges[1:])
    half = 0.5 * (b - a) / panels
    nodes = (mids[:, None] + half * x[None, :]).ravel()
    wts = np.tile(w * half, panels)
    total = 0.0
    block = 1 << 17
    for i in range(0, len(nodes), block):
        total += float(np.real(np.dot(f(nodes[i:i + block]), wts[i:i + block])))
    return total


def integrate_interval(f, a: float, b: float, spec: QuadratureSpec) -> IntegralResult:
    """Two-level composite Gauss-Legendre of Re f over [a, b]."""
    if b <= a:
        return IntegralResult(0.0, 0.0, 0.0, 0)
    panels = spec.panel_count(a, b)
    coarse_panels = max(1, panels // 2)
    fine = _gl_sum(f, a, b, panels, spec.order)
    coarse = _gl_sum(f, a, b, coarse_panels, spec.order)
    return IntegralResult(value=fine, panel_error=abs(fine - coarse), tail_bound=0.0,
                          nodes=(panels + coarse_panels) * spec.order)


# -- the weighted integral over arcs ----------------------------------


def integrand(alpha, system: CoefficientSystem, ctx: SumContext, s: int):
    """Pointwise product: linear prime sum at l1 alpha, square prime sums
    at l2 alpha and l3 alpha, one power-of-two sum per mu, the shift
    phase, and the kernel."""
    if s < 0:
        raise ValueError(f"s must be >= 0, got {s}")
    l1, l2, l3 = (float(v) for v in system.lambdas)
    mus = [float(m) for m in system.mus(s)]
    varpi = float(system.varpi)
    eta = float(system.eta)
    a = np.atleast_1d(np.asarray(alpha, dtype=np.float64))
    scalar = np.ndim(alpha) == 0
    out = eval_S1(l1 * a, ctx) * eval_S2(l2 * a, ctx) * eval_S2(l3 * a, ctx)
    for m in mus:
        out = out * eval_G(m * a, ctx.L)
    if varpi != 0.0:
        out = out * np.exp(TWO_PI * 1j * np.mod(varpi * a, 1.0))
    out = out * fejer_K(a, eta)
    return complex(out[0]) if scalar else out


def default_spec(system: CoefficientSystem, ctx: SumContext, s: int,
                 truncation: float = 1000.0, order: int = 16) -> QuadratureSpec:
    """Panel density matched to the largest frequency in the expanded
    integrand: |l1| X + (|l2| + |l3|) X + eps X / 2 + |varpi|, plus the
    kernel's own 2 eta."""
    l1, l2, l3 = (abs(float(v)) for v in system.lambdas)
    f_max = (l1 + l2 + l3) * ctx.X + 0.5 * ctx.eps * ctx.X + abs(float(system.varpi)) \
        + 2.0 * float(system.eta)
    return QuadratureSpec(truncation=truncation, order=order,
                          panels_per_unit=panels_for_frequency(f_max, order))


def tail_bound_beyond(A: float, ctx: SumContext, s: int) -> float:
    """Worst case for the discarded |alpha| > A mass: the prime sums at 0,
    L per power-of-two factor, and the kernel tail 2/(pi^2 A)."""
    if A <= 0:
        raise ValueError(f"A must be positive, got {A}")
    s1_0 = float(ctx.log_linear.sum())
    s2_0 = float(ctx.log_square.sum())
    return float(ctx.L) ** s * s1_0 * s2_0 ** 2 * 2.0 / (math.pi ** 2 * A)


def integrate_region(system: CoefficientSystem, ctx: SumContext, s: int,
                     a: float, b: float, spec: QuadratureSpec) -> IntegralResult:
    """Integral of the weighted product over the symmetric pair
    a <= |alpha| <= b (real by conjugate symmetry)."""
    f = lambda al: 2.0 * np.real(integrand(al, system, ctx, s))
    return integrate_interval(f, a, b, spec)


def region_bounds(name: str, dis: ArcDissection, spec: QuadratureSpec) -> tuple[float, float]:
    """(lo, hi) in |alpha| for a named region; the outer region is cut at
    the truncation A."""
    if name == "major":
        return 0.0, float(dis.major_bound)
    if name == "minor":
        return float(dis.major_bound), float(dis.minor_bound)
    if name == "trivial":
        return float(dis.minor_bound), spec.truncation
    if name == "all":
        return 0.0, spec.truncation
    raise ValueError(f"unknown region {name!r}")


def integrate_named(system: CoefficientSystem, ctx: SumContext, s: int,
                    name: str, dis: ArcDissection, spec: QuadratureSpec) -> IntegralResult:
    lo, hi = region_bounds(name, dis, spec)
    return integrate_region(system, ctx, s, lo, hi, spec)


def master_integral(system: CoefficientSystem, ctx: SumContext, s: int,
                    spec: QuadratureSpec) -> IntegralResult:
    """The full-line weighted integral, truncated at |alpha| <= A with the
    explicit tail bound added to the declared error."""
    if spec.truncation < ctx.L ** 2:
        raise ValueError(f"truncation {spec.truncation} below L^2 = {ctx.L ** 2}")
    res = integrate_region(system, ctx, s, 0.0, spec.truncation, spec)
    return IntegralResult(value=res.value, panel_error=res.panel_error,
                          tail_bound=tail_bound_beyond(spec.truncation, ctx, s),
                          nodes=res.nodes)


def kernel_transform(t: float, eta: float, spec: QuadratureSpec) -> IntegralResult:
    """Quadrature of the kernel against e(t alpha) over |alpha| <= A;
    approaches the tent max(0, eta - |t|) as A grows."""
    f = lambda al: 2.0 * fejer_K(al, eta) * np.cos(TWO_PI * t * al)
    res = integrate_interval(f, 0.0, spec.truncation, spec)
    return IntegralResult(value=res.value, panel_error=res.panel_error,
                          tail_bound=2.0 / (math.pi ** 2 * spec.truncation),
                          nodes=res.nodes)


# -- tent-form main term ----------------------------------------------


def _tent_antiderivative(t, eta: float):
    """Integral of the tent from -infinity to t, piecewise closed form."""
    t = np.atleast_1d(np.asarray(t, dtype=np.float64))
    out = np.empty(t.shape, dtype=np.float64)
    e2 = eta * eta
    below = t <= -eta
    above = t >= eta
    neg = (~below) & (t <= 0.0)
    pos = (~above) & (t > 0.0)
    out[below] = 0.0
    out[neg] = 0.5 * (t[neg] + eta) ** 2
    out[pos] = e2 - 0.5 * (eta - t[pos]) ** 2
    out[above] = e2
    return out


def script_J(u: float, system: CoefficientSystem, X: float, eps: float,
             resolution: int = 1024) -> IntegralResult:
    """Main-term integral in tent form.

    After substituting squares for the two half-power variables, the inner
    linear variable integrates the tent in closed form and a smooth 2-d
    midpoint rule over [sqrt(eps X), sqrt(X)]^2 remains. Two resolutions
    give the declared error.
    """
    l1, l2, l3 = (float(v) for v in system.lambdas)
    if not (l1 < 0):
        raise ValueError("canonical systems with negative first coefficient only")
    eta = float(system.eta)

    def level(res: int) -> float:
        lo, hi = math.sqrt(eps * X), math.sqrt(X)
        vs = lo + (np.arange(res) + 0.5) * (hi - lo) / res
        w = (hi - lo) / res
        v2 = vs[:, None] ** 2
        v3 = vs[None, :] ** 2
        c = l2 * v2 + l3 * v3 + u
        t_hi = l1 * eps * X + c
        t_lo = l1 * X + c
        inner = (_tent_antiderivative(t_hi, eta) - _tent_antiderivative(t_lo, eta)) / abs(l1)
        return float(inner.sum() * w * w)

    fine = level(resolution)
    coarse = level(max(8, resolution // 2))
    return IntegralResult(value=fine, panel_error=abs(fine - coarse),
                          tail_bound=0.0, nodes=resolution * resolution)


def script_J_lower_bound(system: CoefficientSystem, X: float) -> float:
    """(3 - 2 sqrt 2) eta^2 X / (4 (|l1| + l2 + l3)), valid for small |u|."""
    l1, l2, l3 = (float(v) for v in system.lambdas)
    eta = float(system.eta)
    return (3.0 - 2.0 * math.sqrt(2.0)) * eta * eta * X / (4.0 * (abs(l1) + abs(l2) + abs(l3)))


# -- Selberg-type variance integrals ----------------------------------


def _theta_at(ts: np.ndarray, primes: np.ndarray, cumlog: np.ndarray) -> np.ndarray:
    idx = np.searchsorted(primes, ts, side="right")
    return np.where(idx > 0, cumlog[np.maximum(idx - 1, 0)], 0.0)


def selberg_J(X: float, h: float, eps: float, primes: np.ndarray | None = None) -> float:
    """Variance integral of the prime-count increment:

        integral over eps X <= x <= X of (theta(x+h) - theta(x) - h)^2

    The integrand is constant between breakpoints {p} and {p - h}, so the
    sum over cells is exact up to rounding.
    """
    if not (0 < eps < 1) or X <= 2 or h <= 0:
        raise ValueError("need X > 2, h > 0, eps in (0, 1)")
    if primes is None:
        primes = sieve_primes(int(X + h) + 1)
    ps = primes.astype(np.float64)
    cumlog = np.cumsum(np.log(ps))
    lo, hi = eps * X, X
    bp = np.concatenate((ps, ps - h, [lo, hi]))
    bp = np.unique(bp[(bp >= lo) & (bp <= hi)])
    mids = 0.5 * (bp[:-1] + bp[1:])
    widths = np.diff(bp)
    dev = _theta_at(mids + h, ps, cumlog) - _theta_at(mids, ps, cumlog) - h
    return float(np.sum(widths * dev * dev))


def selberg_Jstar(X: float, h: float, eps: float, primes: np.ndarray | None = None,
                  order: int = 12) -> float:
    """Square-root variant: increments of theta(sqrt x) against
    sqrt(x+h) - sqrt(x). Piecewise smooth between breakpoints {p^2} and
    {p^2 - h}; each cell is integrated with a Gauss rule of the given
    order (the integrand is analytic inside a cell)."""
    if not (0 < eps < 1) or X <= 4 or h <= 0:
        raise ValueError("need X > 4, h > 0, eps in (0, 1)")
    if primes is None:
        primes = sieve_primes(int(math.isqrt(int(X + h))) + 2)
    ps = primes.astype(np.float64)
    cumlog = np.cumsum(np.log(ps))
    lo, hi = eps * X, X
    sq = ps * ps
    bp = np.concatenate((sq, sq - h, [lo, hi]))
    bp = np.unique(bp[(bp >= lo) & (bp <= hi)])
    x, w = np.polynomial.legendre.leggauss(order)
    mids = 0.5 * (bp[:-1] + bp[1:])
    halves = 0.5 * np.diff(bp)
    nodes = mids[:, None] + halves[:, None] * x[None, :]
    wts = halves[:, None] * w[None, :]
    dev = (_theta_at(np.sqrt(nodes + h), ps, cumlog) - _theta_at(np.sqrt(nodes), ps, cumlog)
           - (np.sqrt(nodes + h) - np.sqrt(nodes)))
    return float(np.sum(wts * dev * dev))
