"""Quadrature, special-function, and transform primitives.

Circle integrals are normalized means (1/2pi) int f(phi) dphi.  Two engines:
the periodic trapezoid rule (spectrally accurate for smooth periodic
integrands) and panelized Gauss-Legendre with dyadically refined panels
accumulating at phi = 0, for integrands with a peak of angular width
~ peak_scale there.  Half-line integrals int_0^tau g(x) dx use log-spaced
panels over [0,1] u [1,tau]; callers supply extra breakpoints for kinks.

The Gauss hypergeometric evaluator targets nonpositive real arguments only:
the Pfaff transform x -> x/(x-1) maps (-inf, 0] onto [0, 1) and the series is
summed there.  That is the exact shape needed by the closed-form spherical
function, whose transformed argument is r^2.
"""

from __future__ import annotations

import math
import os
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from functools import lru_cache
from typing import Callable, Iterable, Sequence

import numpy as np
from scipy.special import roots_legendre

from .errors import MaxTerms, NonConvergence, SlowConvergence, StencilOutOfDomain
from .geometry import ensure_disk

__all__ = [
    "QuadratureSpec",
    "DEFAULT_SPEC",
    "integrate_circle",
    "integrate_panels",
    "integrate_halfline_peak",
    "gauss_2f1",
    "gauss_2f1_many",
    "fd_laplacian",
    "circle_fft",
    "fourier_mode",
]

_TRAPEZOID_START = 64
_TRAPEZOID_CAP = 1 << 20
_PEAK_THRESHOLD = 0.05


@dataclass(frozen=True)
class QuadratureSpec:
    """Accuracy/effort knobs shared by the quadrature engines.

    panel_order: Gauss-Legendre nodes per panel (>= 4).
    peak_scale:  angular width of the integrand's peak at phi = 0; values
                 below 0.05 switch the circle engine to refined panels.
    abs_tol / rel_tol: stabilization targets under node doubling.
    """

    panel_order: int = 16
    peak_scale: float = 1.0
    abs_tol: float = 1e-12
    rel_tol: float = 1e-11

    def __post_init__(self):
        if self.panel_order < 4:
            raise ValueError(f"panel_order must be >= 4, got {self.panel_order}")
        if not (self.abs_tol > 0 and self.rel_tol > 0):
            raise ValueError("tolerances must be positive")
        if not self.peak_scale > 0:
            raise ValueError("peak_scale must be positive")

    def with_peak(self, peak_scale: float) -> "QuadratureSpec":
        return QuadratureSpec(self.panel_order, peak_scale, self.abs_tol, self.rel_tol)


DEFAULT_SPEC = QuadratureSpec()


@lru_cache(maxsize=64)
def _gl_nodes(order: int):
    x, w = roots_legendre(order)
    return x.copy(), w.copy()


def _stable(new: complex, old: complex, spec: QuadratureSpec) -> bool:
    return abs(new - old) <= max(spec.abs_tol, spec.rel_tol * abs(new))


def integrate_panels(f: Callable, edges: Sequence[float], order: int) -> complex:
    """Composite Gauss-Legendre integral of f over consecutive [edges] panels."""
    x, w = _gl_nodes(order)
    e = np.asarray(edges, dtype=float)
    a, b = e[:-1], e[1:]
    half = 0.5 * (b - a)
    mid = 0.5 * (a + b)
    nodes = (mid[:, None] + half[:, None] * x[None, :]).ravel()
    vals = np.asarray(f(nodes), dtype=complex).reshape(len(a), len(x))
    return complex(np.sum(vals * (half[:, None] * w[None, :])))


def _refine_panels(f: Callable, edges: Sequence[float], spec: QuadratureSpec) -> complex:
    """Panel integral with node doubling until stable; two failed doublings abort."""
    order = spec.panel_order
    prev = integrate_panels(f, edges, order)
    for _ in range(2):
        order *= 2
        cur = integrate_panels(f, edges, order)
        if _stable(cur, prev, spec):
            return cur
        prev = cur
    raise NonConvergence(
        f"panel quadrature did not stabilize at order {order}",
        last_estimates=(prev, cur),
    )


def _dyadic_edges(width: float, stop: float) -> list[float]:
    """0, width, 2 width, 4 width, ... clamped to stop."""
    edges = [0.0]
    w = width
    while edges[-1] < stop:
        edges.append(min(w, stop))
        w *= 2.0
    return edges


def integrate_circle(
    f: Callable,
    spec: QuadratureSpec = DEFAULT_SPEC,
    breakpoints: Iterable[float] = (),
) -> complex:
    """Mean of f over the circle: (1/2pi) int_{-pi}^{pi} f(phi) dphi.

    f must accept a numpy array of angles.  Integrands with peak_scale < 0.05
    are assumed peaked at phi = 0 and integrated on dyadic panels; otherwise
    the periodic trapezoid rule with doubling is used.  Kink angles passed in
    `breakpoints` force the panel path with edges aligned to them.
    """
    breaks = sorted(
        {math.remainder(b, 2.0 * math.pi) for b in breakpoints}
    )
    if not breaks and spec.peak_scale >= _PEAK_THRESHOLD:
        n = _TRAPEZOID_START
        phi = -math.pi + 2.0 * math.pi * np.arange(n) / n
        prev = complex(np.mean(np.asarray(f(phi), dtype=complex)))
        while n < _TRAPEZOID_CAP:
            n *= 2
            phi = -math.pi + 2.0 * math.pi * np.arange(n) / n
            cur = complex(np.mean(np.asarray(f(phi), dtype=complex)))
            if _stable(cur, prev, spec):
                return cur
            prev = cur
        raise NonConvergence(
            f"trapezoid rule did not stabilize by n = {n}", last_estimates=(prev,)
        )

    w = min(spec.peak_scale, math.pi / 4.0)
    pos = _dyadic_edges(w, math.pi)
    edges = sorted(
        set([-e for e in reversed(pos[1:])] + pos)
        | {b for b in breaks if -math.pi < b < math.pi}
    )
    return _refine_panels(f, edges, spec) / (2.0 * math.pi)


def integrate_halfline_peak(
    g: Callable,
    tau: float,
    spec: QuadratureSpec = DEFAULT_SPEC,
    breakpoints: Iterable[float] = (),
) -> complex:
    """int_0^tau g(x) dx on log-spaced panels [0,1] u [1,tau].

    Suited to integrands like (1+x^2)^{-s} that vary on unit scale near 0 and
    decay algebraically; any kink locations go in `breakpoints`.
    """
    if tau <= 0:
        raise ValueError(f"tau must be positive, got {tau}")
    edges = set(_dyadic_edges(min(0.5, tau), tau))
    edges.update(b for b in breakpoints if 0.0 < b < tau)
    edges.add(tau)
    return _refine_panels(g, sorted(edges), spec)


def gauss_2f1(a, b, c, x: float, max_terms: int = 500_000) -> complex:
    """Gauss hypergeometric F(a, b; c; x) for real x <= 0.

    Pfaff transform to y = x/(x-1) in [0, 1), then direct series until two
    consecutive terms fall below 1e-17 of the partial sum.
    """
    if x > 0:
        raise ValueError(f"argument must be <= 0, got {x}")
    if x == 0.0:
        return 1.0 + 0j
    y = x / (x - 1.0)
    if y > 0.999:
        raise SlowConvergence(f"transformed argument {y} > 0.999")
    aa = complex(a)
    bb = complex(c) - complex(b)
    cc = complex(c)
    total = term = 1.0 + 0j
    small = 0
    for k in range(max_terms):
        term *= (aa + k) * (bb + k) / ((cc + k) * (k + 1.0)) * y
        total += term
        small = small + 1 if abs(term) <= 1e-17 * abs(total) else 0
        if small >= 2:
            return (1.0 - x) ** (-aa) * total
    raise MaxTerms(f"series did not meet the stopping rule in {max_terms} terms")


def gauss_2f1_many(a, b, c, xs, max_terms: int = 500_000) -> np.ndarray:
    """Vectorized gauss_2f1 over an array of nonpositive arguments."""
    xs = np.asarray(xs, dtype=float)
    if np.any(xs > 0):
        raise ValueError("all arguments must be <= 0")
    y = xs / (xs - 1.0)
    y = np.where(xs == 0.0, 0.0, y)
    if np.any(y > 0.999):
        raise SlowConvergence("transformed argument > 0.999 in batch")
    aa = complex(a)
    bb = complex(c) - complex(b)
    cc = complex(c)
    total = np.ones_like(y, dtype=complex)
    term = np.ones_like(y, dtype=complex)
    small = np.zeros_like(y, dtype=int)
    for k in range(max_terms):
        term = term * ((aa + k) * (bb + k) / ((cc + k) * (k + 1.0))) * y
        total = total + term
        tiny = np.abs(term) <= 1e-17 * np.abs(total)
        small = np.where(tiny, small + 1, 0)
        if np.all(small >= 2):
            break
    else:
        raise MaxTerms(f"batch series did not converge in {max_terms} terms")
    return (1.0 - xs) ** (-aa) * total


def fd_laplacian(f: Callable, z: complex, h: float | None = None) -> complex:
    """Hyperbolic Laplacian via 5-point stencil:

        ((1-|z|^2)^2 / 4) * (f(z+h)+f(z-h)+f(z+ih)+f(z-ih)-4 f(z)) / h^2.

    Default step h = 1e-4 (1-|z|) keeps the stencil inside the disk.
    """
    z = ensure_disk(z, "z")
    if h is None:
        h = 1e-4 * (1.0 - abs(z))
    if h <= 0:
        raise ValueError(f"step must be positive, got {h}")
    pts = (z + h, z - h, z + 1j * h, z - 1j * h)
    for p in pts:
        if abs(p) >= 1.0:
            raise StencilOutOfDomain(f"stencil point {p} left the unit disk")
    flat = (f(pts[0]) + f(pts[1]) + f(pts[2]) + f(pts[3]) - 4.0 * f(z)) / (h * h)
    return 0.25 * (1.0 - abs(z) ** 2) ** 2 * flat


def circle_fft(samples) -> np.ndarray:
    """Fourier coefficients of f from equispaced samples f(2 pi j / N).

    Entry n (taken mod N) estimates (1/2pi) int f(phi) e^{-i n phi} dphi;
    trustworthy for |n| < N/2.  N must be a power of two.
    """
    s = np.asarray(samples, dtype=complex)
    n = s.shape[0]
    if n < 2 or n & (n - 1):
        raise ValueError(f"sample count must be a power of two >= 2, got {n}")
    return np.fft.fft(s) / n


def fourier_mode(coeffs: np.ndarray, n: int) -> complex:
    """Mode-n coefficient from a circle_fft result (valid for |n| < N/2)."""
    N = len(coeffs)
    if not -N // 2 <= n < N // 2:
        raise ValueError(f"mode {n} outside the resolved window of {N} samples")
    return complex(coeffs[n % N])

def next_pow2(n: int) -> int:
    """Smallest power of two >= max(n, 2)."""
    p = 2
    while p < n:
        p *= 2
    return p


def thread_count() -> int:
    """Worker cap: HYPOLIB_THREADS if set, else the CPU count."""
    env = os.environ.get("HYPOLIB_THREADS", "").strip()
    if env:
        try:
            return max(1, int(env))
        except ValueError as exc:
            raise ValueError(f"HYPOLIB_THREADS must be an integer, got {env!r}") from exc
    return os.cpu_count() or 1


def parallel_map(fn: Callable, items) -> list:
    """Order-preserving map over a thread pool capped by thread_count().

    Results come back in input order regardless of completion order, so
    reductions over them stay deterministic.
    """
    items = list(items)
    workers = min(thread_count(), max(1, len(items)))
    if workers == 1 or len(items) <= 1:
        return [fn(x) for x in items]
    with ThreadPoolExecutor(max_workers=workers) as pool:
        return list(pool.map(fn, items))
