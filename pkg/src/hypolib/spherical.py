"""Spherical means of the graded kernels and their radial behavior.

The order-n polyspherical function is the circle mean

    Phi_n(r) = (1/2pi) int g_n(log P_r(phi)) P_r(phi)^{mu+1/2} dphi,

with g_n from kernels.kernel_poly.  Phi_0(.|0) is identically 1, and for
lam = 0, n = 1 the integrand is P log P.

Evaluation strategy.  With tau = 2 sqrt(r)/(1-r), the integrand is peaked at
phi = 0 with width ~ 1/tau.  For tau < 20 the periodic trapezoid rule
converges spectrally.  Beyond that the substitution u = tau sin(phi/2) turns
the peak into the half-line profile (1+u^2)^{-(mu+1/2)} integrated on
log-spaced panels; the remaining arc [pi/2, pi] is a small smooth correction.
Written in the substituted variable,

    Phi_n(r) = (e^{(mu+1/2) R}/pi) [ int_0^{tau/sqrt2} g_n(R - log(1+u^2))
                 (1+u^2)^{-(mu+1/2)} (2/tau) (1-(u/tau)^2)^{-1/2} du
                 + int_{pi/2}^{pi} g_n(R - L) e^{-(mu+1/2) L} dphi ],

L = log(1 + tau^2 sin^2(phi/2)).  Accuracy is uniform up to R ~ 30; past
that 1-r itself is at the edge of double precision.

Closed form.  Phi(r) = F(mu+1/2, 1/2-mu; 1; -r^2/(1-r^2)); after the Pfaff
transform the series argument is exactly r^2, so the evaluator in numerics
applies verbatim (guard r^2 <= 0.999).

Absolute variant.  |Phi|_n integrates |g_n(log P)| P^{Re mu + 1/2}; the
integrand has a kink where log P changes sign, at phi = arccos(r)
(u = sqrt(e^R - 1)); panels are split there.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from functools import lru_cache

import numpy as np

from .errors import PositivityViolation, ScanInconclusive
from .geometry import RadialFrame
from .kernels import CRITICAL, FORBIDDEN, GENERIC, SpectralParam, kernel_poly, make_spectral
from .numerics import (
    DEFAULT_SPEC,
    QuadratureSpec,
    gauss_2f1,
    gauss_2f1_many,
    integrate_circle,
    integrate_halfline_peak,
    integrate_panels,
    _refine_panels,
)
from .polynomials import ComplexPoly

__all__ = [
    "spherical_function",
    "closed_form",
    "closed_form_many",
    "abs_spherical_function",
    "odd_log_moment",
    "boundary_constant",
    "AsymptoticLaw",
    "asymptotic_law",
    "small_radius_law",
    "radial_zeros",
    "ZeroFreeRadius",
    "zero_free_radius",
    "positivity_scan",
    "scan_profile",
]

_TAU_SWITCH = 20.0


def _poly_values(poly: ComplexPoly, w, use_abs: bool):
    v = poly.evaluate(w)
    return np.abs(v) if use_abs else v


def _kernel_mean(
    poly: ComplexPoly,
    exponent: complex,
    r: float,
    spec: QuadratureSpec,
    use_abs: bool = False,
    refine: bool = True,
) -> complex:
    """(1/2pi) int q(log P_r) P_r^{exponent} dphi, q = poly (or |poly|)."""
    if not 0.0 <= r < 1.0:
        raise ValueError(f"radius must lie in [0, 1), got {r}")
    c = complex(exponent).real if use_abs else complex(exponent)
    if r == 0.0:
        v0 = poly.evaluate(0.0)
        return abs(v0) if use_abs else v0
    frame = RadialFrame.from_r(r)
    tau, R = frame.tau, frame.R

    if tau >= _TAU_SWITCH:
        u_top = tau / math.sqrt(2.0)

        def f_u(u):
            base = 1.0 + u * u
            q = _poly_values(poly, R - np.log(base), use_abs)
            jac = (2.0 / tau) / np.sqrt(1.0 - (u / tau) ** 2)
            return q * np.exp(-c * np.log(base)) * jac

        def f_phi(phi):
            L = np.log(1.0 + (tau * np.sin(0.5 * phi)) ** 2)
            return _poly_values(poly, R - L, use_abs) * np.exp(-c * L)

        breaks = (math.sqrt(math.expm1(R)),) if use_abs else ()
        if refine:
            i_u = integrate_halfline_peak(f_u, u_top, spec, breakpoints=breaks)
            i_phi = _refine_panels(f_phi, (math.pi / 2, 3 * math.pi / 4, math.pi), spec)
        else:
            edges = [0.0]
            w = 0.5
            while edges[-1] < u_top:
                edges.append(min(w, u_top))
                w *= 2.0
            edges.extend(b for b in breaks if 0.0 < b < u_top)
            i_u = integrate_panels(f_u, sorted(set(edges)), 2 * spec.panel_order)
            i_phi = integrate_panels(
                f_phi, (math.pi / 2, 3 * math.pi / 4, math.pi), 2 * spec.panel_order
            )
        pref = np.exp(c * R)
        return complex(pref * (i_u + i_phi) / math.pi)

    # moderate radius: no peak to resolve
    def f_circle(phi):
        denom = (1.0 - r) ** 2 + 4.0 * r * np.sin(0.5 * phi) ** 2
        logp = np.log((1.0 - r * r) / denom)
        return _poly_values(poly, logp, use_abs) * np.exp(c * logp)

    if use_abs:
        # kink of |log P| at phi = arccos(r): split panels there
        edges = (0.0, math.acos(r), 0.5 * (math.acos(r) + math.pi), math.pi)
        if refine:
            return complex(_refine_panels(f_circle, edges, spec) / math.pi)
        return complex(integrate_panels(f_circle, edges, 2 * spec.panel_order) / math.pi)
    return integrate_circle(f_circle, spec.with_peak(min(1.0, 1.0 / tau if tau > 0 else 1.0)))


@lru_cache(maxsize=200_000)
def _spherical_cached(
    n: int, lam: complex, r: float, spec: QuadratureSpec, use_abs: bool, refine: bool
) -> complex:
    sp = make_spectral(lam)
    return _kernel_mean(kernel_poly(n, sp), sp.exponent, r, spec, use_abs, refine)


def spherical_function(
    n: int,
    r: float,
    sp: SpectralParam,
    spec: QuadratureSpec = DEFAULT_SPEC,
    refine: bool = True,
) -> complex:
    """Order-n polyspherical function at radius r."""
    if n < 0:
        raise ValueError(f"order must be >= 0, got {n}")
    return _spherical_cached(n, sp.lam, float(r), spec, False, refine)


def abs_spherical_function(
    n: int,
    r: float,
    sp: SpectralParam,
    spec: QuadratureSpec = DEFAULT_SPEC,
    refine: bool = True,
) -> float:
    """Circle mean of |order-n kernel|; equals Phi_n itself in the critical
    regime, where the integrand is already nonnegative."""
    if n < 0:
        raise ValueError(f"order must be >= 0, got {n}")
    return _spherical_cached(n, sp.lam, float(r), spec, True, refine).real


def odd_log_moment(k: int, r: float, sp_half=None, spec: QuadratureSpec = DEFAULT_SPEC) -> complex:
    """(1/2pi) int (log P_r)^k sqrt(P_r) dphi.

    For odd k this vanishes identically in r: the integral is a radial
    eigenfunction of the critical eigenvalue that is 0 at the origin.  Used
    as the positivity proof's mechanism check (and as a hard cancellation
    test of the quadrature).
    """
    if k < 0:
        raise ValueError(f"moment order must be >= 0, got {k}")
    return _kernel_mean(ComplexPoly.monomial(k) if k else ComplexPoly.from_coeffs((1.0,)), 0.5, r, spec)


_HALFLINE_CUTOFF = 1e8


def boundary_constant(sp: SpectralParam, spec: QuadratureSpec = DEFAULT_SPEC) -> complex:
    """c(lam) = (2/pi) int_0^inf (1+x^2)^{-(mu+1/2)} dx, generic regime only.

    Truncated at 1e8 with a two-term algebraic tail estimate; c(0) = 1 and
    c(2) = 1/2 exactly.
    """
    if sp.kind != GENERIC:
        raise ValueError("boundary constant requires the generic regime (Re mu > 0)")
    s = sp.exponent

    def f(x):
        return np.exp(-s * np.log1p(x * x))

    head = integrate_halfline_peak(f, _HALFLINE_CUTOFF, spec)
    T = _HALFLINE_CUTOFF
    tail = T ** (1.0 - 2.0 * s) / (2.0 * s - 1.0) - s * T ** (-1.0 - 2.0 * s) / (2.0 * s + 1.0)
    return 2.0 / math.pi * (head + tail)


def closed_form(r: float, sp: SpectralParam) -> complex:
    """Phi(r) by Gauss-hypergeometric closed form (order 0 only).

    F(mu+1/2, 1/2-mu; 1; -r^2/(1-r^2)); the transformed series argument is
    r^2, so radii past sqrt(0.999) raise SlowConvergence.
    """
    if not 0.0 <= r < 1.0:
        raise ValueError(f"radius must lie in [0, 1), got {r}")
    if r == 0.0:
        return 1.0 + 0j
    x = -r * r / (1.0 - r * r)
    return gauss_2f1(sp.exponent, 0.5 - sp.mu, 1.0, x)


def closed_form_many(rs, sp: SpectralParam) -> np.ndarray:
    rs = np.asarray(rs, dtype=float)
    if np.any((rs < 0) | (rs >= 1)):
        raise ValueError("radii must lie in [0, 1)")
    x = -rs * rs / (1.0 - rs * rs)
    return gauss_2f1_many(sp.exponent, 0.5 - sp.mu, 1.0, x)


@dataclass(frozen=True)
class AsymptoticLaw:
    """Boundary law  prefactor * R^R_power * exp(exp_rate * R)  as r -> 1."""

    prefactor: complex
    R_power: int
    exp_rate: complex

    def evaluate(self, R: float) -> complex:
        return self.prefactor * R**self.R_power * np.exp(self.exp_rate * R)


def asymptotic_law(
    n: int,
    sp: SpectralParam,
    absolute: bool = False,
    spec: QuadratureSpec = DEFAULT_SPEC,
) -> AsymptoticLaw:
    """Boundary asymptotic law of Phi_n (or of |Phi|_n with absolute=True).

    Generic:   Phi_n  ~ [c(lam)/(n! (2 mu)^n)] R^n e^{(mu-1/2) R}
               |Phi|_n ~ [c(lam*)/(n! |2 mu|^n)] R^n e^{(Re mu - 1/2) R}
    Critical:  Phi_n = |Phi|_n ~ [2/((2n+1)! pi)] R^{2n+1} e^{-R/2}
    """
    if n < 0:
        raise ValueError(f"order must be >= 0, got {n}")
    if sp.kind == FORBIDDEN:
        raise ValueError("no boundary law on the forbidden ray")
    if sp.kind == CRITICAL:
        pref = 2.0 / (math.factorial(2 * n + 1) * math.pi)
        return AsymptoticLaw(prefactor=pref, R_power=2 * n + 1, exp_rate=-0.5)
    if absolute:
        c_star = boundary_constant(make_spectral(sp.lam_star), spec)
        pref = c_star / (math.factorial(n) * abs(2.0 * sp.mu) ** n)
        return AsymptoticLaw(prefactor=pref, R_power=n, exp_rate=sp.mu.real - 0.5)
    c_val = boundary_constant(sp, spec)
    pref = c_val / (math.factorial(n) * (2.0 * sp.mu) ** n)
    return AsymptoticLaw(prefactor=pref, R_power=n, exp_rate=sp.mu - 0.5)


def small_radius_law(n: int, r: float, sp: SpectralParam) -> complex:
    """Leading small-radius term of Phi_n(r).

    Critical: r^{2n}/(n!)^2.  Generic even n: r^n/(((n/2)!)^2 (2mu)^n);
    generic odd n: r^{n+1}/(((n+1)/2)! ((n-1)/2)! (2mu)^{n-1}) -- the odd
    circle moment of cos^n kills the r^n term.
    """
    if n < 0:
        raise ValueError(f"order must be >= 0, got {n}")
    if sp.kind == CRITICAL:
        return r ** (2 * n) / math.factorial(n) ** 2
    if n % 2 == 0:
        half = n // 2
        return r**n / (math.factorial(half) ** 2 * (2.0 * sp.mu) ** n)
    up, dn = (n + 1) // 2, (n - 1) // 2
    return r ** (n + 1) / (math.factorial(up) * math.factorial(dn) * (2.0 * sp.mu) ** (n - 1))


def _scan_radii(r_lo: float, r_hi: float, count: int) -> np.ndarray:
    """Geometric spacing in 1-r from r_lo up to r_hi."""
    return 1.0 - np.geomspace(1.0 - r_lo, 1.0 - r_hi, count)


def scan_profile(
    n: int,
    sp: SpectralParam,
    r_lo: float = 0.05,
    r_hi: float = 1.0 - 1e-6,
    count: int = 2000,
    spec: QuadratureSpec = DEFAULT_SPEC,
):
    """Scan-grade radial profile: (radii, Phi_n values).  Single-pass panels,
    ~1e-8 relative accuracy; intended for zero detection, not for reporting."""
    rs = _scan_radii(r_lo, r_hi, count)
    vals = np.array(
        [spherical_function(n, r, sp, spec, refine=False) for r in rs], dtype=complex
    )
    return rs, vals


def radial_zeros(
    sp: SpectralParam,
    r_max: float = 0.9999,
    count: int = 2000,
    spec: QuadratureSpec = DEFAULT_SPEC,
):
    """Zeros of Phi(.|lam) in (0, r_max] for lam on the forbidden ray.

    Phi is real there (the function is even in mu); sign changes on a
    geometric grid are refined by bisection in log(1-r).  Returns the sorted
    zeros; consecutive gaps shrink as zeros accumulate at the boundary.
    """
    if sp.kind != FORBIDDEN:
        raise ValueError("zeros accumulate only for real lam < -1/4")
    rs = _scan_radii(0.05, r_max, count)
    vals = np.array(
        [spherical_function(0, r, sp, spec, refine=False).real for r in rs]
    )

    def f(s: float) -> float:
        return spherical_function(0, 1.0 - math.exp(s), sp, spec).real

    zeros = []
    sign = np.sign(vals)
    for i in np.nonzero(sign[:-1] * sign[1:] < 0)[0]:
        lo, hi = math.log(1.0 - rs[i]), math.log(1.0 - rs[i + 1])
        flo = f(lo)
        for _ in range(60):
            mid = 0.5 * (lo + hi)
            fm = f(mid)
            if flo * fm <= 0:
                hi = mid
            else:
                lo, flo = mid, fm
            if hi - lo < 1e-13:
                break
        zeros.append(1.0 - math.exp(0.5 * (lo + hi)))
    return sorted(zeros)


@dataclass(frozen=True)
class ZeroFreeRadius:
    """Radius beyond which the normalized kernel's denominator is safe."""

    n: int
    lam: complex
    r_min: float
    method: str


def zero_free_radius(
    n: int,
    sp: SpectralParam,
    eps: float = 0.05,
    count: int = 2000,
    spec: QuadratureSpec = DEFAULT_SPEC,
) -> ZeroFreeRadius:
    """Smallest radius r_min with Phi_n zero-free on (r_min, 1).

    Real lam >= -1/4: positivity gives 0 for even n and the critical regime;
    odd n keeps a floor eps against the kernel's pole at the origin.  Complex
    lam: scan |Phi_n| against the absolute boundary law on a geometric grid
    and return the last dip; persistent dips near 1 raise ScanInconclusive.
    """
    if sp.kind == FORBIDDEN:
        raise ValueError("zeros accumulate at the boundary on the forbidden ray")
    if n == 0:
        return ZeroFreeRadius(n, sp.lam, 0.0, "exact")
    if sp.kind == CRITICAL:
        return ZeroFreeRadius(n, sp.lam, 0.0, "positivity")
    if sp.lam.imag == 0.0 and sp.lam.real >= -0.25:
        if n % 2 == 0:
            return ZeroFreeRadius(n, sp.lam, 0.0, "positivity")
        return ZeroFreeRadius(n, sp.lam, eps, "positivity+pole-floor")

    rs, vals = scan_profile(n, sp, count=count, spec=spec)
    law = asymptotic_law(n, sp, absolute=True, spec=spec)
    frames = np.log1p(rs) - np.log1p(-rs)
    ref = np.array([abs(law.evaluate(R)) for R in frames])
    ratio = np.abs(vals) / ref
    dips = np.nonzero(ratio < 1e-6)[0]
    if dips.size == 0:
        return ZeroFreeRadius(n, sp.lam, float(rs[0]), "scan")
    last = int(dips[-1])
    if last >= int(0.95 * len(rs)) - 1:
        raise ScanInconclusive(
            f"|Phi_{n}| dips persist at r = {rs[last]:.6f}, close to the boundary"
        )
    return ZeroFreeRadius(n, sp.lam, float(rs[last + 1]), "scan")


@dataclass(frozen=True)
class PositivityReport:
    n: int
    lam: complex
    min_value: float
    max_imag: float
    odd_moment_ratio: float


def positivity_scan(
    n: int,
    sp: SpectralParam,
    rs=None,
    spec: QuadratureSpec = DEFAULT_SPEC,
    tol: float = 1e-10,
) -> PositivityReport:
    """Check Phi_n > 0 on a radial grid for real lam >= -1/4, n >= 1,
    together with the vanishing odd moment that drives the positivity proof."""
    real_ok = sp.kind == CRITICAL or (
        sp.kind == GENERIC and sp.lam.imag == 0.0 and sp.lam.real >= -0.25
    )
    if not real_ok:
        raise ValueError("positivity holds for real lam >= -1/4 only")
    if n < 1:
        raise ValueError("positivity scan is for orders n >= 1")
    if rs is None:
        rs = _scan_radii(0.05, 1.0 - 1e-5, 400)
    vals = np.array([spherical_function(n, float(r), sp, spec, refine=False) for r in rs])
    min_re = float(np.min(vals.real))
    max_im = float(np.max(np.abs(vals.imag)))
    if min_re <= 0.0:
        raise PositivityViolation(
            f"Phi_{n} dipped to {min_re:.3e} at lam = {sp.lam}"
        )
    worst = 0.0
    for r in (0.3, 0.7, 0.9, 0.97):
        moment = _kernel_mean(ComplexPoly.monomial(2 * n + 1), 0.5, r, spec)
        scale = _kernel_mean(ComplexPoly.monomial(2 * n + 1), 0.5, r, spec, use_abs=True)
        worst = max(worst, abs(moment) / max(scale.real, 1e-300))
    if worst > tol:
        raise PositivityViolation(f"odd log moment ratio {worst:.3e} exceeds {tol}")
    return PositivityReport(
        n=n, lam=sp.lam, min_value=min_re, max_imag=max_im, odd_moment_ratio=worst
    )
