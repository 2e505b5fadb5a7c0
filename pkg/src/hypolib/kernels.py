"""Spectral parameters and the graded family of eigenkernels.

The spectral map is lam = mu^2 - 1/4 with mu = sqrt(lam + 1/4) on the
principal branch (sqrt(rho e^{i phi}) = sqrt(rho) e^{i phi/2}, phi in
(-pi, pi]), so Re mu >= 0 always.  Three regimes:

  generic    lam not in (-inf, -1/4]      (Re mu > 0)
  critical   lam = -1/4 exactly           (mu = 0)
  forbidden  lam real, lam < -1/4         (mu purely imaginary)

The base eigenkernel of the hyperbolic Laplacian is P(z,xi)^{mu+1/2}; the
order-n member of the graded family multiplies it by a polynomial in
w = log P (equivalently -hor):

  generic:   g_n(w) = w^n / (n! (2 mu)^n)
  critical:  g_n(w) = w^{2n} / (2n)!

One application of Lam - lam maps g_n P^{mu+1/2} to g P^{mu+1/2} with
g = g_n'' + 2 mu g_n', and n steps of that reduction land on the constant 1.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass

import numpy as np

from .errors import ChainBroken
from .geometry import ensure_disk, poisson_kernel
from .numerics import fd_laplacian
from .polynomials import ComplexPoly

__all__ = [
    "SpectralParam",
    "make_spectral",
    "lambda_kernel",
    "polyharmonic_kernel",
    "kernel_poly",
    "reduce_step",
    "verify_reduce_chain",
    "fd_verify_kernel",
]

GENERIC = "generic"
CRITICAL = "critical"
FORBIDDEN = "forbidden"


@dataclass(frozen=True)
class SpectralParam:
    """Eigenvalue lam, its square root offset mu, regime tag, and the
    associated real eigenvalue lam_star = (Re mu)^2 - 1/4 (generic/critical)."""

    lam: complex
    mu: complex
    kind: str
    lam_star: float | None

    @property
    def exponent(self) -> complex:
        """Power of the Poisson kernel in the base eigenkernel: mu + 1/2."""
        return self.mu + 0.5


def make_spectral(lam: complex) -> SpectralParam:
    lam = complex(lam)
    w = lam + 0.25
    if w == 0:
        return SpectralParam(lam=lam, mu=0j, kind=CRITICAL, lam_star=-0.25)
    if w.imag == 0.0 and w.real < 0.0:
        mu = 1j * math.sqrt(-w.real)
        return SpectralParam(lam=lam, mu=mu, kind=FORBIDDEN, lam_star=None)
    mu = cmath.sqrt(w)
    return SpectralParam(lam=lam, mu=mu, kind=GENERIC, lam_star=mu.real**2 - 0.25)


def _xi_point(xi):
    """Boundary point e^{i xi} for a real angle or angle array."""
    arr = np.asarray(xi)
    if np.iscomplexobj(arr):
        raise TypeError("xi must be a boundary angle in radians, not a complex point")
    if arr.ndim:
        return np.exp(1j * arr.astype(float))
    return cmath.exp(1j * float(arr))


def lambda_kernel(z: complex, xi, sp: SpectralParam):
    """Base eigenkernel P(z, xi)^{mu + 1/2}; xi is an angle or angle array."""
    p = poisson_kernel(z, _xi_point(xi))
    if isinstance(p, np.ndarray):
        return np.exp(sp.exponent * np.log(p))
    return cmath.exp(sp.exponent * math.log(p))


def kernel_poly(n: int, sp: SpectralParam) -> ComplexPoly:
    """The log-Poisson polynomial g_n attached to the order-n kernel."""
    if n < 0:
        raise ValueError(f"order must be >= 0, got {n}")
    if n == 0:
        return ComplexPoly.from_coeffs((1.0,))
    if sp.kind == CRITICAL:
        return ComplexPoly.monomial(2 * n, 1.0 / math.factorial(2 * n))
    return ComplexPoly.monomial(n, 1.0 / (math.factorial(n) * (2.0 * sp.mu) ** n))


def polyharmonic_kernel(n: int, z: complex, xi, sp: SpectralParam):
    """Order-n member of the graded kernel family at spectral parameter sp.

    Equals g_n(log P) P^{mu+1/2} with g_n from kernel_poly; order 0 is the
    base eigenkernel itself.  xi is an angle or angle array.
    """
    p = poisson_kernel(z, _xi_point(xi))
    g = kernel_poly(n, sp)
    if isinstance(p, np.ndarray):
        logp = np.log(p)
        return g.evaluate(logp) * np.exp(sp.exponent * logp)
    logp = math.log(p)
    return g.evaluate(logp) * cmath.exp(sp.exponent * logp)


def reduce_step(f: ComplexPoly, sp: SpectralParam) -> ComplexPoly:
    """Image of the log-coefficient polynomial under one application of
    Lam - lam:  f -> f'' + 2 mu f'."""
    df = f.differentiate()
    return df.differentiate().add(df.scale(2.0 * sp.mu))


@dataclass(frozen=True)
class ReduceChainReport:
    n: int
    kind: str
    final_residual: float
    step_residuals: tuple[float, ...]


def verify_reduce_chain(n: int, sp: SpectralParam, tol: float = 1e-12) -> ReduceChainReport:
    """Apply the reduction n times to g_n and check the chain.

    Generic regime: intermediate polynomials pick up lower-order terms that
    die out by step n; only the final constant-1 check is meaningful.
    Critical regime: every single step must collapse g_k to g_{k-1} (to
    roundoff), and the final polynomial is again the constant 1.
    """
    if n < 0:
        raise ValueError(f"order must be >= 0, got {n}")
    cur = kernel_poly(n, sp)
    steps: list[float] = []
    for k in range(n, 0, -1):
        cur = reduce_step(cur, sp)
        if sp.kind == CRITICAL:
            steps.append(cur.max_abs_diff(kernel_poly(k - 1, sp)))
    one = ComplexPoly.from_coeffs((1.0,))
    resid = cur.max_abs_diff(one)
    if resid > tol:
        raise ChainBroken(
            f"chain for n={n} ended {resid:.3e} away from the constant 1", residual=cur
        )
    if sp.kind == CRITICAL and steps and max(steps) > 1e-14:
        raise ChainBroken(
            f"critical single-step collapse off by {max(steps):.3e}", residual=cur
        )
    return ReduceChainReport(n=n, kind=sp.kind, final_residual=resid, step_residuals=tuple(steps))


def fd_verify_kernel(
    n: int, z: complex, xi: float, sp: SpectralParam, h: float | None = None
) -> float:
    """Residual |Lam_h Q_f - lam Q_f - Q_g| at z, where Q_f is the order-n
    kernel, g = reduce_step(f), and Lam_h is the 5-point discrete Laplacian.

    Expected O(h^2) for interior z; order 0 reduces to the eigen-equation
    residual |Lam_h K - lam K|.
    """
    ensure_disk(z, "z")
    f = kernel_poly(n, sp)
    g = reduce_step(f, sp)
    pt = cmath.exp(1j * float(xi))

    def q(poly: ComplexPoly):
        def field(w: complex):
            p = poisson_kernel(w, pt)
            logp = math.log(p)
            return poly.evaluate(logp) * cmath.exp(sp.exponent * logp)

        return field

    qf = q(f)
    qg = q(g)
    lap = fd_laplacian(qf, z, h)
    return abs(lap - sp.lam * qf(z) - qg(z))
