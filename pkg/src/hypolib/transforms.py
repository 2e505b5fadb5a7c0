"""Boundary data and generalized Poisson transforms.

Boundary data comes in four shapes: a truncated Fourier-coefficient sequence
(standing in for an analytic functional), a density against normalized arc
measure dphi/2pi, a finite list of point masses, or a density+atoms mixture.
The pairing convention: if g(psi) = sum g_m e^{i m psi} then

    <nu, g> = sum_m g_m conj(nu_m),

so a density rho contributes nu_m = (1/2pi) int rho e^{-i m psi} dpsi and an
atom of weight w at psi0 contributes nu_m = conj(w) e^{-i m psi0}.

The order-n transform integrates the graded kernel against the datum;
`normalized` divides by the circle mean of the kernel at |z|, the quantity
that makes boundary limits meaningful.  Normalization refuses radii below
the kernel's zero-free radius.
"""

from __future__ import annotations

import json
import math
import warnings
from dataclasses import dataclass, field
from functools import lru_cache
from typing import Callable, Optional, Union

import numpy as np

from .errors import DecayViolation, NormalizationUnavailable, TruncationWarning
from .geometry import RadialFrame
from .kernels import CRITICAL, FORBIDDEN, SpectralParam, kernel_poly, polyharmonic_kernel
from .numerics import (
    DEFAULT_SPEC,
    QuadratureSpec,
    circle_fft,
    integrate_circle,
    next_pow2,
)
from .spherical import spherical_function, zero_free_radius

__all__ = [
    "FourierSeq",
    "Density",
    "Atoms",
    "Mixture",
    "BoundaryDatum",
    "density_preset",
    "density_from_table",
    "datum_to_json",
    "datum_from_json",
    "TransformResult",
    "pair_functional",
    "poisson_transform",
    "normalized_kernel",
    "kernel_decay_probe",
    "dirichlet_solve",
    "spherical_average",
    "riquier_solve",
    "convergence_probe",
]


@dataclass(frozen=True)
class FourierSeq:
    """Analytic-functional surrogate: finitely many coefficients nu_m."""

    coeffs: dict

    def __post_init__(self):
        for m, v in self.coeffs.items():
            if not isinstance(m, int):
                raise ValueError(f"mode indices must be int, got {m!r}")
            if not np.isfinite(complex(v)):
                raise ValueError(f"coefficient at mode {m} is not finite")

    def window(self) -> int:
        return max((abs(m) for m in self.coeffs), default=0)


@dataclass(frozen=True)
class Density:
    """Density against dphi/2pi; breakpoints list its kink angles."""

    fn: Callable
    name: str
    breakpoints: tuple = ()

    def __call__(self, phi):
        return self.fn(np.asarray(phi, dtype=float))


@dataclass(frozen=True)
class Atoms:
    """Point masses: tuple of (angle, complex weight)."""

    points: tuple

    def __post_init__(self):
        for ang, w in self.points:
            if not (np.isfinite(ang) and np.isfinite(complex(w))):
                raise ValueError("atom angle and weight must be finite")


@dataclass(frozen=True)
class Mixture:
    density: Optional[Density]
    atoms: Optional[Atoms]


BoundaryDatum = Union[FourierSeq, Density, Atoms, Mixture]


def _sawtooth(phi):
    # 2-periodic odd ramp on (-pi, pi], normalized to [-1, 1]
    return np.remainder(phi + math.pi, 2.0 * math.pi) / math.pi - 1.0


def density_preset(name: str) -> Density:
    """Named densities: one, cos, sin, cos2, sawtooth, indicator:<c>:<w>."""
    if name == "one":
        return Density(lambda p: np.ones_like(p), "one")
    if name == "cos":
        return Density(np.cos, "cos")
    if name == "sin":
        return Density(np.sin, "sin")
    if name == "cos2":
        return Density(lambda p: np.cos(2.0 * p), "cos2")
    if name == "sawtooth":
        return Density(_sawtooth, "sawtooth", breakpoints=(math.pi,))
    if name.startswith("indicator:"):
        parts = name.split(":")
        if len(parts) != 3:
            raise ValueError(f"expected indicator:<center>:<halfwidth>, got {name!r}")
        c, w = float(parts[1]), float(parts[2])
        if not 0.0 < w < math.pi:
            raise ValueError(f"indicator halfwidth must lie in (0, pi), got {w}")

        def ind(phi):
            d = np.abs(np.remainder(phi - c + math.pi, 2.0 * math.pi) - math.pi)
            return (d <= w).astype(float)

        return Density(ind, name, breakpoints=(c - w, c + w))
    raise ValueError(f"unknown density preset {name!r}")


def density_from_table(samples) -> Density:
    """Trigonometric interpolant through equispaced samples g(2 pi j / N).

    N must be a power of two; the interpolant is the band-limited extension,
    so tabulated data is always smooth from the quadrature's point of view.
    """
    coeffs = circle_fft(samples)
    n = len(coeffs)
    modes = np.fft.fftfreq(n, d=1.0 / n).astype(int)
    keep = np.abs(modes) < n // 2

    def fn(phi):
        phi = np.asarray(phi, dtype=float)
        acc = np.zeros(phi.shape, dtype=complex)
        for m, c in zip(modes[keep], coeffs[keep]):
            acc += c * np.exp(1j * m * phi)
        return acc.real if np.allclose(np.asarray(samples, complex).imag, 0) else acc

    return Density(fn, f"table[{n}]")


def datum_to_json(datum: BoundaryDatum) -> str:
    return json.dumps(_datum_dict(datum), sort_keys=True)


def _datum_dict(datum: BoundaryDatum) -> dict:
    if isinstance(datum, FourierSeq):
        return {
            "fourier": {
                str(m): [complex(v).real, complex(v).imag]
                for m, v in sorted(datum.coeffs.items())
            }
        }
    if isinstance(datum, Density):
        return {"density": datum.name}
    if isinstance(datum, Atoms):
        return {
            "atoms": [[a, complex(w).real, complex(w).imag] for a, w in datum.points]
        }
    if isinstance(datum, Mixture):
        out = {}
        if datum.density is not None:
            out.update(_datum_dict(datum.density))
        if datum.atoms is not None:
            out.update(_datum_dict(datum.atoms))
        return out
    raise TypeError(f"not a boundary datum: {type(datum).__name__}")


def datum_from_json(text: str) -> BoundaryDatum:
    doc = json.loads(text)
    if not isinstance(doc, dict):
        raise ValueError("boundary datum document must be a JSON object")
    density = atoms = None
    if "fourier" in doc:
        seq = FourierSeq({int(k): complex(v[0], v[1]) for k, v in doc["fourier"].items()})
        if len(doc) != 1:
            raise ValueError("fourier data cannot be mixed with other variants")
        return seq
    if "density" in doc:
        spec = doc["density"]
        density = density_preset(spec) if isinstance(spec, str) else density_from_table(spec)
    if "atoms" in doc:
        atoms = Atoms(tuple((a, complex(re, im)) for a, re, im in doc["atoms"]))
    if density is not None and atoms is not None:
        return Mixture(density, atoms)
    if density is not None:
        return density
    if atoms is not None:
        return atoms
    raise ValueError(f"unrecognized boundary datum keys: {sorted(doc)}")


@dataclass(frozen=True)
class TransformResult:
    value: complex
    normalized: Optional[complex]
    frame: RadialFrame


def pair_functional(nu: FourierSeq, g_coeffs: dict, rel_tol: float = 1e-11) -> complex:
    """<nu, g> = sum g_m conj(nu_m) over the overlap window.

    Warns when the last resolved modes still carry weight above rel_tol of
    the accumulated value (the truncation window is then too small).
    """
    total = 0j
    for m, v in nu.coeffs.items():
        total += complex(g_coeffs.get(m, 0.0)) * complex(v).conjugate()
    w = nu.window()
    if w and g_coeffs:
        edge = max(
            abs(complex(g_coeffs.get(m, 0.0)) * complex(nu.coeffs.get(m, 0.0)))
            for m in (w, -w)
        )
        if edge > rel_tol * max(abs(total), 1e-300):
            warnings.warn(
                f"pairing tail at modes +-{w} is {edge:.2e}, not negligible",
                TruncationWarning,
                stacklevel=2,
            )
    return total


@lru_cache(maxsize=4096)
def _zero_free_cached(n: int, lam: complex) -> float:
    from .kernels import make_spectral

    return zero_free_radius(n, make_spectral(lam)).r_min


def _kernel_row(n, sp, r, phi):
    """Order-n kernel at radius r against boundary angle offsets phi."""
    # (1-r)^2 + 4r sin^2(phi/2) avoids the cancellation in 1+r^2-2r cos(phi)
    denom = (1.0 - r) ** 2 + 4.0 * r * np.sin(0.5 * np.asarray(phi, float)) ** 2
    logp = np.log((1.0 - r * r) / denom)
    return kernel_poly(n, sp).evaluate(logp) * np.exp(sp.exponent * logp)


def _density_value(n, sp, datum: Density, z, spec) -> complex:
    r, theta = abs(z), math.atan2(z.imag, z.real)
    if r == 0.0:
        return integrate_circle(lambda p: np.asarray(datum(p), dtype=complex), spec,
                                breakpoints=datum.breakpoints) * kernel_poly(n, sp).evaluate(0.0)
    tau = RadialFrame.from_r(r).tau

    def f(phi):
        return _kernel_row(n, sp, r, phi) * np.asarray(datum(phi + theta), dtype=complex)

    peak = min(1.0, 1.0 / tau) if tau > 0 else 1.0
    breaks = tuple(b - theta for b in datum.breakpoints)
    return integrate_circle(f, spec.with_peak(peak), breakpoints=breaks)


def _atoms_value(n, sp, datum: Atoms, z) -> complex:
    total = 0j
    for ang, w in datum.points:
        total += complex(w) * polyharmonic_kernel(n, z, float(ang), sp)
    return total


def _fourier_value(n, sp, datum: FourierSeq, z, spec) -> complex:
    r = abs(z)
    theta = math.atan2(z.imag, z.real)
    tau = RadialFrame.from_r(r).tau if r > 0 else 0.0
    size = next_pow2(int(max(1024, 32.0 * tau, 4 * datum.window() + 4)))
    size = min(size, 1 << 20)
    phi = 2.0 * math.pi * np.arange(size) / size
    row = _kernel_row(n, sp, r, phi) if r > 0 else np.full(size, kernel_poly(n, sp).evaluate(0.0))
    coeffs = circle_fft(row)
    w = datum.window()
    if w >= size // 2:
        raise ValueError(f"datum window {w} exceeds resolvable modes at size {size}")
    g_coeffs = {}
    for m in datum.coeffs:
        # row is sampled in the offset phi = psi - theta, so undo e^{i m theta}
        g_coeffs[m] = complex(coeffs[m % size]) * complex(math.cos(m * theta), -math.sin(m * theta))
    with warnings.catch_warnings():
        warnings.simplefilter("ignore", TruncationWarning)
        return pair_functional(datum, g_coeffs)


def poisson_transform(
    n: int,
    sp: SpectralParam,
    datum: BoundaryDatum,
    z: complex,
    spec: QuadratureSpec = DEFAULT_SPEC,
    normalize: bool = True,
) -> TransformResult:
    """Order-n transform of the boundary datum, with its normalized value."""
    z = complex(z)
    if abs(z) >= 1.0:
        raise ValueError(f"z must lie in the open disk, got |z| = {abs(z)}")
    if isinstance(datum, Density):
        value = _density_value(n, sp, datum, z, spec)
    elif isinstance(datum, Atoms):
        value = _atoms_value(n, sp, datum, z)
    elif isinstance(datum, FourierSeq):
        value = _fourier_value(n, sp, datum, z, spec)
    elif isinstance(datum, Mixture):
        value = 0j
        if datum.density is not None:
            value += _density_value(n, sp, datum.density, z, spec)
        if datum.atoms is not None:
            value += _atoms_value(n, sp, datum.atoms, z)
    else:
        raise TypeError(f"not a boundary datum: {type(datum).__name__}")

    r = abs(z)
    frame = RadialFrame.from_r(r)
    normalized = None
    if normalize:
        if sp.kind == FORBIDDEN:
            raise NormalizationUnavailable("no normalization on the forbidden ray")
        r_min = _zero_free_cached(n, sp.lam)
        if r < r_min:
            raise NormalizationUnavailable(
                f"|z| = {r:.6f} below the zero-free radius {r_min:.6f} for order {n}"
            )
        denom = spherical_function(n, r, sp, spec)
        if abs(denom) < 1e-300:
            raise NormalizationUnavailable(f"kernel mean underflow at r = {r}")
        normalized = value / denom
    return TransformResult(value=value, normalized=normalized, frame=frame)


def normalized_kernel(n: int, sp: SpectralParam, z: complex, xi: float,
                      spec: QuadratureSpec = DEFAULT_SPEC) -> complex:
    """Order-n kernel at (z, boundary angle xi) over its circle mean at |z|."""
    if sp.kind == FORBIDDEN:
        raise NormalizationUnavailable("no normalization on the forbidden ray")
    r = abs(complex(z))
    r_min = _zero_free_cached(n, sp.lam)
    if r < r_min:
        raise NormalizationUnavailable(
            f"|z| = {r:.6f} below the zero-free radius {r_min:.6f} for order {n}"
        )
    denom = spherical_function(n, r, sp, spec)
    if abs(denom) < 1e-300:
        raise NormalizationUnavailable(f"kernel mean underflow at r = {r}")
    return polyharmonic_kernel(n, complex(z), float(xi), sp) / denom


@dataclass(frozen=True)
class DecayReport:
    radii: tuple
    band_edges: tuple
    band_sups: tuple


def kernel_decay_probe(
    n: int,
    sp: SpectralParam,
    radii,
    a: float,
    spec: QuadratureSpec = DEFAULT_SPEC,
    angle_count: int = 200,
) -> DecayReport:
    """Sup of |normalized kernel| over the angular band away from the peak.

    Band lower edge: 2 tau^{-a} (generic regime, needs a < 2 Re mu/(2 Re mu + 1))
    or 2 (log tau)^{-a} (critical, needs a < 1).  The sups must decrease to 0
    along increasing radii, else DecayViolation.
    """
    if sp.kind == FORBIDDEN:
        raise ValueError("decay probe needs a normalizable kernel")
    if sp.kind == CRITICAL:
        if not 0.0 < a < 1.0:
            raise ValueError(f"critical band exponent must lie in (0,1), got {a}")
    else:
        cap = 2.0 * sp.mu.real / (2.0 * sp.mu.real + 1.0)
        if not 0.0 < a < cap:
            raise ValueError(f"band exponent must lie in (0, {cap:.4f}), got {a}")
    radii = sorted(float(r) for r in radii)
    edges, sups = [], []
    for r in radii:
        tau = RadialFrame.from_r(r).tau
        lo = 2.0 * (math.log(tau)) ** (-a) if sp.kind == CRITICAL else 2.0 * tau ** (-a)
        lo = min(lo, math.pi / 2)
        psi = np.geomspace(lo, math.pi, angle_count)
        denom = spherical_function(n, r, sp, spec)
        vals = np.abs(_kernel_row(n, sp, r, psi) / denom)
        edges.append(lo)
        sups.append(float(np.max(vals)))
    for a_, b_ in zip(sups, sups[1:]):
        if b_ >= a_:
            raise DecayViolation(f"band sup failed to decrease: {a_:.3e} -> {b_:.3e}")
    return DecayReport(radii=tuple(radii), band_edges=tuple(edges), band_sups=tuple(sups))


@dataclass(frozen=True)
class SweepRow:
    xi_angle: float
    r: float
    value: complex
    target: complex
    error: float


@dataclass(frozen=True)
class DirichletSolution:
    sp: SpectralParam
    g: Density
    spec: QuadratureSpec = DEFAULT_SPEC

    def field(self, z: complex) -> complex:
        return poisson_transform(0, self.sp, self.g, z, self.spec, normalize=False).value

    def verify(self, xi_angles, radii) -> list:
        """Boundary sweep rows: normalized field vs g at each (xi, r)."""
        rows = []
        for ang in xi_angles:
            for r in radii:
                z = r * complex(math.cos(ang), math.sin(ang))
                res = poisson_transform(0, self.sp, self.g, z, self.spec)
                tgt = complex(np.asarray(self.g(np.array([ang])))[0])
                rows.append(SweepRow(ang, r, res.normalized, tgt, abs(res.normalized - tgt)))
        return rows


def dirichlet_solve(sp: SpectralParam, g: Density, spec: QuadratureSpec = DEFAULT_SPEC):
    if sp.kind == FORBIDDEN:
        raise ValueError("no boundary solver on the forbidden ray")
    return DirichletSolution(sp=sp, g=g, spec=spec)


def spherical_average(f: Callable, r: float, spec: QuadratureSpec = DEFAULT_SPEC) -> complex:
    """(1/2pi) int f(r e^{i phi}) dphi for a pointwise-evaluable field.

    Doubles a trapezoid grid until stable; fields here are smooth in the
    angle, so spectral accuracy applies.
    """
    n = 64
    prev = None
    while n <= 4096:
        phi = 2.0 * math.pi * np.arange(n) / n
        vals = [complex(f(r * complex(math.cos(p), math.sin(p)))) for p in phi]
        cur = complex(np.mean(vals))
        if prev is not None and abs(cur - prev) <= spec.abs_tol + spec.rel_tol * abs(cur):
            return cur
        prev = cur
        n *= 2
    return prev


@dataclass(frozen=True)
class RiquierSolution:
    sp: SpectralParam
    gs: tuple
    spec: QuadratureSpec = DEFAULT_SPEC

    def layer(self, k: int, z: complex) -> complex:
        """Order-k transform of the k-th datum (the k-th layer field)."""
        return poisson_transform(k, self.sp, self.gs[k], z, self.spec, normalize=False).value

    def verify(self, xi_angles, radii) -> dict:
        """Boundary traces: each layer over its own normalizer tends to its
        datum; lower layers over a higher normalizer tend to 0."""
        own, cross = [], []
        for k, g in enumerate(self.gs):
            for ang in xi_angles:
                for r in radii:
                    z = r * complex(math.cos(ang), math.sin(ang))
                    phi_k = spherical_function(k, r, self.sp, self.spec)
                    vk = self.layer(k, z) / phi_k
                    tgt = complex(np.asarray(g(np.array([ang])))[0])
                    own.append(SweepRow(ang, r, vk, tgt, abs(vk - tgt)))
                    for j in range(k):
                        vj = self.layer(j, z) / phi_k
                        cross.append(SweepRow(ang, r, vj, 0j, abs(vj)))
        return {"own": own, "cross": cross}


def riquier_solve(sp: SpectralParam, gs, spec: QuadratureSpec = DEFAULT_SPEC):
    if sp.kind == FORBIDDEN:
        raise ValueError("no boundary solver on the forbidden ray")
    return RiquierSolution(sp=sp, gs=tuple(gs), spec=spec)


def convergence_probe(
    n: int,
    sp: SpectralParam,
    datum: BoundaryDatum,
    mode: str,
    radii=(0.9, 0.99, 0.999),
    xi_angles=None,
    p: float = 2.0,
    test_modes=range(-3, 4),
    spec: QuadratureSpec = DEFAULT_SPEC,
) -> dict:
    """Empirical boundary-convergence report.

    uniform: sup over xi of |normalized - g| per radius (continuous g).
    pointwise-ae: same rows but only at angles away from breakpoints.
    Lp: discrete L^p distance between the normalized field and g per radius.
    weak-star: pairings of the normalized field against e^{i k phi} per
    radius (they tend to the datum's Fourier coefficients conj(nu_-k)/...,
    for an atom of mass 1 at angle 0: all 1).
    """
    if mode not in ("uniform", "pointwise-ae", "Lp", "weak-star"):
        raise ValueError(f"unknown probe mode {mode!r}")
    report = {"mode": mode, "radii": list(radii), "rows": []}
    if mode in ("uniform", "pointwise-ae"):
        g = datum if isinstance(datum, Density) else None
        if g is None:
            raise ValueError("uniform/pointwise probes need a Density datum")
        if xi_angles is None:
            xi_angles = np.linspace(-math.pi, math.pi, 24, endpoint=False)
        if mode == "pointwise-ae":
            xi_angles = [
                a for a in xi_angles
                if all(abs(math.remainder(a - b, 2 * math.pi)) > 0.2 for b in g.breakpoints)
            ]
        for r in radii:
            errs = []
            for ang in xi_angles:
                z = r * complex(math.cos(ang), math.sin(ang))
                res = poisson_transform(n, sp, g, z, spec)
                tgt = complex(np.asarray(g(np.array([ang])))[0])
                errs.append(abs(res.normalized - tgt))
            report["rows"].append({"r": r, "sup_error": max(errs)})
    elif mode == "Lp":
        g = datum
        if not isinstance(g, Density):
            raise ValueError("Lp probe needs a Density datum")
        angles = np.linspace(-math.pi, math.pi, 64, endpoint=False)
        for r in radii:
            diffs = []
            for ang in angles:
                z = r * complex(math.cos(ang), math.sin(ang))
                res = poisson_transform(n, sp, g, z, spec)
                tgt = complex(np.asarray(g(np.array([ang])))[0])
                diffs.append(abs(res.normalized - tgt) ** p)
            report["rows"].append({"r": r, "lp_error": float(np.mean(diffs)) ** (1.0 / p)})
    else:
        has_atoms = isinstance(datum, Atoms) or (
            isinstance(datum, Mixture) and datum.atoms is not None and datum.atoms.points
        )
        for r in radii:
            size = 512
            if has_atoms:
                tau = 2.0 * math.sqrt(r) / (1.0 - r)
                size = min(1 << 16, next_pow2(max(1024, int(32.0 * tau))))
            angles = 2.0 * math.pi * np.arange(size) / size
            vals = np.array(
                [poisson_transform(n, sp, datum, r * np.exp(1j * a), spec).normalized
                 for a in angles]
            )
            coeffs = circle_fft(vals)
            pair = {int(k): complex(coeffs[k % size]) for k in test_modes}
            report["rows"].append({"r": r, "pairings": pair})
    return report
