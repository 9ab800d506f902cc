"""Closed-form scattering observables for the barrier V(x) = -v0 exp(x/a).

The substitution z = p exp(x/(2a)) turns the stationary Schroedinger
equation into Bessel's equation of order +-iq, with

    p = sqrt(8 m v0 a^2) / hbar,   q = 2 k a,   k = sqrt(2 m E) / hbar.

Everything here works at the dimensionless (p, q) level; reduce_params is
the only bridge from physical units.  Transmission is a function of q
alone:

    T = 1 - exp(-2 pi q),   R = exp(-2 pi q)

and both are always obtained from flux ratios, never from |t|^2: the two
asymptotic regions carry different waveforms (plane wave on the left, an
exponentially chirped travelling wave on the right), so amplitude moduli
are convention-laden but fluxes are not.

Conventions fixed throughout the package: time factor exp(-iEt/hbar), so
exp(+ikx) travels rightward; incident amplitude on the left multiplies
exp(+ikx), on the right exp(-ikx); the right-side travelling envelope is
exp(-x/(4a)) exp(-+i z).  Several printed forms of these amplitudes in
circulation disagree by constant factors; the ones below were validated
against high-precision series evaluations and the independent ODE solver
before being frozen.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass
from typing import Sequence, Union

import numpy as np

from . import specfun
from .errors import DegenerateOrderError, DomainError, SeriesRangeError
from .waves import WaveSolution, principal_angle

_QUARTER_PI = math.pi / 4.0


@dataclass(frozen=True)
class PhysicalParams:
    """Barrier strength, length scale, mass, and hbar; all strictly positive."""

    v0: float
    a: float
    mass: float
    hbar: float

    def __post_init__(self):
        for name in ("v0", "a", "mass", "hbar"):
            value = getattr(self, name)
            if not (isinstance(value, (int, float)) and math.isfinite(value) and value > 0):
                raise DomainError(f"{name} must be finite and > 0, got {value!r}")


@dataclass(frozen=True)
class DimensionlessParams:
    """p, q, k, delta with q = 2 k a and delta = hbar^2 / (8 m a^2)."""

    p: float
    q: float
    k: float
    delta: float


@dataclass(frozen=True)
class ScatteringData:
    """Amplitudes, coefficients, and phases for one incidence side.

    t_coeff and r_coeff come from flux ratios; r_amp and t_amp are the
    complex amplitudes; phi = Arg r_amp and theta = Arg t_amp reduced to
    (-pi, pi]; alpha = q ln(p/2) and beta = Arg Gamma(1+iq) are the
    building blocks of every phase formula.
    """

    side: str
    t_coeff: float
    r_coeff: float
    r_amp: complex
    t_amp: complex
    phi: float
    theta: float
    alpha: float
    beta: float


@dataclass(frozen=True)
class FluxTriple:
    """Incident, reflected, transmitted probability-flux magnitudes."""

    j_incident: float
    j_reflected: float
    j_transmitted: float


def reduce_params(params: PhysicalParams, energy: float) -> DimensionlessParams:
    """Physical inputs to the dimensionless working variables.

    q = 2ka and q = sqrt(E/delta) agree identically; the former is used.
    """
    if not (isinstance(energy, (int, float)) and math.isfinite(energy) and energy > 0):
        raise DomainError(f"energy must be finite and > 0, got {energy!r}")
    k = math.sqrt(2.0 * params.mass * energy) / params.hbar
    q = 2.0 * k * params.a
    p = math.sqrt(8.0 * params.mass * params.v0) * params.a / params.hbar
    delta = params.hbar**2 / (8.0 * params.mass * params.a**2)
    return DimensionlessParams(p=p, q=q, k=k, delta=delta)


def transmission_reflection(q: float) -> tuple[float, float]:
    """(T, R) = (1 - e^{-2 pi q}, e^{-2 pi q}); exact unitarity via expm1."""
    if not (isinstance(q, (int, float)) and math.isfinite(q) and q >= 0):
        raise DomainError(f"q must be finite and >= 0, got {q!r}")
    r = math.exp(-2.0 * math.pi * q)
    t = -math.expm1(-2.0 * math.pi * q)
    return t, r


def fluxes(p: float, q: float, params: PhysicalParams) -> FluxTriple:
    """The three flux magnitudes of the scattering solution, left incidence.

    Their ratios reproduce (T, R) exactly; j_incident = j_reflected +
    j_transmitted is an identity of the closed forms.
    """
    if not (p > 0):
        raise DomainError(f"p must be > 0, got {p!r}")
    if not (q > 0):
        raise DomainError(f"q must be > 0, got {q!r} (sinh(pi q) vanishes)")
    if math.pi * q > 700.0:
        raise DomainError(f"q = {q!r} overflows exp(pi q) in double precision")
    hbar, m, a = params.hbar, params.mass, params.a
    k = q / (2.0 * a)
    s = math.sinh(math.pi * q)
    j_inc = hbar * k * math.exp(2.0 * math.pi * q) / (math.pi * m * q * s)
    j_ref = hbar * k / (math.pi * m * q * s)
    j_tra = hbar * math.exp(math.pi * q) / (math.pi * m * a)
    return FluxTriple(j_incident=j_inc, j_reflected=j_ref, j_transmitted=j_tra)


def amplitudes(p: float, q: float, side: str = "left") -> ScatteringData:
    """Complex r and t plus flux-ratio T, R and the phase decomposition.

    Left incidence:

        r = -e^{-pi q} (p/2)^{-2iq} Gamma(1+iq)/Gamma(1-iq)
        t = sqrt(2/(pi p)) e^{-i pi/4} e^{-pi q/2} (p/2)^{-iq}
            * sinh(pi q) Gamma(1+iq)

    Right incidence:

        r = -i e^{-pi q}
        t = 2 sqrt(pi p/2) e^{-i pi/4} e^{-pi q/2} (p/2)^{-iq} / Gamma(1-iq)

    |t|^2 differs from T on purpose (unequal asymptotic waveforms); |r|^2
    equals R on both sides.
    """
    _check_pq(p, q)
    if side not in ("left", "right"):
        raise DomainError(f"side must be 'left' or 'right', got {side!r}")
    t_coeff, r_coeff = transmission_reflection(q)
    alpha = q * math.log(0.5 * p)
    gamma_plus = specfun.complex_gamma(1.0 + 1j * q)
    beta = cmath.phase(gamma_plus)
    phase_p = cmath.exp(-1j * alpha)  # (p/2)^{-iq}
    if side == "left":
        r_amp = -math.exp(-math.pi * q) * phase_p**2 * gamma_plus / gamma_plus.conjugate()
        t_amp = (
            math.sqrt(2.0 / (math.pi * p))
            * cmath.exp(-1j * _QUARTER_PI)
            * math.exp(-0.5 * math.pi * q)
            * phase_p
            * math.sinh(math.pi * q)
            * gamma_plus
        )
    else:
        r_amp = -1j * math.exp(-math.pi * q)
        t_amp = (
            2.0
            * math.sqrt(0.5 * math.pi * p)
            * cmath.exp(-1j * _QUARTER_PI)
            * math.exp(-0.5 * math.pi * q)
            * phase_p
            / gamma_plus.conjugate()
        )
    return ScatteringData(
        side=side,
        t_coeff=t_coeff,
        r_coeff=r_coeff,
        r_amp=r_amp,
        t_amp=t_amp,
        phi=principal_angle(cmath.phase(r_amp)),
        theta=principal_angle(cmath.phase(t_amp)),
        alpha=alpha,
        beta=beta,
    )


def phase_shifts(p: float, q: float, side: str = "left") -> tuple[float, float, float, float]:
    """(phi, theta, alpha, beta) from the closed phase formulas.

    phi_left = -2 alpha + 2 beta + pi,  phi_right = 3 pi/2,
    theta = -alpha + beta - pi/4 on both sides; all reduced to (-pi, pi].
    These equal the arguments of the amplitudes identically; tests assert
    the agreement.
    """
    _check_pq(p, q)
    if side not in ("left", "right"):
        raise DomainError(f"side must be 'left' or 'right', got {side!r}")
    alpha = q * math.log(0.5 * p)
    beta = cmath.phase(specfun.complex_gamma(1.0 + 1j * q))
    theta = principal_angle(-alpha + beta - _QUARTER_PI)
    if side == "left":
        phi = principal_angle(-2.0 * alpha + 2.0 * beta + math.pi)
    else:
        phi = principal_angle(1.5 * math.pi)
    return phi, theta, alpha, beta


def incident_amplitude(p: float, q: float, side: str = "left") -> complex:
    """Incident-wave amplitude of the unnormalized exact solutions.

    Left: coefficient of e^{ikx} in the far-left form of H1_{iq}(z).
    Right: amplitude of the incoming unit envelope in 2 e^{-pi q} J_{-iq}(z).
    Used to normalize exact_wavefunction output to unit incident wave.
    """
    _check_pq(p, q)
    gamma_plus = specfun.complex_gamma(1.0 + 1j * q)
    if side == "left":
        phase_p = cmath.exp(1j * q * math.log(0.5 * p))  # (p/2)^{+iq}
        return math.exp(math.pi * q) * phase_p / (math.sinh(math.pi * q) * gamma_plus)
    if side == "right":
        return (
            math.sqrt(2.0 / (math.pi * p))
            * math.exp(-0.5 * math.pi * q)
            * cmath.exp(1j * _QUARTER_PI)
        )
    raise DomainError(f"side must be 'left' or 'right', got {side!r}")


def exact_wavefunction(
    p: float, q: float, side: str, x_over_a: Union[Sequence[float], np.ndarray]
) -> WaveSolution:
    """Sample the exact scattering solution on a grid of x/a values.

    Left incidence: psi = H1_{iq}(z); right incidence:
    psi = 2 e^{-pi q} J_{-iq}(z), both with z = p exp(x/(2a)).  Derivatives
    are with respect to x/a (chain rule dz/d(x/a) = z/2) from the
    term-wise differentiated series; flux_profile uses hbar/m = 1 and the
    wronskian_drift slot reports the relative flux spread, the natural
    constancy diagnostic for a closed-form solution.
    """
    _check_pq(p, q)
    if side not in ("left", "right"):
        raise DomainError(f"side must be 'left' or 'right', got {side!r}")
    grid = np.asarray(x_over_a, dtype=float)
    if grid.ndim != 1 or grid.size == 0 or not np.all(np.isfinite(grid)):
        raise DomainError("x_over_a must be a finite non-empty 1-d grid")
    if grid.size > 1 and not np.all(np.diff(grid) > 0):
        raise DomainError("x_over_a must be strictly increasing")
    z_max = p * math.exp(float(grid[-1]) / 2.0)
    if z_max > specfun.Z_SERIES_MAX:
        x_bound = 2.0 * math.log(specfun.Z_SERIES_MAX / p)
        raise SeriesRangeError(
            f"z reaches {z_max:.3g} beyond the certified series bound "
            f"{specfun.Z_SERIES_MAX:g}; keep x/a below {x_bound:.3g}"
        )

    psi = np.empty(grid.size, dtype=complex)
    dpsi = np.empty(grid.size, dtype=complex)
    for i, xi in enumerate(grid):
        z = p * math.exp(0.5 * float(xi))
        if side == "left":
            ev = specfun.hankel_imag_order(q, z, kind=1)
            psi[i] = ev.value
            dpsi[i] = ev.dvalue * (0.5 * z)
        else:
            ev = specfun.bessel_j_imag_order(q, z, sign=-1)
            scale = 2.0 * math.exp(-math.pi * q)
            psi[i] = scale * ev.value
            dpsi[i] = scale * ev.dvalue * (0.5 * z)
    profile = np.imag(np.conj(psi) * dpsi)
    mean = float(np.mean(profile))
    if mean == 0.0:
        spread = float(np.max(np.abs(profile)))
    else:
        spread = float((np.max(profile) - np.min(profile)) / abs(mean))
    return WaveSolution(
        grid=grid, psi=psi, dpsi=dpsi, flux_profile=profile, wronskian_drift=spread
    )


def _check_pq(p: float, q: float) -> None:
    if not (isinstance(p, (int, float)) and math.isfinite(p) and p > 0):
        raise DomainError(f"p must be finite and > 0, got {p!r}")
    if not (isinstance(q, (int, float)) and math.isfinite(q)):
        raise DomainError(f"q must be finite, got {q!r}")
    if q <= specfun.Q_MIN:
        raise DegenerateOrderError(
            f"q = {q!r} at or below the degenerate-order threshold {specfun.Q_MIN:g}"
        )
    if math.pi * q > 700.0:
        raise DomainError(f"q = {q!r} overflows exp(pi q) in double precision")
