"""Sampled wavefunctions and probability flux.

The probability flux of a stationary state psi is

    J = (hbar/m) * Im(conj(psi) * dpsi/dx)

with the time convention psi * exp(-i E t / hbar), so positive flux means
rightward motion.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

TWO_PI = 2.0 * math.pi


@dataclass(frozen=True)
class WaveSolution:
    """A wavefunction sampled on an ascending grid.

    Attributes
    ----------
    grid : ndarray
        Sample positions x, strictly ascending.
    psi : ndarray of complex
        Wavefunction values.
    dpsi : ndarray of complex
        d(psi)/dx at the same positions.
    flux_profile : ndarray of float
        Probability flux at each sample.  Constant up to solver error
        for any solution of the stationary equation.
    wronskian_drift : float
        Quality figure of the solution.  For an integrated basis this is
        max |W[u, v] - 1| over the grid; closed-form solutions report the
        relative spread of their flux profile instead.
    """

    grid: np.ndarray
    psi: np.ndarray
    dpsi: np.ndarray
    flux_profile: np.ndarray
    wronskian_drift: float


def flux(psi, dpsi, mass: float, hbar: float):
    """Probability flux (hbar/m) Im(psi* dpsi) for scalars or arrays."""
    return (hbar / mass) * np.imag(np.conjugate(psi) * dpsi)


def principal_angle(angle: float) -> float:
    """Reduce an angle to the interval (-pi, pi]."""
    r = math.remainder(angle, TWO_PI)
    if r <= -math.pi:
        r += TWO_PI
    return r


def angle_distance(a: float, b: float) -> float:
    """Distance between two angles modulo 2*pi, in [0, pi]."""
    return abs(math.remainder(a - b, TWO_PI))
