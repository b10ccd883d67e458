"""Lowest-order scattering amplitudes, rates and Stark-shift coefficients.

These are the perturbative (T-matrix) counterparts of the Langevin
coefficients in :mod:`params` and serve as an independent cross-check of
them. Functions take the trap frequency explicitly (``nu``); it defaults
to the bare ``p.nu``.
"""
from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .params import SystemParams

DEFAULT_ALPHA = 2 / 5  # angular-dispersion factor; a convention, not a measured value


@dataclass(frozen=True)
class ScatteringAmplitudes:
    t_sp_0: complex
    t_sp_plus: complex
    t_sp_minus: complex
    t_cav_0: tuple[complex, complex]
    t_cav_plus: tuple[complex, complex]
    t_cav_minus: tuple[complex, complex]
    theta_ks: float
    gamma: float


def _nu(p, nu):
    return p.nu if nu is None else nu


def spontaneous_amplitudes(p: SystemParams, theta_ks: float, nu: float | None = None):
    """Free-space amplitudes (carrier, blue, red) for emission at angle ``theta_ks``."""
    nu = _nu(p, nu)
    if p.gamma <= 0:
        raise ValueError("spontaneous amplitudes need gamma > 0")
    hg = 0.5j * p.gamma
    pref = p.eta * p.gamma * p.omega_rabi
    recoil = math.cos(theta_ks) / (p.delta + hg)
    t0 = p.gamma * p.omega_rabi / (p.delta + hg)
    t_plus = pref * (math.cos(p.theta_L) / (p.delta - nu + hg) + recoil)
    t_minus = pref * (math.cos(p.theta_L) / (p.delta + nu + hg) + recoil)
    return complex(t0), complex(t_plus), complex(t_minus)


def cavity_amplitudes(p: SystemParams, mode: int, nu: float | None = None):
    """Amplitudes (carrier, blue, red) for scattering a laser photon into cavity mode ``mode``."""
    nu = _nu(p, nu)
    hg = 0.5j * p.gamma
    phi = p.phi(mode)
    base = p.omega_rabi * np.conj(p.g(mode)) * math.cos(phi)
    cavity_term = math.cos(p.theta_c) * math.tan(phi) / (p.delta + hg)
    t0 = base / (p.delta + hg)
    t_plus = p.eta * base * (1j * math.cos(p.theta_L) / (p.delta - nu + hg) - cavity_term)
    t_minus = p.eta * base * (1j * math.cos(p.theta_L) / (p.delta + nu + hg) - cavity_term)
    return complex(t0), complex(t_plus), complex(t_minus)


def scattering_amplitudes(
    p: SystemParams, theta_ks: float = 0.0, nu: float | None = None
) -> ScatteringAmplitudes:
    sp = spontaneous_amplitudes(p, theta_ks, nu)
    cav = [cavity_amplitudes(p, m, nu) for m in (1, 2)]
    return ScatteringAmplitudes(
        t_sp_0=sp[0],
        t_sp_plus=sp[1],
        t_sp_minus=sp[2],
        t_cav_0=(cav[0][0], cav[1][0]),
        t_cav_plus=(cav[0][1], cav[1][1]),
        t_cav_minus=(cav[0][2], cav[1][2]),
        theta_ks=theta_ks,
        gamma=p.gamma,
    )


def _check_levels(n, n_prime):
    if n < 0 or n_prime < 0:
        raise ValueError(f"phonon numbers must be nonnegative, got n={n}, n'={n_prime}")


def spontaneous_rate(amps: ScatteringAmplitudes, n: int, n_prime: int) -> float:
    """Free-space scattering rate from |n> to |n'>; zero beyond first order in eta.

    The 1/gamma prefactor is kept as printed; only ratios of this rate are
    meaningful.
    """
    _check_levels(n, n_prime)
    gamma = amps.gamma
    if n_prime == n:
        return abs(amps.t_sp_0) ** 2 / gamma
    if n_prime == n + 1:
        return abs(amps.t_sp_plus) ** 2 * (n + 1) / gamma
    if n_prime == n - 1:
        return abs(amps.t_sp_minus) ** 2 * n / gamma
    return 0.0


def motional_decoherence_rate(p: SystemParams, alpha: float = DEFAULT_ALPHA) -> float:
    """Rate gamma_b at which spontaneous recoils randomize the motional state."""
    if alpha < 0:
        raise ValueError("alpha must be nonnegative")
    return (
        p.eta**2
        * (math.cos(p.theta_L) ** 2 + alpha)
        * p.gamma
        * abs(p.omega_rabi) ** 2
        / p.delta**2
    )


def cavity_scattering_rate(
    p: SystemParams, mode: int, n: int, n_prime: int, delta_j: float, nu: float | None = None
) -> float:
    """Rate of scattering a laser photon through cavity mode ``mode`` and out its mirror."""
    nu = _nu(p, nu)
    kappa = p.kappa(mode)
    if kappa <= 0:
        raise ValueError("cavity_scattering_rate needs kappa_j > 0")
    _check_levels(n, n_prime)
    t0, t_plus, t_minus = cavity_amplitudes(p, mode, nu)
    if n_prime == n:
        return 2 * kappa / (delta_j**2 + kappa**2) * abs(t0) ** 2
    if n_prime == n + 1:
        return 2 * kappa / ((delta_j - nu) ** 2 + kappa**2) * abs(t_plus) ** 2 * (n + 1)
    if n_prime == n - 1:
        return 2 * kappa / ((delta_j + nu) ** 2 + kappa**2) * abs(t_minus) ** 2 * n
    return 0.0


def cavity_spontaneous_loss(p: SystemParams, mode: int, m_j: int, delta_j: float) -> float:
    """Loss rate of an m_j-photon cavity state through atomic re-scattering (tan(phi_j) = 0)."""
    if m_j < 0:
        raise ValueError("photon number must be nonnegative")
    return p.gamma * abs(p.g(mode)) ** 2 * m_j / ((p.delta - delta_j) ** 2 + p.gamma**2 / 4)


def stark_shift_coefficients(
    p: SystemParams, deltas: tuple[float, float], nu: float | None = None
) -> tuple[float, tuple[float, float]]:
    """Per-phonon trap-frequency shift and per-photon shifts of the two cavity modes.

    The motional coefficient is computed from the real part of the
    resolvent sum, not the expanded rational form used in :mod:`params`.
    """
    nu = _nu(p, nu)
    hg = 0.5j * p.gamma
    resolvent = 1 / (p.delta + nu + hg) + 1 / (p.delta - nu + hg) - 1 / (p.delta + hg)
    dnu_b = p.eta**2 * math.cos(p.theta_L) ** 2 * abs(p.omega_rabi) ** 2 * resolvent.real
    domega = []
    for mode, d in zip((1, 2), deltas):
        x = p.delta - d
        domega.append(abs(p.g(mode)) ** 2 * math.cos(p.phi(mode)) ** 2 * x / (x**2 + p.gamma**2 / 4))
    return dnu_b, (domega[0], domega[1])
