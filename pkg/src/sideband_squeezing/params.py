"""Physical inputs and the coefficients of the effective Langevin equations.

All frequencies and rates are angular (rad/s). Conversion from ordinary
frequencies happens once, in the configuration loader.
"""
from __future__ import annotations

import math
import warnings
from dataclasses import asdict, dataclass
from typing import NamedTuple

import numpy as np

from .errors import (
    AmplificationRegimeError,
    FixedPointError,
    HeatingRegimeError,
    ParameterError,
    PhysicsError,
    RegimeWarning,
)

# factor by which a scale must dominate another for the regime checks
REGIME_FACTOR = 5.0
LAMB_DICKE_WARN = 0.3
NODE_TOLERANCE = 1e-6


@dataclass(frozen=True)
class SystemParams:
    gamma: float
    nu: float
    eta: float
    omega_rabi: float
    delta: float
    g1: float
    g2: float
    phi1: float = 0.0
    phi2: float = 0.0
    theta_L: float = 0.0
    theta_c: float = math.pi / 2
    kappa1: float = 0.0
    kappa2: float = 0.0
    kappa_b: float = 0.0
    nbar: float = 0.0

    def g(self, mode: int) -> float:
        return _pick(mode, self.g1, self.g2)

    def phi(self, mode: int) -> float:
        return _pick(mode, self.phi1, self.phi2)

    def kappa(self, mode: int) -> float:
        return _pick(mode, self.kappa1, self.kappa2)

    def as_dict(self) -> dict:
        return asdict(self)


def _pick(mode, first, second):
    if mode == 1:
        return first
    if mode == 2:
        return second
    raise ValueError(f"cavity mode must be 1 or 2, got {mode!r}")


def validate(p: SystemParams, *, warn: bool = True) -> list[str]:
    """Check hard constraints and return (and optionally emit) regime warnings.

    Raises ParameterError for negative rates or eta >= 1. Violated scale
    separations are only reported, so regime boundaries can be explored.
    """
    nonneg = ["gamma", "nu", "eta", "kappa1", "kappa2", "kappa_b", "nbar"]
    for name in nonneg:
        if getattr(p, name) < 0:
            raise ParameterError(f"{name} must be nonnegative, got {getattr(p, name)}")
    for name in ("omega_rabi", "g1", "g2"):
        value = getattr(p, name)
        if np.isrealobj(value) and value < 0:
            raise ParameterError(f"{name} must be nonnegative, got {value}")
    if p.eta >= 1:
        raise ParameterError(f"Lamb-Dicke parameter must be < 1, got {p.eta}")

    messages = regime_warnings(p)
    if warn:
        for msg in messages:
            warnings.warn(msg, RegimeWarning, stacklevel=2)
    return messages


def regime_warnings(p: SystemParams) -> list[str]:
    out = []
    if p.eta > LAMB_DICKE_WARN:
        out.append(f"eta = {p.eta:g} > {LAMB_DICKE_WARN}: Lamb-Dicke expansion questionable")
    far = {"gamma": p.gamma, "Omega": abs(p.omega_rabi), "g1": abs(p.g1), "g2": abs(p.g2)}
    for name, value in far.items():
        if abs(p.delta) < REGIME_FACTOR * value:
            out.append(f"|Delta| is not >> {name} (ratio {_ratio(abs(p.delta), value)})")
    resolved = {
        "gamma": p.gamma,
        "kappa1": p.kappa1,
        "kappa2": p.kappa2,
        "g1": abs(p.g1),
        "g2": abs(p.g2),
        "eta*Omega": p.eta * abs(p.omega_rabi),
    }
    for name, value in resolved.items():
        if p.nu < REGIME_FACTOR * value:
            out.append(f"nu is not >> {name} (ratio {_ratio(p.nu, value)})")
    return out


def _ratio(a, b):
    return "inf" if b == 0 else f"{a / b:.3g}"


# -- trap frequency renormalization ------------------------------------------


def effective_trap_frequency(
    p: SystemParams, *, refine: bool = False, rtol: float = 1e-9, max_iter: int = 100
) -> float:
    """Renormalized trap frequency nu'.

    The default is the closed-form estimate with the bare trap frequency on
    the right-hand side. With ``refine=True`` the motional Stark shift is
    iterated to self-consistency, nu' = nu + delta_b(nu').
    """
    g2 = p.gamma**2 / 4
    s = p.eta**2 * abs(p.omega_rabi) ** 2 * math.cos(p.theta_L) ** 2
    c = g2 + p.delta**2 - p.nu**2
    nu_prime = (
        p.nu
        + 2 * p.delta * s * c / (c**2 + p.nu**2 * p.gamma**2)
        - s * p.delta / (p.delta**2 + g2)
    )
    if not refine:
        return nu_prime

    for _ in range(max_iter):
        updated = p.nu + motional_shift(p, nu_prime)
        if not math.isfinite(updated):
            break
        if abs(updated - nu_prime) < rtol * p.nu:
            return updated
        nu_prime = updated
    raise FixedPointError("no self-consistent nu'")


def motional_shift(p: SystemParams, nu_prime: float) -> float:
    """Motional a.c.-Stark shift delta_b evaluated at trap frequency nu_prime."""
    g2 = p.gamma**2 / 4
    s = p.eta**2 * abs(p.omega_rabi) ** 2 * math.cos(p.theta_L) ** 2
    c = g2 + p.delta**2 - nu_prime**2
    return 2 * p.delta * s * c / (c**2 + nu_prime**2 * p.gamma**2) - s * p.delta / (
        p.delta**2 + g2
    )


# -- couplings ---------------------------------------------------------------


def coupling_chi(p: SystemParams, nu_prime: float, mode: int, barred: bool = False) -> complex:
    """Raman coupling chi_j (or chi-bar_j when ``barred``) between mode j and the motion.

    Mode 1 is the Stokes (Delta - nu') sideband, mode 2 the anti-Stokes one.
    The barred variant flips the sign of the linewidth term in the laser
    denominator only.
    """
    g = p.g(mode)
    phi = p.phi(mode)
    cos_c = math.cos(p.theta_c)
    if abs(cos_c) > 1e-12 and abs(math.cos(phi)) < NODE_TOLERANCE:
        raise ParameterError(
            f"phi{mode} = {phi} sits at a standing-wave node where tan(phi) diverges"
        )
    sign = -1 if mode == 1 else 1
    half = -0.5j * p.gamma if barred else 0.5j * p.gamma
    laser_den = p.delta + sign * nu_prime + half
    cavity_den = p.delta + 0.5j * p.gamma
    if laser_den == 0 or cavity_den == 0:
        raise PhysicsError("vanishing Raman denominator: laser resonant with a sideband")
    return (
        p.eta
        * p.omega_rabi
        * np.conj(g)
        * math.cos(phi)
        * (math.cos(p.theta_L) / laser_den + 1j * math.tan(phi) * cos_c / cavity_den)
    )


def theta_sigma(chi1: complex, chi2: complex) -> tuple[float, float]:
    """Return (Theta, Sigma): the exchange frequency and the residual-noise scale."""
    a1, a2 = abs(chi1), abs(chi2)
    if a2 <= a1:
        raise AmplificationRegimeError("amplification regime: no periodic dynamics")
    theta = math.sqrt(a2**2 - a1**2)
    sigma = math.sqrt(abs(a2**2 + a1**2 - 2 * chi1 * chi2))
    return theta, sigma


# -- radiative rates and shifts ---------------------------------------------


class RadiativeRates(NamedTuple):
    kappa_1L: float
    kappa_2L: float
    kbar_1L: complex
    kbar_2L: complex
    kappa_1b: float
    kappa_2b: float
    kbar_1b: complex
    kbar_2b: complex


def radiative_rates(p: SystemParams, nu_prime: float) -> RadiativeRates:
    hg = p.gamma / 2
    lo = p.delta - nu_prime  # Stokes detuning
    hi = p.delta + nu_prime  # anti-Stokes detuning
    c1 = math.cos(p.phi1)
    c2 = math.cos(p.phi2)
    motion = p.eta * math.cos(p.theta_L)

    k1L = hg * abs(p.g1) ** 2 * c1**2 / (hg**2 + lo**2)
    k2L = hg * abs(p.g2) ** 2 * c2**2 / (hg**2 + hi**2)
    k1b = hg * motion**2 * abs(p.omega_rabi) ** 2 / (hg**2 + lo**2)
    k2b = hg * motion**2 * abs(p.omega_rabi) ** 2 / (hg**2 + hi**2)

    root = math.sqrt(hg)
    kb1L = -1j * root * p.g1 * c1 / (hg + 1j * lo)
    kb2L = 1j * root * np.conj(p.g2) * c2 / (hg - 1j * hi)
    kb1b = root * motion * p.omega_rabi / (hg + 1j * lo)
    kb2b = root * motion * np.conj(p.omega_rabi) / (hg - 1j * hi)
    return RadiativeRates(k1L, k2L, complex(kb1L), complex(kb2L), k1b, k2b, complex(kb1b), complex(kb2b))


def stark_shifts(p: SystemParams, nu_prime: float) -> tuple[float, float, float]:
    """(delta_1L, delta_2L, delta_b): Stark shifts of the two cavity modes and the motion."""
    g2 = p.gamma**2 / 4
    lo = p.delta - nu_prime
    hi = p.delta + nu_prime
    d1L = lo * abs(p.g1) ** 2 * math.cos(p.phi1) ** 2 / (g2 + lo**2)
    d2L = hi * abs(p.g2) ** 2 * math.cos(p.phi2) ** 2 / (g2 + hi**2)
    return d1L, d2L, motional_shift(p, nu_prime)


def resonance_detunings(delta_1L: float, delta_2L: float, nu_prime: float) -> tuple[float, float]:
    """Laser-cavity detunings that put both modes on the motional sidebands."""
    return delta_1L + nu_prime, delta_2L - nu_prime


def thermal_occupation(kappa_1b: float, kappa_2b: float) -> float:
    """Steady-state phonon number of the radiative reservoir alone."""
    if kappa_2b <= kappa_1b:
        raise HeatingRegimeError("heating regime")
    return kappa_1b / (kappa_2b - kappa_1b)


def cooling_limit_estimate(delta: float, nu_prime: float) -> float:
    """Large-detuning estimate |Delta| / (4 nu') of the thermal occupation."""
    return abs(delta) / (4 * nu_prime)


# -- bundle ------------------------------------------------------------------


@dataclass(frozen=True)
class DerivedCouplings:
    nu_prime: float
    chi1: complex
    chi2: complex
    chi1_bar: complex
    chi2_bar: complex
    theta_big: float
    sigma_big: float
    kappa_1L: float
    kappa_2L: float
    kbar_1L: complex
    kbar_2L: complex
    kappa_1b: float
    kappa_2b: float
    kbar_1b: complex
    kbar_2b: complex
    delta_1L: float
    delta_2L: float
    delta_b: float
    delta_1: float
    delta_2: float
    n_th: float

    @property
    def periodic(self) -> bool:
        return abs(self.chi2) > abs(self.chi1)


def derive_couplings(
    p: SystemParams, *, refine_nu_prime: bool = False, nu_prime: float | None = None
) -> DerivedCouplings:
    """Evaluate every coefficient of the effective Langevin equations.

    Theta/Sigma are NaN outside the periodic regime and n_th is NaN in the
    heating regime; the dedicated functions raise instead.
    """
    validate(p, warn=False)
    if nu_prime is None:
        nu_prime = effective_trap_frequency(p, refine=refine_nu_prime)
    chis = [coupling_chi(p, nu_prime, m, barred) for barred in (False, True) for m in (1, 2)]
    chi1, chi2, chi1_bar, chi2_bar = chis
    try:
        theta, sigma = theta_sigma(chi1, chi2)
    except AmplificationRegimeError:
        theta = sigma = math.nan
    rates = radiative_rates(p, nu_prime)
    d1L, d2L, db = stark_shifts(p, nu_prime)
    delta_1, delta_2 = resonance_detunings(d1L, d2L, nu_prime)
    try:
        n_th = thermal_occupation(rates.kappa_1b, rates.kappa_2b)
    except HeatingRegimeError:
        n_th = 0.0 if rates.kappa_1b == rates.kappa_2b == 0 else math.nan
    return DerivedCouplings(
        nu_prime=nu_prime,
        chi1=complex(chi1),
        chi2=complex(chi2),
        chi1_bar=complex(chi1_bar),
        chi2_bar=complex(chi2_bar),
        theta_big=theta,
        sigma_big=sigma,
        **rates._asdict(),
        delta_1L=d1L,
        delta_2L=d2L,
        delta_b=db,
        delta_1=delta_1,
        delta_2=delta_2,
        n_th=n_th,
    )
