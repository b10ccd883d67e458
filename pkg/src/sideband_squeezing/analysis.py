"""Closed-form spectra, pole structure, regime labels and dip extraction."""
from __future__ import annotations

import enum
from dataclasses import dataclass, field
from typing import NamedTuple

import numpy as np

MERGED_BAND = 0.05


class Regime(str, enum.Enum):
    THREE_PEAK = "ThreePeak"
    MERGED = "Merged"
    SINGLE_NARROW = "SingleNarrow"


class Minimum(NamedTuple):
    location: float
    value: float
    fwhm: float | None


@dataclass
class SpectrumTrace:
    omega_grid: np.ndarray
    s_plus: np.ndarray
    s_minus: np.ndarray
    s_analytic: np.ndarray
    s_flat: np.ndarray
    minima: list[Minimum] = field(default_factory=list)
    regime: Regime | None = None
    weakly_resolved: bool = False

    @property
    def s_full(self) -> np.ndarray:
        return self.s_minus

    def __len__(self):
        return len(self.omega_grid)


def s_analytic(omega, theta, sigma, kappa):
    """Squeezing spectrum of the ideal model (no radiative loss, equal cavity widths)."""
    w2 = np.square(omega)
    den = (kappa**2 + w2) * ((w2 - theta**2) ** 2 + w2 * kappa**2)
    return 1 - kappa**2 * (theta**4 - sigma**4) / den


def s_flat(omega, theta, sigma):
    """The ideal spectrum at the broadband point kappa = theta."""
    return 1 - theta**2 * (theta**4 - sigma**4) / (theta**6 + np.power(omega, 6))


def poles(theta: float, kappa: float) -> tuple[complex, complex, complex]:
    """Poles of the ideal spectrum's transfer function, all in the lower half plane."""
    root = np.sqrt(complex(theta**2 - kappa**2 / 4))
    return -1j * kappa, -0.5j * kappa + root, -0.5j * kappa - root


def classify_regime(theta: float, kappa: float) -> Regime:
    r = theta / kappa
    if abs(r - 1) <= MERGED_BAND:
        return Regime.MERGED
    if r <= 0.5:
        return Regime.SINGLE_NARROW
    return Regime.THREE_PEAK


def is_weakly_resolved(theta: float, kappa: float) -> bool:
    """True in the band kappa/2 < theta < kappa, labelled three-peak but barely split."""
    r = theta / kappa
    return 0.5 < r < 1 - MERGED_BAND


def _half_crossing(w, s, i, step, level):
    j = i
    while 0 <= j + step < len(s):
        j += step
        if s[j] >= level:
            a, b = j - step, j
            return w[a] + (level - s[a]) * (w[b] - w[a]) / (s[b] - s[a])
    return None


def extract_minima(trace, min_depth: float = 1e-9) -> list[Minimum]:
    """Dips below shot noise, with parabolic refinement and FWHM at half depth.

    ``trace`` is a SpectrumTrace (its full spectrum is used) or a pair
    (omega, values). Half depth is measured from shot noise (S = 1) down to
    the dip; a dip whose half-depth crossing lies outside the grid gets
    ``fwhm=None``.
    """
    if isinstance(trace, SpectrumTrace):
        w, s = trace.omega_grid, trace.s_full
    else:
        w, s = trace
    w = np.asarray(w, dtype=float)
    s = np.asarray(s, dtype=float)
    out = []
    for i in range(1, len(s) - 1):
        if not (s[i] < s[i - 1] and s[i] <= s[i + 1]):
            continue
        if s[i] >= 1 - min_depth:
            continue
        loc, val = w[i], s[i]
        den = s[i - 1] - 2 * s[i] + s[i + 1]
        if den > 0:
            off = 0.5 * (s[i - 1] - s[i + 1]) / den
            h = w[i + 1] - w[i]
            loc = w[i] + off * h
            val = s[i] - 0.25 * (s[i - 1] - s[i + 1]) * off
        level = (1 + s[i]) / 2
        left = _half_crossing(w, s, i, -1, level)
        right = _half_crossing(w, s, i, 1, level)
        width = None if left is None or right is None else float(right - left)
        out.append(Minimum(float(loc), float(val), width))
    return out


def entanglement_criteria(s_plus: float, s_minus: float) -> tuple[bool, bool]:
    """(sum criterion, product criterion) for the two output sideband modes."""
    if s_plus < 0 or s_minus < 0:
        raise ValueError("spectra are nonnegative noise powers")
    return s_plus + s_minus < 2, s_plus * s_minus < 1
