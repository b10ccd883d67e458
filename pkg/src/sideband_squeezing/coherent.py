"""Lossless three-mode dynamics generated by the effective Raman Hamiltonian.

Operators are stacked as the doubled vector (a1, a2, b, a1^dag, a2^dag, b^dag).
A mode map M acts as x(t) = M x(0); second moments are the symmetrized
V_ij = <{x_i, x_j^dag}>/2, so the vacuum is I/2 and V(t) = M V(0) M^dag.
"""
from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .params import theta_sigma

A1, A2, B, A1D, A2D, BD = range(6)
METRIC = np.diag([1.0, 1.0, 1.0, -1.0, -1.0, -1.0])


@dataclass(frozen=True)
class ModeMap:
    entries: np.ndarray
    time: float


@dataclass(frozen=True)
class GaussianState:
    cov: np.ndarray


def _conjugate_half(top: np.ndarray) -> np.ndarray:
    """Complete a 3x6 block of annihilation rows with the matching creation rows."""
    swap = [3, 4, 5, 0, 1, 2]
    full = np.zeros((6, 6), dtype=complex)
    full[:3] = top
    full[3:] = np.conj(top[:, swap])
    return full


def generator(chi1: complex, chi2: complex) -> np.ndarray:
    """Heisenberg generator G with dx/dt = G x for the Raman Hamiltonian."""
    top = np.zeros((3, 6), dtype=complex)
    top[0, BD] = chi1
    top[1, B] = chi2
    top[2, A1D] = chi1
    top[2, A2] = -np.conj(chi2)
    return _conjugate_half(top)


def evolution_map(chi1: complex, chi2: complex, t: float) -> ModeMap:
    """Closed-form Heisenberg propagator at time ``t``; requires |chi2| > |chi1|."""
    theta, _ = theta_sigma(chi1, chi2)
    c = math.cos(theta * t)
    s = math.sin(theta * t)
    n1, n2 = abs(chi1) ** 2, abs(chi2) ** 2
    th2 = theta**2
    mix = chi1 * chi2 * (1 - c) / th2

    top = np.zeros((3, 6), dtype=complex)
    top[0, BD] = chi1 * s / theta
    top[0, A1] = (n2 - n1 * c) / th2
    top[0, A2D] = -mix
    top[1, B] = chi2 * s / theta
    top[1, A1D] = mix
    top[1, A2] = -(n1 - n2 * c) / th2
    top[2, B] = c
    top[2, A2] = -np.conj(chi2) * s / theta
    top[2, A1D] = chi1 * s / theta
    return ModeMap(_conjugate_half(top), t)


def generator_check(chi1: complex, chi2: complex) -> float:
    """Largest deviation between a central difference of the map at t=0 and the generator."""
    theta, _ = theta_sigma(chi1, chi2)
    h = 1e-6 / theta
    fd = (evolution_map(chi1, chi2, h).entries - evolution_map(chi1, chi2, -h).entries) / (2 * h)
    return float(np.max(np.abs(fd - generator(chi1, chi2))))


def vacuum_state() -> GaussianState:
    return GaussianState(np.eye(6, dtype=complex) / 2)


def propagate_vacuum(mode_map: ModeMap) -> GaussianState:
    m = mode_map.entries
    return GaussianState(m @ vacuum_state().cov @ m.conj().T)


# x = (a + a^dag)/sqrt2, p = -i (a - a^dag)/sqrt2, ordered (x1, x2, xb, p1, p2, pb)
_R = np.zeros((6, 6), dtype=complex)
for _k in range(3):
    _R[_k, _k] = _R[_k, _k + 3] = 1 / math.sqrt(2)
    _R[_k + 3, _k] = -1j / math.sqrt(2)
    _R[_k + 3, _k + 3] = 1j / math.sqrt(2)


def quadrature_covariance(state: GaussianState) -> np.ndarray:
    """Real symmetrized covariance of (x1, x2, xb, p1, p2, pb); vacuum is I/2."""
    return (_R @ state.cov @ _R.conj().T).real


def duan_combination(state: GaussianState) -> float:
    """Var(x1 - x2) + Var(p1 + p2); below 2 certifies entanglement of the cavity modes."""
    v = quadrature_covariance(state)
    u = np.array([1.0, -1.0, 0, 0, 0, 0])
    w = np.array([0, 0, 0, 1.0, 1.0, 0])
    return float(u @ v @ u + w @ v @ w)


def motion_cavity_correlation(state: GaussianState) -> float:
    """Largest |second moment| linking the motional mode to either cavity mode."""
    motion = [B, BD]
    cavity = [A1, A2, A1D, A2D]
    return float(np.max(np.abs(state.cov[np.ix_(motion, cavity)])))


def covariance_trace(chi1: complex, chi2: complex, times) -> list[tuple[float, GaussianState]]:
    out = []
    for t in times:
        out.append((float(t), propagate_vacuum(evolution_map(chi1, chi2, float(t)))))
    return out

