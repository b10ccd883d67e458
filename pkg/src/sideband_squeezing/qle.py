"""Linearized Langevin model of the two sideband modes and the motion.

State vector (a1, a2, b, a1^dag, a2^dag, b^dag) in the frames rotating at
the sideband frequencies. Noise ports, in order:

    0 a1_in   1 a2_in   2 a1L_in   3 a2L_in   4 b_in   5..9 their adjoints

a1L_in and a2L_in are the two sideband components of the atom's
spontaneous-emission reservoir. Each of them drives a cavity row *and*
the motional row, which is how the correlation between radiative cavity
loss and radiative motional noise enters; the two are mutually
independent.

Fourier convention: X(w) = int dt e^{+iwt} X(t), so d/dt -> -iw.
"""
from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from . import analysis
from .errors import UnstableModelError
from .params import DerivedCouplings, SystemParams

A1, A2, B, A1D, A2D, BD = range(6)
P_A1, P_A2, P_A1L, P_A2L, P_B = range(5)
N_PORTS = 5
_SWAP_STATE = [3, 4, 5, 0, 1, 2]
_SWAP_PORT = [5, 6, 7, 8, 9, 0, 1, 2, 3, 4]


@dataclass(frozen=True)
class LinearNoiseModel:
    drift: np.ndarray
    noise_routing: np.ndarray
    input_corr: np.ndarray
    output_coupling: tuple[float, float]
    theta: float = math.nan
    sigma: float = math.nan

    def spectral_abscissa(self) -> float:
        return float(np.max(np.linalg.eigvals(self.drift).real))


def _complete(top_a: np.ndarray, top_b: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
    drift = np.zeros((6, 6), dtype=complex)
    routing = np.zeros((6, 2 * N_PORTS), dtype=complex)
    drift[:3] = top_a
    routing[:3] = top_b
    drift[3:] = np.conj(top_a[:, _SWAP_STATE])
    routing[3:] = np.conj(top_b[:, _SWAP_PORT])
    return drift, routing


def input_correlations(nbar: float) -> np.ndarray:
    """D with <n_k(t) n_l(t')> = D_kl delta(t - t')."""
    d = np.zeros((2 * N_PORTS, 2 * N_PORTS))
    for k in range(N_PORTS):
        d[k, k + N_PORTS] = 1.0  # <x x^dag>
    d[P_B, P_B + N_PORTS] = nbar + 1
    d[P_B + N_PORTS, P_B] = nbar  # <b^dag b>
    return d


def detuning_offsets(dc: DerivedCouplings, p: SystemParams, delta1: float, delta2: float):
    """Residual rotation rates of (a1^dag, a2, b) when the laser is not on the sideband resonances."""
    return (
        dc.nu_prime - delta1 + dc.delta_1L,
        dc.nu_prime + delta2 - dc.delta_2L,
        dc.nu_prime - p.nu - dc.delta_b,
    )


def assemble(
    chi1,
    chi2,
    chi1_bar,
    chi2_bar,
    kappa1: float,
    kappa2: float,
    kappa_b: float,
    nbar: float,
    *,
    kbar_1L=0j,
    kbar_2L=0j,
    kbar_1b=0j,
    kbar_2b=0j,
    offsets=(0.0, 0.0, 0.0),
    theta: float = math.nan,
    sigma: float = math.nan,
    check_stability: bool = True,
) -> LinearNoiseModel:
    k1L, k2L = abs(kbar_1L) ** 2, abs(kbar_2L) ** 2
    k1b, k2b = abs(kbar_1b) ** 2, abs(kbar_2b) ** 2
    o1, o2, ob = offsets
    r2 = math.sqrt(2)

    a = np.zeros((3, 6), dtype=complex)
    n = np.zeros((3, 2 * N_PORTS), dtype=complex)
    # a1 row: adjoint of the a1^dag equation
    a[0, A1] = -(kappa1 + k1L) - 1j * o1
    a[0, BD] = chi1
    n[0, P_A1] = math.sqrt(2 * kappa1)
    n[0, P_A1L] = r2 * np.conj(kbar_1L)
    # a2 row
    a[1, A2] = -(kappa2 + k2L) + 1j * o2
    a[1, B] = chi2
    n[1, P_A2] = math.sqrt(2 * kappa2)
    n[1, P_A2L] = r2 * kbar_2L
    # b row
    a[2, B] = -(kappa_b + k2b - k1b) + 1j * ob
    a[2, A1D] = chi1_bar
    a[2, A2] = -np.conj(chi2_bar)
    n[2, P_B] = math.sqrt(2 * kappa_b)
    n[2, P_A2L] = r2 * kbar_2b
    n[2, P_A1L + N_PORTS] = -r2 * kbar_1b

    drift, routing = _complete(a, n)
    model = LinearNoiseModel(
        drift, routing, input_correlations(nbar), (kappa1, kappa2), theta, sigma
    )
    if check_stability and model.spectral_abscissa() >= 0:
        raise UnstableModelError("unstable linearized model")
    return model


def build_model(
    dc: DerivedCouplings, p: SystemParams, *, offsets=(0.0, 0.0, 0.0)
) -> LinearNoiseModel:
    """Drift, noise routing and correlations of the resonant effective Langevin equations.

    ``offsets`` adds residual rotations (see :func:`detuning_offsets`); the
    default applies the resonance conditions exactly.
    """
    return assemble(
        dc.chi1,
        dc.chi2,
        dc.chi1_bar,
        dc.chi2_bar,
        p.kappa1,
        p.kappa2,
        p.kappa_b,
        p.nbar,
        kbar_1L=dc.kbar_1L,
        kbar_2L=dc.kbar_2L,
        kbar_1b=dc.kbar_1b,
        kbar_2b=dc.kbar_2b,
        offsets=offsets,
        theta=dc.theta_big,
        sigma=dc.sigma_big,
    )


def ideal_model(chi1, chi2, kappa: float, kappa_b: float = 0.0, nbar: float = 0.0):
    """Lossless-atom model: Raman couplings plus cavity decay and trap noise only."""
    theta = sigma = math.nan
    if abs(chi2) > abs(chi1):
        theta = math.sqrt(abs(chi2) ** 2 - abs(chi1) ** 2)
        sigma = math.sqrt(abs(abs(chi2) ** 2 + abs(chi1) ** 2 - 2 * chi1 * chi2))
    return assemble(chi1, chi2, chi1, chi2, kappa, kappa, kappa_b, nbar, theta=theta, sigma=sigma)


def _output_weights(model: LinearNoiseModel, quadrature: str):
    """Row vectors (c, d) with I(t) = c.x(t) + d.n(t) for the chosen joint quadrature."""
    r1, r2 = (math.sqrt(2 * k) for k in model.output_coupling)
    if quadrature == "minus":
        # a1 + a1^dag - a2 - a2^dag
        field = np.array([1, -1, 0, 1, -1, 0], dtype=complex)
    elif quadrature == "plus":
        # -i (a1 - a1^dag + a2 - a2^dag)
        field = -1j * np.array([1, 1, 0, -1, -1, 0], dtype=complex)
    else:
        raise ValueError(f"quadrature must be 'plus' or 'minus', got {quadrature!r}")
    c = field * np.array([r1, r2, 0, r1, r2, 0])
    d = np.zeros(2 * N_PORTS, dtype=complex)
    # a_out = sqrt(2 kappa) a - a_in
    for state_idx, port in ((A1, P_A1), (A2, P_A2), (A1D, P_A1 + N_PORTS), (A2D, P_A2 + N_PORTS)):
        d[port] = -field[state_idx]
    return c, d


def _transfer(model: LinearNoiseModel, omega: np.ndarray, c, d) -> np.ndarray:
    eye = np.eye(6)
    lhs = -1j * omega[:, None, None] * eye - model.drift
    rhs = np.broadcast_to(model.noise_routing, (len(omega), 6, 2 * N_PORTS))
    resp = np.linalg.solve(lhs, rhs)
    return np.einsum("i,wij->wj", c, resp) + d


def output_spectrum(model: LinearNoiseModel, omega, quadrature: str = "minus"):
    """Normalized symmetrized noise spectrum S(omega) of the output joint quadrature.

    Shot noise is S = 1. Accepts a scalar or an array of angular frequencies.
    """
    if model.spectral_abscissa() >= 0:
        raise UnstableModelError("unstable linearized model")
    w = np.atleast_1d(np.asarray(omega, dtype=float))
    c, d = _output_weights(model, quadrature)
    t_pos = _transfer(model, w, c, d)
    t_neg = _transfer(model, -w, c, d)
    sym = 0.5 * (model.input_corr + model.input_corr.T)
    s = 0.5 * np.einsum("wk,kl,wl->w", t_pos, sym, t_neg).real
    return float(s[0]) if np.ndim(omega) == 0 else s


def spectrum_sweep(model: LinearNoiseModel, omega_grid) -> analysis.SpectrumTrace:
    """Both quadratures on a grid, with the analytic and flat-band references.

    The references use the model's Theta, Sigma and the mean cavity width;
    they are NaN when the model carries no Theta.
    """
    w = np.asarray(omega_grid, dtype=float)
    if w.size > 1 and np.any(np.diff(w) <= 0):
        raise ValueError("omega grid must be strictly increasing")
    if w.size == 0:
        empty = np.array([])
        return analysis.SpectrumTrace(empty, empty, empty, empty, empty)
    s_plus = output_spectrum(model, w, "plus")
    s_minus = output_spectrum(model, w, "minus")
    kappa = 0.5 * sum(model.output_coupling)
    theta, sigma = model.theta, model.sigma
    if math.isfinite(theta):
        ref = analysis.s_analytic(w, theta, sigma, kappa)
        flat = analysis.s_flat(w, theta, sigma)
        regime = analysis.classify_regime(theta, kappa)
        weak = analysis.is_weakly_resolved(theta, kappa)
    else:
        ref = flat = np.full_like(w, math.nan)
        regime, weak = None, False
    trace = analysis.SpectrumTrace(w, s_plus, s_minus, ref, flat, regime=regime, weakly_resolved=weak)
    trace.minima = analysis.extract_minima(trace)
    return trace
