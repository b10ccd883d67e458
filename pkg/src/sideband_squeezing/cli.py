"""Command-line entry point: ``sideband-squeezing {report,spectrum,coherent,figure}``.

Exit codes: 0 success, 1 configuration error, 2 model/physics error.
"""
from __future__ import annotations

import argparse
import csv
import io
import json
import math
import sys
from pathlib import Path

import numpy as np

from . import analysis, coherent, qle, scattering
from .config import PRESETS, RunConfig, Sweep, load_config, preset_config
from .errors import ConfigError, PhysicsError
from .params import (
    DerivedCouplings,
    cooling_limit_estimate,
    derive_couplings,
    regime_warnings,
    theta_sigma,
)

TWO_PI = 2 * math.pi
DEFAULT_POINTS = 2001


def _hz(x):
    return x / TWO_PI


def _cplx(z):
    return {"re": float(np.real(z)), "im": float(np.imag(z))}


def _couplings_doc(dc: DerivedCouplings) -> dict:
    doc = {}
    for name, value in vars(dc).items():
        if name == "n_th":
            doc[name] = value
        elif isinstance(value, complex):
            # amplitude factors carry sqrt(rate) units; everything else is a rate
            scale = math.sqrt(TWO_PI) if name.startswith("kbar") else TWO_PI
            doc[name + ("" if name.startswith("kbar") else "_hz")] = _cplx(value / scale)
        else:
            doc[name + "_hz"] = _hz(value)
    return doc


def run_report(cfg: RunConfig) -> dict:
    """All derived coefficients, scattering diagnostics, regime label and warnings."""
    p = cfg.params
    dc = derive_couplings(p, refine_nu_prime=cfg.refine_nu_prime)
    kappa = 0.5 * (p.kappa1 + p.kappa2)

    diag = {"gamma_b_hz": _hz(scattering.motional_decoherence_rate(p, cfg.alpha))}
    if p.gamma > 0:
        amps = scattering.scattering_amplitudes(p, nu=dc.nu_prime)
        diag["free_space_rate_carrier_hz"] = _hz(scattering.spontaneous_rate(amps, 0, 0))
        diag["free_space_rate_blue_hz"] = _hz(scattering.spontaneous_rate(amps, 0, 1))
        diag["free_space_rate_red_n1_hz"] = _hz(scattering.spontaneous_rate(amps, 1, 0))
    for mode, d in ((1, dc.delta_1), (2, dc.delta_2)):
        if p.kappa(mode) > 0:
            # blue sideband into mode 1, red sideband into mode 2
            n, n_prime = (0, 1) if mode == 1 else (1, 0)
            diag[f"cavity_rate_mode{mode}_hz"] = _hz(
                scattering.cavity_scattering_rate(p, mode, n, n_prime, d, nu=dc.nu_prime)
            )
        diag[f"cavity_spontaneous_loss_mode{mode}_hz"] = _hz(
            scattering.cavity_spontaneous_loss(p, mode, 1, d)
        )
    dnu_b, domega = scattering.stark_shift_coefficients(p, (dc.delta_1, dc.delta_2), nu=dc.nu_prime)
    diag["stark_per_phonon_hz"] = _hz(dnu_b)
    diag["stark_per_photon_mode1_hz"] = _hz(domega[0])
    diag["stark_per_photon_mode2_hz"] = _hz(domega[1])

    regime = None
    weak = False
    if dc.periodic and kappa > 0:
        regime = analysis.classify_regime(dc.theta_big, kappa).value
        weak = analysis.is_weakly_resolved(dc.theta_big, kappa)
    return {
        "preset": cfg.preset,
        "inputs": {
            k + ("" if k in ("eta", "nbar") or k.startswith(("phi", "theta")) else "_hz"): (
                v if k in ("eta", "nbar") or k.startswith(("phi", "theta")) else _hz(v)
            )
            for k, v in p.as_dict().items()
        },
        "alpha": cfg.alpha,
        "couplings": _couplings_doc(dc),
        "n_th": {"exact": dc.n_th, "estimate": cooling_limit_estimate(p.delta, dc.nu_prime)},
        "scattering": diag,
        "regime": regime,
        "weakly_resolved": weak,
        "theta_over_kappa": dc.theta_big / kappa if kappa > 0 else None,
        "warnings": regime_warnings(p),
    }


def format_report(doc: dict) -> str:
    lines = []

    def section(title, items):
        lines.append(title)
        width = max((len(k) for k in items), default=0)
        for key, value in items.items():
            if isinstance(value, dict):
                value = f"{value['re']:.6g} {value['im']:+.6g}i"
            elif isinstance(value, float):
                value = f"{value:.6g}"
            lines.append(f"  {key:<{width}}  {value}")
        lines.append("")

    section("inputs", doc["inputs"])
    section("derived couplings", doc["couplings"])
    section("thermal occupation", doc["n_th"])
    section("scattering diagnostics", doc["scattering"])
    section(
        "regime",
        {
            "label": doc["regime"],
            "weakly_resolved": doc["weakly_resolved"],
            "theta/kappa": doc["theta_over_kappa"],
        },
    )
    lines.append("warnings")
    lines.extend(f"  - {w}" for w in doc["warnings"] or ["none"])
    return "\n".join(lines) + "\n"


def compute_spectrum(cfg: RunConfig) -> tuple[analysis.SpectrumTrace, DerivedCouplings]:
    p = cfg.params
    dc = derive_couplings(p, refine_nu_prime=cfg.refine_nu_prime)
    model = qle.build_model(dc, p)
    theta = dc.theta_big
    scale = theta if math.isfinite(theta) and theta > 0 else 0.5 * (p.kappa1 + p.kappa2)
    grid = cfg.sweep.grid(scale)
    return qle.spectrum_sweep(model, grid), dc


def spectrum_columns(trace: analysis.SpectrumTrace, theta: float) -> dict[str, np.ndarray]:
    cols = {
        "omega_rad_s": trace.omega_grid,
        "omega_over_theta": trace.omega_grid / theta if theta > 0 else np.full(len(trace), math.nan),
        "s_full_plus": trace.s_plus,
        "s_full_minus": trace.s_minus,
        "s_analytic": trace.s_analytic,
    }
    if trace.regime is analysis.Regime.MERGED:
        cols["s_flat"] = trace.s_flat
    return cols


def _render(columns: dict, fmt: str, meta: dict) -> str:
    if fmt == "json":
        doc = {"meta": meta, "columns": list(columns)}
        doc["data"] = {k: [float(x) for x in v] for k, v in columns.items()}
        return json.dumps(doc, indent=1) + "\n"
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(columns)
    for row in zip(*columns.values()):
        writer.writerow(repr(float(x)) for x in row)
    return buf.getvalue()


def _emit(text: str, path: Path | None):
    if path is None:
        sys.stdout.write(text)
    else:
        Path(path).write_text(text)


def run_spectrum(cfg: RunConfig) -> analysis.SpectrumTrace:
    """Sweep the exact spectrum and write it (CSV or JSON) to ``cfg.output_path`` or stdout."""
    trace, dc = compute_spectrum(cfg)
    meta = {
        "preset": cfg.preset,
        "theta_hz": _hz(dc.theta_big),
        "sigma_hz": _hz(dc.sigma_big),
        "regime": trace.regime.value if trace.regime else None,
        "minima": [
            {"omega_rad_s": m.location, "value": m.value, "fwhm_rad_s": m.fwhm} for m in trace.minima
        ],
    }
    _emit(_render(spectrum_columns(trace, dc.theta_big), cfg.format, meta), cfg.output_path)
    return trace


def coherent_columns(chi1, chi2, times) -> dict[str, np.ndarray]:
    theta, _ = theta_sigma(chi1, chi2)
    rows = coherent.covariance_trace(chi1, chi2, times)
    a1, a2, b, a1d, a2d, bd = range(6)
    cols = {
        "t_s": [],
        "theta_t": [],
        "n1": [],
        "n2": [],
        "nb": [],
        "abs_a1_a2": [],
        "motion_cavity_corr": [],
        "duan": [],
    }
    for t, state in rows:
        v = state.cov
        cols["t_s"].append(t)
        cols["theta_t"].append(theta * t)
        cols["n1"].append(v[a1, a1].real - 0.5)
        cols["n2"].append(v[a2, a2].real - 0.5)
        cols["nb"].append(v[b, b].real - 0.5)
        cols["abs_a1_a2"].append(abs(v[a1, a2d]))
        cols["motion_cavity_corr"].append(coherent.motion_cavity_correlation(state))
        cols["duan"].append(coherent.duan_combination(state))
    return {k: np.asarray(v, dtype=float) for k, v in cols.items()}


def run_coherent(cfg: RunConfig, t_max: float | None = None, steps: int = 201) -> dict:
    """Lossless vacuum evolution: photon numbers, correlations and the Duan sum over time."""
    dc = derive_couplings(cfg.params, refine_nu_prime=cfg.refine_nu_prime)
    theta, _ = theta_sigma(dc.chi1, dc.chi2)
    if t_max is None:
        t_max = TWO_PI / theta
    if steps < 2:
        raise ConfigError("coherent trace needs at least 2 steps")
    cols = coherent_columns(dc.chi1, dc.chi2, np.linspace(0.0, t_max, steps))
    meta = {"preset": cfg.preset, "theta_hz": _hz(theta), "half_period_s": math.pi / theta}
    _emit(_render(cols, cfg.format, meta), cfg.output_path)
    return cols


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(1, f"{self.prog}: error: {message}\n")


def _common(sub: argparse.ArgumentParser, preset_flag: bool = True):
    sub.add_argument("--config", type=Path, help="key = value parameter file")
    if preset_flag:
        sub.add_argument("--preset", choices=sorted(PRESETS), help="start from a figure preset")
    sub.add_argument("--omega-min", type=float, help="sweep start, rad/s")
    sub.add_argument("--omega-max", type=float, help="sweep stop, rad/s")
    sub.add_argument("--points", type=int, default=DEFAULT_POINTS)
    sub.add_argument("--output", type=Path)
    sub.add_argument("--format", choices=("csv", "json"), default="csv")
    sub.add_argument("--refine-nu-prime", action="store_true", help="self-consistent trap frequency")


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="sideband-squeezing", description=__doc__.splitlines()[0])
    subs = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)
    _common(subs.add_parser("report", help="derived couplings and diagnostics"))
    _common(subs.add_parser("spectrum", help="exact output squeezing spectrum"))
    coh = subs.add_parser("coherent", help="lossless covariance evolution from vacuum")
    _common(coh)
    coh.add_argument("--t-max", type=float, help="seconds; default one period 2pi/Theta")
    coh.add_argument("--steps", type=int, default=201)
    fig = subs.add_parser("figure", help="spectrum for a figure preset")
    fig.add_argument("name", choices=sorted(PRESETS))
    _common(fig, preset_flag=False)
    return parser


def config_from_args(args) -> RunConfig:
    preset = args.name if args.command == "figure" else args.preset
    sweep = Sweep(args.omega_min, args.omega_max, args.points)
    opts = dict(
        sweep=sweep,
        output_path=args.output,
        format=args.format,
        refine_nu_prime=args.refine_nu_prime,
    )
    if args.config is not None:
        return load_config(args.config, preset, **opts)
    if preset is None:
        raise ConfigError("give --config or --preset")
    return preset_config(preset, **opts)


def main(argv=None) -> int:
    try:
        args = build_parser().parse_args(argv)
    except SystemExit as exc:  # usage errors and --help
        return exc.code if isinstance(exc.code, int) else 1
    try:
        cfg = config_from_args(args)
        if args.command == "report":
            doc = run_report(cfg)
            if cfg.format == "json":
                _emit(json.dumps(doc, indent=1) + "\n", cfg.output_path)
            else:
                _emit(format_report(doc) + "\n# machine-readable\n" + json.dumps(doc) + "\n", cfg.output_path)
        elif args.command == "coherent":
            run_coherent(cfg, args.t_max, args.steps)
        else:
            run_spectrum(cfg)
    except ConfigError as exc:
        print(f"config error: {exc}", file=sys.stderr)
        return 1
    except PhysicsError as exc:
        print(f"model error: {exc}", file=sys.stderr)
        return 2
    except OSError as exc:
        print(f"i/o error: {exc}", file=sys.stderr)
        return 1
    return 0


if __name__ == "__main__":
    sys.exit(main())
