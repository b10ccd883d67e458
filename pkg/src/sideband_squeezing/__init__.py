"""Two-mode squeezed light from a trapped ion in a cavity via motional sidebands."""
from .analysis import Regime, SpectrumTrace, classify_regime, extract_minima, s_analytic, s_flat
from .coherent import duan_combination, evolution_map, propagate_vacuum
from .config import RunConfig, Sweep, load_config, preset_config
from .errors import (
    AmplificationRegimeError,
    ConfigError,
    FixedPointError,
    HeatingRegimeError,
    ParameterError,
    PhysicsError,
    RegimeWarning,
    UnstableModelError,
)
from .params import DerivedCouplings, SystemParams, derive_couplings, validate
from .qle import LinearNoiseModel, build_model, output_spectrum, spectrum_sweep

__version__ = "0.1.0"
