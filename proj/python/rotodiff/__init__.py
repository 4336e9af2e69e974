"""Rotational decoherence and diffusion of rigid rotors."""

import json

from . import _core
from ._core import (
    ConfigError,
    NumericalError,
    PlanarWignerState,
    TruncationError,
    coherence_contrast,
    diffusion_constants,
    evolve_analytic,
    evolve_numeric,
    ground_state,
    mean_energy,
    momentum_distribution,
    packet_pair,
    rayleigh_gans_diffusion,
)

__version__ = _core.__version__


def schema():
    return json.loads(_core.schema_text())


def canonicalize(config):
    """Validated config with defaults filled; raises ConfigError(message, pointer)."""
    return json.loads(_core.canonicalize(json.dumps(config)))


def run(config, out_dir, threads=1, seed=None):
    """Run a scenario into out_dir and return its manifest."""
    return json.loads(_core.run(json.dumps(config), str(out_dir), threads, seed))


__all__ = [
    "ConfigError",
    "NumericalError",
    "PlanarWignerState",
    "TruncationError",
    "canonicalize",
    "coherence_contrast",
    "diffusion_constants",
    "evolve_analytic",
    "evolve_numeric",
    "ground_state",
    "mean_energy",
    "momentum_distribution",
    "packet_pair",
    "rayleigh_gans_diffusion",
    "run",
    "schema",
]
