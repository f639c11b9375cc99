"""Lagrangian particle solver for flux-limited diffusion.

Scenario documents may be passed as dicts or JSON strings.
"""

import json

from . import _fluxlag
from ._fluxlag import (
    ConfigError,
    SolverError,
    barenblatt,
    barenblatt_constant,
    barenblatt_radius,
    figure_ids,
    rate_study,
    selfsim_heat,
    u_hom,
)

__version__ = _fluxlag.version()


def _text(config):
    return config if isinstance(config, str) else json.dumps(config)


def canonical_config(config):
    return json.loads(_fluxlag.canonical_config(_text(config)))


def figure_preset(fig_id, n=None):
    runs, notes = _fluxlag.figure_preset(fig_id, n)
    return [json.loads(r) for r in runs], notes


def initial_sample(config):
    return _fluxlag.initial_sample(_text(config))


def simulate(config, max_steps=0):
    return _fluxlag.simulate(_text(config), max_steps)


def run_scenario(config, out_dir, notes=""):
    return _fluxlag.run_scenario(_text(config), str(out_dir), notes)


__all__ = [
    "ConfigError",
    "SolverError",
    "barenblatt",
    "barenblatt_constant",
    "barenblatt_radius",
    "canonical_config",
    "figure_ids",
    "figure_preset",
    "initial_sample",
    "rate_study",
    "run_scenario",
    "selfsim_heat",
    "simulate",
    "u_hom",
]
