"""Numerical checks of the R-operator for the modular double."""

import json

from ._modrop import (
    ConvergenceError,
    DomainError,
    GammaEvaluator,
    ModularParams,
    SingularityError,
    format_complex,
    make_params,
    parse_complex,
    relation_ids,
    sl2c,
    swap_omegas,
    version,
)
from . import _modrop

__all__ = [
    "ConvergenceError",
    "DomainError",
    "GammaEvaluator",
    "ModularParams",
    "SingularityError",
    "convergence_series",
    "format_complex",
    "make_params",
    "parse_complex",
    "relation_ids",
    "render_table",
    "run_relations",
    "run_suite",
    "sl2c",
    "swap_omegas",
    "version",
]


def _config(config):
    return "" if config is None else json.dumps(config)


def run_relations(ids, config=None):
    """Run the given relations; returns the report document as a dict."""
    return json.loads(_modrop._run_relations(list(ids), _config(config)))


def run_suite(suite="fast", config=None):
    return json.loads(_modrop._run_suite(suite, _config(config)))


def convergence_series(relation_id, resolutions, config=None):
    return _modrop._convergence_series(relation_id, list(resolutions), _config(config))


def render_table(document):
    return _modrop._render_table(json.dumps(document))
