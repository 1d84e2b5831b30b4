"""Fully entangled fraction, conditional entropies and work bounds."""

import json as _json

from ._core import (
    InvalidProcess,
    ValidationError,
    certify,
    fef_monte_carlo,
    fef_seesaw,
    isotropic_state,
    q_function,
    random_state,
    singlet_state,
)
from . import _core

__all__ = [
    "InvalidProcess",
    "ValidationError",
    "certify",
    "entropy_report",
    "fef_monte_carlo",
    "fef_seesaw",
    "isotropic_state",
    "isotropic_thresholds",
    "pipeline",
    "q_function",
    "random_state",
    "report",
    "singlet_state",
    "twirl",
]


def entropy_report(rho):
    return _json.loads(_core.entropy_report_json(rho))


def twirl(rho):
    return _json.loads(_core.twirl_json(rho))


def isotropic_thresholds(d, kbt=1.0):
    return _json.loads(_core.isotropic_thresholds_json(d, kbt))


def report(rho, **kwargs):
    """Full bounds report as a dict; keyword arguments mirror the CLI flags."""
    return _json.loads(_core.report_json(rho, **kwargs))


def pipeline(rho, kind="erase-extract", kbt=1.0):
    return _json.loads(_core.pipeline_json(rho, kind, kbt))
