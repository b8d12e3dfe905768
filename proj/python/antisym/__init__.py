"""Antisymmetric fractional Laplacian: Python front end to the C++ core."""

import json as _json

from . import _antisym
from ._antisym import NumericalRejection, Params, UsageError

__all__ = [
    "NumericalRejection",
    "Params",
    "UsageError",
    "constants",
    "evaluate",
    "anorm",
    "fraclap",
    "poisson_eval",
    "psi",
    "boundary_quotient_profile",
    "run_criterion",
    "random_nonneg_antisym",
]


def _text(obj):
    if obj is None:
        return ""
    return obj if isinstance(obj, str) else _json.dumps(obj)


def constants(params):
    """Normalizing constants and the half-space integral for `params`."""
    return {
        "c_ns": _antisym.c_ns(params),
        "gamma_ns": _antisym.gamma_ns(params),
        "tilde_c": _antisym.tilde_c_ns(params),
        "halfspace_integral": _antisym.halfspace_integral_closed(params),
    }


def evaluate(field, x):
    return _antisym.evaluate(_text(field), list(x))


def anorm(field, params, quad=None):
    return _antisym.anorm(_text(field), params, _text(quad))


def fraclap(field, x, params, quad=None):
    """Fractional Laplacian at x: dict with value, error_bound and route."""
    return _antisym.fraclap(_text(field), list(x), params, _text(quad))


def poisson_eval(field, radius, x, params, quad=None):
    return _antisym.poisson_eval(_text(field), radius, list(x), params, _text(quad))


def psi(abs_y, params, quad=None):
    return _antisym.psi(abs_y, params, _text(quad))


def boundary_quotient_profile(field, params, grid_n=64, quad=None):
    return _antisym.boundary_quotient_profile(_text(field), params, grid_n, _text(quad))


def run_criterion(criterion, params, quad=None):
    return _json.loads(_antisym.run_criterion(criterion, params, _text(quad)))


def random_nonneg_antisym(seed, count, params):
    return _json.loads(_antisym.random_nonneg_antisym(seed, count, params))
