"""Numerical convexity checks for normalized biholomorphic maps of D_p^n.

Configurations are the same JSON documents the command-line tool reads,
passed here as dicts. Reports come back as dicts with the CLI schema.
"""

import json

from . import _core
from ._core import DpconvexError

__all__ = [
    "DpconvexError",
    "minkowski",
    "rho_bar_gradient",
    "project_tangent",
    "evaluate",
    "jacobian",
    "evaluate_J",
    "check",
    "validate_example",
    "scan",
    "falsify",
    "certify",
]


def _text(config):
    return config if isinstance(config, str) else json.dumps(config)


def minkowski(p, z):
    """Return (rho, residual) for the point z of D_p^n."""
    return _core.minkowski(list(p), list(z))


def rho_bar_gradient(p, z):
    return _core.rho_bar_gradient(list(p), list(z))


def project_tangent(p, z, b):
    return _core.project_tangent(list(p), list(z), list(b))


def evaluate(config, z):
    return _core.evaluate(_text(config), list(z))


def jacobian(config, z):
    return _core.jacobian(_text(config), list(z))


def evaluate_J(config, z, b):
    return json.loads(_core.evaluate_J(_text(config), list(z), list(b)))


def check(config, theorem, samples=1000, seed=42, hub=0):
    return json.loads(_core.check(_text(config), theorem, samples, seed, hub))


def validate_example(config, which):
    return json.loads(_core.validate_example(_text(config), which))


def scan(config, samples=10000, seed=42, rho_floor=0.3, tol=1e-8, threads=1):
    return json.loads(_core.scan(_text(config), samples, seed, rho_floor, tol, threads))


def falsify(config, restarts=50, iterations=500, seed=42, rho_floor=0.05, rho_ceiling=0.99, tol=1e-8, threads=1):
    return json.loads(_core.falsify(_text(config), restarts, iterations, seed, rho_floor, rho_ceiling, tol, threads))


def certify(config, budget=10000, seed=42, rho_floor=0.3, tol=1e-8, threads=1):
    return json.loads(_core.certify(_text(config), budget, seed, rho_floor, tol, threads))
