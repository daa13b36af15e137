"""Exact p-adic dynamics of quadratic rational maps with two fixed points.

Rationals go in as int, str or Fraction and come back as strings in lowest
terms; radii are written "p^(e)".
"""

import json
from fractions import Fraction

from . import _core
from ._core import DomainError, norm, haar_measure, suite_names

__all__ = [
    "DomainError",
    "classify",
    "cli",
    "erg2_verdict",
    "haar_measure",
    "norm",
    "norm_trace",
    "not_ergodic_p_odd",
    "run_suite",
    "suite_names",
    "to_fraction",
]


def _q(x):
    if isinstance(x, Fraction):
        return f"{x.numerator}/{x.denominator}"
    return str(x)


def to_fraction(text):
    return Fraction(text)


def classify(a, b, d, p):
    return json.loads(_core.classify(_q(a), _q(b), _q(d), p))


def norm_trace(a, b, d, p, radius, steps=8):
    return json.loads(_core.norm_trace(_q(a), _q(b), _q(d), p, radius, steps))


def erg2_verdict(a, b, d, radius):
    return json.loads(_core.erg2_verdict(_q(a), _q(b), _q(d), radius))


def not_ergodic_p_odd(a, b, d, p, radius):
    return json.loads(_core.not_ergodic_p_odd(_q(a), _q(b), _q(d), p, radius))


def run_suite(name, samples=0, seed=None):
    if seed is None:
        return json.loads(_core.run_suite(name, samples))
    return json.loads(_core.run_suite(name, samples, seed))


def cli(*args):
    """Runs the command-line tool in process; returns (exit code, stdout, stderr)."""
    return _core.run_cli([str(a) for a in args])
