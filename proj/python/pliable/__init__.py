"""Pliable index coding solvers and two-layer data shuffling."""

import json

from . import _pliable
from ._pliable import (
    PliableError,
    build_outer_recursive,
    decode_probability_exact,
    expected_patterns,
    k0_bracket,
    verify_outer,
)

__all__ = [
    "PliableError",
    "build_outer_recursive",
    "compare",
    "decode_probability_exact",
    "expected_patterns",
    "k0_bracket",
    "random_instance",
    "run",
    "two_block_instance",
    "shuffle",
    "solve",
    "verify_outer",
    "verify_scheme",
]


def _dump(obj):
    return obj if isinstance(obj, str) else json.dumps(obj)


def two_block_instance(n):
    return json.loads(_pliable.two_block_instance(n))


def random_instance(m, n, p, c, seed):
    return json.loads(_pliable.random_instance(m, n, p, c, seed))


def solve(instance, solver, seed=0, L_max=3, q=2):
    """Returns (summary line, result dict). Instances use 1-based indices."""
    line, result = _pliable.solve(_dump(instance), solver, seed, L_max, q)
    return line, json.loads(result)


def verify_scheme(instance, scheme):
    """1-based assignment if every client is served, else None."""
    return _pliable.verify_scheme(_dump(instance), _dump(scheme))


def shuffle(config, seeds):
    return _pliable.shuffle(_dump(config), list(seeds))


def compare(config, seeds):
    return _pliable.compare(_dump(config), list(seeds))


def run(kind, params=None, seeds=(0,)):
    """Runs a CLI subcommand in-process; returns (exit code, stdout, stderr)."""
    return _pliable.run(kind, {k: str(v) for k, v in (params or {}).items()}, list(seeds))
