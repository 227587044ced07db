"""Improvement dynamics and equilibria of finite sequential games."""

import json

from ._seqdyn import (
    CapExceeded,
    Game,
    InputError,
    PreconditionError,
    claim_ids,
    fixture_document,
    fixture_names,
    is_layerable,
    layers,
    out_of_pattern,
    run_cli,
)
from ._seqdyn import verify as _verify

__all__ = [
    "CapExceeded",
    "Game",
    "InputError",
    "PreconditionError",
    "claim_ids",
    "fixture_document",
    "fixture_names",
    "is_layerable",
    "layers",
    "out_of_pattern",
    "run_cli",
    "verify",
]


def verify(claim, trials=None, seed=None, kind=None):
    """Run a claim suite and return its report as a dict."""
    return json.loads(_verify(claim, trials, seed, kind))
