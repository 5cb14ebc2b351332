"""Kähler-Einstein potentials on model domains (C++ core via pybind11)."""

import json as _json

from ._core import *  # noqa: F401,F403
from ._core import run_suite_json as _run_suite_json


def run_suite(name, config=None):
    """Run a verification suite and return its report as a dict."""
    return _json.loads(_run_suite_json(name, _json.dumps(config or {})))


def domain_from_dict(d):
    return Domain.from_json(_json.dumps(d))  # noqa: F405


def domain_to_dict(domain):
    return _json.loads(domain.to_json())
