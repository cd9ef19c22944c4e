"""Ellipticity and Fredholm checks for shift operators near a conical point."""

import json as _json

try:
    from ._gopell import *  # noqa: F401,F403
    from ._gopell import check_ellipticity_json as _check_json
except ImportError:  # in-tree test runs: extension next to the package
    from _gopell import *  # noqa: F401,F403
    from _gopell import check_ellipticity_json as _check_json


def check_ellipticity(op):
    """Full check; returns the report as a dict."""
    return _json.loads(_check_json(op))
