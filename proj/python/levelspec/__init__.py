"""Level-set filtered spectral clustering (C++ core)."""

import json as _json

from ._levelspec import *  # noqa: F401,F403
from ._levelspec import run_baseline as _run_baseline
from ._levelspec import run_pipeline as _run_pipeline


def run_pipeline(**config):
    """Run the filtered pipeline; keyword arguments are manifest keys."""
    return _run_pipeline(_json.dumps(config))


def run_baseline(**config):
    """Run unfiltered spectral clustering (level forced to 0)."""
    return _run_baseline(_json.dumps(config))
