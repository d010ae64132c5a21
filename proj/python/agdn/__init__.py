"""Detection over binary-input channels with uncertain noise mean and variance."""

import json as _json

from ._agdn import *  # noqa: F401,F403
from ._agdn import __version__  # noqa: F401


def config(**fields):
    """Serialize an experiment config dict to the JSON accepted by the sweep functions."""
    return _json.dumps(fields)
