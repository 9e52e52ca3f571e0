"""Size caps, overridable through ``STIRKIT_*`` environment variables."""

import os

from stirkit.errors import CapExceeded

_DEFAULTS = {
    "TABLE_CAP": 10**6,  # entries in a table window
    "SUM_CAP": 10**6,  # index points visited by one bracket sum
    "SERIES_CAP": 16,  # truncation order of symbolic series
    "PARTITION_CAP": 60,  # largest k for partition enumeration
    "TERM_CAP": 400,  # term budget for convergent real series
}


def cap(name):
    """Return the current value of cap ``name`` (e.g. ``"TABLE_CAP"``)."""
    raw = os.environ.get("STIRKIT_" + name)
    if raw is None:
        return _DEFAULTS[name]
    try:
        return int(raw)
    except ValueError:
        raise ValueError(f"STIRKIT_{name} must be an integer, got {raw!r}") from None


def check_cap(name, requested, what="request"):
    limit = cap(name)
    if requested > limit:
        raise CapExceeded(f"{what} of size {requested} exceeds STIRKIT_{name}={limit}")
