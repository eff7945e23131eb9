"""Runtime switches read from the environment.

``ENUMTREES_DISABLE_NUMBA=1`` forces the pure-numpy kernels.
``ENUMTREES_NODE_BUDGET=<int>`` overrides the orbit/forest node budget.
"""
import os

DEFAULT_NODE_BUDGET = 2_000_000


def _truthy(value):
    return value is not None and value.strip().lower() not in ("", "0", "false", "no")


def numba_disabled():
    return _truthy(os.environ.get("ENUMTREES_DISABLE_NUMBA"))


def node_budget():
    raw = os.environ.get("ENUMTREES_NODE_BUDGET")
    if raw is None or not raw.strip():
        return DEFAULT_NODE_BUDGET
    value = int(raw)
    if value < 1:
        raise ValueError("ENUMTREES_NODE_BUDGET must be positive")
    return value
