"""Backend selection for the traversal kernels.

The compiled extension is used when importable; set the environment variable
``FRIENDGRAPH_PURE_PYTHON=1`` to force the pure-Python implementation.
"""
import os

from . import _pure

if os.environ.get("FRIENDGRAPH_PURE_PYTHON", "").strip() not in ("", "0"):
    _impl = _pure
else:
    try:
        from . import _kernels as _impl
    except ImportError:  # extension not built
        _impl = _pure

BACKEND = "pure" if _impl is _pure else "compiled"

bfs_distance_counts = _impl.bfs_distance_counts
component_labels = _impl.component_labels


def available_backends():
    """Map of backend name to kernel module, for tests and benchmarks."""
    out = {"pure": _pure}
    try:
        from . import _kernels
    except ImportError:
        pass
    else:
        out["compiled"] = _kernels
    return out
