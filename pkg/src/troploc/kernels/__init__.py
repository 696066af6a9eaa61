"""Hot loops of the brute-force oracle.

The compiled extension is used when importable; otherwise, or when the
environment variable ``TROPLOC_PURE_PYTHON`` is set to a non-empty value,
the numpy implementation is used.  ``BACKEND`` names the active one.
"""

import os

from . import _pykernels as python

if os.environ.get("TROPLOC_PURE_PYTHON"):
    compiled = None
else:
    try:
        from . import _ckernels as compiled
    except ImportError:  # extension not built
        compiled = None

_active = compiled if compiled is not None else python
BACKEND = "cython" if compiled is not None else "python"

grid_scan = _active.grid_scan
grid_collect = _active.grid_collect
ubox_scan = _active.ubox_scan

__all__ = ["BACKEND", "compiled", "python", "grid_scan", "grid_collect", "ubox_scan"]
