"""Hot loops of the double description method.

The compiled extension is used when it was built; setting
``MUBWIGNER_PURE_PYTHON=1`` forces the numpy fallback. ``BACKEND`` names
the implementation in use.
"""
from __future__ import annotations

import os

from . import _pykernels

BACKEND = "python"
adjacent_pairs = _pykernels.adjacent_pairs

if os.environ.get("MUBWIGNER_PURE_PYTHON", "") not in ("1", "true", "yes"):
    try:
        from . import _ckernels
    except ImportError:
        pass
    else:
        adjacent_pairs = _ckernels.adjacent_pairs
        BACKEND = "cython"

__all__ = ["BACKEND", "adjacent_pairs"]
