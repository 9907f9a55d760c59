"""Hot kernels: compiled core when available, pure Python otherwise.

Set ``KMINOR_PURE_PYTHON=1`` to force the fallback.
"""
from __future__ import annotations

import os

from . import _pure

BACKEND = "python"
if os.environ.get("KMINOR_PURE_PYTHON", "") not in ("1", "true", "yes"):
    try:
        from . import _core as _impl

        BACKEND = "cython"
    except ImportError:
        _impl = _pure
else:
    _impl = _pure

max_clique = _impl.max_clique
canonical_labeling = _impl.canonical_labeling
canonical_graph6 = _impl.canonical_graph6
contraction_children = _impl.contraction_children
quotient_feasible = _impl.quotient_feasible_py

__all__ = ["BACKEND", "max_clique", "canonical_labeling", "canonical_graph6",
           "contraction_children", "quotient_feasible"]
