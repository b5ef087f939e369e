"""Backend selection for the combinatorial inner loops.

The numba kernels are used when numba imports cleanly, unless the
environment variable ``UPSETLAT_PURE_NUMPY`` is set to a truthy value, in
which case the vectorised numpy twins are used instead.  Both backends are
importable directly as ``kernels.numpy_backend`` / ``kernels.jit_backend``
(the latter is ``None`` without numba).
"""

from __future__ import annotations

import os

from . import _numpy as numpy_backend

try:
    from . import _jit as jit_backend
except ImportError:  # pragma: no cover - numba is optional
    jit_backend = None

_FLAG = os.environ.get("UPSETLAT_PURE_NUMPY", "").strip().lower()
PURE_NUMPY = _FLAG not in ("", "0", "false", "no") or jit_backend is None

active = numpy_backend if PURE_NUMPY else jit_backend
BACKEND = "numpy" if PURE_NUMPY else "numba"

NO_WITNESS = numpy_backend.NO_WITNESS

transitive_closure = active.transitive_closure
meet_table = active.meet_table
distributive_witness = active.distributive_witness
subset_meets = active.subset_meets
m_condition_witness = active.m_condition_witness
upset_masks = active.upset_masks
close_family = active.close_family
closed_families = active.closed_families

__all__ = [
    "BACKEND",
    "NO_WITNESS",
    "PURE_NUMPY",
    "close_family",
    "closed_families",
    "distributive_witness",
    "jit_backend",
    "m_condition_witness",
    "meet_table",
    "numpy_backend",
    "subset_meets",
    "transitive_closure",
    "upset_masks",
]
