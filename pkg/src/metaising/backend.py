"""Kernel backend selection: compiled extension if available, else pure Python.

Set METAISING_BACKEND=python to force the fallback (used by the benchmark
and by the cross-backend determinism tests).
"""

from __future__ import annotations

import os

from . import _pykernels


def _select():
    if os.environ.get("METAISING_BACKEND", "").lower() == "python":
        return _pykernels
    try:
        from . import _kernels  # compiled extension, optional

        return _kernels
    except ImportError:
        return _pykernels


kernels = _select()

BACKEND_NAME: str = kernels.BACKEND_NAME

run_until_hit = kernels.run_until_hit
sample_visits = kernels.sample_visits
stability_sweep = kernels.stability_sweep
anchor_phi_sweep = kernels.anchor_phi_sweep
