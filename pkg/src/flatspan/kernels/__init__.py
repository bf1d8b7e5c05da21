"""Hot kernels: compiled when the extension is built, Python otherwise.

Set ``FLATSPAN_KERNELS=python`` to force the fallback.
"""

from __future__ import annotations

import os

from . import _pykernels

BACKEND = "python"
ResidualKernel = _pykernels.ResidualKernel
coverage_gains = _pykernels.coverage_gains

if os.environ.get("FLATSPAN_KERNELS", "").lower() != "python":
    try:
        from . import _ckernels
    except ImportError:  # extension not built
        _ckernels = None
    if _ckernels is not None:
        BACKEND = "cython"
        ResidualKernel = _ckernels.ResidualKernel
        coverage_gains = _ckernels.coverage_gains


def make_residual_kernel(points):
    """Kernel for ``points``; falls back to Python if entries exceed int64."""
    if ResidualKernel is _pykernels.ResidualKernel:
        return ResidualKernel(points)
    try:
        return ResidualKernel(points)
    except OverflowError:
        return _pykernels.ResidualKernel(points)
