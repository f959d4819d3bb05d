"""Backend selection for the convolution kernels.

The compiled extension is used when importable; setting the environment
variable ``SIEGEL_SIGNS_PURE_PYTHON=1`` forces the pure-Python fallback.
"""

import os

from . import _pykernels

BACKEND = "python"

if os.environ.get("SIEGEL_SIGNS_PURE_PYTHON", "") not in ("1", "true", "yes"):
    try:
        from . import _ckernels as _impl

        BACKEND = "cython"
    except ImportError:  # extension not built
        _impl = _pykernels
else:
    _impl = _pykernels

conv1d = _impl.conv1d
conv2d = _impl.conv2d
inv1d = _impl.inv1d

__all__ = ["BACKEND", "conv1d", "conv2d", "inv1d"]
