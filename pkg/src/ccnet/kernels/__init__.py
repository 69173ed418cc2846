"""Kernel backend selection.

The hot inner loops (gradient magnitude, pyramid downsampling, JPEG-style
bit costing) have two interchangeable implementations: numba-compiled
(default) and pure numpy. Set CCNET_KERNELS=numpy to force the fallback,
CCNET_KERNELS=numba to require the compiled path; unset or "auto" tries
numba and falls back silently if it is unavailable. Both produce
bit-identical results.
"""

import os

from ..errors import ConfigurationError

BACKEND_ENV = "CCNET_KERNELS"


def _select():
    choice = os.environ.get(BACKEND_ENV, "auto").strip().lower() or "auto"
    if choice == "numpy":
        from . import numpy_impl

        return numpy_impl, "numpy"
    if choice == "numba":
        from . import numba_impl

        return numba_impl, "numba"
    if choice == "auto":
        try:
            from . import numba_impl

            return numba_impl, "numba"
        except ImportError:
            from . import numpy_impl

            return numpy_impl, "numpy"
    raise ConfigurationError(
        f"{BACKEND_ENV} must be 'numba', 'numpy' or 'auto', got {choice!r}"
    )


_impl, BACKEND = _select()

grad_magnitude = _impl.grad_magnitude
box_down2 = _impl.box_down2
jpeg_bit_cost = _impl.jpeg_bit_cost
