"""Convolution kernel dispatch: compiled extension with numpy fallback.

The compiled backend is selected at import when the ``_convkernels``
extension is present; otherwise the pure-numpy implementation is used.
Override with EEGAUG_KERNELS=cython|python (default: auto).  Both backends
implement identical contracts; ``benchmarks/bench_kernels.py`` compares
their speed.
"""

import os

from . import _conv_py

_requested = os.environ.get("EEGAUG_KERNELS", "auto").lower()
if _requested not in ("auto", "cython", "python"):
    raise ImportError(
        f"EEGAUG_KERNELS must be auto, cython or python, got {_requested!r}"
    )

_impl = None
if _requested in ("auto", "cython"):
    try:
        from . import _convkernels as _impl
    except ImportError:
        if _requested == "cython":
            raise ImportError(
                "EEGAUG_KERNELS=cython but the compiled extension is not "
                "available; build it with `pip install -e .` or use "
                "EEGAUG_KERNELS=python"
            )
if _impl is None:
    _impl = _conv_py

BACKEND = "cython" if _impl is not _conv_py else "python"


def backend() -> str:
    """Name of the active kernel backend: 'cython' or 'python'."""
    return BACKEND


def _as_c(x):
    import numpy as np

    return np.ascontiguousarray(x, dtype=np.float64)


def temporal_conv_fwd(x, w, b):
    """Slide each 1-D time filter over every channel: (B,C,T) -> (B,F,C,To)."""
    return _impl.temporal_conv_fwd(_as_c(x), _as_c(w), _as_c(b))


def temporal_conv_bwd(x, w, gy, need_gx=True):
    """Gradients of the temporal convolution: returns (gx or None, gw, gb)."""
    return _impl.temporal_conv_bwd(_as_c(x), _as_c(w), _as_c(gy), need_gx)


def spatial_conv_fwd(x, w, b):
    """Fully connected combination over (maps, channels) per time step:
    (B,F,C,T) -> (B,G,T)."""
    return _impl.spatial_conv_fwd(_as_c(x), _as_c(w), _as_c(b))


def spatial_conv_bwd(x, w, gy):
    """Gradients of the spatial convolution: returns (gx, gw, gb)."""
    return _impl.spatial_conv_bwd(_as_c(x), _as_c(w), _as_c(gy))
