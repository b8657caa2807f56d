"""Quadrature kernel backends.

The compiled Cython core is preferred when present; the pure-Python
implementation is the always-available fallback.  Selection happens at
import time and can be forced with the ``EPSKK_PURE_PYTHON=1``
environment variable or overridden per-process via :func:`set_backend`
(used by the tests and the benchmark).
"""

import os

from . import pykernels
from .pykernels import fixed_panel_quad  # noqa: F401  (re-export)

_BACKENDS = {"python": pykernels}

try:
    from . import _cykernels

    _BACKENDS["compiled"] = _cykernels
except ImportError:
    _cykernels = None

if os.environ.get("EPSKK_PURE_PYTHON") == "1" or "compiled" not in _BACKENDS:
    _active = "python"
else:
    _active = "compiled"


def backend_name():
    """Name of the kernel backend in use: 'compiled' or 'python'."""
    return _active


def available_backends():
    return tuple(sorted(_BACKENDS))


def set_backend(name):
    """Switch kernel backend ('python' or 'compiled'); returns the old name."""
    global _active
    if name not in _BACKENDS:
        raise ValueError(f"unknown backend {name!r}; available: {available_backends()}")
    old = _active
    _active = name
    return old


def adaptive_quad(f, edges, abs_tol=1e-12, rel_tol=1e-10, max_rounds=64,
                  min_width=None):
    """Adaptive Gauss-Kronrod integration over the segments in ``edges``.

    ``f`` must be vectorized (ndarray in, same-shape ndarray out; real or
    complex).  Returns (value, error_estimate, n_evals, converged); the
    value is a float when the imaginary part is exactly zero.
    """
    import numpy as np

    edges = np.asarray(edges, dtype=float)
    if min_width is None:
        span = float(edges[-1] - edges[0])
        min_width = span * 2.0 ** -44
    value, err, n_evals, ok = _BACKENDS[_active].adaptive_quad(
        f, edges, float(abs_tol), float(rel_tol), int(max_rounds), float(min_width))
    value = complex(value)
    if value.imag == 0.0:
        value = value.real
    return value, err, n_evals, ok
