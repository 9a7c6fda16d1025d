"""Hot-loop kernels with a compiled backend and a pure-Python fallback.

The compiled extension is used when it was built and importable; set
``SCHUBLOCUS_PURE_PYTHON=1`` to force the fallback.  Both backends expose the
same functions (see ``_pykernels`` for the contract).
"""

import importlib
import os

from . import _pykernels

NAMES = (
    "compose",
    "inverse",
    "count_negative",
    "closure",
    "bruhat_matrix",
    "poly_add",
    "poly_mul",
    "poly_reflect",
    "poly_divmod_linear",
)


def load_backend(name):
    """Return the kernel module for ``"cython"`` or ``"python"``."""
    if name == "python":
        return _pykernels
    if name == "cython":
        return importlib.import_module(f"{__name__}._ckernels")
    raise ValueError(f"unknown kernel backend {name!r}")


def available_backends():
    out = ["python"]
    try:
        load_backend("cython")
    except ImportError:
        pass
    else:
        out.insert(0, "cython")
    return out


if os.environ.get("SCHUBLOCUS_PURE_PYTHON", "") not in ("", "0"):
    _impl = _pykernels
else:
    try:
        _impl = load_backend("cython")
    except ImportError:
        _impl = _pykernels

BACKEND = "cython" if _impl is not _pykernels else "python"

compose = _impl.compose
inverse = _impl.inverse
count_negative = _impl.count_negative
closure = _impl.closure
bruhat_matrix = _impl.bruhat_matrix
poly_add = _impl.poly_add
poly_mul = _impl.poly_mul
poly_reflect = _impl.poly_reflect
poly_divmod_linear = _impl.poly_divmod_linear
