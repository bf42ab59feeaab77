"""Kernel selection: the compiled module when it imports, else pure Python.

Set ``SCHUBSEP_PURE=1`` to force the Python versions.
"""
import os

from . import _kernels_py

if os.environ.get("SCHUBSEP_PURE"):
    _impl = _kernels_py
else:
    try:
        from . import _kernels as _impl
    except ImportError:
        _impl = _kernels_py

BACKEND = "python" if _impl is _kernels_py else "cython"
count_word_tableaux = _impl.count_word_tableaux

__all__ = ["BACKEND", "count_word_tableaux"]
