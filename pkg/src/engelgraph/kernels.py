"""Kernel selection: the compiled extension when importable, else pure Python.

Set ``ENGEL_PURE_PYTHON=1`` to force the fallback.
"""

from __future__ import annotations

import os

from . import _pykernels

python_kernels = _pykernels
compiled_kernels = None

if not os.environ.get("ENGEL_PURE_PYTHON"):
    try:
        from . import _ckernels as compiled_kernels
    except ImportError:  # extension not built
        compiled_kernels = None

_impl = compiled_kernels if compiled_kernels is not None else python_kernels
BACKEND = "cython" if compiled_kernels is not None else "python"

engel_lengths = _impl.engel_lengths
tarjan_csr = _impl.tarjan_csr


def get_kernels(name: str | None = None):
    """Return the kernel module by name ("cython" or "python")."""
    if name is None:
        return _impl
    if name == "python":
        return python_kernels
    if name == "cython":
        if compiled_kernels is None:
            raise ImportError("compiled kernels are not available")
        return compiled_kernels
    raise ValueError(name)
