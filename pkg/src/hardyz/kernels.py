"""Selects the compiled Euler-Maclaurin kernel, falling back to numpy.

Set ``HARDYZ_PURE_PYTHON=1`` to force the fallback.
"""
import os

from . import _emsum_py

BACKEND = "python"
em_sum = _emsum_py.em_sum

if os.environ.get("HARDYZ_PURE_PYTHON", "") not in ("1", "true", "yes"):
    try:
        from . import _emsum
    except ImportError:  # extension not built
        pass
    else:
        em_sum = _emsum.em_sum
        BACKEND = "cython"

em_sum_python = _emsum_py.em_sum
