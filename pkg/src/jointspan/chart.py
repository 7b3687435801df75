"""Chart kernel selection: compiled extension when built, pure Python otherwise.

Set ``JOINTSPAN_PURE_PYTHON=1`` to force the fallback.
"""
import os
from array import array

from . import _chart_py

py_chart_decode = _chart_py.chart_decode

try:
    if os.environ.get("JOINTSPAN_PURE_PYTHON"):
        raise ImportError("pure Python kernel requested")
    from ._chart import chart_decode as ext_chart_decode
except ImportError:
    ext_chart_decode = None

COMPILED = ext_chart_decode is not None
BACKEND = "cython" if COMPILED else "python"


def chart_decode(n, span_best, arcs, lam, backend=None):
    backend = backend or BACKEND
    if backend == "cython":
        if ext_chart_decode is None:
            raise RuntimeError("compiled chart kernel is not built")
        return ext_chart_decode(n, array("d", span_best), array("d", arcs), float(lam))
    return py_chart_decode(n, list(span_best), list(arcs), float(lam))
