"""Enumeration kernel with a compiled fast path.

The Cython extension is used when it built successfully; otherwise the
numpy reference implementation is selected.  Both expose the same
``weight_tables`` contract and are cross-checked in the test suite.
"""

from . import _reference

try:
    from . import _speedups

    _impl = _speedups
    backend_name = "cython"
except ImportError:  # extension not built
    _impl = _reference
    backend_name = "python"

weight_tables = _impl.weight_tables


def get_backend(name):
    """Return the weight_tables callable of a named backend ("cython" or
    "python"); raises KeyError if that backend is unavailable."""
    if name == "python":
        return _reference.weight_tables
    if name == "cython" and backend_name == "cython":
        return _speedups.weight_tables
    raise KeyError(f"backend {name!r} unavailable")
