"""Low-level eigensolver backends.

The compiled extension is preferred when importable; the numpy fallback
is selected otherwise, or when ``SUPRASYNC_PURE`` is set in the
environment (useful for benchmarking and backend-equivalence tests).

`decompose` destroys its input and returns unsorted eigenpairs. Use
`suprasync.spectral.eig_sym` for the validated, sorted interface.
"""

import os

from suprasync._kernels import _pure

if os.environ.get("SUPRASYNC_PURE"):
    _impl = _pure
    BACKEND = "pure"
else:
    try:
        from suprasync._kernels import _speedups as _impl
        BACKEND = "compiled"
    except ImportError:
        _impl = _pure
        BACKEND = "pure"


def decompose(work, vectors=True):
    """Dispatch to the active backend; see the backend docstring."""
    return _impl.decompose(work, vectors)
