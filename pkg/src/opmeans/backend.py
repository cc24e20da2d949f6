"""Selects the Jacobi kernel backend at import time.

The compiled Cython kernel is preferred; the pure-Python kernel is a
drop-in fallback with the identical operation sequence, so results do not
depend on which backend is active. Set ``OPMEANS_BACKEND=python`` or
``=compiled`` to force one (``compiled`` raises if the extension is not
built).
"""

import os

from . import _jacobi_py


def get_kernel(name):
    """Return the ``jacobi_cycle`` callable for a backend name."""
    if name == "python":
        return _jacobi_py.jacobi_cycle
    if name == "compiled":
        from . import _jacobi

        return _jacobi.jacobi_cycle
    raise ValueError(f"unknown backend {name!r}; use 'compiled' or 'python'")


def available_backends():
    names = ["python"]
    try:
        get_kernel("compiled")
    except ImportError:
        pass
    else:
        names.insert(0, "compiled")
    return tuple(names)


_requested = os.environ.get("OPMEANS_BACKEND", "auto").strip().lower() or "auto"

if _requested == "auto":
    try:
        jacobi_cycle = get_kernel("compiled")
        BACKEND = "compiled"
    except ImportError:
        jacobi_cycle = _jacobi_py.jacobi_cycle
        BACKEND = "python"
elif _requested in ("compiled", "python"):
    jacobi_cycle = get_kernel(_requested)
    BACKEND = _requested
else:
    raise ValueError(
        f"OPMEANS_BACKEND={_requested!r} not recognized; use 'auto', 'compiled' or 'python'"
    )
