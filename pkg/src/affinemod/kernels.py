"""Backend selection for the reduction kernels.

The compiled extension is used when it was built; otherwise the pure-Python
module is loaded.  Setting ``AFFINEMOD_PURE_PYTHON=1`` forces the fallback.
"""

import os

if os.environ.get("AFFINEMOD_PURE_PYTHON", "") not in ("", "0"):
    from . import _kernels_py as _impl
else:
    try:
        from . import _kernels as _impl
    except ImportError:
        from . import _kernels_py as _impl

BACKEND = _impl.BACKEND
monomial_key = _impl.monomial_key
divides = _impl.divides
leading_term = _impl.leading_term
sorted_terms = _impl.sorted_terms
reduce_terms = _impl.reduce_terms
mul_terms = _impl.mul_terms


def available_backends():
    """Names and modules of every backend importable in this environment."""
    from . import _kernels_py

    found = {"python": _kernels_py}
    try:
        from . import _kernels

        found["cython"] = _kernels
    except ImportError:
        pass
    return found
