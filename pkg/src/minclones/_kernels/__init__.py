"""Kernel backend selection.

The compiled Cython backend is preferred; set MINCLONES_PURE=1 to force
the pure-Python fallback (used by the backend parity tests and the
benchmark).
"""

import os

if os.environ.get("MINCLONES_PURE"):
    from . import fallback as backend
else:
    try:
        from . import native as backend  # type: ignore[attr-defined]
    except ImportError:
        from . import fallback as backend

BACKEND = backend.NAME
close_subset = backend.close_subset
close_pairs = backend.close_pairs
right_orbit = backend.right_orbit
check_identity = backend.check_identity
eval_postfix = backend.eval_postfix
free_closure = backend.free_closure
