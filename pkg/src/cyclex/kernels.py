"""Kernel selection.

The compiled extension is used when it imports; otherwise, or when
``CYCLEX_PURE_PYTHON=1`` is set, the pure-Python twin is used.  Both expose the same
functions (see ``_pykernels``) with identical results.
"""

from __future__ import annotations

import os

from . import _pykernels

_impl = _pykernels
if os.environ.get("CYCLEX_PURE_PYTHON", "") not in ("1", "true", "yes"):
    try:
        from . import _ckernels as _impl  # type: ignore[no-redef]
    except ImportError:  # pragma: no cover - depends on the build
        _impl = _pykernels

IMPLEMENTATION: str = _impl.IMPLEMENTATION

has_perfect_matching = _impl.has_perfect_matching
perfect_matchings = _impl.perfect_matchings
simple_cycles = _impl.simple_cycles
canonical_form = _impl.canonical_form
find_perfect_matching = _impl.find_perfect_matching
matching_covered = _impl.matching_covered


def implementations() -> dict:
    """Every importable implementation, keyed by name (used by parity tests and benchmarks)."""
    out = {"python": _pykernels}
    try:
        from . import _ckernels

        out["cython"] = _ckernels
    except ImportError:  # pragma: no cover
        pass
    return out
