"""Kernel backend selection.

The compiled module is used when it imports; setting ``CUTCUBE_PURE=1``
forces the pure-Python fallback.  ``BACKEND`` names the one in use.
"""
import os

from . import _kernels_py

_compiled = None
if os.environ.get("CUTCUBE_PURE", "") not in ("1", "true", "yes"):
    try:
        from . import _kernels as _compiled
    except ImportError:
        _compiled = None

if _compiled is not None:
    BACKEND = "compiled"
    _MAX_WALLS = _compiled.MAX_WALLS
else:
    BACKEND = "python"
    _MAX_WALLS = None


def _fits(k):
    return _compiled is not None and k <= _MAX_WALLS


def principal_codes(point_masks, k):
    if _fits(k):
        return _compiled.principal_codes(point_masks)
    return _kernels_py.principal_codes(point_masks)


def occupancy(codes, k):
    if _fits(k):
        return _compiled.occupancy(codes, k)
    return _kernels_py.occupancy(codes, k)


def consistent_scan(k, bad_pp, bad_pm, bad_mp, bad_mm):
    # the compiled scan needs the shifted top bit to fit in 64 bits
    if _fits(k) and k < 64:
        return _compiled.consistent_scan(k, bad_pp, bad_pm, bad_mp, bad_mm)
    return _kernels_py.consistent_scan(k, bad_pp, bad_pm, bad_mp, bad_mm)
