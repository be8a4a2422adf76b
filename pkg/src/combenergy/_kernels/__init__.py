"""Kernel backend selection.

The compiled extension (_core, Cython) is preferred; the NumPy reference
implementation (_pure) is used when the extension is unavailable or when
the environment variable COMBENERGY_PURE_PYTHON is set to a non-empty value
other than "0".  BACKEND names the active choice ("cython" or "python").
"""

from __future__ import annotations

import os

from . import _pure

_FORCE_PURE = os.environ.get("COMBENERGY_PURE_PYTHON", "") not in ("", "0")

if not _FORCE_PURE:
    try:
        from . import _core as _impl

        BACKEND = "cython"
    except ImportError:
        _impl = _pure
        BACKEND = "python"
else:
    _impl = _pure
    BACKEND = "python"

midpoint_energy = _impl.midpoint_energy
midpoint_energy_gradient = _impl.midpoint_energy_gradient
midpoint_energy_hessian = _impl.midpoint_energy_hessian
pav_nondecreasing = _impl.pav_nondecreasing
shoot_path = _impl.shoot_path


def available_backends() -> dict:
    """All importable backends by name, regardless of the active selection."""
    out = {"python": _pure}
    try:
        from . import _core

        out["cython"] = _core
    except ImportError:
        pass
    return out


__all__ = [
    "BACKEND",
    "available_backends",
    "midpoint_energy",
    "midpoint_energy_gradient",
    "midpoint_energy_hessian",
    "pav_nondecreasing",
    "shoot_path",
]
