"""Interface flux sweeps: compiled extension when available, pure Python otherwise.

Set ``EULERBC_PURE_PYTHON=1`` to force the fallback.
"""
import os

from . import _fluxkernel_py

BACKEND = "python"
godunov_fluxes = _fluxkernel_py.godunov_fluxes
osher_fluxes = _fluxkernel_py.osher_fluxes

if not os.environ.get("EULERBC_PURE_PYTHON"):
    try:
        from . import _fluxkernel
    except ImportError:
        pass
    else:
        BACKEND = "compiled"
        godunov_fluxes = _fluxkernel.godunov_fluxes
        osher_fluxes = _fluxkernel.osher_fluxes

SWEEPS = {"godunov": godunov_fluxes, "osher": osher_fluxes}
