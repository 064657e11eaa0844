"""Pure-Python interface flux sweeps (fallback for the compiled kernel)."""
import numpy as np

from .errors import VacuumFormation
from .riemann import godunov_flux_prim, osher_flux_prim


def _sweep(prim, gamma, flux_fn):
    n = prim.shape[0]
    out = np.empty((n - 1, 3))
    rows = prim.tolist()
    for j in range(n - 1):
        rl, ul, pl = rows[j]
        rr, ur, pr = rows[j + 1]
        try:
            out[j] = flux_fn(rl, ul, pl, rr, ur, pr, gamma)
        except VacuumFormation as exc:
            raise VacuumFormation(str(exc), interface=j) from None
    return out


def godunov_fluxes(prim, gamma):
    """Godunov fluxes between consecutive rows of the ``(n, 3)`` primitive array."""
    return _sweep(prim, gamma, godunov_flux_prim)


def osher_fluxes(prim, gamma):
    """Osher fluxes between consecutive rows of the ``(n, 3)`` primitive array."""
    return _sweep(prim, gamma, osher_flux_prim)
