"""Boundary fluxes from the partial Riemann problem.

A boundary condition is described by the set of states it admits (a
boundary manifold).  Given the state in the cell next to the boundary, the
boundary state is searched on that manifold among the states linked to the
cell state by the waves entering the domain only; the boundary flux is then
the Riemann flux between the two states.  Nothing forces the resulting
flux to equal ``f(W)``: strong waves may sit on either side of the face.

Every formula is written for a left boundary (domain on ``x > 0``).  Right
boundaries are handled by the reflection ``(rho, u, p) -> (rho, -u, p)``,
which swaps wave families 1 and 3.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Optional, Union

import numpy as np
from scipy.optimize import brentq

from .errors import AmbiguousResolution, NoIntersection, VacuumFormation
from .gas import (
    GasModel,
    PrimState,
    Regime,
    Side,
    entropy,
    regime_classify,
    sound_speed,
    total_enthalpy,
)
from .riemann import (
    Flux,
    RiemannSolution,
    _star_density,
    _wave_fn,
    osher_flux,
    physical_flux,
    sample,
    solve_exact,
)


@dataclass(frozen=True)
class SupersonicInflow:
    """The boundary state is fully prescribed: ``M = {state}``."""

    state: PrimState


@dataclass(frozen=True)
class InflowEnthalpyEntropy:
    """Subsonic inflow with prescribed total enthalpy and entropy."""

    H: float
    S: float

    def __post_init__(self):
        if not (self.H > 0.0 and self.S > 0.0):
            raise ValueError("total enthalpy and entropy must be positive")


@dataclass(frozen=True)
class OutflowPressure:
    """Subsonic outflow with prescribed static pressure."""

    p: float

    def __post_init__(self):
        if not self.p > 0.0:
            raise ValueError("outlet pressure must be positive")


@dataclass(frozen=True)
class SupersonicOutflow:
    """States leaving the domain at or above the sound speed."""


@dataclass(frozen=True)
class Wall:
    """Impermeable wall, treated through the mirror state."""


@dataclass(frozen=True)
class PrescribedFlux:
    """Legacy treatment: flux of a fixed state, whatever the interior does."""

    state: PrimState


@dataclass(frozen=True)
class Extrapolation:
    """Legacy treatment: flux of the adjacent cell state."""


BoundaryManifold = Union[
    SupersonicInflow, InflowEnthalpyEntropy, OutflowPressure, SupersonicOutflow,
    Wall, PrescribedFlux, Extrapolation,
]
LEGACY = (PrescribedFlux, Extrapolation)


@dataclass(frozen=True)
class BoundaryResolution:
    resolved: PrimState
    fan: Optional[RiemannSolution]
    flux: Flux
    pattern: str
    regime: Regime


def _to_canonical(v: PrimState, side: Side) -> PrimState:
    return v if side is Side.LEFT else v.reflected()


# from_canonical is the same involution
_from_canonical = _to_canonical


def _rarefaction_3(v: PrimState, p: float, gas: GasModel) -> PrimState:
    """State at pressure ``p`` on the 3-integral curve through ``v``."""
    g = gas.gamma
    c1 = sound_speed(v, gas)
    c = c1 * (p / v.p) ** ((g - 1.0) / (2.0 * g))
    return PrimState(v.rho * (p / v.p) ** (1.0 / g), v.u + 2.0 * (c - c1) / (g - 1.0), p)


def _wave_3(v: PrimState, p: float, gas: GasModel) -> PrimState:
    """State at pressure ``p`` behind a 3-wave (shock or rarefaction) whose right state is ``v``."""
    if p <= v.p:
        return _rarefaction_3(v, p, gas)
    du, _ = _wave_fn(p, v.rho, v.p, sound_speed(v, gas), gas.gamma)
    return PrimState(_star_density(v.rho, v.p, p, gas.gamma), v.u + du, p)


def pressure_outlet_state(w1: PrimState, pbar: float, side: Side, gas: GasModel,
                          branch: str = "exact") -> PrimState:
    """Boundary state of prescribed pressure linked to ``w1`` by one entering wave.

    ``branch="exact"`` follows the exact wave curve (shock branch when
    ``pbar`` exceeds the cell pressure); ``branch="rarefaction"`` always
    follows the integral curve, as the Osher solver does.
    """
    if not pbar > 0.0:
        raise VacuumFormation(f"outlet pressure {pbar!r} is not positive")
    v1 = _to_canonical(w1, side)
    if pbar == v1.p:
        return w1
    if branch == "rarefaction":
        w = _rarefaction_3(v1, pbar, gas)
    else:
        w = _wave_3(v1, pbar, gas)
    return _from_canonical(w, side)


def sonic_state(w1: PrimState, side: Side, gas: GasModel) -> PrimState:
    """Sonic point of the entering-family rarefaction through ``w1``.

    In the left frame the result satisfies ``u + c = 0`` while keeping the
    entropy and ``u - 2c/(gamma-1)`` of ``w1``.
    """
    g = gas.gamma
    v1 = _to_canonical(w1, side)
    c1 = sound_speed(v1, gas)
    if v1.u + c1 == 0.0:
        return w1
    k = v1.u - 2.0 * c1 / (g - 1.0)
    cs = -k * (g - 1.0) / (g + 1.0)
    if not cs > 0.0:
        raise VacuumFormation(f"no sonic point on the rarefaction through {w1!r}")
    ratio = cs / c1
    ws = PrimState(v1.rho * ratio ** (2.0 / (g - 1.0)), -cs, v1.p * ratio ** (2.0 * g / (g - 1.0)))
    return _from_canonical(ws, side)


def _hs_candidates(v1: PrimState, H: float, S: float, gas: GasModel, branch: str) -> list[PrimState]:
    g = gas.gamma
    wave = _rarefaction_3 if branch == "rarefaction" else _wave_3

    def state(p):
        return PrimState((p / S) ** (1.0 / g), wave(v1, p, gas).u, p)

    def residual(p):
        w = state(p)
        return 0.5 * w.u * w.u + g * p / ((g - 1.0) * w.rho) - H

    # enthalpy alone exceeds H above the stagnation pressure
    p_max = ((g - 1.0) * H / (g * S ** (1.0 / g))) ** (g / (g - 1.0))
    grid = np.geomspace(p_max * 1e-12, p_max, 600)
    vals = [residual(p) for p in grid]
    roots = []
    for k in range(len(grid)):
        if vals[k] == 0.0:
            roots.append(grid[k])
        elif k + 1 < len(grid) and vals[k] * vals[k + 1] < 0.0:
            roots.append(brentq(residual, grid[k], grid[k + 1], xtol=1e-300, rtol=1e-15, maxiter=200))
    return [state(p) for p in roots]


def hs_inflow_state(w1: PrimState, H: float, S: float, side: Side, gas: GasModel,
                    branch: str = "exact") -> PrimState:
    """Boundary state of prescribed total enthalpy and entropy.

    The state is linked to ``w1`` through a contact followed by an entering
    acoustic wave, which leaves a scalar root problem in the boundary
    pressure.  Roots in the subsonic-inflow regime are preferred; among the
    remaining candidates the weakest wave (smallest ``|log(p/p1)|``) wins.
    """
    v1 = _to_canonical(w1, side)
    g = gas.gamma
    on_manifold = (abs(total_enthalpy(v1, gas) - H) <= 4e-16 * H
                   and abs(entropy(v1, gas) - S) <= 4e-16 * S)
    if on_manifold and 0.0 <= v1.u < sound_speed(v1, gas):
        return w1
    cands = _hs_candidates(v1, H, S, gas, branch)
    if not cands:
        raise NoIntersection(f"the wave curve through {w1!r} never reaches H={H}, S={S}")
    inflow = [w for w in cands if 0.0 <= w.u < sound_speed(w, gas)]
    pool = inflow or cands
    strengths = sorted((abs(math.log(w.p / v1.p)), k) for k, w in enumerate(pool))
    if len(strengths) > 1 and strengths[1][0] - strengths[0][0] <= 1e-12 * max(strengths[0][0], 1.0):
        raise AmbiguousResolution(f"{len(pool)} equally weak boundary states for H={H}, S={S}")
    return _from_canonical(pool[strengths[0][1]], side)


def wall_flux(w1: PrimState, side: Side, gas: GasModel) -> Flux:
    """Wall flux ``(0, p_wall, 0)`` with ``p_wall`` from the mirror-state Riemann problem."""
    v1 = _to_canonical(w1, side)
    if v1.u == 0.0:
        return Flux(0.0, v1.p, 0.0)
    return Flux(0.0, solve_exact(v1.reflected(), v1, gas).p_star, 0.0)


def legacy_flux(m: BoundaryManifold, w1: PrimState, side: Side, gas: GasModel) -> Flux:
    if isinstance(m, PrescribedFlux):
        return physical_flux(m.state, gas)
    if isinstance(m, Extrapolation):
        return physical_flux(w1, gas)
    raise TypeError(f"{type(m).__name__} is not a legacy boundary mode")


def resolved_state(m: BoundaryManifold, w1: PrimState, side: Side, gas: GasModel,
                   solver: str = "godunov") -> PrimState:
    """The state ``W`` in ``m`` solving the partial Riemann problem with ``w1``."""
    branch = "rarefaction" if solver == "osher" else "exact"
    if isinstance(m, (SupersonicInflow, PrescribedFlux)):
        return m.state
    if isinstance(m, Extrapolation):
        return w1
    if isinstance(m, OutflowPressure):
        return pressure_outlet_state(w1, m.p, side, gas, branch)
    if isinstance(m, InflowEnthalpyEntropy):
        return hs_inflow_state(w1, m.H, m.S, side, gas, branch)
    if isinstance(m, SupersonicOutflow):
        v1 = _to_canonical(w1, side)
        if v1.u + sound_speed(v1, gas) <= 0.0:
            return w1
        return sonic_state(w1, side, gas)
    if isinstance(m, Wall):
        return w1.reflected()
    raise TypeError(f"unknown boundary manifold {m!r}")


def manifold_residual(m: BoundaryManifold, w: PrimState, side: Side, gas: GasModel,
                      w1: Optional[PrimState] = None) -> float:
    """Distance-like measure of how far ``w`` is from ``m`` (0 means member).

    The wall manifold depends on the cell state, which must then be passed
    as ``w1``.
    """
    if isinstance(m, (SupersonicInflow, PrescribedFlux)):
        ref = m.state
        return max(abs(w.rho - ref.rho) / ref.rho, abs(w.u - ref.u) / max(abs(ref.u), sound_speed(ref, gas)),
                   abs(w.p - ref.p) / ref.p)
    if isinstance(m, OutflowPressure):
        return abs(w.p - m.p) / m.p
    if isinstance(m, InflowEnthalpyEntropy):
        return max(abs(total_enthalpy(w, gas) - m.H) / m.H, abs(entropy(w, gas) - m.S) / m.S)
    if isinstance(m, SupersonicOutflow):
        v = _to_canonical(w, side)
        return max(0.0, v.u + sound_speed(v, gas)) / sound_speed(v, gas)
    if isinstance(m, Wall):
        if w1 is None:
            raise ValueError("the wall manifold needs the cell state")
        return manifold_residual(SupersonicInflow(w1.reflected()), w, side, gas)
    if isinstance(m, Extrapolation):
        return 0.0
    raise TypeError(f"unknown boundary manifold {m!r}")


def _fan(w: PrimState, w1: PrimState, side: Side, gas: GasModel) -> RiemannSolution:
    return solve_exact(w, w1, gas) if side is Side.LEFT else solve_exact(w1, w, gas)


def resolve(m: BoundaryManifold, w1: PrimState, side: Side, gas: GasModel,
            solver: str = "godunov") -> BoundaryResolution:
    """Solve the partial Riemann problem between ``m`` and the cell state ``w1``.

    ``solver`` selects the interface flux used between the boundary state
    and ``w1`` ("godunov" or "osher"); it also selects which acoustic wave
    curve the boundary state is searched on.
    """
    regime = regime_classify(w1, side, gas)
    w = resolved_state(m, w1, side, gas, solver)
    try:
        fan = _fan(w, w1, side, gas)
    except VacuumFormation:
        if not isinstance(m, LEGACY):
            raise
        fan = None
    pattern = fan.pattern() if fan is not None else "vacuum"

    if isinstance(m, LEGACY):
        flux = legacy_flux(m, w1, side, gas)
    elif isinstance(m, Wall):
        flux = Flux(0.0, w1.p, 0.0) if w1.u == 0.0 else Flux(0.0, fan.p_star, 0.0)
    elif solver == "osher":
        flux = osher_flux(w, w1, gas) if side is Side.LEFT else osher_flux(w1, w, gas)
    elif w == w1:
        flux = physical_flux(w, gas)
    else:
        flux = physical_flux(sample(fan, 0.0), gas)
    return BoundaryResolution(w, fan, flux, pattern, regime)
