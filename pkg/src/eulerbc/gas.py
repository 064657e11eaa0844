"""Polytropic ideal gas: state types, conversions, eigenstructure.

States are immutable value objects.  Primitive variables ``(rho, u, p)``
are the working set everywhere; conservative variables
``(rho, rho*u, rho*E)`` are used by the finite-volume update.
"""
from __future__ import annotations

import enum
import math
from dataclasses import dataclass
from typing import NamedTuple

import numpy as np

from .errors import NonPhysicalState


@dataclass(frozen=True, slots=True)
class GasModel:
    gamma: float = 1.4

    def __post_init__(self):
        if not self.gamma > 1.0:
            raise ValueError(f"gamma must exceed 1, got {self.gamma}")


@dataclass(frozen=True, slots=True)
class PrimState:
    rho: float
    u: float
    p: float

    def __post_init__(self):
        if not (math.isfinite(self.rho) and math.isfinite(self.u) and math.isfinite(self.p)):
            raise NonPhysicalState(f"non-finite state {self!r}")
        if self.rho <= 0.0 or self.p <= 0.0:
            raise NonPhysicalState(f"non-positive density or pressure in {self!r}")

    def as_tuple(self) -> tuple[float, float, float]:
        return (self.rho, self.u, self.p)

    def reflected(self) -> "PrimState":
        """Mirror image under x -> -x."""
        return PrimState(self.rho, -self.u, self.p)


@dataclass(frozen=True, slots=True)
class ConsState:
    rho: float
    mom: float
    ener: float

    def as_tuple(self) -> tuple[float, float, float]:
        return (self.rho, self.mom, self.ener)


class Side(enum.Enum):
    LEFT = "left"
    RIGHT = "right"

    @property
    def normal(self) -> float:
        """Outward normal of the boundary on this side of the domain."""
        return -1.0 if self is Side.LEFT else 1.0

    @property
    def opposite(self) -> "Side":
        return Side.RIGHT if self is Side.LEFT else Side.LEFT


class Regime(enum.Enum):
    SUPERSONIC_INFLOW = "SupersonicInflow"
    SUBSONIC_INFLOW = "SubsonicInflow"
    CHARACTERISTIC = "Characteristic"
    SUBSONIC_OUTFLOW = "SubsonicOutflow"
    SUPERSONIC_OUTFLOW = "SupersonicOutflow"


class Eigenstructure(NamedTuple):
    lam: tuple[float, float, float]
    # rvec[j] is the right eigenvector of family j+1 in (rho, u, S) coordinates
    rvec: np.ndarray


class CharCoords(NamedTuple):
    phi1: float
    phi2: float
    phi3: float


def cons_to_prim(w: ConsState, gas: GasModel) -> PrimState:
    if not w.rho > 0.0:
        raise NonPhysicalState(f"non-positive density in {w!r}")
    u = w.mom / w.rho
    p = (gas.gamma - 1.0) * (w.ener - 0.5 * w.mom * u)
    if not p > 0.0:
        raise NonPhysicalState(f"non-positive pressure {p!r} from {w!r}")
    return PrimState(w.rho, u, p)


def prim_to_cons(v: PrimState, gas: GasModel) -> ConsState:
    return ConsState(v.rho, v.rho * v.u, v.p / (gas.gamma - 1.0) + 0.5 * v.rho * v.u * v.u)


def sound_speed(v: PrimState, gas: GasModel) -> float:
    return math.sqrt(gas.gamma * v.p / v.rho)


def mach(v: PrimState, gas: GasModel) -> float:
    return abs(v.u) / sound_speed(v, gas)


def entropy(v: PrimState, gas: GasModel) -> float:
    """Dimensionless specific entropy ``S = p / rho**gamma``."""
    return v.p / v.rho**gas.gamma


def total_enthalpy(v: PrimState, gas: GasModel) -> float:
    return 0.5 * v.u * v.u + gas.gamma * v.p / ((gas.gamma - 1.0) * v.rho)


def state_from_entropy(rho: float, u: float, s: float, gas: GasModel) -> PrimState:
    return PrimState(rho, u, s * rho**gas.gamma)


def state_from_sound_speed(c: float, u: float, s: float, gas: GasModel) -> PrimState:
    """Isentropic-slice constructor: the state with sound speed ``c`` and entropy ``s``."""
    if not c > 0.0:
        raise NonPhysicalState(f"non-positive sound speed {c!r}")
    g = gas.gamma
    rho = (c * c / (g * s)) ** (1.0 / (g - 1.0))
    return PrimState(rho, u, s * rho**g)


def quasilinear_matrix(v: PrimState, gas: GasModel) -> np.ndarray:
    """The matrix A(V) of the non-conservative system in (rho, u, S)."""
    c2 = gas.gamma * v.p / v.rho
    dp_ds = v.rho**gas.gamma
    return np.array([
        [v.u, v.rho, 0.0],
        [c2 / v.rho, v.u, dp_ds / v.rho],
        [0.0, 0.0, v.u],
    ])


def eigenstructure(v: PrimState, gas: GasModel) -> Eigenstructure:
    c = sound_speed(v, gas)
    dp_ds = v.rho**gas.gamma
    rvec = np.array([
        [v.rho, -c, 0.0],
        [dp_ds, 0.0, -c * c],
        [v.rho, c, 0.0],
    ])
    return Eigenstructure((v.u - c, v.u, v.u + c), rvec)


def linearized_pressure(dv, ref: PrimState, gas: GasModel) -> float:
    """Pressure perturbation implied by a (rho', u', S') perturbation."""
    drho, _, ds = dv
    return ref.rho**gas.gamma * ds + gas.gamma * ref.p / ref.rho * drho


def char_coords(dv, ref: PrimState, gas: GasModel) -> CharCoords:
    """Characteristic amplitudes of the perturbation ``dv = (rho', u', S')``.

    Amplitudes are taken against the unnormalized eigenvectors returned by
    :func:`eigenstructure`, so ``sum(phi_j * r_j) == dv``.
    """
    _, du, ds = dv
    c = sound_speed(ref, gas)
    dp = linearized_pressure(dv, ref, gas)
    rc = ref.rho * c
    denom = 2.0 * ref.rho * c * c
    return CharCoords((dp - rc * du) / denom, -ds / (c * c), (dp + rc * du) / denom)


def reconstruct(phi: CharCoords, ref: PrimState, gas: GasModel) -> np.ndarray:
    return np.asarray(phi) @ eigenstructure(ref, gas).rvec


def regime_classify(v: PrimState, side: Side, gas: GasModel) -> Regime:
    """Flow regime seen by a boundary, from the outward-normal velocity."""
    un = side.normal * v.u
    c = sound_speed(v, gas)
    if un >= c:
        return Regime.SUPERSONIC_OUTFLOW
    if un > 0.0:
        return Regime.SUBSONIC_OUTFLOW
    if un == 0.0:
        return Regime.CHARACTERISTIC
    if un > -c:
        return Regime.SUBSONIC_INFLOW
    return Regime.SUPERSONIC_INFLOW
