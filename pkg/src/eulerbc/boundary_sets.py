"""Admissible boundary-state sets.

For a boundary datum ``w0`` at the left end of ``x > 0`` two sets are
considered:

* the entropy set ``E(w0)``: states ``w`` satisfying the boundary entropy
  inequality ``xi(w) - xi(w0) - d eta(w0) . (f(w) - f(w0)) <= 0`` for every
  entropy pair ``(eta, xi)``;
* the Riemann-trace set ``V(w0)``: values at ``x/t = 0+`` of the entropy
  solution of the Riemann problem with ``w0`` on the left.

Scalar laws get closed forms and a brute-force Kruzkov check; the Euler
system gets pointwise membership in ``V`` and grid sampling of it.
"""
from __future__ import annotations

import csv
from dataclasses import dataclass, field
from typing import Optional

import numpy as np

from .errors import VacuumFormation
from .gas import GasModel, PrimState, Regime, Side, regime_classify, state_from_sound_speed, entropy
from .riemann import solve_exact, trace, vacuum_check


@dataclass(frozen=True)
class Advection:
    speed: float

    def flux(self, w):
        return self.speed * w


@dataclass(frozen=True)
class Burgers:
    def flux(self, w):
        return 0.5 * w * w


ScalarLaw = Advection | Burgers


def burgers_E_closed(w0: float, w: float) -> bool:
    if w0 >= 0.0:
        return w <= -w0 or w == w0
    return w <= 0.0


def default_kgrid(w0: float, w: float, step: float = 1e-3) -> np.ndarray:
    lo = min(w, w0) - 1.0
    hi = max(w, w0) + 1.0
    n = int(np.ceil((hi - lo) / step)) + 1
    return np.concatenate([np.linspace(lo, hi, n), [w0, w]])


def kruzkov_defect(w0: float, w: float, k, law: ScalarLaw = Burgers()) -> np.ndarray:
    """Left side of the boundary entropy inequality for ``eta = |w - k|``.

    The entropy flux companion is ``xi(w) = sign(w - k) (f(w) - f(k))`` and
    the derivative of ``eta`` at ``w0`` is ``sign(w0 - k)`` (0 at the kink).
    """
    k = np.asarray(k, dtype=float)
    f = law.flux
    xi_w = np.sign(w - k) * (f(w) - f(k))
    xi_w0 = np.sign(w0 - k) * (f(w0) - f(k))
    return xi_w - xi_w0 - np.sign(w0 - k) * (f(w) - f(w0))


def burgers_E_kruzkov(w0: float, w: float, kgrid=None, tol: float = 1e-12) -> bool:
    """Membership of ``w`` in the Burgers entropy set, by brute force over Kruzkov entropies."""
    if kgrid is None:
        kgrid = default_kgrid(w0, w)
    return bool(np.all(kruzkov_defect(w0, w, kgrid) <= tol))


def scalar_V_trace(law: ScalarLaw, w0: float, w: float) -> float:
    """Entropy solution of the scalar Riemann problem ``(w0 | w)`` at ``x/t = 0+``."""
    if isinstance(law, Advection):
        return w0 if law.speed > 0.0 else w
    if w0 > w:
        return w0 if 0.5 * (w0 + w) > 0.0 else w
    if w0 >= 0.0:
        return w0
    if w <= 0.0:
        return w
    return 0.0


def scalar_V_member(law: ScalarLaw, w0: float, w: float) -> bool:
    """``w`` is a trace value iff it reproduces itself as the trace."""
    return scalar_V_trace(law, w0, w) == w


def advection_admissible(w0: float, w: float, a: float) -> bool:
    # a (w - w0)^2 <= 0, written without the square so tiny jumps do not underflow
    return a <= 0.0 or w == w0


def _rel_distance(a: PrimState, b: PrimState) -> float:
    scale_u = max(abs(b.u), np.sqrt(b.p / b.rho))
    return max(abs(a.rho - b.rho) / b.rho, abs(a.u - b.u) / scale_u, abs(a.p - b.p) / b.p)


def euler_V_membership(w0: PrimState, w: PrimState, gas: GasModel, tol: float = 1e-9,
                       side: Side = Side.LEFT) -> tuple[bool, str]:
    """Whether ``w`` belongs to the Riemann-trace set of ``w0``, with the wave pattern.

    At a right boundary the fan is ``R(w, w0)`` and the trace is taken at
    ``x/t = 0-``; membership is evaluated in the mirrored left frame.
    Raises :class:`VacuumFormation` when the Riemann problem has no
    vacuum-free solution.
    """
    if side is Side.LEFT:
        v0, v = w0, w
        pattern = solve_exact(w0, w, gas).pattern()
    else:
        v0, v = w0.reflected(), w.reflected()
        pattern = solve_exact(w, w0, gas).pattern()
    member = bool(_rel_distance(trace(solve_exact(v0, v, gas)), v) <= tol)
    if regime_classify(w, side, gas) is Regime.SUPERSONIC_OUTFLOW:
        pattern += "; supersonic-outflow"
    return member, pattern


@dataclass(frozen=True)
class Axis:
    name: str
    start: float
    stop: float
    step: float

    def __post_init__(self):
        if not (self.step > 0.0 and self.stop >= self.start):
            raise ValueError(f"empty or invalid axis {self!r}")

    def values(self) -> np.ndarray:
        n = int(np.floor((self.stop - self.start) / self.step + 1e-9)) + 1
        return self.start + self.step * np.arange(n)


PLANES = {("u", "c"), ("rho", "u"), ("u", "p"), ("rho", "p")}


@dataclass
class RegionGrid:
    axis1: Axis
    axis2: Axis
    # fixed third coordinate: the entropy for ("u","c") and ("rho","u") planes, else velocity
    fixed: float
    member: Optional[np.ndarray] = None
    pattern: list = field(default_factory=list)

    def state(self, a: float, b: float, gas: GasModel) -> PrimState:
        plane = (self.axis1.name, self.axis2.name)
        if plane == ("u", "c"):
            return state_from_sound_speed(b, a, self.fixed, gas)
        if plane == ("rho", "u"):
            return PrimState(a, b, self.fixed * a**gas.gamma)
        if plane == ("u", "p"):
            return PrimState((b / self.fixed) ** (1.0 / gas.gamma), a, b)
        if plane == ("rho", "p"):
            return PrimState(a, self.fixed, b)
        raise ValueError(f"unsupported plane {plane}")

    def write_csv(self, path) -> None:
        v1, v2 = self.axis1.values(), self.axis2.values()
        with open(path, "w", newline="") as fh:
            out = csv.writer(fh)
            # the plane itself (axis1.name, axis2.name) is recorded by the caller
            out.writerow(["coord1", "coord2", "member", "pattern"])
            for i, a in enumerate(v1):
                for j, b in enumerate(v2):
                    out.writerow([f"{a:.17g}", f"{b:.17g}", int(self.member[i, j]), self.pattern[i][j]])


def make_grid(w0: PrimState, plane: tuple[str, str], range1, range2, gas: GasModel) -> RegionGrid:
    """Grid on a 2D slice through ``w0``: entropy is held at ``S(w0)`` for the
    ``(u, c)`` and ``(rho, u)`` planes, velocity at ``u0`` otherwise."""
    plane = tuple(plane)
    if plane not in PLANES:
        raise ValueError(f"plane must be one of {sorted(PLANES)}, got {plane}")
    fixed = entropy(w0, gas) if plane in {("u", "c"), ("rho", "u"), ("u", "p")} else w0.u
    return RegionGrid(Axis(plane[0], *range1), Axis(plane[1], *range2), fixed)


def sample_V_region(w0: PrimState, grid: RegionGrid, gas: GasModel, tol: float = 1e-9) -> RegionGrid:
    """Tag every node of ``grid`` with its membership in ``V(w0)``.

    Nodes whose Riemann problem with ``w0`` would create vacuum are tagged
    ``"untestable"`` and counted as non-members.
    """
    v1, v2 = grid.axis1.values(), grid.axis2.values()
    member = np.zeros((len(v1), len(v2)), dtype=bool)
    pattern = []
    for i, a in enumerate(v1):
        row = []
        for j, b in enumerate(v2):
            w = grid.state(float(a), float(b), gas)
            if not vacuum_check(w0, w, gas):
                row.append("untestable")
                continue
            try:
                member[i, j], tag = euler_V_membership(w0, w, gas, tol)
            except VacuumFormation:
                tag = "untestable"
            row.append(tag)
        pattern.append(row)
    grid.member = member
    grid.pattern = pattern
    return grid
