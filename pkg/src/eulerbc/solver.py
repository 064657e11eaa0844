"""Explicit first-order finite volumes for 1D and quasi-1D Euler.

Cells ``K_j = ](j - 1/2) dx, (j + 1/2) dx[`` shifted onto ``[0, 1]`` have
centers ``x_j = (j + 1/2) dx``.  Interior fluxes come from the compiled (or
fallback) Riemann sweeps, boundary fluxes from :func:`boundary.resolve` or
the legacy formulas.
"""
from __future__ import annotations

import csv
import json
import math
from dataclasses import dataclass, field
from typing import Callable, Optional, Sequence

import numpy as np
from scipy.optimize import brentq

from . import kernels
from .boundary import BoundaryManifold, Extrapolation, SupersonicInflow, SupersonicOutflow, resolve
from .errors import NonPhysicalState, NoSupersonicBranch, NotConverged, VacuumFormation
from .gas import GasModel, PrimState, Side, entropy, sound_speed, total_enthalpy

NOZZLE_INLET = PrimState(0.502, 1.299, 0.381)
NOZZLE_INITIAL = PrimState(1.0, 0.0, 1.0)


def nozzle_area(x):
    """Cross-section of the divergent test nozzle on ``[0, 1]``."""
    return 1.598 + 0.347 * np.tanh(8.0 * np.asarray(x) - 4.0)


@dataclass(frozen=True)
class Mesh:
    n: int

    def __post_init__(self):
        if self.n < 2:
            raise ValueError("a mesh needs at least two cells")

    @property
    def dx(self) -> float:
        return 1.0 / self.n

    @property
    def centers(self) -> np.ndarray:
        return (np.arange(self.n) + 0.5) * self.dx

    @property
    def faces(self) -> np.ndarray:
        return np.arange(self.n + 1) * self.dx


@dataclass(frozen=True)
class NozzleGeometry:
    area: Callable = nozzle_area

    def face_areas(self, mesh: Mesh) -> np.ndarray:
        a = np.asarray(self.area(mesh.faces), dtype=float)
        if np.any(a <= 0.0):
            raise ValueError("nozzle area must be positive")
        return a

    def cell_areas(self, mesh: Mesh) -> np.ndarray:
        return np.asarray(self.area(mesh.centers), dtype=float)


@dataclass(frozen=True)
class SolverConfig:
    mesh: Mesh
    left: BoundaryManifold
    right: BoundaryManifold
    gas: GasModel = GasModel(1.4)
    geometry: Optional[NozzleGeometry] = None
    cfl: float = 0.9
    max_steps: int = 20000
    residual_threshold: float = 1e-8
    flux: str = "godunov"

    def __post_init__(self):
        if not 0.0 < self.cfl <= 1.0:
            raise ValueError(f"CFL number must lie in (0, 1], got {self.cfl}")
        if self.flux not in kernels.SWEEPS:
            raise ValueError(f"unknown interface flux {self.flux!r}")


def nozzle_config(n: int, inlet: str = "riemann", outlet: str = "riemann", **kw) -> SolverConfig:
    """The divergent-nozzle experiment.

    ``inlet`` is ``"riemann"`` (full Riemann problem against the upstream
    state) or ``"prescribed-flux"``; ``outlet`` is ``"riemann"`` (supersonic
    outflow manifold with sonic correction) or ``"extrapolation"``.
    """
    from .boundary import PrescribedFlux

    left = {"riemann": SupersonicInflow(NOZZLE_INLET), "prescribed-flux": PrescribedFlux(NOZZLE_INLET)}[inlet]
    right = {"riemann": SupersonicOutflow(), "extrapolation": Extrapolation()}[outlet]
    return SolverConfig(Mesh(n), left, right, geometry=NozzleGeometry(), **kw)


@dataclass
class SolverField:
    cons: np.ndarray  # (n, 3) conservative variables
    time: float = 0.0

    def primitive(self, gas: GasModel) -> np.ndarray:
        return cons_to_prim_array(self.cons, gas)


@dataclass(frozen=True)
class StepInfo:
    dt: float
    flux_left: np.ndarray
    flux_right: np.ndarray
    u_left: float
    u_right: float


@dataclass
class RunReport:
    steps: int = 0
    converged: bool = False
    residuals: list = field(default_factory=list)
    u_left: list = field(default_factory=list)
    u_right: list = field(default_factory=list)
    flux_left: list = field(default_factory=list)
    flux_right: list = field(default_factory=list)
    snapshots: dict = field(default_factory=dict)
    final: Optional[SolverField] = None

    def to_json(self) -> dict:
        return {
            "steps": self.steps,
            "converged": self.converged,
            "residuals": self.residuals,
            "u_left": self.u_left,
            "u_right": self.u_right,
        }


def cons_to_prim_array(cons: np.ndarray, gas: GasModel) -> np.ndarray:
    rho = cons[:, 0]
    u = cons[:, 1] / rho
    p = (gas.gamma - 1.0) * (cons[:, 2] - 0.5 * cons[:, 1] * u)
    bad = np.flatnonzero(~((rho > 0.0) & (p > 0.0)))
    if bad.size:
        j = int(bad[0])
        raise NonPhysicalState(f"cell {j}: rho={rho[j]!r}, p={p[j]!r}", cell=j)
    return np.column_stack([rho, u, p])


def prim_to_cons_array(prim: np.ndarray, gas: GasModel) -> np.ndarray:
    rho, u, p = prim[:, 0], prim[:, 1], prim[:, 2]
    return np.column_stack([rho, rho * u, p / (gas.gamma - 1.0) + 0.5 * rho * u * u])


def initial_field(config: SolverConfig, profile: Optional[Callable] = None) -> SolverField:
    """Uniform rest state ``(1, 0, 1)`` unless ``profile(x) -> PrimState`` is given."""
    x = config.mesh.centers
    if profile is None:
        prim = np.tile(NOZZLE_INITIAL.as_tuple(), (len(x), 1))
    else:
        prim = np.array([profile(float(xj)).as_tuple() for xj in x])
    return SolverField(prim_to_cons_array(prim, config.gas))


def _boundary(m, prim_row, side, config):
    w1 = PrimState(*prim_row)
    res = resolve(m, w1, side, config.gas, solver=config.flux)
    return np.array(res.flux)


def advance(fld: SolverField, config: SolverConfig,
            dt_max: Optional[float] = None) -> tuple[SolverField, StepInfo]:
    """One explicit step; returns the new field and the step's bookkeeping.

    ``dt_max`` caps the CFL time step, e.g. to land on an output time.
    """
    gas = config.gas
    mesh = config.mesh
    prim = fld.primitive(gas)
    c = np.sqrt(gas.gamma * prim[:, 2] / prim[:, 0])
    dt = config.cfl * mesh.dx / float(np.max(np.abs(prim[:, 1]) + c))
    if dt_max is not None:
        dt = min(dt, dt_max)

    fluxes = np.empty((mesh.n + 1, 3))
    try:
        fluxes[1:-1] = kernels.SWEEPS[config.flux](prim, gas.gamma)
    except VacuumFormation as exc:
        raise VacuumFormation(str(exc), interface=exc.interface + 1) from None
    try:
        fluxes[0] = _boundary(config.left, prim[0], Side.LEFT, config)
    except VacuumFormation as exc:
        raise VacuumFormation(str(exc), interface=0) from None
    try:
        fluxes[-1] = _boundary(config.right, prim[-1], Side.RIGHT, config)
    except VacuumFormation as exc:
        raise VacuumFormation(str(exc), interface=mesh.n) from None

    lam = dt / mesh.dx
    if config.geometry is None:
        new = fld.cons - lam * (fluxes[1:] - fluxes[:-1])
    else:
        fa = config.geometry.face_areas(mesh)
        ca = config.geometry.cell_areas(mesh)
        ar = (fa[1:] / ca)[:, None]
        al = (fa[:-1] / ca)[:, None]
        new = fld.cons - lam * (ar * fluxes[1:] - al * fluxes[:-1])
        new[:, 1] += lam * prim[:, 2] * (ar[:, 0] - al[:, 0])

    out = SolverField(new, fld.time + dt)
    out.primitive(gas)  # validates every cell
    info = StepInfo(dt, fluxes[0].copy(), fluxes[-1].copy(), float(prim[0, 1]), float(prim[-1, 1]))
    return out, info


def step(fld: SolverField, config: SolverConfig) -> SolverField:
    return advance(fld, config)[0]


def run_until(config: SolverConfig, t_end: float, initial: Optional[SolverField] = None) -> SolverField:
    """March to time ``t_end`` exactly, shortening the last step."""
    fld = initial if initial is not None else initial_field(config)
    while fld.time < t_end:
        fld = advance(fld, config, dt_max=t_end - fld.time)[0]
    return fld


def run_to_steady(config: SolverConfig, initial: Optional[SolverField] = None,
                  snapshot_steps: Sequence[int] = (), raise_on_failure: bool = True) -> RunReport:
    """March until the update norm drops below ``residual_threshold`` times the first one.

    ``u_left``/``u_right`` record the velocity in the first and last cells
    before each step.  ``snapshot_steps`` selects steps (0 = initial field)
    whose primitive fields are kept in ``report.snapshots``; the final field
    is always kept in ``report.final``.
    """
    fld = initial if initial is not None else initial_field(config)
    report = RunReport()
    wanted = set(snapshot_steps)
    if 0 in wanted:
        report.snapshots[0] = fld.primitive(config.gas)
    first = None
    for n in range(1, config.max_steps + 1):
        new, info = advance(fld, config)
        norm = float(np.linalg.norm(new.cons - fld.cons))
        if first is None:
            first = norm if norm > 0.0 else 1.0
        res = norm / first
        report.residuals.append(res)
        report.u_left.append(info.u_left)
        report.u_right.append(info.u_right)
        report.flux_left.append(info.flux_left.tolist())
        report.flux_right.append(info.flux_right.tolist())
        fld = new
        report.steps = n
        if n in wanted:
            report.snapshots[n] = fld.primitive(config.gas)
        if res <= config.residual_threshold or norm == 0.0:
            report.converged = True
            break
    report.final = fld
    if not report.converged and raise_on_failure:
        raise NotConverged(f"not converged after {report.steps} steps", report)
    return report


def area_mach_ratio(m, gamma):
    """``A / A*`` for isentropic flow at Mach number ``m``."""
    return (2.0 / (gamma + 1.0) * (1.0 + 0.5 * (gamma - 1.0) * m * m)) ** (
        (gamma + 1.0) / (2.0 * (gamma - 1.0))) / m


def exact_nozzle_steady(x: float, inlet: PrimState = NOZZLE_INLET, gas: GasModel = GasModel(1.4),
                        area: Callable = nozzle_area) -> PrimState:
    """Steady supersonic quasi-1D solution with ``inlet`` imposed at ``x = 0``.

    Mass flow, total enthalpy and entropy are those of the inlet; the Mach
    number at ``x`` is the supersonic root of the area-Mach relation.
    """
    g = gas.gamma
    c0 = sound_speed(inlet, gas)
    m0 = inlet.u / c0
    if not m0 > 1.0:
        raise NoSupersonicBranch(f"inlet Mach {m0} is not supersonic")
    if x == 0.0:
        return inlet
    a_star = float(area(0.0)) / area_mach_ratio(m0, g)
    ratio = float(area(x)) / a_star
    if ratio < 1.0:
        raise NoSupersonicBranch(f"section {float(area(x))} is below the sonic throat {a_star}")
    if ratio == 1.0:
        m = 1.0
    else:
        hi = 2.0
        while area_mach_ratio(hi, g) < ratio:
            hi *= 2.0
        m = brentq(lambda mm: area_mach_ratio(mm, g) - ratio, 1.0, hi, xtol=1e-15, rtol=1e-15)
    H = total_enthalpy(inlet, gas)
    S = entropy(inlet, gas)
    c = math.sqrt((g - 1.0) * H / (1.0 + 0.5 * (g - 1.0) * m * m))
    rho = (c * c / (g * S)) ** (1.0 / (g - 1.0))
    return PrimState(rho, m * c, S * rho**g)


def mach_profile(prim: np.ndarray, gas: GasModel) -> np.ndarray:
    return np.abs(prim[:, 1]) / np.sqrt(gas.gamma * prim[:, 2] / prim[:, 0])


def write_snapshot_csv(path, x: np.ndarray, prim: np.ndarray, gas: GasModel) -> None:
    m = mach_profile(prim, gas)
    s = prim[:, 2] / prim[:, 0] ** gas.gamma
    with open(path, "w", newline="") as fh:
        out = csv.writer(fh)
        out.writerow(["x", "rho", "u", "p", "mach", "entropy"])
        for row in zip(x, prim[:, 0], prim[:, 1], prim[:, 2], m, s):
            out.writerow([f"{float(v):.17g}" for v in row])


def write_report_json(path, report: RunReport, **extra) -> None:
    with open(path, "w") as fh:
        json.dump({**report.to_json(), **extra}, fh, indent=1)
