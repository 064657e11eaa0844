"""Exact Riemann solver for the 1D Euler equations and interface fluxes.

The low-level functions working on plain floats (``star_state``,
``sample_prim``, ``godunov_flux_prim``, ``osher_flux_prim``) are the
reference implementation mirrored by the compiled flux kernel.  The
dataclass API on top of them (:func:`solve_exact`, :func:`sample`, ...) is
what the boundary and solver modules use.
"""
from __future__ import annotations

import enum
import math
from dataclasses import dataclass
from typing import NamedTuple

from .errors import NoConvergence, VacuumFormation
from .gas import GasModel, PrimState

MAX_NEWTON_ITER = 100
REL_TOL = 1e-15


class Flux(NamedTuple):
    mass: float
    momentum: float
    energy: float

    def reflected(self) -> "Flux":
        """Flux of the mirror-image problem under x -> -x."""
        return Flux(-self.mass, self.momentum, -self.energy)


class WaveKind(enum.Enum):
    SHOCK = "shock"
    RAREFACTION = "rarefaction"
    CONTACT = "contact"


@dataclass(frozen=True, slots=True)
class WaveDescriptor:
    family: int
    kind: WaveKind
    left_speed: float
    right_speed: float
    # signed relative jump: pressure for families 1 and 3, density for the contact
    strength: float

    @property
    def degenerate(self) -> bool:
        return self.strength == 0.0

    @property
    def speed(self) -> float:
        return 0.5 * (self.left_speed + self.right_speed)


@dataclass(frozen=True, slots=True)
class RiemannSolution:
    left: PrimState
    right: PrimState
    star_left: PrimState
    star_right: PrimState
    waves: tuple[WaveDescriptor, WaveDescriptor, WaveDescriptor]
    p_star: float
    u_star: float
    gas: GasModel

    def pattern(self, tol: float = 1e-12) -> str:
        """Compact wave-pattern label, e.g. ``"1-shock(-) 2-contact(+)"``.

        Waves whose relative strength is below ``tol`` are omitted; the
        sign in parentheses is that of the wave's mean speed.
        """
        parts = []
        for w in self.waves:
            if abs(w.strength) <= tol:
                continue
            sign = "-" if w.speed < 0.0 else ("0" if w.speed == 0.0 else "+")
            parts.append(f"{w.family}-{w.kind.value}({sign})")
        return " ".join(parts) if parts else "degenerate"


# ---------------------------------------------------------------------------
# float-level kernels


def physical_flux_prim(rho, u, p, gamma):
    ener = p / (gamma - 1.0) + 0.5 * rho * u * u
    return (rho * u, rho * u * u + p, u * (ener + p))


def physical_flux(v: PrimState, gas: GasModel) -> Flux:
    return Flux(*physical_flux_prim(v.rho, v.u, v.p, gas.gamma))


def no_vacuum(cl, ul, cr, ur, gamma):
    return 2.0 * (cl + cr) / (gamma - 1.0) > ur - ul


def _wave_fn(p, rho_k, p_k, c_k, gamma):
    """Velocity jump across a 1- or 3-wave reaching pressure ``p``, and its derivative."""
    if p > p_k:
        a = 2.0 / ((gamma + 1.0) * rho_k)
        b = (gamma - 1.0) / (gamma + 1.0) * p_k
        q = math.sqrt(a / (p + b))
        return (p - p_k) * q, q * (1.0 - 0.5 * (p - p_k) / (p + b))
    z = (gamma - 1.0) / (2.0 * gamma)
    r = p / p_k
    return 2.0 * c_k / (gamma - 1.0) * (r**z - 1.0), r ** (-(gamma + 1.0) / (2.0 * gamma)) / (rho_k * c_k)


def two_rarefaction_pressure(cl, ul, pl, cr, ur, pr, gamma):
    z = (gamma - 1.0) / (2.0 * gamma)
    num = cl + cr - 0.5 * (gamma - 1.0) * (ur - ul)
    return (num / (cl / pl**z + cr / pr**z)) ** (1.0 / z)


def star_state(rl, ul, pl, rr, ur, pr, gamma):
    """Star pressure and velocity by safeguarded Newton iteration.

    The pressure function is monotone increasing and concave; a bracket
    ``[lo, hi]`` with ``f(lo) < 0 <= f(hi)`` is maintained and any Newton
    iterate leaving it is replaced by bisection.
    """
    cl = math.sqrt(gamma * pl / rl)
    cr = math.sqrt(gamma * pr / rr)
    du = ur - ul
    if not no_vacuum(cl, ul, cr, ur, gamma):
        raise VacuumFormation(f"vacuum between ({rl}, {ul}, {pl}) and ({rr}, {ur}, {pr})")

    def fn(p):
        fl, dl = _wave_fn(p, rl, pl, cl, gamma)
        fr, dr = _wave_fn(p, rr, pr, cr, gamma)
        return fl + fr + du, dl + dr

    lo, hi = 0.0, max(pl, pr)
    while fn(hi)[0] < 0.0:
        lo, hi = hi, 2.0 * hi
    p = min(max(two_rarefaction_pressure(cl, ul, pl, cr, ur, pr, gamma), lo), hi)
    if p <= lo:
        p = 0.5 * (lo + hi)
    for _ in range(MAX_NEWTON_ITER):
        f, df = fn(p)
        if f == 0.0:
            break
        if f < 0.0:
            lo = p
        else:
            hi = p
        p_new = p - f / df
        if not lo < p_new < hi:
            p_new = 0.5 * (lo + hi)
        if abs(p_new - p) <= REL_TOL * p or hi - lo <= REL_TOL * hi:
            p = p_new
            break
        p = p_new
    else:
        raise NoConvergence(f"star pressure did not converge in {MAX_NEWTON_ITER} iterations")
    fl, _ = _wave_fn(p, rl, pl, cl, gamma)
    fr, _ = _wave_fn(p, rr, pr, cr, gamma)
    u = 0.5 * (ul + ur) + 0.5 * (fr - fl)
    return p, u


def _star_density(rho_k, p_k, ps, gamma):
    if ps > p_k:
        g6 = (gamma - 1.0) / (gamma + 1.0)
        r = ps / p_k
        return rho_k * (r + g6) / (g6 * r + 1.0)
    return rho_k * (ps / p_k) ** (1.0 / gamma)


def _shock_speed_factor(ps, p_k, gamma):
    return math.sqrt((gamma + 1.0) / (2.0 * gamma) * ps / p_k + (gamma - 1.0) / (2.0 * gamma))


def sample_prim(rl, ul, pl, rr, ur, pr, ps, us, gamma, xi, right_limit=False):
    """Self-similar solution value at ``xi = x/t`` given the star state.

    At a discontinuity located exactly at ``xi`` the downstream (star) side
    is returned, except with ``right_limit=True`` where the limit from the
    right is taken instead (they differ only for a 3-shock).
    """
    g = gamma
    if xi < us:
        cl = math.sqrt(g * pl / rl)
        if ps > pl:
            if xi < ul - cl * _shock_speed_factor(ps, pl, g):
                return rl, ul, pl
            return _star_density(rl, pl, ps, g), us, ps
        if xi <= ul - cl:
            return rl, ul, pl
        csl = cl * (ps / pl) ** ((g - 1.0) / (2.0 * g))
        if xi >= us - csl:
            return _star_density(rl, pl, ps, g), us, ps
        c = 2.0 / (g + 1.0) * (cl + 0.5 * (g - 1.0) * (ul - xi))
        u = 2.0 / (g + 1.0) * (cl + 0.5 * (g - 1.0) * ul + xi)
        ratio = c / cl
        return rl * ratio ** (2.0 / (g - 1.0)), u, pl * ratio ** (2.0 * g / (g - 1.0))
    cr = math.sqrt(g * pr / rr)
    if ps > pr:
        sr = ur + cr * _shock_speed_factor(ps, pr, g)
        if xi < sr or (xi == sr and not right_limit):
            return _star_density(rr, pr, ps, g), us, ps
        return rr, ur, pr
    if xi >= ur + cr:
        return rr, ur, pr
    csr = cr * (ps / pr) ** ((g - 1.0) / (2.0 * g))
    if xi <= us + csr:
        return _star_density(rr, pr, ps, g), us, ps
    c = 2.0 / (g + 1.0) * (cr - 0.5 * (g - 1.0) * (ur - xi))
    u = 2.0 / (g + 1.0) * (-cr + 0.5 * (g - 1.0) * ur + xi)
    ratio = c / cr
    return rr * ratio ** (2.0 / (g - 1.0)), u, pr * ratio ** (2.0 * g / (g - 1.0))


def godunov_flux_prim(rl, ul, pl, rr, ur, pr, gamma):
    if rl == rr and ul == ur and pl == pr:
        return physical_flux_prim(rl, ul, pl, gamma)
    ps, us = star_state(rl, ul, pl, rr, ur, pr, gamma)
    return physical_flux_prim(*sample_prim(rl, ul, pl, rr, ur, pr, ps, us, gamma, 0.0), gamma)


def _sonic_contribution(lam_a, lam_b, fa, fb, sonic):
    """Integral of A^- dW along one genuinely nonlinear sub-path.

    ``sonic`` is a zero-argument callable returning the flux at the sonic
    point; it is only evaluated when the eigenvalue changes sign.
    """
    if lam_a >= 0.0:
        if lam_b >= 0.0:
            return (0.0, 0.0, 0.0)
        fs = sonic()
        return tuple(b - s for b, s in zip(fb, fs))
    if lam_b < 0.0:
        return tuple(b - a for b, a in zip(fb, fa))
    fs = sonic()
    return tuple(s - a for s, a in zip(fs, fa))


def osher_flux_prim(rl, ul, pl, rr, ur, pr, gamma):
    """Osher flux with the natural (1, 2, 3) ordering of the path.

    The path from the left to the right state follows integral curves of
    families 1, 2 and 3 in turn, so every sub-path is a (possibly
    multivalued) rarefaction.
    """
    g = gamma
    fl = physical_flux_prim(rl, ul, pl, g)
    if rl == rr and ul == ur and pl == pr:
        return fl
    cl = math.sqrt(g * pl / rl)
    cr = math.sqrt(g * pr / rr)
    if not no_vacuum(cl, ul, cr, ur, g):
        raise VacuumFormation(f"vacuum on the Osher path between ({rl}, {ul}, {pl}) and ({rr}, {ur}, {pr})")
    gm = g - 1.0
    k1 = ul + 2.0 * cl / gm
    k3 = ur - 2.0 * cr / gm
    pm = two_rarefaction_pressure(cl, ul, pl, cr, ur, pr, g)
    z = gm / (2.0 * g)
    c13 = cl * (pm / pl) ** z
    c23 = cr * (pm / pr) ** z
    um = k1 - 2.0 * c13 / gm
    r13 = rl * (pm / pl) ** (1.0 / g)
    r23 = rr * (pm / pr) ** (1.0 / g)
    f13 = physical_flux_prim(r13, um, pm, g)
    f23 = physical_flux_prim(r23, um, pm, g)
    fr = physical_flux_prim(rr, ur, pr, g)

    def sonic1():
        cs = k1 * gm / (g + 1.0)
        ratio = cs / cl
        return physical_flux_prim(rl * ratio ** (2.0 / gm), cs, pl * ratio ** (2.0 * g / gm), g)

    def sonic3():
        cs = -k3 * gm / (g + 1.0)
        ratio = cs / cr
        return physical_flux_prim(rr * ratio ** (2.0 / gm), -cs, pr * ratio ** (2.0 * g / gm), g)

    d1 = _sonic_contribution(ul - cl, um - c13, fl, f13, sonic1)
    d2 = tuple(b - a for b, a in zip(f23, f13)) if um < 0.0 else (0.0, 0.0, 0.0)
    d3 = _sonic_contribution(um + c23, ur + cr, f23, fr, sonic3)
    return tuple(fl[k] + d1[k] + d2[k] + d3[k] for k in range(3))


# ---------------------------------------------------------------------------
# dataclass API


def vacuum_check(wl: PrimState, wr: PrimState, gas: GasModel) -> bool:
    """True when the Riemann problem has a solution with positive star pressure."""
    g = gas.gamma
    return no_vacuum(math.sqrt(g * wl.p / wl.rho), wl.u, math.sqrt(g * wr.p / wr.rho), wr.u, g)


def solve_exact(wl: PrimState, wr: PrimState, gas: GasModel) -> RiemannSolution:
    g = gas.gamma
    ps, us = star_state(wl.rho, wl.u, wl.p, wr.rho, wr.u, wr.p, g)
    sl = PrimState(_star_density(wl.rho, wl.p, ps, g), us, ps)
    sr = PrimState(_star_density(wr.rho, wr.p, ps, g), us, ps)
    cl = math.sqrt(g * wl.p / wl.rho)
    cr = math.sqrt(g * wr.p / wr.rho)

    if ps > wl.p:
        s = wl.u - cl * _shock_speed_factor(ps, wl.p, g)
        w1 = WaveDescriptor(1, WaveKind.SHOCK, s, s, (ps - wl.p) / wl.p)
    else:
        csl = math.sqrt(g * ps / sl.rho)
        # max() guards the fan width against round-off for vanishing waves
        w1 = WaveDescriptor(1, WaveKind.RAREFACTION, wl.u - cl, max(us - csl, wl.u - cl), (ps - wl.p) / wl.p)
    w2 = WaveDescriptor(2, WaveKind.CONTACT, us, us, (sr.rho - sl.rho) / sl.rho)
    if ps > wr.p:
        s = wr.u + cr * _shock_speed_factor(ps, wr.p, g)
        w3 = WaveDescriptor(3, WaveKind.SHOCK, s, s, (ps - wr.p) / wr.p)
    else:
        csr = math.sqrt(g * ps / sr.rho)
        w3 = WaveDescriptor(3, WaveKind.RAREFACTION, min(us + csr, wr.u + cr), wr.u + cr, (ps - wr.p) / wr.p)
    return RiemannSolution(wl, wr, sl, sr, (w1, w2, w3), ps, us, gas)


def sample(sol: RiemannSolution, xi: float, right_limit: bool = False) -> PrimState:
    wl, wr = sol.left, sol.right
    return PrimState(*sample_prim(
        wl.rho, wl.u, wl.p, wr.rho, wr.u, wr.p, sol.p_star, sol.u_star, sol.gas.gamma, xi, right_limit,
    ))


def trace(sol: RiemannSolution) -> PrimState:
    """Value of the self-similar solution at ``x/t = 0+``."""
    return sample(sol, 0.0, right_limit=True)


def godunov_flux(wl: PrimState, wr: PrimState, gas: GasModel) -> Flux:
    return Flux(*godunov_flux_prim(wl.rho, wl.u, wl.p, wr.rho, wr.u, wr.p, gas.gamma))


def osher_flux(wl: PrimState, wr: PrimState, gas: GasModel) -> Flux:
    return Flux(*osher_flux_prim(wl.rho, wl.u, wl.p, wr.rho, wr.u, wr.p, gas.gamma))


FLUXES = {"godunov": godunov_flux, "osher": osher_flux}
