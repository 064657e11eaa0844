"""Independent reference computations used by the tests.

Nothing here imports the production solver: the star pressure comes from
plain bisection on a differently written pressure function, and frozen
values below were produced by these routines once and pinned.
"""
import math

GAMMA = 1.4

# bisection oracle values, pinned
SOD_P_STAR = 0.3031301780506468
SOD_U_STAR = 0.9274526200489498
SOD_RHO_STAR_LEFT = 0.42631942817849516


def _branch(p, rho, pk, gamma):
    """Velocity change across one acoustic wave reaching pressure ``p``."""
    c = math.sqrt(gamma * pk / rho)
    if p >= pk:
        # shock: mass flux through the wave
        m = math.sqrt(0.5 * rho * ((gamma + 1.0) * p + (gamma - 1.0) * pk))
        return (p - pk) / m
    return 2.0 * c / (gamma - 1.0) * ((p / pk) ** ((gamma - 1.0) / (2.0 * gamma)) - 1.0)


def bisect_star(left, right, gamma=GAMMA, iters=400):
    """Star pressure and velocity by pure bisection.  States are (rho, u, p)."""
    rl, ul, pl = left
    rr, ur, pr = right

    def F(p):
        return _branch(p, rl, pl, gamma) + _branch(p, rr, pr, gamma) + ur - ul

    lo, hi = 0.0, max(pl, pr)
    while F(hi) < 0.0:
        lo, hi = hi, 2.0 * hi
    for _ in range(iters):
        mid = 0.5 * (lo + hi)
        if mid in (lo, hi):
            break
        if F(mid) < 0.0:
            lo = mid
        else:
            hi = mid
    p = 0.5 * (lo + hi)
    u = 0.5 * (ul + ur) + 0.5 * (_branch(p, rr, pr, gamma) - _branch(p, rl, pl, gamma))
    return p, u


def euler_flux(rho, u, p, gamma=GAMMA):
    e = p / (gamma - 1.0) + 0.5 * rho * u * u
    return (rho * u, rho * u * u + p, u * (e + p))


def sod_exact(x, t, gamma=GAMMA, x0=0.5):
    """Exact Sod solution, written out from the oracle star state."""
    rl, ul, pl = 1.0, 0.0, 1.0
    rr, ur, pr = 0.125, 0.0, 0.1
    ps, us = bisect_star((rl, ul, pl), (rr, ur, pr), gamma)
    cl = math.sqrt(gamma * pl / rl)
    cr = math.sqrt(gamma * pr / rr)
    rsl = rl * (ps / pl) ** (1.0 / gamma)
    csl = math.sqrt(gamma * ps / rsl)
    g6 = (gamma - 1.0) / (gamma + 1.0)
    rsr = rr * (ps / pr + g6) / (g6 * ps / pr + 1.0)
    shock = ur + cr * math.sqrt((gamma + 1.0) / (2.0 * gamma) * ps / pr + (gamma - 1.0) / (2.0 * gamma))
    xi = (x - x0) / t
    if xi <= ul - cl:
        return rl, ul, pl
    if xi < us - csl:
        u = 2.0 / (gamma + 1.0) * (cl + xi)
        c = cl - 0.5 * (gamma - 1.0) * u
        return rl * (c / cl) ** (2.0 / (gamma - 1.0)), u, pl * (c / cl) ** (2.0 * gamma / (gamma - 1.0))
    if xi < us:
        return rsl, us, ps
    if xi < shock:
        return rsr, us, ps
    return rr, ur, pr
