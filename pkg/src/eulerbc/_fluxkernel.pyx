# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled interface flux sweeps.

Same algorithms as the float-level functions of ``eulerbc.riemann``; the
two are checked against each other by the test suite.
"""
import numpy as np
cimport numpy as cnp
from libc.math cimport sqrt, pow, fabs

from .errors import NoConvergence, VacuumFormation

cnp.import_array()

cdef int MAX_NEWTON_ITER = 100
cdef double REL_TOL = 1e-15

# status codes returned by the nogil helpers
cdef int OK = 0
cdef int VACUUM = 1
cdef int NOCONV = 2


cdef inline void phys_flux(double rho, double u, double p, double g, double* f) nogil:
    cdef double ener = p / (g - 1.0) + 0.5 * rho * u * u
    f[0] = rho * u
    f[1] = rho * u * u + p
    f[2] = u * (ener + p)


cdef inline void wave_fn(double p, double rk, double pk, double ck, double g,
                         double* fv, double* dfv) nogil:
    cdef double a, b, q, r
    if p > pk:
        a = 2.0 / ((g + 1.0) * rk)
        b = (g - 1.0) / (g + 1.0) * pk
        q = sqrt(a / (p + b))
        fv[0] = (p - pk) * q
        dfv[0] = q * (1.0 - 0.5 * (p - pk) / (p + b))
    else:
        r = p / pk
        fv[0] = 2.0 * ck / (g - 1.0) * (pow(r, (g - 1.0) / (2.0 * g)) - 1.0)
        dfv[0] = pow(r, -(g + 1.0) / (2.0 * g)) / (rk * ck)


cdef inline double two_rar(double cl, double ul, double pl, double cr, double ur,
                           double pr, double g) nogil:
    cdef double z = (g - 1.0) / (2.0 * g)
    cdef double num = cl + cr - 0.5 * (g - 1.0) * (ur - ul)
    return pow(num / (cl / pow(pl, z) + cr / pow(pr, z)), 1.0 / z)


cdef int star_state(double rl, double ul, double pl, double rr, double ur, double pr,
                    double g, double* ps, double* us) nogil:
    cdef double cl = sqrt(g * pl / rl)
    cdef double cr = sqrt(g * pr / rr)
    cdef double du = ur - ul
    cdef double lo, hi, p, p_new, f, df, fl, dl, fr, dr
    cdef int it
    if not (2.0 * (cl + cr) / (g - 1.0) > du):
        return VACUUM
    lo = 0.0
    hi = pl if pl > pr else pr
    while True:
        wave_fn(hi, rl, pl, cl, g, &fl, &dl)
        wave_fn(hi, rr, pr, cr, g, &fr, &dr)
        if fl + fr + du >= 0.0:
            break
        lo = hi
        hi = 2.0 * hi
    p = two_rar(cl, ul, pl, cr, ur, pr, g)
    if p < lo:
        p = lo
    if p > hi:
        p = hi
    if p <= lo:
        p = 0.5 * (lo + hi)
    it = 0
    while True:
        if it >= MAX_NEWTON_ITER:
            return NOCONV
        it += 1
        wave_fn(p, rl, pl, cl, g, &fl, &dl)
        wave_fn(p, rr, pr, cr, g, &fr, &dr)
        f = fl + fr + du
        df = dl + dr
        if f == 0.0:
            break
        if f < 0.0:
            lo = p
        else:
            hi = p
        p_new = p - f / df
        if not (lo < p_new and p_new < hi):
            p_new = 0.5 * (lo + hi)
        if fabs(p_new - p) <= REL_TOL * p or hi - lo <= REL_TOL * hi:
            p = p_new
            break
        p = p_new
    wave_fn(p, rl, pl, cl, g, &fl, &dl)
    wave_fn(p, rr, pr, cr, g, &fr, &dr)
    ps[0] = p
    us[0] = 0.5 * (ul + ur) + 0.5 * (fr - fl)
    return OK


cdef inline double star_density(double rk, double pk, double ps, double g) nogil:
    cdef double g6, r
    if ps > pk:
        g6 = (g - 1.0) / (g + 1.0)
        r = ps / pk
        return rk * (r + g6) / (g6 * r + 1.0)
    return rk * pow(ps / pk, 1.0 / g)


cdef inline double shock_factor(double ps, double pk, double g) nogil:
    return sqrt((g + 1.0) / (2.0 * g) * ps / pk + (g - 1.0) / (2.0 * g))


cdef void sample_zero(double rl, double ul, double pl, double rr, double ur, double pr,
                      double ps, double us, double g, double* w) nogil:
    # self-similar solution at x/t = 0, downstream side on ties
    cdef double cl, cr, csl, csr, c, ratio, sr
    cdef double xi = 0.0
    if xi < us:
        cl = sqrt(g * pl / rl)
        if ps > pl:
            if xi < ul - cl * shock_factor(ps, pl, g):
                w[0] = rl; w[1] = ul; w[2] = pl
            else:
                w[0] = star_density(rl, pl, ps, g); w[1] = us; w[2] = ps
            return
        if xi <= ul - cl:
            w[0] = rl; w[1] = ul; w[2] = pl
            return
        csl = cl * pow(ps / pl, (g - 1.0) / (2.0 * g))
        if xi >= us - csl:
            w[0] = star_density(rl, pl, ps, g); w[1] = us; w[2] = ps
            return
        c = 2.0 / (g + 1.0) * (cl + 0.5 * (g - 1.0) * (ul - xi))
        ratio = c / cl
        w[0] = rl * pow(ratio, 2.0 / (g - 1.0))
        w[1] = 2.0 / (g + 1.0) * (cl + 0.5 * (g - 1.0) * ul + xi)
        w[2] = pl * pow(ratio, 2.0 * g / (g - 1.0))
        return
    cr = sqrt(g * pr / rr)
    if ps > pr:
        sr = ur + cr * shock_factor(ps, pr, g)
        if xi <= sr:
            w[0] = star_density(rr, pr, ps, g); w[1] = us; w[2] = ps
        else:
            w[0] = rr; w[1] = ur; w[2] = pr
        return
    if xi >= ur + cr:
        w[0] = rr; w[1] = ur; w[2] = pr
        return
    csr = cr * pow(ps / pr, (g - 1.0) / (2.0 * g))
    if xi <= us + csr:
        w[0] = star_density(rr, pr, ps, g); w[1] = us; w[2] = ps
        return
    c = 2.0 / (g + 1.0) * (cr - 0.5 * (g - 1.0) * (ur - xi))
    ratio = c / cr
    w[0] = rr * pow(ratio, 2.0 / (g - 1.0))
    w[1] = 2.0 / (g + 1.0) * (-cr + 0.5 * (g - 1.0) * ur + xi)
    w[2] = pr * pow(ratio, 2.0 * g / (g - 1.0))


cdef int godunov_one(double rl, double ul, double pl, double rr, double ur, double pr,
                     double g, double* f) nogil:
    cdef double ps, us
    cdef double w[3]
    cdef int status
    if rl == rr and ul == ur and pl == pr:
        phys_flux(rl, ul, pl, g, f)
        return OK
    status = star_state(rl, ul, pl, rr, ur, pr, g, &ps, &us)
    if status != OK:
        return status
    sample_zero(rl, ul, pl, rr, ur, pr, ps, us, g, w)
    phys_flux(w[0], w[1], w[2], g, f)
    return OK


cdef inline void gnl_contribution(double lam_a, double lam_b, double* fa, double* fb,
                                  double* fs, double* d) nogil:
    # integral of A^- dW along one sub-path; fs is the sonic-point flux
    cdef int k
    if lam_a >= 0.0:
        if lam_b >= 0.0:
            for k in range(3):
                d[k] = 0.0
        else:
            for k in range(3):
                d[k] = fb[k] - fs[k]
    elif lam_b < 0.0:
        for k in range(3):
            d[k] = fb[k] - fa[k]
    else:
        for k in range(3):
            d[k] = fs[k] - fa[k]


cdef int osher_one(double rl, double ul, double pl, double rr, double ur, double pr,
                   double g, double* f) nogil:
    cdef double fl[3]
    cdef double fr[3]
    cdef double f13[3]
    cdef double f23[3]
    cdef double fs[3]
    cdef double d1[3]
    cdef double d3[3]
    cdef double cl, cr, gm, k1, k3, pm, z, c13, c23, um, r13, r23, cs, ratio, lam_a, lam_b
    cdef int k
    phys_flux(rl, ul, pl, g, fl)
    if rl == rr and ul == ur and pl == pr:
        for k in range(3):
            f[k] = fl[k]
        return OK
    cl = sqrt(g * pl / rl)
    cr = sqrt(g * pr / rr)
    if not (2.0 * (cl + cr) / (g - 1.0) > ur - ul):
        return VACUUM
    gm = g - 1.0
    k1 = ul + 2.0 * cl / gm
    k3 = ur - 2.0 * cr / gm
    pm = two_rar(cl, ul, pl, cr, ur, pr, g)
    z = gm / (2.0 * g)
    c13 = cl * pow(pm / pl, z)
    c23 = cr * pow(pm / pr, z)
    um = k1 - 2.0 * c13 / gm
    r13 = rl * pow(pm / pl, 1.0 / g)
    r23 = rr * pow(pm / pr, 1.0 / g)
    phys_flux(r13, um, pm, g, f13)
    phys_flux(r23, um, pm, g, f23)
    phys_flux(rr, ur, pr, g, fr)

    lam_a = ul - cl
    lam_b = um - c13
    if (lam_a >= 0.0) != (lam_b >= 0.0):
        cs = k1 * gm / (g + 1.0)
        ratio = cs / cl
        phys_flux(rl * pow(ratio, 2.0 / gm), cs, pl * pow(ratio, 2.0 * g / gm), g, fs)
    gnl_contribution(lam_a, lam_b, fl, f13, fs, d1)

    lam_a = um + c23
    lam_b = ur + cr
    if (lam_a >= 0.0) != (lam_b >= 0.0):
        cs = -k3 * gm / (g + 1.0)
        ratio = cs / cr
        phys_flux(rr * pow(ratio, 2.0 / gm), -cs, pr * pow(ratio, 2.0 * g / gm), g, fs)
    gnl_contribution(lam_a, lam_b, f23, fr, fs, d3)

    for k in range(3):
        f[k] = fl[k] + d1[k] + d3[k]
        if um < 0.0:
            f[k] += f23[k] - f13[k]
    return OK


ctypedef int (*flux_fn_t)(double, double, double, double, double, double, double, double*) nogil


cdef _sweep(double[:, ::1] prim, double gamma, flux_fn_t fn):
    cdef Py_ssize_t n = prim.shape[0]
    cdef Py_ssize_t j
    cdef int status = OK
    out = np.empty((max(n - 1, 0), 3))
    cdef double[:, ::1] o = out
    with nogil:
        for j in range(n - 1):
            status = fn(prim[j, 0], prim[j, 1], prim[j, 2],
                        prim[j + 1, 0], prim[j + 1, 1], prim[j + 1, 2], gamma, &o[j, 0])
            if status != OK:
                break
    if status == VACUUM:
        raise VacuumFormation(
            f"vacuum between {tuple(prim[j])} and {tuple(prim[j + 1])}", interface=j)
    if status == NOCONV:
        raise NoConvergence(f"star pressure did not converge at interface {j}")
    return out


def godunov_fluxes(prim, double gamma):
    """Godunov fluxes between consecutive rows of the ``(n, 3)`` primitive array."""
    return _sweep(np.ascontiguousarray(prim, dtype=np.float64), gamma, godunov_one)


def osher_fluxes(prim, double gamma):
    """Osher fluxes between consecutive rows of the ``(n, 3)`` primitive array."""
    return _sweep(np.ascontiguousarray(prim, dtype=np.float64), gamma, osher_one)
