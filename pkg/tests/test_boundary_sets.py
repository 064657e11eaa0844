import csv

import numpy as np
import pytest
from hypothesis import assume, given, strategies as st

from conftest import GAS, prim_states
from eulerbc.boundary_sets import (
    Advection,
    Axis,
    Burgers,
    advection_admissible,
    burgers_E_closed,
    burgers_E_kruzkov,
    default_kgrid,
    euler_V_membership,
    make_grid,
    sample_V_region,
    scalar_V_member,
    scalar_V_trace,
)
from eulerbc.gas import PrimState, Side
from eulerbc.riemann import sample, solve_exact, trace, vacuum_check
from eulerbc.solver import NOZZLE_INLET

scalars = st.floats(-3.0, 3.0)


@pytest.mark.parametrize("w0, w, expected", [
    (1.0, 1.0, True), (1.0, 0.0, False), (1.0, -2.0, True),
    (-1.0, -0.5, True), (-1.0, 0.5, False),
])
def test_burgers_closed_form_examples(w0, w, expected):
    assert burgers_E_closed(w0, w) is expected
    assert burgers_E_kruzkov(w0, w) is expected


@given(scalars)
def test_burgers_zero_datum(w):
    assert burgers_E_closed(0.0, w) is (w <= 0.0)


@given(scalars)
def test_kruzkov_accepts_the_datum_itself(w0):
    assert burgers_E_kruzkov(w0, w0)


@given(scalars, scalars)
def test_kruzkov_refinement_never_admits_more(w0, w):
    coarse = default_kgrid(w0, w, step=0.1)
    fine = np.concatenate([coarse, default_kgrid(w0, w, step=0.01)])
    assert burgers_E_kruzkov(w0, w, fine) <= burgers_E_kruzkov(w0, w, coarse)


def test_scalar_trace_examples():
    assert scalar_V_trace(Burgers(), 0.7, 0.7) == 0.7
    assert scalar_V_trace(Burgers(), 1.0, -2.0) == -2.0
    assert scalar_V_trace(Advection(2.0), 0.3, -1.0) == 0.3
    assert scalar_V_trace(Advection(-2.0), 0.3, -1.0) == -1.0


def test_standing_burgers_shock_takes_right_value():
    assert scalar_V_trace(Burgers(), 1.0, -1.0) == -1.0


@given(scalars, scalars)
def test_burgers_trace_is_member_and_in_E(w0, w):
    t = scalar_V_trace(Burgers(), w0, w)
    assert scalar_V_member(Burgers(), w0, t)
    if scalar_V_member(Burgers(), w0, w):
        assert burgers_E_kruzkov(w0, w)


@given(scalars)
def test_datum_in_its_own_trace_set(w0):
    assert scalar_V_member(Burgers(), w0, w0)
    assert scalar_V_member(Advection(1.0), w0, w0)


def test_advection_examples():
    assert not advection_admissible(0.0, 0.5, 1.0)
    assert advection_admissible(0.0, 0.5, -1.0)
    assert advection_admissible(0.0, 0.5, 0.0)
    assert advection_admissible(0.2, 0.2, 1.0)


@given(scalars, scalars, st.sampled_from([-1.0, 1.0]))
def test_advection_trace_set_matches_inequality(w0, w, a):
    assert scalar_V_member(Advection(a), w0, w) is advection_admissible(w0, w, a)


def test_euler_datum_is_member():
    member, pattern = euler_V_membership(NOZZLE_INLET, NOZZLE_INLET, GAS)
    assert member and pattern == "degenerate"


@given(prim_states(), prim_states())
def test_trace_idempotence(w0, w):
    assume(vacuum_check(w0, w, GAS))
    sol = solve_exact(w0, w, GAS)
    # a wave standing exactly at x = 0 makes the trace depend on round-off
    edges = [s for v in sol.waves if not v.degenerate for s in (v.left_speed, v.right_speed)]
    assume(all(abs(s) > 1e-9 for s in edges))
    t = trace(sol)
    assume(vacuum_check(w0, t, GAS))
    assert euler_V_membership(w0, t, GAS)[0]


@given(prim_states(), prim_states())
def test_euler_membership_reflection_covariant(w0, w):
    assume(vacuum_check(w0, w, GAS) and vacuum_check(w.reflected(), w0.reflected(), GAS))
    left = euler_V_membership(w0, w, GAS)[0]
    assert euler_V_membership(w0.reflected(), w.reflected(), GAS, side=Side.RIGHT)[0] is left


@given(prim_states(), prim_states())
def test_right_membership_against_direct_left_limit(w0, w):
    """At a right end the trace is the 0- value of R(w, w0)."""
    assume(vacuum_check(w, w0, GAS))
    sol = solve_exact(w, w0, GAS)
    speeds = [s for wave in sol.waves for s in (wave.left_speed, wave.right_speed)]
    assume(min(abs(s) for s in speeds) > 1e-6)
    direct = sample(sol, -1e-9)
    member = euler_V_membership(w0, w, GAS, side=Side.RIGHT)[0]
    close = np.allclose(direct.as_tuple(), w.as_tuple(), rtol=1e-7, atol=1e-7)
    assert member is close


def test_axis_rejects_empty_range():
    with pytest.raises(ValueError):
        Axis("u", 1.0, 0.0, 0.1)
    with pytest.raises(ValueError):
        Axis("u", 0.0, 1.0, 0.0)


def test_region_grid_contains_datum(tmp_path):
    from eulerbc.gas import sound_speed

    c0 = sound_speed(NOZZLE_INLET, GAS)
    grid = make_grid(NOZZLE_INLET, ("u", "c"), (NOZZLE_INLET.u - 1.0, NOZZLE_INLET.u + 1.0, 0.5),
                     (c0 - 0.5, c0 + 0.5, 0.25), GAS)
    grid = sample_V_region(NOZZLE_INLET, grid, GAS)
    i = int(np.argmin(np.abs(grid.axis1.values() - NOZZLE_INLET.u)))
    j = int(np.argmin(np.abs(grid.axis2.values() - c0)))
    assert grid.member[i, j]
    path = tmp_path / "grid.csv"
    grid.write_csv(path)
    rows = list(csv.reader(open(path)))
    assert rows[0] == ["coord1", "coord2", "member", "pattern"]
    assert len(rows) == 1 + grid.member.size


@pytest.mark.parametrize("plane", [("u", "c"), ("rho", "u"), ("u", "p"), ("rho", "p")])
def test_grid_states_follow_the_plane(plane):
    grid = make_grid(NOZZLE_INLET, plane, (0.5, 1.0, 0.5), (0.5, 1.0, 0.5), GAS)
    v = grid.state(0.5, 1.0, GAS)
    coords = {"u": v.u, "rho": v.rho, "p": v.p, "c": np.sqrt(1.4 * v.p / v.rho)}
    assert (coords[plane[0]], coords[plane[1]]) == pytest.approx((0.5, 1.0), rel=1e-14)


def test_unknown_plane_rejected():
    with pytest.raises(ValueError):
        make_grid(NOZZLE_INLET, ("c", "p"), (0, 1, 1), (0, 1, 1), GAS)
