import os
import subprocess
import sys

import numpy as np
import pytest
from hypothesis import given, strategies as st

from eulerbc import _fluxkernel_py, kernels
from eulerbc.errors import VacuumFormation
from eulerbc.riemann import godunov_flux_prim, osher_flux_prim

try:
    from eulerbc import _fluxkernel
except ImportError:  # pragma: no cover - extension not built
    _fluxkernel = None

needs_compiled = pytest.mark.skipif(_fluxkernel is None, reason="compiled kernel not built")

SCALAR = {"godunov": godunov_flux_prim, "osher": osher_flux_prim}


def random_field(rng, n):
    return np.column_stack([rng.uniform(0.1, 5.0, n), rng.uniform(-1.5, 1.5, n), rng.uniform(0.1, 5.0, n)])


@pytest.mark.parametrize("name", ["godunov", "osher"])
def test_fallback_matches_scalar_functions(name):
    prim = random_field(np.random.default_rng(1), 200)
    got = getattr(_fluxkernel_py, f"{name}_fluxes")(prim, 1.4)
    want = [SCALAR[name](*prim[j], *prim[j + 1], 1.4) for j in range(len(prim) - 1)]
    assert np.array_equal(got, np.array(want))


@needs_compiled
@pytest.mark.parametrize("name", ["godunov", "osher"])
def test_compiled_matches_fallback(name):
    prim = random_field(np.random.default_rng(2), 2000)
    fast = getattr(_fluxkernel, f"{name}_fluxes")(prim, 1.4)
    slow = getattr(_fluxkernel_py, f"{name}_fluxes")(prim, 1.4)
    scale = np.maximum(1.0, np.abs(slow))
    assert np.max(np.abs(fast - slow) / scale) <= 1e-13


@needs_compiled
@given(st.lists(st.tuples(st.floats(0.05, 10.0), st.floats(-4.0, 4.0), st.floats(0.05, 10.0)),
                min_size=2, max_size=12))
def test_compiled_matches_fallback_property(rows):
    prim = np.array(rows)
    for name in ("godunov", "osher"):
        try:
            slow = getattr(_fluxkernel_py, f"{name}_fluxes")(prim, 1.4)
        except VacuumFormation as exc:
            with pytest.raises(VacuumFormation) as info:
                getattr(_fluxkernel, f"{name}_fluxes")(prim, 1.4)
            assert info.value.interface == exc.interface
            continue
        fast = getattr(_fluxkernel, f"{name}_fluxes")(prim, 1.4)
        assert np.allclose(fast, slow, rtol=1e-13, atol=1e-13)


@pytest.mark.parametrize("impl", [_fluxkernel_py, pytest.param(_fluxkernel, marks=needs_compiled)])
def test_vacuum_reports_interface(impl):
    prim = np.array([[1.0, 0.0, 1.0], [1.0, -10.0, 1.0], [1.0, 10.0, 1.0], [1.0, 0.0, 1.0]])
    with pytest.raises(VacuumFormation) as info:
        impl.godunov_fluxes(prim, 1.4)
    assert info.value.interface == 1


def test_single_cell_gives_no_interfaces():
    assert kernels.godunov_fluxes(np.array([[1.0, 0.0, 1.0]]), 1.4).shape == (0, 3)


def test_pure_python_switch():
    env = dict(os.environ, EULERBC_PURE_PYTHON="1")
    out = subprocess.run([sys.executable, "-c", "from eulerbc import kernels; print(kernels.BACKEND)"],
                         env=env, capture_output=True, text=True, check=True)
    assert out.stdout.strip() == "python"
