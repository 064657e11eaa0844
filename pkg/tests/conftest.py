import sys
from pathlib import Path

import hypothesis.strategies as st
from hypothesis import settings

sys.path.insert(0, str(Path(__file__).parent))

from eulerbc.gas import GasModel, PrimState  # noqa: E402

settings.register_profile("default", deadline=None, max_examples=200)
settings.load_profile("default")

GAS = GasModel(1.4)

densities = st.floats(0.05, 20.0)
pressures = st.floats(0.05, 20.0)
velocities = st.floats(-3.0, 3.0)


@st.composite
def prim_states(draw, rho=densities, u=velocities, p=pressures):
    return PrimState(draw(rho), draw(u), draw(p))


ACCEPTANCE_LINES: list[str] = []


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in sorted(ACCEPTANCE_LINES):
            terminalreporter.write_line(line)
