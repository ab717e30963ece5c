import pytest
from hypothesis import HealthCheck, settings

from hypercone.ring import Poly, PolyVec

settings.register_profile("default", deadline=None, suppress_health_check=[HealthCheck.too_slow])
settings.load_profile("default")

# lines collected by the acceptance module, echoed in the terminal summary
ACCEPTANCE_LINES: list[str] = []


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)


@pytest.fixture(scope="session")
def vamos():
    from hypercone.vamoslab import builtin_vamos

    return builtin_vamos()


@pytest.fixture(scope="session")
def quadric():
    x1, x2, x3 = Poly.variables(3)
    return {
        "h": x1**2 - x2**2 - x3**2,
        "e": (1, 0, 0),
        "f": PolyVec([x1 + x2, x3]),
    }
